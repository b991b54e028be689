//! Objects derived from a conditioning event `(X, k_c)`.
//!
//! A [`Condition`] holds the Heisenberg projector `ℙ_X(k_c)` and borrows the
//! model and physical family it lives in. From it we derive the trimmed
//! operator `𝒫(k) ℙ_X(k_c) 𝒫(k)`, its support `𝒫_(X,k_c)(k)`, the observable
//! representation `X(k)`, the start time `T_s` and the condition operator
//! `ℙ_X(k_c) 𝒫(k0) ℙ_X(k_c)`.

use crate::error::{Error, Result};
use crate::linalg::{commutator_norm, is_projector, sandwich, support_projector, ComplexMatrix, Vector};
use crate::model::{Event, Model, PhysicalFamily};

#[derive(Debug, Clone)]
pub struct Condition<'a> {
    model: &'a Model,
    fam: &'a PhysicalFamily,
    projector: ComplexMatrix,
    index: usize,
}

/// Observable representation: per index `k ≤ k_c`, the system1 basis labels
/// certain at `k` together with the lifted Heisenberg projector `ℙ_{X(k)}(k)`.
#[derive(Debug, Clone)]
pub struct ObservableRep {
    pub labels: Vec<Vec<usize>>,
    pub projectors: Vec<ComplexMatrix>,
}

impl ObservableRep {
    pub fn projector(&self, k: usize) -> Result<&ComplexMatrix> {
        self.projectors.get(k).ok_or(Error::IndexOutOfRange { index: k, last: self.projectors.len().saturating_sub(1) })
    }
}

/// Start index `T_s` on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StartTime {
    /// Latest index satisfying every requested property, or 0 when `empty`.
    pub index: usize,
    /// Latest index satisfying the trimming-constancy property alone.
    pub trimming_index: usize,
    /// No index satisfies the requested properties.
    pub empty: bool,
}

impl<'a> Condition<'a> {
    /// Condition on a system1 predicate `x1` holding at index `k_c`.
    pub fn system1(model: &'a Model, fam: &'a PhysicalFamily, x1: &ComplexMatrix, k_c: usize) -> Result<Self> {
        let px = model.lift_system1_at(x1, k_c)?;
        Self::from_heisenberg(model, fam, px, k_c)
    }

    pub fn from_event(model: &'a Model, fam: &'a PhysicalFamily, event: &Event) -> Result<Self> {
        Self::from_heisenberg(model, fam, event.projector.clone(), event.index)
    }

    /// Condition on an arbitrary full-space projector, already in the Heisenberg picture.
    pub fn from_heisenberg(model: &'a Model, fam: &'a PhysicalFamily, px: ComplexMatrix, k_c: usize) -> Result<Self> {
        model.check_index(k_c)?;
        if px.rows() != model.dim() || px.cols() != model.dim() {
            return Err(Error::Shape(format!("condition projector must be {0}x{0}", model.dim())));
        }
        if !is_projector(&px, model.tol()) {
            return Err(Error::Domain("condition is not a projector".into()));
        }
        if !fam.is_physically_possible(&px, k_c) {
            return Err(Error::NotPhysical(format!("condition is not physically possible at index {k_c}")));
        }
        Ok(Condition { model, fam, projector: px, index: k_c })
    }

    pub fn model(&self) -> &'a Model {
        self.model
    }

    pub fn family(&self) -> &'a PhysicalFamily {
        self.fam
    }

    /// `ℙ_X(k_c)` in the Heisenberg picture.
    pub fn projector(&self) -> &ComplexMatrix {
        &self.projector
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// `𝒫_X(k_c)`.
    pub fn restricted(&self) -> ComplexMatrix {
        self.fam.physical_restrict(&self.projector, self.index).expect("checked at construction")
    }

    fn check_before(&self, k: usize) -> Result<()> {
        if k > self.index {
            return Err(Error::Domain(format!("index {k} lies after the condition index {}", self.index)));
        }
        Ok(())
    }

    /// `𝒫(k) ℙ_X(k_c) 𝒫(k)` for `k ≤ k_c`.
    pub fn trimmed(&self, k: usize) -> Result<ComplexMatrix> {
        self.model.check_index(k)?;
        self.check_before(k)?;
        Ok(sandwich(self.fam.at(k)?, &self.projector).hermitian_part())
    }

    /// `𝒫_(X,k_c)(k)`, the support of the trimmed operator.
    pub fn support_at(&self, k: usize) -> Result<ComplexMatrix> {
        let t = self.trimmed(k)?;
        if t.is_zero(self.model.tol().eps_zero) {
            return Err(Error::Unreachable(format!("nothing physical at index {k} reaches the condition")));
        }
        support_projector(&t, self.model.tol())
    }

    /// Reads off `X(k)` in the given system1 basis by tracing out system2 of the
    /// trimmed operator in the Schrödinger picture at `k`. Rejected when some
    /// `ℙ_{X(k)}(k)` fails to commute with `𝒫(k)`.
    pub fn observable_rep(&self, basis1: &[Vector]) -> Result<ObservableRep> {
        let (d1, d2) = (self.model.d1(), self.model.d2());
        let tol = self.model.tol();
        check_basis(basis1, d1, tol.eps_zero)?;
        let mut labels = Vec::with_capacity(self.index + 1);
        let mut projectors = Vec::with_capacity(self.index + 1);
        for k in 0..=self.index {
            let schrodinger = self.model.schrodinger(&self.trimmed(k)?, k)?;
            let reduced = schrodinger.partial_trace_2(d1, d2)?;
            let present: Vec<usize> = basis1
                .iter()
                .enumerate()
                .filter(|(_, b)| (b.adjoint() * reduced.as_nalgebra() * *b)[(0, 0)].re > tol.eps_eig)
                .map(|(i, _)| i)
                .collect();
            let mut p1 = ComplexMatrix::zeros(d1, d1);
            for &i in &present {
                p1 = &p1 + &ComplexMatrix::outer(&basis1[i], &basis1[i]);
            }
            let lifted = self.model.heisenberg(&p1.hermitian_part().kron(&ComplexMatrix::identity(d2)), k)?;
            let c = commutator_norm(&lifted, self.fam.at(k)?)?;
            if c > tol.eps_zero {
                return Err(Error::RepresentationRejected { index: k, commutator: c });
            }
            labels.push(present);
            projectors.push(lifted);
        }
        Ok(ObservableRep { labels, projectors })
    }

    /// Whether trimming is constant on `0..=k`.
    fn trimming_constant_up_to(&self, k: usize, trimmed: &[ComplexMatrix]) -> bool {
        let eps = self.model.tol().eps_zero;
        trimmed[..k].iter().all(|t| t.approx_eq(&trimmed[k], eps))
    }

    /// Latest grid index before which the condition had gathered no information.
    ///
    /// Index `t` qualifies when the trimmed operator is the same at every
    /// `t' < t`; with a representation it must also satisfy `𝒫_{X(t)}(t) = ℙ_{X(t)}(t)`.
    pub fn start_time(&self, rep: Option<&ObservableRep>) -> Result<StartTime> {
        let eps = self.model.tol().eps_zero;
        let trimmed: Vec<ComplexMatrix> = (0..=self.index).map(|k| self.trimmed(k)).collect::<Result<_>>()?;
        let constant: Vec<bool> = (0..=self.index).map(|k| self.trimming_constant_up_to(k, &trimmed)).collect();
        let trimming_index = constant.iter().rposition(|&b| b).unwrap_or(0);
        let Some(rep) = rep else {
            return Ok(StartTime { index: trimming_index, trimming_index, empty: false });
        };
        let mut best = None;
        for k in 0..=self.index {
            let px = rep.projector(k)?;
            let restricted = self.fam.at(k)? * px;
            if constant[k] && restricted.approx_eq(px, eps) {
                best = Some(k);
            }
        }
        Ok(match best {
            Some(index) => StartTime { index, trimming_index, empty: false },
            None => StartTime { index: 0, trimming_index, empty: true },
        })
    }

    /// `ℙ_X(k_c) 𝒫(k0) ℙ_X(k_c)`; `k0` may not exceed the start time.
    pub fn condition_operator(&self, k0: usize) -> Result<ComplexMatrix> {
        self.model.check_index(k0)?;
        let start = self.start_time(None)?;
        if k0 > start.trimming_index {
            return Err(Error::StartTooLate { k0, start: start.trimming_index });
        }
        Ok(sandwich(&self.projector, self.fam.at(k0)?).hermitian_part())
    }

    /// `Tr(ℙ_X(k_c) 𝒫(k0))`, the weight every forward probability is normalised by.
    pub fn weight(&self, k0: usize) -> Result<f64> {
        Ok((&self.projector * self.fam.at(k0)?).tr())
    }

    /// `𝒫(k) 𝒫(k_1) … 𝒫(k_n) ℙ_X 𝒫(k_n) … 𝒫(k_1) 𝒫(k)` for an explicit chain.
    pub fn trimmed_through(&self, k: usize, chain: &[usize]) -> Result<ComplexMatrix> {
        let mut acc = self.projector.clone();
        for &j in chain.iter().rev().chain(std::iter::once(&k)) {
            self.check_before(j)?;
            acc = sandwich(self.fam.at(j)?, &acc);
        }
        Ok(acc)
    }

    /// `ℙ_X R(k_n) … R(k_1) R(k_0) R(k_1) … R(k_n) ℙ_X` with `R(k) = 𝒫_{X(k)}(k)`.
    pub fn expanded_observable(&self, rep: &ObservableRep, indices: &[usize]) -> Result<ComplexMatrix> {
        let factors = indices
            .iter()
            .map(|&k| {
                self.check_before(k)?;
                self.fam.physical_restrict(rep.projector(k)?, k)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(palindrome(&self.projector, &factors))
    }

    /// Same expansion using the trimmed supports `𝒫_(X,k_c)(k)`.
    pub fn expanded_support(&self, indices: &[usize]) -> Result<ComplexMatrix> {
        let factors = indices.iter().map(|&k| self.support_at(k)).collect::<Result<Vec<_>>>()?;
        Ok(palindrome(&self.projector, &factors))
    }
}

/// `outer f_n … f_1 f_0 f_1 … f_n outer` for factors listed as `f_0, …, f_n`.
fn palindrome(outer: &ComplexMatrix, factors: &[ComplexMatrix]) -> ComplexMatrix {
    let mut acc = match factors.first() {
        Some(f) => f.clone(),
        None => return outer.clone(),
    };
    for f in &factors[1..] {
        acc = sandwich(f, &acc);
    }
    sandwich(outer, &acc)
}

fn check_basis(basis: &[Vector], d: usize, eps: f64) -> Result<()> {
    if basis.len() != d || basis.iter().any(|b| b.len() != d) {
        return Err(Error::Shape(format!("system1 basis must hold {d} vectors of length {d}")));
    }
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let expect = if i == j { 1.0 } else { 0.0 };
            if (a.dotc(b) - num_complex::Complex64::new(expect, 0.0)).norm() > eps {
                return Err(Error::Domain("system1 basis is not orthonormal".into()));
            }
        }
    }
    Ok(())
}

/// The computational basis of a `d`-dimensional space.
pub fn computational_basis(d: usize) -> Vec<Vector> {
    (0..d).map(|i| crate::linalg::ket(d, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Tolerance;
    use crate::model::{forward_closure, validate_family, TimeGrid};
    use crate::random::Sampler;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn identity_predicate_trims_to_family() {
        let mut s = Sampler::new(31);
        let grid = TimeGrid::new(vec![0.0, 1.0, 2.0]).unwrap();
        let model = Model::new(2, 2, grid, vec![s.unitary(4), s.unitary(4)], tol()).unwrap();
        let fam = forward_closure(&model, &[s.vector(4)], &[vec![], vec![s.vector(4)], vec![]]).unwrap();
        let cond = Condition::system1(&model, &fam, &ComplexMatrix::identity(2), 2).unwrap();
        for k in 0..=2 {
            assert!(cond.trimmed(k).unwrap().approx_eq(fam.at(k).unwrap(), 1e-9));
            assert!(cond.support_at(k).unwrap().approx_eq(fam.at(k).unwrap(), 1e-9));
        }
        assert!(cond.condition_operator(0).unwrap().approx_eq(fam.at(0).unwrap(), 1e-9));
        assert!(cond.trimmed(3).is_err());
    }

    #[test]
    fn identity_family_trims_to_predicate() {
        let mut s = Sampler::new(32);
        let grid = TimeGrid::new(vec![0.0, 1.0, 2.0]).unwrap();
        let model = Model::new(2, 3, grid, vec![s.unitary(6), s.unitary(6)], tol()).unwrap();
        let fam = PhysicalFamily::identity(&model);
        let x1 = ComplexMatrix::basis_projector(2, &[1]).unwrap();
        let cond = Condition::system1(&model, &fam, &x1, 2).unwrap();
        for k in 0..=2 {
            assert!(cond.trimmed(k).unwrap().approx_eq(cond.projector(), 1e-9));
        }
        assert!(cond.condition_operator(1).unwrap().approx_eq(cond.projector(), 1e-9));
        let st = cond.start_time(None).unwrap();
        assert_eq!(st.trimming_index, 2);
        // condition (2) holds everywhere because 𝒫 is the identity
        let rep = cond.observable_rep(&computational_basis(2)).unwrap();
        let st = cond.start_time(Some(&rep)).unwrap();
        assert!(!st.empty);
    }

    #[test]
    fn support_at_own_index_is_restriction() {
        let model = Model::stationary(2, 2, 2, tol()).unwrap();
        let p = ComplexMatrix::basis_projector(4, &[0, 1, 2]).unwrap();
        let fam = PhysicalFamily::constant(&model, &p);
        let x1 = ComplexMatrix::basis_projector(2, &[1]).unwrap();
        let cond = Condition::system1(&model, &fam, &x1, 1).unwrap();
        assert!(cond.support_at(1).unwrap().approx_eq(&cond.restricted(), 1e-9));
    }

    #[test]
    fn unreachable_condition() {
        let model = Model::stationary(2, 2, 2, tol()).unwrap();
        let p0 = ComplexMatrix::basis_projector(4, &[0]).unwrap();
        let p1 = ComplexMatrix::basis_projector(4, &[0, 3]).unwrap();
        let fam = PhysicalFamily::from_projectors(vec![p0, p1], tol());
        assert!(validate_family(&model, &fam).pass());
        let x1 = ComplexMatrix::basis_projector(2, &[1]).unwrap();
        let cond = Condition::system1(&model, &fam, &x1, 1).unwrap();
        assert!(matches!(cond.support_at(0), Err(Error::Unreachable(_))));
    }

    #[test]
    fn non_physical_condition_rejected() {
        let model = Model::stationary(2, 2, 2, tol()).unwrap();
        let p = ComplexMatrix::basis_projector(4, &[0]).unwrap();
        let fam = PhysicalFamily::constant(&model, &p);
        let x1 = ComplexMatrix::basis_projector(2, &[1]).unwrap();
        assert!(matches!(Condition::system1(&model, &fam, &x1, 0), Err(Error::NotPhysical(_))));
    }

    #[test]
    fn identity_condition_start_time_is_condition_index() {
        let model = Model::stationary(2, 2, 4, tol()).unwrap();
        let p = ComplexMatrix::basis_projector(4, &[0, 3]).unwrap();
        let fam = PhysicalFamily::constant(&model, &p);
        let cond = Condition::system1(&model, &fam, &ComplexMatrix::identity(2), 2).unwrap();
        assert_eq!(cond.start_time(None).unwrap().index, 2);
    }

    #[test]
    fn representation_at_own_index_matches_predicate() {
        let model = Model::stationary(3, 2, 2, tol()).unwrap();
        let fam = PhysicalFamily::identity(&model);
        let x1 = ComplexMatrix::basis_projector(3, &[0, 2]).unwrap();
        let cond = Condition::system1(&model, &fam, &x1, 1).unwrap();
        let rep = cond.observable_rep(&computational_basis(3)).unwrap();
        assert_eq!(rep.labels[1], vec![0, 2]);
        let all = Condition::system1(&model, &fam, &ComplexMatrix::identity(3), 1).unwrap();
        let rep = all.observable_rep(&computational_basis(3)).unwrap();
        assert!(rep.labels.iter().all(|l| l == &vec![0, 1, 2]));
        assert!(cond.observable_rep(&computational_basis(2)).is_err());
    }

    #[test]
    fn mixed_family_rejects_label_projector() {
        // 𝒫(0) = |00⟩⟨00| + |v⟩⟨v| with v = (|01⟩ + |11⟩)/√2
        let model = Model::stationary(2, 2, 2, tol()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = Vector::from_vec(vec![crate::linalg::c(0.0, 0.0), crate::linalg::c(h, 0.0), crate::linalg::c(0.0, 0.0), crate::linalg::c(h, 0.0)]);
        let p0 = &ComplexMatrix::basis_projector(4, &[0]).unwrap() + &ComplexMatrix::outer(&v, &v);
        let fam = PhysicalFamily::from_projectors(vec![p0, ComplexMatrix::identity(4)], tol());
        assert!(validate_family(&model, &fam).pass());
        let px = ComplexMatrix::basis_projector(4, &[0]).unwrap();
        let cond = Condition::from_heisenberg(&model, &fam, px, 0).unwrap();
        assert!(matches!(cond.observable_rep(&computational_basis(2)), Err(Error::RepresentationRejected { index: 0, .. })));
        let whole = Condition::from_heisenberg(&model, &fam, ComplexMatrix::identity(4), 0).unwrap();
        assert!(whole.observable_rep(&computational_basis(2)).is_ok());
    }

    #[test]
    fn condition_operator_refuses_late_start() {
        let model = Model::stationary(2, 2, 3, tol()).unwrap();
        let p0 = ComplexMatrix::basis_projector(4, &[0]).unwrap();
        let p2 = ComplexMatrix::basis_projector(4, &[0, 1]).unwrap();
        let fam = PhysicalFamily::from_projectors(vec![p0.clone(), p0, p2], tol());
        let x1 = ComplexMatrix::basis_projector(2, &[0]).unwrap();
        let cond = Condition::system1(&model, &fam, &x1, 2).unwrap();
        assert_eq!(cond.start_time(None).unwrap().trimming_index, 1);
        assert!(matches!(cond.condition_operator(2), Err(Error::StartTooLate { k0: 2, start: 1 })));
        let a = cond.condition_operator(0).unwrap();
        let b = cond.condition_operator(1).unwrap();
        assert!(a.approx_eq(&b, 1e-12));
    }
}
