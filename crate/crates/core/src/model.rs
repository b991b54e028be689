//! Time-gridded closed-system model and the physical-subspace family.
//!
//! All stored operators live in the Heisenberg picture at grid index 0.
//! Step `k` of a [`Model`] propagates index `k` to `k + 1` in the Schrödinger
//! picture, so `V(k) = U_k ... U_1` and an operator `A` at index `k` is
//! represented by `V(k)† A V(k)`.

use crate::error::{Error, Result};
use crate::linalg::{commutator_norm, is_projector, span_projector, support_projector, ComplexMatrix, Tolerance, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
    labels: Vec<String>,
}

impl TimeGrid {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        let labels = (0..times.len()).map(|k| format!("t{k}")).collect();
        Self::with_labels(times, labels)
    }

    pub fn with_labels(times: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::Domain("a time grid needs at least two points".into()));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("grid times must be finite and strictly increasing".into()));
        }
        if labels.len() != times.len() {
            return Err(Error::Domain(format!("{} labels for {} grid points", labels.len(), times.len())));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Domain(format!("duplicate grid label '{l}'")));
            }
        }
        Ok(TimeGrid { times, labels })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_index(&self) -> usize {
        self.times.len() - 1
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> &str {
        &self.labels[k]
    }

    /// Resolves a grid label or a plain index.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name).or_else(|| name.parse().ok().filter(|&k| k < self.len()))
    }
}

/// Closed system `system1 ⊗ system2` with per-step propagators.
#[derive(Debug, Clone)]
pub struct Model {
    d1: usize,
    d2: usize,
    grid: TimeGrid,
    steps: Vec<ComplexMatrix>,
    cumulative: Vec<ComplexMatrix>,
    tol: Tolerance,
}

impl Model {
    pub fn new(d1: usize, d2: usize, grid: TimeGrid, steps: Vec<ComplexMatrix>, tol: Tolerance) -> Result<Self> {
        if d1 == 0 || d2 == 0 {
            return Err(Error::Domain("subsystem dimensions must be positive".into()));
        }
        if steps.len() != grid.len() - 1 {
            return Err(Error::Domain(format!("{} steps for a grid of {} points", steps.len(), grid.len())));
        }
        let n = d1 * d2;
        for (k, u) in steps.iter().enumerate() {
            if u.rows() != n || u.cols() != n {
                return Err(Error::Shape(format!("step {} is {}x{}, expected {n}x{n}", k + 1, u.rows(), u.cols())));
            }
            if !u.is_unitary(tol.eps_zero) {
                return Err(Error::Validation(format!("step {} is not unitary", k + 1)));
            }
        }
        let mut cumulative = Vec::with_capacity(grid.len());
        cumulative.push(ComplexMatrix::identity(n));
        for u in &steps {
            let next = u * cumulative.last().expect("nonempty");
            cumulative.push(next);
        }
        Ok(Model { d1, d2, grid, steps, cumulative, tol })
    }

    /// Model whose every step is the identity.
    pub fn stationary(d1: usize, d2: usize, points: usize, tol: Tolerance) -> Result<Self> {
        let grid = TimeGrid::new((0..points).map(|k| k as f64).collect())?;
        let steps = vec![ComplexMatrix::identity(d1 * d2); points.saturating_sub(1)];
        Model::new(d1, d2, grid, steps, tol)
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn dim(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn steps(&self) -> &[ComplexMatrix] {
        &self.steps
    }

    pub fn tol(&self) -> Tolerance {
        self.tol
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn last_index(&self) -> usize {
        self.grid.last_index()
    }

    pub fn check_index(&self, k: usize) -> Result<()> {
        if k > self.last_index() {
            return Err(Error::IndexOutOfRange { index: k, last: self.last_index() });
        }
        Ok(())
    }

    /// `V(k) = U_k ... U_1`, with `V(0)` the identity.
    pub fn cumulative_propagator(&self, k: usize) -> Result<&ComplexMatrix> {
        self.check_index(k)?;
        Ok(&self.cumulative[k])
    }

    fn check_operator(&self, a: &ComplexMatrix) -> Result<()> {
        if a.rows() != self.dim() || a.cols() != self.dim() {
            return Err(Error::Shape(format!(
                "operator is {}x{}, model dimension is {}",
                a.rows(),
                a.cols(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Heisenberg representation `V(k)† a V(k)` of a Schrödinger operator at index `k`.
    pub fn heisenberg(&self, a: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
        self.check_operator(a)?;
        let v = self.cumulative_propagator(k)?;
        Ok(&(&v.dagger() * a) * v)
    }

    /// Inverse of [`Model::heisenberg`].
    pub fn schrodinger(&self, a: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
        self.check_operator(a)?;
        let v = self.cumulative_propagator(k)?;
        Ok(&(v * a) * &v.dagger())
    }

    /// Heisenberg image `V(k)† v` of a Schrödinger state at index `k`.
    pub fn heisenberg_state(&self, v: &Vector, k: usize) -> Result<Vector> {
        if v.len() != self.dim() {
            return Err(Error::Shape(format!("state of length {} in dimension {}", v.len(), self.dim())));
        }
        Ok(self.cumulative_propagator(k)?.dagger().apply(v))
    }

    /// `p1 ⊗ 1`, the system1 predicate extended over all of system2.
    pub fn lift_system1(&self, p1: &ComplexMatrix) -> Result<ComplexMatrix> {
        if p1.rows() != self.d1 || p1.cols() != self.d1 {
            return Err(Error::Shape(format!("system1 operator must be {0}x{0}", self.d1)));
        }
        if !is_projector(p1, self.tol) {
            return Err(Error::Domain("system1 predicate is not a projector".into()));
        }
        Ok(p1.kron(&ComplexMatrix::identity(self.d2)))
    }

    /// Lifted system1 predicate expressed in the Heisenberg picture at index `k`.
    pub fn lift_system1_at(&self, p1: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
        self.heisenberg(&self.lift_system1(p1)?, k)
    }

    /// `1 ⊗ p2`.
    pub fn lift_system2(&self, p2: &ComplexMatrix) -> Result<ComplexMatrix> {
        if p2.rows() != self.d2 || p2.cols() != self.d2 {
            return Err(Error::Shape(format!("system2 operator must be {0}x{0}", self.d2)));
        }
        if !is_projector(p2, self.tol) {
            return Err(Error::Domain("system2 predicate is not a projector".into()));
        }
        Ok(ComplexMatrix::identity(self.d1).kron(p2))
    }
}

/// A projector attached to a grid index, stored in the Heisenberg picture.
#[derive(Debug, Clone)]
pub struct Event {
    pub projector: ComplexMatrix,
    pub index: usize,
}

impl Event {
    /// System1 predicate `p1 ⊗ 1` holding at index `k`.
    pub fn system1(model: &Model, p1: &ComplexMatrix, k: usize) -> Result<Self> {
        Ok(Event { projector: model.lift_system1_at(p1, k)?, index: k })
    }

    /// System2 predicate `1 ⊗ p2` holding at index `k`.
    pub fn system2(model: &Model, p2: &ComplexMatrix, k: usize) -> Result<Self> {
        Ok(Event { projector: model.heisenberg(&model.lift_system2(p2)?, k)?, index: k })
    }

    /// Full-space Schrödinger projector at index `k`.
    pub fn full(model: &Model, p: &ComplexMatrix, k: usize) -> Result<Self> {
        if !is_projector(p, model.tol()) {
            return Err(Error::Domain("event is not a projector".into()));
        }
        Ok(Event { projector: model.heisenberg(p, k)?, index: k })
    }

    /// Either a system1 predicate or a full-space projector, told apart by shape.
    pub fn predicate(model: &Model, p: &ComplexMatrix, k: usize) -> Result<Self> {
        if p.rows() == model.d1() && p.cols() == model.d1() {
            Self::system1(model, p, k)
        } else {
            Self::full(model, p, k)
        }
    }

    /// Complement `1 − ℙ` at the same index.
    pub fn complement(&self) -> Self {
        let n = self.projector.rows();
        Event { projector: (&ComplexMatrix::identity(n) - &self.projector).hermitian_part(), index: self.index }
    }
}

/// Per-index physical-subspace projectors `𝒫(k)` in the Heisenberg picture.
#[derive(Debug, Clone)]
pub struct PhysicalFamily {
    projectors: Vec<ComplexMatrix>,
    tol: Tolerance,
}

/// Diagnostic produced by [`validate_family`].
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub projector_ok: Vec<bool>,
    pub nonzero: Vec<bool>,
    /// `(j, k, residual)` for every `j < k`, residual being `max|𝒫(j)𝒫(k) - 𝒫(j)|`.
    pub nesting: Vec<(usize, usize, f64)>,
    pub count_ok: bool,
    pub eps_zero: f64,
}

impl FamilyReport {
    pub fn nesting_violations(&self) -> Vec<(usize, usize)> {
        self.nesting.iter().filter(|(_, _, r)| *r > self.eps_zero).map(|&(j, k, _)| (j, k)).collect()
    }

    pub fn pass(&self) -> bool {
        self.count_ok
            && self.projector_ok.iter().all(|&b| b)
            && self.nonzero.iter().all(|&b| b)
            && self.nesting_violations().is_empty()
    }

    /// First failure, phrased for error messages.
    pub fn first_failure(&self) -> Option<String> {
        if !self.count_ok {
            return Some("family length does not match the grid".into());
        }
        if let Some(k) = self.projector_ok.iter().position(|&b| !b) {
            return Some(format!("𝒫({k}) is not a projector"));
        }
        if let Some(k) = self.nonzero.iter().position(|&b| !b) {
            return Some(format!("𝒫({k}) is zero"));
        }
        self.nesting_violations().first().map(|(j, k)| format!("nesting violated for index pair ({j}, {k})"))
    }
}

impl PhysicalFamily {
    /// Wraps projectors without checking them; see [`validate_family`].
    pub fn from_projectors(projectors: Vec<ComplexMatrix>, tol: Tolerance) -> Self {
        PhysicalFamily { projectors, tol }
    }

    /// Validated family; fails with the first violated law.
    pub fn validated(model: &Model, projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let fam = PhysicalFamily::from_projectors(projectors, model.tol());
        let report = validate_family(model, &fam);
        match report.first_failure() {
            None => Ok(fam),
            Some(msg) => Err(Error::Validation(msg)),
        }
    }

    /// `𝒫(k) = p` at every index.
    pub fn constant(model: &Model, p: &ComplexMatrix) -> Self {
        PhysicalFamily::from_projectors(vec![p.clone(); model.grid().len()], model.tol())
    }

    /// The textbook case: everything is physical.
    pub fn identity(model: &Model) -> Self {
        Self::constant(model, &ComplexMatrix::identity(model.dim()))
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn tol(&self) -> Tolerance {
        self.tol
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn at(&self, k: usize) -> Result<&ComplexMatrix> {
        self.projectors.get(k).ok_or(Error::IndexOutOfRange { index: k, last: self.projectors.len().saturating_sub(1) })
    }

    /// `𝒫_X(k) = 𝒫(k) ℙ_X`; requires `[ℙ_X, 𝒫(k)] = 0`.
    pub fn physical_restrict(&self, px: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
        let p = self.at(k)?;
        let c = commutator_norm(px, p)?;
        if c > self.tol.eps_zero {
            return Err(Error::NotPhysical(format!("predicate does not commute with 𝒫({k}) (commutator {c:e})")));
        }
        Ok((p * px).hermitian_part())
    }

    /// `[ℙ_X, 𝒫(k)] = 0` and `𝒫(k) ℙ_X ≠ 0`.
    pub fn is_physically_possible(&self, px: &ComplexMatrix, k: usize) -> bool {
        let Ok(p) = self.at(k) else { return false };
        match commutator_norm(px, p) {
            Ok(c) if c <= self.tol.eps_zero => !(p * px).is_zero(self.tol.eps_zero),
            _ => false,
        }
    }

    /// Whether `𝒫_X(k)` spans the same states as `𝒫_X(k) 𝒫(0) 𝒫_X(k)`.
    pub fn check_self_consistency(&self, px: &ComplexMatrix, k: usize) -> Result<bool> {
        if !self.is_physically_possible(px, k) {
            return Err(Error::NotPhysical(format!("predicate is not physically possible at index {k}")));
        }
        let restricted = self.physical_restrict(px, k)?;
        let informed = crate::linalg::sandwich(&restricted, self.at(0)?);
        let support = support_projector(&informed.hermitian_part(), self.tol)?;
        Ok(support.approx_eq(&restricted, self.tol.eps_zero))
    }
}

/// Checks projector validity, nonzeroness and the nesting law `𝒫(j)𝒫(k) = 𝒫(j)` for `j < k`.
pub fn validate_family(model: &Model, fam: &PhysicalFamily) -> FamilyReport {
    let tol = model.tol();
    let n = model.dim();
    let shape_ok = |p: &ComplexMatrix| p.rows() == n && p.cols() == n;
    let projector_ok: Vec<bool> = fam.projectors.iter().map(|p| shape_ok(p) && is_projector(p, tol)).collect();
    let nonzero = fam.projectors.iter().map(|p| !p.is_zero(tol.eps_zero)).collect();
    let mut nesting = Vec::new();
    for j in 0..fam.len() {
        for k in j + 1..fam.len() {
            let (pj, pk) = (&fam.projectors[j], &fam.projectors[k]);
            let residual = if shape_ok(pj) && shape_ok(pk) { (pj * pk).max_abs_diff(pj) } else { f64::INFINITY };
            nesting.push((j, k, residual));
        }
    }
    FamilyReport { projector_ok, nonzero, nesting, count_ok: fam.len() == model.grid().len(), eps_zero: tol.eps_zero }
}

/// Builds a nested family from initial states plus per-index extra generators.
///
/// `initial_states` are Schrödinger states at index 0. `extras[k]` holds
/// Schrödinger states at index `k` that become physical from then on.
pub fn forward_closure(model: &Model, initial_states: &[Vector], extras: &[Vec<Vector>]) -> Result<PhysicalFamily> {
    if initial_states.is_empty() {
        return Err(Error::Domain("forward closure needs at least one initial state".into()));
    }
    if extras.len() > model.grid().len() {
        return Err(Error::Domain(format!("extras given for {} indices, grid has {}", extras.len(), model.grid().len())));
    }
    let tol = model.tol();
    let n = model.dim();
    let mut generators: Vec<Vector> = initial_states.to_vec();
    let mut projectors = Vec::with_capacity(model.grid().len());
    for k in 0..model.grid().len() {
        if let Some(list) = extras.get(k) {
            for v in list {
                generators.push(model.heisenberg_state(v, k)?);
            }
        }
        projectors.push(span_projector(&generators, n, tol)?);
    }
    Ok(PhysicalFamily::from_projectors(projectors, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ket;
    use crate::random::Sampler;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn random_model(s: &mut Sampler, d1: usize, d2: usize, points: usize) -> Model {
        let grid = TimeGrid::new((0..points).map(|k| k as f64 * 0.5).collect()).unwrap();
        let steps = (1..points).map(|_| s.unitary(d1 * d2)).collect();
        Model::new(d1, d2, grid, steps, tol()).unwrap()
    }

    #[test]
    fn grid_rules() {
        assert!(TimeGrid::new(vec![0.0]).is_err());
        assert!(TimeGrid::new(vec![0.0, 0.0]).is_err());
        assert!(TimeGrid::new(vec![1.0, 0.0]).is_err());
        let g = TimeGrid::with_labels(vec![0.0, 1.0], vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(g.index_of("b"), Some(1));
        assert_eq!(g.index_of("0"), Some(0));
        assert_eq!(g.index_of("7"), None);
    }

    #[test]
    fn non_unitary_step_rejected() {
        let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        let err = Model::new(1, 2, grid, vec![ComplexMatrix::diag_real(&[1.0, 0.5])], tol()).unwrap_err();
        assert!(matches!(err, Error::Validation(m) if m.contains("step 1")));
    }

    #[test]
    fn cumulative_propagator_cases() {
        let mut s = Sampler::new(1);
        let m = random_model(&mut s, 2, 2, 3);
        assert!(m.cumulative_propagator(0).unwrap().approx_eq(&ComplexMatrix::identity(4), 0.0));
        let direct = m.steps()[1].mul(&m.steps()[0]).unwrap();
        assert!(m.cumulative_propagator(2).unwrap().approx_eq(&direct, 1e-12));
        assert!(m.cumulative_propagator(2).unwrap().is_unitary(1e-9));
        assert!(matches!(m.cumulative_propagator(3), Err(Error::IndexOutOfRange { .. })));

        let still = Model::stationary(2, 3, 4, tol()).unwrap();
        for k in 0..4 {
            assert!(still.cumulative_propagator(k).unwrap().approx_eq(&ComplexMatrix::identity(6), 0.0));
        }
    }

    #[test]
    fn heisenberg_cases() {
        let mut s = Sampler::new(2);
        let m = random_model(&mut s, 2, 3, 3);
        let id = ComplexMatrix::identity(6);
        assert!(m.heisenberg(&id, 2).unwrap().approx_eq(&id, 1e-12));
        let a = s.hermitian(6);
        assert!(m.heisenberg(&a, 0).unwrap().approx_eq(&a, 0.0));
        let p = s.projector(6, 2);
        let h = m.heisenberg(&p, 2).unwrap();
        assert!(is_projector(&h, tol()));
        assert!((h.tr() - 2.0).abs() < 1e-10);
        assert!(m.schrodinger(&h, 2).unwrap().approx_eq(&p, 1e-12));
        assert!(m.heisenberg(&ComplexMatrix::identity(5), 1).is_err());
    }

    #[test]
    fn lift_cases() {
        let m = Model::stationary(2, 2, 2, tol()).unwrap();
        assert_eq!(m.lift_system1(&ComplexMatrix::identity(2)).unwrap(), ComplexMatrix::identity(4));
        assert_eq!(
            m.lift_system1(&ComplexMatrix::diag_real(&[1.0, 0.0])).unwrap(),
            ComplexMatrix::diag_real(&[1.0, 1.0, 0.0, 0.0])
        );
        assert!(matches!(m.lift_system1(&ComplexMatrix::diag_real(&[0.5, 0.0])), Err(Error::Domain(_))));

        let m = Model::stationary(4, 3, 2, tol()).unwrap();
        let p1 = Sampler::new(3).projector(4, 3);
        assert!((m.lift_system1(&p1).unwrap().tr() - 9.0).abs() < 1e-10);
    }

    #[test]
    fn validation_cases() {
        let m = Model::stationary(2, 2, 3, tol()).unwrap();
        let p = Sampler::new(4).projector(4, 2);
        assert!(validate_family(&m, &PhysicalFamily::constant(&m, &p)).pass());

        let rank1 = ComplexMatrix::basis_projector(4, &[0]).unwrap();
        let fam = PhysicalFamily::from_projectors(vec![ComplexMatrix::identity(4), rank1.clone(), rank1], tol());
        let report = validate_family(&m, &fam);
        assert!(!report.pass());
        assert!(report.nesting_violations().contains(&(0, 1)));

        let zero = PhysicalFamily::from_projectors(vec![ComplexMatrix::zeros(4, 4); 3], tol());
        assert!(!validate_family(&m, &zero).pass());
    }

    #[test]
    fn closure_cases() {
        let m = Model::stationary(2, 2, 3, tol()).unwrap();
        let fam = forward_closure(&m, &[ket(4, 1)], &[]).unwrap();
        for k in 0..3 {
            assert!(fam.at(k).unwrap().approx_eq(&ComplexMatrix::basis_projector(4, &[1]).unwrap(), 1e-12));
        }
        let fam = forward_closure(&m, &[ket(4, 1)], &[vec![], vec![ket(4, 3)]]).unwrap();
        assert_eq!(fam.at(0).unwrap().projector_rank(), 1);
        assert_eq!(fam.at(1).unwrap().projector_rank(), 2);
        assert!(forward_closure(&m, &[], &[]).is_err());

        let mut s = Sampler::new(5);
        let rm = random_model(&mut s, 2, 3, 4);
        let extras = vec![vec![], vec![s.vector(6)], vec![], vec![s.vector(6), s.vector(6)]];
        let fam = forward_closure(&rm, &[s.vector(6)], &extras).unwrap();
        assert!(validate_family(&rm, &fam).pass());
    }

    #[test]
    fn restriction_and_possibility() {
        let m = Model::stationary(2, 2, 2, tol()).unwrap();
        let p = ComplexMatrix::basis_projector(4, &[0, 1]).unwrap();
        let fam = PhysicalFamily::constant(&m, &p);
        let id = ComplexMatrix::identity(4);
        assert!(fam.physical_restrict(&id, 0).unwrap().approx_eq(&p, 1e-12));
        assert!(fam.is_physically_possible(&id, 0));

        let orth = ComplexMatrix::basis_projector(4, &[2, 3]).unwrap();
        assert!(fam.physical_restrict(&orth, 0).unwrap().is_zero(1e-12));
        assert!(!fam.is_physically_possible(&orth, 0));

        // rotate a commuting predicate so it straddles the physical subspace
        let h = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[1.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap()
        .scale_real(0.5);
        let h = &h + &ComplexMatrix::basis_projector(4, &[1]).unwrap().scale_real(0.5);
        assert!(is_projector(&h, tol()));
        assert!(!fam.is_physically_possible(&h, 0));
        assert!(matches!(fam.physical_restrict(&h, 0), Err(Error::NotPhysical(_))));
    }

    #[test]
    fn self_consistency_cases() {
        let m = Model::stationary(2, 2, 2, tol()).unwrap();
        let p = ComplexMatrix::basis_projector(4, &[0, 1]).unwrap();
        let fam = PhysicalFamily::constant(&m, &p);
        assert!(fam.check_self_consistency(&ComplexMatrix::identity(4), 1).unwrap());

        // 𝒫(1) gains a direction that 𝒫(0) never reaches
        let grown = ComplexMatrix::basis_projector(4, &[0, 1, 2]).unwrap();
        let fam = PhysicalFamily::from_projectors(vec![p, grown], tol());
        assert!(validate_family(&m, &fam).pass());
        assert!(!fam.check_self_consistency(&ComplexMatrix::identity(4), 1).unwrap());
        let orth = ComplexMatrix::basis_projector(4, &[3]).unwrap();
        assert!(fam.check_self_consistency(&orth, 1).is_err());
    }
}
