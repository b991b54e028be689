//! Measurement processes: κ paths, normalised state paths, outcome
//! probabilities, refinement into equivalence classes and position marginals.

use serde::Serialize;

use crate::condition::{computational_basis, Condition};
use crate::error::{Error, Result};
use crate::linalg::{is_projector, sandwich, ComplexMatrix, Vector};
use crate::model::{Model, PhysicalFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    Observable,
    Support,
}

/// A start space `M0` at `k1` and system1 outcome spaces `M_i` at `k2 > k1`.
#[derive(Debug, Clone)]
pub struct MeasurementProcess<'a> {
    model: &'a Model,
    fam: &'a PhysicalFamily,
    m0: ComplexMatrix,
    k1: usize,
    outcomes: Vec<ComplexMatrix>,
    k2: usize,
    k0: usize,
    /// `C = ℙ_M0(k1) 𝒫(k0) ℙ_M0(k1)`.
    condition: ComplexMatrix,
    weight: f64,
    record_kept: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct KappaPath {
    pub outcome: usize,
    /// Grid index of the first entry.
    pub start: usize,
    pub kappas: Vec<ComplexMatrix>,
    pub representation: Representation,
}

impl KappaPath {
    pub fn traces(&self) -> Vec<f64> {
        self.kappas.iter().map(|k| k.tr()).collect()
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.kappas.len()
    }
}

impl<'a> MeasurementProcess<'a> {
    pub fn new(
        model: &'a Model,
        fam: &'a PhysicalFamily,
        m0: &ComplexMatrix,
        k1: usize,
        outcomes: &[ComplexMatrix],
        k2: usize,
        k0: usize,
    ) -> Result<Self> {
        if k2 <= k1 {
            return Err(Error::Domain(format!("outcome index {k2} must follow start index {k1}")));
        }
        if outcomes.is_empty() {
            return Err(Error::Outcomes("a measurement needs at least one outcome".into()));
        }
        let start = Condition::system1(model, fam, m0, k1)?;
        let condition = start.condition_operator(k0)?;
        let weight = start.weight(k0)?;
        if weight <= model.tol().eps_zero {
            return Err(Error::NoWeight(weight));
        }
        let mut record_kept = Vec::with_capacity(outcomes.len());
        for (i, mi) in outcomes.iter().enumerate() {
            let cond = Condition::system1(model, fam, mi, k2).map_err(|e| match e {
                Error::NotPhysical(m) => Error::NotPhysical(format!("outcome {i}: {m}")),
                other => other,
            })?;
            let kept = match cond.support_at(k1) {
                Ok(s) => (start.projector() * &s).approx_eq(&s, model.tol().eps_zero),
                Err(Error::Unreachable(_)) => true,
                Err(e) => return Err(e),
            };
            record_kept.push(kept);
        }
        Ok(MeasurementProcess {
            model,
            fam,
            m0: m0.clone(),
            k1,
            outcomes: outcomes.to_vec(),
            k2,
            k0,
            condition,
            weight,
            record_kept,
        })
    }

    pub fn start_index(&self) -> usize {
        self.k1
    }

    pub fn end_index(&self) -> usize {
        self.k2
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Whether each outcome's past at `k1` lies inside the start space.
    pub fn record_kept(&self) -> &[bool] {
        &self.record_kept
    }

    /// False when some outcome keeps no record of the preparation.
    pub fn is_measurement(&self) -> bool {
        self.record_kept.iter().all(|&b| b)
    }

    fn outcome(&self, i: usize) -> Result<&ComplexMatrix> {
        self.outcomes.get(i).ok_or_else(|| Error::Outcomes(format!("outcome {i} out of range ({} outcomes)", self.len())))
    }

    fn kappa_from(&self, r: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
        let heis = sandwich(r, &self.condition);
        let schr = self.model.schrodinger(&heis, k)?;
        Ok(schr.partial_trace_1(self.model.d1(), self.model.d2())?.scale_real(1.0 / self.weight).hermitian_part())
    }

    /// `κ_i(k)` for `k` in `k1..=k2`, reading the outcome condition back in time
    /// either through its observable representation or through its trimmed support.
    pub fn kappa_path(&self, i: usize, representation: Representation) -> Result<KappaPath> {
        self.kappa_path_in(i, representation, &computational_basis(self.model.d1()))
    }

    /// As [`MeasurementProcess::kappa_path`] with an explicit system1 basis for the observable form.
    pub fn kappa_path_in(&self, i: usize, representation: Representation, basis1: &[Vector]) -> Result<KappaPath> {
        let cond = Condition::system1(self.model, self.fam, self.outcome(i)?, self.k2)?;
        let rep = match representation {
            Representation::Observable => Some(cond.observable_rep(basis1)?),
            Representation::Support => None,
        };
        let mut kappas = Vec::with_capacity(self.k2 - self.k1 + 1);
        for k in self.k1..=self.k2 {
            let r = match (&rep, k == self.k2) {
                (_, true) => cond.restricted(),
                (Some(rep), false) => rep.projector(k)?.clone(),
                (None, false) => match cond.support_at(k) {
                    Ok(s) => s,
                    Err(Error::Unreachable(_)) => ComplexMatrix::zeros(self.model.dim(), self.model.dim()),
                    Err(e) => return Err(e),
                },
            };
            kappas.push(self.kappa_from(&r, k)?);
        }
        Ok(KappaPath { outcome: i, start: self.k1, kappas, representation })
    }

    /// `P(M_i; k2 | M0; k1) = Tr κ_i(k2)`.
    pub fn outcome_probability(&self, i: usize) -> Result<f64> {
        let mi = self.model.lift_system1_at(self.outcome(i)?, self.k2)?;
        Ok((&mi * &self.condition).tr() / self.weight)
    }

    /// Splits each outcome into classes of system1 basis labels whose
    /// normalised paths coincide over `k1..=k2`. Labels that cannot occur are left out.
    pub fn refine_outcomes(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        let d1 = self.model.d1();
        let eps = self.model.tol().eps_zero;
        let mut all = Vec::with_capacity(self.len());
        for mi in &self.outcomes {
            let diag_ok = (0..d1).all(|a| (0..d1).all(|b| a == b || mi.get(a, b).norm() <= eps));
            if !diag_ok {
                return Err(Error::Domain("refinement needs outcomes diagonal in the system1 basis".into()));
            }
            let labels: Vec<usize> = (0..d1).filter(|&l| mi.get(l, l).re > 0.5).collect();
            let mut classes: Vec<(Vec<ComplexMatrix>, Vec<usize>)> = Vec::new();
            for l in labels {
                let Some(path) = self.label_path(l)? else { continue };
                match classes.iter_mut().find(|(rep, _)| paths_equal(rep, &path, eps)) {
                    Some((_, members)) => members.push(l),
                    None => classes.push((path, vec![l])),
                }
            }
            all.push(classes.into_iter().map(|(_, m)| m).collect());
        }
        Ok(all)
    }

    /// Normalised support-form path for a single system1 label, or `None` if unreachable.
    fn label_path(&self, l: usize) -> Result<Option<Vec<ComplexMatrix>>> {
        let pl = ComplexMatrix::basis_projector(self.model.d1(), &[l])?;
        let lifted = self.model.lift_system1_at(&pl, self.k2)?;
        if !self.fam.is_physically_possible(&lifted, self.k2) {
            return Ok(None);
        }
        let cond = Condition::from_heisenberg(self.model, self.fam, lifted, self.k2)?;
        let mut path = Vec::new();
        for k in self.k1..=self.k2 {
            let r = if k == self.k2 {
                cond.restricted()
            } else {
                match cond.support_at(k) {
                    Ok(s) => s,
                    Err(Error::Unreachable(_)) => return Ok(None),
                    Err(e) => return Err(e),
                }
            };
            let kappa = self.kappa_from(&r, k)?;
            let t = kappa.tr();
            if t <= self.model.tol().eps_zero {
                return Ok(None);
            }
            path.push(kappa.scale_real(1.0 / t));
        }
        Ok(Some(path))
    }

    pub fn start_projector(&self) -> &ComplexMatrix {
        &self.m0
    }

    pub fn k0(&self) -> usize {
        self.k0
    }
}

fn paths_equal(a: &[ComplexMatrix], b: &[ComplexMatrix], eps: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(y, eps))
}

/// `ρ_i(k) = κ_i(k) / Tr κ_i(k)`.
pub fn rho_path(path: &KappaPath, eps: f64) -> Result<Vec<ComplexMatrix>> {
    path.kappas
        .iter()
        .zip(path.indices())
        .map(|(kappa, k)| {
            let t = kappa.tr();
            if t <= eps {
                return Err(Error::Unreachable(format!("outcome {} unreachable at index {k}", path.outcome)));
            }
            Ok(kappa.scale_real(1.0 / t))
        })
        .collect()
}

/// `Tr(ℙ_x ρ(k))` for each index and position cell.
pub fn position_distribution(rhos: &[ComplexMatrix], cells: &[ComplexMatrix], eps: f64) -> Result<Vec<Vec<f64>>> {
    let d = rhos.first().map(|r| r.rows()).unwrap_or(0);
    let tol = crate::linalg::Tolerance { eps_zero: eps, eps_eig: eps };
    let mut sum = ComplexMatrix::zeros(d, d);
    for (i, p) in cells.iter().enumerate() {
        if p.rows() != d || !is_projector(p, tol) {
            return Err(Error::Domain(format!("position cell {i} is not a {d}x{d} projector")));
        }
        for q in &cells[i + 1..] {
            if q.rows() == d && !(p * q).is_zero(eps) {
                return Err(Error::Domain("position cells overlap".into()));
            }
        }
        sum = &sum + p;
    }
    if !sum.approx_eq(&ComplexMatrix::identity(d), eps) {
        return Err(Error::Domain("position cells do not cover system2".into()));
    }
    Ok(rhos.iter().map(|rho| cells.iter().map(|p| (p * rho).tr()).collect()).collect())
}

/// `Tr(ρ²)` at each index.
pub fn purity(rhos: &[ComplexMatrix]) -> Vec<f64> {
    rhos.iter().map(|r| (r * r).tr()).collect()
}
