//! Verifiability of probabilities in both time directions, the Z/W split of
//! an outcome subspace, and the observer-restriction checks.

use serde::Serialize;

use crate::born::OutcomeSet;
use crate::condition::Condition;
use crate::error::{Error, Result};
use crate::linalg::{commutator, commutator_norm, sandwich, span_projector, ComplexMatrix};
use crate::model::{Event, Model, PhysicalFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Outcome at or after the condition.
    Forward,
    /// Outcome before the condition.
    Backward,
}

impl Direction {
    pub fn between(outcome_index: usize, condition_index: usize) -> Self {
        if outcome_index >= condition_index {
            Direction::Forward
        } else {
            Direction::Backward
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeCheck {
    /// `max |[ℙ_Y(k), 𝒫(k)]|`.
    pub commutator_physical: f64,
    /// `max |𝒫(s) [ℙ_Y(k), ℙ_X(k_c)] 𝒫(s)|`.
    pub commutator_condition: f64,
    pub verifiable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifiabilityReport {
    pub direction: Direction,
    pub outcomes: Vec<OutcomeCheck>,
    pub verifiable: bool,
}

/// Both commutator conditions for one outcome projector at index `k`.
pub fn check_outcome(cond: &Condition, y: &ComplexMatrix, k: usize, direction: Direction) -> Result<OutcomeCheck> {
    let fam = cond.family();
    let eps = cond.model().tol().eps_zero;
    let s = match direction {
        Direction::Forward => cond.index(),
        Direction::Backward => k,
    };
    let commutator_physical = commutator_norm(y, fam.at(k)?)?;
    let commutator_condition = sandwich(fam.at(s)?, &commutator(y, cond.projector())?).max_abs();
    Ok(OutcomeCheck {
        commutator_physical,
        commutator_condition,
        verifiable: commutator_physical <= eps && commutator_condition <= eps,
    })
}

fn report(cond: &Condition, outcomes: &OutcomeSet, direction: Direction) -> Result<VerifiabilityReport> {
    let checks = outcomes
        .projectors()
        .iter()
        .map(|y| check_outcome(cond, y, outcomes.index(), direction))
        .collect::<Result<Vec<_>>>()?;
    let verifiable = checks.iter().all(|c| c.verifiable);
    Ok(VerifiabilityReport { direction, outcomes: checks, verifiable })
}

/// Outcomes after the condition.
pub fn verifiable_forward(cond: &Condition, outcomes: &OutcomeSet) -> Result<VerifiabilityReport> {
    if outcomes.index() <= cond.index() {
        return Err(Error::WrongRule(format!(
            "forward verifiability needs outcome index {} after condition index {}",
            outcomes.index(),
            cond.index()
        )));
    }
    report(cond, outcomes, Direction::Forward)
}

/// Outcomes before the condition.
pub fn verifiable_backward(cond: &Condition, outcomes: &OutcomeSet) -> Result<VerifiabilityReport> {
    if outcomes.index() >= cond.index() {
        return Err(Error::WrongRule(format!(
            "backward verifiability needs outcome index {} before condition index {}",
            outcomes.index(),
            cond.index()
        )));
    }
    report(cond, outcomes, Direction::Backward)
}

/// Picks the direction from the indices.
pub fn verifiable(cond: &Condition, outcomes: &OutcomeSet) -> Result<VerifiabilityReport> {
    report(cond, outcomes, Direction::between(outcomes.index(), cond.index()))
}

/// Pieces of the generic construction: the operator `T` pulled through,
/// the sandwiching index `s`, and the classifying projector.
fn pieces(cond: &Condition, y: &Event, direction: Direction) -> Result<(ComplexMatrix, usize, ComplexMatrix)> {
    let fam = cond.family();
    Ok(match direction {
        Direction::Forward => (fam.physical_restrict(&y.projector, y.index)?, cond.index(), cond.projector().clone()),
        Direction::Backward => (cond.restricted(), y.index, y.projector.clone()),
    })
}

fn split(cond: &Condition, y: &Event, direction: Direction, keep: bool) -> Result<ComplexMatrix> {
    let check = check_outcome(cond, &y.projector, y.index, direction)?;
    if !check.verifiable {
        return Err(Error::Unverifiable {
            reason: "Z/W split needs a verifiable outcome".into(),
            commutator: check.commutator_physical.max(check.commutator_condition),
        });
    }
    let tol = cond.model().tol();
    let n = cond.model().dim();
    let (t, s, c) = pieces(cond, y, direction)?;
    let classifier = if keep { c } else { (&ComplexMatrix::identity(n) - &c).hermitian_part() };
    let m = sandwich(cond.family().at(s)?, &t);
    let (values, vectors) = sandwich(&classifier, &m).hermitian_part().eigh()?;
    let images: Vec<_> = values
        .iter()
        .zip(&vectors)
        .filter(|(l, _)| **l > tol.eps_eig)
        .map(|(_, v)| t.apply(v))
        .collect();
    if images.is_empty() {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    span_projector(&images, n, tol)
}

/// States of the outcome subspace that certainly came from the condition.
pub fn z_subspace(cond: &Condition, y: &Event, direction: Direction) -> Result<ComplexMatrix> {
    split(cond, y, direction, true)
}

/// States of the outcome subspace that certainly did not come from the condition.
pub fn w_subspace(cond: &Condition, y: &Event, direction: Direction) -> Result<ComplexMatrix> {
    split(cond, y, direction, false)
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub z: ComplexMatrix,
    pub w: ComplexMatrix,
    /// `max |𝒫(s) T 𝒫(s) − 𝒫(s) 𝒫_Z 𝒫(s) − 𝒫(s) 𝒫_W 𝒫(s)|`.
    pub residual: f64,
    /// `max |𝒫(s) 𝒫_Z 𝒫_W 𝒫(s)|`.
    pub overlap: f64,
}

pub fn decompose(cond: &Condition, y: &Event, direction: Direction) -> Result<Decomposition> {
    let z = z_subspace(cond, y, direction)?;
    let w = w_subspace(cond, y, direction)?;
    let (t, s, _) = pieces(cond, y, direction)?;
    let ps = cond.family().at(s)?;
    let sum = &sandwich(ps, &z) + &sandwich(ps, &w);
    let residual = sandwich(ps, &t).max_abs_diff(&sum);
    let overlap = (&(ps * &z) * &(&w * ps)).max_abs();
    Ok(Decomposition { z, w, residual, overlap })
}

/// `|LHS − RHS|` of the trace identity for each outcome.
///
/// Forward: `Tr(ℙ_Y ℙ_X 𝒫(k0) ℙ_X)`; backward: `Tr(𝒫(k) ℙ_Y ℙ_X 𝒫(k0))`;
/// both against `Tr(𝒫_Z 𝒫(k0))`.
pub fn verify_trace_identity(cond: &Condition, outcomes: &OutcomeSet, k0: usize) -> Result<Vec<f64>> {
    let fam = cond.family();
    let p0 = fam.at(k0)?;
    let direction = Direction::between(outcomes.index(), cond.index());
    outcomes
        .events()
        .iter()
        .map(|y| {
            let lhs = match direction {
                Direction::Forward => (&y.projector * &cond.condition_operator(k0)?).trace()?,
                Direction::Backward => {
                    crate::linalg::product(&[fam.at(y.index)?, &y.projector, cond.projector(), p0]).trace()?
                }
            };
            let rhs = (&z_subspace(cond, y, direction)? * p0).trace()?;
            Ok((lhs - rhs).norm())
        })
        .collect()
}

/// `max |𝒫_{Z_i} 𝒫_{Z_j}|` for each pair `i < j`.
pub fn z_overlaps(cond: &Condition, outcomes: &OutcomeSet) -> Result<Vec<(usize, usize, f64)>> {
    let direction = Direction::between(outcomes.index(), cond.index());
    let zs = outcomes.events().iter().map(|y| z_subspace(cond, y, direction)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            out.push((i, j, (&zs[i] * &zs[j]).max_abs()));
        }
    }
    Ok(out)
}

/// `max |[ℙ_M, 𝒫_O(k)]|` with `ℙ_O` on system1 and `ℙ_M` on system2, no hypotheses checked.
pub fn observer_commutator(model: &Model, fam: &PhysicalFamily, p_o: &ComplexMatrix, p_m: &ComplexMatrix, k: usize) -> Result<f64> {
    let o = model.heisenberg(&model.lift_system1(p_o)?, k)?;
    let m = model.heisenberg(&model.lift_system2(p_m)?, k)?;
    let restricted = fam.at(k)? * &o;
    commutator_norm(&m, &restricted)
}

/// Checks `[ℙ_M, 𝒫_O(k)] = 0` under the hypotheses that both predicates
/// commute with `𝒫(k)` and neither vanishes on it. Returns the commutator.
pub fn observer_restriction_check(
    model: &Model,
    fam: &PhysicalFamily,
    p_o: &ComplexMatrix,
    p_m: &ComplexMatrix,
    k: usize,
) -> Result<f64> {
    let o = model.heisenberg(&model.lift_system1(p_o)?, k)?;
    let m = model.heisenberg(&model.lift_system2(p_m)?, k)?;
    for (name, p) in [("system1", &o), ("system2", &m)] {
        if !fam.is_physically_possible(p, k) {
            return Err(Error::Inapplicable(format!("{name} predicate is not physically possible at index {k}")));
        }
    }
    let c = observer_commutator(model, fam, p_o, p_m, k)?;
    if c > model.tol().eps_zero {
        return Err(Error::Internal(format!("observer restriction violated (commutator {c:e})")));
    }
    Ok(c)
}

/// `[ℙ_C, 𝒫_R(k)] = 0` and `𝒫_R(k) ℙ_C ≠ 0`, for a physically possible `R`.
pub fn conditionally_realizable(fam: &PhysicalFamily, p_c: &ComplexMatrix, p_r: &ComplexMatrix, k: usize) -> Result<bool> {
    if !fam.is_physically_possible(p_r, k) {
        return Err(Error::NotPhysical(format!("reference predicate is not physically possible at index {k}")));
    }
    let eps = fam.tol().eps_zero;
    let restricted = fam.physical_restrict(p_r, k)?;
    Ok(commutator_norm(p_c, &restricted)? <= eps && !(&restricted * p_c).is_zero(eps))
}
