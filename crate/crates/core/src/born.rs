//! The amended Born rule in each of its regimes, plus the sequence rule.
//!
//! Every rule takes a [`Condition`] and events in the Heisenberg picture.
//! The caller names the regime; index windows are checked and a mismatch is a
//! [`Error::WrongRule`] rather than a silent switch of formula.

use num_complex::Complex64;
use serde::Serialize;

use crate::condition::{Condition, ObservableRep, StartTime};
use crate::error::{Error, Result};
use crate::linalg::{product, sandwich, ComplexMatrix, Tolerance};
use crate::model::{Event, Model};
use crate::verify::{self, Direction};

/// Pairwise orthogonal outcome projectors sharing one grid index.
#[derive(Debug, Clone)]
pub struct OutcomeSet {
    projectors: Vec<ComplexMatrix>,
    index: usize,
    complete: bool,
}

impl OutcomeSet {
    /// Outcomes given as system1 predicates or full Schrödinger projectors at `k`.
    pub fn new(model: &Model, predicates: &[ComplexMatrix], k: usize) -> Result<Self> {
        let events = predicates.iter().map(|p| Event::predicate(model, p, k)).collect::<Result<Vec<_>>>()?;
        Self::from_events(&events, model.tol())
    }

    pub fn from_events(events: &[Event], tol: Tolerance) -> Result<Self> {
        let first = events.first().ok_or_else(|| Error::Outcomes("empty outcome set".into()))?;
        let index = first.index;
        let n = first.projector.rows();
        if events.iter().any(|e| e.index != index) {
            return Err(Error::Outcomes("outcomes must share one grid index".into()));
        }
        for (i, a) in events.iter().enumerate() {
            for (j, b) in events.iter().enumerate().skip(i + 1) {
                if !(&a.projector * &b.projector).is_zero(tol.eps_zero) {
                    return Err(Error::Outcomes(format!("outcomes {i} and {j} are not orthogonal")));
                }
            }
        }
        let mut sum = ComplexMatrix::zeros(n, n);
        for e in events {
            sum = &sum + &e.projector;
        }
        let complete = sum.approx_eq(&ComplexMatrix::identity(n), tol.eps_zero);
        Ok(OutcomeSet { projectors: events.iter().map(|e| e.projector.clone()).collect(), index, complete })
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn event(&self, i: usize) -> Result<Event> {
        let projector = self
            .projectors
            .get(i)
            .ok_or_else(|| Error::Outcomes(format!("outcome {i} out of range ({} outcomes)", self.len())))?
            .clone();
        Ok(Event { projector, index: self.index })
    }

    pub fn events(&self) -> Vec<Event> {
        self.projectors.iter().map(|p| Event { projector: p.clone(), index: self.index }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Forward,
    IntermediateFull,
    IntermediateKnown,
    Before,
    Approx,
    Sequence,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::Forward => "forward",
            Rule::IntermediateFull => "intermediate_full",
            Rule::IntermediateKnown => "intermediate_known",
            Rule::Before => "before",
            Rule::Approx => "approx",
            Rule::Sequence => "sequence",
        }
    }
}

/// Which operator stands for the condition at an intermediate index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `𝒫_(X,k_c)(k)`.
    Support,
    /// `ℙ_{X(k)}(k)` from an observable representation.
    Observable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityResult {
    pub value: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub rule: Rule,
    pub warnings: Vec<String>,
}

fn real(z: Complex64, eps: f64, what: &str) -> Result<f64> {
    if z.im.abs() > eps {
        return Err(Error::Internal(format!("{what} has imaginary part {:e}", z.im)));
    }
    Ok(z.re)
}

fn ratio(num: Complex64, den: Complex64, rule: Rule, tol: Tolerance) -> Result<ProbabilityResult> {
    let numerator = real(num, tol.eps_zero, "numerator")?;
    let denominator = real(den, tol.eps_zero, "denominator")?;
    if denominator <= tol.eps_zero {
        return Err(Error::NoWeight(denominator));
    }
    let value = numerator / denominator;
    if !(-1e-9..=1.0 + 1e-9).contains(&value) {
        return Err(Error::Internal(format!("probability {value} outside [0, 1]")));
    }
    Ok(ProbabilityResult { value, numerator, denominator, rule, warnings: Vec::new() })
}

fn check_k0(cond: &Condition, k0: usize) -> Result<()> {
    cond.model().check_index(k0)?;
    let start = cond.start_time(None)?;
    if k0 > start.trimming_index {
        return Err(Error::StartTooLate { k0, start: start.trimming_index });
    }
    Ok(())
}

fn check_event(cond: &Condition, y: &Event) -> Result<()> {
    cond.model().check_index(y.index)?;
    let n = cond.model().dim();
    if y.projector.rows() != n || y.projector.cols() != n {
        return Err(Error::Shape(format!("outcome projector must be {n}x{n}")));
    }
    Ok(())
}

fn wrong_rule(rule: Rule, msg: String) -> Error {
    Error::WrongRule(format!("{} rule: {msg}", rule.label()))
}

/// `Tr(ℙ_Y ℙ_X 𝒫(k0) ℙ_X) / Tr(ℙ_X 𝒫(k0))` for `k ≥ k_c`.
pub fn prob_forward(cond: &Condition, y: &Event, k0: usize) -> Result<ProbabilityResult> {
    check_event(cond, y)?;
    if y.index < cond.index() {
        return Err(wrong_rule(Rule::Forward, format!("outcome index {} precedes condition index {}", y.index, cond.index())));
    }
    let c = cond.condition_operator(k0)?;
    let tol = cond.model().tol();
    let num = (&y.projector * &c).trace()?;
    let den = (cond.projector() * cond.family().at(k0)?).trace()?;
    ratio(num, den, Rule::Forward, tol)
}

fn intermediate_window(cond: &Condition, k: usize, k0: usize, rule: Rule) -> Result<()> {
    if !(k0 < k && k < cond.index()) {
        return Err(wrong_rule(rule, format!("needs k0 < k < k_c, got k0={k0}, k={k}, k_c={}", cond.index())));
    }
    check_k0(cond, k0)
}

fn unpretty_term(cond: &Condition, y: &ComplexMatrix, k: usize, k0: usize, support: &ComplexMatrix) -> Result<Complex64> {
    let fam = cond.family();
    let inner = sandwich(support, fam.at(k0)?);
    let m = product(&[cond.projector(), fam.at(k)?, y, &inner, y, fam.at(k)?]);
    m.trace()
}

/// The general intermediate rule, normalised over the complete outcome set.
pub fn prob_intermediate_full(cond: &Condition, outcomes: &OutcomeSet, i: usize, k0: usize) -> Result<ProbabilityResult> {
    let k = outcomes.index();
    intermediate_window(cond, k, k0, Rule::IntermediateFull)?;
    if !outcomes.is_complete() {
        return Err(Error::Outcomes("the intermediate rule needs a complete outcome set".into()));
    }
    let y = outcomes.event(i)?;
    check_event(cond, &y)?;
    let support = cond.support_at(k)?;
    let num = unpretty_term(cond, &y.projector, k, k0, &support)?;
    let mut den = Complex64::new(0.0, 0.0);
    for z in outcomes.projectors() {
        den += unpretty_term(cond, z, k, k0, &support)?;
    }
    ratio(num, den, Rule::IntermediateFull, cond.model().tol())
}

/// What was known at `k` given the condition, with no information gathered after `k`.
pub fn prob_intermediate_known(
    cond: &Condition,
    y: &Event,
    k0: usize,
    variant: Variant,
    rep: Option<&ObservableRep>,
) -> Result<ProbabilityResult> {
    check_event(cond, y)?;
    let k = y.index;
    intermediate_window(cond, k, k0, Rule::IntermediateKnown)?;
    let r = match variant {
        Variant::Support => cond.support_at(k)?,
        Variant::Observable => {
            let rep = rep.ok_or_else(|| Error::Domain("observable variant needs an observable representation".into()))?;
            rep.projector(k)?.clone()
        }
    };
    let p0 = cond.family().at(k0)?;
    let num = (&y.projector * &sandwich(&r, p0)).trace()?;
    let den = (&r * p0).trace()?;
    ratio(num, den, Rule::IntermediateKnown, cond.model().tol())
}

/// `Tr(ℙ_X 𝒫(k0) ℙ_Y 𝒫(k0)) / Tr(ℙ_X 𝒫(k0))` for `k ≤ k0`.
pub fn prob_before(cond: &Condition, y: &Event, k0: usize) -> Result<ProbabilityResult> {
    check_event(cond, y)?;
    if y.index > k0 {
        return Err(wrong_rule(Rule::Before, format!("outcome index {} lies after k0={k0}", y.index)));
    }
    check_k0(cond, k0)?;
    let p0 = cond.family().at(k0)?;
    let num = product(&[cond.projector(), p0, &y.projector, p0]).trace()?;
    let den = (cond.projector() * p0).trace()?;
    ratio(num, den, Rule::Before, cond.model().tol())
}

/// The before-rule with `k0` moved up to the outcome index.
pub fn prob_approx(cond: &Condition, y: &Event) -> Result<ProbabilityResult> {
    check_event(cond, y)?;
    let k = y.index;
    if k >= cond.index() {
        return Err(wrong_rule(Rule::Approx, format!("outcome index {k} is not before condition index {}", cond.index())));
    }
    let num = (&cond.trimmed(k)? * &y.projector).trace()?;
    let den = (cond.projector() * cond.family().at(k)?).trace()?;
    let mut r = ratio(num, den, Rule::Approx, cond.model().tol())?;
    r.warnings.push("approximation: k0 taken equal to the outcome index".into());
    Ok(r)
}

/// `Tr(ℙ_Y2 ℙ_Y1 C ℙ_Y1) / Tr(ℙ_X 𝒫(k0))`, refused unless both stages are verifiable.
pub fn prob_sequence(cond: &Condition, y1: &Event, y2: &Event, k0: usize) -> Result<ProbabilityResult> {
    check_event(cond, y1)?;
    check_event(cond, y2)?;
    if y2.index <= y1.index {
        return Err(wrong_rule(Rule::Sequence, format!("second outcome index {} must follow the first {}", y2.index, y1.index)));
    }
    let tol = cond.model().tol();
    let fam = cond.family();
    let direction = Direction::between(y1.index, cond.index());
    let stage1 = verify::check_outcome(cond, &y1.projector, y1.index, direction)?;
    if !stage1.verifiable {
        return Err(Error::Unverifiable {
            reason: "first outcome does not retain the condition".into(),
            commutator: stage1.commutator_physical.max(stage1.commutator_condition),
        });
    }
    let physical = crate::linalg::commutator_norm(&y2.projector, fam.at(y2.index)?)?;
    let retained = sandwich(fam.at(y1.index)?, &crate::linalg::commutator(&y2.projector, &y1.projector)?).max_abs();
    if physical > tol.eps_zero || retained > tol.eps_zero {
        return Err(Error::Unverifiable {
            reason: "second outcome does not retain a record of the first".into(),
            commutator: physical.max(retained),
        });
    }
    let c = cond.condition_operator(k0)?;
    let num = product(&[&y2.projector, &y1.projector, &c, &y1.projector]).trace()?;
    let den = (cond.projector() * fam.at(k0)?).trace()?;
    let result = ratio(num, den, Rule::Sequence, tol)?;
    check_composition(cond, y1, y2, k0, direction, &result)?;
    Ok(result)
}

/// Recomputes a sequence probability as the first-stage probability times the
/// second-stage probability conditioned on the first outcome's Z subspace.
fn check_composition(
    cond: &Condition,
    y1: &Event,
    y2: &Event,
    k0: usize,
    direction: Direction,
    result: &ProbabilityResult,
) -> Result<()> {
    let tol = cond.model().tol();
    let p0 = cond.family().at(k0)?;
    let z = verify::z_subspace(cond, y1, direction)?;
    let wz = real((&z * p0).trace()?, tol.eps_zero, "Z weight")?;
    let composed = if wz <= tol.eps_zero {
        0.0
    } else {
        let first = wz / result.denominator;
        let second = real((&y2.projector * &sandwich(&z, p0)).trace()?, tol.eps_zero, "second stage")? / wz;
        first * second
    };
    if (composed - result.value).abs() > 1e-9 {
        return Err(Error::Internal(format!(
            "sequence value {} differs from its staged composition {composed}",
            result.value
        )));
    }
    Ok(())
}

/// Smallest start index among the given conditions, warning on empty ones.
pub fn choose_k0(starts: &[StartTime]) -> (usize, Vec<String>) {
    let mut warnings = Vec::new();
    for (i, s) in starts.iter().enumerate() {
        if s.empty {
            warnings.push(format!("start time {i} is empty; index 0 used for it"));
        }
    }
    (starts.iter().map(|s| s.index).min().unwrap_or(0), warnings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{forward_closure, PhysicalFamily, TimeGrid};
    use crate::random::Sampler;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn random_setup(seed: u64) -> (Model, PhysicalFamily) {
        let mut s = Sampler::new(seed);
        let grid = TimeGrid::new(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let steps = (0..3).map(|_| s.unitary(6)).collect();
        let model = Model::new(2, 3, grid, steps, tol()).unwrap();
        let extras = vec![vec![], vec![s.vector(6)], vec![s.vector(6)], vec![]];
        let fam = forward_closure(&model, &[s.vector(6), s.vector(6)], &extras).unwrap();
        (model, fam)
    }

    fn identity_event(model: &Model, k: usize) -> Event {
        Event::system1(model, &ComplexMatrix::identity(model.d1()), k).unwrap()
    }

    #[test]
    fn identity_outcome_is_certain() {
        let (model, fam) = random_setup(1);
        let id = ComplexMatrix::identity(2);
        let cond = Condition::system1(&model, &fam, &id, 2).unwrap();
        assert!((prob_forward(&cond, &identity_event(&model, 3), 0).unwrap().value - 1.0).abs() < 1e-9);
        assert!((prob_before(&cond, &identity_event(&model, 0), 0).unwrap().value - 1.0).abs() < 1e-9);
        assert!((prob_approx(&cond, &identity_event(&model, 1)).unwrap().value - 1.0).abs() < 1e-9);
        let r = prob_intermediate_known(&cond, &identity_event(&model, 1), 0, Variant::Support, None).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        let set = OutcomeSet::new(&model, &[id], 1).unwrap();
        assert!((prob_intermediate_full(&cond, &set, 0, 0).unwrap().value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn regime_mismatch_is_wrong_rule() {
        let (model, fam) = random_setup(2);
        let cond = Condition::system1(&model, &fam, &ComplexMatrix::identity(2), 2).unwrap();
        assert!(matches!(prob_forward(&cond, &identity_event(&model, 1), 0), Err(Error::WrongRule(_))));
        assert!(matches!(prob_before(&cond, &identity_event(&model, 1), 0), Err(Error::WrongRule(_))));
        assert!(matches!(prob_approx(&cond, &identity_event(&model, 2)), Err(Error::WrongRule(_))));
        let r = prob_intermediate_known(&cond, &identity_event(&model, 0), 0, Variant::Support, None);
        assert!(matches!(r, Err(Error::WrongRule(_))));
    }

    #[test]
    fn outcome_sets_checked() {
        let model = Model::stationary(3, 1, 2, tol()).unwrap();
        let p = |l: &[usize]| ComplexMatrix::basis_projector(3, l).unwrap();
        assert!(OutcomeSet::new(&model, &[p(&[0, 1]), p(&[1])], 0).is_err());
        assert!(!OutcomeSet::new(&model, &[p(&[0]), p(&[1])], 0).unwrap().is_complete());
        assert!(OutcomeSet::new(&model, &[p(&[0]), p(&[1, 2])], 0).unwrap().is_complete());
        let grid = TimeGrid::new(vec![0.0, 1.0, 2.0]).unwrap();
        let m3 = Model::new(3, 1, grid, vec![ComplexMatrix::identity(3), ComplexMatrix::identity(3)], tol()).unwrap();
        let fam3 = PhysicalFamily::identity(&m3);
        let cond3 = Condition::system1(&m3, &fam3, &p(&[0, 1, 2]), 2).unwrap();
        let partial3 = OutcomeSet::new(&m3, &[p(&[0])], 1).unwrap();
        assert!(matches!(prob_intermediate_full(&cond3, &partial3, 0, 0), Err(Error::Outcomes(_))));
    }

    #[test]
    fn before_rule_matches_trace_oracle() {
        let mut s = Sampler::new(5);
        let model = Model::stationary(2, 2, 3, tol()).unwrap();
        // commuting diagonal instance
        let p = s.diagonal_projector(4);
        let fam = PhysicalFamily::constant(&model, &p);
        let x = ComplexMatrix::identity(2);
        let cond = Condition::system1(&model, &fam, &x, 2).unwrap();
        let y = Event::full(&model, &s.diagonal_projector(4), 0).unwrap();
        let r = prob_before(&cond, &y, 1).unwrap();
        let (pd, yd) = (p.as_nalgebra(), y.projector.as_nalgebra());
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..4 {
            num += (pd[(i, i)] * yd[(i, i)]).re;
            den += pd[(i, i)].re;
        }
        assert!((r.value - num / den).abs() < 1e-12);
    }

    #[test]
    fn zero_weight_reported() {
        let model = Model::stationary(2, 2, 2, tol()).unwrap();
        let p0 = ComplexMatrix::basis_projector(4, &[0]).unwrap();
        let p1 = ComplexMatrix::basis_projector(4, &[0, 3]).unwrap();
        let fam = PhysicalFamily::from_projectors(vec![p0, p1], tol());
        let x1 = ComplexMatrix::basis_projector(2, &[1]).unwrap();
        let cond = Condition::system1(&model, &fam, &x1, 1).unwrap();
        assert!(matches!(prob_forward(&cond, &identity_event(&model, 1), 0), Err(Error::NoWeight(_))));
    }

    #[test]
    fn choose_k0_takes_minimum() {
        let a = StartTime { index: 3, trimming_index: 3, empty: false };
        let b = StartTime { index: 0, trimming_index: 2, empty: true };
        let (k0, w) = choose_k0(&[a, b]);
        assert_eq!(k0, 0);
        assert_eq!(w.len(), 1);
    }
}
