//! Built-in scenarios, the textbook Born oracle and the intro demonstration.
//!
//! Every built-in keeps the recipe its family was made from so that it can be
//! written out as a scenario file and loaded back unchanged.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::born::{self, Variant};
use crate::condition::Condition;
use crate::error::{Error, Result};
use crate::linalg::{c, ket, range_basis, ComplexMatrix, Tolerance, Vector};
use crate::model::{forward_closure, validate_family, Event, Model, PhysicalFamily, TimeGrid};

/// How a predicate is written down.
#[derive(Debug, Clone, PartialEq)]
pub enum Predicate {
    /// System1 basis labels.
    Labels(Vec<usize>),
    /// System2 basis labels, extended over all of system1.
    System2Labels(Vec<usize>),
    /// A `d1×d1` system1 projector or a full-space Schrödinger projector.
    Matrix(ComplexMatrix),
}

impl Predicate {
    /// The projector as accepted by [`Event::predicate`].
    pub fn matrix(&self, model: &Model) -> Result<ComplexMatrix> {
        match self {
            Predicate::Labels(l) => ComplexMatrix::basis_projector(model.d1(), l),
            Predicate::System2Labels(l) => {
                Ok(ComplexMatrix::identity(model.d1()).kron(&ComplexMatrix::basis_projector(model.d2(), l)?))
            }
            Predicate::Matrix(m) => Ok(m.clone()),
        }
    }

    pub fn event(&self, model: &Model, k: usize) -> Result<Event> {
        Event::predicate(model, &self.matrix(model)?, k)
    }
}

/// Recipe for the physical family.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Explicit(Vec<ComplexMatrix>),
    /// Initial Schrödinger states at index 0 plus states added at later indices.
    Closure { initial: Vec<Vector>, extras: BTreeMap<usize, Vec<Vector>> },
}

impl FamilySpec {
    pub fn build(&self, model: &Model) -> Result<PhysicalFamily> {
        let fam = match self {
            FamilySpec::Explicit(ps) => PhysicalFamily::from_projectors(ps.clone(), model.tol()),
            FamilySpec::Closure { initial, extras } => {
                let mut per_index = vec![Vec::new(); model.grid().len()];
                for (&k, states) in extras {
                    model.check_index(k)?;
                    per_index[k] = states.clone();
                }
                forward_closure(model, initial, &per_index)?
            }
        };
        let report = validate_family(model, &fam);
        match report.first_failure() {
            Some(msg) => Err(Error::Validation(msg)),
            None => Ok(fam),
        }
    }
}

/// A model, its physical family and named predicates.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub model: Model,
    pub family: PhysicalFamily,
    pub family_spec: FamilySpec,
    pub predicates: BTreeMap<String, Predicate>,
    /// Ordered position cells, each a set of system2 labels.
    pub positions: Vec<(String, Vec<usize>)>,
}

impl Scenario {
    pub fn new(
        name: &str,
        model: Model,
        family_spec: FamilySpec,
        predicates: BTreeMap<String, Predicate>,
        positions: Vec<(String, Vec<usize>)>,
    ) -> Result<Self> {
        let family = family_spec.build(&model).map_err(|e| match e {
            Error::Validation(m) => Error::Validation(format!("family: {m}")),
            other => Error::Validation(format!("family: {other}")),
        })?;
        for (pname, p) in &predicates {
            let m = p.matrix(&model).map_err(|e| Error::Validation(format!("predicate {pname}: {e}")))?;
            let ok_shape = (m.rows() == model.d1() && m.cols() == model.d1()) || (m.rows() == model.dim() && m.cols() == model.dim());
            if !ok_shape || !crate::linalg::is_projector(&m, model.tol()) {
                return Err(Error::Validation(format!("predicate {pname} is not a projector of a valid shape")));
            }
        }
        for (cell, labels) in &positions {
            if labels.iter().any(|&l| l >= model.d2()) {
                return Err(Error::Validation(format!("position {cell} names a system2 label out of range")));
            }
        }
        Ok(Scenario { name: name.to_string(), model, family, family_spec, predicates, positions })
    }

    pub fn predicate(&self, name: &str) -> Result<&Predicate> {
        self.predicates.get(name).ok_or_else(|| Error::Domain(format!("unknown predicate '{name}'")))
    }

    /// Named predicate at a grid index given by label or number.
    pub fn event(&self, name: &str, at: &str) -> Result<Event> {
        let k = self.index(at)?;
        self.predicate(name)?.event(&self.model, k)
    }

    pub fn index(&self, at: &str) -> Result<usize> {
        self.model.grid().index_of(at).ok_or_else(|| Error::Domain(format!("unknown grid index '{at}'")))
    }

    pub fn condition(&self, name: &str, at: &str) -> Result<Condition<'_>> {
        Condition::from_event(&self.model, &self.family, &self.event(name, at)?)
    }

    /// `d2×d2` projectors for the position cells, in order.
    pub fn position_projectors(&self) -> Result<Vec<ComplexMatrix>> {
        self.positions.iter().map(|(_, l)| ComplexMatrix::basis_projector(self.model.d2(), l)).collect()
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Result<Self> {
        self.model = self.model.with_tolerance(tol);
        self.family = self.family_spec.build(&self.model)?;
        Ok(self)
    }
}

/// Built-in scenario names with one-line descriptions.
pub const BUILTINS: &[(&str, &str)] = &[
    ("reference", "two-stage Stern-Gerlach experiment with a detector record"),
    ("reference-redundant", "reference experiment with the up record split into two redundant copies"),
    ("sg-observers", "observer states tied to spin directions +z, -z, +x, -x"),
    ("double-slit", "which-path predicate erased by a Hadamard step"),
    ("classical-chain", "permutation dynamics with the identity family"),
];

pub fn builtin(name: &str) -> Result<Scenario> {
    match name {
        "reference" => reference(),
        "reference-redundant" => reference_redundant(),
        "sg-observers" => sg_observer_space(&[[0.0, 0.0, 1.0], [0.0, 0.0, -1.0], [1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]),
        "double-slit" => double_slit(),
        "classical-chain" => classical_chain(),
        _ => Err(Error::Domain(format!("unknown scenario '{name}'"))),
    }
}

/// Record register states.
pub mod record {
    pub const READY: usize = 0;
    pub const BLOCKED: usize = 1;
    pub const I: usize = 2;
    pub const F_UP: usize = 3;
    pub const F_DOWN: usize = 4;
}

/// Path cells of the particle.
pub mod cell {
    pub const SOURCE: usize = 0;
    pub const EXIT_UP: usize = 1;
    pub const BARRIER: usize = 2;
    pub const DET1: usize = 3;
    pub const DET2: usize = 4;
    pub const COUNT: usize = 5;
    pub const NAMES: [&str; COUNT] = ["source", "exit_up", "barrier", "det1", "det2"];
}

/// Spin-½ states in the z basis.
pub mod spin {
    use super::*;

    pub fn plus_x() -> Vector {
        Vector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)])
    }

    pub fn minus_x() -> Vector {
        Vector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)])
    }

    pub fn plus_y() -> Vector {
        Vector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)])
    }

    pub fn minus_y() -> Vector {
        Vector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, -FRAC_1_SQRT_2)])
    }

    /// Spin up along a unit direction.
    pub fn along(n: [f64; 3]) -> Vector {
        let theta = n[2].clamp(-1.0, 1.0).acos();
        let phi = n[1].atan2(n[0]);
        Vector::from_vec(vec![c((theta / 2.0).cos(), 0.0), Complex64::from_polar((theta / 2.0).sin(), phi)])
    }
}

fn kron_vec(a: &Vector, b: &Vector) -> Vector {
    a.kronecker(b)
}

/// `|record⟩ ⊗ spin ⊗ |cell⟩`.
fn state(d1: usize, rec: &Vector, s: &Vector, cl: usize) -> Vector {
    debug_assert_eq!(rec.len(), d1);
    kron_vec(&kron_vec(rec, s), &ket(cell::COUNT, cl))
}

/// Unitary exchanging each `input` with its `output` and acting as the identity elsewhere.
pub fn swap_unitary(dim: usize, pairs: &[(Vector, Vector)]) -> Result<ComplexMatrix> {
    let mut u = ComplexMatrix::identity(dim);
    for (a, b) in pairs {
        u = &u - &ComplexMatrix::outer(a, a);
        u = &u - &ComplexMatrix::outer(b, b);
        u = &u + &ComplexMatrix::outer(b, a);
        u = &u + &ComplexMatrix::outer(a, b);
    }
    if !u.is_unitary(1e-12) {
        return Err(Error::Internal("swap completion is not unitary".into()));
    }
    Ok(u)
}

fn reference_grid() -> Result<TimeGrid> {
    TimeGrid::with_labels(vec![0.0, 1.0, 2.0], vec!["ts".into(), "t0".into(), "t1".into()])
}

fn reference_positions() -> Vec<(String, Vec<usize>)> {
    (0..cell::COUNT).map(|c| (cell::NAMES[c].to_string(), vec![c, cell::COUNT + c])).collect()
}

fn labels(pairs: &[(&str, &[usize])]) -> BTreeMap<String, Predicate> {
    pairs.iter().map(|(n, l)| (n.to_string(), Predicate::Labels(l.to_vec()))).collect()
}

/// The reference experiment: a y-split with a record at detector 1 followed
/// by an x-split recorded at detector 2.
pub fn reference() -> Result<Scenario> {
    use record::*;
    let d1 = 5;
    let r = |i: usize| ket(d1, i);
    let dim = d1 * 2 * cell::COUNT;
    let step1 = swap_unitary(
        dim,
        &[
            (state(d1, &r(READY), &spin::plus_y(), cell::SOURCE), state(d1, &r(I), &spin::plus_y(), cell::DET1)),
            (state(d1, &r(READY), &spin::minus_y(), cell::SOURCE), state(d1, &r(BLOCKED), &spin::minus_y(), cell::BARRIER)),
        ],
    )?;
    let step2 = swap_unitary(
        dim,
        &[
            (state(d1, &r(I), &spin::plus_x(), cell::DET1), state(d1, &r(F_UP), &spin::plus_x(), cell::DET2)),
            (state(d1, &r(I), &spin::minus_x(), cell::DET1), state(d1, &r(F_DOWN), &spin::minus_x(), cell::DET2)),
        ],
    )?;
    let model = Model::new(d1, 2 * cell::COUNT, reference_grid()?, vec![step1, step2], Tolerance::default())?;
    let spec = FamilySpec::Closure {
        initial: vec![
            state(d1, &r(READY), &spin::plus_y(), cell::SOURCE),
            state(d1, &r(READY), &spin::minus_y(), cell::SOURCE),
        ],
        extras: BTreeMap::from([(
            2,
            vec![state(d1, &r(F_UP), &spin::plus_x(), cell::DET2), state(d1, &r(F_DOWN), &spin::minus_x(), cell::DET2)],
        )]),
    };
    let predicates = labels(&[
        ("ready", &[READY]),
        ("blocked", &[BLOCKED]),
        ("I", &[I]),
        ("notI", &[READY, BLOCKED, F_UP, F_DOWN]),
        ("Fup", &[F_UP]),
        ("Fdown", &[F_DOWN]),
        ("all", &[READY, BLOCKED, I, F_UP, F_DOWN]),
    ]);
    Scenario::new("reference", model, spec, predicates, reference_positions())
}

/// The reference experiment with the up record written into two redundant registers.
pub fn reference_redundant() -> Result<Scenario> {
    const READY: usize = 0;
    const BLOCKED: usize = 1;
    const I: usize = 2;
    const UP_A: usize = 3;
    const UP_B: usize = 4;
    const DOWN: usize = 5;
    let d1 = 6;
    let r = |i: usize| ket(d1, i);
    let dim = d1 * 2 * cell::COUNT;
    let both = (&r(UP_A) + &r(UP_B)) * c(FRAC_1_SQRT_2, 0.0);
    let step1 = swap_unitary(
        dim,
        &[
            (state(d1, &r(READY), &spin::plus_y(), cell::SOURCE), state(d1, &r(I), &spin::plus_y(), cell::DET1)),
            (state(d1, &r(READY), &spin::minus_y(), cell::SOURCE), state(d1, &r(BLOCKED), &spin::minus_y(), cell::BARRIER)),
        ],
    )?;
    let step2 = swap_unitary(
        dim,
        &[
            (state(d1, &r(I), &spin::plus_x(), cell::DET1), state(d1, &both, &spin::plus_x(), cell::DET2)),
            (state(d1, &r(I), &spin::minus_x(), cell::DET1), state(d1, &r(DOWN), &spin::minus_x(), cell::DET2)),
        ],
    )?;
    let model = Model::new(d1, 2 * cell::COUNT, reference_grid()?, vec![step1, step2], Tolerance::default())?;
    let spec = FamilySpec::Closure {
        initial: vec![
            state(d1, &r(READY), &spin::plus_y(), cell::SOURCE),
            state(d1, &r(READY), &spin::minus_y(), cell::SOURCE),
        ],
        extras: BTreeMap::from([(
            2,
            vec![
                state(d1, &r(UP_A), &spin::plus_x(), cell::DET2),
                state(d1, &r(UP_B), &spin::plus_x(), cell::DET2),
                state(d1, &r(DOWN), &spin::minus_x(), cell::DET2),
            ],
        )]),
    };
    let predicates = labels(&[
        ("ready", &[READY]),
        ("blocked", &[BLOCKED]),
        ("I", &[I]),
        ("Fup", &[UP_A, UP_B]),
        ("Fup_a", &[UP_A]),
        ("Fup_b", &[UP_B]),
        ("Fdown", &[DOWN]),
    ]);
    Scenario::new("reference-redundant", model, spec, predicates, reference_positions())
}

/// Observer states `O(s)` each tied to spin up along `s`.
pub fn sg_observer_space(directions: &[[f64; 3]]) -> Result<Scenario> {
    if directions.is_empty() {
        return Err(Error::Domain("at least one direction is needed".into()));
    }
    for (i, n) in directions.iter().enumerate() {
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!("direction {i} is not a unit vector")));
        }
        for (j, m) in directions.iter().enumerate().take(i) {
            if (0..3).all(|a| (n[a] - m[a]).abs() <= 1e-9) {
                return Err(Error::Domain(format!("directions {j} and {i} coincide")));
            }
        }
    }
    let d1 = directions.len();
    let model = Model::stationary(d1, 2, 2, Tolerance::default())?;
    let mut p = ComplexMatrix::zeros(2 * d1, 2 * d1);
    let mut predicates = BTreeMap::new();
    for (i, &n) in directions.iter().enumerate() {
        let s = spin::along(n);
        let sp = ComplexMatrix::outer(&s, &s);
        p = &p + &ComplexMatrix::basis_projector(d1, &[i])?.kron(&sp);
        predicates.insert(format!("O{i}"), Predicate::Labels(vec![i]));
        predicates.insert(format!("S{i}"), Predicate::Matrix(ComplexMatrix::identity(d1).kron(&sp).hermitian_part()));
    }
    let p = p.hermitian_part();
    let spec = FamilySpec::Explicit(vec![p.clone(), p]);
    Scenario::new("sg-observers", model, spec, predicates, Vec::new())
}

/// Spin-up projector along a direction, as a `2×2` matrix.
pub fn spin_projector(n: [f64; 3]) -> ComplexMatrix {
    let s = spin::along(n);
    ComplexMatrix::outer(&s, &s).hermitian_part()
}

/// Which-path predicate followed by a Hadamard on the path qubit.
pub fn double_slit() -> Result<Scenario> {
    let h = FRAC_1_SQRT_2;
    let had = ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]])?;
    let grid = TimeGrid::with_labels(vec![0.0, 1.0, 2.0], vec!["t0".into(), "t1".into(), "t2".into()])?;
    let steps = vec![ComplexMatrix::identity(4), ComplexMatrix::identity(2).kron(&had)];
    let model = Model::new(2, 2, grid, steps, Tolerance::default())?;
    let spec = FamilySpec::Explicit(vec![ComplexMatrix::identity(4); 3]);
    let predicates = BTreeMap::from([
        ("all".to_string(), Predicate::Labels(vec![0, 1])),
        ("L".to_string(), Predicate::System2Labels(vec![0])),
        ("R".to_string(), Predicate::System2Labels(vec![1])),
    ]);
    Scenario::new("double-slit", model, spec, predicates, vec![("L".into(), vec![0]), ("R".into(), vec![1])])
}

/// Permutations used by the classical chain: `i ↦ (3i + 1) mod 8`, then `i ↦ (5i + 2) mod 8`.
pub const CHAIN_PERMUTATIONS: [[usize; 8]; 2] = [[1, 4, 7, 2, 5, 0, 3, 6], [2, 7, 4, 1, 6, 3, 0, 5]];

pub fn permutation_matrix(perm: &[usize]) -> ComplexMatrix {
    let n = perm.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for (from, &to) in perm.iter().enumerate() {
        m.set(to, from, c(1.0, 0.0));
    }
    m
}

pub fn classical_chain() -> Result<Scenario> {
    let grid = TimeGrid::with_labels(vec![0.0, 1.0, 2.0], vec!["t0".into(), "t1".into(), "t2".into()])?;
    let steps = CHAIN_PERMUTATIONS.iter().map(|p| permutation_matrix(p)).collect();
    let model = Model::new(2, 4, grid, steps, Tolerance::default())?;
    let spec = FamilySpec::Explicit(vec![ComplexMatrix::identity(8); 3]);
    let predicates = BTreeMap::from([
        ("r0".to_string(), Predicate::Labels(vec![0])),
        ("r1".to_string(), Predicate::Labels(vec![1])),
        ("low".to_string(), Predicate::System2Labels(vec![0, 1])),
        ("high".to_string(), Predicate::System2Labels(vec![2, 3])),
        ("odd".to_string(), Predicate::System2Labels(vec![1, 3])),
        ("even".to_string(), Predicate::System2Labels(vec![0, 2])),
    ]);
    Scenario::new("classical-chain", model, spec, predicates, Vec::new())
}

/// `Tr(ℙ_X ℙ_Y) / Tr(ℙ_X)` with both events in the Heisenberg picture.
pub fn textbook_born(x: &Event, y: &Event, tol: Tolerance) -> Result<f64> {
    let den = x.projector.tr();
    if den <= tol.eps_zero {
        return Err(Error::NoWeight(den));
    }
    Ok((&x.projector * &y.projector).tr() / den)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntroReport {
    /// `Tr(ℙ_I(t0) ℙ_Fup(t1)) / Tr(ℙ_Fup(t1))`.
    pub textbook_retrodiction: f64,
    /// `Tr(ℙ_I(t0) ℙ_Fup(t1)) / Tr(ℙ_I(t0))`.
    pub textbook_forward: f64,
    /// Amended `P(Fup@t1 | x@t0)` for each basis state `x` of the physical `I` subspace.
    pub microstate_forward: Vec<f64>,
    pub amended_forward: f64,
    pub amended_retrodiction_approx: f64,
    pub amended_retrodiction_known: f64,
    pub amended_retrodiction_full: f64,
}

impl IntroReport {
    /// The textbook rule fails retrodiction while every microstate still has
    /// an uncertain forward outcome, and the amended rule gives both relations.
    pub fn demonstrates_inconsistency(&self) -> bool {
        let certain = |v: f64| (v - 1.0).abs() <= 1e-9;
        self.textbook_retrodiction < 1.0 - 1e-6
            && self.microstate_forward.iter().all(|&p| p < 1.0 - 1e-6)
            && certain(self.amended_retrodiction_approx)
            && certain(self.amended_retrodiction_known)
            && certain(self.amended_retrodiction_full)
            && (self.amended_forward - 0.5).abs() <= 1e-9
    }
}

pub fn intro_inconsistency_demo() -> Result<IntroReport> {
    let sc = reference()?;
    let model = &sc.model;
    let fam = &sc.family;
    let tol = model.tol();
    let i_t0 = sc.event("I", "t0")?;
    let f_t1 = sc.event("Fup", "t1")?;
    let textbook_retrodiction = textbook_born(&f_t1, &i_t0, tol)?;
    let textbook_forward = textbook_born(&i_t0, &f_t1, tol)?;

    let cond_i = Condition::from_event(model, fam, &i_t0)?;
    let amended_forward = born::prob_forward(&cond_i, &f_t1, 0)?.value;

    let mut microstate_forward = Vec::new();
    for x in range_basis(&cond_i.restricted(), tol)? {
        let px = ComplexMatrix::outer(&x, &x).hermitian_part();
        let cond_x = Condition::from_heisenberg(model, fam, px, i_t0.index)?;
        microstate_forward.push(born::prob_forward(&cond_x, &f_t1, 0)?.value);
    }

    let cond_f = Condition::from_event(model, fam, &f_t1)?;
    let amended_retrodiction_approx = born::prob_approx(&cond_f, &i_t0)?.value;
    let amended_retrodiction_known = born::prob_intermediate_known(&cond_f, &i_t0, 0, Variant::Support, None)?.value;
    let outcomes = born::OutcomeSet::from_events(&[i_t0.clone(), i_t0.complement()], tol)?;
    let amended_retrodiction_full = born::prob_intermediate_full(&cond_f, &outcomes, 0, 0)?.value;

    Ok(IntroReport {
        textbook_retrodiction,
        textbook_forward,
        microstate_forward,
        amended_forward,
        amended_retrodiction_approx,
        amended_retrodiction_known,
        amended_retrodiction_full,
    })
}
