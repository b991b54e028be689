#![allow(dead_code)]

use num_complex::Complex64;
use physical_subspace::linalg::{ket, ComplexMatrix, Tolerance, Vector};
use physical_subspace::model::{forward_closure, Model, PhysicalFamily, TimeGrid};
use physical_subspace::random::Sampler;

pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases, failure_persistence: None, ..Default::default() }
}

pub fn tol() -> Tolerance {
    Tolerance::default()
}

pub fn grid(points: usize) -> TimeGrid {
    TimeGrid::new((0..points).map(|k| k as f64).collect()).unwrap()
}

pub fn random_model(s: &mut Sampler, d1: usize, d2: usize, points: usize) -> Model {
    let steps = (1..points).map(|_| s.unitary(d1 * d2)).collect();
    Model::new(d1, d2, grid(points), steps, tol()).unwrap()
}

/// Record dynamics: system1 labels are permuted, system2 gets a label-dependent unitary.
pub fn controlled_model(s: &mut Sampler, d1: usize, d2: usize, points: usize) -> Model {
    let n = d1 * d2;
    let steps = (1..points)
        .map(|_| {
            let perm = s.permutation(d1);
            let mut u = ComplexMatrix::zeros(n, n);
            for r in 0..d1 {
                let to = (0..d1).find(|&t| perm.get(t, r).re > 0.5).unwrap();
                let w = s.unitary(d2);
                for a in 0..d2 {
                    for b in 0..d2 {
                        u.set(to * d2 + a, r * d2 + b, w.get(a, b));
                    }
                }
            }
            u
        })
        .collect();
    Model::new(d1, d2, grid(points), steps, tol()).unwrap()
}

/// `|r⟩ ⊗ ψ` with random `ψ`.
pub fn record_state(s: &mut Sampler, d1: usize, d2: usize, r: usize) -> Vector {
    let psi = s.unit_vector(d2);
    let e = ket(d1, r);
    Vector::from_fn(d1 * d2, |i, _| e[i / d2] * psi[i % d2])
}

/// Nested family by forward closure from random generators.
pub fn random_family(s: &mut Sampler, model: &Model) -> PhysicalFamily {
    let n = model.dim();
    let initial: Vec<Vector> = (0..1 + s.below((n / 2).max(1))).map(|_| s.unit_vector(n)).collect();
    let extras: Vec<Vec<Vector>> = (0..model.grid().len())
        .map(|k| if k > 0 && s.coin() { vec![s.unit_vector(n)] } else { Vec::new() })
        .collect();
    forward_closure(model, &initial, &extras).unwrap()
}

/// Closure from record-definite generators, so every system1 label predicate
/// commutes with the family at every index of a [`controlled_model`].
pub fn record_family(s: &mut Sampler, model: &Model) -> PhysicalFamily {
    let (d1, d2) = (model.d1(), model.d2());
    let fresh = |s: &mut Sampler| {
        let r = s.below(d1);
        record_state(s, d1, d2, r)
    };
    let initial: Vec<Vector> = (0..1 + s.below(d1)).map(|_| fresh(s)).collect();
    let extras: Vec<Vec<Vector>> = (0..model.grid().len())
        .map(|k| if k > 0 && s.coin() { vec![fresh(s)] } else { Vec::new() })
        .collect();
    forward_closure(model, &initial, &extras).unwrap()
}

/// Schrödinger state at `j` whose Heisenberg image is `g`.
pub fn schrodinger_state(model: &Model, g: &Vector, j: usize) -> Vector {
    model.cumulative_propagator(j).unwrap().apply(g)
}

/// Random Heisenberg vector inside (`inside = true`) or outside the range of `px`.
pub fn sector_vector(s: &mut Sampler, px: &ComplexMatrix, inside: bool) -> Option<Vector> {
    let n = px.rows();
    let p = if inside { px.clone() } else { &ComplexMatrix::identity(n) - px };
    let v = p.apply(&s.vector(n));
    let norm = v.norm();
    (norm > 1e-6).then(|| v / Complex64::new(norm, 0.0))
}

/// A family that commutes with `px` (Heisenberg, full space) at `kc`.
///
/// Every generator lies in the range of `px` or of its complement. When
/// `quiet` is given as `(k1, k2)`, generators introduced in `k1+1..=k2`
/// come from the complement only, so trimming stays constant over that window.
pub fn compatible_family(
    s: &mut Sampler,
    model: &Model,
    px: &ComplexMatrix,
    quiet: Option<(usize, usize)>,
) -> PhysicalFamily {
    let points = model.grid().len();
    let mut initial = Vec::new();
    while initial.is_empty() {
        for _ in 0..1 + s.below(2) {
            let inside = s.coin();
            if let Some(v) = sector_vector(s, px, inside) {
                initial.push(v);
            }
        }
    }
    let extras: Vec<Vec<Vector>> = (0..points)
        .map(|k| {
            if k == 0 || !s.coin() {
                return Vec::new();
            }
            let inside = match quiet {
                Some((k1, k2)) if k > k1 && k <= k2 => false,
                _ => s.coin(),
            };
            sector_vector(s, px, inside).map(|g| vec![schrodinger_state(model, &g, k)]).unwrap_or_default()
        })
        .collect();
    forward_closure(model, &initial, &extras).unwrap()
}

/// Random nonempty proper-or-full subset of `0..d` as a label projector.
pub fn label_projector(s: &mut Sampler, d: usize) -> ComplexMatrix {
    s.diagonal_projector(d)
}

/// Random partition of `0..d` into at least two nonempty blocks when `d ≥ 2`.
pub fn partition(s: &mut Sampler, d: usize) -> Vec<Vec<usize>> {
    let blocks = 2.min(d) + s.below(d.saturating_sub(1).max(1));
    let blocks = blocks.min(d);
    let mut out = vec![Vec::new(); blocks];
    for (i, b) in out.iter_mut().enumerate() {
        b.push(i);
    }
    for l in blocks..d {
        out[s.below(blocks)].push(l);
    }
    out
}

pub fn max_dev(a: f64, b: f64) -> f64 {
    (a - b).abs()
}
