mod common;

use physical_subspace::born::{self, OutcomeSet};
use physical_subspace::condition::Condition;
use physical_subspace::error::Error;
use physical_subspace::linalg::{product, span_projector, ComplexMatrix, Vector};
use physical_subspace::model::{Event, Model, PhysicalFamily};
use physical_subspace::random::Sampler;
use physical_subspace::verify::{self, Direction};
use proptest::prelude::*;

use common::*;

fn label_events(s: &mut Sampler, model: &Model, k: usize) -> Vec<Event> {
    partition(s, model.d1())
        .iter()
        .map(|b| Event::system1(model, &ComplexMatrix::basis_projector(model.d1(), b).unwrap(), k).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn record_instances_split_and_satisfy_trace_identity(seed in any::<u64>(), d1 in 2usize..4, d2 in 1usize..4, points in 3usize..6) {
        let mut s = Sampler::new(seed);
        let model = controlled_model(&mut s, d1, d2, points);
        let fam = record_family(&mut s, &model);
        let kc = 1 + s.below(points - 2);
        let Ok(cond) = Condition::system1(&model, &fam, &label_projector(&mut s, d1), kc) else { return Ok(()) };
        prop_assume!(cond.weight(0).unwrap() > tol().eps_zero);
        let eps = tol().eps_zero;
        for k in [kc + 1 + s.below(points - kc - 1), s.below(kc)] {
            let set = OutcomeSet::from_events(&label_events(&mut s, &model, k), tol()).unwrap();
            let report = verify::verifiable(&cond, &set).unwrap();
            prop_assert!(report.verifiable);
            let direction = Direction::between(k, kc);
            for y in set.events() {
                let d = verify::decompose(&cond, &y, direction).unwrap();
                prop_assert!(d.residual <= eps, "residual {:e}", d.residual);
                prop_assert!(d.overlap <= eps, "overlap {:e}", d.overlap);
            }
            for r in verify::verify_trace_identity(&cond, &set, 0).unwrap() {
                prop_assert!(r <= 1e-9, "trace identity residual {:e}", r);
            }
        }
    }

    #[test]
    fn commuting_sequence_matches_chain_rule(seed in any::<u64>(), d1 in 2usize..4, d2 in 1usize..4, points in 3usize..6) {
        let mut s = Sampler::new(seed);
        let model = controlled_model(&mut s, d1, d2, points);
        let fam = record_family(&mut s, &model);
        let kc = s.below(points - 2);
        let Ok(cond) = Condition::system1(&model, &fam, &label_projector(&mut s, d1), kc) else { return Ok(()) };
        prop_assume!(cond.weight(0).unwrap() > tol().eps_zero);
        let k1 = kc + 1 + s.below(points - kc - 2);
        let k2 = k1 + 1 + s.below(points - k1 - 1);
        let y1 = Event::system1(&model, &label_projector(&mut s, d1), k1).unwrap();
        let y2 = Event::system1(&model, &label_projector(&mut s, d1), k2).unwrap();
        let value = born::prob_sequence(&cond, &y1, &y2, 0).unwrap().value;

        let x = cond.projector();
        let p0 = fam.at(0).unwrap();
        let first = born::prob_forward(&cond, &y1, 0).unwrap().value;
        let joint = &y1.projector * x;
        let w = (&joint * p0).tr();
        let oracle = if w <= tol().eps_zero {
            0.0
        } else {
            first * product(&[&y2.projector, &joint, p0, &joint.dagger()]).tr() / w
        };
        prop_assert!((value - oracle).abs() <= 1e-9, "sequence {} chain rule {}", value, oracle);
    }
}

/// Block-diagonal physical projector over the four `O`/`M` sectors at `k`,
/// always touching the `O ∧ M` sector.
fn sector_family(s: &mut Sampler, model: &Model, p_o: &ComplexMatrix, p_m: &ComplexMatrix, k: usize) -> PhysicalFamily {
    let (d1, d2) = (model.d1(), model.d2());
    let n = d1 * d2;
    let not = |p: &ComplexMatrix| &ComplexMatrix::identity(p.rows()) - p;
    let sectors = [
        p_o.kron(p_m),
        p_o.kron(&not(p_m)),
        not(p_o).kron(p_m),
        not(p_o).kron(&not(p_m)),
    ];
    let mut vectors: Vec<Vector> = Vec::new();
    for (i, q) in sectors.iter().enumerate() {
        let count = if i == 0 { 1 + s.below(2) } else { s.below(3) };
        for _ in 0..count {
            let v = q.apply(&s.vector(n));
            if v.norm() > 1e-6 {
                vectors.push(v);
            }
        }
    }
    let schrodinger = span_projector(&vectors, n, tol()).unwrap();
    let p = model.heisenberg(&schrodinger, k).unwrap();
    PhysicalFamily::from_projectors(vec![p; model.grid().len()], tol())
}

#[test]
fn observer_restriction_has_no_violations() {
    let mut s = Sampler::new(0x0b5);
    let mut violations = 0;
    let mut generic_witness: f64 = 0.0;
    for _ in 0..1000 {
        let (d1, d2) = (1 + s.below(4), 1 + s.below(4));
        let points = 2 + s.below(2);
        let model = random_model(&mut s, d1, d2, points);
        let k = s.below(points);
        let (r1, r2) = (1 + s.below(d1), 1 + s.below(d2));
        let (p_o, p_m) = (s.projector(d1, r1), s.projector(d2, r2));
        let fam = sector_family(&mut s, &model, &p_o, &p_m, k);
        match verify::observer_restriction_check(&model, &fam, &p_o, &p_m, k) {
            Ok(c) => assert!(c <= tol().eps_zero),
            Err(Error::Internal(_)) => violations += 1,
            Err(e) => panic!("hypotheses should hold by construction: {e}"),
        }
        let generic = random_family(&mut s, &model);
        generic_witness = generic_witness.max(verify::observer_commutator(&model, &generic, &p_o, &p_m, k).unwrap());
    }
    assert_eq!(violations, 0);
    assert!(generic_witness > 1e-3, "the witness never fires without the hypotheses");
}

#[test]
fn unverifiable_instances_are_refused() {
    let mut s = Sampler::new(17);
    let mut refused = 0;
    for _ in 0..40 {
        let model = random_model(&mut s, 2, 2, 3);
        let x = model.lift_system1_at(&ComplexMatrix::basis_projector(2, &[0]).unwrap(), 1).unwrap();
        let fam = compatible_family(&mut s, &model, &x, None);
        let Ok(cond) = Condition::from_heisenberg(&model, &fam, x, 1) else { continue };
        let ys = [0, 1].map(|l| Event::system1(&model, &ComplexMatrix::basis_projector(2, &[l]).unwrap(), 2).unwrap());
        let set = OutcomeSet::from_events(&ys, tol()).unwrap();
        if !verify::verifiable(&cond, &set).unwrap().verifiable {
            refused += 1;
            let err = verify::z_subspace(&cond, &ys[0], Direction::Forward).unwrap_err();
            assert!(err.is_refusal(), "{err}");
        }
    }
    assert!(refused > 0);
}
