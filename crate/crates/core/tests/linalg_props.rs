mod common;

use num_complex::Complex64;
use physical_subspace::linalg::{is_projector, support_projector, ComplexMatrix};
use physical_subspace::random::Sampler;
use proptest::prelude::*;

use common::{config, tol};

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn support_projector_covers_psd_input(seed in any::<u64>(), dim in 1usize..7, rank in 0usize..7) {
        let mut s = Sampler::new(seed);
        let rank = rank.min(dim);
        let a = s.matrix(dim, rank.max(1));
        let a = if rank == 0 { ComplexMatrix::zeros(dim, 1) } else { a };
        let h = (&a * &a.dagger()).hermitian_part();
        let sp = support_projector(&h, tol()).unwrap();
        let scale = h.max_abs().max(1.0);
        prop_assert!((&sp * &h).max_abs_diff(&h) <= 10.0 * tol().eps_eig * scale);
        prop_assert!((&sp * &sp).approx_eq(&sp, tol().eps_zero));
        prop_assert!(sp.is_hermitian(tol().eps_zero));
        prop_assert_eq!(sp.projector_rank(), rank);
    }

    #[test]
    fn partial_trace_is_linear(seed in any::<u64>(), d1 in 1usize..4, d2 in 1usize..4) {
        let mut s = Sampler::new(seed);
        let n = d1 * d2;
        let (a, b) = (s.matrix(n, n), s.matrix(n, n));
        let (alpha, beta) = (s.gaussian(), s.gaussian());
        let combo = &a.scale(alpha) + &b.scale(beta);
        let lhs = combo.partial_trace_2(d1, d2).unwrap();
        let rhs = &a.partial_trace_2(d1, d2).unwrap().scale(alpha) + &b.partial_trace_2(d1, d2).unwrap().scale(beta);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + rhs.max_abs()));
        let lhs = combo.partial_trace_1(d1, d2).unwrap();
        let rhs = &a.partial_trace_1(d1, d2).unwrap().scale(alpha) + &b.partial_trace_1(d1, d2).unwrap().scale(beta);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + rhs.max_abs()));
    }

    #[test]
    fn partial_trace_of_product_state(seed in any::<u64>(), d1 in 1usize..4, d2 in 1usize..4) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.matrix(d1, d1), s.matrix(d2, d2));
        let joint = a.kron(&b);
        let expect = a.scale(b.trace().unwrap());
        prop_assert!(joint.partial_trace_2(d1, d2).unwrap().max_abs_diff(&expect) <= 1e-10 * (1.0 + expect.max_abs()));
        let expect = b.scale(a.trace().unwrap());
        prop_assert!(joint.partial_trace_1(d1, d2).unwrap().max_abs_diff(&expect) <= 1e-10 * (1.0 + expect.max_abs()));
    }

    #[test]
    fn trace_is_cyclic(seed in any::<u64>(), dim in 1usize..9) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.matrix(dim, dim), s.matrix(dim, dim));
        let ab = (&a * &b).trace().unwrap();
        let ba = (&b * &a).trace().unwrap();
        prop_assert!((ab - ba).norm() <= 1e-10 * (1.0 + ab.norm()));
    }

    #[test]
    fn random_projectors_are_projectors(seed in any::<u64>(), dim in 1usize..7, rank in 0usize..7) {
        let mut s = Sampler::new(seed);
        let p = s.projector(dim, rank.min(dim));
        prop_assert!(is_projector(&p, tol()));
        prop_assert_eq!(p.projector_rank(), rank.min(dim));
    }

    #[test]
    fn random_unitaries_are_unitary(seed in any::<u64>(), dim in 1usize..9) {
        let mut s = Sampler::new(seed);
        prop_assert!(s.unitary(dim).is_unitary(1e-10));
    }
}

#[test]
fn eigh_reconstructs() {
    let mut s = Sampler::new(11);
    for dim in 1..8 {
        let h = s.hermitian(dim);
        let (values, vectors) = h.eigh().unwrap();
        let mut rebuilt = ComplexMatrix::zeros(dim, dim);
        for (l, v) in values.iter().zip(&vectors) {
            rebuilt = &rebuilt + &ComplexMatrix::outer(v, v).scale(Complex64::new(*l, 0.0));
        }
        assert!(rebuilt.max_abs_diff(&h) < 1e-10);
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
    }
}
