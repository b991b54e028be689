//! Seeded generators for random operators, used by the property suites and examples.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, Vector};

pub struct Sampler {
    rng: StdRng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: StdRng::seed_from_u64(seed) }
    }

    pub fn gaussian(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im)
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random::<bool>()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        let m = DMatrix::from_fn(rows, cols, |_, _| self.gaussian());
        ComplexMatrix::from_nalgebra(m)
    }

    pub fn vector(&mut self, dim: usize) -> Vector {
        Vector::from_fn(dim, |_, _| self.gaussian())
    }

    pub fn unit_vector(&mut self, dim: usize) -> Vector {
        let v = self.vector(dim);
        let n = v.norm();
        v / Complex64::new(n, 0.0)
    }

    pub fn hermitian(&mut self, dim: usize) -> ComplexMatrix {
        self.matrix(dim, dim).hermitian_part()
    }

    /// Haar-ish unitary from the QR factor of a complex Gaussian matrix.
    pub fn unitary(&mut self, dim: usize) -> ComplexMatrix {
        let g = DMatrix::from_fn(dim, dim, |_, _| self.gaussian());
        let qr = g.qr();
        let q = qr.q();
        let r = qr.r();
        let mut q = q;
        for j in 0..dim {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
        ComplexMatrix::from_nalgebra(q)
    }

    /// Random rank-`rank` orthogonal projector.
    pub fn projector(&mut self, dim: usize, rank: usize) -> ComplexMatrix {
        let u = self.unitary(dim);
        let diag: Vec<f64> = (0..dim).map(|i| if i < rank { 1.0 } else { 0.0 }).collect();
        (&(&u * &ComplexMatrix::diag_real(&diag)) * &u.dagger()).hermitian_part()
    }

    /// Random diagonal 0/1 projector with at least one selected label.
    pub fn diagonal_projector(&mut self, dim: usize) -> ComplexMatrix {
        let mut labels: Vec<usize> = (0..dim).filter(|_| self.coin()).collect();
        if labels.is_empty() {
            labels.push(self.below(dim));
        }
        ComplexMatrix::basis_projector(dim, &labels).expect("labels in range")
    }

    /// Random permutation matrix.
    pub fn permutation(&mut self, dim: usize) -> ComplexMatrix {
        let mut perm: Vec<usize> = (0..dim).collect();
        for i in (1..dim).rev() {
            let j = self.below(i + 1);
            perm.swap(i, j);
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (from, &to) in perm.iter().enumerate() {
            m.set(to, from, Complex64::new(1.0, 0.0));
        }
        m
    }
}
