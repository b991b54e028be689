//! Dense complex-matrix kernel.
//!
//! Every operator in the crate (projectors, propagators, condition operators,
//! reduced density matrices) is a [`ComplexMatrix`]. Operator equality is never
//! bitwise: two operators are equal when the largest entry magnitude of their
//! difference is at most [`Tolerance::eps_zero`].
//!
//! The only spectral primitive is the Hermitian eigendecomposition; support
//! projectors and ranks are derived from it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Vector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Numerical thresholds shared by every predicate in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Magnitudes at or below this are zero.
    pub eps_zero: f64,
    /// Eigenvalues above this belong to the support.
    pub eps_eig: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps_zero: 1e-9, eps_eig: 1e-7 }
    }
}

impl Tolerance {
    pub fn new(eps_zero: f64, eps_eig: f64) -> Result<Self> {
        let ok = |e: f64| e > 0.0 && e < 1.0;
        if !ok(eps_zero) || !ok(eps_eig) {
            return Err(Error::Domain(format!(
                "tolerances must lie in (0, 1), got eps_zero={eps_zero}, eps_eig={eps_eig}"
            )));
        }
        Ok(Tolerance { eps_zero, eps_eig })
    }
}

/// Dense complex matrix with at least one row and one column and finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{}", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|j| {
                    let z = self.get(i, j);
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty matrix {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("non-finite matrix entry".into()));
        }
        Ok(ComplexMatrix { inner: DMatrix::from_row_slice(rows, cols, &entries) })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0))).collect();
        Self::new(r, c, entries)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().copied().collect())
    }

    pub(crate) fn from_nalgebra(inner: DMatrix<Complex64>) -> Self {
        debug_assert!(inner.nrows() > 0 && inner.ncols() > 0);
        ComplexMatrix { inner }
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        ComplexMatrix { inner: DMatrix::zeros(rows, cols) }
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim > 0, "empty matrix");
        ComplexMatrix { inner: DMatrix::identity(dim, dim) }
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let d = DVector::from_iterator(values.len(), values.iter().map(|&x| Complex64::new(x, 0.0)));
        ComplexMatrix::from_nalgebra(DMatrix::from_diagonal(&d))
    }

    /// Diagonal 0/1 projector selecting `labels` out of `dim` basis states.
    pub fn basis_projector(dim: usize, labels: &[usize]) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(dim, dim);
        for &l in labels {
            if l >= dim {
                return Err(Error::Shape(format!("label {l} outside dimension {dim}")));
            }
            m.inner[(l, l)] = ONE;
        }
        Ok(m)
    }

    /// `|u><v|`
    pub fn outer(u: &Vector, v: &Vector) -> Self {
        ComplexMatrix::from_nalgebra(u * v.adjoint())
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.inner[(i, j)] = z;
    }

    /// Row-major copy of the entries.
    pub fn entries(&self) -> Vec<Complex64> {
        (0..self.rows()).flat_map(|i| (0..self.cols()).map(move |j| (i, j))).map(|(i, j)| self.get(i, j)).collect()
    }

    pub fn dagger(&self) -> Self {
        ComplexMatrix { inner: self.inner.adjoint() }
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(ComplexMatrix { inner: &self.inner * &other.inner })
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        &self.inner * v
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix { inner: &self.inner * s }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Shape(format!("trace of non-square {}x{}", self.rows(), self.cols())));
        }
        Ok(self.inner.trace())
    }

    /// Real part of the trace; square matrices only.
    pub fn tr(&self) -> f64 {
        self.inner.trace().re
    }

    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        ComplexMatrix { inner: self.inner.kronecker(&other.inner) }
    }

    /// Trace over the second tensor factor of a `(d1*d2)`-dimensional operator.
    pub fn partial_trace_2(&self, d1: usize, d2: usize) -> Result<Self> {
        self.check_bipartite(d1, d2)?;
        let mut out = ComplexMatrix::zeros(d1, d1);
        for i in 0..d1 {
            for j in 0..d1 {
                let s: Complex64 = (0..d2).map(|k| self.inner[(i * d2 + k, j * d2 + k)]).sum();
                out.inner[(i, j)] = s;
            }
        }
        Ok(out)
    }

    /// Trace over the first tensor factor of a `(d1*d2)`-dimensional operator.
    pub fn partial_trace_1(&self, d1: usize, d2: usize) -> Result<Self> {
        self.check_bipartite(d1, d2)?;
        let mut out = ComplexMatrix::zeros(d2, d2);
        for a in 0..d2 {
            for b in 0..d2 {
                let s: Complex64 = (0..d1).map(|k| self.inner[(k * d2 + a, k * d2 + b)]).sum();
                out.inner[(a, b)] = s;
            }
        }
        Ok(out)
    }

    fn check_bipartite(&self, d1: usize, d2: usize) -> Result<()> {
        let n = d1 * d2;
        if d1 == 0 || d2 == 0 || self.rows() != n || self.cols() != n {
            return Err(Error::Shape(format!(
                "partial trace needs a {n}x{n} matrix for d1={d1}, d2={d2}, got {}x{}",
                self.rows(),
                self.cols()
            )));
        }
        Ok(())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return f64::INFINITY;
        }
        self.inner.iter().zip(other.inner.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, eps: f64) -> bool {
        self.max_abs_diff(other) <= eps
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.max_abs() <= eps
    }

    pub fn is_hermitian(&self, eps: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.dagger()) <= eps
    }

    pub fn is_unitary(&self, eps: f64) -> bool {
        self.is_square() && (&self.dagger() * self).approx_eq(&ComplexMatrix::identity(self.rows()), eps)
    }

    /// Hermitian part `(m + m†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.dagger()).scale_real(0.5)
    }

    /// Eigenvalues in ascending order with matching orthonormal eigenvectors.
    /// The matrix is symmetrised before decomposition; callers check Hermiticity.
    pub fn eigh(&self) -> Result<(Vec<f64>, Vec<Vector>)> {
        if !self.is_square() {
            return Err(Error::Shape("eigendecomposition of non-square matrix".into()));
        }
        let h = self.hermitian_part();
        let eig = nalgebra::SymmetricEigen::new(h.inner);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
        Ok((values, vectors))
    }

    /// Rank of a projector (its rounded trace).
    pub fn projector_rank(&self) -> usize {
        self.tr().round().max(0.0) as usize
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner + &rhs.inner }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner - &rhs.inner }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix { inner: -&self.inner }
    }
}

/// Panics on a dimension mismatch; use [`ComplexMatrix::mul`] for unchecked inputs.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols(), rhs.rows(), "matrix product dimension mismatch");
        ComplexMatrix { inner: &self.inner * &rhs.inner }
    }
}

/// Product of a sequence of operators, left to right.
pub fn product(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = factors.split_first().expect("empty product");
    rest.iter().fold((*first).clone(), |acc, m| &acc * m)
}

/// `a b a`, the sandwich used for every trimming and conditioning step.
pub fn sandwich(outer: &ComplexMatrix, inner: &ComplexMatrix) -> ComplexMatrix {
    &(outer * inner) * outer
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "commutator of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(&(a * b) - &(b * a))
}

/// Largest entry magnitude of `[a, b]`.
pub fn commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(commutator(a, b)?.max_abs())
}

pub fn commutes(a: &ComplexMatrix, b: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
    Ok(commutator_norm(a, b)? <= tol.eps_zero)
}

pub fn is_projector(p: &ComplexMatrix, tol: Tolerance) -> bool {
    p.is_hermitian(tol.eps_zero) && (p * p).approx_eq(p, tol.eps_zero)
}

/// Projector onto the span of the eigenvectors of `h` whose eigenvalues exceed `eps_eig`.
pub fn support_projector(h: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    if !h.is_hermitian(tol.eps_zero) {
        return Err(Error::Domain(format!(
            "support of a non-Hermitian operator (deviation {:e})",
            h.max_abs_diff(&h.dagger())
        )));
    }
    let (values, vectors) = h.eigh()?;
    if let Some(&lowest) = values.first() {
        if lowest < -tol.eps_eig {
            return Err(Error::Domain(format!("negative eigenvalue {lowest:e} in support computation")));
        }
    }
    let n = h.rows();
    let mut acc = DMatrix::<Complex64>::zeros(n, n);
    for (lambda, v) in values.iter().zip(&vectors) {
        if *lambda > tol.eps_eig {
            acc += v * v.adjoint();
        }
    }
    Ok(ComplexMatrix::from_nalgebra(acc).hermitian_part())
}

/// Projector onto the span of a set of vectors.
pub fn span_projector(vectors: &[Vector], dim: usize, tol: Tolerance) -> Result<ComplexMatrix> {
    let mut gram = ComplexMatrix::zeros(dim, dim);
    for v in vectors {
        if v.len() != dim {
            return Err(Error::Shape(format!("vector of length {} in a {dim}-dimensional space", v.len())));
        }
        gram = &gram + &ComplexMatrix::outer(v, v);
    }
    support_projector(&gram, tol)
}

/// Orthonormal basis of the range of a projector.
pub fn range_basis(p: &ComplexMatrix, tol: Tolerance) -> Result<Vec<Vector>> {
    let (values, vectors) = p.eigh()?;
    Ok(values.into_iter().zip(vectors).filter(|(l, _)| *l > 0.5_f64.max(tol.eps_eig)).map(|(_, v)| v).collect())
}

/// Computational basis vector `|index>`.
pub fn ket(dim: usize, index: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[index] = ONE;
    v
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
