//! Row-major dense complex matrices.

use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;

use super::{LinalgError, HERMITICITY_REL_TOL};

/// Dense row-major matrix over `Complex64`.
///
/// Entries are validated to be finite at construction, and every operation
/// below preserves finiteness, so a `CMatrix` never holds NaN or Inf.
/// Values are immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl CMatrix {
    /// Build a matrix from a row-major entry buffer, validating shape and
    /// finiteness.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::ZeroDimension { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCountMismatch {
                rows,
                cols,
                got: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(LinalgError::NonFinite);
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Internal constructor for buffers produced by arithmetic on already
    /// validated matrices.
    pub(crate) fn raw(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self::raw(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::EntryCountMismatch {
                rows: r,
                cols: c,
                got: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_real_rows(rows: Vec<Vec<f64>>) -> Result<Self, LinalgError> {
        Self::from_rows(
            rows.into_iter()
                .map(|row| row.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::raw(
            self.rows,
            self.cols,
            self.entries.iter().map(|z| z * k).collect(),
        )
    }

    /// `‖A − A†‖_F`; infinite for non-square matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut sum = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                sum += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        sum.sqrt()
    }

    pub fn is_hermitian_within(&self, rel_tol: f64) -> bool {
        self.is_square() && self.hermitian_deviation() <= rel_tol * self.frobenius_norm().max(1.0)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_hermitian_within(HERMITICITY_REL_TOL)
    }

    /// `(A + A†)/2`.
    pub fn hermitized(&self) -> Self {
        assert!(self.is_square(), "hermitized requires a square matrix");
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, (self.get(i, j) + self.get(j, i).conj()) * 0.5);
            }
        }
        out
    }

    /// Largest entrywise modulus of the difference; panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + aik * other.get(k, j));
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix::raw(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix::raw(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, other: &CMatrix) -> CMatrix {
        self.matmul(other)
    }
}

impl Mul<Complex64> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, k: Complex64) -> CMatrix {
        self.scale(k)
    }
}

impl Mul<f64> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, k: f64) -> CMatrix {
        self.scale(Complex64::new(k, 0.0))
    }
}

/// Frobenius inner product `Tr(A†B) = Σ_ij conj(A_ij)·B_ij`.
///
/// Conjugate-symmetric: `frobenius_inner(a, b) = conj(frobenius_inner(b, a))`.
pub fn frobenius_inner(a: &CMatrix, b: &CMatrix) -> Result<Complex64, LinalgError> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(LinalgError::ShapeMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// `Tr(A·B)` without forming the product, O(n·m).
pub(crate) fn trace_prod(a: &CMatrix, b: &CMatrix) -> Complex64 {
    assert_eq!(a.cols, b.rows);
    assert_eq!(a.rows, b.cols);
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..a.rows {
        for k in 0..a.cols {
            sum += a.get(i, k) * b.get(k, i);
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_x() -> CMatrix {
        CMatrix::from_real_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    fn sigma_z() -> CMatrix {
        CMatrix::from_real_rows(vec![vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert_eq!(
            CMatrix::new(0, 2, vec![]),
            Err(LinalgError::ZeroDimension { rows: 0, cols: 2 })
        );
        assert!(matches!(
            CMatrix::new(2, 2, vec![c(1.0, 0.0); 3]),
            Err(LinalgError::EntryCountMismatch { got: 3, .. })
        ));
        assert_eq!(
            CMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(LinalgError::NonFinite)
        );
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let m = CMatrix::from_rows(vec![
            vec![c(1.0, 2.0), c(3.0, -1.0)],
            vec![c(0.0, 5.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let a = m.adjoint();
        assert_eq!(a.get(0, 1), c(0.0, -5.0));
        assert_eq!(a.get(1, 0), c(3.0, 1.0));
        assert_eq!(a.adjoint(), m);
    }

    #[test]
    fn frobenius_inner_pauli_orthogonality() {
        // Tr(σx†σx) = 2, Tr(σx†σz) = 0
        let xx = frobenius_inner(&sigma_x(), &sigma_x()).unwrap();
        assert!((xx - c(2.0, 0.0)).norm() < 1e-15);
        let xz = frobenius_inner(&sigma_x(), &sigma_z()).unwrap();
        assert!(xz.norm() < 1e-15);
    }

    #[test]
    fn frobenius_inner_shape_mismatch() {
        let a = CMatrix::zeros(2, 2);
        let b = CMatrix::zeros(2, 3);
        assert!(matches!(
            frobenius_inner(&a, &b),
            Err(LinalgError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn frobenius_inner_conjugate_symmetry_and_cauchy_schwarz() {
        let a = CMatrix::from_rows(vec![
            vec![c(1.0, 0.5), c(-2.0, 1.0)],
            vec![c(0.0, 3.0), c(1.0, -1.0)],
        ])
        .unwrap();
        let b = CMatrix::from_rows(vec![
            vec![c(2.0, -1.0), c(0.5, 0.0)],
            vec![c(1.0, 1.0), c(-1.0, 2.0)],
        ])
        .unwrap();
        let ab = frobenius_inner(&a, &b).unwrap();
        let ba = frobenius_inner(&b, &a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-14);
        assert!(ab.norm() <= a.frobenius_norm() * b.frobenius_norm() + 1e-12);
        let aa = frobenius_inner(&a, &a).unwrap();
        assert!(aa.im.abs() < 1e-14);
        assert!(aa.re >= 0.0);
    }

    #[test]
    fn trace_prod_matches_full_product() {
        let a = CMatrix::from_rows(vec![
            vec![c(1.0, 1.0), c(2.0, 0.0)],
            vec![c(0.0, -1.0), c(3.0, 2.0)],
        ])
        .unwrap();
        let b = CMatrix::from_rows(vec![
            vec![c(0.5, 0.0), c(1.0, -1.0)],
            vec![c(2.0, 2.0), c(0.0, 1.0)],
        ])
        .unwrap();
        let full = (&a * &b).trace();
        assert!((trace_prod(&a, &b) - full).norm() < 1e-14);
    }

    #[test]
    fn hermitized_is_hermitian() {
        let m = CMatrix::from_rows(vec![
            vec![c(1.0, 0.3), c(2.0, 1.0)],
            vec![c(0.0, 0.0), c(4.0, -0.2)],
        ])
        .unwrap();
        let h = m.hermitized();
        assert!(h.is_hermitian_within(1e-15));
    }
}
