//! Hermitian eigendecomposition, PSD square root and singular values.
//!
//! The eigensolver is a cyclic complex Jacobi iteration: each pivot (p, q)
//! first phases the off-diagonal entry real, then applies the classic
//! symmetric rotation that annihilates it. Convergence is declared when the
//! off-diagonal Frobenius norm drops below `1e-14·‖H‖_F`, capped at 100
//! sweeps. This is plenty for the dimensions this crate targets (≤ ~16) and
//! keeps the whole stack dependency-free and deterministic.

use num_complex::Complex64;

use super::matrix::CMatrix;
use super::{LinalgError, HERMITICITY_REL_TOL};

const JACOBI_OFF_REL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;
/// Eigenvalues in `[PSD_EIG_FLOOR, 0)` are clamped to zero by `psd_sqrt`;
/// anything below is a hard error.
const PSD_EIG_FLOOR: f64 = -1e-10;
/// Smallest component magnitude eligible as the sign-convention pivot.
const SIGN_PIVOT_MIN: f64 = 1e-8;

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are real and ascending; eigenvector columns are orthonormal
/// and deterministically phased (first component above `1e-8` in modulus is
/// made real positive), so identical inputs give identical output.
#[derive(Debug, Clone, PartialEq)]
pub struct HermEigen {
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl HermEigen {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors, ordered to match
    /// the eigenvalues.
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `V·diag(λ)·V†`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = CMatrix::zeros(n, n);
        for k in 0..n {
            let lam = self.eigenvalues[k];
            for i in 0..n {
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + v.get(i, k) * v.get(j, k).conj() * lam);
                }
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigendecomposition of a Hermitian matrix via cyclic complex Jacobi.
///
/// The input must be square and Hermitian within `1e-10` relative tolerance;
/// it is symmetrized as `(H + H†)/2` before iterating so that near-Hermitian
/// inputs decompose stably.
pub fn eigh(h: &CMatrix) -> Result<HermEigen, LinalgError> {
    if !h.is_square() {
        return Err(LinalgError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let deviation = h.hermitian_deviation();
    if deviation > HERMITICITY_REL_TOL * h.frobenius_norm().max(1.0) {
        return Err(LinalgError::NotHermitian { deviation });
    }

    let n = h.rows();
    let mut a = h.hermitized();
    let mut v = CMatrix::identity(n);
    let threshold = JACOBI_OFF_REL_TOL * a.frobenius_norm();

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence { sweeps });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                // Phase the pivot real, then rotate as in the real case.
                let phase_conj = (apq / r).conj();
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    let nkp = akp * c - akq * phase_conj * s;
                    let nkq = akp * s + akq * phase_conj * c;
                    a.set(k, p, nkp);
                    a.set(p, k, nkp.conj());
                    a.set(k, q, nkq);
                    a.set(q, k, nkq.conj());
                }
                a.set(p, p, Complex64::new(app - t * r, 0.0));
                a.set(q, q, Complex64::new(aqq + t * r, 0.0));
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));

                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c - vkq * phase_conj * s);
                    v.set(k, q, vkp * s + vkq * phase_conj * c);
                }
            }
        }
        sweeps += 1;
    }

    let raw: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[i].partial_cmp(&raw[j]).expect("finite").then(i.cmp(&j)));

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues.push(raw[src]);
        let col = v.column(src);
        let phase = col
            .iter()
            .find(|z| z.norm() > SIGN_PIVOT_MIN)
            .map(|z| z.conj() / z.norm())
            .unwrap_or_else(|| Complex64::new(1.0, 0.0));
        for (i, &value) in col.iter().enumerate() {
            eigenvectors.set(i, dst, value * phase);
        }
    }

    Ok(HermEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Hermitian PSD square root: returns `S` with `S·S = H`.
///
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero; anything lower is a
/// `NegativeEigenvalue` error rather than a warning.
pub fn psd_sqrt(h: &CMatrix) -> Result<CMatrix, LinalgError> {
    let eig = eigh(h)?;
    let min = eig.min_eigenvalue();
    if min < PSD_EIG_FLOOR {
        return Err(LinalgError::NegativeEigenvalue { value: min });
    }
    let n = h.rows();
    let v = eig.eigenvectors();
    let mut s = CMatrix::zeros(n, n);
    for k in 0..n {
        let root = eig.eigenvalues()[k].max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let cur = s.get(i, j);
                s.set(i, j, cur + v.get(i, k) * v.get(j, k).conj() * root);
            }
        }
    }
    Ok(s.hermitized())
}

/// Singular values in descending order, as the square roots of the
/// eigenvalues of the smaller of `A†A` and `AA†`. Returns `min(rows, cols)`
/// values.
pub fn singular_values(a: &CMatrix) -> Result<Vec<f64>, LinalgError> {
    let count = a.rows().min(a.cols());
    let gram = if a.rows() >= a.cols() {
        &a.adjoint() * a
    } else {
        a * &a.adjoint()
    };
    let eig = eigh(&gram)?;
    let mut values: Vec<f64> = eig
        .eigenvalues()
        .iter()
        .map(|&lam| lam.max(0.0).sqrt())
        .collect();
    values.reverse();
    values.truncate(count);
    Ok(values)
}
