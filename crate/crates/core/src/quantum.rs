//! Quantum states, observables, and moment machinery.
//!
//! A [`QuantumState`] is a validated density matrix with its PSD square root
//! cached at construction, since `√ρ` is reused by every normalized
//! deviation operator. Observables are labeled Hermitian matrices, taken
//! as-is (no normalization or traceless projection is applied).

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, CMatrix, LinalgError};

/// Zero-variance threshold on ΔA. At or below it the normalized deviation
/// operator is defined as the zero matrix.
pub const EPS_VAR: f64 = 1e-12;

const STATE_TOL: f64 = 1e-10;
const BLOCH_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("matrix is not Hermitian within tolerance")]
    NotHermitian,
    #[error("density matrix must have unit trace, got {trace}")]
    TraceNotOne { trace: f64 },
    #[error("density matrix has eigenvalue {min_eigenvalue:.3e} below the PSD tolerance")]
    NotPsd { min_eigenvalue: f64 },
    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochNormExceeded { norm: f64 },
    #[error("observable dimension {observable_dim} does not match state dimension {state_dim}")]
    DimMismatch {
        state_dim: usize,
        observable_dim: usize,
    },
}

impl QuantumError {
    /// Stable machine-readable name of the error variant.
    pub fn code(&self) -> &'static str {
        match self {
            QuantumError::NotHermitian => "NotHermitian",
            QuantumError::TraceNotOne { .. } => "TraceNotOne",
            QuantumError::NotPsd { .. } => "NotPSD",
            QuantumError::BlochNormExceeded { .. } => "BlochNormExceeded",
            QuantumError::DimMismatch { .. } => "DimMismatch",
        }
    }
}

/// Real 3-vector parameterizing a qubit state `ρ = (I + r·σ)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_real_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).expect("static matrix")
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_rows(vec![
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
        vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
    ])
    .expect("static matrix")
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_real_rows(vec![vec![1.0, 0.0], vec![0.0, -1.0]]).expect("static matrix")
}

/// Labeled Hermitian observable.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    label: String,
    matrix: CMatrix,
}

impl Observable {
    /// Validates that the matrix is square and Hermitian within `1e-10`
    /// relative tolerance. The matrix is stored as given.
    pub fn new(label: impl Into<String>, matrix: CMatrix) -> Result<Self, QuantumError> {
        if !matrix.is_hermitian() {
            return Err(QuantumError::NotHermitian);
        }
        Ok(Self {
            label: label.into(),
            matrix,
        })
    }

    pub fn sigma_x() -> Self {
        Self::new("sigma_x", pauli_x()).expect("Pauli matrices are Hermitian")
    }

    pub fn sigma_y() -> Self {
        Self::new("sigma_y", pauli_y()).expect("Pauli matrices are Hermitian")
    }

    pub fn sigma_z() -> Self {
        Self::new("sigma_z", pauli_z()).expect("Pauli matrices are Hermitian")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// Pair moments of two observables on a state: `⟨[A,B]⟩`, `⟨{A,B}⟩`, and the
/// covariance `⟨ÃB̃⟩ = ⟨AB⟩ − ⟨A⟩⟨B⟩`.
///
/// For Hermitian inputs the commutator mean is purely imaginary and the
/// anticommutator mean is real (up to rounding).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMoments {
    pub comm_mean: Complex64,
    pub anticomm_mean: Complex64,
    pub covariance: Complex64,
}

/// Validated density matrix with cached PSD square root.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    dim: usize,
    rho: CMatrix,
    sqrt_rho: CMatrix,
}

impl QuantumState {
    /// Validate a candidate density matrix: Hermitian within `1e-10`
    /// (relative), unit trace within `1e-10`, PSD within `-1e-10`. The PSD
    /// square root is computed and cached here.
    pub fn from_matrix(rho: CMatrix) -> Result<Self, QuantumError> {
        if !rho.is_hermitian() {
            return Err(QuantumError::NotHermitian);
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
            return Err(QuantumError::TraceNotOne { trace: trace.re });
        }
        let sqrt_rho = linalg::psd_sqrt(&rho).map_err(|e| match e {
            LinalgError::NegativeEigenvalue { value } => QuantumError::NotPsd {
                min_eigenvalue: value,
            },
            _ => QuantumError::NotHermitian,
        })?;
        Ok(Self {
            dim: rho.rows(),
            rho,
            sqrt_rho,
        })
    }

    /// Qubit state `ρ = (I + x·σ1 + y·σ2 + z·σ3)/2`.
    pub fn from_bloch(r: BlochVector) -> Result<Self, QuantumError> {
        if r.norm_sq() > 1.0 + BLOCH_NORM_TOL {
            return Err(QuantumError::BlochNormExceeded {
                norm: r.norm_sq().sqrt(),
            });
        }
        let rho = CMatrix::from_rows(vec![
            vec![
                Complex64::new((1.0 + r.z) / 2.0, 0.0),
                Complex64::new(r.x / 2.0, -r.y / 2.0),
            ],
            vec![
                Complex64::new(r.x / 2.0, r.y / 2.0),
                Complex64::new((1.0 - r.z) / 2.0, 0.0),
            ],
        ])
        .expect("2x2 buffer");
        Self::from_matrix(rho)
    }

    /// `ρ = I/dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let rho = CMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self::from_matrix(rho).expect("maximally mixed state is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    pub fn sqrt_rho(&self) -> &CMatrix {
        &self.sqrt_rho
    }

    /// `Tr(ρ²)`; 1 for pure states.
    pub fn purity(&self) -> f64 {
        linalg::trace_prod(&self.rho, &self.rho).re
    }

    fn check_dim(&self, matrix: &CMatrix) -> Result<(), QuantumError> {
        if matrix.rows() != self.dim || matrix.cols() != self.dim {
            return Err(QuantumError::DimMismatch {
                state_dim: self.dim,
                observable_dim: matrix.rows(),
            });
        }
        Ok(())
    }

    /// `⟨A⟩ = Tr(ρA)`. The imaginary part (bounded by rounding for
    /// Hermitian inputs) is discarded.
    pub fn expectation(&self, a: &Observable) -> Result<f64, QuantumError> {
        self.check_dim(a.matrix())?;
        Ok(linalg::trace_prod(&self.rho, a.matrix()).re)
    }

    /// `(ΔA)² = ⟨A²⟩ − ⟨A⟩²`, clamped at zero to absorb rounding.
    pub fn variance(&self, a: &Observable) -> Result<f64, QuantumError> {
        self.check_dim(a.matrix())?;
        Ok(self.variance_raw(a.matrix()))
    }

    /// `ΔA`, the standard deviation.
    pub fn delta(&self, a: &Observable) -> Result<f64, QuantumError> {
        Ok(self.variance(a)?.sqrt())
    }

    /// Variance of an unvalidated Hermitian matrix; used internally for sum
    /// observables whose Hermiticity is inherited from the summands.
    pub(crate) fn variance_raw(&self, m: &CMatrix) -> f64 {
        let mean = linalg::trace_prod(&self.rho, m).re;
        let m2 = linalg::trace_prod(&self.rho, &(m * m)).re;
        (m2 - mean * mean).max(0.0)
    }

    /// Commutator mean, anticommutator mean and covariance of a pair,
    /// computed from a single `Tr(ρAB)` since `⟨BA⟩ = conj(⟨AB⟩)` for
    /// Hermitian operators.
    pub fn pair_moments(
        &self,
        a: &Observable,
        b: &Observable,
    ) -> Result<PairMoments, QuantumError> {
        self.check_dim(a.matrix())?;
        self.check_dim(b.matrix())?;
        let t = linalg::trace_prod(&self.rho, &(a.matrix() * b.matrix()));
        let ea = linalg::trace_prod(&self.rho, a.matrix()).re;
        let eb = linalg::trace_prod(&self.rho, b.matrix()).re;
        Ok(PairMoments {
            comm_mean: t - t.conj(),
            anticomm_mean: t + t.conj(),
            covariance: t - Complex64::new(ea * eb, 0.0),
        })
    }

    /// Normalized deviation operator `(A − ⟨A⟩I)·√ρ / ΔA`, or the zero
    /// matrix when `ΔA ≤ EPS_VAR`. Nonzero results have unit Frobenius norm.
    pub fn normalized_deviation(&self, a: &Observable) -> Result<CMatrix, QuantumError> {
        self.check_dim(a.matrix())?;
        let delta = self.variance(a)?.sqrt();
        if delta <= EPS_VAR {
            return Ok(CMatrix::zeros(self.dim, self.dim));
        }
        let mean = self.expectation(a)?;
        let centered = a.matrix() - &CMatrix::identity(self.dim).scale(Complex64::new(mean, 0.0));
        Ok((&centered * &self.sqrt_rho).scale(Complex64::new(1.0 / delta, 0.0)))
    }
}
