//! Variance-based uncertainty-relation bounds for finite sets of Hermitian
//! observables on finite-dimensional quantum states.
//!
//! The crate is organized in four layers:
//!
//! * [`linalg`] — self-contained dense complex matrices with a Hermitian
//!   Jacobi eigensolver, PSD square root and singular values. Everything is
//!   sized for small matrices (dimension ≲ 16), no external solver involved.
//! * [`quantum`] — validated density matrices, labeled observables, and the
//!   expectation / variance / covariance machinery, including the
//!   unit-norm deviation operators `Ã√ρ/ΔA`.
//! * [`bounds`] — the Gram-matrix variance-sum bound, the overlap-matrix
//!   product bound, the classical Robertson/Schrödinger pair bounds, and
//!   the comparison bounds they strengthen, plus aggregated reports.
//! * [`verify`] — a seeded Ginibre generator and a randomized suite that
//!   checks every inequality and structural invariant above.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here can be shared and evaluated concurrently.
//!
//! ```
//! use uncrel::{bound_thm1, BlochVector, Observable, QuantumState};
//!
//! // Qubit on the Bloch sphere equator, radius √3/2.
//! let state = QuantumState::from_bloch(BlochVector::new(0.0, 3f64.sqrt() / 2.0, 0.0))?;
//! let obs = [Observable::sigma_x(), Observable::sigma_z()];
//!
//! let lhs: f64 = obs.iter().map(|o| state.variance(o).unwrap()).sum();
//! let bound = bound_thm1(&state, &obs)?;
//! assert!(lhs >= bound);
//! assert!((bound - 2.0 / (1.0 + 3f64.sqrt() / 2.0)).abs() < 1e-12);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod bounds;
pub mod linalg;
pub mod quantum;
pub mod verify;

pub use num_complex::Complex64;

pub use bounds::{
    bound_c22, bound_chen_fei, bound_cor2, bound_cor3, bound_maccone, bound_pati, bound_thm1,
    bound_thm2, build_gram, build_overlap, pair_bounds, product_report, sum_report, BoundsError,
    Cor3Bounds, GramMatrix, OverlapMatrix, PairBounds, PatiBounds, ProductBoundReport,
    SumBoundReport,
};
pub use linalg::{
    eigh, frobenius_inner, psd_sqrt, singular_values, CMatrix, HermEigen, LinalgError,
};
pub use quantum::{BlochVector, Observable, PairMoments, QuantumError, QuantumState, EPS_VAR};
pub use verify::{
    random_observable, random_state, run_checks, run_suite, CheckResult, SplitMix64, SuiteReport,
    TrialConfig, VerifyError,
};
