//! Uncertainty-relation bounds over sets of observables.
//!
//! The two central objects are the Gram matrix `M` with
//! `M_ij = ⟨Ã_iÃ_j⟩/(ΔA_iΔA_j)` (Hermitian PSD, unit diagonal on
//! nondegenerate entries) and the overlap matrix `G` with
//! `G_ij = |⟨Ã_iB̃_j⟩|/(ΔA_iΔB_j)` between two sets. Both are computed from
//! moment formulas; by cyclicity of the trace they equal the Frobenius
//! inner products of the deviation operators `Ã√ρ/ΔA`, and the tests hold
//! them to that second route.
//!
//! Bounds that divide by `λ_max(M)` or `σ_max(G)` return a typed error when
//! the denominator is degenerate instead of producing infinities.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, CMatrix, LinalgError};
use crate::quantum::{Observable, QuantumState, EPS_VAR};

/// Threshold under which `λ_max(M)` or `σ_max(G)` counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Frobenius tolerance on `[A_i, B_j] = iδ_ij·C` for the canonical-set bound.
const PATI_COMM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("observable set is empty")]
    EmptySet,
    #[error("observable sets must have equal length ({left} vs {right})")]
    SetSizeMismatch { left: usize, right: usize },
    #[error("observable dimension {observable_dim} does not match state dimension {state_dim}")]
    DimMismatch {
        state_dim: usize,
        observable_dim: usize,
    },
    #[error("all observables are compatible on this state (λ_max(M) ≈ 0)")]
    AllCompatible,
    #[error("need at least three observables, got {n}")]
    NeedAtLeastThree { n: usize },
    #[error("all covariances vanish on this state (σ_max(G) ≈ 0)")]
    AllCovariancesVanish,
    #[error("commutator structure violated at pair ({i}, {j}) (deviation {deviation:.3e})")]
    CommutatorStructureViolated { i: usize, j: usize, deviation: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl BoundsError {
    /// Stable machine-readable name of the error variant.
    pub fn code(&self) -> &'static str {
        match self {
            BoundsError::EmptySet => "EmptySet",
            BoundsError::SetSizeMismatch { .. } => "SetSizeMismatch",
            BoundsError::DimMismatch { .. } => "DimMismatch",
            BoundsError::AllCompatible => "AllCompatible",
            BoundsError::NeedAtLeastThree { .. } => "NeedAtLeastThree",
            BoundsError::AllCovariancesVanish => "AllCovariancesVanish",
            BoundsError::CommutatorStructureViolated { .. } => "CommutatorStructureViolated",
            BoundsError::Linalg(_) => "Linalg",
        }
    }
}

/// Normalized covariance (Gram) matrix of one observable set.
///
/// Hermitian and PSD; rows and columns of zero-variance observables are
/// identically zero and the corresponding diagonal entry is 0 instead of 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    n: usize,
    matrix: CMatrix,
    lambda_max: f64,
    deltas: Vec<f64>,
}

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }
}

/// Entrywise-modulus overlap matrix between two observable sets.
///
/// All entries lie in `[0, 1]` up to rounding (Cauchy–Schwarz on the
/// unit-norm deviation operators).
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapMatrix {
    n: usize,
    m: usize,
    entries: Vec<f64>,
    sigma_max: f64,
    deltas_a: Vec<f64>,
    deltas_b: Vec<f64>,
}

impl OverlapMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.m + j]
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    pub fn deltas_a(&self) -> &[f64] {
        &self.deltas_a
    }

    pub fn deltas_b(&self) -> &[f64] {
        &self.deltas_b
    }
}

/// Robertson and Schrödinger bounds for one pair: `rur` bounds `ΔAΔB`,
/// `sur` bounds `(ΔA)²(ΔB)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairBounds {
    pub rur: f64,
    pub sur: f64,
}

/// Commutator-sum bounds on `Σ(ΔA_i)²`: `cor3` divides by
/// `min{σ_max(G), n−1}`, `pairwise_rur` by `n−1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cor3Bounds {
    pub cor3: f64,
    pub pairwise_rur: f64,
}

/// Canonical-set bound `(ΣΔA_i)(ΣΔB_i) ≥ (n/2)|⟨C⟩|` for sets satisfying
/// `[A_i, B_j] = iδ_ij·C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatiBounds {
    pub lhs: f64,
    pub rhs: f64,
}

/// All applicable bounds on the variance sum of one observable set.
///
/// `thm1` is `None` only in the degenerate `AllCompatible` case;
/// `maccone` is present exactly when `n = 2` and `chen_fei` when `n ≥ 3`;
/// `cor3` is `None` when `n < 2` or in the degenerate
/// `AllCovariancesVanish` case.
#[derive(Debug, Clone, PartialEq)]
pub struct SumBoundReport {
    pub lhs: f64,
    pub thm1: Option<f64>,
    pub maccone: Option<f64>,
    pub chen_fei: Option<f64>,
    pub cor3: Option<f64>,
    pub pairwise_rur: f64,
    pub lambda_max: f64,
    pub sigma_max: f64,
}

/// All bounds on `√Σ(ΔA_i)²·√Σ(ΔB_j)²` for a pair of observable sets.
///
/// `thm2` and `cor2` are `None` only in the degenerate
/// `AllCovariancesVanish` case.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductBoundReport {
    pub lhs: f64,
    pub thm2: Option<f64>,
    pub cor2: Option<f64>,
    pub c22: f64,
    pub sigma_max: f64,
}

fn validate_set(state: &QuantumState, obs: &[Observable]) -> Result<(), BoundsError> {
    if obs.is_empty() {
        return Err(BoundsError::EmptySet);
    }
    for o in obs {
        if o.dim() != state.dim() {
            return Err(BoundsError::DimMismatch {
                state_dim: state.dim(),
                observable_dim: o.dim(),
            });
        }
    }
    Ok(())
}

fn deltas(state: &QuantumState, obs: &[Observable]) -> Vec<f64> {
    obs.iter()
        .map(|o| state.variance(o).expect("dimensions validated").sqrt())
        .collect()
}

fn sum_matrix(obs: &[Observable]) -> CMatrix {
    let mut sum = obs[0].matrix().clone();
    for o in &obs[1..] {
        sum = &sum + o.matrix();
    }
    sum
}

/// `Σ_{i<j} |⟨[A_i, A_j]⟩|`.
pub fn pairwise_commutator_sum(
    state: &QuantumState,
    obs: &[Observable],
) -> Result<f64, BoundsError> {
    validate_set(state, obs)?;
    let mut sum = 0.0;
    for i in 0..obs.len() {
        for j in i + 1..obs.len() {
            sum += state
                .pair_moments(&obs[i], &obs[j])
                .expect("dimensions validated")
                .comm_mean
                .norm();
        }
    }
    Ok(sum)
}

/// Build the Gram matrix `M_ij = ⟨Ã_iÃ_j⟩/(ΔA_iΔA_j)` with zero rows and
/// columns for zero-variance observables, plus `λ_max(M)`.
pub fn build_gram(state: &QuantumState, obs: &[Observable]) -> Result<GramMatrix, BoundsError> {
    validate_set(state, obs)?;
    let n = obs.len();
    let ds = deltas(state, obs);
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        if ds[i] > EPS_VAR {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        for j in i + 1..n {
            if ds[i] > EPS_VAR && ds[j] > EPS_VAR {
                let cov = state
                    .pair_moments(&obs[i], &obs[j])
                    .expect("dimensions validated")
                    .covariance;
                let value = cov / (ds[i] * ds[j]);
                m.set(i, j, value);
                m.set(j, i, value.conj());
            }
        }
    }
    let eig = linalg::eigh(&m)?;
    Ok(GramMatrix {
        n,
        lambda_max: eig.max_eigenvalue(),
        matrix: m,
        deltas: ds,
    })
}

/// Variance-sum bound `[Δ(ΣA_i)]² / λ_max(M)`.
pub fn bound_thm1(state: &QuantumState, obs: &[Observable]) -> Result<f64, BoundsError> {
    let gram = build_gram(state, obs)?;
    if gram.lambda_max() <= DEGENERACY_TOL {
        return Err(BoundsError::AllCompatible);
    }
    let var_sum = state.variance_raw(&sum_matrix(obs));
    Ok(var_sum / gram.lambda_max())
}

/// Two-observable bound `[Δ(A+B)]²/2`.
pub fn bound_maccone(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
) -> Result<f64, BoundsError> {
    validate_set(state, std::slice::from_ref(a))?;
    validate_set(state, std::slice::from_ref(b))?;
    Ok(state.variance_raw(&(a.matrix() + b.matrix())) / 2.0)
}

/// n-observable bound
/// `(1/(n−2))·{Σ_{i<j}[Δ(A_i+A_j)]² − (1/(n−1)²)·[Σ_{i<j}Δ(A_i+A_j)]²}`.
pub fn bound_chen_fei(state: &QuantumState, obs: &[Observable]) -> Result<f64, BoundsError> {
    validate_set(state, obs)?;
    let n = obs.len();
    if n < 3 {
        return Err(BoundsError::NeedAtLeastThree { n });
    }
    let mut pair_var_sum = 0.0;
    let mut pair_delta_sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let var = state.variance_raw(&(obs[i].matrix() + obs[j].matrix()));
            pair_var_sum += var;
            pair_delta_sum += var.sqrt();
        }
    }
    let nf = n as f64;
    Ok((pair_var_sum - pair_delta_sum * pair_delta_sum / ((nf - 1.0) * (nf - 1.0))) / (nf - 2.0))
}

/// Robertson bound `|⟨[A,B]⟩|/2` on `ΔAΔB` and Schrödinger bound
/// `|⟨[A,B]⟩/(2i)|² + |⟨{A,B}⟩/2 − ⟨A⟩⟨B⟩|²` on `(ΔA)²(ΔB)²`.
pub fn pair_bounds(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
) -> Result<PairBounds, BoundsError> {
    validate_set(state, std::slice::from_ref(a))?;
    validate_set(state, std::slice::from_ref(b))?;
    let m = state.pair_moments(a, b).expect("dimensions validated");
    let ea = state.expectation(a).expect("dimensions validated");
    let eb = state.expectation(b).expect("dimensions validated");
    let rur = m.comm_mean.norm() / 2.0;
    let sur = rur * rur + (m.anticomm_mean * 0.5 - Complex64::new(ea * eb, 0.0)).norm_sqr();
    Ok(PairBounds { rur, sur })
}

/// Build the overlap matrix `G_ij = |⟨Ã_iB̃_j⟩|/(ΔA_iΔB_j)` with zeros where
/// either variance vanishes, plus `σ_max(G)`.
pub fn build_overlap(
    state: &QuantumState,
    obs_a: &[Observable],
    obs_b: &[Observable],
) -> Result<OverlapMatrix, BoundsError> {
    validate_set(state, obs_a)?;
    validate_set(state, obs_b)?;
    let (n, m) = (obs_a.len(), obs_b.len());
    let ds_a = deltas(state, obs_a);
    let ds_b = deltas(state, obs_b);
    let mut entries = vec![0.0; n * m];
    for i in 0..n {
        for j in 0..m {
            if ds_a[i] > EPS_VAR && ds_b[j] > EPS_VAR {
                let cov = state
                    .pair_moments(&obs_a[i], &obs_b[j])
                    .expect("dimensions validated")
                    .covariance;
                entries[i * m + j] = cov.norm() / (ds_a[i] * ds_b[j]);
            }
        }
    }
    let g = CMatrix::new(
        n,
        m,
        entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
    )
    .expect("finite by construction");
    let sigma_max = linalg::singular_values(&g)?[0];
    Ok(OverlapMatrix {
        n,
        m,
        entries,
        sigma_max,
        deltas_a: ds_a,
        deltas_b: ds_b,
    })
}

fn sur_terms_sum(
    state: &QuantumState,
    obs_a: &[Observable],
    obs_b: &[Observable],
) -> (f64, f64, f64) {
    // Returns (Σ√sur_ij, Σ|⟨[A_i,B_j]⟩|, Σ|⟨[A_i,B_j]⟩|²).
    let mut sur_sum = 0.0;
    let mut comm_sum = 0.0;
    let mut comm_sq_sum = 0.0;
    for a in obs_a {
        for b in obs_b {
            let pb = pair_bounds(state, a, b).expect("sets validated");
            sur_sum += pb.sur.sqrt();
            let comm = 2.0 * pb.rur;
            comm_sum += comm;
            comm_sq_sum += comm * comm;
        }
    }
    (sur_sum, comm_sum, comm_sq_sum)
}

/// Product bound `(1/σ_max(G))·Σ_ij √sur_ij` on `√Σ(ΔA_i)²·√Σ(ΔB_j)²`.
pub fn bound_thm2(
    state: &QuantumState,
    obs_a: &[Observable],
    obs_b: &[Observable],
) -> Result<f64, BoundsError> {
    let overlap = build_overlap(state, obs_a, obs_b)?;
    if overlap.sigma_max() <= DEGENERACY_TOL {
        return Err(BoundsError::AllCovariancesVanish);
    }
    let (sur_sum, _, _) = sur_terms_sum(state, obs_a, obs_b);
    Ok(sur_sum / overlap.sigma_max())
}

/// Commutator-only product bound `(1/(2σ_max(G)))·Σ_ij |⟨[A_i,B_j]⟩|`.
pub fn bound_cor2(
    state: &QuantumState,
    obs_a: &[Observable],
    obs_b: &[Observable],
) -> Result<f64, BoundsError> {
    let overlap = build_overlap(state, obs_a, obs_b)?;
    if overlap.sigma_max() <= DEGENERACY_TOL {
        return Err(BoundsError::AllCovariancesVanish);
    }
    let (_, comm_sum, _) = sur_terms_sum(state, obs_a, obs_b);
    Ok(comm_sum / (2.0 * overlap.sigma_max()))
}

/// Pairwise-Robertson product bound `(1/2)·√(Σ_ij |⟨[A_i,B_j]⟩|²)`.
pub fn bound_c22(
    state: &QuantumState,
    obs_a: &[Observable],
    obs_b: &[Observable],
) -> Result<f64, BoundsError> {
    validate_set(state, obs_a)?;
    validate_set(state, obs_b)?;
    let (_, _, comm_sq_sum) = sur_terms_sum(state, obs_a, obs_b);
    Ok(comm_sq_sum.sqrt() / 2.0)
}

/// Commutator-sum bounds on `Σ(ΔA_i)²`, with `G` built from the set against
/// itself: `cor3 = Σ_{i<j}|⟨[A_i,A_j]⟩| / min{σ_max(G), n−1}` and the plain
/// mean-inequality bound dividing by `n−1`.
pub fn bound_cor3(state: &QuantumState, obs: &[Observable]) -> Result<Cor3Bounds, BoundsError> {
    validate_set(state, obs)?;
    let n = obs.len();
    if n < 2 {
        // A single observable has no pairs to bound.
        return Err(BoundsError::EmptySet);
    }
    let overlap = build_overlap(state, obs, obs)?;
    let comm_sum = pairwise_commutator_sum(state, obs)?;
    if overlap.sigma_max() <= DEGENERACY_TOL {
        if comm_sum > DEGENERACY_TOL {
            return Err(BoundsError::AllCovariancesVanish);
        }
        return Ok(Cor3Bounds {
            cor3: 0.0,
            pairwise_rur: 0.0,
        });
    }
    let nf = n as f64;
    Ok(Cor3Bounds {
        cor3: comm_sum / overlap.sigma_max().min(nf - 1.0),
        pairwise_rur: comm_sum / (nf - 1.0),
    })
}

/// Canonical-set bound for sets with `[A_i, B_j] = iδ_ij·C`: checks the
/// commutator structure within Frobenius tolerance `1e-8`, then returns
/// `lhs = (ΣΔA_i)(ΣΔB_i)` and `rhs = (n/2)|⟨C⟩|`.
pub fn bound_pati(
    state: &QuantumState,
    obs_a: &[Observable],
    obs_b: &[Observable],
    c: &Observable,
) -> Result<PatiBounds, BoundsError> {
    if obs_a.len() != obs_b.len() {
        return Err(BoundsError::SetSizeMismatch {
            left: obs_a.len(),
            right: obs_b.len(),
        });
    }
    validate_set(state, obs_a)?;
    validate_set(state, obs_b)?;
    validate_set(state, std::slice::from_ref(c))?;
    let n = obs_a.len();
    let i_c = c.matrix().scale(Complex64::new(0.0, 1.0));
    for (i, a) in obs_a.iter().enumerate() {
        for (j, b) in obs_b.iter().enumerate() {
            let comm = &(a.matrix() * b.matrix()) - &(b.matrix() * a.matrix());
            let residual = if i == j { &comm - &i_c } else { comm };
            let deviation = residual.frobenius_norm();
            if deviation > PATI_COMM_TOL {
                return Err(BoundsError::CommutatorStructureViolated { i, j, deviation });
            }
        }
    }
    let lhs: f64 =
        deltas(state, obs_a).iter().sum::<f64>() * deltas(state, obs_b).iter().sum::<f64>();
    let mean_c = state.expectation(c).expect("dimensions validated");
    Ok(PatiBounds {
        lhs,
        rhs: n as f64 / 2.0 * mean_c.abs(),
    })
}

/// Aggregate every applicable variance-sum bound for one observable set.
/// Degenerate bounds are reported as `None` rather than failing the report.
pub fn sum_report(state: &QuantumState, obs: &[Observable]) -> Result<SumBoundReport, BoundsError> {
    validate_set(state, obs)?;
    let n = obs.len();
    let ds = deltas(state, obs);
    let lhs: f64 = ds.iter().map(|d| d * d).sum();
    let gram = build_gram(state, obs)?;
    let overlap = build_overlap(state, obs, obs)?;
    let thm1 = match bound_thm1(state, obs) {
        Ok(v) => Some(v),
        Err(BoundsError::AllCompatible) => None,
        Err(e) => return Err(e),
    };
    let maccone = if n == 2 {
        Some(bound_maccone(state, &obs[0], &obs[1])?)
    } else {
        None
    };
    let chen_fei = if n >= 3 {
        Some(bound_chen_fei(state, obs)?)
    } else {
        None
    };
    let (cor3, pairwise_rur) = if n >= 2 {
        match bound_cor3(state, obs) {
            Ok(c) => (Some(c.cor3), c.pairwise_rur),
            Err(BoundsError::AllCovariancesVanish) => (
                None,
                pairwise_commutator_sum(state, obs)? / (n as f64 - 1.0),
            ),
            Err(e) => return Err(e),
        }
    } else {
        (None, 0.0)
    };
    Ok(SumBoundReport {
        lhs,
        thm1,
        maccone,
        chen_fei,
        cor3,
        pairwise_rur,
        lambda_max: gram.lambda_max(),
        sigma_max: overlap.sigma_max(),
    })
}

/// Aggregate every product bound for a pair of observable sets. Degenerate
/// bounds are reported as `None` rather than failing the report.
pub fn product_report(
    state: &QuantumState,
    obs_a: &[Observable],
    obs_b: &[Observable],
) -> Result<ProductBoundReport, BoundsError> {
    let overlap = build_overlap(state, obs_a, obs_b)?;
    let sum_a: f64 = overlap.deltas_a().iter().map(|d| d * d).sum();
    let sum_b: f64 = overlap.deltas_b().iter().map(|d| d * d).sum();
    let lhs = sum_a.sqrt() * sum_b.sqrt();
    let thm2 = match bound_thm2(state, obs_a, obs_b) {
        Ok(v) => Some(v),
        Err(BoundsError::AllCovariancesVanish) => None,
        Err(e) => return Err(e),
    };
    let cor2 = match bound_cor2(state, obs_a, obs_b) {
        Ok(v) => Some(v),
        Err(BoundsError::AllCovariancesVanish) => None,
        Err(e) => return Err(e),
    };
    let c22 = bound_c22(state, obs_a, obs_b)?;
    Ok(ProductBoundReport {
        lhs,
        thm2,
        cor2,
        c22,
        sigma_max: overlap.sigma_max(),
    })
}
