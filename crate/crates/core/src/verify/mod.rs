//! Randomized verification of every bound and structural invariant.
//!
//! Each trial draws a Ginibre-random state and Gaussian Hermitian
//! observable sets from a seeded substream, evaluates every inequality from
//! [`crate::bounds`] plus the structural identities tying the moment route
//! to the deviation-operator route, and records one [`CheckResult`] per
//! check. Trials hitting a degenerate bound (`AllCompatible`,
//! `AllCovariancesVanish`, or a zero-variance observable in the product
//! chain) skip those checks and are counted, not failed.

mod rng;

pub use rng::SplitMix64;

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::bounds::{self, BoundsError};
use crate::linalg::{self, CMatrix};
use crate::quantum::{Observable, QuantumState, EPS_VAR};

/// Uniform pass tolerance: a check passes iff `margin ≥ −1e-9`.
pub const PASS_TOL: f64 = 1e-9;

/// Budget for identity checks (route equivalence, moment identities): the
/// recorded pair is `(budget, observed deviation)`.
pub const IDENTITY_TOL: f64 = 1e-10;

const GRAM_PSD_FLOOR: f64 = -1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("rank {rank} is not in 1..={dim}")]
    BadRank { rank: usize, dim: usize },
    #[error("invalid trial config: {0}")]
    InvalidConfig(String),
}

/// Configuration of a randomized run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    seed: u64,
    trials: usize,
    dim_range: (usize, usize),
    set_size_range: (usize, usize),
}

impl TrialConfig {
    /// Dimensions must lie in `[2, 8]` and set sizes in `[1, 6]`.
    pub fn new(
        seed: u64,
        trials: usize,
        dim_range: (usize, usize),
        set_size_range: (usize, usize),
    ) -> Result<Self, VerifyError> {
        if trials == 0 {
            return Err(VerifyError::InvalidConfig("trials must be ≥ 1".into()));
        }
        let (dlo, dhi) = dim_range;
        if dlo < 2 || dhi > 8 || dlo > dhi {
            return Err(VerifyError::InvalidConfig(format!(
                "dim range {dlo}..={dhi} must lie within 2..=8"
            )));
        }
        let (slo, shi) = set_size_range;
        if slo < 1 || shi > 6 || slo > shi {
            return Err(VerifyError::InvalidConfig(format!(
                "set size range {slo}..={shi} must lie within 1..=6"
            )));
        }
        Ok(Self {
            seed,
            trials,
            dim_range,
            set_size_range,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn dim_range(&self) -> (usize, usize) {
        self.dim_range
    }

    pub fn set_size_range(&self) -> (usize, usize) {
        self.set_size_range
    }
}

/// Outcome of one named check: `margin = lhs − rhs`, passed iff
/// `margin ≥ −1e-9`. For identity checks the recorded pair is
/// `(tolerance budget, observed deviation)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub passed: bool,
    pub context: String,
}

fn check(name: &'static str, lhs: f64, rhs: f64, context: &str) -> CheckResult {
    let margin = lhs - rhs;
    CheckResult {
        name,
        lhs,
        rhs,
        margin,
        passed: margin >= -PASS_TOL,
        context: context.to_string(),
    }
}

fn failed_check(name: &'static str, err: &BoundsError, context: &str) -> CheckResult {
    CheckResult {
        name,
        lhs: 0.0,
        rhs: 1.0,
        margin: -1.0,
        passed: false,
        context: format!("{context} unexpected-error={err}"),
    }
}

/// Checks produced by one trial, plus whether any degenerate bound was hit.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialChecks {
    pub checks: Vec<CheckResult>,
    pub hit_degenerate: bool,
}

/// All checks of a full run, ordered by trial index.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
    pub trials: usize,
    pub skipped_degenerate: usize,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Smallest margin seen per check name.
    pub fn worst_margins(&self) -> BTreeMap<&'static str, f64> {
        let mut worst: BTreeMap<&'static str, f64> = BTreeMap::new();
        for c in &self.checks {
            worst
                .entry(c.name)
                .and_modify(|m| *m = m.min(c.margin))
                .or_insert(c.margin);
        }
        worst
    }
}

/// Random density matrix `GG†/Tr(GG†)` with `G` a `dim×rank` matrix of
/// standard complex Gaussians. Rank 1 gives a pure state.
pub fn random_state(
    dim: usize,
    rank: usize,
    rng: &mut SplitMix64,
) -> Result<QuantumState, VerifyError> {
    if rank == 0 || rank > dim {
        return Err(VerifyError::BadRank { rank, dim });
    }
    let entries: Vec<Complex64> = (0..dim * rank)
        .map(|_| rng.next_complex_gaussian())
        .collect();
    let g = CMatrix::new(dim, rank, entries).expect("gaussian entries are finite");
    let gram = &g * &g.adjoint();
    let trace = gram.trace().re;
    let rho = gram.scale(Complex64::new(1.0 / trace, 0.0));
    Ok(QuantumState::from_matrix(rho).expect("Ginibre construction yields a valid state"))
}

/// Random Hermitian observable `(R + R†)/2` with standard complex Gaussian
/// entries.
pub fn random_observable(dim: usize, label: &str, rng: &mut SplitMix64) -> Observable {
    let entries: Vec<Complex64> = (0..dim * dim)
        .map(|_| rng.next_complex_gaussian())
        .collect();
    let r = CMatrix::new(dim, dim, entries).expect("gaussian entries are finite");
    Observable::new(label, r.hermitized()).expect("symmetrized matrix is Hermitian")
}

/// Top-left 2×2 Pauli block zero-padded to `dim`; the canonical commutation
/// fixture `[A, B] = i·C` with `A = σ1⊕0`, `B = σ2⊕0`, `C = 2σ3⊕0` works at
/// every dimension.
fn embedded_pauli_block(dim: usize, block: &CMatrix, scale: f64, label: &str) -> Observable {
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..2 {
        for j in 0..2 {
            m.set(i, j, block.get(i, j) * scale);
        }
    }
    Observable::new(label, m).expect("embedded Pauli block is Hermitian")
}

/// Evaluate every check on one fixed configuration. Used by `run_suite` for
/// random trials and directly by tests for closed-form fixtures.
pub fn run_checks(
    state: &QuantumState,
    set_a: &[Observable],
    set_b: &[Observable],
    context: &str,
) -> TrialChecks {
    let mut out = Vec::new();
    let mut hit_degenerate = false;
    let n = set_a.len();
    if set_a.is_empty() || set_b.is_empty() {
        return TrialChecks {
            checks: out,
            hit_degenerate,
        };
    }

    let ds_a: Vec<f64> = set_a
        .iter()
        .map(|o| state.variance(o).expect("dims match").sqrt())
        .collect();
    let ds_b: Vec<f64> = set_b
        .iter()
        .map(|o| state.variance(o).expect("dims match").sqrt())
        .collect();
    let lhs_sum: f64 = ds_a.iter().map(|d| d * d).sum();

    // Gram-matrix structure.
    match bounds::build_gram(state, set_a) {
        Ok(gram) => {
            let eig = linalg::eigh(gram.matrix()).expect("gram matrix is Hermitian");
            out.push(check(
                "gram_psd",
                eig.min_eigenvalue(),
                GRAM_PSD_FLOOR,
                context,
            ));
            let diag_dev = (0..n)
                .map(|i| {
                    let d = gram.matrix().get(i, i).norm();
                    if ds_a[i] > EPS_VAR {
                        (d - 1.0).abs()
                    } else {
                        d
                    }
                })
                .fold(0.0, f64::max);
            out.push(check("gram_diag", IDENTITY_TOL, diag_dev, context));
            out.push(check(
                "gram_lambda_max",
                n as f64,
                gram.lambda_max(),
                context,
            ));

            let devs: Vec<CMatrix> = set_a
                .iter()
                .map(|o| state.normalized_deviation(o).expect("dims match"))
                .collect();
            let mut route_dev: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let inner = linalg::frobenius_inner(&devs[i], &devs[j]).expect("same shape");
                    route_dev = route_dev.max((gram.matrix().get(i, j) - inner).norm());
                }
            }
            out.push(check("gram_route", IDENTITY_TOL, route_dev, context));
        }
        Err(e) => out.push(failed_check("gram_psd", &e, context)),
    }

    // Variance-sum bounds.
    let thm1 = match bounds::bound_thm1(state, set_a) {
        Ok(v) => {
            out.push(check("thm1", lhs_sum, v, context));
            Some(v)
        }
        Err(BoundsError::AllCompatible) => {
            hit_degenerate = true;
            None
        }
        Err(e) => {
            out.push(failed_check("thm1", &e, context));
            None
        }
    };
    if n == 2 {
        if let Some(t1) = thm1 {
            match bounds::bound_maccone(state, &set_a[0], &set_a[1]) {
                Ok(m) => out.push(check("cor1_chain", t1, m, context)),
                Err(e) => out.push(failed_check("cor1_chain", &e, context)),
            }
        }
    }
    if n >= 3 {
        match bounds::bound_chen_fei(state, set_a) {
            Ok(cf) => out.push(check("chen_fei", lhs_sum, cf, context)),
            Err(e) => out.push(failed_check("chen_fei", &e, context)),
        }
    }

    // Δ(ΣA)² = Σ_ij ⟨Ã_iÃ_j⟩.
    {
        let mut sum = set_a[0].matrix().clone();
        for o in &set_a[1..] {
            sum = &sum + o.matrix();
        }
        let sum_var = state.variance_raw(&sum);
        let mut cov_total = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                cov_total += state
                    .pair_moments(&set_a[i], &set_a[j])
                    .expect("dims match")
                    .covariance;
            }
        }
        let dev = (cov_total - Complex64::new(sum_var, 0.0)).norm();
        out.push(check("sum_identity", IDENTITY_TOL, dev, context));
    }

    // Commutator-sum bounds.
    if n >= 2 {
        match bounds::bound_cor3(state, set_a) {
            Ok(c) => {
                out.push(check("cor3", lhs_sum, c.cor3, context));
                out.push(check("cor3_vs_pairwise", c.cor3, c.pairwise_rur, context));
            }
            Err(BoundsError::AllCovariancesVanish) => hit_degenerate = true,
            Err(e) => out.push(failed_check("cor3", &e, context)),
        }
    }

    // Classical pair bounds and the SUR decomposition identity.
    for i in 0..n {
        for j in i + 1..n {
            let pb = bounds::pair_bounds(state, &set_a[i], &set_a[j]).expect("dims match");
            out.push(check("pair_rur", ds_a[i] * ds_a[j], pb.rur, context));
            out.push(check(
                "pair_sur",
                ds_a[i] * ds_a[i] * ds_a[j] * ds_a[j],
                pb.sur,
                context,
            ));
            let cov = state
                .pair_moments(&set_a[i], &set_a[j])
                .expect("dims match")
                .covariance;
            out.push(check(
                "sur_identity",
                IDENTITY_TOL,
                (cov.norm_sqr() - pb.sur).abs(),
                context,
            ));
        }
    }

    // Overlap-matrix structure and product bounds against set_b.
    let sum_b: f64 = ds_b.iter().map(|d| d * d).sum();
    let lhs_prod = lhs_sum.sqrt() * sum_b.sqrt();
    match bounds::build_overlap(state, set_a, set_b) {
        Ok(overlap) => {
            let mut overflow: f64 = 0.0;
            let mut route_dev: f64 = 0.0;
            let devs_a: Vec<CMatrix> = set_a
                .iter()
                .map(|o| state.normalized_deviation(o).expect("dims match"))
                .collect();
            let devs_b: Vec<CMatrix> = set_b
                .iter()
                .map(|o| state.normalized_deviation(o).expect("dims match"))
                .collect();
            for (i, da) in devs_a.iter().enumerate() {
                for (j, db) in devs_b.iter().enumerate() {
                    overflow = overflow.max(overlap.entry(i, j) - 1.0);
                    let inner = linalg::frobenius_inner(da, db).expect("same shape").norm();
                    route_dev = route_dev.max((overlap.entry(i, j) - inner).abs());
                }
            }
            out.push(check(
                "overlap_entries",
                IDENTITY_TOL,
                overflow.max(0.0),
                context,
            ));
            out.push(check("overlap_route", IDENTITY_TOL, route_dev, context));
        }
        Err(e) => out.push(failed_check("overlap_entries", &e, context)),
    }

    let all_nonzero = ds_a.iter().all(|&d| d > EPS_VAR) && ds_b.iter().all(|&d| d > EPS_VAR);
    if all_nonzero {
        match bounds::bound_thm2(state, set_a, set_b) {
            Ok(t2) => {
                out.push(check("thm2", lhs_prod, t2, context));
                match bounds::bound_cor2(state, set_a, set_b) {
                    Ok(c2) => out.push(check("thm2_vs_cor2", t2, c2, context)),
                    Err(e) => out.push(failed_check("thm2_vs_cor2", &e, context)),
                }
            }
            Err(BoundsError::AllCovariancesVanish) => hit_degenerate = true,
            Err(e) => out.push(failed_check("thm2", &e, context)),
        }
    } else {
        hit_degenerate = true;
    }
    match bounds::bound_c22(state, set_a, set_b) {
        Ok(c22) => out.push(check("c22", lhs_prod, c22, context)),
        Err(e) => out.push(failed_check("c22", &e, context)),
    }

    // Canonical commutation fixture at the trial dimension.
    {
        let dim = state.dim();
        let a = embedded_pauli_block(dim, &crate::quantum::pauli_x(), 1.0, "A1");
        let b = embedded_pauli_block(dim, &crate::quantum::pauli_y(), 1.0, "B1");
        let c_obs = embedded_pauli_block(dim, &crate::quantum::pauli_z(), 2.0, "C");
        match bounds::bound_pati(state, &[a], &[b], &c_obs) {
            Ok(p) => out.push(check("pati", p.lhs, p.rhs, context)),
            Err(e) => out.push(failed_check("pati", &e, context)),
        }
    }

    TrialChecks {
        checks: out,
        hit_degenerate,
    }
}

/// Run the full randomized suite. Deterministic for a given config: trial
/// `k` draws from `SplitMix64::new(seed ^ k)`, and results are ordered by
/// trial index.
pub fn run_suite(cfg: &TrialConfig) -> SuiteReport {
    let mut checks = Vec::new();
    let mut skipped = 0;
    for trial in 0..cfg.trials {
        let mut rng = SplitMix64::new(cfg.seed ^ trial as u64);
        let dim = rng.next_range(cfg.dim_range.0, cfg.dim_range.1);
        let rank = rng.next_range(1, dim);
        let n_a = rng.next_range(cfg.set_size_range.0, cfg.set_size_range.1);
        let n_b = rng.next_range(cfg.set_size_range.0, cfg.set_size_range.1);
        let state = random_state(dim, rank, &mut rng).expect("rank within range");
        let set_a: Vec<Observable> = (0..n_a)
            .map(|i| random_observable(dim, &format!("A{}", i + 1), &mut rng))
            .collect();
        let set_b: Vec<Observable> = (0..n_b)
            .map(|i| random_observable(dim, &format!("B{}", i + 1), &mut rng))
            .collect();
        let context = format!(
            "seed={} trial={} dim={} rank={} nA={} nB={}",
            cfg.seed, trial, dim, rank, n_a, n_b
        );
        let trial_checks = run_checks(&state, &set_a, &set_b, &context);
        if trial_checks.hit_degenerate {
            skipped += 1;
        }
        checks.extend(trial_checks.checks);
    }
    SuiteReport {
        checks,
        trials: cfg.trials,
        skipped_degenerate: skipped,
    }
}
