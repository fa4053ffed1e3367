//! JSON report emitted by `eval`.
//!
//! Degenerate bounds appear as explicit `null` values together with an
//! entry in `degenerate` naming the bound and the reason; they never show
//! up as infinities or NaN. Bounds that are structurally absent (`maccone`
//! away from n = 2, `chen_fei` below n = 3, `cor3` for a single
//! observable) are omitted entirely and do not count as degenerate.

use serde::Serialize;

use uncrel::{bound_pati, pair_bounds, product_report, sum_report, BoundsError, Observable};

use crate::error::CliError;
use crate::scenario::Scenario;

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub state_dim: usize,
    pub sum_bounds: SumSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_bounds: Option<ProductSection>,
    pub pairs_a: Vec<PairSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs_ab: Option<Vec<PairSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pati: Option<PatiSection>,
    pub degenerate: Vec<DegenerateBound>,
}

#[derive(Debug, Serialize)]
pub struct SumSection {
    pub lhs: f64,
    pub thm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maccone: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chen_fei: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cor3: Option<Option<f64>>,
    pub pairwise_rur: f64,
    pub lambda_max: f64,
    pub sigma_max: f64,
}

#[derive(Debug, Serialize)]
pub struct ProductSection {
    pub lhs: f64,
    pub thm2: Option<f64>,
    pub cor2: Option<f64>,
    pub c22: f64,
    pub sigma_max: f64,
}

#[derive(Debug, Serialize)]
pub struct PairSection {
    pub a: String,
    pub b: String,
    pub rur: f64,
    pub sur: f64,
}

#[derive(Debug, Serialize)]
pub struct PatiSection {
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Serialize)]
pub struct DegenerateBound {
    pub bound: &'static str,
    pub reason: &'static str,
}

fn pair_sections(
    state: &uncrel::QuantumState,
    left: &[Observable],
    right: Option<&[Observable]>,
) -> Result<Vec<PairSection>, CliError> {
    let mut out = Vec::new();
    match right {
        None => {
            for i in 0..left.len() {
                for j in i + 1..left.len() {
                    let pb = pair_bounds(state, &left[i], &left[j])
                        .map_err(|e| CliError::validation_from_bounds(&e, "pairs"))?;
                    out.push(PairSection {
                        a: left[i].label().to_string(),
                        b: left[j].label().to_string(),
                        rur: pb.rur,
                        sur: pb.sur,
                    });
                }
            }
        }
        Some(right) => {
            for a in left {
                for b in right {
                    let pb = pair_bounds(state, a, b)
                        .map_err(|e| CliError::validation_from_bounds(&e, "pairs"))?;
                    out.push(PairSection {
                        a: a.label().to_string(),
                        b: b.label().to_string(),
                        rur: pb.rur,
                        sur: pb.sur,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Evaluate a scenario into a report plus the list of degenerate bounds
/// encountered (drives exit code 3).
pub fn build_eval_report(scenario: &Scenario) -> Result<EvalReport, CliError> {
    let state = &scenario.state;
    let obs_a = &scenario.observables_a;
    let n = obs_a.len();

    let sum = sum_report(state, obs_a)
        .map_err(|e| CliError::validation_from_bounds(&e, "observables_a"))?;
    let mut degenerate = Vec::new();
    if sum.thm1.is_none() {
        degenerate.push(DegenerateBound {
            bound: "thm1",
            reason: "AllCompatible",
        });
    }
    let cor3 = if n >= 2 {
        if sum.cor3.is_none() {
            degenerate.push(DegenerateBound {
                bound: "cor3",
                reason: "AllCovariancesVanish",
            });
        }
        Some(sum.cor3)
    } else {
        None
    };
    let sum_section = SumSection {
        lhs: sum.lhs,
        thm1: sum.thm1,
        maccone: sum.maccone,
        chen_fei: sum.chen_fei,
        cor3,
        pairwise_rur: sum.pairwise_rur,
        lambda_max: sum.lambda_max,
        sigma_max: sum.sigma_max,
    };

    let product_section = match &scenario.observables_b {
        None => None,
        Some(obs_b) => {
            let product = product_report(state, obs_a, obs_b)
                .map_err(|e| CliError::validation_from_bounds(&e, "observables_b"))?;
            if product.thm2.is_none() {
                degenerate.push(DegenerateBound {
                    bound: "thm2",
                    reason: "AllCovariancesVanish",
                });
            }
            if product.cor2.is_none() {
                degenerate.push(DegenerateBound {
                    bound: "cor2",
                    reason: "AllCovariancesVanish",
                });
            }
            Some(ProductSection {
                lhs: product.lhs,
                thm2: product.thm2,
                cor2: product.cor2,
                c22: product.c22,
                sigma_max: product.sigma_max,
            })
        }
    };

    let pairs_a = pair_sections(state, obs_a, None)?;
    let pairs_ab = match &scenario.observables_b {
        None => None,
        Some(obs_b) => Some(pair_sections(state, obs_a, Some(obs_b))?),
    };

    let pati = match (&scenario.pati_c, &scenario.observables_b) {
        (Some(c), Some(obs_b)) => {
            let p = bound_pati(state, obs_a, obs_b, c).map_err(|e| match e {
                BoundsError::CommutatorStructureViolated { .. } => {
                    CliError::validation_from_bounds(&e, "pati_c")
                }
                other => CliError::validation_from_bounds(&other, "pati_c"),
            })?;
            Some(PatiSection {
                lhs: p.lhs,
                rhs: p.rhs,
            })
        }
        _ => None,
    };

    Ok(EvalReport {
        state_dim: state.dim(),
        sum_bounds: sum_section,
        product_bounds: product_section,
        pairs_a,
        pairs_ab,
        pati,
        degenerate,
    })
}
