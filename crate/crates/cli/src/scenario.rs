//! Scenario files: JSON with complex numbers as `[re, im]` pairs and
//! matrices as row-major nested arrays. Observables are either such a
//! matrix or, at dimension 2, one of the named Paulis `sigma_x`/`sigma_y`/
//! `sigma_z` (aliases `sigma1`/`sigma2`/`sigma3`).

use serde::Deserialize;

use uncrel::{BlochVector, CMatrix, Complex64, Observable, QuantumState};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub state: StateSpec,
    pub observables_a: Vec<ObservableSpec>,
    #[serde(default)]
    pub observables_b: Option<Vec<ObservableSpec>>,
    #[serde(default)]
    pub pati_c: Option<ObservableSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateSpec {
    Bloch([f64; 3]),
    Matrix(Vec<Vec<[f64; 2]>>),
    Pure(Vec<[f64; 2]>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ObservableSpec {
    Named(String),
    Matrix(Vec<Vec<[f64; 2]>>),
}

/// Fully validated scenario, ready for evaluation.
#[derive(Debug)]
pub struct Scenario {
    pub state: QuantumState,
    pub observables_a: Vec<Observable>,
    pub observables_b: Option<Vec<Observable>>,
    pub pati_c: Option<Observable>,
}

pub(crate) fn matrix_from_nested(rows: &[Vec<[f64; 2]>], field: &str) -> Result<CMatrix, CliError> {
    let entries: Vec<Complex64> = rows
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(CliError::Validation(format!(
            "{field}: matrix rows have unequal lengths"
        )));
    }
    CMatrix::new(r, c, entries).map_err(|e| CliError::Validation(format!("{field}: {e}")))
}

fn named_observable(name: &str, dim: usize, field: &str) -> Result<Observable, CliError> {
    let obs = match name {
        "sigma_x" | "sigma1" => Observable::sigma_x(),
        "sigma_y" | "sigma2" => Observable::sigma_y(),
        "sigma_z" | "sigma3" => Observable::sigma_z(),
        other => {
            return Err(CliError::Validation(format!(
                "{field}: unknown named observable {other:?} (expected sigma_x/sigma_y/sigma_z or sigma1/sigma2/sigma3)"
            )))
        }
    };
    if dim != 2 {
        return Err(CliError::Validation(format!(
            "{field}: named Pauli {name:?} requires a 2-dimensional state, got dimension {dim}"
        )));
    }
    Ok(obs)
}

pub(crate) fn observable_from_spec(
    spec: &ObservableSpec,
    dim: usize,
    fallback_label: &str,
    field: &str,
) -> Result<Observable, CliError> {
    let obs = match spec {
        ObservableSpec::Named(name) => named_observable(name, dim, field)?,
        ObservableSpec::Matrix(rows) => {
            let m = matrix_from_nested(rows, field)?;
            Observable::new(fallback_label, m)
                .map_err(|e| CliError::validation_from_quantum(&e, field))?
        }
    };
    if obs.dim() != dim {
        return Err(CliError::Validation(format!(
            "{field}: observable dimension {} does not match state dimension {dim}",
            obs.dim()
        )));
    }
    Ok(obs)
}

fn state_from_spec(spec: &StateSpec) -> Result<QuantumState, CliError> {
    match spec {
        StateSpec::Bloch([x, y, z]) => QuantumState::from_bloch(BlochVector::new(*x, *y, *z))
            .map_err(|e| CliError::validation_from_quantum(&e, "state.bloch")),
        StateSpec::Matrix(rows) => {
            let m = matrix_from_nested(rows, "state.matrix")?;
            QuantumState::from_matrix(m)
                .map_err(|e| CliError::validation_from_quantum(&e, "state.matrix"))
        }
        StateSpec::Pure(coeffs) => {
            let psi: Vec<Complex64> = coeffs
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect();
            let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
            if psi.is_empty() || norm_sq <= 0.0 || !norm_sq.is_finite() {
                return Err(CliError::Validation(
                    "state.pure: vector must be nonzero and finite".into(),
                ));
            }
            let dim = psi.len();
            let mut entries = Vec::with_capacity(dim * dim);
            for i in 0..dim {
                for j in 0..dim {
                    entries.push(psi[i] * psi[j].conj() / norm_sq);
                }
            }
            let rho = CMatrix::new(dim, dim, entries)
                .map_err(|e| CliError::Validation(format!("state.pure: {e}")))?;
            QuantumState::from_matrix(rho)
                .map_err(|e| CliError::validation_from_quantum(&e, "state.pure"))
        }
    }
}

impl ScenarioFile {
    pub fn resolve(&self) -> Result<Scenario, CliError> {
        let state = state_from_spec(&self.state)?;
        let dim = state.dim();
        if self.observables_a.is_empty() {
            return Err(CliError::Validation(
                "observables_a must not be empty".into(),
            ));
        }
        let observables_a = self
            .observables_a
            .iter()
            .enumerate()
            .map(|(i, spec)| {
                observable_from_spec(spec, dim, &format!("A{}", i + 1), "observables_a")
            })
            .collect::<Result<Vec<_>, _>>()?;
        let observables_b = match &self.observables_b {
            None => None,
            Some(specs) => {
                if specs.is_empty() {
                    return Err(CliError::Validation(
                        "observables_b must not be empty when present".into(),
                    ));
                }
                Some(
                    specs
                        .iter()
                        .enumerate()
                        .map(|(i, spec)| {
                            observable_from_spec(spec, dim, &format!("B{}", i + 1), "observables_b")
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
        };
        let pati_c = match &self.pati_c {
            None => None,
            Some(spec) => {
                if observables_b.is_none() {
                    return Err(CliError::Validation(
                        "pati_c requires observables_b to be present".into(),
                    ));
                }
                Some(observable_from_spec(spec, dim, "C", "pati_c")?)
            }
        };
        Ok(Scenario {
            state,
            observables_a,
            observables_b,
            pati_c,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bloch_scenario_with_named_paulis() {
        let json = r#"{
            "state": {"bloch": [0.0, 0.8660254038, 0.0]},
            "observables_a": ["sigma_x", "sigma_z"]
        }"#;
        let file: ScenarioFile = serde_json::from_str(json).unwrap();
        let scenario = file.resolve().unwrap();
        assert_eq!(scenario.state.dim(), 2);
        assert_eq!(scenario.observables_a.len(), 2);
        assert_eq!(scenario.observables_a[0].label(), "sigma_x");
    }

    #[test]
    fn parses_matrix_observable() {
        let json = r#"{
            "state": {"bloch": [0.0, 0.0, 0.0]},
            "observables_a": [[[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]]
        }"#;
        let file: ScenarioFile = serde_json::from_str(json).unwrap();
        let scenario = file.resolve().unwrap();
        assert_eq!(scenario.observables_a[0].label(), "A1");
    }

    #[test]
    fn pure_state_is_normalized() {
        let json = r#"{
            "state": {"pure": [[2.0, 0.0], [0.0, 0.0]]},
            "observables_a": ["sigma_z"]
        }"#;
        let file: ScenarioFile = serde_json::from_str(json).unwrap();
        let scenario = file.resolve().unwrap();
        assert!((scenario.state.rho().get(0, 0).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_trace_not_one() {
        let json = r#"{
            "state": {"matrix": [[[0.6, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]},
            "observables_a": ["sigma_z"]
        }"#;
        let file: ScenarioFile = serde_json::from_str(json).unwrap();
        let err = file.resolve().unwrap_err();
        assert!(err.to_string().contains("TraceNotOne"), "{err}");
    }

    #[test]
    fn rejects_named_pauli_at_wrong_dim() {
        let json = r#"{
            "state": {"matrix": [
                [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0]],
                [[0.0, 0.0], [0.5, 0.0], [0.0, 0.0]],
                [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]
            ]},
            "observables_a": ["sigma_x"]
        }"#;
        let file: ScenarioFile = serde_json::from_str(json).unwrap();
        let err = file.resolve().unwrap_err();
        assert!(err.to_string().contains("2-dimensional"), "{err}");
    }

    #[test]
    fn rejects_ragged_matrix() {
        let json = r#"{
            "state": {"matrix": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0]]]},
            "observables_a": ["sigma_z"]
        }"#;
        let file: ScenarioFile = serde_json::from_str(json).unwrap();
        assert!(file.resolve().is_err());
    }

    #[test]
    fn rejects_pati_without_b() {
        let json = r#"{
            "state": {"bloch": [0.0, 0.0, 1.0]},
            "observables_a": ["sigma_x"],
            "pati_c": "sigma_z"
        }"#;
        let file: ScenarioFile = serde_json::from_str(json).unwrap();
        assert!(file.resolve().is_err());
    }
}
