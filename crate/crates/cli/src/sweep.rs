//! Parameterized Bloch sweeps and the built-in figure families.
//!
//! A sweep walks a uniform θ grid (inclusive of both endpoints), evaluates
//! the bound report at every point and emits one CSV row per point. Sum
//! families use the columns `theta, lhs, thm1, maccone|chen_fei, cor3,
//! pairwise_rur, lambda_max, sigma_max` (the fourth column depends on the
//! set size); the product family uses `theta, lhs, thm2, cor2, c22,
//! sigma_max`. Numbers are printed with 15 significant digits; a degenerate
//! bound leaves its cell empty.

use clap::ValueEnum;
use serde::Deserialize;

use uncrel::{product_report, sum_report, BlochVector, Observable, QuantumState};

use crate::error::CliError;
use crate::scenario::{observable_from_spec, ObservableSpec};

/// Built-in figure families.
///
/// * `fig1` — radius √3/2 circle in the xy-plane against {σ1, σ3};
/// * `fig2` — the x-axis diameter r = (cosθ, 0, 0) against {σ1, σ2, σ3};
/// * `fig3` — radius 1/2 circle in the xy-plane, A = {σ3} vs B = {σ1, σ2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub family: FamilySpec,
    pub theta_start: f64,
    pub theta_end: f64,
    pub points: usize,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySpec {
    Fig1,
    Fig2,
    Fig3,
    BlochCircle {
        radius: f64,
        plane: Plane,
        observables_a: Vec<ObservableSpec>,
        #[serde(default)]
        observables_b: Option<Vec<ObservableSpec>>,
    },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    Xy,
    Yz,
    Zx,
}

/// State family over θ: a circle of given radius in a coordinate plane, or
/// the x-axis diameter r = (cosθ, 0, 0) used by `fig2`.
#[derive(Debug, Clone, Copy)]
enum StateFamily {
    Circle { radius: f64, plane: Plane },
    XAxisDiameter,
}

impl StateFamily {
    fn state_at(&self, theta: f64) -> Result<QuantumState, CliError> {
        let r = match self {
            StateFamily::XAxisDiameter => BlochVector::new(theta.cos(), 0.0, 0.0),
            StateFamily::Circle { radius, plane } => {
                let (c, s) = (radius * theta.cos(), radius * theta.sin());
                match plane {
                    Plane::Xy => BlochVector::new(c, s, 0.0),
                    Plane::Yz => BlochVector::new(0.0, c, s),
                    Plane::Zx => BlochVector::new(s, 0.0, c),
                }
            }
        };
        QuantumState::from_bloch(r)
            .map_err(|e| CliError::validation_from_quantum(&e, "family state"))
    }
}

enum FamilyKind {
    Sum {
        observables: Vec<Observable>,
    },
    Product {
        observables_a: Vec<Observable>,
        observables_b: Vec<Observable>,
    },
}

struct ResolvedSweep {
    states: StateFamily,
    kind: FamilyKind,
    thetas: Vec<f64>,
}

/// Column-labeled numeric table; `None` cells mark degenerate bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.columns.iter().position(|&c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// CSV with a header row, LF line endings and 15 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|cell| cell.map_or_else(String::new, format_sig15))
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// 15 significant digits in scientific notation, stable across runs.
fn format_sig15(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0.0
    format!("{x:.14e}")
}

fn uniform_grid(start: f64, end: f64, points: usize) -> Vec<f64> {
    let step = (end - start) / (points - 1) as f64;
    (0..points)
        .map(|k| {
            if k == points - 1 {
                end
            } else {
                start + k as f64 * step
            }
        })
        .collect()
}

fn pauli_set(names: &[&str]) -> Vec<Observable> {
    names
        .iter()
        .map(|&n| match n {
            "sigma_x" => Observable::sigma_x(),
            "sigma_y" => Observable::sigma_y(),
            "sigma_z" => Observable::sigma_z(),
            _ => unreachable!("fixed pauli name"),
        })
        .collect()
}

impl SweepFile {
    pub fn for_figure(id: FigureId, points: usize) -> Self {
        let family = match id {
            FigureId::Fig1 => FamilySpec::Fig1,
            FigureId::Fig2 => FamilySpec::Fig2,
            FigureId::Fig3 => FamilySpec::Fig3,
        };
        SweepFile {
            family,
            theta_start: 0.0,
            theta_end: std::f64::consts::PI,
            points,
        }
    }

    fn resolve(&self) -> Result<ResolvedSweep, CliError> {
        if self.points < 2 {
            return Err(CliError::Validation("points must be at least 2".into()));
        }
        if !self.theta_start.is_finite() || !self.theta_end.is_finite() {
            return Err(CliError::Validation("theta range must be finite".into()));
        }
        if self.theta_end <= self.theta_start {
            return Err(CliError::Validation(
                "theta_end must be greater than theta_start (rows are ordered by ascending θ)"
                    .into(),
            ));
        }
        let thetas = uniform_grid(self.theta_start, self.theta_end, self.points);
        let (states, kind) = match &self.family {
            FamilySpec::Fig1 => (
                StateFamily::Circle {
                    radius: 3f64.sqrt() / 2.0,
                    plane: Plane::Xy,
                },
                FamilyKind::Sum {
                    observables: pauli_set(&["sigma_x", "sigma_z"]),
                },
            ),
            FamilySpec::Fig2 => (
                StateFamily::XAxisDiameter,
                FamilyKind::Sum {
                    observables: pauli_set(&["sigma_x", "sigma_y", "sigma_z"]),
                },
            ),
            FamilySpec::Fig3 => (
                StateFamily::Circle {
                    radius: 0.5,
                    plane: Plane::Xy,
                },
                FamilyKind::Product {
                    observables_a: pauli_set(&["sigma_z"]),
                    observables_b: pauli_set(&["sigma_x", "sigma_y"]),
                },
            ),
            FamilySpec::BlochCircle {
                radius,
                plane,
                observables_a,
                observables_b,
            } => {
                if !(0.0..=1.0).contains(radius) {
                    return Err(CliError::Validation(format!(
                        "bloch_circle radius {radius} must lie in [0, 1]"
                    )));
                }
                if observables_a.is_empty() {
                    return Err(CliError::Validation(
                        "bloch_circle observables_a must not be empty".into(),
                    ));
                }
                let obs_a = observables_a
                    .iter()
                    .enumerate()
                    .map(|(i, spec)| {
                        observable_from_spec(spec, 2, &format!("A{}", i + 1), "observables_a")
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let kind = match observables_b {
                    None => FamilyKind::Sum { observables: obs_a },
                    Some(specs) => {
                        if specs.is_empty() {
                            return Err(CliError::Validation(
                                "bloch_circle observables_b must not be empty when present".into(),
                            ));
                        }
                        let obs_b = specs
                            .iter()
                            .enumerate()
                            .map(|(i, spec)| {
                                observable_from_spec(
                                    spec,
                                    2,
                                    &format!("B{}", i + 1),
                                    "observables_b",
                                )
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        FamilyKind::Product {
                            observables_a: obs_a,
                            observables_b: obs_b,
                        }
                    }
                };
                (
                    StateFamily::Circle {
                        radius: *radius,
                        plane: *plane,
                    },
                    kind,
                )
            }
        };
        Ok(ResolvedSweep {
            states,
            kind,
            thetas,
        })
    }

    /// Evaluate the sweep on its θ grid, ascending.
    pub fn table(&self) -> Result<SweepTable, CliError> {
        let resolved = self.resolve()?;
        match &resolved.kind {
            FamilyKind::Sum { observables } => {
                let n = observables.len();
                let mut columns = vec!["theta", "lhs", "thm1"];
                if n == 2 {
                    columns.push("maccone");
                } else if n >= 3 {
                    columns.push("chen_fei");
                }
                columns.extend(["cor3", "pairwise_rur", "lambda_max", "sigma_max"]);
                let mut rows = Vec::with_capacity(resolved.thetas.len());
                for &theta in &resolved.thetas {
                    let state = resolved.states.state_at(theta)?;
                    let report = sum_report(&state, observables)
                        .map_err(|e| CliError::validation_from_bounds(&e, "sweep"))?;
                    let mut row = vec![Some(theta), Some(report.lhs), report.thm1];
                    if n == 2 {
                        row.push(report.maccone);
                    } else if n >= 3 {
                        row.push(report.chen_fei);
                    }
                    row.extend([
                        report.cor3,
                        Some(report.pairwise_rur),
                        Some(report.lambda_max),
                        Some(report.sigma_max),
                    ]);
                    rows.push(row);
                }
                Ok(SweepTable { columns, rows })
            }
            FamilyKind::Product {
                observables_a,
                observables_b,
            } => {
                let columns = vec!["theta", "lhs", "thm2", "cor2", "c22", "sigma_max"];
                let mut rows = Vec::with_capacity(resolved.thetas.len());
                for &theta in &resolved.thetas {
                    let state = resolved.states.state_at(theta)?;
                    let report = product_report(&state, observables_a, observables_b)
                        .map_err(|e| CliError::validation_from_bounds(&e, "sweep"))?;
                    rows.push(vec![
                        Some(theta),
                        Some(report.lhs),
                        report.thm2,
                        report.cor2,
                        Some(report.c22),
                        Some(report.sigma_max),
                    ]);
                }
                Ok(SweepTable { columns, rows })
            }
        }
    }
}
