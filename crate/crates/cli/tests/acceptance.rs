//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`). Closed-form curves act as
//! independent oracles for the figure data; the characteristic-polynomial
//! and Gram-spectrum oracles below are implemented here, independent of the
//! library's solver internals.

use std::fs;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use uncrel::{
    eigh, random_observable, run_suite, singular_values, BlochVector, CMatrix, Complex64,
    Observable, QuantumState, SplitMix64, TrialConfig,
};
use uncrel_cli::{figure_table, FigureId};

fn criterion(number: usize, name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("acceptance {number} ({name}): PASS"),
        Err(cause) => {
            println!("acceptance {number} ({name}): FAIL");
            resume_unwind(cause);
        }
    }
}

fn col(table: &uncrel_cli::SweepTable, name: &str) -> Vec<f64> {
    table
        .column(name)
        .unwrap_or_else(|| panic!("missing column {name}"))
        .into_iter()
        .map(|v| v.unwrap_or_else(|| panic!("degenerate cell in column {name}")))
        .collect()
}

fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} (tol {tol})"
    );
}

/// Grid row whose θ should equal `target` (panics if the grid disagrees).
fn row_at(thetas: &[f64], target: f64) -> usize {
    let idx = thetas
        .iter()
        .position(|&t| (t - target).abs() < 1e-12)
        .unwrap_or_else(|| panic!("θ = {target} not on grid"));
    idx
}

#[test]
fn acceptance_1_fig1_reproduction() {
    criterion(1, "fig1 reproduction", || {
        let started = Instant::now();
        let table = figure_table(FigureId::Fig1, 181).unwrap();
        let thetas = col(&table, "theta");
        let thm1 = col(&table, "thm1");
        let maccone = col(&table, "maccone");
        assert_eq!(thetas.len(), 181);
        for i in 0..181 {
            let theta = thetas[i];
            let lhs_formula = 2.0 - 0.75 * theta.cos() * theta.cos();
            let lambda = 1.0
                + 3f64.sqrt() * theta.sin().abs() / (1.0 + 3.0 * theta.sin() * theta.sin()).sqrt();
            assert_close(
                thm1[i],
                lhs_formula / lambda,
                1e-9,
                &format!("thm1 at θ={theta}"),
            );
            assert!(
                thm1[i] >= maccone[i],
                "thm1 {} < maccone {} at θ={theta}",
                thm1[i],
                maccone[i]
            );
            // Δσ1² directly from the state.
            let r = 3f64.sqrt() / 2.0;
            let state =
                QuantumState::from_bloch(BlochVector::new(r * theta.cos(), r * theta.sin(), 0.0))
                    .unwrap();
            let var_x = state.variance(&Observable::sigma_x()).unwrap();
            assert_close(
                var_x,
                1.0 - 0.75 * theta.cos() * theta.cos(),
                1e-9,
                &format!("Δσ1² at θ={theta}"),
            );
        }
        let elapsed = started.elapsed();
        assert!(elapsed.as_secs_f64() < 1.0, "fig1 took {elapsed:?}");
    });
}

#[test]
fn acceptance_2_fig2_reproduction() {
    criterion(2, "fig2 reproduction", || {
        let table = figure_table(FigureId::Fig2, 181).unwrap();
        let thetas = col(&table, "theta");
        let lhs = col(&table, "lhs");
        let thm1 = col(&table, "thm1");
        let chen_fei = col(&table, "chen_fei");
        let lambda_max = col(&table, "lambda_max");
        for i in 0..181 {
            let theta = thetas[i];
            assert_close(
                lhs[i],
                3.0 - theta.cos() * theta.cos(),
                1e-9,
                &format!("lhs at θ={theta}"),
            );
            assert_close(
                lambda_max[i],
                1.0 + theta.cos().abs(),
                1e-9,
                &format!("λ_max at θ={theta}"),
            );
        }
        let mid = row_at(&thetas, std::f64::consts::FRAC_PI_2);
        assert_close(thm1[mid], 3.0, 1e-9, "thm1 at π/2 (tight)");
        assert_close(lhs[mid], 3.0, 1e-9, "lhs at π/2");
        assert_close(chen_fei[mid], 1.5, 1e-9, "chen_fei at π/2");
        let third = row_at(&thetas, std::f64::consts::PI / 3.0);
        assert_close(thm1[third], 1.833_333_3, 1e-6, "thm1 at π/3");
        assert_close(chen_fei[third], 1.379_171_0, 1e-6, "chen_fei at π/3");
        assert!(thm1[third] > chen_fei[third]);
    });
}

#[test]
fn acceptance_3_fig3_reproduction() {
    criterion(3, "fig3 reproduction", || {
        let table = figure_table(FigureId::Fig3, 181).unwrap();
        let thetas = col(&table, "theta");
        let lhs = col(&table, "lhs");
        let thm2 = col(&table, "thm2");
        let cor2 = col(&table, "cor2");
        let c22 = col(&table, "c22");
        for i in 0..181 {
            assert_close(c22[i], 0.5, 1e-12, &format!("c22 at θ={}", thetas[i]));
            assert!(
                cor2[i] >= c22[i],
                "cor2 {} < c22 {} at θ={}",
                cor2[i],
                c22[i],
                thetas[i]
            );
        }
        let start = row_at(&thetas, 0.0);
        assert_close(cor2[start], 1.0, 1e-9, "cor2 at θ=0");
        let quarter = row_at(&thetas, std::f64::consts::FRAC_PI_4);
        let tight = 7f64.sqrt() / 2.0;
        assert_close(cor2[quarter], 1.322_875_7, 1e-6, "cor2 at π/4");
        assert_close(thm2[quarter], tight, 1e-9, "thm2 at π/4 (tight)");
        assert_close(lhs[quarter], tight, 1e-9, "lhs at π/4");
    });
}

#[test]
fn acceptance_4_cor3_example() {
    criterion(4, "cor3 on the fig2 family", || {
        let table = figure_table(FigureId::Fig2, 181).unwrap();
        let thetas = col(&table, "theta");
        let sigma_max = col(&table, "sigma_max");
        let cor3 = col(&table, "cor3");
        let pairwise = col(&table, "pairwise_rur");
        for i in 0..181 {
            assert_close(
                sigma_max[i],
                1.0 + thetas[i].cos().abs(),
                1e-9,
                &format!("σ_max at θ={}", thetas[i]),
            );
        }
        let third = row_at(&thetas, std::f64::consts::PI / 3.0);
        assert_close(cor3[third], 2.0 / 3.0, 1e-9, "cor3 at π/3");
        assert_close(
            cor3[third],
            0.666_666_7,
            1e-6,
            "cor3 at π/3 (quoted digits)",
        );
        assert_close(pairwise[third], 0.5, 1e-9, "pairwise_rur at π/3");
        assert!(cor3[third] >= pairwise[third]);
    });
}

#[test]
fn acceptance_5_randomized_suite() {
    criterion(5, "randomized suite (1000 trials, seed 42)", || {
        let started = Instant::now();
        let cfg = TrialConfig::new(42, 1000, (2, 4), (2, 4)).unwrap();
        let report = run_suite(&cfg);
        let elapsed = started.elapsed();

        if let Some(failure) = report.failures().next() {
            panic!(
                "failed check {}: lhs={} rhs={} margin={} [{}]",
                failure.name, failure.lhs, failure.rhs, failure.margin, failure.context
            );
        }
        assert!(report.all_passed());
        let worst = report
            .checks
            .iter()
            .map(|c| c.margin)
            .fold(f64::INFINITY, f64::min);
        assert!(worst >= -1e-9, "worst margin {worst}");

        let names: std::collections::BTreeSet<&str> =
            report.checks.iter().map(|c| c.name).collect();
        for required in [
            "thm1",
            "cor1_chain",
            "chen_fei",
            "thm2",
            "thm2_vs_cor2",
            "c22",
            "cor3",
            "pati",
            "gram_psd",
            "gram_diag",
            "gram_lambda_max",
            "overlap_entries",
            "sur_identity",
            "sum_identity",
            "gram_route",
            "overlap_route",
        ] {
            assert!(names.contains(required), "missing check {required}");
        }
        assert!(elapsed.as_secs_f64() < 10.0, "suite took {elapsed:?}");
    });
}

/// Ascending roots of `det(H − λI)` for 2×2 Hermitian `H`.
fn charpoly_roots_2x2(h: &CMatrix) -> [f64; 2] {
    let a = h.get(0, 0).re;
    let d = h.get(1, 1).re;
    let mid = (a + d) / 2.0;
    let r = (((a - d) / 2.0).powi(2) + h.get(0, 1).norm_sqr()).sqrt();
    [mid - r, mid + r]
}

/// Ascending roots of the cubic characteristic polynomial of a 3×3
/// Hermitian matrix (trigonometric solution).
fn charpoly_roots_3x3(h: &CMatrix) -> [f64; 3] {
    let p1 = h.get(0, 1).norm_sqr() + h.get(0, 2).norm_sqr() + h.get(1, 2).norm_sqr();
    let q = (h.get(0, 0).re + h.get(1, 1).re + h.get(2, 2).re) / 3.0;
    let p2 = (h.get(0, 0).re - q).powi(2)
        + (h.get(1, 1).re - q).powi(2)
        + (h.get(2, 2).re - q).powi(2)
        + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return [q, q, q];
    }
    let b = |i: usize, j: usize| -> Complex64 {
        let shift = if i == j { q } else { 0.0 };
        (h.get(i, j) - Complex64::new(shift, 0.0)) / p
    };
    let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (det.re / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut out = [e1, e2, e3];
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

#[test]
fn acceptance_6_linalg_oracles() {
    criterion(6, "linear-algebra oracles", || {
        let mut rng = SplitMix64::new(0xACCE);
        for case in 0..200 {
            let h2 = random_observable(2, "H", &mut rng).matrix().clone();
            let got = eigh(&h2).unwrap();
            for (g, w) in got.eigenvalues().iter().zip(charpoly_roots_2x2(&h2)) {
                assert_close(*g, w, 1e-9, &format!("2x2 case {case}"));
            }
            let h3 = random_observable(3, "H", &mut rng).matrix().clone();
            let got = eigh(&h3).unwrap();
            for (g, w) in got.eigenvalues().iter().zip(charpoly_roots_3x3(&h3)) {
                assert_close(*g, w, 1e-9, &format!("3x3 case {case}"));
            }
        }
        for case in 0..200 {
            let rows = rng.next_range(1, 8);
            let cols = rng.next_range(1, 8);
            let entries = (0..rows * cols)
                .map(|_| rng.next_complex_gaussian())
                .collect();
            let a = CMatrix::new(rows, cols, entries).unwrap();
            let sv = singular_values(&a).unwrap();
            // Oracle: √eigenvalues of A†A, descending, top min(rows, cols).
            let eig = eigh(&(&a.adjoint() * &a)).unwrap();
            let mut expected: Vec<f64> = eig
                .eigenvalues()
                .iter()
                .map(|&l| l.max(0.0).sqrt())
                .collect();
            expected.reverse();
            expected.truncate(rows.min(cols));
            assert_eq!(sv.len(), expected.len());
            for (g, w) in sv.iter().zip(expected.iter()) {
                assert_close(*g, *w, 1e-10, &format!("singular values case {case}"));
            }
        }
    });
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("uncrel_accept_{}_{tag}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_binary(args: &[&str]) {
    let output = Command::new(env!("CARGO_BIN_EXE_uncrel"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        output.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&output.stderr)
    );
}

#[test]
fn acceptance_7_determinism() {
    criterion(7, "byte-identical outputs", || {
        let dir = scratch_dir("determinism");
        let verify_a = dir.join("verify_a.json");
        let verify_b = dir.join("verify_b.json");
        for out in [&verify_a, &verify_b] {
            run_binary(&[
                "verify",
                "--trials",
                "200",
                "--seed",
                "42",
                "--dim-min",
                "2",
                "--dim-max",
                "4",
                "--out",
                out.to_str().unwrap(),
            ]);
        }
        assert_eq!(
            fs::read(&verify_a).unwrap(),
            fs::read(&verify_b).unwrap(),
            "verify outputs differ"
        );

        for id in ["fig1", "fig2", "fig3"] {
            let a = dir.join(format!("{id}_a.csv"));
            let b = dir.join(format!("{id}_b.csv"));
            for out in [&a, &b] {
                run_binary(&["figure", "--id", id, "--out", out.to_str().unwrap()]);
            }
            assert_eq!(
                fs::read(&a).unwrap(),
                fs::read(&b).unwrap(),
                "{id} outputs differ"
            );
        }
    });
}
