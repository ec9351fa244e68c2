//! End-to-end runs of the command grammar through [`run_with`].

use serde_json::Value;
use xedp_core::models::{tabulate, Quantity, SpectralModel};

use crate::run_with;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn xedp_env(args: &[&str], max_subdiv: Option<&str>) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("xedp").chain(args.iter().copied());
    let code = run_with(argv, max_subdiv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn xedp(args: &[&str]) -> Output {
    xedp_env(args, None)
}

fn stdout(o: &Output) -> String {
    o.stdout.clone()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
fn density_table_has_seventeen_rows() {
    let o = xedp(&["tabulate", "--model", "hermite12", "--quantity", "density", "--n", "0", "--range", "-4:4:0.5"]);
    assert_eq!(o.code, (0));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "y,value");
    assert_eq!(lines.len(), 18);
    assert_eq!(lines[1].split(',').next(), Some("-4"));
    assert_eq!(lines[17].split(',').next(), Some("4"));
}

#[test]
fn csv_round_trips_at_twelve_digits() {
    let m = SpectralModel::from_id("laguerre1").unwrap();
    let o = xedp(&["tabulate", "--model", "laguerre1", "--quantity", "wavefunction", "--n", "2", "--range", "-30:10:0.25"]);
    assert_eq!(o.code, (0));
    let want = tabulate(&m, Quantity::Wavefunction, 2, (-30.0, 10.0, 0.25)).unwrap();
    for (line, (y, v)) in stdout(&o).lines().skip(1).zip(want.abscissae.iter().zip(&want.values)) {
        let mut it = line.split(',').map(|s| s.parse::<f64>().unwrap());
        let (py, pv) = (it.next().unwrap(), it.next().unwrap());
        assert!((py - y).abs() <= 5e-12 * y.abs().max(1e-300));
        assert!((pv - v).abs() <= 5e-12 * v.abs(), "{line}");
    }
}

#[test]
fn multi_index_tables_are_wide() {
    let o = xedp(&["tabulate", "--model", "hermite12", "--quantity", "potential", "--n", "0,3,4", "--range", "-2:2:1"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("y,v_n0,v_n3,v_n4"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn dirac_q_table_is_finite() {
    let o = xedp(&["tabulate", "--model", "dirac", "--quantity", "q", "--n", "1", "--range", "0.2:8:0.1", "--mass", "1"]);
    assert_eq!(o.code, (0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 80);
    for line in text.lines().skip(1) {
        assert!(line.split(',').all(|f| f.parse::<f64>().unwrap().is_finite()));
    }
}

#[test]
fn excluded_index_is_invalid_input() {
    let o = xedp(&["tabulate", "--model", "hermite12", "--quantity", "density", "--n", "1"]);
    assert_eq!(o.code, (3));
    assert!(o.stderr.contains("index 1 excluded by λ={1,2}"));
}

#[test]
fn invalid_inputs_exit_three() {
    for args in [
        vec!["norm", "--model", "nope"],
        vec!["tabulate", "--model", "hermite12", "--quantity", "density", "--range", "1:2"],
        vec!["tabulate", "--model", "hermite12", "--quantity", "q"],
        vec!["tabulate", "--model", "hermite12", "--quantity", "density", "--mass", "2"],
        vec!["tabulate", "--model", "jacobi111", "--quantity", "density", "--n", "2", "--range", "-1:1:0.5"],
        vec!["norm", "--model", "hermite12", "--tol", "-1"],
        vec!["verify", "--only", "nothing"],
        vec!["frobnicate"],
        vec!["norm", "--model", "hermite12", "--n", "0,x"],
    ] {
        assert_eq!(xedp(&args).code, (3), "{args:?}");
    }
}

#[test]
fn hermite_ground_norm_report() {
    let o = xedp(&["norm", "--model", "hermite12", "--n", "0"]);
    assert_eq!(o.code, (0));
    let r = &json(&o)["results"][0];
    let want = 16.0 * std::f64::consts::PI.sqrt() / 5.0;
    assert!((r["norm"].as_f64().unwrap() / want - 1.0).abs() < 1e-8);
    for key in ["model", "n", "energy", "norm", "error_estimate", "method", "evaluations"] {
        assert!(!r[key].is_null(), "{key}");
    }
    assert_eq!(r["method"], "quadrature");
    assert_eq!(r["energy"].as_f64(), Some(-3.0));
}

#[test]
fn odd_jacobi_norm_is_divergent() {
    let o = xedp(&["norm", "--model", "jacobi111", "--n", "2,3"]);
    assert_eq!(o.code, (2));
    let v = json(&o);
    assert_eq!(v["results"][0]["status"], "ok");
    assert_eq!(v["results"][1]["status"], "divergent");
}

#[test]
fn laguerre_norm_matches_printed_value() {
    let o = xedp(&["norm", "--model", "laguerre1", "--n", "2", "--format", "csv"]);
    assert_eq!(o.code, (0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert!((row[3].parse::<f64>().unwrap() - 57.93103).abs() < 1e-4);
}

#[test]
fn wronskian_method_for_hermite() {
    let o = xedp(&["norm", "--model", "hermite12", "--n", "0", "--method", "wronskian_limit"]);
    assert_eq!(o.code, (0));
    let r = &json(&o)["results"][0];
    assert_eq!(r["method"], "wronskian_limit");
    assert!((r["norm"].as_f64().unwrap() - 5.671852).abs() < 1e-3);
}

#[test]
fn subdivision_budget_from_environment() {
    let o = xedp_env(&["norm", "--model", "hermite12", "--n", "4"], Some("2"));
    assert_eq!(o.code, (2));
    assert_eq!(json(&o)["results"][0]["status"], "divergent");
}

#[test]
fn ortho_matrix_report() {
    let o = xedp(&["ortho", "--model", "hermite12", "--n", "0,3,4"]);
    assert_eq!(o.code, (0));
    let r = &json(&o)["results"][0];
    assert!(r["max_offdiag_ratio"].as_f64().unwrap() < 1e-6);
    assert_eq!(r["matrix"].as_array().unwrap().len(), 3);
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = std::env::temp_dir().join(format!("xedp-cli-{}", std::process::id()));
    assert_eq!(xedp_env(&["norm", "--model", "hermite12"], Some("zero")).code, 3);
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let p = path.to_str().unwrap();
    let args = ["tabulate", "--model", "jacobi111", "--quantity", "potential", "--n", "2,4", "--out", p];
    assert_eq!(xedp(&args).code, (0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(xedp(&args).code, (0));
    assert_eq!(std::fs::read(&path).unwrap(), first);
    assert_eq!(first.iter().filter(|&&b| b == b'\n').count(), 402);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_subsets_and_failure_path() {
    let o = xedp(&["verify", "--only", "ode-residuals"]);
    assert_eq!(o.code, (0));
    assert!(stdout(&o).contains("ode-residuals            PASS"));
    let o = xedp(&["verify", "--only", "potential-routes,spectra", "--tol", "1e-15"]);
    assert_eq!(o.code, (1));
    assert!(stdout(&o).contains("FAIL"));
}
