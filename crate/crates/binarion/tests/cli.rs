//! Black-box tests of the binary: exit codes, output shapes, and the
//! file-based subcommands run against real temp files.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_binarion"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn eval_prints_display_form() {
    let out = run(&["eval", "(2I+1E)^2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "5I + 4E\n");
}

#[test]
fn eval_honors_the_signature_flag() {
    let out = run(&["eval", "--eps", "-1", "(0I+1E)^2"]);
    assert_eq!(stdout(&out), "-1I + 0E\n");
    let out = run(&["eval", "--eps", "0", "(0I+1E)^2"]);
    assert_eq!(stdout(&out), "0I + 0E\n");
}

#[test]
fn eval_emits_json_on_request() {
    let out = run(&["eval", "--json", "2I+3E"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["x"], 2.0);
    assert_eq!(v["y"], 3.0);
    assert_eq!(v["eps"], 1);
}

#[test]
fn parse_errors_exit_2_domain_errors_exit_3() {
    let out = run(&["eval", "2I +"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("expected an expression"));

    let out = run(&["eval", "ln(0I+2E)"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("principal domain"));

    let out = run(&["eval", "inv(1I+1E)"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_flags_and_bad_eps_exit_2() {
    let out = run(&["eval", "--no-such-flag", "2I"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["eval", "--eps", "2", "2I"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_files_exit_4() {
    let out = run(&["integrate", "no-such-contour.json", "conj"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["analyze-grid", "no-such-grid.json"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["decompose", "no-such-signal.json"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn malformed_file_content_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"closed\": true}").unwrap();
    let out = run(&["integrate", path.to_str().unwrap(), "conj"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed"));
}

#[test]
fn classify_reports_region_and_partner() {
    let out = run(&["classify", "1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("region: null_cone"));
    assert!(text.contains("partner: 1I - 1E"));

    let out = run(&["classify", "--", "3", "-0.5"]);
    let text = stdout(&out);
    assert!(text.contains("region: exp_cone"));
    assert!(text.contains("invertible"));

    // classification is a split-signature concept
    let out = run(&["classify", "--eps", "-1", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn integrate_circle_against_conj() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("circle.json");
    std::fs::write(
        &path,
        r#"{"closed":true,"segments":[{"type":"circle","cx":0.0,"cy":0.0,"r":2.0}]}"#,
    )
    .unwrap();
    let out = run(&["integrate", path.to_str().unwrap(), "conj"]);
    assert_eq!(out.status.code(), Some(0));
    // E-component of the loop integral of conj is 2 pi R^2
    let text = stdout(&out);
    assert!(text.starts_with("integral: "), "got {text}");
    assert!(text.contains("25.1327412287E"), "got {text}");
}

#[test]
fn integrate_accepts_constant_expression_kernels() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("line.json");
    std::fs::write(
        &path,
        r#"{"closed":false,"segments":[{"type":"line","from":[0.0,0.0],"to":[1.0,0.0]}]}"#,
    )
    .unwrap();
    // integrating the constant 2I along a unit x-step gives 2I
    let out = run(&["integrate", path.to_str().unwrap(), "2I"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "integral: 2I + 0E\n");

    let out = run(&["integrate", path.to_str().unwrap(), "no_such_kernel"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("neither a known name"));
}

#[test]
fn integrate_probe_reports_divergence_on_the_cone() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("circle.json");
    std::fs::write(
        &path,
        r#"{"closed":true,"segments":[{"type":"circle","cx":0.0,"cy":0.0,"r":1.0}]}"#,
    )
    .unwrap();
    let out = run(&["integrate", path.to_str().unwrap(), "identity", "--l0", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("outcome: divergent"));
    assert!(text.contains("clearance: 0e0"));

    let out = run(&[
        "integrate",
        path.to_str().unwrap(),
        "identity",
        "--l0",
        "not-a-point",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_grid_writes_residual_csv() {
    let dir = tempfile::tempdir().unwrap();
    let grid_path = dir.path().join("grid.json");
    let n = 21;
    let mut u = Vec::new();
    let mut v = Vec::new();
    for iy in 0..n {
        for ix in 0..n {
            let x = -1.0 + 2.0 * ix as f64 / (n - 1) as f64;
            let y = -1.0 + 2.0 * iy as f64 / (n - 1) as f64;
            u.push(x * x + y * y);
            v.push(2.0 * x * y);
        }
    }
    let grid = serde_json::json!({
        "xmin": -1.0, "xmax": 1.0, "ymin": -1.0, "ymax": 1.0,
        "nx": n, "ny": n, "u": u, "v": v,
    });
    std::fs::write(&grid_path, grid.to_string()).unwrap();

    let csv_path = dir.path().join("residuals.csv");
    let out = run(&[
        "analyze-grid",
        grid_path.to_str().unwrap(),
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("split-cr: PASS"));
    assert!(text.contains("complex-cr: FAIL"));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,y,r1,r2"));
    // interior of a 21x21 grid
    assert_eq!(lines.count(), 19 * 19);
}

#[test]
fn decompose_writes_parts_next_to_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let sig_path = dir.path().join("wave.json");
    let n = 8;
    let samples: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
    let doc = serde_json::json!({ "kind": "periodic2", "n": n, "samples": samples });
    std::fs::write(&sig_path, doc.to_string()).unwrap();

    let out = run_in(dir.path(), &["decompose", "wave.json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let reassembly: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("reassembly residual: "))
        .expect("residual line")
        .parse()
        .unwrap();
    assert!(reassembly <= 1e-15, "got {text}");
    for part in ["wave.p1.json", "wave.ap1.json"] {
        let written: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join(part)).unwrap())
                .unwrap();
        assert_eq!(written["kind"], "periodic2");
        assert_eq!(written["n"], 8);
    }
}

#[test]
fn decompose_reads_csv_signals() {
    let dir = tempfile::tempdir().unwrap();
    let sig_path = dir.path().join("ramp.csv");
    let mut csv = String::from("t,value\n");
    for i in 0..4 {
        csv.push_str(&format!("{},{}\n", 2.0 * i as f64 / 4.0, i as f64));
    }
    std::fs::write(&sig_path, csv).unwrap();
    let out = run_in(dir.path(), &["decompose", "ramp.csv"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(dir.path().join("ramp.p1.json").exists());
    assert!(dir.path().join("ramp.ap1.json").exists());
}

#[test]
fn decompose_rejects_antiperiodic_signals_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let sig_path = dir.path().join("anti.json");
    let doc = serde_json::json!({
        "kind": "antiperiodic2", "n": 4, "samples": [1.0, 2.0, 3.0, 4.0]
    });
    std::fs::write(&sig_path, doc.to_string()).unwrap();
    let out = run(&["decompose", sig_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_handles_the_null_cone() {
    let out = run(&["compare", "2", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("undefined (null cone)"));
    assert!(text.contains("y = x and y = -x"));

    let out = run(&["compare", "1", "3"]);
    let text = stdout(&out);
    assert!(text.contains("undefined (negative determinant)"));
}

#[test]
fn plot_data_level_curves_stay_on_level() {
    let out = run(&["plot-data", "level-curves", "--c", "1.5", "--samples", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 4);
        let x: f64 = cols[2].parse().unwrap();
        let y: f64 = cols[3].parse().unwrap();
        assert!((x * x - y * y - 2.25).abs() < 1e-9, "off level: {line}");
        rows += 1;
    }
    assert_eq!(rows, 2 * 9);

    let out = run(&["plot-data", "level-curves", "--c", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plot_data_complex_levels_are_circles() {
    let out = run(&["plot-data", "--eps", "-1", "level-curves", "--c", "2", "--samples", "5"]);
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let x: f64 = cols[2].parse().unwrap();
        let y: f64 = cols[3].parse().unwrap();
        assert!((x * x + y * y - 4.0).abs() < 1e-9, "off circle: {line}");
    }
}

#[test]
fn out_flag_redirects_primary_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("value.txt");
    let out = run(&["eval", "2I+3E", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "2I + 3E\n");
}
