use std::path::Path;
use std::process::Command;

use cvtele::states::wigner_resource;
use cvtele::{Complex64, ResourceKind, SqueezeParams};
use cvtele_cli::verify::{Status, Subjects};
use serde_json::Value;

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn cvtele(args: &[&str]) -> Run {
    cvtele_with(args, &Subjects::default())
}

fn cvtele_with(args: &[&str], subjects: &Subjects) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("cvtele").chain(args.iter().copied());
    let status = cvtele_cli::run_with(argv, subjects, &mut out, &mut err);
    Run {
        status,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

struct Csv {
    manifest: Value,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Self {
        let mut lines = text.lines();
        let manifest = serde_json::from_str(lines.next().unwrap().strip_prefix("# ").unwrap()).unwrap();
        let columns = lines.next().unwrap().split(',').map(str::to_owned).collect();
        let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
        Self { manifest, columns, rows }
    }

    fn column(&self, name: &str) -> Vec<f64> {
        let k = self.columns.iter().position(|c| c == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[k].parse().unwrap()).collect()
    }

    fn text(&self, name: &str) -> Vec<&str> {
        let k = self.columns.iter().position(|c| c == name).unwrap();
        self.rows.iter().map(|r| r[k].as_str()).collect()
    }
}

fn table(args: &[&str]) -> Csv {
    let run = cvtele(args);
    assert_eq!(run.status, 0, "{args:?}: {}", run.stderr);
    Csv::parse(&run.stdout)
}

fn min(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::INFINITY, f64::min)
}

#[test]
fn photon_number_table_has_one_row_per_n() {
    let csv = table(&["state", "pnd", "--kind", "tps", "--r", "1", "--nmax", "10"]);
    assert_eq!(csv.rows.len(), 11);
    assert_eq!(csv.manifest["rows"], 11);
    assert_eq!(csv.columns, ["n", "p"]);
}

#[test]
fn resource_wigner_slice_goes_negative() {
    let csv = table(&["state", "wigner", "--kind", "tps", "--r", "1", "--grid", "101", "--extent", "3"]);
    assert_eq!(csv.rows.len(), 101 * 101);
    assert!(min(&csv.column("w")) < 0.0);
}

#[test]
fn subtracted_resource_squeezes_more() {
    let csv = table(&["state", "squeezing", "--rmax", "2", "--steps", "50"]);
    assert_eq!(csv.rows.len(), 50);
    for (tmsv, tps) in csv.column("tmsv").iter().zip(csv.column("tps")) {
        assert!(tps <= *tmsv, "{tps} > {tmsv}");
    }
}

#[test]
fn cat_fidelity_routes_agree() {
    let csv = table(&["teleport", "fidelity", "--input", "cat", "--rho", "0.313", "--resource", "tps", "--r", "0.5"]);
    assert_eq!(csv.text("status"), ["agree"]);
    assert!(csv.column("deviation")[0] < 1e-6);
    assert_eq!(csv.text("closed_route"), ["gamma-operator"]);
}

#[test]
fn tabulated_squeezed_entry_is_flagged_not_fatal() {
    let csv = table(&["teleport", "fidelity", "--input", "squeezed", "--rho", "0.313", "--resource", "tps", "--r", "0.25,1"]);
    assert_eq!(csv.text("status"), ["expected-divergence", "expected-divergence"]);
}

#[test]
fn threshold_for_the_squeezed_vacuum_resource() {
    let csv = table(&["teleport", "threshold", "--input", "cat", "--rho", "0.313", "--resource", "tmsv"]);
    assert!((csv.column("r_star")[0] - 0.35).abs() < 0.02);
}

#[test]
fn teleported_cat_minimum() {
    let args = ["teleport", "wigner", "--resource", "tps", "--r", "0.5", "--input", "cat", "--rho", "0.313", "--grid", "121"];
    let csv = table(&args);
    assert_eq!(csv.rows.len(), 121 * 121);
    let reported = csv.manifest["summary"]["minimum"].as_f64().unwrap();
    assert!((reported + 0.20).abs() < 0.03, "{reported}");
    assert!(reported <= min(&csv.column("w")) + 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(cvtele(&["--help"]).status, 0);
    assert_eq!(cvtele(&["--version"]).status, 0);
    assert_eq!(cvtele(&["state", "nonsense"]).status, 2);
    assert_eq!(cvtele(&["state", "pnd", "--r", "abc"]).status, 2);
    let domain = cvtele(&["state", "pnd", "--kind", "tps", "--r", "0"]);
    assert_eq!(domain.status, 3);
    assert!(domain.stderr.contains("r > 0"), "{}", domain.stderr);
    assert_eq!(cvtele(&["teleport", "fidelity", "--input", "cat", "--rho=-1"]).status, 3);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let args = ["teleport", "fidelity", "--input", "coherent", "--resource", "tps", "--r", "0.25,0.5,1.5"];
    assert_eq!(cvtele(&args).stdout, cvtele(&args).stdout);
    let args = ["state", "wigner", "--kind", "tmsv", "--r", "0.7", "--grid", "31"];
    assert_eq!(cvtele(&args).stdout, cvtele(&args).stdout);
}

#[test]
fn output_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pnd.csv");
    let args = ["state", "pnd", "--kind", "tmsv", "--r", "0.5"];
    let stdout = cvtele(&args).stdout;
    let mut with_file = args.to_vec();
    let path_str = path.to_str().unwrap();
    with_file.extend(["--output", path_str]);
    let run = cvtele(&with_file);
    assert_eq!(run.status, 0);
    assert!(run.stdout.is_empty());
    let saved = std::fs::read_to_string(&path).unwrap();
    // Only the echoed command differs.
    assert_eq!(saved.lines().skip(1).collect::<Vec<_>>(), stdout.lines().skip(1).collect::<Vec<_>>());
}

fn repro(figure: &str, dir: &Path) -> Vec<String> {
    let run = cvtele(&["repro", figure, "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(run.status, 0, "{}", run.stderr);
    run.stdout.lines().map(str::to_owned).collect()
}

#[test]
fn repro_photon_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let files = repro("fig3", dir.path());
    assert_eq!(files.len(), 1);
    let csv = Csv::parse(&std::fs::read_to_string(&files[0]).unwrap());
    assert_eq!(csv.manifest["parameters"]["r"], 1.0);
    for name in ["tmsv", "tps"] {
        let total: f64 = csv.column(name).iter().sum();
        assert!(total > 0.9 && total <= 1.0 + 1e-12);
    }
}

#[test]
fn repro_w0_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let files = repro("fig13", dir.path());
    let csv = Csv::parse(&std::fs::read_to_string(&files[0]).unwrap());
    let summary = &csv.manifest["summary"];
    assert!((summary["r_star_tps"].as_f64().unwrap() - 0.20).abs() < 0.02);
    assert!((summary["r_star_tmsv"].as_f64().unwrap() - 0.35).abs() < 0.02);
    // Negativity at the origin sets in above the threshold.
    for name in ["w0_tmsv", "w0_tps"] {
        let w = csv.column(name);
        assert!(w[0] > 0.0 && *w.last().unwrap() < 0.0);
    }
}

#[test]
fn repro_fidelity_table() {
    let dir = tempfile::tempdir().unwrap();
    let files = repro("table1", dir.path());
    let csv = Csv::parse(&std::fs::read_to_string(&files[0]).unwrap());
    assert_eq!(csv.rows.len(), 3 * 2 * 4);
    let inputs = csv.text("input");
    let statuses = csv.text("status");
    let resources = csv.text("resource");
    for k in 0..csv.rows.len() {
        let flagged = inputs[k] == "squeezed-vacuum" && resources[k] == "tps";
        assert_eq!(statuses[k] == "expected-divergence", flagged, "row {k}");
    }
    for (k, d) in csv.column("deviation").iter().enumerate() {
        if statuses[k] == "agree" {
            assert!(*d < 1e-6);
        }
    }
}

#[test]
fn binary_honours_output_directory_variable() {
    let dir = tempfile::tempdir().unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_cvtele"))
        .args(["repro", "fig5"])
        .env("CVTELE_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(dir.path().join("fig5.csv").exists());
    let bad = Command::new(env!("CARGO_BIN_EXE_cvtele")).args(["repro", "fig99"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_fast_passes() {
    let run = cvtele(&["verify", "fast"]);
    assert_eq!(run.status, 0, "{}", run.stdout);
    let report: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(report["failed"], 0);
    assert_eq!(report["expected_divergences"], 2);
}

/// The subtracted-resource Wigner function with the sign of its `alpha beta`
/// cross term flipped.
fn flipped_cross_term(kind: ResourceKind, sq: SqueezeParams, alpha: Complex64, beta: Complex64) -> cvtele::Result<f64> {
    match kind {
        ResourceKind::Tmsv => wigner_resource(kind, sq, alpha, beta),
        ResourceKind::Tps => {
            let t = sq.tanh();
            let map = cvtele::BogoliubovMap::new(&sq);
            let (a, b) = map.apply(alpha, beta);
            let w = wigner_resource(kind, sq, alpha, beta)?;
            let gaussian = wigner_resource(ResourceKind::Tmsv, sq, alpha, beta)?;
            let cross = 8.0 * (a * b).re * t / (1.0 + t * t);
            Ok(w + 2.0 * cross * gaussian)
        }
    }
}

#[test]
fn verify_names_a_mutated_function() {
    let subjects = Subjects {
        wigner_resource: flipped_cross_term,
        ..Subjects::default()
    };
    let run = cvtele_with(&["verify", "fast"], &subjects);
    assert_eq!(run.status, 1);
    assert!(run.stderr.contains("verification failed"));
    let report: Value = serde_json::from_str(&run.stdout).unwrap();
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["states.wigner_resource"]);
    let report = cvtele_cli::verify::run(cvtele_cli::args::Tier::Fast, &subjects);
    assert_eq!(report.check("states.wigner_resource").unwrap().status, Status::Fail);
}
