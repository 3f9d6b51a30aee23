use std::path::Path;
use std::process::{Command, Output};

use mrcurve::model::{lru_mr, CacheSize, PowerLaw};

fn mrcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mrcurve"))
        .args(args)
        .output()
        .expect("spawn mrcurve")
}

fn ok(args: &[&str]) -> String {
    let out = mrcurve(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Csv {
        assert!(!text.contains('\r'));
        let mut lines = text.lines();
        let header = lines
            .next()
            .expect("header")
            .split(',')
            .map(String::from)
            .collect::<Vec<_>>();
        let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
        assert!(rows.iter().all(|r| r.len() == header.len()));
        Csv { header, rows }
    }

    fn col(&self, name: &str) -> Vec<f64> {
        let i = self
            .header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i].parse().unwrap()).collect()
    }

    fn cell(&self, row: usize, name: &str) -> &str {
        let i = self.header.iter().position(|h| h == name).unwrap();
        &self.rows[row][i]
    }
}

fn code(args: &[&str]) -> i32 {
    mrcurve(args).status.code().expect("exit code")
}

#[test]
fn predict_uniform_is_linear() {
    let t = Csv::parse(&ok(&["predict", "-a", "0", "-N", "1024"]));
    assert_eq!(t.header, ["log10_D", "ws", "preref", "mr_lru", "mr_static", "ratio"]);
    assert_eq!(t.rows.len(), 302);
    for (x, mr) in t.col("log10_D").iter().zip(t.col("mr_lru")) {
        let want = 1.0 - 10f64.powf(*x) / 1024.0;
        assert!((mr - want).abs() <= 1e-5 * want + 1e-6, "D = 10^{x}: {mr} vs {want}");
    }
    assert!(t.col("ratio").iter().all(|r| (r - 1.0).abs() < 1e-5));
}

#[test]
fn predict_ws_starts_near_one() {
    let t = Csv::parse(&ok(&["predict", "-a", "1", "-N", "32768"]));
    assert_eq!(t.col("log10_D")[0], 0.0);
    // The discrete working set is exactly 1 at D = 1; the continuous
    // extension sits a little above.
    let ws = t.col("ws")[0];
    assert!((1.0..1.25).contains(&ws), "{ws}");
}

#[test]
fn predict_matches_golden() {
    let golden =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/predict_a1_n32768.csv"))
            .unwrap();
    let want = Csv::parse(&golden);
    let got = Csv::parse(&ok(&["predict", "-a", "1", "-N", "32768"]));
    assert_eq!(got.header, want.header);
    assert_eq!(got.rows.len(), want.rows.len());
    for name in &want.header {
        for (g, w) in got.col(name).iter().zip(want.col(name)) {
            assert!((g - w).abs() <= 1e-5 * w.abs() + 1e-12, "{name}: {g} vs {w}");
        }
    }
}

#[test]
fn predict_at_given_sizes() {
    let t = Csv::parse(&ok(&[
        "predict",
        "-a",
        "0.8",
        "-N",
        "5000",
        "--cache-size",
        "1000",
        "--cache-size",
        "10",
    ]));
    assert_eq!(t.col("log10_D"), vec![1.0, 3.0]);
    let law = PowerLaw::new(0.8, 5000).unwrap();
    let want = lru_mr(&law, CacheSize::new(1000.0, 5000).unwrap()).unwrap();
    assert!((t.col("mr_lru")[1] - want).abs() < 1e-5 * want);
}

#[test]
fn simulate_fixture_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("abab.txt");
    std::fs::write(&path, "A B A B\n").unwrap();
    let t = Csv::parse(&ok(&["simulate", "--trace-in", path.to_str().unwrap(), "--window"]));
    assert_eq!(t.col("D"), vec![1.0, 2.0]);
    assert_eq!(t.col("stack_ccdf")[0], 1.0);
    assert_eq!(t.col("ws_window"), vec![1.0, 2.0]);
}

#[test]
fn simulate_uniform_miss_rate() {
    let t = Csv::parse(&ok(&[
        "simulate",
        "-a",
        "0",
        "-N",
        "1024",
        "-L",
        "1000000",
        "--cache-size",
        "256",
    ]));
    assert_eq!(t.col("D"), vec![256.0]);
    let mr = t.col("stack_ccdf")[0];
    assert!((mr - 0.75).abs() < 0.01, "{mr}");
}

#[test]
fn simulate_power_law_tracks_model() {
    let t = Csv::parse(&ok(&[
        "simulate",
        "-a",
        "2",
        "-N",
        "32768",
        "-L",
        "30000000",
        "--binning",
        "0.05",
    ]));
    let law = PowerLaw::new(2.0, 32768).unwrap();
    let mut checked = 0;
    for (d, mr) in t.col("D").iter().zip(t.col("stack_ccdf")) {
        if *d < 10.0 || *d >= 32768.0 {
            continue;
        }
        let want = lru_mr(&law, CacheSize::new(*d, 32768).unwrap()).unwrap();
        assert!((mr - want).abs() < 0.02, "D = {d}: {mr} vs {want}");
        checked += 1;
    }
    assert!(checked > 50);
}

#[test]
fn binary_trace_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("t.bin");
    let bin = bin.to_str().unwrap();
    let first = ok(&[
        "simulate",
        "-a",
        "1",
        "-N",
        "500",
        "-L",
        "20000",
        "--seed",
        "7",
        "--trace-out",
        bin,
    ]);
    let again = ok(&["simulate", "--trace-in", bin]);
    assert_eq!(first, again);
}

#[test]
fn runs_are_deterministic() {
    let args = [
        "simulate", "-a", "0.7", "-N", "2000", "-L", "100000", "--seed", "3", "--window",
    ];
    let a = mrcurve(&args);
    let b = mrcurve(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
    assert_ne!(
        a.stdout,
        ok(&["simulate", "-a", "0.7", "-N", "2000", "-L", "100000", "--seed", "4", "--window"]).into_bytes()
    );
    assert_eq!(ok(&["ratio-max"]), ok(&["ratio-max"]));
}

#[test]
fn output_file_equals_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    ok(&["predict", "-a", "1.5", "-N", "1000", "-o", path.to_str().unwrap()]);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        ok(&["predict", "-a", "1.5", "-N", "1000"])
    );
}

#[test]
fn compare_reproduces_ratio_peak() {
    let out = mrcurve(&["compare", "-a", "1", "-N", "65536", "-L", "20000000"]);
    assert!(out.status.success());
    let t = Csv::parse(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(t.rows.len(), 99);
    let sim = t.col("ratio_sim");
    let delta = t.col("delta");
    let (i, peak) = sim
        .iter()
        .enumerate()
        .fold((0, 0.0), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    assert!((peak - 1.43).abs() < 0.01, "peak {peak}");
    assert!((delta[i] - 0.45).abs() < 0.1, "at {}", delta[i]);
    for (a, s) in t.col("mr_lru").iter().zip(t.col("mr_sim")) {
        assert!((a - s).abs() < 0.005);
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("max |mr_lru - mr_sim|"));
}

#[test]
fn compare_small_exponent_peaks_late() {
    let t = Csv::parse(&ok(&["compare", "-a", "0.1", "-N", "65536", "-L", "20000000"]));
    let sim = t.col("ratio_sim");
    let (i, peak) = sim
        .iter()
        .enumerate()
        .fold((0, 0.0), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    assert!(t.col("delta")[i] > 0.75);
    assert!(peak > 1.0 && peak < 1.1, "{peak}");
}

#[test]
fn compare_uniform_ratio_is_one() {
    let t = Csv::parse(&ok(&[
        "compare",
        "-a",
        "0",
        "-N",
        "4096",
        "-L",
        "4000000",
        "--ratio-grid",
        "0.05:0.95:0.05",
    ]));
    assert_eq!(t.rows.len(), 19);
    assert!(t.col("ratio_analytic").iter().all(|r| (r - 1.0).abs() < 1e-5));
    assert!(
        t.col("ratio_sim").iter().all(|r| (r - 1.0).abs() < 0.03),
        "{:?}",
        t.col("ratio_sim")
    );
}

#[test]
fn ratio_max_rows() {
    let t = Csv::parse(&ok(&["ratio-max", "--a-grid", "1,2,0.001"]));
    let (y, d, f) = (t.col("y_star"), t.col("delta_star"), t.col("f_max"));
    assert!((y[0] - 0.223059).abs() < 2e-6);
    assert!((d[0] - 0.453).abs() < 1e-3);
    assert!((f[0] - 1.43227).abs() < 2e-5);
    assert_eq!(t.cell(0, "jelenkovic"), "");
    assert!((f[1] - 1.58).abs() < 0.005);
    assert_eq!(t.cell(1, "jelenkovic"), "1.5708");
    assert!(f[2] < 1.01 && d[2] > 0.99);
    assert_eq!(Csv::parse(&ok(&["ratio-max"])).rows.len(), 33);
}

#[test]
fn ratio_grids() {
    let t = Csv::parse(&ok(&["ratio", "-a", "1"]));
    assert_eq!(t.rows.len(), 99);
    assert_eq!(t.col("ratio").iter().cloned().fold(0.0, f64::max), 1.43227);
    let t = Csv::parse(&ok(&["ratio", "--a-grid", "2,inf", "--y-grid", "-1:1:1"]));
    assert_eq!(t.rows.len(), 6);
    assert_eq!(t.cell(3, "a"), "inf");
    assert_eq!(t.cell(3, "delta"), "");
    assert!(t.cell(0, "delta").parse::<f64>().unwrap() > 0.0);
}

#[test]
fn slope_values() {
    for (a, want) in [("0", 1.0), ("1", 1.0), ("2", 0.5)] {
        let t = Csv::parse(&ok(&["slope", "-a", a, "-N", "32768"]));
        let fit = t.col("fitted_slope")[0];
        assert!((fit - want).abs() < 0.05, "a = {a}: {fit}");
        assert_eq!(t.col("analytic_slope")[0], want);
        assert!(t.col("log10_ws").windows(2).all(|w| w[1] >= w[0]));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["predict", "-a", "-1", "-N", "10"]), 2);
    assert_eq!(code(&["predict", "-a", "1"]), 2);
    assert_eq!(code(&["predict", "-a", "1", "-N", "10", "--cache-size", "11"]), 2);
    assert_eq!(
        code(&[
            "compare",
            "-a",
            "1",
            "-N",
            "100",
            "-L",
            "1000",
            "--ratio-grid",
            "0:1:0.1"
        ]),
        2
    );
    assert_eq!(code(&["simulate", "-a", "1", "-N", "100", "-L", "99"]), 2);
    assert_eq!(code(&["simulate", "--trace-in", "/nonexistent/trace"]), 2);
    assert_eq!(code(&["predict", "--no-such-flag"]), 2);
    assert_eq!(code(&["ratio-max", "--a-grid", "inf"]), 3);
    assert_eq!(code(&["ratio-max", "--a-grid", "1"]), 0);
}
