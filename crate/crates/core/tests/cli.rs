use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_thz-harq");

const BASE: &str = r#"
[link]
frequency_hz = 275e9
distance_m = 20.0
tx_gain_db = 55.0
rx_gain_db = 55.0

[fading]
alpha = 2.0
mu = 1.0

[pointing]
w_e = 3.0
sigma_s = 1.0

[harq]
rounds = 3
rate = 2.0
snr_db = 30.0
"#;

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn header_and_row_order_match_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{BASE}
[sweep]
variable = \"rate\"
start = 1.0
stop = 2.0
step = 0.5
methods = [\"mc\", \"convolution\", \"asymptotic\", \"exact\"]
schemes = [\"cc\", \"type1\"]

[montecarlo]
trials = 2000
streams = 3
"
    );
    let cfg = write_config(dir.path(), "golden.toml", &body);
    let out = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(!csv.contains('\r'));
    let mut shape: Vec<String> = vec![csv.lines().next().unwrap().to_string()];
    shape.extend(data_rows(&csv).iter().map(|r| r[..3].join(",")));
    let golden = include_str!("golden/sweep_order.txt");
    assert_eq!(shape.join("\n"), golden.trim_end());
    assert!(csv.lines().any(|l| l.starts_with("# wall_clock_s total=")));
    assert!(csv.contains("# s0 defaulted to erf(1)^2"));
}

#[test]
fn combining_beats_type1_across_the_snr_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{BASE}
[sweep]
variable = \"snr_db\"
start = 0.0
stop = 60.0
step = 10.0
methods = [\"exact\"]
schemes = [\"type1\", \"cc\"]
"
    );
    let cfg = write_config(dir.path(), "snr.toml", &body);
    let out = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 14);
    for pair in rows.chunks(2) {
        assert_eq!((pair[0][1].as_str(), pair[1][1].as_str()), ("type1", "cc"));
        let t1: f64 = pair[0][3].parse().unwrap();
        let cc: f64 = pair[1][3].parse().unwrap();
        assert!(cc < t1, "{pair:?}");
        assert_eq!(pair[0][5], "-1");
    }
}

#[test]
fn outage_grows_with_rate_for_every_method() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{BASE}
[sweep]
variable = \"rate\"
start = 0.5
stop = 6.0
step = 0.5
methods = [\"exact\", \"asymptotic\", \"mc\"]
schemes = [\"type1\", \"cc\"]

[montecarlo]
trials = 20000
"
    );
    let cfg = write_config(dir.path(), "rate.toml", &body);
    let out = run(&["sweep", "--config", cfg.to_str().unwrap(), "--threads", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    for scheme in ["type1", "cc"] {
        for method in ["exact", "asymptotic", "mc"] {
            let v: Vec<f64> = rows
                .iter()
                .filter(|r| r[1] == scheme && r[2] == method)
                .map(|r| r[3].parse().unwrap())
                .collect();
            assert_eq!(v.len(), 12);
            assert!(v.windows(2).all(|w| w[0] <= w[1]), "{scheme}/{method}: {v:?}");
        }
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{BASE}
[sweep]
variable = \"snr_db\"
start = 10.0
stop = 20.0
step = 10.0
methods = [\"exact\", \"mc\"]
schemes = [\"type1\", \"cc\"]

[montecarlo]
trials = 10000
"
    );
    let cfg = write_config(dir.path(), "t.toml", &body);
    let a = run(&["sweep", "--config", cfg.to_str().unwrap(), "--threads", "1"]);
    let b = run(&["sweep", "--config", cfg.to_str().unwrap(), "--threads", "3"]);
    let rows = |o: &Output| data_rows(&String::from_utf8_lossy(&o.stdout));
    assert_eq!(rows(&a), rows(&b));
    let c = run(&["sweep", "--config", cfg.to_str().unwrap(), "--seed", "99"]);
    assert_ne!(rows(&a), rows(&c));
    assert!(String::from_utf8_lossy(&c.stdout).contains("seed=99"));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{BASE}
[sweep]
variable = \"snr_db\"
start = 10.0
stop = 11.0
step = 5.0
methods = [\"asymptotic\"]
schemes = [\"type1\"]
"
    );
    let cfg = write_config(dir.path(), "o.toml", &body);
    let out_path = dir.path().join("out.csv");
    let out = run(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(out_path).unwrap();
    assert_eq!(data_rows(&csv).len(), 1);
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let empty = format!(
        "{BASE}
[sweep]
variable = \"rate\"
start = 1.0
stop = 2.0
step = 0.5
methods = []
schemes = [\"type1\"]
"
    );
    let cfg = write_config(dir.path(), "empty.toml", &empty);
    let out = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep.methods"));

    let malformed = BASE.replace("alpha = 2.0", "alpha = ");
    let cfg = write_config(dir.path(), "bad.toml", &malformed);
    let out = run(&["params", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 9"), "{err}");

    let unknown = BASE.replace("mu = 1.0", "mu = 1.0\nnu = 3.0");
    let cfg = write_config(dir.path(), "unknown.toml", &unknown);
    let out = run(&["params", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nu"));

    let boundary = BASE.replace("w_e = 3.0", "w_e = 2.8284271247461903");
    let cfg = write_config(dir.path(), "boundary.toml", &boundary);
    assert_eq!(run(&["params", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));

    let out = run(&["params", "--config", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numeric_failures_are_flagged_rows_and_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{BASE}
[sweep]
variable = \"rate\"
start = 1000.0
stop = 1050.0
step = 50.0
methods = [\"exact\"]
schemes = [\"type1\"]
"
    );
    let cfg = write_config(dir.path(), "overflow.toml", &body);
    let out = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][3], "1");
    assert_eq!(rows[1][3], "NaN");
    assert!(rows[1][6].starts_with("error:"));
}

#[test]
fn params_echo_derived_quantities() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "p1.toml", &BASE.replace("w_e = 3.0", "w_e = 1.0"));
    let out = run(&["params", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("phi = 0.25"));
    assert!(text.contains("alpha*mu - phi > 0"));
    assert!(text.contains("diversity_order_type1 = 0.375"));
    assert!(text.contains("h_l = 1.37"));

    let cfg = write_config(dir.path(), "p3.toml", BASE);
    let text = String::from_utf8(run(&["params", "--config", cfg.to_str().unwrap()]).stdout).unwrap();
    assert!(text.contains("phi = 2.25"));
    assert!(text.contains("alpha*mu - phi < 0"));
    assert!(text.contains("diversity_order_cc = 3"));
}

#[test]
fn direct_pointing_values_override_geometry() {
    let dir = tempfile::tempdir().unwrap();
    let body = BASE.replace(
        "w_e = 3.0\nsigma_s = 1.0",
        "w_d1 = 0.5\nr1 = 0.4\nsigma_s = 1.0\ns0 = 0.5\nphi = 1.5",
    );
    let cfg = write_config(dir.path(), "both.toml", &body);
    let text = String::from_utf8(run(&["params", "--config", cfg.to_str().unwrap()]).stdout).unwrap();
    assert!(text.contains("phi = 1.5") && text.contains("s0 = 0.5"), "{text}");
    assert!(text.contains("note = direct phi/s0 override the pointing geometry"));
}
