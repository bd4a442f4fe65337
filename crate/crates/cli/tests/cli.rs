use std::io::Write;
use std::process::{Command, Output, Stdio};

const CIRCLE: &str = r#"{"parametric": {"x": "cos(t)", "y": "sin(t)", "t0": 0, "t1": 6.283185307179586}}"#;
const SQUARE: &str = r#"{"polyline": [[0,0],[1,0],[1,1],[0,1],[0,0]]}"#;
const PARABOLA: &str = r#"{"parametric": {"x": "t", "y": "t^2", "t0": -1, "t1": 1}}"#;
const LINE: &str = r#"{"parametric": {"x": "t", "y": "3*t + 1", "t0": -1, "t1": 1}}"#;

fn cauchy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cauchy")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn length_square_csv() {
    let o = cauchy(&["length", SQUARE, "--n", "4,8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows[0].join(","), "n,offset,M,estimate,exact,observed_error,bound");
    assert_eq!(rows.len(), 3);
    for r in &rows[1..] {
        assert!((r[4].parse::<f64>().unwrap() - 4.0).abs() < 1e-10);
    }
}

fn worst_by_n(rows: &[Vec<String>]) -> Vec<f64> {
    let mut worst = std::collections::BTreeMap::<u64, f64>::new();
    for r in &rows[1..] {
        let e = worst.entry(r[0].parse().unwrap()).or_insert(0.0);
        *e = e.max(r[5].parse().unwrap());
    }
    worst.into_values().collect()
}

#[test]
fn length_errors_by_n() {
    // A circle projects equally in every direction: only the ripple of the
    // inscribed 1024-gon is left, whatever n is.
    let o = cauchy(&["length", CIRCLE, "--n", "4..64", "--offsets", "36", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    for r in &rows[1..] {
        let (err, bound): (f64, f64) = (r[5].parse().unwrap(), r[6].parse().unwrap());
        assert!(err < 2e-5 && err <= bound, "{r:?}");
    }
    let o = cauchy(&["length", SQUARE, "--n", "4,8,16,32,64", "--offsets", "36", "--format", "csv"]);
    let w = worst_by_n(&csv_rows(&o));
    assert!(w.windows(2).all(|p| p[1] < p[0]), "{w:?}");
}

#[test]
fn length_random_row_and_json() {
    let o = cauchy(&["length", SQUARE, "--n", "2", "--random", "500", "--seed", "9", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bound_violations"], 1);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.last().unwrap()["n"], "mc");
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the bound"));
}

#[test]
fn spec_from_stdin_and_file() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cauchy"))
        .args(["length", "-", "--format", "csv"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(SQUARE.as_bytes()).unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    assert_eq!(from_stdin.status.code(), Some(0));

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(SQUARE.as_bytes()).unwrap();
    let from_file = cauchy(&["length", file.path().to_str().unwrap(), "--format", "csv"]);
    assert_eq!(from_file.stdout, from_stdin.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let o = cauchy(&["curvature", PARABOLA, "--t", "0", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text, "t,x,y,tau,rho,cx,cy,method\n0.0,0.0,0.0,0.0,0.5,0.0,0.5,chord-deviation\n");
}

#[test]
fn curvature_flags_straight_lines() {
    let o = cauchy(&["curvature", LINE, "--range", "-1:1:5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 6);
    assert!(rows[1..].iter().all(|r| r[4] == "inf" && r[7] == "infinite-radius"));
}

#[test]
fn curvature_circle_constant_rho() {
    let o = cauchy(&["curvature", CIRCLE, "--range", "0:6:100", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 101);
    assert!(rows[1..].iter().all(|r| (r[4].parse::<f64>().unwrap() - 1.0).abs() < 1e-9));
}

#[test]
fn delta_footer_and_columns() {
    let o = cauchy(&["delta", "cos(m)", "--alpha", "1e-2,1e-6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows[0].join(","), "alpha,eps,value");
    assert_eq!(rows.last().unwrap()[0], "target");
    let last_value: f64 = rows[2][2].parse().unwrap();
    assert!((last_value - std::f64::consts::FRAC_PI_2).abs() < 1e-3);
}

#[test]
fn probe_modes() {
    let o = cauchy(&["probe", "1/t", "--x0", "0.1,1,10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows[0].join(","), "point,increment,difference,st_difference,continuous");
    assert!(rows[1..].iter().all(|r| r.last().unwrap() == "true"));

    let o = cauchy(&["probe", "1/t", "--micro", "eps", "eps^2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows[1][3], "-1.0");
    assert_eq!(rows[1][4], "false");

    let o = cauchy(&["probe", "--sum", "sin(k*x)/k", "--ladder", "100,1000", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows[0].join(","), "n,n_prime,x,tail_value");
    assert!((rows[2][3].parse::<f64>().unwrap() - 0.6593).abs() < 2e-2);
}

#[test]
fn table_is_default() {
    let o = cauchy(&["length", SQUARE]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("length: 4.0000000000\n"));
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 10] = [
        (&["length", SQUARE, "--format", "csv"], 0),
        (&["probe", "1/t", "--x0", "1"], 0),
        (&["length", r#"{"polyline": [[0,0],[1,"a"]]}"#], 2),
        (&["length", "{not json"], 2),
        (&["curvature", SQUARE, "--t", "0"], 2),
        (&["delta", "cos(m"], 2),
        (&["probe", "1/t", "--micro", "eps", "1"], 2),
        (&["curvature", PARABOLA, "--t", "0", "--order", "32:3"], 2),
        (&["probe", "1/t", "--x0", "0"], 1),
        (&["length", r#"{"parametric": {"x": "log(t)", "y": "t", "t0": -1, "t1": 1}}"#], 1),
    ];
    for (args, code) in cases {
        let o = cauchy(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        if code != 0 {
            assert!(!o.stderr.is_empty());
        }
    }
}

#[test]
fn spec_error_cites_path() {
    let o = cauchy(&["length", r#"{"parametric": {"x": "t", "y": "sin(t", "t0": 0, "t1": 1}}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.parametric.y"));
}
