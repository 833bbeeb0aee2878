use std::process::{Command, Output};

fn musb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_musb"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = musb(&["verify", "--mu", "0.7", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 13);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    assert_eq!(v["timestamp"], "2023-11-14T22:13:20Z");
}

#[test]
fn verify_at_mu_zero_reports_gaussian_reduction() {
    let o = musb(&["verify", "--mu", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gaussian-reduction: pass"));
}

#[test]
fn verify_rejects_mu_below_bound() {
    let o = musb(&["verify", "--mu", "-0.6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("μ > −1/2"));
    assert_eq!(musb(&["verify", "--mu", "0.5", "--lambda", "0"]).status.code(), Some(2));
    assert_eq!(musb(&["verify"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    let a = musb(&["verify", "--mu", "1.3", "--lambda", "0.5"]);
    let b = musb(&["verify", "--mu", "1.3", "--lambda", "0.5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn impossible_tolerance_fails_with_exit_1() {
    assert_eq!(
        musb(&["verify", "--mu", "0.7", "--tol", "1e-16"]).status.code(),
        Some(1)
    );
    assert_eq!(
        musb(&["sweep", "--mu", "0,0.5", "--tol", "1e-16"]).status.code(),
        Some(1)
    );
}

#[test]
fn sweep_over_five_mu() {
    let o = musb(&["sweep", "--mu", "-0.4,0,0.5,1,2.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("mu,gaussian-reduction,"));
    assert!(lines[1..].iter().all(|l| l.ends_with(",pass")));
    assert!(lines[1].starts_with("-0.4,"));
}

#[test]
fn sweep_usage_errors() {
    assert_eq!(musb(&["sweep", "--mu", ""]).status.code(), Some(2));
    assert_eq!(musb(&["sweep"]).status.code(), Some(2));
    assert_eq!(musb(&["sweep", "--mu", "0.2,-0.7"]).status.code(), Some(2));
}

#[test]
fn tabulate_single_points() {
    let o = musb(&["tabulate", "density-even", "--mu", "0", "--r", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1), Some("1,0.1170996630"));
    let o = musb(&["tabulate", "gaussian", "--r", "0", "0", "1"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("0,0.3183098862"));
}

#[test]
fn tabulate_i_pair_has_opposite_signs() {
    let o = musb(&["tabulate", "pair-I", "--mu", "0.5", "--r", "0.1", "3", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rows = text.lines();
    assert_eq!(rows.next(), Some("r,even,odd"));
    let mut n = 0;
    for row in rows {
        let cols: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cols[1] < 0.0 && cols[2] > 0.0, "{row}");
        n += 1;
    }
    assert_eq!(n, 30);
}

#[test]
fn tabulate_writes_file_and_rejects_bad_grids() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.csv");
    let o = musb(&[
        "tabulate",
        "pair-K",
        "--mu",
        "0",
        "--r",
        "1",
        "2",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().nth(1), Some("1,0.4610685044,0.4610685044"));
    for bad in [
        ["0", "1", "5"],
        ["2", "1", "5"],
        ["1", "2", "1"],
        ["1", "2", "0"],
        ["-1", "2", "3"],
    ] {
        let mut args = vec!["tabulate", "density-odd", "--mu", "0.3", "--r"];
        args.extend(bad);
        assert_eq!(musb(&args).status.code(), Some(2), "{bad:?}");
    }
}
