use std::process::{Command, Output};

fn maxcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxcurve"))
        .args(args)
        .env_remove("MAXCURVE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn field_description() {
    let o = maxcurve(&["field", "--p", "5", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["size"], "25");
    assert_eq!(v["modulus"], serde_json::json!([2, 0, 1]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(maxcurve(&["field"]).status.code(), Some(2));
    assert_eq!(maxcurve(&["field", "--p", "6"]).status.code(), Some(2));
    assert_eq!(maxcurve(&["--set", "workers=0", "field", "--p", "5"]).status.code(), Some(2));
    assert_eq!(maxcurve(&["--format", "xml", "field", "--p", "5"]).status.code(), Some(2));
    assert_eq!(maxcurve(&["count", "--model", "fermat", "--sqrt-q", "5"]).status.code(), Some(2));
    assert_eq!(maxcurve(&["dim-d", "--sqrt-q", "5", "--d", "4"]).status.code(), Some(2));
}

#[test]
fn construct_then_count_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let o = maxcurve(&["construct", "--model", "hermitian", "--sqrt-q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&path, &o.stdout).unwrap();
    let o = maxcurve(&["count", "--model-file", path.to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    // maximal over F_9, hence minimal over F_81: 81 + 1 − 2·3·9
    assert_eq!(json(&o)["total"], 28);
}

#[test]
fn quotient_model_is_maximal_after_resolving_nodes() {
    let o = maxcurve(&["verify-maximal", "--model", "quotient", "--sqrt-q", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["count"]["plane"]["total"], 49);
    assert_eq!(v["count"]["total"], 56);
    assert_eq!(v["verdict"]["verdict"], "maximal");
    let o = maxcurve(&["verify-maximal", "--model", "quotient", "--sqrt-q", "5", "--genus", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn census_csv_columns_and_determinism() {
    let a = maxcurve(&["census", "--sqrt-q", "5", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("sqrt_q,d,genus,expected_count,measured_count,dim_d,method,verdict,note")
    );
    assert_eq!(lines.count(), 5);
    let j1 = maxcurve(&["census", "--sqrt-q", "3"]);
    let j2 = maxcurve(&["census", "--sqrt-q", "3"]);
    assert_eq!(j1.stdout, j2.stdout);
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "quotient", "--sqrt-q", "5", "--d", "7"];
    let cold = maxcurve(&args);
    assert_eq!(cold.status.code(), Some(0));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = maxcurve(&args);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(json(&warm)["burnside"]["quotient_count"], 36);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# test\nformat = table\nlift_cap = 1\n").unwrap();
    let o = maxcurve(&["--config", cfg.to_str().unwrap(), "census", "--sqrt-q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("sqrt_q  d"));
    assert!(text.contains("skipped"));
    let o = maxcurve(&["--config", cfg.to_str().unwrap(), "--set", "lift_cap=128", "--format", "json", "census", "--sqrt-q", "3"]);
    let rows = json(&o);
    assert_eq!(rows[1]["verdict"], "pass");
    std::fs::write(&cfg, "lift_cap = -3\n").unwrap();
    assert_eq!(maxcurve(&["--config", cfg.to_str().unwrap(), "field", "--p", "5"]).status.code(), Some(2));
}

#[test]
fn verify_paper_single_criteria() {
    let o = maxcurve(&["--set", "timings=false", "verify-paper", "--criterion", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "pass");
    let o = maxcurve(&["--set", "lift_cap=1", "verify-paper", "--criterion", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "skipped");
    let o = maxcurve(&["verify-paper", "--criterion", "11"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["status"], "fail");
}

#[test]
fn semigroup_and_sv() {
    let o = maxcurve(&["semigroup", "--generators", "3,5"]);
    assert_eq!(json(&o)["gaps"], serde_json::json!([1, 2, 4, 7]));
    let o = maxcurve(&["semigroup", "--lmm1", "6,10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["semigroup"]["genus"], 13);
    let sv = ["sv", "--g", "3", "--deg-d", "6", "--r", "2", "--q", "25", "--eps", "0,1,5", "--nu", "0,5"];
    let o = maxcurve(&[&sv[..], &["--epsilon2", "2"]].concat());
    assert_eq!(o.status.code(), Some(0));
    let o = maxcurve(&[&sv[..], &["--epsilon2", "4"]].concat());
    assert_eq!(o.status.code(), Some(1));
}
