use std::process::{Command, Output};

fn diagalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diagalg")).args(args).env_remove("DA_PRECISION_BITS").output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn basis_counts() {
    for (args, count) in [
        (vec!["basis", "--family", "brauer", "--n", "3"], 15),
        (vec!["basis", "--family", "partition", "--n", "1"], 2),
        (vec!["basis", "--family", "walled", "--r", "2", "--s", "2"], 24),
    ] {
        let out = diagalg(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["count"], count, "{args:?}");
        assert_eq!(v["diagrams"].as_array().unwrap().len(), count);
    }
}

#[test]
fn counting_suite_walled_three_two() {
    let out = diagalg(&["check", "--suite", "counting", "--family", "walled", "--r", "3", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["results"][0]["measured"].as_str().unwrap().starts_with("sum d^2 = 120"));
}

#[test]
fn failing_check_exits_one() {
    // The exit code must agree with the per-check verdicts in the report.
    let out = diagalg(&["check", "--suite", "concentration", "--family", "brauer", "--n", "2", "--d", "10000,40000"]);
    let v = json(&out);
    let passed = v["results"].as_array().unwrap().iter().all(|r| r["pass"].as_bool().unwrap());
    assert_eq!(out.status.code(), Some(if passed { 0 } else { 1 }));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(diagalg(&["basis", "--family", "walled", "--n", "3"]).status.code(), Some(2));
    assert_eq!(diagalg(&["basis", "--family", "nope", "--n", "3"]).status.code(), Some(2));
    assert_eq!(diagalg(&["ft", "--family", "partition", "--n", "1", "--d", "x"]).status.code(), Some(2));
    assert_eq!(diagalg(&["basis", "--family", "brauer", "--n", "5", "--cap", "10"]).status.code(), Some(2));
    assert_eq!(diagalg(&["check", "--suite", "niceness-decay", "--family", "brauer", "--n", "2", "--d", "100"]).status.code(), Some(2));
}

#[test]
fn ft_worked_example_unscaled() {
    let out = diagalg(&["ft", "--family", "partition", "--n", "1", "--d", "10000", "--mode", "exact", "--scaling", "unscaled"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let c = &v["coefficients"];
    let rows = c["entries"].as_array().unwrap();
    // Two labels, two diagrams; one row is (1, -1/d) and the other (0, 1/d), up to column order.
    let mut seen: Vec<Vec<String>> = rows.iter().map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()).collect();
    for r in &mut seen {
        r.sort();
    }
    seen.sort();
    assert_eq!(seen, vec![vec!["-1/10000".to_string(), "1".to_string()], vec!["0".to_string(), "1/10000".to_string()]]);
    assert_eq!(v["mode"], "exact");
}

#[test]
fn outputs_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("diagalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str, args: &[&str]| {
        let path = dir.join(name);
        let mut full = args.to_vec();
        let p = path.to_str().unwrap().to_string();
        full.extend(["--output", &p]);
        let out = diagalg(&full);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(&path).unwrap()
    };
    for args in [
        vec!["ft", "--family", "brauer", "--n", "2", "--d", "100"],
        vec!["sov", "--family", "brauer", "--n", "2", "--d", "100,400"],
        vec!["bratteli", "--family", "partition", "--n", "2"],
        vec!["bratteli", "--family", "walled", "--r", "1", "--s", "2", "--format", "json"],
    ] {
        let a = run("a", &args);
        let b = run("b", &args);
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_diagalg"))
        .args(["ft", "--family", "symmetric", "--n", "2", "--d", "5"])
        .env("DA_PRECISION_BITS", "128")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out)["precision_bits"], 128);
}
