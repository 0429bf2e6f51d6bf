use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arithpoly")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn kv<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t'))).unwrap()
}

#[test]
fn poly_coefficients() {
    let o = run(&["poly", "--g", "sigma", "--h", "id", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "k\tcoeff\n0\t0/1\n1\t4/3\n2\t3/2\n3\t1/6\n");
}

#[test]
fn poly_evaluations() {
    let o = run(&["poly", "--g", "one", "--h", "id", "--n", "2", "--eval", "-1"]);
    assert_eq!(stdout(&o), "0\n");
    let o = run(&["poly", "--g", "sigma", "--h", "id", "--n", "1", "--eval", "-24"]);
    assert_eq!(stdout(&o), "-24\n");
    let o = run(&["poly", "--g", "sigma", "--h", "id", "--n", "3", "--eval", "-24", "--all"]);
    assert_eq!(stdout(&o), "n\tvalue\n0\t1\n1\t-24\n2\t252\n3\t-1472\n");
}

#[test]
fn poly_from_value_file() {
    let dir = std::env::temp_dir().join(format!("arithpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ones.txt");
    std::fs::write(&path, "1 1 1 1\n").unwrap();
    let sel = format!("@{}", path.display());
    let a = run(&["poly", "--g", &sel, "--h", "id", "--n", "3"]);
    let b = run(&["poly", "--g", "one", "--h", "id", "--n", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn bad_selector_is_usage_error() {
    assert_eq!(run(&["poly", "--g", "nope", "--h", "id", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["tables", "--which", "7"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "--g", "sigma"]).status.code(), Some(2));
}

#[test]
fn kappa_examples() {
    let o = run(&["kappa", "--g", "sigma", "--variant", "B", "--T", "2/11", "--eps", "3/14"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(kv(&s, "kappa"), "119/11");
    assert_eq!(kv(&s, "g_bound"), "3043993780/14206147659");
    let o = run(&["kappa", "--g", "id", "--variant", "A", "--T", "2/11", "--eps", "1/2"]);
    assert_eq!(kv(&stdout(&o), "kappa"), "11/1");
    let o = run(&["kappa", "--g", "one", "--variant", "B", "--T", "1/2"]);
    assert_eq!(kv(&stdout(&o), "kappa"), "3/1");
    let o = run(&["kappa", "--g", "sigma", "--variant", "B", "--tail-start", "12", "--T", "18289/100000", "--eps", "217/1000"]);
    assert!(o.status.success());
}

#[test]
fn kappa_rejects_decimals_and_reports_infeasible() {
    assert_eq!(run(&["kappa", "--g", "sigma", "--variant", "B", "--T", "0.18289"]).status.code(), Some(2));
    assert_eq!(run(&["kappa", "--g", "sigma", "--variant", "B", "--T", "2/11", "--eps", "0.3"]).status.code(), Some(2));
    let o = run(&["kappa", "--g", "sigma3", "--variant", "B", "--T", "3/20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"], "infeasible");
}

#[test]
fn kappa_json_is_exact() {
    let o = run(&["kappa", "--g", "id", "--variant", "B", "--legacy-eps", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kappa"], "20/3");
    assert_eq!(v["eps"], "1/4");
}

#[test]
fn tables_examples() {
    let o = run(&["tables", "--which", "5", "--max-n", "10"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 11);
    assert!(s.contains("5\t-20.61187\t"));
    assert!(s.contains("10\t-58.18014\t"));
    let o = run(&["tables", "--which", "4"]);
    assert!(o.status.success());
    let vals: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().to_string()).collect();
    assert_eq!(vals, ["0", "5", "5", "15", "6", "28", "9", "32", "21", "42", "8", "70", "18", "48"]);
    let o = run(&["tables", "--which", "1", "--max-n", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("10\t1801152661463000000000\t1857705425589167301906\t1947116172645480005632"));
}

#[test]
fn tables_to_directory() {
    let dir = std::env::temp_dir().join(format!("arithpoly-tables-{}", std::process::id()));
    let o = run(&["tables", "--max-n", "8", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for i in 1..=5 {
        assert!(dir.join(format!("table{i}.tsv")).exists());
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "--suite", "oracles", "--max-n", "12"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
    let o = run(&["verify", "--suite", "growth", "--g", "sigma", "--kappa", "119/11", "--max-n", "30"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["verify", "--suite", "zero-free", "--g", "sigma", "--max-n", "60", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_failure_exit_code() {
    let o = run(&["verify", "--suite", "growth", "--g", "sigma", "--kappa", "5"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["verify", "--suite", "zero-free", "--g", "sigma", "--kappa", "7", "--max-n", "20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn zeros_report() {
    let o = run(&["zeros", "--g", "one", "--h", "id", "--n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let re: Vec<&str> = v["roots"].as_array().unwrap().iter().map(|r| r["re"].as_str().unwrap()).collect();
    assert_eq!(re, ["-3/1", "-2/1", "-1/1", "0/1"]);
}

#[test]
fn deterministic_output() {
    let args = ["zeros", "--g", "sigma", "--h", "id", "--n", "14", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&[&args[..], &["--jobs", "3"]].concat()).stdout);
}
