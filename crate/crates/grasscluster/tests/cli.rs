use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_grasscluster"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("wait")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn error_line(o: &Output) -> String {
    let err: Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    err["error"].as_str().expect("error field").to_string()
}

#[test]
fn csp_verify_reports_agreement() {
    let o = run(&["--format", "json", "csp", "verify", "--a", "2", "--b", "3", "--c", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["all_equal"], Value::Bool(true));
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn csp_cap_exit_code() {
    let o = run(&["csp", "verify", "--a", "4", "--b", "4", "--c", "9", "--cap", "1000"], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(error_line(&o).contains("cap"));
}

#[test]
fn usage_errors_exit_two_with_json() {
    let o = run(&["pp", "enumerate", "--a", "0", "--b", "1", "--c", "1"], None);
    assert_eq!(o.status.code(), Some(2));
    error_line(&o);
    let o = run(&["quiver", "show", "--a", "3", "--n", "3"], None);
    assert_eq!(o.status.code(), Some(2));
    error_line(&o);
    let o = run(&["pp", "eta", "--c", "1"], Some("[[2,1],[1,0]]"));
    assert_eq!(o.status.code(), Some(2));
    error_line(&o);
}

#[test]
fn eta_worked_example() {
    let o = run(&["--format", "json", "pp", "eta", "--c", "2"], Some("[[2,1],[1,0]]"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o), serde_json::json!([[1, 1], [1, 1]]));
}

#[test]
fn eta_power_a_plus_b_is_identity() {
    let input = "[[3,2,1],[2,1,0]]";
    let o = run(&["--format", "json", "pp", "eta", "--c", "3", "--power", "5"], Some(input));
    assert_eq!(json_out(&o), serde_json::from_str::<Value>(input).unwrap());
}

#[test]
fn enumerate_count_matches_macmahon_total() {
    let o = run(&["--format", "json", "pp", "enumerate", "--a", "2", "--b", "2", "--c", "2"], None);
    assert_eq!(json_out(&o)["count"], 20);
    let o = run(&["--format", "json", "pp", "macmahon", "--a", "2", "--b", "2", "--c", "2"], None);
    let total: u64 = json_out(&o)["coefficients"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 20);
}

#[test]
fn rho_check_succeeds() {
    let o = run(&["--format", "json", "quiver", "rho", "--a", "3", "--n", "6", "--check"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["isomorphic"], Value::Bool(true));
}

#[test]
fn trop_bijection_round_trip() {
    let part = "[[3,2,2],[3,1,0]]";
    let o = run(&["--format", "json", "trop", "bijection", "--c", "3"], Some(part));
    assert_eq!(o.status.code(), Some(0));
    let pt = String::from_utf8(o.stdout).unwrap();
    let back = run(&["--format", "json", "trop", "bijection", "--inverse"], Some(&pt));
    assert_eq!(back.status.code(), Some(0), "{}", String::from_utf8_lossy(&back.stderr));
    let v = json_out(&back);
    assert_eq!(v["entries"], serde_json::from_str::<Value>(part).unwrap());
    assert_eq!(v["c"], 3);
}

#[test]
fn trop_rotate_matches_eta() {
    let part = "[[3,2,2],[3,1,0]]";
    let pt = run(&["--format", "json", "trop", "bijection", "--c", "3"], Some(part));
    let pt = String::from_utf8(pt.stdout).unwrap();
    let rotated = run(&["--format", "json", "trop", "rotate"], Some(&pt));
    assert_eq!(rotated.status.code(), Some(0), "{}", String::from_utf8_lossy(&rotated.stderr));
    let back = run(&["--format", "json", "trop", "bijection", "--inverse"], Some(&String::from_utf8(rotated.stdout).unwrap()));
    let eta = run(&["--format", "json", "pp", "eta", "--c", "3"], Some(part));
    assert_eq!(json_out(&back)["entries"], json_out(&eta));
}

#[test]
fn conf_check_passes() {
    let o = run(&["--trials", "3", "--seed", "7", "conf", "check", "--a", "2", "--n", "5"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn plabic_commands() {
    let o = run(&["--format", "csv", "plabic", "strands", "--a", "2", "--n", "5"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 6);
    let o = run(&["plabic", "standard", "--a", "2", "--n", "4", "--dot"], None);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("graph"));
    let o = run(&["--format", "json", "plabic", "standard", "--a", "2", "--n", "5"], None);
    let rows = json_out(&o)["rows"].as_array().unwrap().len();
    assert_eq!(rows, 2 * 3 + 1);
}

#[test]
fn thread_env_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_grasscluster"))
        .args(["csp", "census", "--a", "2", "--b", "2", "--c", "1"])
        .env("GRASSCLUSTER_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
