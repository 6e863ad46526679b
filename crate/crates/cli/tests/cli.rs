use std::process::{Command, Output};

use serde_json::Value;

fn pavoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pavoid"))
        .args(args)
        .env_remove("PAVOID_SEED")
        .output()
        .expect("binary runs")
}

fn results(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("json on stdout");
    v["results"].clone()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn contain_yes_and_no() {
    let out = pavoid(&["contain", "--host", "3 3;100;010;001", "--pattern", "1 2"]);
    assert_eq!(code(&out), 0);
    let r = results(&out);
    assert_eq!(r["contains"], true);
    assert_eq!(r["embedding"]["rows"].as_array().unwrap().len(), 2);

    let out = pavoid(&["contain", "--host", "3 3;001;010;100", "--pattern", "1 2"]);
    assert_eq!(code(&out), 1);
    assert_eq!(results(&out)["contains"], false);
}

#[test]
fn contain_with_symmetry() {
    // flipping rows turns the anti-diagonal into the diagonal, for host and pattern alike
    let out = pavoid(&["contain", "--host", "3 3;001;010;100", "--pattern", "2 1", "--symmetry", "flip_rows"]);
    assert_eq!(code(&out), 0);
    let out = pavoid(&["contain", "--host", "1 1;1", "--pattern", "1", "--symmetry", "spin"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn files_are_read() {
    let dir = tempfile::tempdir().unwrap();
    let host = dir.path().join("host.txt");
    let out = pavoid(&["construct", "x_matrix", "6", "--raw"]);
    assert_eq!(code(&out), 0);
    std::fs::write(&host, &out.stdout).unwrap();
    let out = pavoid(&["contain", "--host", host.to_str().unwrap(), "--pattern", "1 2 3 4 5 6"]);
    assert_eq!(code(&out), 0);
    let out = pavoid(&["minor", "--host", host.to_str().unwrap(), "--pattern", "2 2;11;11"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn parse_errors_exit_2() {
    let out = pavoid(&["contain", "--host", "2 2;1x;01", "--pattern", "1"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert!(out.stdout.is_empty());

    let out = pavoid(&["contain", "--host", "2 2;10;01", "--pattern", "1 1"]);
    assert_eq!(code(&out), 2);
    let out = pavoid(&["bounds", "eval", "--name", "no_such_formula"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn construct_raw_round_trips() {
    let out = pavoid(&["construct", "identity", "3", "--raw"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1 2 3\n");
    let out = pavoid(&["construct", "grid_product", "--left", "1 2", "--right", "1 2", "--raw"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1 3 2 4\n");
    let out = pavoid(&["construct", "direct_sum", "--left", "1 1;1", "--right", "1 1;1", "--raw"]);
    // A sits bottom-left, B top-right
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2 2\n01\n10\n");
}

#[test]
fn random_construction_depends_only_on_seed() {
    let a = pavoid(&["--seed", "11", "construct", "random", "9", "--raw"]);
    let b = pavoid(&["--seed", "11", "construct", "random", "9", "--raw"]);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_pavoid"))
        .args(["construct", "random", "9", "--raw"])
        .env("PAVOID_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn extremal_ex_and_budget() {
    let out = pavoid(&["extremal", "ex", "--n", "4", "--pattern", "1 2"]);
    assert_eq!(code(&out), 0);
    let r = results(&out);
    assert_eq!(r["value"], 7);
    assert_eq!(r["status"], "exact");
    assert!(r["witness"].is_object());

    let out = pavoid(&["extremal", "ex", "--n", "6", "--pattern", "1 3 2", "--budget", "5"]);
    assert_eq!(code(&out), 3);
    assert_eq!(results(&out)["status"], "lower_bound");
}

#[test]
fn count_csv_columns() {
    let out = pavoid(&["--format", "csv", "count", "--pattern", "1 2 3", "--nmax", "5"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,count,root");
    assert_eq!(lines[4], "4,14,1.934336");
    assert_eq!(lines.len(), 6);
}

#[test]
fn greedy_trace_csv() {
    let out = pavoid(&["--format", "csv", "greedy", "--host", "3 3;111;111;111", "--pattern", "1 2", "--trace"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("base_row,step,column,row,outcome\n"));
    assert!(text.contains(",found\n"));
}

#[test]
fn bounds_commands() {
    let out = pavoid(&["bounds", "eval", "--name", "marcus_tardos", "--param", "k=3"]);
    let r = results(&out);
    assert_eq!(r["value"], "13608");
    assert_eq!(r["rounding"], "exact");

    let out = pavoid(&["bounds", "mt-step", "--ex-sm1", "1", "--ex-n", "2", "--ex-t", "3", "--f", "4", "--g", "5", "--n", "6"]);
    assert_eq!(results(&out)["bound"], "164");

    let out = pavoid(&["bounds", "list"]);
    assert!(results(&out)["formulas"].as_array().unwrap().len() >= 10);
}

#[test]
fn highdim_commands() {
    let out = pavoid(&["highdim", "antichain", "--d", "3", "--n", "2"]);
    assert_eq!(results(&out)["probability"], "3/4");

    let out = pavoid(&["highdim", "count", "--pattern", "3 2;1 1 1;2 2 2", "--n", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(results(&out)["count"], "17");

    let out = pavoid(&["highdim", "count", "--pattern", "3 2;1 1 1;2 2 2", "--n", "9"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_subset_passes() {
    let out = pavoid(&["verify", "--check", "containment", "--check", "bounds"]);
    assert_eq!(code(&out), 0);
    let r = results(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["checks"].as_array().unwrap().len(), 2);
    let out = pavoid(&["verify", "--check", "nonsense"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn report_shape() {
    let out = pavoid(&["--seed", "4", "repetition", "params", "--k", "9", "--r", "3"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "repetition params");
    assert_eq!(v["seed"], 4);
    assert_eq!(v["params"]["k"], "9");
    assert!(v["elapsed_ms"].is_number());
    assert_eq!(v["results"]["w"], 3);
}
