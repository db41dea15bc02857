use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affsl2")).args(args).env_remove("AFFSL2_BASIS_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn fusion_prints_the_rule() {
    let o = run(&["fusion", "--p", "1", "--q", "1", "--r", "0", "--level", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("1"));
    let o = run(&["fusion", "--p", "1", "--q", "2", "--r", "0", "--level", "2", "--format", "json-lines"]);
    assert_eq!(stdout(&o).trim(), r#"{"value":"0"}"#);
}

#[test]
fn fusion_without_hypotheses_is_indeterminate() {
    let o = run(&["fusion", "--p", "3", "--q", "3", "--r", "0", "--level", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("indeterminate"));
}

#[test]
fn radical_reports_corank_at_grade_two() {
    let o = run(&["radical", "--n", "0", "--level", "1", "--grade", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "2,total,9,4,5"), "{}", stdout(&o));
}

#[test]
fn counterexample_exits_with_inconsistency() {
    let o = run(&[
        "intertwine", "build", "--p", "2", "--q", "2", "--r", "0", "--level", "1", "--grade", "3",
        "--override-conditions",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("inconsistent recursion system"));
}

#[test]
fn hypothesis_failure_without_override() {
    let o = run(&["intertwine", "build", "--p", "2", "--q", "2", "--r", "0", "--level", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("hypothesis failure"));
}

#[test]
fn verify_reports_zero_failures() {
    let o = run(&["intertwine", "verify", "--p", "1", "--q", "1", "--r", "2", "--level", "2", "--format", "json-lines"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.contains(r#""failures":0"#)));
}

#[test]
fn descent_succeeds() {
    let o = run(&["intertwine", "descend", "--p", "1", "--q", "0", "--r", "1", "--level", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("6,14,0 0 0 7,"));
}

#[test]
fn output_is_deterministic_across_seeds() {
    let args = ["intertwine", "build", "--p", "1", "--q", "1", "--r", "2", "--level", "2", "--format", "json-lines"];
    let base = run(&args);
    assert_eq!(base.status.code(), Some(0));
    assert_eq!(run(&args).stdout, base.stdout);
    for seed in ["3", "99"] {
        let mut seeded = args.to_vec();
        seeded.extend(["--seed", seed]);
        assert_eq!(run(&seeded).stdout, base.stdout);
    }
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(run(&["bogus"]).status.code(), Some(3));
    assert_eq!(run(&["fusion", "--p", "1"]).status.code(), Some(3));
    assert_eq!(run(&["resolve", "--n", "3", "--level", "1"]).status.code(), Some(3));
}

#[test]
fn resource_cap_exits_four() {
    let o = Command::new(env!("CARGO_BIN_EXE_affsl2"))
        .args(["radical", "--n", "0", "--level", "1", "--grade", "6"])
        .env("AFFSL2_BASIS_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("exceeds the configured cap"));
    let o = run(&["intertwine", "build", "--p", "0", "--q", "1", "--r", "1", "--level", "2", "--grade", "1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("truncation too shallow"));
}

#[test]
fn character_matches_gram_rank() {
    let o = run(&["character", "--n", "1", "--level", "2", "--grade", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[3], f[4], "{line}");
    }
}

#[test]
fn resolve_lists_weights_and_shifts() {
    let o = run(&["resolve", "--n", "1", "--level", "2", "--j-max", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "j,weight,shift,word\n0,1,0,1\n1,5,2,r0\n2,9,6,r0r1\n");
}
