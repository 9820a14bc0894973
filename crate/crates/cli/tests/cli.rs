use std::process::{Command, Output};

use serde_json::Value;

fn andrekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_andrekit")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = andrekit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    andrekit(args).status.code().unwrap()
}

fn report(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn expand_examples() {
    let dn = stdout(&["expand", "--series", "dn", "--n", "4"]);
    assert!(dn.lines().any(|l| l.ends_with("1 + (p+q+2)*t")));
    assert_eq!(dn.lines().count(), 5);
    assert_eq!(stdout(&["expand", "--series", "neg1", "--n", "4"]).lines().last(), Some("1 + 3*t + 2*t^2"));
    assert_eq!(stdout(&["expand", "--series", "dn", "--n", "0"]), "1\n");
    assert!(stdout(&["expand", "--series", "master", "--n", "2"]).lines().last().unwrap().contains('w'));
}

#[test]
fn expand_json() {
    let v = report(&["expand", "--series", "neg1", "--n", "2", "--format", "json"]);
    assert_eq!(v["series"], "neg1");
    assert_eq!(v["coefficients"], serde_json::json!(["1", "1", "1 + t"]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["expand", "--series", "nope", "--n", "3"]), 2);
    assert_eq!(code(&["expand", "--series", "dn", "--n", "3", "--format", "csv"]), 2);
    assert_eq!(code(&["verify", "--suite", "nope", "--n-max", "3"]), 2);
}

#[test]
fn table_rows() {
    let d = stdout(&["tables", "--which", "d", "--n-max", "7"]);
    assert_eq!(d.lines().last(), Some("n=7: 1,57,180,34"));
    let gamma = stdout(&["tables", "--which", "gamma", "--n-max", "7"]);
    assert_eq!(gamma.lines().last(), Some("n=7: 1,114,720,272"));
    let en = stdout(&["tables", "--which", "en", "--n-max", "7"]);
    let values: Vec<&str> = en.lines().map(|l| l.split_once(": ").unwrap().1).collect();
    assert_eq!(values.join(","), "1,1,2,5,16,61,272");
    let dq = stdout(&["tables", "--which", "dq", "--n-max", "5"]);
    assert_eq!(dq.lines().nth(3), Some("n=4: 1; p + q + 2"));
}

#[test]
fn table_formats() {
    let csv = stdout(&["tables", "--which", "gamma", "--n-max", "4", "--format", "csv"]);
    assert_eq!(csv, "n,k,value\n1,0,1\n2,0,1\n3,0,1\n3,1,2\n4,0,1\n4,1,8\n");
    let v = report(&["tables", "--which", "d", "--n-max", "5", "--format", "json"]);
    let last = v["rows"].as_array().unwrap().last().unwrap();
    assert_eq!(last, &serde_json::json!({"n": 5, "k": 2, "value": 4}));
}

#[test]
fn cap_exits_3() {
    let out = andrekit(&["tables", "--which", "d", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--unsafe-n"));
    assert_eq!(code(&["verify", "--suite", "main2", "--n-max", "12"]), 3);
}

#[test]
fn verify_suites_pass() {
    for (suite, n) in [("bijection", "6"), ("neg1", "20"), ("formula-p1", "8"), ("all", "5")] {
        let v = report(&["verify", "--suite", suite, "--n-max", n]);
        assert_eq!(v["suite"], suite);
        let cases = v["cases"].as_array().unwrap();
        assert!(!cases.is_empty());
        assert!(cases.iter().all(|c| c["status"] == "pass"), "{suite}: {v}");
    }
}

#[test]
fn verify_json_is_canonical() {
    let raw = stdout(&["verify", "--suite", "all", "--n-max", "4", "--seed", "7"]);
    let v: Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(serde_json::to_string(&v).unwrap(), raw.trim_end());
}

#[test]
fn case_order_ignores_thread_count() {
    let ids = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_andrekit"))
            .args(["verify", "--suite", "all", "--n-max", "5"])
            .env("ANDREKIT_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["cases"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap().to_owned()).collect::<Vec<_>>()
    };
    assert_eq!(ids("1"), ids("4"));
}

#[test]
fn bij_trace_forward() {
    let out = stdout(&["bij-trace", "--sigma", "31524", "--s", "1,2"]);
    assert_eq!(
        out,
        "step: x=2 case=i before=31524 after=31425\n\
         step: x=1 case=iii before=31425 after=32415\n\
         result: 32415\n"
    );
    assert_eq!(stdout(&["bij-trace", "--sigma", "1234", "--s", ""]), "result: 1234\n");
}

#[test]
fn bij_trace_inverse() {
    let out = stdout(&["bij-trace", "--inverse", "--tau", "11,2,12,13,1,6,4,5,3,8,9,7,10"]);
    assert!(out.contains("after=11,1,12,13,2,6,4,5,3,8,9,7,10"));
    assert!(out.contains("after=11,1,12,13,2,6,3,5,4,8,9,7,10"));
    assert!(out.ends_with("S: {1,3,4,7}\n"));
}

#[test]
fn bij_trace_preconditions_exit_2() {
    assert_eq!(code(&["bij-trace", "--sigma", "2134", "--s", ""]), 2);
    assert_eq!(code(&["bij-trace", "--sigma", "31524", "--s", "3"]), 2);
    assert_eq!(code(&["bij-trace", "--sigma", "3152", "--s", ""]), 2);
    assert_eq!(code(&["bij-trace", "--inverse", "--tau", "4321"]), 2);
}
