use std::process::Command;

fn qcovers(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qcovers"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(qcovers(&["order", "--word", "a"]).0, Some(0));
    assert_eq!(qcovers(&["order", "--word", "q"]).0, Some(1));
    assert_eq!(qcovers(&["frobnicate"]).0, Some(1));
    assert_eq!(qcovers(&["--help"]).0, Some(0));
    assert_eq!(
        qcovers(&["image", "--k", "3", "--bfs-cap", "100"]).0,
        Some(3)
    );
}

#[test]
fn bfs_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qcovers"))
        .args(["image", "--k", "2"])
        .env("QCOVERS_BFS_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = qcovers(&["cover", "--k", "1", "--seed", "4"]);
    let b = qcovers(&["cover", "--k", "1", "--seed", "4"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    for key in [
        "p",
        "k",
        "N",
        "e",
        "degree",
        "rank",
        "elementary_divisors",
        "proper",
        "index",
        "bound",
        "bound_satisfied",
        "psi_witness_excluded",
    ] {
        assert!(
            v.get(key).is_some() || v["meta"].get(key).is_some(),
            "{key}"
        );
    }
    assert_eq!(v["degree"], 49);
    assert_eq!(v["proper"], true);
}

#[test]
fn trace_command() {
    let (code, out) = qcovers(&["trace", "--word", "aB", "--p", "5"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["meta"]["p"], 5);
    assert!(v["trace"]["coeffs"].is_array());
}
