use std::process::Command;

fn tama(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tama")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn eval_prints_normal_form() {
    let (code, out, _) = tama(&["eval", "L(1,2) + L(2,1)", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "0");
    let (code, out, _) = tama(&["eval", "e(1)*e(1)", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1/1");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tama(&["eval", "L(1,0)", "--n", "5"]).0, 2);
    assert_eq!(tama(&["eval", "x(1) +", "--n", "5"]).0, 2);
    assert_eq!(tama(&["verify", "nonsense"]).0, 2);
    assert_eq!(tama(&["frobnicate"]).0, 2);
    let (code, _, err) = tama(&["emit", "T[n=4]: 13", "--format", "svg"]);
    assert_eq!(code, 2);
    assert!(err.contains("svg"), "{err}");
}

#[test]
fn failing_checks_exit_1() {
    let (code, out, _) = tama(&["verify", "basis", "--n", "4", "--max-degree", "4", "--format", "text"]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.starts_with("FAIL basis/witness-uniqueness d=4")));
    assert!(out.lines().any(|l| l.starts_with("PASS basis/expansion-rank d=4")));
}

#[test]
fn verify_tableau_has_one_record_per_pair() {
    let (code, out, _) = tama(&["verify", "tableau", "--n", "5", "--no-timings"]);
    assert_eq!(code, 0);
    let pairs = out.lines().filter(|l| l.contains(r#""check":"tableau","#)).count();
    assert_eq!(pairs, 15);
    assert!(out.lines().all(|l| l.starts_with(r#"{"schema":1,"#) && l.ends_with(r#""runtime_ms":0}"#)));
}

#[test]
fn enumerate_and_rewrite() {
    let (code, out, _) = tama(&["enumerate", "uncrossable", "--n", "4", "--degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 125);
    assert!(!out.contains("T[n=4]: 13^2 24^2"));
    let (code, out, _) = tama(&["enumerate", "noncrossing", "--n", "4", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 20);
    let (code, out, _) = tama(&["rewrite", "O(1,3)^2 O(2,4)^2", "--n", "4", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(!out.contains("O13^2 O24^2"), "{out}");
}

#[test]
fn emit_figure_one() {
    let (code, out, _) = tama(&["emit", "D[n=6]: (1,3)(1,4)(2,3)(3,5)", "--format", "tikz"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("\\documentclass"));
    for c in ["(v1) -- (v3)", "(v1) -- (v4)", "(v2) -- (v3)", "(v3) -- (v5)"] {
        assert!(out.contains(c), "missing {c}");
    }
    let (code, out, _) = tama(&["emit", "T[n=4]: 13^2 24", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.contains("label=\"2\""), "{out}");
}

#[test]
fn out_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("tama-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.jsonl");
    let (code, out, _) = tama(&["verify", "figure6", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains(r#""check":"figure6""#));
    std::fs::remove_dir_all(&dir).unwrap();
}
