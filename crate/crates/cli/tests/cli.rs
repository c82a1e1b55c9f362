//! End-to-end checks of the command-line surface: output formats, exit
//! codes, file plumbing, and determinism of the suite runner.

use std::path::PathBuf;
use std::process::{Command, Output};

fn wqo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wqo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = wqo(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    wqo(args).status.code().expect("exit code")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wqo-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write temp file");
    path
}

fn singleton_qo() -> PathBuf {
    temp_file(
        "single.json",
        r#"{"carrier":["q"],"le":[["q","q"]],"closure":false}"#,
    )
}

#[test]
fn ordinal_verbs() {
    assert_eq!(
        stdout_of(&["ord", "nprod", "w + 1", "w + 1"]),
        "w^2 + w*2 + 1\n"
    );
    assert_eq!(stdout_of(&["ord", "tower", "2"]), "w^w\n");
    assert_eq!(stdout_of(&["ord", "cmp", "w + 1", "w*2"]), "Less\n");
    assert_eq!(stdout_of(&["ord", "add", "1", "w"]), "w\n");
    assert_eq!(stdout_of(&["ord", "mul", "w + 1", "w"]), "w^2\n");
    assert_eq!(stdout_of(&["ord", "nsum", "w + 1", "w"]), "w*2 + 1\n");
    assert_eq!(stdout_of(&["ord", "pow", "w + 1", "2"]), "w^2 + w + 1\n");
}

#[test]
fn exit_codes() {
    // Parse error.
    assert_eq!(exit_code(&["ord", "cmp", "w +", "w"]), 2);
    // Domain error.
    assert_eq!(exit_code(&["ord", "tower", "0"]), 1);
    // Budget exhaustion.
    assert_eq!(
        exit_code(&["suite", "run", "--suite", "g-trichotomy", "--budget", "50"]),
        3
    );
    // Unknown suite is a domain error.
    assert_eq!(exit_code(&["suite", "run", "--suite", "nope"]), 1);
}

#[test]
fn g_verbs() {
    assert_eq!(
        stdout_of(&["g", "cmp", "0", "c(a)", "--base", "a,b"]),
        "Less\n"
    );
    assert_eq!(
        stdout_of(&[
            "g",
            "cmp",
            "th(W^w*c(a)) + th(W^w*c(a))",
            "th(W^w*c(b))",
            "--base",
            "a,b"
        ]),
        "Less\n"
    );
    assert_eq!(
        stdout_of(&["g", "wf", "th(W^w*c(a) + W^0*0)", "--base", "a,b"]),
        "false\n"
    );
    let listing = stdout_of(&["g", "enum", "--base", "a", "--max-size", "2"]);
    assert_eq!(listing, "0\nc(a)\nth(W^w*c(a))\n");
}

#[test]
fn tree_verbs() {
    let qo = singleton_qo();
    let qo = qo.to_str().unwrap();
    assert_eq!(stdout_of(&["tree", "deg", "q[q[q,q,q]]"]), "3\n");
    assert_eq!(
        stdout_of(&["tree", "embed", "q[q]", "q[q,q]", "--qo", qo]),
        "true\n"
    );
    assert_eq!(
        stdout_of(&["tree", "embed", "q[q,q]", "q[q]", "--qo", qo]),
        "false\n"
    );
    assert_eq!(
        stdout_of(&["tree", "enum", "--qo", qo, "--max-nodes", "3"]),
        "q\nq[q]\nq[q,q]\nq[q[q]]\n"
    );
    assert_eq!(
        stdout_of(&["tree", "whistle", "q", "q[q]", "--qo", qo]),
        "(0,1)\n"
    );
    assert_eq!(
        stdout_of(&["tree", "whistle", "q[q,q]", "q[q]", "--qo", qo]),
        "none\n"
    );
}

#[test]
fn qo_verbs() {
    let chain = temp_file(
        "chain2.json",
        r#"{"carrier":["a","b"],"le":[["a","b"]],"closure":true}"#,
    );
    let chain = chain.to_str().unwrap();
    let product = stdout_of(&["qo", "product", chain, chain]);
    let prod_file = temp_file("prod.json", product.trim_end());
    let prod_file = prod_file.to_str().unwrap();

    assert_eq!(
        stdout_of(&["qo", "badmax", prod_file]),
        "4: (b,b) (a,b) (b,a) (a,a)\n"
    );
    assert_eq!(stdout_of(&["qo", "goodpair", chain, "b a"]), "none\n");
    assert_eq!(stdout_of(&["qo", "goodpair", chain, "a b"]), "(0,1)\n");

    let kb = stdout_of(&["qo", "kb", chain]);
    assert_eq!(kb, "[a]\n[b a]\n[b]\n[]\n");

    let nfold = stdout_of(&["qo", "nfold", chain, "2", "--mode", "dunion"]);
    let nfold_file = temp_file("nfold.json", nfold.trim_end());
    assert_eq!(
        stdout_of(&[
            "qo",
            "goodpair",
            nfold_file.to_str().unwrap(),
            "(0,a) (1,a)"
        ]),
        "none\n"
    );

    let sum = stdout_of(&["qo", "sum", chain, chain]);
    let sum_file = temp_file("sum.json", sum.trim_end());
    assert_eq!(
        stdout_of(&["qo", "goodpair", sum_file.to_str().unwrap(), "l:a r:a"]),
        "(0,1)\n"
    );
}

#[test]
fn ramsey_verbs() {
    let anti = temp_file(
        "anti2.json",
        r#"{"carrier":["a","b"],"le":[],"closure":true}"#,
    );
    let anti = anti.to_str().unwrap();
    assert_eq!(
        stdout_of(&["ramsey", "colour", anti, "--n", "2", "--seq", "a,b;b,a"]),
        "(0,1):0\n"
    );
    assert_eq!(
        stdout_of(&["ramsey", "homog", anti, "--n", "2", "--seq", "a,b;b,a", "--size", "2"]),
        "0 1\n"
    );
    // A good pair in the sequence violates the precondition.
    assert_eq!(
        exit_code(&["ramsey", "colour", anti, "--n", "2", "--seq", "a,b;a,b"]),
        1
    );
    assert_eq!(
        stdout_of(&["ramsey", "pigeon", "0,1,0,0", "--bound", "2"]),
        "0: 0 2 3\n"
    );
    assert_eq!(
        stdout_of(&["ramsey", "order", "1,0", "--bound", "2"]),
        "alpha: 1 0\nseq: (0,0) (1,1)\n"
    );
}

#[test]
fn wop_verbs() {
    assert_eq!(stdout_of(&["wop", "gplus", "w + 1"]), "w^2\n");
    assert_eq!(stdout_of(&["wop", "gtimes", "w + 1"]), "w^w\n");
    assert_eq!(stdout_of(&["wop", "approx", "w*3 + 5", "w"]), "2\n");
    assert_eq!(exit_code(&["wop", "approx", "w^w", "w"]), 1);
}

#[test]
fn suite_runner_is_deterministic() {
    let args = ["suite", "run", "--suite", "four-equiv"];
    let first = wqo(&args);
    let second = wqo(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("report is json");
    assert_eq!(parsed[0]["suite"], "four-equiv");
    assert_eq!(parsed[0]["violations"].as_array().unwrap().len(), 0);
    // Timing lives on stderr, not in the report bytes.
    assert!(!text.contains("wall"));
}
