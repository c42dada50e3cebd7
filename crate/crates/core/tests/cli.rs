use std::process::{Command, Output};

use serde_json::Value;

fn nuniv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nuniv"))
        .args(args)
        .env_remove("NUNIV_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = nuniv(&all);
    let text = if o.stdout.is_empty() { o.stderr.clone() } else { o.stdout.clone() };
    (o.status.code().unwrap(), serde_json::from_slice(&text).unwrap())
}

#[test]
fn analyze_reports_structure() {
    let o = nuniv(&["analyze", "aabcbccab", "-a", "abc", "-k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in ["iota 2", "modus ca", "rest b", "deficiency 4 (k=3)"] {
        assert!(text.contains(line), "{text}");
    }
    let (code, v) = json(&["analyze", "aabcbccab", "-a", "abc", "-k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["iota"], 2);
}

#[test]
fn check_nearly_exit_codes() {
    let o = nuniv(&["check-nearly", "accbbacab", "-a", "abc", "-k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "nearly 3-universal; absent = bcc");
    let o = nuniv(&["check-nearly", "acb", "-a", "abc", "-k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let (code, v) = json(&["check-nearly", "accbbacab", "-a", "abc", "-k", "3"]);
    assert_eq!((code, v["absent"].as_str()), (0, Some("bcc")));
}

#[test]
fn construct_and_order() {
    let o = nuniv(&["construct", "abccab", "-a", "abc"]);
    assert_eq!(stdout(&o).trim(), "bcbaaccbabcabacbcbaac");
    let o = nuniv(&["construct", "abbc", "-a", "abc", "--order", "cba"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "cbbacabcacbba");
}

#[test]
fn absent_methods_agree() {
    for method in ["brute", "notu"] {
        let o = nuniv(&["absent", "aabcbccab", "-a", "abc", "-k", "3", "--method", method]);
        assert_eq!(stdout(&o).trim(), "4 absent: baa bac caa cac");
    }
    let o = nuniv(&["absent", "abcabc", "-a", "abc", "-k", "2", "--method", "notu"]);
    assert_eq!(o.status.code(), Some(2), "structured method needs iota = k-1");
}

#[test]
fn congruent_methods() {
    let o = nuniv(&["congruent", "aabcbccab", "aabcbcab", "-a", "abc", "-k", "3"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(1), "not congruent"));
    let o = nuniv(&["congruent", "accbbacab", "accbbbacab", "-a", "abc", "-k", "3", "--method", "mequiv"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "congruent"));
    let o = nuniv(&["congruent", "ab", "ba", "-a", "ab", "-k", "2", "--method", "mequiv", "--mode", "up-to-k"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn alpha_beta_json() {
    let (code, v) = json(&["alpha-beta", "aabcbccab", "-a", "abc", "-k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["alphas"], serde_json::json!(["a", "bc", "b"]));
    assert_eq!(v["betas"], serde_json::json!(["abc", "ca"]));
    assert_eq!(v["m_prime_root"], serde_json::json!([3, 4]));
    assert_eq!(v["h_root"], "4");
}

#[test]
fn basis_and_budget() {
    let o = nuniv(&["basis", "ab", "-a", "ab", "--count-only"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count 1"));
    let o = nuniv(&["--budget", "2", "basis", "abc", "-a", "abc"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_nuniv"))
        .args(["basis", "abc", "-a", "abc"])
        .env("NUNIV_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "budget is read from the environment");
}

#[test]
fn census_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("r.json");
    let csv_path = dir.path().join("r.csv");
    for p in [&json_path, &csv_path] {
        let o = nuniv(&["census", "-a", "ab", "-k", "2", "--m", "1", "--max-len", "6", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("4 classes among 32 members"));
    }
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(v["class_count"], 4);
    assert_eq!(v["formula_comparison"]["match"], true);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.starts_with("alphabet,sigma,k,m"));
}

#[test]
fn verify_and_list() {
    let o = nuniv(&["verify", "--list"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("reversal-recursion-regression")));
    let o = nuniv(&["verify", "--claim", "reversal-recursion-regression"]);
    assert_eq!(o.status.code(), Some(0));
    let o = nuniv(&["verify", "--claim", "palindrome-extension-converse"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: ab k=2 a=a"));
    let (code, v) = json(&["verify", "--claim", "no-such-claim"]);
    assert_eq!(code, 1);
    assert_eq!(v[0]["status"], "fail");
}

#[test]
fn usage_errors() {
    assert_eq!(nuniv(&["check-nearly", "abd", "-a", "abc", "-k", "2"]).status.code(), Some(2));
    assert_eq!(nuniv(&["analyze", "ab", "-a", "abc"]).status.code(), Some(2));
    assert_eq!(nuniv(&["construct", "ab", "-a", "aab"]).status.code(), Some(2));
    let (code, v) = json(&["construct", "abd", "-a", "abc"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("not in alphabet"));
}
