use std::process::{Command, Output};

use serde_json::Value;
use vincular_eco::counting::{u_triangle, v_triangle};
use vincular_eco::oracle::brute_avoiders;
use vincular_eco::DashedPattern;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vincular-eco"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn numbers(text: &str) -> Vec<u64> {
    text.lines().map(|l| l.parse().unwrap()).collect()
}

#[test]
fn count_methods_agree() {
    let base = ["count", "--pattern", "1-32-4", "--n", "8", "--method"];
    let recurrence = stdout(&[&base[..], &["recurrence"]].concat());
    assert_eq!(stdout(&[&base[..], &["tree"]].concat()), recurrence);
    assert_eq!(stdout(&[&base[..], &["brute"]].concat()), recurrence);
    assert_eq!(
        numbers(&recurrence),
        [1, 1, 2, 6, 23, 105, 549, 3207, 20577]
    );

    let callan = ["count", "--pattern", "31-4-2", "--n", "8", "--method"];
    assert_eq!(
        stdout(&[&callan[..], &["recurrence"]].concat()),
        stdout(&[&callan[..], &["brute"]].concat())
    );
}

#[test]
fn count_edge_cases() {
    assert_eq!(
        stdout(&[
            "count",
            "--pattern",
            "1-32-4",
            "--n",
            "0",
            "--method",
            "brute"
        ]),
        "1\n"
    );
    let out = run(&[
        "count",
        "--pattern",
        "1-23-4",
        "--n",
        "4",
        "--method",
        "recurrence",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not available"));
    let out = run(&[
        "count",
        "--pattern",
        "1-32-4",
        "--n",
        "11",
        "--method",
        "brute",
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
    assert!(!out.status.success());
}

#[test]
fn cfrac_reports_mismatch_on_stderr() {
    let out = run(&["count", "--n", "9", "--method", "cfrac"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 10);
    assert!(String::from_utf8_lossy(&out.stderr).contains("first mismatch at order"));
}

#[test]
fn generate_matches_brute_force_set() {
    let text = stdout(&["generate", "--n", "6"]);
    let mut got: Vec<&str> = text.lines().collect();
    assert_eq!(got.len(), 549);
    got.sort();
    let mut want: Vec<String> = brute_avoiders(&DashedPattern::one_32_four(), 6)
        .unwrap()
        .iter()
        .map(|t| t.to_string())
        .collect();
    want.sort();
    assert_eq!(got, want);
    assert_eq!(stdout(&["generate", "--n", "1"]), "1\n");
    let json: Value =
        serde_json::from_str(&stdout(&["generate", "--n", "3", "--format", "json"])).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 6);
    assert!(!run(&["generate", "--n", "0"]).status.success());
}

#[test]
fn output_independent_of_thread_count() {
    let one = stdout(&["--threads", "1", "generate", "--n", "8"]);
    let four = stdout(&["--threads", "4", "generate", "--n", "8"]);
    assert_eq!(one, four);
    assert_eq!(one.lines().count(), 20577);
    assert!(!one.contains('\r'));
}

#[test]
fn triangles() {
    assert_eq!(
        stdout(&["triangle", "--which", "v", "--n", "8"]),
        v_triangle(8).to_csv()
    );
    assert_eq!(
        stdout(&["triangle", "--which", "u", "--n", "5"]),
        u_triangle(5).to_csv()
    );
    assert_eq!(
        stdout(&["triangle", "--which", "census", "--n", "7"]),
        stdout(&["triangle", "--which", "v", "--n", "7"])
    );
    assert!(stdout(&["triangle", "--which", "v", "--n", "8"]).contains("\n8,4,1415\n"));
    assert!(!run(&["triangle", "--which", "census", "--n", "10"])
        .status
        .success());
}

#[test]
fn tree_exports() {
    let dot = stdout(&["tree", "--n", "3"]);
    assert!(dot.starts_with("digraph generating_tree {"));
    assert!(dot.contains("\"12(1)\" -> \"132(2)\";"));
    assert_eq!(dot.matches("->").count(), 1 + 2 + 6 - 1);
    let json: Value =
        serde_json::from_str(&stdout(&["tree", "--n", "2", "--format", "json"])).unwrap();
    assert_eq!(json["label"], 0);
    assert_eq!(json["children"].as_array().unwrap().len(), 2);
    assert!(!run(&["tree", "--n", "9"]).status.success());
}

#[test]
fn verify_suites_pass() {
    for (suite, n) in [
        ("eco", "1"),
        ("eco", "6"),
        ("labelling", "8"),
        ("series", "8"),
        ("pde", "8"),
    ] {
        let out = run(&["verify", "--suite", suite, "--n", n]);
        assert!(
            out.status.success(),
            "{suite}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
    let text = stdout(&["verify", "--n", "6"]);
    assert_eq!(text.lines().filter(|l| l.contains(": PASS")).count(), 4);
    assert!(text.contains("t^(k+1)"));
}

#[test]
fn verify_json() {
    let json: Value = serde_json::from_str(&stdout(&["verify", "--n", "5", "--json"])).unwrap();
    assert_eq!(json["ok"], true);
    let suites = json["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 4);
    assert_eq!(
        suites[3]["detail"]["convention"],
        "u(z,t) = sum_{n>=1} v(n,k) z^n t^(k+1)"
    );
    assert!(suites[2]["detail"]["continued_fraction"]["first_mismatch"].is_object());
}

#[test]
fn verify_caps() {
    let out = run(&["verify", "--suite", "eco", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
}
