use std::process::{Command, Output};

use serde_json::Value;
use snarkdom::validators::{has_cyclic_pattern, parse_pattern};
use snarkdom_cli::report::VerificationReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snarkdom"))
        .args(args)
        .env_remove("SNARKDOM_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_dimacs_header() {
    let out = run(&["gen", "--n", "3", "--format", "dimacs"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("p edge 12 18"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 18);
}

#[test]
fn gen_rejects_small_n_with_usage() {
    let out = run(&["gen", "--n", "2", "--format", "dimacs"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(code(&run(&["gen", "--n", "4", "--format", "graphml"])), 2);
}

#[test]
fn gen_json_and_adjlist() {
    let v = json(&run(&["gen", "--n", "5", "--format", "json"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 20);
    assert_eq!(v["edges"].as_array().unwrap().len(), 30);
    let out = run(&["gen", "--n", "4", "--format", "adjlist"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 16);
}

#[test]
fn solve_examples() {
    for (n, variant, optimum) in [
        ("3", "total", 5),
        ("6", "connected", 12),
        ("3", "weak_roman", 5),
    ] {
        let out = run(&["solve", "--n", n, "--variant", variant]);
        assert_eq!(code(&out), 0, "{variant}");
        let v = json(&out);
        assert_eq!(v["optimum"], optimum, "{variant}");
        assert_eq!(v["proof_bound"], optimum - 1, "{variant}");
        for key in [
            "variant",
            "n",
            "witness",
            "candidates_examined",
            "elapsed_ms",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn solve_witness_shapes() {
    let v = json(&run(&["solve", "--n", "3", "--variant", "upper"]));
    assert_eq!(v["optimum"], 5);
    assert_eq!(v["proof_bound"], 6);
    assert_eq!(v["witness"].as_array().unwrap().len(), 5);
    let v = json(&run(&["solve", "--n", "4", "--variant", "roman"]));
    assert_eq!(v["optimum"], 8);
    let ones = v["witness"]["ones"].as_array().unwrap().len();
    let twos = v["witness"]["twos"].as_array().unwrap().len();
    assert_eq!(ones + 2 * twos, 8);
}

#[test]
fn solve_capacity_errors_exit_two() {
    let out = run(&["solve", "--n", "6", "--variant", "roman"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("long-running"));
    assert_eq!(
        code(&run(&["solve", "--n", "17", "--variant", "domination"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "solve",
            "--n",
            "3",
            "--variant",
            "total",
            "--threads",
            "0"
        ])),
        2
    );
}

#[test]
fn certify_examples() {
    let out = run(&["certify", "--n", "41", "--variant", "secure"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(
        (
            v["size"].as_u64(),
            v["formula"].as_u64(),
            v["valid"].as_bool()
        ),
        (Some(62), Some(62), Some(true))
    );

    let v = json(&run(&["certify", "--n", "40", "--variant", "connected"]));
    assert_eq!(
        (v["size"].as_u64(), v["valid"].as_bool()),
        (Some(80), Some(true))
    );

    let out = run(&["certify", "--n", "3", "--variant", "secure"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn formulas_with_solver_all_agree() {
    let out = run(&["formulas", "--n-max", "5", "--with-solver"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.all_agree());
    let solved = report
        .rows
        .iter()
        .filter(|r| r.solver_value.is_some())
        .count();
    // Every variant is solvable at n = 3..5.
    assert_eq!(solved, 3 * 10);
}

#[test]
fn formulas_without_solver_and_bad_bound() {
    let out = run(&["formulas", "--n-max", "60"]);
    assert_eq!(code(&out), 0);
    let report: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.rows.iter().all(|r| r.solver_value.is_none()));
    assert_eq!(report.rows.len(), 58 * 12);
    assert_eq!(code(&run(&["formulas", "--n-max", "2"])), 2);
}

#[test]
fn report_json_is_a_fixed_point() {
    let out = run(&["formulas", "--n-max", "6", "--with-solver"]);
    let first: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    let text = serde_json::to_string(&first).unwrap();
    let second: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(first, second);
    assert_eq!(text.trim(), String::from_utf8(out.stdout).unwrap().trim());
}

#[test]
fn export_lp_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dom.lp");
    let p = path.to_str().unwrap();

    assert_eq!(
        code(&run(&[
            "export-lp",
            "--n",
            "3",
            "--variant",
            "domination",
            "--output",
            p
        ])),
        0
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let binaries = text
        .lines()
        .skip_while(|l| *l != "Binary")
        .skip(1)
        .take_while(|l| *l != "End")
        .count();
    assert_eq!(binaries, 12);
    assert_eq!(
        text.lines().filter(|l| l.starts_with(" cover_")).count(),
        12
    );
    let order: Vec<&str> = text
        .lines()
        .filter(|l| ["Minimize", "Subject To", "Binary", "End"].contains(l))
        .collect();
    assert_eq!(order, ["Minimize", "Subject To", "Binary", "End"]);

    assert_eq!(
        code(&run(&[
            "export-lp",
            "--n",
            "3",
            "--variant",
            "independent",
            "--output",
            p
        ])),
        0
    );
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text.lines().filter(|l| l.starts_with(" cover_")).count(),
        12
    );
    assert_eq!(text.lines().filter(|l| l.starts_with(" edge_")).count(), 18);

    let refused = dir.path().join("connected.lp");
    let out = run(&[
        "export-lp",
        "--n",
        "3",
        "--variant",
        "connected",
        "--output",
        refused.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(!refused.exists());
}

#[test]
fn patterns_examples() {
    let rows = json(&run(&[
        "patterns",
        "--n",
        "5",
        "--variant",
        "total",
        "--size",
        "8",
    ]));
    let rows = rows.as_array().unwrap();
    assert!(!rows.is_empty());
    let p111 = parse_pattern("111").unwrap();
    for r in rows {
        let w: Vec<u8> = serde_json::from_value(r["copy_weights"].clone()).unwrap();
        assert!(!has_cyclic_pattern(&w, &p111).unwrap(), "{w:?}");
        let h: Vec<usize> = serde_json::from_value(r["histogram"].clone()).unwrap();
        assert_eq!(h.iter().sum::<usize>(), 5);
    }

    let rows = json(&run(&[
        "patterns",
        "--n",
        "4",
        "--variant",
        "domination",
        "--size",
        "3",
    ]));
    assert_eq!(rows.as_array().unwrap().len(), 0);

    let rows = json(&run(&[
        "patterns",
        "--n",
        "3",
        "--variant",
        "domination",
        "--size",
        "3",
    ]));
    assert!(rows
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["set"] == serde_json::json!(["a^1", "a^2", "a^3"])));

    let rows = json(&run(&[
        "patterns",
        "--n",
        "4",
        "--variant",
        "domination",
        "--size",
        "5",
        "--limit",
        "3",
    ]));
    assert_eq!(rows.as_array().unwrap().len(), 3);
}

#[test]
fn threads_from_environment() {
    let base = run(&[
        "solve",
        "--n",
        "4",
        "--variant",
        "secure",
        "--deterministic",
    ]);
    let env = Command::new(env!("CARGO_BIN_EXE_snarkdom"))
        .args([
            "solve",
            "--n",
            "4",
            "--variant",
            "secure",
            "--deterministic",
        ])
        .env("SNARKDOM_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&env), 0);
    assert_eq!(env.stdout, base.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_snarkdom"))
        .args(["solve", "--n", "3", "--variant", "total"])
        .env("SNARKDOM_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn pretty_tables() {
    let out = run(&["--pretty", "formulas", "--n-max", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("variant"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("two_domination") && l.contains(" 4 ")));
}
