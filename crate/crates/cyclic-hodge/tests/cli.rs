//! End-to-end tests of the command-line interface: every shipped fixture
//! spec validates, the documented examples reproduce, output formats are
//! stable, and failures exit nonzero with descriptive diagnostics.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-hodge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn every_fixture_spec_passes_validate() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).expect("fixtures directory exists") {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "alg") {
            continue;
        }
        n += 1;
        let out = run(&["validate", path.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "{} failed validate: {}",
            path.display(),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(stdout(&out).contains("all axioms checked"));
    }
    assert!(n >= 7, "expected the shipped fixture specs, found {n}");
}

#[test]
fn necklace_bracket_example_reproduces() {
    let f = fixture("necklace.alg");
    let out = run(&[
        "bracket",
        f.to_str().unwrap(),
        "--a",
        "[v,v,v]",
        "--b",
        "[w,w,w]",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains('9'), "expected coefficient 9 in `{text}`");
    assert!(
        text.contains("v·v·w·w"),
        "expected the necklace word vvww in `{text}`"
    );
}

#[test]
fn kx_cyclic_table_has_three_unit_rows() {
    let f = fixture("abelian1.alg");
    let out = run(&[
        "hodge-hc",
        f.to_str().unwrap(),
        "--p",
        "3",
        "--max-weight",
        "4",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines[0], "p,degree,dim,safe");
    assert_eq!(
        &lines[1..],
        &["1,0,1,true", "2,0,1,true", "3,0,1,true"],
        "reduced HC of k[x] is one dimension in degree 0 for every p"
    );
}

#[test]
fn kassel_check_reports_all_equal_on_sl2() {
    let f = fixture("sl2.alg");
    let out = run(&[
        "kassel-check",
        f.to_str().unwrap(),
        "--p",
        "1",
        "--max-degree",
        "3",
        "--max-weight",
        "4",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("all equal"));
}

#[test]
fn json_output_is_deterministic_modulo_timestamp() {
    let f = fixture("abelian1.alg");
    let args = [
        "hodge-hc",
        f.to_str().unwrap(),
        "--p",
        "2",
        "--max-weight",
        "3",
        "--format",
        "json",
    ];
    let strip = |s: String| -> String {
        s.lines()
            .filter(|l| !l.contains("\"timestamp\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip(stdout(&run(&args)));
    let b = strip(stdout(&run(&args)));
    assert_eq!(a, b);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&args))).expect("valid JSON document");
    assert!(v["metadata"]["input"].is_string());
    assert!(v["rows"].is_array());
}

#[test]
fn malformed_specs_fail_with_line_diagnostics() {
    let dir = std::env::temp_dir().join("cyclic-hodge-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.alg");
    std::fs::write(&bad, "kind lie-algebra\nname x\n[basis]\ne 0\n[bracket]\ne q = e\n").unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 6"), "{err}");
    assert!(err.contains("unknown basis label"), "{err}");

    // axiom violations (not just syntax) also exit nonzero
    let broken = dir.join("broken.alg");
    std::fs::write(
        &broken,
        "kind lie-algebra\nname bad-jacobi\n\n[basis]\na 0\nb 0\nc 0\n\n[bracket]\na b = c\nb c = a\nc a = c\n",
    )
    .unwrap();
    let out = run(&["validate", broken.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn unknown_letters_in_bracket_words_are_rejected() {
    let f = fixture("necklace.alg");
    let out = run(&[
        "bracket",
        f.to_str().unwrap(),
        "--a",
        "[v,z]",
        "--b",
        "[w]",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown letter `z`"));
}
