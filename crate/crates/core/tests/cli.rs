use std::io::Write;
use std::process::{Command, Output};

fn hopfren(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfren"))
        .args(args)
        .env_remove("HOPFREN_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn coproduct_examples() {
    let out = hopfren(&["coproduct", "((x1)x2)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("(x1) ⊗ (x2)"));

    let text = stdout(&hopfren(&["coproduct", "()"]));
    assert_eq!(text.trim(), "1 () ⊗ ()");

    let text = stdout(&hopfren(&["coproduct", "((x1)(x2)x1)"]));
    assert_eq!(text.lines().count(), 5);

    let sweedler = stdout(&hopfren(&["coproduct", "--sweedler", "((x1)(x2)x1)"]));
    assert_eq!(sweedler, text);
}

#[test]
fn antipode_examples() {
    assert_eq!(stdout(&hopfren(&["antipode", "(x1)"])).trim(), "-1 (x1)");
    assert_eq!(
        stdout(&hopfren(&["antipode", "((x1)x2)"])).trim(),
        "-1 ((x1)x2) + 1 (x1)(x2)"
    );
    assert_eq!(stdout(&hopfren(&["antipode", "()"])).trim(), "1 ()");
    let left = stdout(&hopfren(&["antipode", "((x1)(x2)x1)"]));
    let right = stdout(&hopfren(&["antipode", "--side", "right", "((x1)(x2)x1)"]));
    assert_eq!(left, right);
}

#[test]
fn counterterm_and_renormalize() {
    let text = stdout(&hopfren(&["counterterm", "((x1)(x2)x1)"]));
    assert!(text.contains("-5/24 ε^-3"), "{text}");

    let out = hopfren(&["renormalize", "((x1)(x2)x1)", "--c", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("limit ε→0: -1/3 L^3"), "{text}");
    assert!(text.contains("-0.111008"), "{text}");

    let text = stdout(&hopfren(&["renormalize", "(x1)"]));
    assert!(text.contains("limit ε→0: -1 L"), "{text}");

    let forest = stdout(&hopfren(&["forest", "((x1)(x2)x1)"]));
    assert!(forest.contains("-5/24 ε^-3"), "{forest}");
}

#[test]
fn renormalize_rejects_products() {
    let out = hopfren(&["renormalize", "(x1)(x2)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an irreducible word"));
}

#[test]
fn parse_errors_point_at_the_problem() {
    let out = hopfren(&["parse", "((x1)y)"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("y"), "{err}");
    let lines: Vec<&str> = err.lines().collect();
    let caret = lines.last().unwrap();
    assert_eq!(caret.find('^'), Some(2 + 5), "{err}");
}

#[test]
fn check_examples() {
    let out = hopfren(&["check", "--max-len", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("3 words"), "{text}");
    assert!(text.trim_end().ends_with("all suites pass"));

    let out = hopfren(&["check", "--max-len", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn check_default_length() {
    let out = hopfren(&["check", "--alphabet", "x1,x2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("all suites pass"));
}

#[test]
fn json_output_is_parseable() {
    let out = hopfren(&["--format", "json", "coproduct", "((x1)x2)"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let terms = v["coproduct"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert!(terms.iter().all(|t| t["coeff"] == "1/1"));

    let out = hopfren(&[
        "--format",
        "json",
        "renormalize",
        "((x1)(x2)x1)",
        "--c",
        "2",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["finite"], true);
    let numeric = v["numeric"].as_f64().unwrap();
    assert!((numeric + 2f64.ln().powi(3) / 3.0).abs() < 1e-12);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["check", "--max-len", "3"][..],
        &["coproduct", "((x1)(x2)(x3)x1)"][..],
        &["--format", "json", "counterterm", "(((x1)x2)(x1)x3)"][..],
    ] {
        let a = hopfren(args);
        let b = hopfren(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn config_file_is_read_and_flags_win() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "alphabet = \"a:1,b:2\"\nformat = \"json\"").unwrap();
    let path = file.path().to_str().unwrap();

    let out = hopfren(&["--config", path, "antipode", "(a)"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["word"], "(a)");

    let out = hopfren(&["--config", path, "--format", "text", "antipode", "(a)"]);
    assert_eq!(stdout(&out).trim(), "-1 (a)");
}

#[test]
fn oracle_agrees() {
    let out = hopfren(&["oracle", "((x1)x2)", "--c", "2", "--eps", "0.25"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(agree)"));
}
