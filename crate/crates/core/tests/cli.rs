use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Stdio};

use primctl::cli::{run, Outcome};
use serde_json::Value as Json;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn primctl(args: &[&str]) -> Outcome {
    run(std::iter::once("primctl").chain(args.iter().copied()))
}

fn with_file(verb: &str, file: &str, rest: &[&str]) -> Outcome {
    let path = data(file);
    let mut args = vec![verb, "--file", path.as_str()];
    args.extend_from_slice(rest);
    primctl(&args)
}

/// Parses the text report into section -> key -> value, where a value is
/// either a scalar string or a list of lines.
fn parse_text(report: &str) -> BTreeMap<String, BTreeMap<String, Json>> {
    let mut out: BTreeMap<String, BTreeMap<String, Json>> = BTreeMap::new();
    let mut section = String::new();
    let mut list_key: Option<String> = None;
    for line in report.lines() {
        if !line.starts_with(' ') {
            section = line.to_lowercase();
            out.entry(section.clone()).or_default();
            list_key = None;
        } else if let Some(item) = line.strip_prefix("    ") {
            let key = list_key.clone().expect("list item without key");
            let entry = out.get_mut(&section).unwrap().get_mut(&key).unwrap();
            entry
                .as_array_mut()
                .unwrap()
                .push(Json::String(item.to_string()));
        } else {
            let body = line.trim_start();
            let (key, value) = body.split_once(':').unwrap();
            let value = value.trim();
            let sect = out.get_mut(&section).unwrap();
            if value.is_empty() {
                sect.insert(key.to_string(), Json::Array(Vec::new()));
                list_key = Some(key.to_string());
            } else {
                sect.insert(key.to_string(), Json::String(value.to_string()));
                list_key = None;
            }
        }
    }
    out
}

fn scalar_text(v: &Json) -> Json {
    match v {
        Json::Array(items) => Json::Array(items.iter().map(scalar_text).collect()),
        Json::String(s) => Json::String(s.clone()),
        other => Json::String(other.to_string()),
    }
}

fn result_list(out: &Outcome, key: &str) -> Vec<String> {
    let parsed = parse_text(&out.stdout);
    parsed["result"][key]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn primitive_lists_the_groebner_basis() {
    let out = with_file("primitive", "curve.pri", &["--h", "h", "--g", "g"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(result_list(&out, "integral"), ["y^3 + x^2 + 2*x*z", "z^2"]);
}

#[test]
fn torsion_number_of_two_lines() {
    let out = with_file("torsion-number", "two_lines.pri", &["--h", "h", "--g", "g"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(parse_text(&out.stdout)["result"]["torsion_number"], "1");
}

#[test]
fn main_check_split_on_curve() {
    let out = with_file(
        "main-check",
        "curve.pri",
        &["--h", "h", "--g", "gn", "--split", "1 / 2"],
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(parse_text(&out.stdout)["result"]["holds"], "true");
}

#[test]
fn unknown_ideal_is_a_usage_error() {
    let out = with_file("primitive", "curve.pri", &["--h", "h", "--g", "missing"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(
        out.stderr.contains("unknown ideal 'missing'"),
        "{}",
        out.stderr
    );
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = with_file(
        "primitive",
        "curve.pri",
        &["--h", "h", "--g", "g", "--bogus"],
    );
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_split_is_a_usage_error() {
    for split in ["1 2", "1 / 3", "1,1 / 2", "0 / 2"] {
        let out = with_file(
            "main-check",
            "curve.pri",
            &["--h", "h", "--g", "gn", "--split", split],
        );
        assert_eq!(out.code, 2, "split {split}");
    }
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(primctl(&["--help"]).code, 0);
    assert_eq!(primctl(&["--version"]).code, 0);
    assert_eq!(primctl(&[]).code, 2);
}

#[test]
fn failed_jacobian_condition_exits_one() {
    let out = with_file("torsion-number", "line.pri", &["--h", "sq", "--g", "g"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("jacobian_condition: false"));
}

#[test]
fn containment_failure_exits_one() {
    let out = with_file("primitive", "two_lines.pri", &["--h", "g1", "--g", "g2"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("h_in_g: false"));
}

#[test]
fn output_is_byte_deterministic() {
    let cases: [(&str, &str, &[&str]); 4] = [
        ("primitive", "curve.pri", &["--h", "h", "--g", "g"]),
        (
            "torsion",
            "two_lines.pri",
            &["--h", "h", "--g", "g", "--json"],
        ),
        ("free-check", "two_lines.pri", &["--h", "h", "--g", "g"]),
        ("omega-line", "line.pri", &["--h", "h3", "--g", "g"]),
    ];
    for (verb, file, rest) in cases {
        let a = with_file(verb, file, rest);
        let b = with_file(verb, file, rest);
        assert_eq!(a, b, "{verb}");
    }
}

#[test]
fn json_mirrors_the_text_report() {
    let cases: [(&str, &str, &[&str]); 6] = [
        ("primitive", "curve.pri", &["--h", "h", "--g", "g"]),
        ("torsion-number", "curve.pri", &["--h", "h", "--g", "g"]),
        ("free-check", "two_lines.pri", &["--h", "h", "--g", "g"]),
        ("line-case", "line.pri", &["--h", "h3", "--g", "g"]),
        ("derivations", "two_lines.pri", &["--h", "h"]),
        (
            "verify-properties",
            "two_lines.pri",
            &["--h", "h", "--g", "g", "--g1", "g1", "--g2", "g2"],
        ),
    ];
    for (verb, file, rest) in cases {
        let text = with_file(verb, file, rest);
        let mut json_args = rest.to_vec();
        json_args.push("--json");
        let json = with_file(verb, file, &json_args);
        assert_eq!(text.code, json.code, "{verb}");
        let parsed: Json = serde_json::from_str(&json.stdout).unwrap();
        let obj = parsed.as_object().unwrap();
        let keys: Vec<&String> = obj.keys().collect();
        assert_eq!(keys, ["input", "hypotheses", "result", "checks"], "{verb}");
        let from_text = parse_text(&text.stdout);
        for (section, fields) in obj {
            let fields = fields.as_object().unwrap();
            let text_fields = &from_text[section];
            assert_eq!(fields.len(), text_fields.len(), "{verb} {section}");
            for (k, v) in fields {
                assert_eq!(scalar_text(v), text_fields[k], "{verb} {section}.{k}");
            }
        }
    }
}

#[test]
fn lex_order_changes_printing_not_verdicts() {
    let deg = with_file(
        "verify-properties",
        "two_lines.pri",
        &["--h", "h", "--g", "g", "--g1", "g1", "--g2", "g2"],
    );
    let lex = with_file(
        "verify-properties",
        "two_lines.pri",
        &[
            "--h", "h", "--g", "g", "--g1", "g1", "--g2", "g2", "--order", "lex",
        ],
    );
    assert_eq!(deg.code, 0);
    assert_eq!(lex.code, 0);
    assert_eq!(
        parse_text(&deg.stdout)["checks"],
        parse_text(&lex.stdout)["checks"]
    );

    let deg = with_file("primitive", "curve.pri", &["--h", "h", "--g", "g"]);
    let lex = with_file(
        "primitive",
        "curve.pri",
        &["--h", "h", "--g", "g", "--order", "lex"],
    );
    assert_ne!(result_list(&deg, "integral"), result_list(&lex, "integral"));
    assert_eq!(
        parse_text(&deg.stdout)["checks"],
        parse_text(&lex.stdout)["checks"]
    );
}

#[test]
fn binary_reads_the_session_from_stdin() {
    let session = std::fs::read_to_string(data("two_lines.pri")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_primctl"))
        .args(["torsion-number", "--h", "h", "--g", "g"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(session.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        stdout,
        with_file("torsion-number", "two_lines.pri", &["--h", "h", "--g", "g"]).stdout
    );
}

#[test]
fn binary_reports_parse_errors_on_stderr() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_primctl"))
        .args(["primitive", "--h", "h", "--g", "g"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"ring x, y; ideal h = 2x;")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:"));
}
