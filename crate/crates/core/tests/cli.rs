//! Runs the installed binary end to end.

use std::io::Write;
use std::process::{Command, Stdio};

fn malcev(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_malcev"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn catalog(name: &str, extra: &[&str]) -> String {
    let mut args = vec!["catalog", name];
    args.extend_from_slice(extra);
    let (code, out, err) = malcev(&args, "", &[]);
    assert_eq!(code, 0, "{err}");
    out
}

#[test]
fn check_passes_on_catalog_output() {
    let doc = catalog("m7", &[]);
    let (code, out, _) = malcev(&["check", "-"], &doc, &[]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.is_object());
}

#[test]
fn odd_round_trip_through_the_binary() {
    let k = catalog("example_gde", &["--n", "2", "--m", "1,2"]);
    let (code, reduced, err) = malcev(&["reduce", "--odd", "-"], &k, &[]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&reduced).unwrap();
    assert!(v.is_object());
}

#[test]
fn decompose_then_rebuild() {
    let doc = catalog("osp12", &[]);
    let (code, tree, err) = malcev(&["decompose", "-"], &doc, &[]);
    assert_eq!(code, 0, "{err}");
    let (code, _, err) = malcev(&["rebuild", "-"], &tree, &[]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(malcev(&["check", "-"], "{ not json", &[]).0, 2);
    let (code, _, err) = malcev(&["reduce", "--odd", "-"], &catalog("sl2", &[]), &[]);
    assert_eq!(code, 4);
    let e: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(e["exit_code"], 4);
    assert_ne!(malcev(&["no-such-command"], "", &[]).0, 0);
}

#[test]
fn summary_verbosity_drops_witnesses() {
    // negate one Gram entry of sl2 so invariance fails with witnesses
    let doc = catalog("sl2", &[]);
    let bad = doc.replacen("\"2/1\"", "\"3/1\"", 1);
    assert_ne!(bad, doc);
    let (full_code, full, _) = malcev(&["check", "-"], &bad, &[]);
    let (sum_code, summary, _) = malcev(&["check", "-"], &bad, &[("MALCEV_VERBOSITY", "summary")]);
    assert_eq!(full_code, 3);
    assert_eq!(sum_code, 3);
    assert!(full.contains("witnesses"), "{full}");
    assert!(!summary.contains("\"indices\""), "{summary}");
    assert!(summary.len() < full.len());
}
