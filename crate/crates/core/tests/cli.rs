use std::path::PathBuf;

use manysorted::cli::run_from;
use serde_json::Value;

const WS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/workspace.ms");

fn run(extra: &[&str]) -> (String, i32) {
    let mut args = vec!["manysorted", "--no-timings"];
    args.extend(extra);
    let out = run_from(args);
    (out.stdout + &out.stderr, out.code)
}

fn json(extra: &[&str]) -> (Value, i32) {
    let mut args = vec!["-w", WS, "--json"];
    args.extend(extra);
    let (text, code) = run(&args);
    (serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")), code)
}

fn scratch(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn syntactic_index_of_even_f() {
    let (v, code) = json(&["syntactic", "--recognizer", "evenF"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["index"], 2);
    assert_eq!(v["verdict"], true);
}

#[test]
fn check_accepts_the_fixture() {
    let (text, code) = run(&["-w", WS, "check"]);
    assert_eq!(code, 0, "{text}");
}

#[test]
fn dangling_reference_is_reported_with_position() {
    let bad = scratch(
        "dangling.ms",
        "(signature S (sorts s) (op c () -> s))\n\n(generators G :signature S (var x s))\n(recognizer R :algebra MISSING :generators G (assign x -> 0) (accept s (0)))\n",
    );
    let (text, code) = run(&["-w", &bad, "check"]);
    assert_eq!(code, 2);
    assert!(text.contains("dangling.ms:4:"), "{text}");
    assert!(text.contains("MISSING"), "{text}");
}

#[test]
fn duplicate_name_is_reported_with_position() {
    let bad = scratch(
        "duplicate.ms",
        "(signature S (sorts s) (op c () -> s))\n(signature S (sorts t) (op d () -> t))\n",
    );
    let (text, code) = run(&["-w", &bad, "check"]);
    assert_eq!(code, 2);
    assert!(text.contains("duplicate.ms:2:1"), "{text}");
}

#[test]
fn unknown_names_and_bad_flags_are_usage_errors() {
    let (v, code) = json(&["congruences", "NOPE"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "usage");
    let (_, code) = run(&["-w", WS, "omega", "CYC2", "--accept", "s:7"]);
    assert_eq!(code, 2);
    let (_, code) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn exceeding_the_enumeration_bound_exits_3() {
    let (v, code) = json(&["formation", "close", "--seed", "CYC4", "--max-carrier", "9"]);
    assert_eq!(code, 3, "{v}");
    assert_eq!(v["error"]["kind"], "bound");
}

#[test]
fn non_formation_exits_1_with_a_reloadable_witness() {
    let (v, code) = json(&["formation", "is-formation", "--pool", "P"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], false);
    let witness = v["result"]["modes"]["standard"]["witness"].as_str().unwrap();
    let extra = scratch("witness.ms", witness);
    let (text, code) = run(&["-w", WS, "-w", &extra, "check"]);
    assert_eq!(code, 0, "{text}");
}

#[test]
fn language_results_reload() {
    let (v, code) = json(&["lang", "compl", "--recognizer", "evenF", "--name", "oddish"]);
    assert_eq!(code, 0);
    let extra = scratch("compl.ms", v["result"]["text"].as_str().unwrap());
    let (text, code) = run(&["-w", WS, "-w", &extra, "--json", "syntactic", "--recognizer", "oddish"]);
    assert_eq!(code, 0, "{text}");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["index"], 2);
}

#[test]
fn closure_pool_reloads() {
    let (v, code) = json(&["formation", "close", "--seed", "CYC2", "--bound", "2", "--name", "C"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 2);
    assert_eq!(v["result"]["escape"]["factors"], serde_json::json!(["CYC2", "CYC2"]));
    let extra = scratch("closed.ms", v["result"]["pool"].as_str().unwrap());
    let (text, code) = run(&["-w", WS, "-w", &extra, "formation", "is-formation", "--pool", "C"]);
    assert_eq!(code, 0, "{text}");
}

#[test]
fn membership_of_even_f() {
    let (v, code) = json(&["formation", "member", "--pool", "P2", "--recognizer", "evenF"]);
    assert_eq!(code, 0, "{v}");
    let (v, code) = json(&["formation", "member", "--pool", "TRIVIAL", "--recognizer", "evenF"]);
    assert_eq!(code, 1, "{v}");
}

#[test]
fn eilenberg_checks_on_a_small_pool() {
    for cmd in ["theta", "vartheta", "bps"] {
        let (v, code) = json(&["eilenberg", cmd, "--pool", "P2", "--gens", "X"]);
        assert_eq!(code, 0, "{cmd}: {v}");
    }
}

#[test]
fn text_mode_prints_key_paths() {
    let (text, code) = run(&["-w", WS, "syntactic", "--recognizer", "evenF"]);
    assert_eq!(code, 0);
    assert!(text.contains("result.index: 2"), "{text}");
    assert!(text.lines().any(|l| l == "verdict: true"));
}
