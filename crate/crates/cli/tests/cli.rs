use std::io::Write;
use std::process::{Command, Output, Stdio};

use profile_galois::{CattellProfile, Signature, SzondiProfile, TraitValue};
use profile_galois_cli::Document;
use proptest::prelude::*;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_profile-galois");

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn fives_with_le(le: i64) -> String {
    let mut f = CattellProfile::uniform(TraitValue::new(5).unwrap());
    f.set(profile_galois::TraitId::LE, TraitValue::new(le).unwrap());
    Document::Ppp(f).to_json()
}

#[test]
fn right_pins_every_factor_to_zero() {
    let out = run(&["right", "--enumerate", "5"], &fives_with_le(9));
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["type"], "spp_box");
    assert_eq!(doc["cardinality"], "1");
    assert_eq!(doc["allowed"]["hy"], serde_json::json!(["0"]));
    assert_eq!(doc["sample"].as_array().unwrap().len(), 1);
    let member = Document::from_value(&doc["sample"][0], "").unwrap();
    assert_eq!(
        member,
        Document::Spp(SzondiProfile::uniform(Signature::Zero))
    );
}

#[test]
fn right_reports_the_emptying_factor() {
    let doc = json(&run(&["right"], &fives_with_le(5)));
    assert_eq!(doc["cardinality"], "0");
    assert_eq!(doc["allowed"]["s"], serde_json::json!([]));
    assert_eq!(doc["allowed"]["h"], serde_json::json!(["0"]));
}

#[test]
fn left_of_all_zero_profile() {
    let input = Document::Spp(SzondiProfile::uniform(Signature::Zero)).to_json();
    let doc = json(&run(&["left"], &input));
    assert_eq!(doc["allowed"]["LE"], serde_json::json!([9, 10]));
    assert_eq!(doc["allowed"]["A"], serde_json::json!([5, 6]));
    assert_eq!(doc["cardinality"], (1u128 << 28).to_string());
    assert!(doc.get("explanation").is_none());
}

#[test]
fn files_in_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.json");
    let output = dir.path().join("out.json");
    std::fs::write(&input, fives_with_le(9)).unwrap();
    let out = run(
        &[
            "right",
            "--in",
            input.to_str().unwrap(),
            "--out",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(doc["cardinality"], "1");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["right"], "{").status.code(), Some(1));
    assert_eq!(
        run(&["right"], r#"{"type":"ppp","traits":{}}"#)
            .status
            .code(),
        Some(1)
    );
    let spp = Document::Spp(SzondiProfile::uniform(Signature::Zero)).to_json();
    assert_eq!(run(&["right"], &spp).status.code(), Some(1));
    assert_eq!(run(&["left"], &fives_with_le(9)).status.code(), Some(1));
    assert_eq!(run(&["check", "--trials", "x"], "").status.code(), Some(1));
    assert_eq!(
        run(&["right", "--in", "/no/such/file"], "").status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["table", "dump", "--out", "/no/such/dir/t.csv"], "")
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn check_passes_and_detects_corruption() {
    let ok = run(&["check", "--trials", "100", "--seed", "42"], "");
    assert_eq!(ok.status.code(), Some(0));
    let text = String::from_utf8(ok.stdout).unwrap();
    assert!(text.ends_with("16 suites, 0 failed (seed 42)\n"), "{text}");

    let empty = run(&["check", "--trials", "0"], "");
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(empty.stdout).unwrap(),
        "0 suites, 0 failed (seed 42)\n"
    );

    let bad = run(
        &[
            "check",
            "--trials",
            "20",
            "--inject-corruption",
            "A,4,(atom h -!)",
        ],
        "",
    );
    assert_eq!(bad.status.code(), Some(2));
    let text = String::from_utf8(bad.stdout).unwrap();
    assert!(text.contains("FAIL column-collapse"), "{text}");
    assert!(text.contains("(A,4) = (atom h -!)"), "{text}");

    let unusable = run(
        &[
            "check",
            "--inject-corruption",
            "A,4,(or (atom h -) (atom s -))",
        ],
        "",
    );
    assert_eq!(unusable.status.code(), Some(1));
}

#[test]
fn commands_are_deterministic() {
    for args in [
        vec!["check", "--trials", "60", "--seed", "5"],
        vec!["find-empty", "--samples", "300", "--seed", "5"],
    ] {
        let a = run(&args, "");
        let b = run(&args, "");
        let c = run(&[&["--sequential"][..], &args].concat(), "");
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stdout, c.stdout);
    }
}

#[test]
fn find_empty_reports_conflicts() {
    let out = run(&["find-empty", "--samples", "10000", "--show", "1"], "");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let count: u64 = text
        .lines()
        .find_map(|l| l.strip_prefix("empty right polarity: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(count > 0);
    assert!(text.contains(" vs "), "{text}");
}

#[test]
fn table_dump_rows() {
    let out = run(&["table", "dump"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 281);
    assert_eq!(lines[0], "trait,value,formula");
    assert_eq!(lines[1], "A,1,(atom h -!!)");
}

#[test]
fn global_factors_respect_reversal_mode() {
    let spp = Document::Spp(profile_galois::norm_profile()).to_json();
    let ok = run(&["global", "--value", "3"], &spp);
    assert!(ok.status.success());
    assert_eq!(String::from_utf8(ok.stdout).unwrap().lines().count(), 5);
    assert_eq!(
        run(&["global", "--value", "10"], &spp).status.code(),
        Some(1)
    );
    assert!(
        run(&["global", "--value", "10", "--corrected-reversal"], &spp)
            .status
            .success()
    );
}

fn signature() -> impl Strategy<Value = Signature> {
    (0..Signature::COUNT).prop_map(|i| Signature::from_index(i).unwrap())
}

fn spp() -> impl Strategy<Value = SzondiProfile> {
    prop::array::uniform8(signature()).prop_map(SzondiProfile::new)
}

fn ppp() -> impl Strategy<Value = CattellProfile> {
    prop::collection::vec(1i64..=10, 28).prop_map(|vs| {
        CattellProfile::new(std::array::from_fn(|i| TraitValue::new(vs[i]).unwrap()))
    })
}

fn document() -> impl Strategy<Value = Document> {
    prop_oneof![
        ppp().prop_map(Document::Ppp),
        spp().prop_map(Document::Spp),
        prop::collection::vec(ppp(), 0..4).prop_map(Document::PppSet),
        prop::collection::vec(spp(), 0..4).prop_map(Document::SppSet),
    ]
}

proptest! {
    #[test]
    fn documents_round_trip(doc in document()) {
        prop_assert_eq!(Document::parse(&doc.to_json()).unwrap(), doc);
    }
}
