//! The command line: outputs, formats and exit codes.

use cbdiv::cli::{run, OutputRecord, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cbdiv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> OutputRecord {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = call(&full);
    assert_eq!(code, EXIT_OK, "{err}");
    OutputRecord::from_json(&out).unwrap()
}

#[test]
fn rank_with_shorthand() {
    let r = json(&["rank", "--level", "3", "--weights", "1x15,3"]);
    assert_eq!(r.outputs["rank"], "377");
    assert!(r.verdicts["algorithms_agree"].holds);
}

#[test]
fn intersect_on_sixteen_points() {
    let r = json(&["intersect", "--level", "2", "--n", "16", "--fcurve", "1,1,2,12"]);
    assert_eq!(r.outputs["intersection"], "32");
}

#[test]
fn class_of_d1_on_six_points() {
    let r = json(&["class", "--level", "1", "--n", "6"]);
    assert_eq!(r.outputs["B2"], "2/5");
    assert_eq!(r.outputs["B3"], "1/5");
    let closed = json(&["class", "--level", "g", "--n", "12", "--closed-form"]);
    assert_eq!(closed.outputs["B6"], "15/11");
    assert!(closed.verdicts["matches_general_formula"].holds);
}

#[test]
fn odd_n_class_is_zero_with_a_note() {
    let r = json(&["class", "--level", "2", "--n", "9"]);
    assert!(r.outputs["note"].contains("odd"));
    assert!(r.outputs.iter().filter(|(k, _)| k.starts_with('B')).all(|(_, v)| v == "0"));
}

#[test]
fn deg4_and_rank_table() {
    assert_eq!(json(&["deg4", "--level", "2", "--mu", "2,2,2,2"]).outputs["degree"], "2");
    let t = json(&["rank-table", "--level", "3", "--max-j", "15"]);
    assert_eq!(t.outputs["r(15,3)"], "377");
    assert!(t.verdicts["algorithms_agree"].holds);
}

#[test]
fn nef_face_logcan_and_pullbacks() {
    let f = json(&["nef-face", "--level", "5", "--n", "12"]);
    assert!(f.verdicts["extremal_ray"].holds);
    let l = json(&["logcan", "--level", "2", "--n", "12"]);
    assert_eq!(l.outputs["c"], "6");
    assert!(!json(&["logcan", "--level", "1", "--n", "12"]).verdicts["log_canonical"].holds);
    let h = json(&["pullback", "h", "--genus", "4", "--divisor", "lambda"]);
    assert_eq!(h.outputs["D1_over_pullback"], "2");
    let explicit = json(&["pullback", "h", "--genus", "4", "--a", "1", "--b", "0,0,0"]);
    assert_eq!(explicit.outputs, h.outputs);
    let flag = json(&["pullback", "flag", "--genus", "2", "--a", "0", "--b", "0,1,0,1"]);
    assert_eq!(flag.outputs["D1_over_pullback"], "1/4");
}

#[test]
fn fdiv_check_modes() {
    let r = json(&["fdiv-check", "--genus", "4", "--tag", "g-1"]);
    assert!(r.verdicts.values().all(|v| v.holds));
    let raw = json(&["fdiv-check", "--genus", "2", "--a", "11", "--boundary", "1,0,1,1"]);
    assert!(!raw.verdicts["condition_4"].holds);
}

#[test]
fn formats_encode_the_same_record() {
    let args = ["class", "--level", "1", "--n", "6"];
    let r = json(&args);
    let reparsed = OutputRecord::from_json(&r.to_json()).unwrap();
    assert_eq!(reparsed, r);

    let (_, csv, _) = call(&[&args[..], &["--format", "csv"]].concat());
    assert!(csv.starts_with("section,key,value,witness\n"));
    assert!(csv.contains("output,B2,2/5,"));
    let (_, pretty, _) = call(&args);
    assert!(pretty.lines().any(|l| l.trim_start().starts_with("B2") && l.ends_with("= 2/5")));
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["rank", "--level", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["rank", "--level", "2", "--weights", "1,a"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    let (code, _, err) = call(&["rank", "--level", "2", "--weights", "3,1"]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert!(err.contains("exceeds level"));
    assert_eq!(call(&["class", "--level", "g", "--n", "12", "--closed-form", "--format", "json"]).0, EXIT_OK);
    assert_eq!(call(&["class", "--level", "7", "--n", "8", "--closed-form"]).0, EXIT_PRECONDITION);
    assert_eq!(call(&["fdiv-check", "--genus", "4", "--tag", "3"]).0, EXIT_PRECONDITION);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn verify_paper_reports_the_failing_family() {
    let (code, out, _) = call(&["verify-paper", "--format", "json"]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    let r = OutputRecord::from_json(&out).unwrap();
    let failing: Vec<&String> = r.verdicts.iter().filter(|(_, v)| !v.holds).map(|(k, _)| k).collect();
    assert_eq!(failing, ["independent curve families"]);
    assert_eq!(r.citations.len(), r.verdicts.len());
    // Deterministic across runs.
    assert_eq!(call(&["verify-paper", "--format", "json"]).1, out);
}

#[test]
fn cache_file_round_trip() {
    let path = std::env::temp_dir().join(format!("cbdiv-cache-{}.json", std::process::id()));
    let _ = std::fs::remove_file(&path);
    let p = path.to_str().unwrap();
    assert_eq!(call(&["rank", "--level", "3", "--weights", "1x9,3", "--cache", p]).0, EXIT_OK);
    let saved = std::fs::read_to_string(&path).unwrap();
    assert!(saved.starts_with('['));
    assert_eq!(call(&["rank", "--level", "3", "--weights", "1x9,3", "--cache", p]).0, EXIT_OK);
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(call(&["rank", "--level", "3", "--weights", "1,1", "--cache", p]).0, EXIT_PRECONDITION);
    std::fs::remove_file(&path).unwrap();
}
