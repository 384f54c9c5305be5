use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sarcaze(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sarcaze"))
        .args(args)
        .env_remove("SARCAZE_SEED")
        .output()
        .expect("binary runs")
}

fn synth(dir: &Path) {
    let out = sarcaze(&[
        "synth",
        "--out",
        dir.to_str().unwrap(),
        "--sentences",
        "120",
        "--sarcastic",
        "42",
        "--participants",
        "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn corpus_args(dir: &Path) -> Vec<String> {
    vec![
        "--sentences".into(),
        dir.join("sentences.csv").display().to_string(),
        "--fixations".into(),
        dir.join("fixations.csv").display().to_string(),
        "--lexicons".into(),
        dir.join("lexicons").display().to_string(),
    ]
}

fn run(cmd: &str, dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec![cmd.to_string()];
    args.extend(corpus_args(dir));
    args.extend(extra.iter().map(|s| s.to_string()));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    sarcaze(&refs)
}

#[test]
fn synth_then_crossval_emits_json_report() {
    let tmp = tempfile::tempdir().unwrap();
    synth(tmp.path());
    let out = run(
        "crossval",
        tmp.path(),
        &["--config", "gaze", "--classifier", "logreg", "--k", "5"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["k"], 5);
    assert_eq!(report["predictions"].as_array().unwrap().len(), 120);
    let f = report["metrics"]["weighted"]["f1"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&f));
}

#[test]
fn crossval_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    synth(tmp.path());
    let args = ["--config", "gaze+sarcasm", "--classifier", "milr", "--k", "3", "--unigram-k", "5"];
    let a = run("crossval", tmp.path(), &args);
    let b = run("crossval", tmp.path(), &args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gaze_config_without_fixations_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    synth(tmp.path());
    let sentences = tmp.path().join("sentences.csv");
    let out = sarcaze(&["crossval", "--sentences", sentences.to_str().unwrap(), "--config", "gaze"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--fixations"));
}

#[test]
fn unknown_config_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    synth(tmp.path());
    let out = run("crossval", tmp.path(), &["--config", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_csv_is_a_data_error() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("sentences.csv");
    std::fs::write(&bad, "sentence_id,label,text\n1,7,hello\n").unwrap();
    let out = sarcaze(&["validate", "--sentences", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ttest_table_lists_every_participant() {
    let tmp = tempfile::tempdir().unwrap();
    synth(tmp.path());
    let out = run("ttest", tmp.path(), &["--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for p in ["P1", "P2", "P3"] {
        assert!(text.lines().any(|l| l.starts_with(p)), "{text}");
    }
}

#[test]
fn train_then_predict_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    synth(tmp.path());
    let model = tmp.path().join("model.json");
    let out = run(
        "train",
        tmp.path(),
        &["--config", "gaze", "--classifier", "gnb", "--out", model.to_str().unwrap()],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run("predict", tmp.path(), &["--model", model.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["predictions"].as_array().unwrap().len(), 120);
}

#[test]
fn features_csv_header_uses_feature_names() {
    let tmp = tempfile::tempdir().unwrap();
    synth(tmp.path());
    let out = run("features", tmp.path(), &["--config", "gaze", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("sentence_id,label,RED,LEN,FDUR"), "{header}");
    assert_eq!(text.lines().count(), 121);
}

#[test]
fn compare_self_pair_is_not_significant() {
    let tmp = tempfile::tempdir().unwrap();
    synth(tmp.path());
    let out = run(
        "compare",
        tmp.path(),
        &["--run", "gnb:gaze", "--run", "gnb:gaze", "--k", "3"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let m = &v["pairs"][0]["mcnemar"];
    assert_eq!(m["p"].as_f64(), Some(1.0));
    assert_eq!(m["significant"], false);
}

#[test]
fn ablation_writes_csv_and_svg() {
    let tmp = tempfile::tempdir().unwrap();
    synth(tmp.path());
    let dir = tmp.path().join("abl");
    let out = run(
        "ablation",
        tmp.path(),
        &["--config", "gaze", "--classifier", "logreg", "--out", dir.to_str().unwrap()],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.join("ablation.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(std::fs::read_to_string(dir.join("ablation.svg")).unwrap().starts_with("<svg"));
}

#[test]
fn render_missing_trial_is_a_data_error() {
    let tmp = tempfile::tempdir().unwrap();
    synth(tmp.path());
    let out = run("render", tmp.path(), &["--sentence-id", "1", "--participant", "P99"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run("render-graph", tmp.path(), &["--sentence-id", "1", "--participant", "P1"]);
    assert!(out.status.success());
    assert!(out.stdout.starts_with(b"<svg"));
}

#[test]
fn help_exits_zero() {
    assert!(sarcaze(&["--help"]).status.success());
    assert_eq!(sarcaze(&["no-such-command"]).status.code(), Some(1));
}
