use std::path::PathBuf;
use std::process::{Command, Output};

fn treeconj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treeconj"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("treeconj-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn conj_reports_witness() {
    let out = treeconj(&["conj", "--n", "2", "--H", "(1,3)(2,4)", "--G", "(1,4)(2,3)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("elementwise true"), "{text}");
    assert!(text.contains("global      true"), "{text}");
    assert!(text.contains("witness     (1,2)"), "{text}");
}

#[test]
fn conj_jsonl_is_a_pair_record() {
    let out = treeconj(&[
        "conj", "--n", "2", "--H", "(1,3)(2,4)", "--G", "(1,4)(2,3)", "--format", "jsonl",
    ]);
    let line: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(line["verdict"], "P_HOLDS");
    assert_eq!(line["witness"], "10");
}

#[test]
fn group_order() {
    let out = treeconj(&["group", "--n", "2", "--gens", "(1,3,2,4),(1,2)", "--show", "order"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "8");
}

#[test]
fn elem_multiply() {
    let out = treeconj(&["elem", "--n", "2", "(1,2)", "(3,4)", "--op", "multiply"]);
    assert!(stdout(&out).contains("cycles    (1,2)(3,4)"));
}

#[test]
fn markov_order() {
    let out = treeconj(&["markov", "--n", "3"]);
    assert!(stdout(&out).contains("order      64"));
}

#[test]
fn exhaustive_theorem_sweep_exits_zero() {
    let out = treeconj(&["sweep", "theorem", "--n", "3", "--exhaustive", "--jobs", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn sweep_writes_report_and_replays() {
    let dir = scratch("replay");
    let root = dir.to_str().unwrap();
    let out = treeconj(&["sweep", "conjecture", "--n", "2", "--out", root]);
    assert_eq!(out.status.code(), Some(0));
    let exp_dir = dir.join("conjecture");
    assert!(exp_dir.join("summary.json").exists());
    let report = std::fs::read_dir(&exp_dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|e| e == "jsonl"))
        .expect("jsonl report");

    let ok = treeconj(&["replay", report.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));

    let text = std::fs::read_to_string(&report).unwrap();
    let tampered: String = text
        .lines()
        .map(|l| {
            if l.contains("\"kind\":\"pair\"") && l.contains("\"global\":true") {
                l.replacen("\"global\":true", "\"global\":false", 1)
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    assert_ne!(tampered, text.trim_end());
    let bad = dir.join("tampered.jsonl");
    std::fs::write(&bad, tampered).unwrap();
    let out = treeconj(&["replay", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("mismatch"));
}

#[test]
fn replay_flags_tampered_witness() {
    let dir = scratch("witness");
    let out = treeconj(&[
        "conj", "--n", "2", "--H", "(1,3)(2,4)", "--G", "(1,4)(2,3)", "--format", "jsonl",
    ]);
    let good = dir.join("good.jsonl");
    let bad = dir.join("bad.jsonl");
    std::fs::write(&good, stdout(&out)).unwrap();
    std::fs::write(&bad, stdout(&out).replace("\"witness\":\"10\"", "\"witness\":\"11\"")).unwrap();
    assert_eq!(treeconj(&["replay", good.to_str().unwrap()]).status.code(), Some(0));
    let out = treeconj(&["replay", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_file_sweep() {
    let dir = scratch("config");
    let cfg = dir.join("sweep.cfg");
    std::fs::write(
        &cfg,
        "# sampled theorem run\nexperiment = theorem\ndepth = 4\nmode = sampled\nsamples = 50\nseed = 3\n",
    )
    .unwrap();
    let out = treeconj(&["sweep", "theorem", "--config", cfg.to_str().unwrap(), "--format", "jsonl"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let first: serde_json::Value =
        serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(first["kind"], "header");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(treeconj(&["conj", "--n", "2"]).status.code(), Some(1));
    assert_eq!(treeconj(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        treeconj(&["group", "--n", "2", "--gens", "(1,5)"]).status.code(),
        Some(1)
    );
    assert_eq!(treeconj(&["--help"]).status.code(), Some(0));
}
