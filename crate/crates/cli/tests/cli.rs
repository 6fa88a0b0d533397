use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.dl"))
}

fn dl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn infer_lists_positive_conclusions() {
    let out = dl(&["infer", path(&corpus("tweety")), "--logic", "partial_par"]);
    assert!(out.status.success());
    assert!(stdout(&out)
        .lines()
        .any(|l| l == "+partial_par ~fly(tweety)"));
}

#[test]
fn infer_json_is_one_object_per_tag() {
    let out = dl(&[
        "infer",
        path(&corpus("selfloop")),
        "--logic",
        "delta",
        "--json",
        "--undecided",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["tag"], "delta");
    assert_eq!(v["undecided"], serde_json::json!(["q"]));
    let out = dl(&[
        "infer",
        path(&corpus("selfloop")),
        "--logic",
        "all",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn query_prints_the_status() {
    let out = dl(&["query", path(&corpus("selfloop")), "--logic", "delta", "q"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "undecided\n");
    let out = dl(&[
        "query",
        path(&corpus("selfloop")),
        "--logic",
        "partial",
        "q",
    ]);
    assert_eq!(stdout(&out), "plus\n");
}

#[test]
fn pipeline_explains_the_route() {
    let out = dl(&[
        "pipeline",
        path(&corpus("tweety")),
        "--target",
        "partial",
        "--explain",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("route substitute"));
    assert!(text.contains("basis equiv-theorem"));
    let out = dl(&[
        "pipeline",
        path(&corpus("cascade")),
        "--target",
        "partial",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["provenance"]["route"], "preprocess");
}

#[test]
fn negative_query_mode() {
    let out = dl(&[
        "pipeline",
        path(&corpus("ambiguity")),
        "--target",
        "delta_ap",
        "--negative",
        "~q",
    ]);
    assert_eq!(stdout(&out), "definitely_not_plus\n");
    let out = dl(&[
        "pipeline",
        path(&corpus("tweety")),
        "--target",
        "delta_ap",
        "--negative",
        "fly(tweety)",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn compare_reports_the_difference() {
    let out = dl(&[
        "compare",
        path(&corpus("cascade")),
        "--logics",
        "partial_par,partial",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["only_right_plus"], serde_json::json!(["p"]));
}

#[test]
fn analyze_json_has_regimes() {
    let out = dl(&["analyze", path(&corpus("tweety")), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["hierarchical"], true);
    assert_eq!(v["regimes"].as_array().unwrap().len(), 6);
}

#[test]
fn gen_then_parse_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.dl");
    let out = dl(&[
        "gen",
        "--shape",
        "hierarchical",
        "--atoms",
        "10",
        "--rules",
        "20",
        "--seed",
        "7",
        "-o",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&file).unwrap();
    let parsed = dl(&["parse", file.to_str().unwrap()]);
    assert_eq!(stdout(&parsed), written);
}

#[test]
fn bench_counts_match_infer() {
    let out = dl(&["bench", path(&corpus("tweety")), "--repeat", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let tags = v["tags"].as_array().unwrap();
    assert_eq!(tags.len(), 10);
    let lambda = tags.iter().find(|t| t["tag"] == "lambda").unwrap();
    let infer = dl(&["infer", path(&corpus("tweety")), "--logic", "lambda"]);
    let plus = stdout(&infer)
        .lines()
        .filter(|l| l.starts_with('+'))
        .count();
    assert_eq!(lambda["plus"], plus);
    let generated = dl(&["bench", "--atoms", "6", "--rules", "10", "--repeat", "1"]);
    assert!(generated.status.success());
}

#[test]
fn diagnostics_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.dl");
    std::fs::write(&file, "r: => p\ns: q =>\n").unwrap();
    let out = dl(&["parse", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        dl(&["infer", "x.dl", "--logic", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dl(&["compare", "x.dl", "--logics", "partial"])
            .status
            .code(),
        Some(2)
    );
}
