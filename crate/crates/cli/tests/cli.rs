use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_comhnn"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn examples() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["examples", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let path = dir.path().to_path_buf();
    (dir, path)
}

fn file(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn examples_written() {
    let (_guard, dir) = examples();
    for name in ["gp.json", "gpprime.json", "gkm.json", "shortlex2.json"] {
        assert!(dir.join(name).is_file(), "{name}");
    }
}

#[test]
fn analyze_reports() {
    let (_guard, dir) = examples();
    let o = run(&["analyze", &file(&dir, "gp.json")]);
    assert!(o.status.success());
    let text = stdout(&o);
    for line in ["CAT(0): yes", "biautomatic: no", "residually finite: no"] {
        assert!(text.lines().any(|l| l == line), "{line} missing from\n{text}");
    }
}

#[test]
fn analyze_json_goldens() {
    let (_guard, dir) = examples();
    for g in ["gp", "gpprime", "gkm"] {
        let o = run(&["analyze", &file(&dir, &format!("{g}.json")), "--json"]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), golden(&format!("analyze_{g}.json")), "{g}");
    }
    let v: Value = serde_json::from_str(&golden("analyze_gpprime.json")).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["nonhopf"]["m"], 5);
    assert_eq!(v["nonhopf"]["k"], 6);
}

#[test]
fn plot_goldens() {
    let (_guard, dir) = examples();
    for g in ["gp", "gpprime", "gkm"] {
        let out = dir.join(format!("{g}.svg"));
        let o = run(&["plot", &file(&dir, &format!("{g}.json")), "-o", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
        let svg = std::fs::read_to_string(&out).unwrap();
        assert_eq!(svg, golden(&format!("plot_{g}.svg")), "{g}");
        assert_eq!(svg.matches("<circle").count(), 121);
    }
    assert!(golden("plot_gp.svg").contains(">arccos(3/5)<"));
    assert!(golden("plot_gkm.svg").contains(">arccos(1/4)<"));
}

#[test]
fn plot_rejects_non_cat0() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g42.json");
    std::fs::write(&path, r#"{"n": 2, "A": [[0, -1], [1, 2]], "Lprime": [[1, 0], [0, 2]]}"#).unwrap();
    let out = dir.path().join("g42.svg");
    let o = run(&["plot", path.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not CAT(0)"));
    assert!(!out.exists());
}

#[test]
fn word_problem() {
    let (_guard, dir) = examples();
    let gp = file(&dir, "gp.json");
    let o = run(&["word", &gp, "t a^2 b^-1 t^-1 b^-1 a^-2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "identity: yes\n");
    let o = run(&["word", &gp, "t a t^-1 a t a^-1 t^-1 a^-1", "--form", "--tree-length"]);
    let text = stdout(&o);
    assert!(text.starts_with("identity: no\n"), "{text}");
    assert!(text.contains("stable letters: 4"));
    let o = run(&["word", &gp, "a b^-1", "--euclid-sq", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["euclid_sq"], 2);
    let o = run(&["word", &gp, "q"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn witnesses() {
    let (_guard, dir) = examples();
    let o = run(&["witness", "nonhopf", &file(&dir, "gp.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("nontrivial kernel element: t a t^-1 a t a^-1 t^-1 a^-1"));
    let o = run(&["witness", "nonhopf", &file(&dir, "gpprime.json")]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["witness", "wise", "--n", "1", &file(&dir, "gp.json"), "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["h"], serde_json::json!([3, 4]));
}

#[test]
fn amalgam() {
    let (_guard, dir) = examples();
    let o = run(&["amalgam", &file(&dir, "gp.json"), "--verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("generators:") && !text.contains("FAIL"));
    let o = run(&["amalgam", &file(&dir, "gp.json"), "--nonsplit", "--verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("BS(1,-1)"));
    let o = run(&["amalgam", &file(&dir, "gp.json"), "--split", "--nonsplit"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn automata() {
    let (_guard, dir) = examples();
    let fsa = file(&dir, "shortlex2.json");
    let o = run(&["boundary", &fsa, "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["points"], serde_json::json!([[-1, 0], [0, -1], [0, 1], [1, 0]]));
    let o = run(&["fellow", &fsa, "--maxlen", "6"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("one-sided fellow traveller constant up to length 6: 2\n"));

    let d = tempfile::tempdir().unwrap();
    let loopy = d.path().join("loop.json");
    std::fs::write(
        &loopy,
        r#"{"n": 1, "alphabet": [{"name": "a", "vec": [1], "inverse": "A"}, {"name": "A", "vec": [-1], "inverse": "a"}],
            "states": 2, "initial": 0, "accepting": [0, 1], "transitions": [[0, "a", 1], [1, "A", 0]]}"#,
    )
    .unwrap();
    let o = run(&["boundary", loopy.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("label sum zero"), "{}", stderr(&o));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let d = tempfile::tempdir().unwrap();
    let bad = d.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 1, "A": [["1/2"]], "Lprime": [[1]]}"#).unwrap();
    let o = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not integral"), "{}", stderr(&o));
    std::fs::write(&bad, r#"{"n": 2, "A": [[1, 0], [0, "1/0"]], "Lprime": "maximal"}"#).unwrap();
    let o = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("A[1][1]"), "{}", stderr(&o));
    let o = run(&["analyze", d.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
