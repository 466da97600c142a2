use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwrithe")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn writhe_summaries() {
    for (file, line) in [
        ("model_minus.jsonl", "Cw = -1; 1 crossing (-1); 0 solitary"),
        ("model_plus.jsonl", "Cw = -1; 0 crossings; 1 solitary (-1)"),
        ("conic.jsonl", "Cw = 0; empty diagram"),
    ] {
        let o = run(&["writhe", path(&data(file)), "--center", "0:0:1:0"]);
        assert_eq!(o.status.code(), Some(0), "{file}");
        assert_eq!(stdout(&o).lines().next(), Some(line));
    }
}

#[test]
fn oriented_link_reports_linking() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = run(&["writhe", path(&data("hopf.jsonl")), "--seed", "2", "--json", path(&report)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("oriented Cw = "));
    assert!(out.contains("linking [0 "));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    let lk = v["linking"][0][1].as_str().unwrap();
    assert!(lk == "1" || lk == "-1");
    assert_eq!(v["unoriented"], 0);
}

#[test]
fn verify_passes_on_the_model() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("v.json");
    let o = run(&["verify", path(&data("model_minus.jsonl")), "--centers", "5", "--isotopies", "3", "--json", path(&report)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: pass"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["runs"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_output_is_reproducible() {
    let file = data("model_plus.jsonl");
    let args = ["verify", path(&file), "--centers", "3", "--isotopies", "2", "--seed", "9"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn singular_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let nodal = dir.path().join("nodal.jsonl");
    std::fs::write(&nodal, "{\"x\": [-1, 0, 1], \"y\": [0, -1, 0, 1], \"z\": [0], \"w\": [1]}\n").unwrap();
    let o = run(&["verify", path(&nodal)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("real singular point"));

    let zero = dir.path().join("zero.jsonl");
    std::fs::write(&zero, "{\"x\": [0], \"y\": [0], \"z\": [0], \"w\": [0]}\n").unwrap();
    assert_eq!(run(&["writhe", path(&zero)]).status.code(), Some(2));
    assert_eq!(run(&["writhe", path(&data("model_minus.jsonl")), "--center", "1:2"]).status.code(), Some(2));
    // the center lies on the curve
    assert_eq!(run(&["writhe", path(&data("model_minus.jsonl")), "--center", "0:0:1:1"]).status.code(), Some(2));
}

#[test]
fn family_verification() {
    let o = run(&["verify", path(&data("quartic_node_family.jsonl"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tau = 0: singular"));

    // a grid that steps over the singular member without sampling it
    let dir = tempfile::tempdir().unwrap();
    let coarse = dir.path().join("coarse.jsonl");
    let text = std::fs::read_to_string(data("quartic_node_family.jsonl")).unwrap();
    let body: Vec<&str> = text.lines().skip(1).collect();
    std::fs::write(&coarse, format!("{{\"parameter\": \"tau\", \"grid\": [\"-1/8\", \"1/8\"]}}\n{}\n", body.join("\n"))).unwrap();
    let o = run(&["verify", path(&coarse)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("family jumps: FAIL"));
}

#[test]
fn sample_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let o = run(&["sample", "--degree", "3", "--count", "5", "--seed", "1", "--out", path(dir.path())]);
        assert_eq!(o.status.code(), Some(0));
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 5);
    for n in &names {
        let x = std::fs::read(a.path().join(n)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(n)).unwrap());
        let o = run(&["writhe", path(&a.path().join(n))]);
        assert_eq!(o.status.code(), Some(0));
        let first = stdout(&o);
        assert!(first.starts_with("Cw = 1;") || first.starts_with("Cw = -1;"));
    }
    let lines = tempfile::tempdir().unwrap();
    let o = run(&["sample", "--degree", "1", "--count", "2", "--out", path(lines.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["sample", "--degree", "0", "--out", path(lines.path())]).status.code(), Some(2));
}

#[test]
fn diagram_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.svg");
    let o = run(&["diagram", path(&data("model_plus.jsonl")), "--out", path(&out), "--center", "0:0:1:0"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("Solitary components (0, 0) sign -1"));
    assert!(svg.contains("\u{2212}1"));
}
