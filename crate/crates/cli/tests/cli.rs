use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn pathtri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathtri"))
        .args(args)
        .env_remove("PATHTRI_SEED")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn triangle_report(dir: &TempDir) -> String {
    let pts = write(
        dir.path(),
        "pts.json",
        r#"{"points": [[0, 0], [2, 0], [1, 2]], "labels": ["a", "b", "c"]}"#,
    );
    let tri = dir.path().join("tri.json");
    let out = pathtri(&[
        "triangulate",
        "--input",
        &pts,
        "--output",
        tri.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    tri.to_str().unwrap().to_string()
}

#[test]
fn three_points_triangulate() {
    let dir = TempDir::new().unwrap();
    let pts = write(
        dir.path(),
        "pts.json",
        r#"{"points": [[0, 0], [2, 0], [1, 2]]}"#,
    );
    let out = pathtri(&["triangulate", "--input", &pts]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["schema_version"], "1.0");
    assert_eq!(v["command"], "triangulate");
    assert_eq!(v["payload"]["triangles"].as_array().unwrap().len(), 1);
    assert_eq!(v["payload"]["edges"].as_array().unwrap().len(), 3);
    assert_eq!(
        v["payload"]["edges"][0]["samples"]
            .as_array()
            .unwrap()
            .len(),
        16
    );
}

#[test]
fn coordinates_use_six_decimals() {
    let dir = TempDir::new().unwrap();
    let pts = write(
        dir.path(),
        "pts.json",
        r#"{"points": [[0, 0], [2, 0], [1, 2]]}"#,
    );
    let out = pathtri(&["triangulate", "--input", &pts]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2.000000"));
    assert!(!text.contains("-0.000000"));
    assert!(text.ends_with("}\n"));
}

#[test]
fn cover_check_on_single_triangle() {
    let dir = TempDir::new().unwrap();
    let tri = triangle_report(&dir);
    let out = pathtri(&["cover-check", "--input", &tri]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["payload"]["covers"], true);
    assert_eq!(v["payload"]["intersections_ok"], true);
    assert_eq!(v["payload"]["nerve_count"], 3);
}

#[test]
fn too_few_points_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let pts = write(dir.path(), "pts.json", r#"{"points": [[0, 0], [1, 1]]}"#);
    let out = pathtri(&["triangulate", "--input", &pts]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("need at least 3 points"),
        "{}",
        stderr(&out)
    );
    assert!(out.stdout.is_empty());
}

#[test]
fn collinear_points_are_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let pts = write(
        dir.path(),
        "pts.json",
        r#"{"points": [[0, 0], [1, 1], [2, 2]]}"#,
    );
    assert_eq!(
        pathtri(&["triangulate", "--input", &pts]).status.code(),
        Some(1)
    );
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = pathtri(&["triangulate", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--bogus"));
}

#[test]
fn help_exits_cleanly() {
    let out = pathtri(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("collapse-cone"));
}

#[test]
fn schema_violations_exit_two() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (
            "extra.json",
            r#"{"points": [[0, 0], [2, 0], [1, 2]], "weights": [1, 2, 3]}"#,
        ),
        ("short.json", r#"{"points": [[0, 0], [2, 0], [1]]}"#),
        (
            "labels.json",
            r#"{"points": [[0, 0], [2, 0], [1, 2]], "labels": ["a"]}"#,
        ),
        ("garbage.json", "not json"),
    ];
    for (name, text) in cases {
        let pts = write(dir.path(), name, text);
        let out = pathtri(&["triangulate", "--input", &pts]);
        assert_eq!(out.status.code(), Some(2), "{name}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error: "));
    }
}

#[test]
fn missing_input_exits_two() {
    let out = pathtri(&["triangulate", "--input", "/nonexistent/points.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn triangulation_report_round_trips() {
    let dir = TempDir::new().unwrap();
    let tri = triangle_report(&dir);
    let text = fs::read_to_string(&tri).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["payload"]["labels"], serde_json::json!(["a", "b", "c"]));
    for cmd in ["cycles", "present", "nerve", "cover-check", "collapse-seq"] {
        let out = pathtri(&[cmd, "--input", &tri]);
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", stderr(&out));
        assert_eq!(json(&out)["command"], cmd);
    }
}

#[test]
fn tampered_report_is_rejected() {
    let dir = TempDir::new().unwrap();
    let tri = triangle_report(&dir);
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&tri).unwrap()).unwrap();
    v["payload"]["triangles"][0][2] = serde_json::json!(7);
    let bad = write(dir.path(), "bad.json", &v.to_string());
    let out = pathtri(&["cover-check", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));

    let mut v: Value = serde_json::from_str(&fs::read_to_string(&tri).unwrap()).unwrap();
    v["payload"]["adjacency"][0]["degree"] = serde_json::json!(5);
    let bad = write(dir.path(), "adj.json", &v.to_string());
    assert_eq!(pathtri(&["nerve", "--input", &bad]).status.code(), Some(2));
}

#[test]
fn present_system_reports_realization() {
    let dir = TempDir::new().unwrap();
    let tri = triangle_report(&dir);
    let out = pathtri(&["present", "--input", &tri, "--system"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["payload"]["stars"].as_array().unwrap().len(), 3);
    assert_eq!(v["payload"]["realization"]["full"]["cycles_recovered"], 1);
    assert_eq!(v["payload"]["realization"]["full"]["vertices_hit"], 3);
}

#[test]
fn unknown_generator_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let tri = triangle_report(&dir);
    let out = pathtri(&["present", "--input", &tri, "--generator", "9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn collapse_sequence_ends_at_one_vertex() {
    let dir = TempDir::new().unwrap();
    let tri = triangle_report(&dir);
    let v = json(&pathtri(&["collapse-seq", "--input", &tri]));
    let steps = v["payload"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    assert_eq!(steps[0]["kind"], "face");
    assert_eq!(v["payload"]["terminal"], 0);
    assert_eq!(v["payload"]["stages"], 4);
}

#[test]
fn cone_collapse_with_negative_coordinates() {
    let dir = TempDir::new().unwrap();
    let svg: PathBuf = dir.path().join("cone.svg");
    let out = pathtri(&[
        "collapse-cone",
        "--apex",
        "-1,3",
        "--base",
        "-3,0,2,-1",
        "--fibers",
        "20",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["payload"]["fiber_count"], 20);
    assert_eq!(v["payload"]["kind"], "straight");
    assert!(fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn degenerate_cone_is_a_domain_error() {
    let out = pathtri(&[
        "collapse-cone",
        "--apex",
        "1,0",
        "--base",
        "0,0,2,0",
        "--fibers",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = pathtri(&[
        "collapse-cone",
        "--apex",
        "1,1",
        "--base",
        "0,0,2",
        "--fibers",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sphere_collapse_is_round() {
    let out = pathtri(&[
        "collapse-sphere",
        "--center",
        "0,0",
        "--radius",
        "2",
        "--angles",
        "0,120,240",
        "--fibers",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["payload"]["kind"], "round");
    assert_eq!(v["payload"]["circle"]["radius"], 2.0);
    let out = pathtri(&[
        "collapse-sphere",
        "--center",
        "0,0",
        "--radius",
        "2",
        "--angles",
        "0,30,60",
        "--fibers",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn class_representatives_follow_the_seed() {
    let dir = TempDir::new().unwrap();
    let pts = write(
        dir.path(),
        "pts.json",
        r#"{"points": [[0, 0], [4, 0], [1, 3], [3, 3]]}"#,
    );
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_pathtri"));
        cmd.args(["triangulate", "--input", &pts, "--class-reps", "3"]);
        match seed {
            Some(s) => cmd.env("PATHTRI_SEED", s),
            None => cmd.env_remove("PATHTRI_SEED"),
        };
        cmd.output().unwrap()
    };
    let a = run(None);
    let b = run(None);
    let c = run(Some("7"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let v: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["payload"]["seed"], 7);
    assert_eq!(
        v["payload"]["classes"][0]["representatives"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
    assert_eq!(run(Some("x")).status.code(), Some(2));
}

#[test]
fn nerve_modes() {
    let dir = TempDir::new().unwrap();
    let pts = write(
        dir.path(),
        "pts.json",
        r#"{"points": [[0, 0], [4, 0], [4, 4], [0, 4], [2, 2]]}"#,
    );
    let tri = dir.path().join("tri.json");
    let tri = tri.to_str().unwrap();
    assert_eq!(
        pathtri(&["triangulate", "--input", &pts, "--output", tri])
            .status
            .code(),
        Some(0)
    );
    let census = json(&pathtri(&["nerve", "--input", tri]));
    assert_eq!(census["payload"]["count"], 5);
    assert_eq!(census["payload"]["mnc"], 4);
    let mnc = json(&pathtri(&["nerve", "--input", tri, "--mnc"]));
    assert_eq!(mnc["payload"]["nerves"][0]["count"], 4);
    let one = json(&pathtri(&["nerve", "--input", tri, "--vertex", "0"]));
    assert_eq!(one["payload"]["nerves"][0]["nucleus"], 0);
    assert_eq!(
        pathtri(&["nerve", "--input", tri, "--vertex", "0", "--mnc"])
            .status
            .code(),
        Some(2)
    );
}
