use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn region(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../regions")
        .join(format!("{name}.json"))
}

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peakpoint"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn analyze(name: &str, out: &Path) -> Vec<Vec<String>> {
    let r = region(name);
    let o = run(&["analyze", "--region", r.to_str().unwrap()], out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("boundary.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,y,class,ca,kd_center_x,kd_center_y,kd_radius"));
    lines.map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn analyze_square_rows_are_type_one() {
    let dir = tempfile::tempdir().unwrap();
    let rows = analyze("unit-square", dir.path());
    assert!(rows.len() >= 80);
    assert!(rows.iter().all(|r| r.len() == 7 && r[2] == "TypeI"));
    assert!(dir.path().join("boundary.svg").exists());
}

#[test]
fn analyze_mixed_rows() {
    let dir = tempfile::tempdir().unwrap();
    let rows = analyze("square-plus-segment", dir.path());
    let type2: Vec<_> = rows.iter().filter(|r| r[2] == "TypeII").collect();
    assert!(!type2.is_empty() && type2.len() < rows.len());
    for r in type2 {
        let y: f64 = r[1].parse().unwrap();
        assert_eq!(y, 0.0);
    }
}

#[test]
fn analyze_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    analyze("notched-square", a.path());
    analyze("notched-square", b.path());
    for f in ["boundary.csv", "boundary.svg"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap());
    }
}

#[test]
fn missing_region_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["analyze", "--region", "no/such/file.json"], dir.path());
    assert_eq!(code(&o), 3);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"pieces\": 3}").unwrap();
    assert_eq!(
        code(&run(&["analyze", "--region", bad.to_str().unwrap()], dir.path())),
        3
    );
}

#[test]
fn overlapping_pieces_are_an_invalid_region() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("overlap.json");
    fs::write(
        &p,
        r#"{"resolution":0.02,"pieces":[{"kind":"disk","center":[0,0],"radius":1},{"kind":"disk","center":[0.5,0],"radius":1}]}"#,
    )
    .unwrap();
    assert_eq!(code(&run(&["analyze", "--region", p.to_str().unwrap()], dir.path())), 4);
}

#[test]
fn kisspath_square_corners() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let r = region("unit-square");
    let args = [
        "kisspath",
        "--region",
        r.to_str().unwrap(),
        "--z1",
        "0,0",
        "--z2",
        "1,1",
    ];
    let o = run(&args, a.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let cert: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.path().join("kisspath.json")).unwrap()).unwrap();
    assert_eq!(cert["passed"], true);
    assert!(cert["certificate"]["min_clearance"].as_f64().unwrap() > 0.0);
    run(&args, b.path());
    for f in ["kisspath.json", "curve.json", "kisspath.svg"] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn kisspath_refusals() {
    let dir = tempfile::tempdir().unwrap();
    let r = region("unit-square");
    let r = r.to_str().unwrap();
    let same = run(&["kisspath", "--region", r, "--z1", "0,0", "--z2", "0,0"], dir.path());
    assert_eq!(code(&same), 2);
    let inside = run(
        &["kisspath", "--region", r, "--z1", "0.5,0.5", "--z2", "1,1"],
        dir.path(),
    );
    assert_eq!(code(&inside), 6);
    assert!(String::from_utf8_lossy(&inside.stderr).contains("maximum modulus principle"));
    let bad_point = run(&["kisspath", "--region", r, "--z1", "zero", "--z2", "1,1"], dir.path());
    assert_eq!(code(&bad_point), 2);
}

#[test]
fn peakfn_isolated_point() {
    let dir = tempfile::tempdir().unwrap();
    let r = region("square-segment-point");
    let o = run(&["peakfn", "--region", r.to_str().unwrap(), "--z0", "4,0"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("peakfn.json")).unwrap()).unwrap();
    assert_eq!(report["kind"], "Isolated");
    assert!(report["margin"].as_f64().unwrap() > 0.0);
    let seg = run(
        &["peakfn", "--region", r.to_str().unwrap(), "--z0", "2.5,0"],
        dir.path(),
    );
    assert_eq!(code(&seg), 6);
}

#[test]
fn peakfn_square_mid_edge() {
    let dir = tempfile::tempdir().unwrap();
    let r = region("unit-square");
    let o = run(
        &["peakfn", "--region", r.to_str().unwrap(), "--z0", "0.5,1"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("peakfn.txt")).unwrap();
    assert!(text.contains("margin m = "));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("peakfn.json")).unwrap()).unwrap();
    assert!(report["margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_all_skips_segment_points() {
    let dir = tempfile::tempdir().unwrap();
    let r = region("square-segment-point");
    let o = run(
        &["verify-all", "--region", r.to_str().unwrap(), "--points", "1"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let text = fs::read_to_string(dir.path().join("verify.txt")).unwrap();
    assert!(text.contains("SKIPPED"));
    assert!(text.contains("REFUSED"));
    assert!(text.contains("passed: true"));
    assert!(dir.path().join("verify.json").exists());
}
