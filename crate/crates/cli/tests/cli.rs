use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use postnikov_cli::{
    check_certificate, cmd_bench, cmd_cohomology, cmd_decide, cmd_susp_group, cmd_tower_info, read_certificate,
    BenchTable, CertificateDoc, InstanceArgs, SuspReport,
};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_postnikov"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// `S² -> K(Z,2)` with value `m` on the 2-simplex.
fn sphere_map(dir: &Path, name: &str, m: i64) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, format!(r#"{{"coords": [[], [["e", [{m}]]]]}}"#)).unwrap();
    path
}

fn args(tower: &str, pair: &str) -> InstanceArgs {
    InstanceArgs { tower: tower.into(), pair: pair.into(), base_map: None, stage_cap: None }
}

#[test]
fn equal_maps_are_homotopic_with_a_checked_certificate() {
    let dir = TempDir::new().unwrap();
    let f = sphere_map(dir.path(), "f.json", 1);
    let cert = dir.path().join("cert.json");
    let out = run(&[
        "decide", "--tower", "K(Z,2)", "--pair", "S2", "--map-f", f.to_str().unwrap(), "--map-g",
        f.to_str().unwrap(), "--out", cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).starts_with("HOMOTOPIC"));
    let doc = read_certificate(&cert).unwrap();
    check_certificate(&doc).unwrap();
    let check = run(&["check", "--verify", cert.to_str().unwrap()]);
    assert_eq!(code(&check), 0, "{}", stderr(&check));
}

#[test]
fn different_degrees_are_not_homotopic() {
    let dir = TempDir::new().unwrap();
    let f = sphere_map(dir.path(), "f.json", 1);
    let g = sphere_map(dir.path(), "g.json", 2);
    let cert = dir.path().join("cert.json");
    let out = run(&[
        "decide", "--tower", "K(Z,2)", "--pair", "S2", "--map-f", f.to_str().unwrap(), "--map-g",
        g.to_str().unwrap(), "--out", cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1, "{}", stderr(&out));
    assert!(stdout(&out).starts_with("NOT-HOMOTOPIC"));
    assert!(!cert.exists());
}

#[test]
fn tampered_certificates_are_rejected() {
    let dir = TempDir::new().unwrap();
    let f = sphere_map(dir.path(), "f.json", -2);
    let cert = dir.path().join("cert.json");
    let report = cmd_decide(&args("K(Z,2)", "S2"), &f, &f, &cert).unwrap();
    assert!(report.homotopic && report.verified);
    let mut doc: CertificateDoc = read_certificate(&cert).unwrap();
    doc.to = doc.from.clone();
    doc.to.coords[1] = vec![("e".into(), vec![5])];
    assert!(check_certificate(&doc).is_err());
    let text = serde_json::to_string(&doc).unwrap();
    std::fs::write(&cert, text).unwrap();
    let out = run(&["check", "--verify", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("certificate rejected"));
}

#[test]
fn input_errors_exit_with_two_and_say_where() {
    let dir = TempDir::new().unwrap();
    let f = sphere_map(dir.path(), "f.json", 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"coords": [[], [["nope", [1]]]]}"#).unwrap();
    let out = run(&[
        "decide", "--tower", "K(Z,2)", "--pair", "S2", "--map-f", bad.to_str().unwrap(), "--map-g",
        f.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("bad.json"), "{}", stderr(&out));
    assert!(stderr(&out).contains("nope"));

    let out = run(&["susp-group", "--tower", "no-such-tower", "--pair", "S1"]);
    assert_eq!(code(&out), 2);
    let out = run(&["susp-group", "--tower", "K(Z,2)", "--pair", "nowhere.json"]);
    assert_eq!(code(&out), 2);
    let out = run(&["decide", "--tower", "K(Z,2)"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_stages_name_the_required_stage() {
    // the cup-square tower stops at stage 3; the torus needs stage 1 + 2 = 3, the 3-simplex 4
    let out = run(&["susp-group", "--tower", "S2-stage3", "--pair", "S3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains('4'), "{}", stderr(&out));
    let out = run(&["susp-group", "--tower", "K(Z,2)", "--pair", "S2", "--stage-cap", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("stage 3"), "{}", stderr(&out));

    let dir = TempDir::new().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(&f, r#"{"coords": []}"#).unwrap();
    let out = run(&[
        "decide", "--tower", "K(Z,3)", "--pair", "S2", "--map-f", f.to_str().unwrap(), "--map-g",
        f.to_str().unwrap(), "--stage-cap", "1",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("stage 2"), "{}", stderr(&out));
}

#[test]
fn suspension_group_reports() {
    let point = cmd_susp_group(&args("K(Z,2)", "pt"), None).unwrap();
    assert_eq!(point.group, "trivial group");
    let circle = cmd_susp_group(&args("K(Z,2)", "S1"), Some(7)).unwrap();
    assert_eq!(circle.group, "Z");
    assert_eq!(circle.orders, vec![0]);
    assert_eq!(circle.generators.len(), 1);
    assert_eq!(circle.checks.as_ref().unwrap().samples, 25);
    let hopf = cmd_susp_group(&args("S2-stage3", "S2"), None).unwrap();
    assert_eq!(hopf.group, "Z");
    let wedge = cmd_susp_group(&args("K(Z/2,2)", "W2"), None).unwrap();
    assert_eq!(wedge.group, "Z/2 ⊕ Z/2");

    let text = serde_json::to_string(&circle).unwrap();
    let back: SuspReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, circle);

    let out = run(&["susp-group", "--tower", "K(Z,2)", "--pair", "S1", "--verify", "--seed", "5"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("group: Z\n") && text.contains("orders: [0]") && text.contains("generator g1"));
}

#[test]
fn suspension_report_file_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("group.json");
    let out = run(&["susp-group", "--tower", "K(Z,3)", "--pair", "T2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: SuspReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // [Σ T², K(Z,3)] = H²(T²) = Z
    assert_eq!(report.group, "Z");
    assert_eq!(serde_json::from_str::<SuspReport>(&serde_json::to_string(&report).unwrap()).unwrap(), report);
}

#[test]
fn cohomology_and_tower_info() {
    let h = cmd_cohomology("T2", 1, "Z").unwrap();
    assert_eq!(h.group, "Z^2");
    let h = cmd_cohomology("W3", 1, "Z/2").unwrap();
    assert_eq!(h.orders, vec![2, 2, 2]);
    let h = cmd_cohomology("S2", 2, "Z+Z/3").unwrap();
    assert_eq!(h.group, "Z ⊕ Z/3");
    let info = cmd_tower_info("S2-stage3").unwrap();
    assert_eq!(info.stages.len(), 3);
    assert!(!info.complete);
    assert_eq!(info.comparison_target.as_deref(), Some("S2"));

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("tower.json");
    std::fs::write(&path, postnikov_core::catalog("K(Z/2,2)").unwrap().to_json()).unwrap();
    let from_file = cmd_tower_info(path.to_str().unwrap()).unwrap();
    assert_eq!(from_file, cmd_tower_info("K(Z/2,2)").unwrap());
    let out = run(&["tower-info", "--tower", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}

#[test]
fn comparison_maps_read_as_simplicial_maps() {
    // the identity S² -> S² through φ of the cup-square tower, against itself
    let dir = TempDir::new().unwrap();
    let id = dir.path().join("id.json");
    std::fs::write(&id, r#"{"source": "S2", "target": "S2", "table": [["*", [[], "*"]], ["e", [[], "e"]]]}"#).unwrap();
    let cert = dir.path().join("cert.json");
    let report = cmd_decide(&args("S2-stage3", "S2"), &id, &id, &cert).unwrap();
    assert!(report.homotopic);
    check_certificate(&read_certificate(&cert).unwrap()).unwrap();
}

#[test]
fn bench_table_is_well_formed() {
    let table = cmd_bench(&[8, 1, 4, 4], 1).unwrap();
    let edges: Vec<usize> = table.rows.iter().map(|r| r.edges).collect();
    assert_eq!(edges, vec![1, 4, 8]);
    assert!(table.rows.iter().all(|r| r.simplices == 2 * r.edges && r.decide_ms >= 0.0));
    let rendered = table.render();
    assert_eq!(rendered.lines().count(), 4);
    assert!(rendered.lines().next().unwrap().split_whitespace().eq(BenchTable::HEADER));
    let back: BenchTable = serde_json::from_str(&serde_json::to_string(&table).unwrap()).unwrap();
    assert_eq!(back, table);
    assert_eq!(cmd_bench(&[1], 1).unwrap().rows.len(), 1);
}
