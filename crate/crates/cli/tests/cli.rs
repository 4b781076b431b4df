use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use conley_surf::builders;
use conley_surf::{classify, IsolatingBlock};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_conley-surf"));
    c.env_remove("CONLEY_SURF_COLOR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("error JSON on stderr")
}

fn write_block(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, builders::standard(name).unwrap().to_json()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_json_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    for name in builders::STANDARD_NAMES {
        let path = write_block(dir.path(), name);
        let out = run(&["classify", "--json", s(&path)]);
        assert!(out.status.success(), "{name}");
        let expected = classify(&builders::standard(name).unwrap())
            .unwrap()
            .to_json();
        assert_eq!(stdout(&out), format!("{expected}\n"), "{name}");
    }
}

#[test]
fn classify_many_files_keeps_order() {
    let dir = tempfile::tempdir().unwrap();
    let names = [
        "pants_repeller",
        "square_saddle",
        "annulus_attractor",
        "three_arc_circle_nonregular",
    ];
    let paths: Vec<PathBuf> = names.iter().map(|n| write_block(dir.path(), n)).collect();
    let mut args = vec!["classify", "--json", "--jobs", "3"];
    args.extend(paths.iter().map(|p| s(p)));
    let out = run(&args);
    assert!(out.status.success());
    let text = stdout(&out);
    let stream = serde_json::Deserializer::from_str(&text).into_iter::<Value>();
    let got: Vec<String> = stream
        .map(|v| v.unwrap()["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(got, names);
}

#[test]
fn classify_human_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["classify", s(&write_block(dir.path(), "pants_repeller"))]);
    let text = stdout(&out);
    assert!(text.contains("S² ∨ S¹ ∨ S¹"), "{text}");
    assert!(text.contains("repeller-orientable"));
    assert!(!text.contains('\x1b'));
    let colored = bin()
        .env("CONLEY_SURF_COLOR", "1")
        .args(["classify", s(&dir.path().join("pants_repeller.json"))])
        .output()
        .unwrap();
    assert!(stdout(&colored).contains('\x1b'));
}

#[test]
fn inputs_are_left_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_block(dir.path(), "annulus_nonregular");
    let before = fs::read(&path).unwrap();
    let out_path = dir.path().join("reg.json");
    assert!(run(&["regularize", s(&path), "-o", s(&out_path)])
        .status
        .success());
    assert!(run(&["classify", s(&path)]).status.success());
    assert_eq!(fs::read(&path).unwrap(), before);
}

#[test]
fn broken_block_lists_violations() {
    let dir = tempfile::tempdir().unwrap();
    let mut b = builders::standard("annulus_nonregular").unwrap();
    b.n_minus.vertices.insert(b.complex.vertex_count() + 5);
    let path = dir.path().join("broken.json");
    fs::write(&path, b.to_json()).unwrap();
    let out = run(&["validate", s(&path)]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_json(&out);
    assert_eq!(err["error"], "invalid_block");
    assert!(!err["details"].as_array().unwrap().is_empty());
    assert!(!stdout(&out).is_empty());
}

#[test]
fn malformed_json_is_a_format_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"name\": 3").unwrap();
    let out = run(&["census", s(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "format");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["classify"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "pants_repeller"]).status.code(), Some(2));
}

#[test]
fn ring_reports_rank_and_orientability() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["ring", s(&write_block(dir.path(), "genus1_repeller"))]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rank          2"), "{text}");
    assert!(text.contains("orientable"));
    assert!(text.contains("S¹×S¹"));
    assert!(text.lines().all(|l| !l.ends_with(' ')));
    let json = run(&[
        "ring",
        "--json",
        s(&dir.path().join("genus1_repeller.json")),
    ]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["intersection_form"]["rank"], 2);
    assert_eq!(v["index_name"], "S¹×S¹");
}

#[test]
fn regularize_writes_block_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_block(dir.path(), "three_arc_circle_nonregular");
    let (reg, trace) = (dir.path().join("reg.json"), dir.path().join("trace.json"));
    let out = run(&["regularize", s(&path), "-o", s(&reg), "--trace", s(&trace)]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("3 cuts"));
    let regular = IsolatingBlock::from_json(&fs::read_to_string(&reg).unwrap()).unwrap();
    assert_eq!(regular.census().unwrap().obstruction, 0);
    let t: Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t["steps"].as_array().unwrap().len(), 3);
}

#[test]
fn generate_and_reverse_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("gen.json");
    let out = run(&[
        "generate",
        "random",
        "--seed",
        "7",
        "--budget",
        "300",
        "-o",
        s(&gen),
    ]);
    assert!(out.status.success());
    let original = fs::read_to_string(&gen).unwrap();
    assert_eq!(
        IsolatingBlock::from_json(&original).unwrap(),
        builders::random_block(7, 300)
    );
    let (r1, r2) = (dir.path().join("r1.json"), dir.path().join("r2.json"));
    assert!(run(&["reverse", s(&gen), "-o", s(&r1)]).status.success());
    assert!(run(&["reverse", s(&r1), "-o", s(&r2)]).status.success());
    assert_eq!(fs::read_to_string(&r2).unwrap(), original);
    let surface = dir.path().join("surf.json");
    let out = run(&[
        "generate",
        "surface_repeller",
        "--genus",
        "2",
        "--holes",
        "1",
        "-o",
        s(&surface),
    ]);
    assert!(out.status.success());
    let unknown = run(&[
        "generate",
        "no_such_recipe",
        "-o",
        s(&dir.path().join("x.json")),
    ]);
    assert_eq!(unknown.status.code(), Some(1));
    assert_eq!(stderr_json(&unknown)["error"], "unknown_recipe");
}

#[test]
fn schematic_is_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("s.dot");
    let path = write_block(dir.path(), "square_saddle");
    assert!(run(&["schematic", s(&path), "-o", s(&dot)])
        .status
        .success());
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.trim_start().starts_with("graph"));
    assert!(text.contains("red") && text.contains("blue"));
    assert!(text.trim_end().ends_with('}'));
}

#[test]
fn continuation_pass_and_fail() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    };
    let k0 = write(
        "k0.json",
        r#"{"beta1":1,"u":1,"u_c":0,"dynamics_type":"Mixed"}"#,
    );
    let point = r#"{"beta1":0,"u":1,"u_c":1,"dynamics_type":"Mixed"}"#;
    let good = write("good.json", &format!("[{point},{point}]"));
    let bad = write(
        "bad.json",
        &format!(r#"[{point},{{"beta1":0,"u":2,"u_c":2,"dynamics_type":"Mixed"}}]"#),
    );
    let ok = run(&["continuation", s(&k0), s(&good)]);
    assert!(ok.status.success(), "{}", stdout(&ok));
    let fail = run(&["continuation", s(&k0), s(&bad)]);
    assert_eq!(fail.status.code(), Some(1));
    let err = stderr_json(&fail);
    assert_eq!(err["error"], "not_a_continuation");
    assert_eq!(err["details"]["first_failure"], "equation");
}

#[test]
fn fixed_point_commands() {
    let dir = tempfile::tempdir().unwrap();
    let ok = run(&[
        "fixed-point-free",
        s(&write_block(dir.path(), "annulus_cycle_mixed")),
    ]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("limit cycle"));
    let forced = run(&[
        "fixed-point-free",
        s(&write_block(dir.path(), "square_saddle")),
    ]);
    assert_eq!(forced.status.code(), Some(1));
    let err = stderr_json(&forced);
    assert_eq!(err["error"], "fixed_point_forced");
    assert_eq!(err["details"]["fp_index"], -1);
    let minimal = run(&["minimal", s(&dir.path().join("annulus_cycle_mixed.json"))]);
    assert_eq!(stdout(&minimal).trim(), "fixed point or limit cycle");
}

#[test]
fn census_sections_and_duality() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_block(dir.path(), "square_saddle");
    let census: Value =
        serde_json::from_slice(&run(&["census", "--json", s(&path)]).stdout).unwrap();
    assert_eq!(
        (census["u_c"].as_u64(), census["s_c"].as_u64()),
        (Some(2), Some(2))
    );
    let sections = run(&["sections", s(&path)]);
    assert_eq!(stdout(&sections).lines().count(), 2);
    let duality = run(&["duality", s(&path)]);
    assert!(duality.status.success());
    assert!(stdout(&duality).contains("holds"));
}
