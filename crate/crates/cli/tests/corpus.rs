use hocat::fincat::{find_isomorphism, fin_ordinal, DEFAULT_GUARD};
use hocat_cli::emit::generated_corpus;
use hocat_cli::run::fingerprints;
use hocat_cli::workspace::{fingerprint, Binding, Document};
use hocat_cli::{Settings, Workspace};
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").canonicalize().unwrap()
}

fn hocat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hocat"))
        .args(args)
        .env("HOCAT_CORPUS", corpus())
        .current_dir(corpus())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn corpus_workspace() -> Workspace {
    let mut ws = Workspace::new(Settings::default());
    ws.add_dir(&corpus()).unwrap();
    ws
}

#[test]
fn expected_exit_codes() {
    let text = std::fs::read_to_string(corpus().join("expected.txt")).unwrap();
    let mut checked = 0;
    for line in text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let mut parts = line.split_whitespace();
        let want: i32 = parts.next().unwrap().parse().unwrap();
        let args: Vec<&str> = parts.collect();
        let out = hocat(&args);
        assert_eq!(
            out.status.code(),
            Some(want),
            "hocat {}\n{}{}",
            args.join(" "),
            stdout(&out),
            String::from_utf8_lossy(&out.stderr)
        );
        checked += 1;
    }
    assert!(checked >= 30);
}

#[test]
fn every_fixture_validates() {
    let mut ws = corpus_workspace();
    ws.resolve_all().unwrap();
    assert!(ws.names().len() >= 20);
}

#[test]
fn generated_fixtures_are_current() {
    let on_disk = std::fs::read_to_string(corpus().join("generated.sset")).unwrap();
    assert_eq!(on_disk, generated_corpus());
}

#[test]
fn json_round_trip_keeps_fingerprints() {
    let mut ws = corpus_workspace();
    let all = fingerprints(&mut ws).unwrap();
    for (name, fp) in &all {
        let doc: Document = ws.export(name).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let mut back = Workspace::new(Settings::default());
        back.add_text("export.json", &text).unwrap();
        let b = back.get(name).unwrap();
        assert_eq!(&fingerprint(&b), fp, "{name}");
    }
}

#[test]
fn json_export_through_the_binary() {
    let out = hocat(&["export", "json", "pushout"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pushout.json");
    std::fs::write(&file, stdout(&out)).unwrap();
    let again = hocat(&["-f", file.to_str().unwrap(), "colimit", "pushout"]);
    assert_eq!(again.status.code(), Some(0), "{}", stdout(&again));
    assert!(stdout(&again).contains("finite: 3 objects, 6 morphisms"));
}

#[test]
fn walking_arrow_file() {
    let mut ws = corpus_workspace();
    let c = ws.finite_category("fin2").unwrap();
    assert!(find_isomorphism(&c, &fin_ordinal(1), DEFAULT_GUARD).unwrap().is_some());
}

#[test]
fn empty_objects_list() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("empty.cat");
    std::fs::write(&file, "category empty {\n  objects:\n}\n").unwrap();
    let out = hocat(&["-f", file.to_str().unwrap(), "nerve", "empty"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("level 0: 0"));
}

#[test]
fn broken_face_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.sset");
    let good = std::fs::read_to_string(corpus().join("s1.cat")).unwrap();
    std::fs::write(&file, good.replace("face 2 2: v00 -> v0, e0 -> v0", "face 2 2: v00 -> v0, e0 -> e")).unwrap();
    let out = hocat(&["-f", file.to_str().unwrap(), "ho", "s1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("simplicial identity"), "{text}");
}

#[test]
fn parse_errors_report_positions() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.cat");
    std::fs::write(&file, "category c {\n  objects: a b\n  arrows: f a -> b\n}\n").unwrap();
    let out = hocat(&["-f", file.to_str().unwrap(), "nerve", "c"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.cat:3:13"), "{err}");
}

#[test]
fn ho_of_the_circle() {
    let out = hocat(&["ho", "s1.cat"]);
    assert!(stdout(&out).contains("size: 1 objects, 1 generators, 0 relations"));
}

#[test]
fn coequalizer_report_names_the_leg() {
    let out = hocat(&["colimit", "coeq.diag"]);
    let text = stdout(&out);
    assert!(text.contains("size: 1 objects, 1 generators, 0 relations"), "{text}");
    assert!(text.contains("q(l) = l"), "{text}");
}

#[test]
fn json_reports_are_versioned() {
    let out = hocat(&["--json", "eq", "bn", "e.e", "e.e"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "hocat/1");
    assert_eq!(v["command"], "eq");
    assert_eq!(v["verdict"]["verdict"], "pass");
    let out = hocat(&["--json", "eq", "bn", "e", "e.e"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exit"], 1);
}

#[test]
fn dot_output_is_deterministic() {
    for name in ["square", "s1", "coeq", "bn", "boundary3"] {
        let a = hocat(&["export", "dot", name]);
        let b = hocat(&["--sequential", "export", "dot", name]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert!(stdout(&a).starts_with("digraph"));
    }
}

#[test]
fn corpus_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("only.cat"), "category only {\n  objects: x\n}\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hocat"))
        .args(["check", "adjunction"])
        .env("HOCAT_CORPUS", dir.path())
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let explicit = hocat(&["check", "adjunction", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(stdout(&explicit), stdout(&out));
}

#[test]
fn fuel_is_configurable() {
    let out = hocat(&["--fuel", "0", "ho", "delta2"]);
    assert_ne!(out.status.code(), Some(2));
    let mut ws = Workspace::new(Settings {
        fuel: 0,
        ..Settings::default()
    });
    ws.add_dir(&corpus()).unwrap();
    let b = ws.get("square").unwrap();
    let Binding::Category(c) = &*b else { panic!() };
    assert!(c.presented().is_some());
}
