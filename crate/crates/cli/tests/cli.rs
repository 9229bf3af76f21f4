use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pappian::theorem::{random_scene_t2, TheoremKind};
use pappian::FieldSpec;
use pappian_cli::doc::ConicSpec;
use pappian_cli::render::{render_svg, RenderError};
use pappian_cli::{Scene, SceneDocument};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn pappian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pappian")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn golden_scenes_verify_with_fixture_digests() {
    for kind in ["t1", "t2"] {
        let scene = fixture(&format!("golden_{kind}.json"));
        let o = pappian(&["verify", kind, "--scene", scene.to_str().unwrap(), "--json"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let expected = std::fs::read_to_string(fixture(&format!("golden_{kind}.digest"))).unwrap();
        assert_eq!(stdout_json(&o)["digest"], expected.trim());
    }
}

#[test]
fn golden_svgs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["t1", "t2"] {
        let out = dir.path().join(format!("{kind}.svg"));
        let scene = fixture(&format!("golden_{kind}.json"));
        let o =
            pappian(&["render", "--scene", scene.to_str().unwrap(), "--certificate", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let got = std::fs::read(&out).unwrap();
        assert_eq!(got, std::fs::read(fixture(&format!("golden_{kind}.svg"))).unwrap(), "{kind}");
        let text = String::from_utf8(got).unwrap();
        assert_eq!(text.matches(r#"class="chord""#).count(), 3);
        assert!(text.contains(r#"id="common-point""#));
        for label in ["A", "B", "C", "D", "U", "V", "W", "X", "Y", "Z"] {
            assert!(text.contains(&format!(">{label}</text>")), "{kind} label {label}");
        }
    }
}

#[test]
fn render_without_certificate_has_no_chords() {
    let doc = SceneDocument::from_json(&std::fs::read_to_string(fixture("golden_t1.json")).unwrap()).unwrap();
    let svg = render_svg(&doc, None).unwrap();
    assert!(!svg.contains("chord\""));
    assert!(!svg.contains("common-point"));
    assert!(svg.contains(r#"class="sigma""#));
}

#[test]
fn prime_scene_does_not_render() {
    let g = random_scene_t2(2, 20, FieldSpec::prime(13).unwrap()).unwrap();
    let doc = Scene::from(g.scene).to_document();
    assert!(matches!(render_svg(&doc, None), Err(RenderError::NonRationalField(_))));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    let out = dir.path().join("p.svg");
    let o = pappian(&["render", "--scene", path.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = pappian(&["verify", "t2", "--scene", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_and_input_errors_exit_2() {
    let missing = fixture("missing.json");
    for args in [
        vec!["verify", "t1", "--scene", missing.to_str().unwrap()],
        vec!["verify", "t3", "--random", "1"],
        vec!["verify", "t1"],
        vec!["verify", "t1", "--random", "2", "--field", "prime:13"],
        vec!["verify", "t2", "--random", "2", "--bound", "0"],
        vec!["verify", "t2", "--random", "2", "--field", "prime:9"],
        vec!["verify", "t2", "--scene", fixture("golden_t1.json").to_str().unwrap()],
        vec!["check", "inversion", "--cases", "1", "--field", "prime:13"],
        vec!["check", "oracle", "--cases", "1", "--field", "rational"],
        vec!["frobnicate"],
    ] {
        let o = pappian(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn malformed_scene_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("golden_t1.json")).unwrap();
    for (i, bad) in [
        text.replace("\"6/5\"", "6"),
        text.replace("\"6/5\"", "\"6/0\""),
        text.replace("\"kind\": \"t1\"", "\"kind\": \"t2\""),
        text.replace("\"D\"", "\"E\""),
        "{".to_string(),
    ]
    .iter()
    .enumerate()
    {
        let path = dir.path().join(format!("{i}.json"));
        std::fs::write(&path, bad).unwrap();
        let o = pappian(&["verify", "t1", "--scene", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "case {i}");
    }
}

#[test]
fn random_campaign_over_gf13() {
    let o =
        pappian(&["verify", "t2", "--random", "100", "--seed", "7", "--bound", "20", "--field", "prime:13", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    assert_eq!(r["accepted"], 100);
    assert_eq!(r["violations"], 0);
    let (att, acc, rej) =
        (r["attempted"].as_u64().unwrap(), r["accepted"].as_u64().unwrap(), r["rejected"].as_u64().unwrap());
    assert_eq!(att, acc + rej);
    assert_eq!(r["digests"].as_array().unwrap().len(), 100);
}

#[test]
fn tiny_field_exhausts_and_exits_2() {
    let o = pappian(&["verify", "t2", "--random", "1", "--seed", "1", "--bound", "5", "--field", "prime:5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn same_argv_same_report_digest() {
    let args = ["verify", "t1", "--random", "20", "--seed", "3", "--bound", "10", "--json"];
    let a = stdout_json(&pappian(&args));
    let b = stdout_json(
        &Command::new(env!("CARGO_BIN_EXE_pappian")).args(args).env("PAPPIAN_WORKERS", "1").output().unwrap(),
    );
    assert_eq!(a["report_digest"], b["report_digest"]);
    assert_eq!(a["digests"], b["digests"]);
    let check = ["check", "fact-b", "--cases", "20", "--seed", "4", "--json"];
    assert_eq!(stdout_json(&pappian(&check))["report_digest"], stdout_json(&pappian(&check))["report_digest"]);
}

#[test]
fn check_suites_pass() {
    for args in [
        vec!["check", "fact-a", "--cases", "30", "--seed", "1"],
        vec!["check", "fact-a", "--cases", "30", "--seed", "1", "--field", "prime:11"],
        vec!["check", "fact-b", "--cases", "10", "--seed", "1"],
        vec!["check", "steiner", "--cases", "20", "--seed", "1"],
        vec!["check", "inversion", "--cases", "20", "--seed", "1"],
        vec!["check", "oracle", "--cases", "10", "--seed", "1"],
    ] {
        let o = pappian(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn schema_prints_json() {
    let o = pappian(&["schema", "--print"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["x-svg"]["conic_samples"], 256);
    assert_eq!(v["properties"]["schema_version"]["const"], "1");
}

#[test]
fn through_form_matches_matrix_form() {
    let doc = SceneDocument::from_json(&std::fs::read_to_string(fixture("golden_t2.json")).unwrap()).unwrap();
    let scene = doc.to_scene().unwrap();
    let Scene::T2(s) = &scene else { panic!("t2 fixture") };
    let extra: Vec<_> = pappian::correspondence::points_on_line(
        &pappian::ProjLine::from_ints(FieldSpec::Rationals, [1, 1, 1]),
        2,
        |_| true,
    )
    .iter()
    .filter_map(|p| s.sigma.second_intersection(&pappian::proj::join(&s.d, p).ok()?, &s.d).ok())
    .map(|m| m.point)
    .collect();
    let through: Vec<_> =
        [&s.d, &s.e, &s.f, &extra[0], &extra[1]].iter().map(|p| p.coords().each_ref().map(|c| c.to_string())).collect();
    let mut alt = doc.clone();
    alt.conics.insert("sigma".into(), ConicSpec::Through(through));
    assert_eq!(alt.to_scene().unwrap(), scene);
    assert_eq!(alt.kind, TheoremKind::T2);
}
