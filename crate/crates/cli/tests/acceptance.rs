//! Acceptance campaigns. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use pappian::checks::{fact_a, fact_b, inversion, oracle, steiner, SuiteReport};
use pappian::sample::Sampler;
use pappian::theorem::{alternate_seeds, verify_theorem2, ConcurrencyCertificate, TheoremKind};
use pappian::FieldSpec;
use pappian_cli::campaign::{run_campaign, workers_from_env, CampaignConfig, CampaignReport, CaseOutcome};
use pappian_cli::doc::{ConicSpec, T1_POINTS, T2_POINTS};
use pappian_cli::{Scene, SceneDocument};
use serde_json::Value;

const SEED: u64 = 20_261_019;

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn require(&mut self, cond: bool, note: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(note.into());
        }
    }

    fn info(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn accepted(report: &CampaignReport) -> Vec<(&Scene, &ConcurrencyCertificate)> {
    report
        .cases
        .iter()
        .filter_map(|c| match &c.outcome {
            CaseOutcome::Accepted { scene, certificate, .. } => Some((scene, &**certificate)),
            _ => None,
        })
        .collect()
}

fn campaign(out: &mut Outcome, kind: TheoremKind, field: FieldSpec, count: u64, bound: u64) -> CampaignReport {
    let config = CampaignConfig { kind, field, count, seed: SEED, bound };
    let r = run_campaign(&config, workers_from_env());
    let label = format!("{kind} {field}");
    out.require(r.accepted == count, format!("{label}: accepted {} of {count}", r.accepted));
    out.require(r.violations == 0, format!("{label}: {} violations", r.violations));
    out.require(r.attempted == r.accepted + r.rejected, format!("{label}: attempt accounting"));
    for (_, cert) in accepted(&r) {
        let fine = cert.concurrency_determinant.is_zero() && cert.holds() && cert.involution_pairs_verdict;
        out.require(
            fine,
            format!("{label}: certificate with failed facts {:?}", cert.failed_facts().collect::<Vec<_>>()),
        );
    }
    out.info(format!(
        "{label}: {} accepted, {} rejected, {:.1} s",
        r.accepted,
        r.rejected,
        r.wall_time_ms as f64 / 1e3
    ));
    r
}

fn ac1() -> Outcome {
    let mut out = Outcome::new();
    let r = campaign(&mut out, TheoremKind::T1, q(), 1000, 50);
    for (_, cert) in accepted(&r) {
        let collinear = cert.proof_trace.iter().filter(|f| f.label.starts_with("collinear")).count();
        let has = |needle: &str| cert.proof_trace.iter().any(|f| f.label.contains(needle) && f.holds);
        out.require(
            collinear == 6 && has("opposite sides of A'B'C'D meet sigma'") && has("cross-ratio involution criterion"),
            "t1 trace is missing a proof step",
        );
    }
    out.require(r.wall_time_ms < 120_000, format!("t1 campaign took {} ms", r.wall_time_ms));
    out
}

fn ac2() -> Outcome {
    let mut out = Outcome::new();
    let rational = campaign(&mut out, TheoremKind::T2, q(), 1000, 30);
    for p in [11, 13, 101] {
        campaign(&mut out, TheoremKind::T2, gf(p), 300, 30);
    }
    let mut same = 0;
    for (scene, cert) in accepted(&rational).into_iter().take(100) {
        let Scene::T2(s) = scene else { unreachable!("t2 campaign") };
        let alt = s
            .with_seeds(alternate_seeds(q()))
            .map_err(|e| e.to_string())
            .and_then(|s| verify_theorem2(&s).map_err(|e| e.to_string()));
        match alt {
            Ok(c) if c.common_point == cert.common_point => same += 1,
            Ok(_) => out.require(false, "alternate seeds moved the common point"),
            Err(e) => out.require(false, format!("alternate seeds failed: {e}")),
        }
    }
    out.require(same == 100, format!("seed independence on {same} of 100"));
    out.info(format!("alternate seeds reproduced {same} of 100 common points"));
    out
}

fn suite(out: &mut Outcome, r: &SuiteReport, expected: &[(&str, u64)]) {
    let label = format!("{} {}", r.suite, r.field);
    for f in r.failures.iter().take(3) {
        out.info(format!("{label}: {} case {}: {}", f.check, f.case, f.detail));
    }
    out.require(r.passed(), format!("{label}: {} failures", r.failures.len()));
    for &(check, n) in expected {
        out.require(r.count(check) == n, format!("{label}: {check} ran {} of {n}", r.count(check)));
    }
    let counts: Vec<_> = r.checks.iter().map(|(k, v)| format!("{k} {v}")).collect();
    out.info(format!("{label}: {}", counts.join(", ")));
}

fn ac3() -> Outcome {
    let mut out = Outcome::new();
    for field in [q(), gf(11), gf(13), gf(101)] {
        suite(&mut out, &fact_a(field, 1000, SEED), &[("quadrangle-involution", 1000)]);
    }
    out
}

fn ac4() -> Outcome {
    let mut out = Outcome::new();
    suite(&mut out, &fact_b(q(), 500, SEED), &[("forced-concurrent", 500), ("generic", 500)]);
    out
}

fn ac5() -> Outcome {
    let mut out = Outcome::new();
    let expected = [
        ("involutive", 500),
        ("line-image-conic", 100),
        ("vertex-line-collinear", 100),
        ("pushforward-involution", 200),
        ("build-steiner-recovers-triangle", 100),
    ];
    suite(&mut out, &steiner(q(), 500, SEED), &expected);
    out
}

fn ac6() -> Outcome {
    let mut out = Outcome::new();
    let expected = [
        ("involutive", 500),
        ("circle-through-pole", 200),
        ("cross-ratio-collinear", 200),
        ("cross-ratio-concyclic", 200),
    ];
    suite(&mut out, &inversion(q(), 500, SEED), &expected);
    out
}

fn ac7() -> Outcome {
    let mut out = Outcome::new();
    let expected = [("fourth-intersection", 100), ("second-intersection", 100), ("conic-point-count", 100)];
    for p in [11, 13] {
        suite(&mut out, &oracle(gf(p), 100, SEED), &expected);
    }
    out
}

fn random_document(field: FieldSpec, case: u64) -> SceneDocument {
    let mut s = Sampler::new(field, 1_000_000, SEED, case);
    let triple = |s: &mut Sampler| [s.scalar(), s.scalar(), s.scalar()].map(|x| x.to_string());
    let kind = if case.is_multiple_of(2) { TheoremKind::T1 } else { TheoremKind::T2 };
    let names: &[&str] = if kind == TheoremKind::T1 { &T1_POINTS } else { &T2_POINTS };
    let points = names.iter().map(|n| (n.to_string(), triple(&mut s))).collect();
    let sigma = if case.is_multiple_of(3) {
        ConicSpec::Through((0..5).map(|_| triple(&mut s)).collect())
    } else {
        ConicSpec::Matrix([triple(&mut s), triple(&mut s), triple(&mut s)])
    };
    let steiner_seeds = (kind == TheoremKind::T2).then(|| [triple(&mut s), triple(&mut s)]);
    SceneDocument {
        schema_version: "1".into(),
        field,
        kind,
        points,
        conics: [("sigma".to_string(), sigma)].into(),
        steiner_seeds,
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn cli(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_pappian")).args(args).output().expect("binary runs");
    (o.status.code(), o.stdout)
}

fn report_digest(stdout: &[u8]) -> Option<String> {
    let v: Value = serde_json::from_slice(stdout).ok()?;
    v["report_digest"].as_str().or(v["digest"].as_str()).map(str::to_string)
}

fn ac8() -> Outcome {
    let mut out = Outcome::new();
    for field in [q(), gf(11), gf(13), gf(101)] {
        let bad = (0..200)
            .filter(|&k| {
                let doc = random_document(field, k);
                let text = doc.to_json();
                !SceneDocument::from_json(&text).is_ok_and(|b| b == doc && b.to_json() == text)
            })
            .count();
        out.require(bad == 0, format!("{field}: {bad} of 200 documents did not round-trip"));
    }

    let runs = [
        vec!["verify", "t1", "--random", "25", "--seed", "5", "--bound", "20", "--json"],
        vec!["verify", "t2", "--random", "25", "--seed", "5", "--bound", "20", "--field", "prime:13", "--json"],
        vec!["check", "steiner", "--cases", "25", "--seed", "5", "--json"],
    ];
    for args in &runs {
        let (c1, o1) = cli(args);
        let (c2, o2) = cli(args);
        let (d1, d2) = (report_digest(&o1), report_digest(&o2));
        out.require(c1 == Some(0) && c2 == Some(0) && d1.is_some() && d1 == d2, format!("nondeterministic {args:?}"));
    }

    let dir = std::env::temp_dir().join(format!("pappian-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    for kind in ["t1", "t2"] {
        let scene = fixture(&format!("golden_{kind}.json"));
        let scene = scene.to_str().unwrap();
        let (code, stdout) = cli(&["verify", kind, "--scene", scene, "--json"]);
        let digest = std::fs::read_to_string(fixture(&format!("golden_{kind}.digest"))).unwrap_or_default();
        out.require(
            code == Some(0) && report_digest(&stdout).as_deref() == Some(digest.trim()),
            format!("{kind} digest"),
        );
        let golden = std::fs::read(fixture(&format!("golden_{kind}.svg"))).unwrap_or_default();
        for i in 0..2 {
            let path = dir.join(format!("{kind}_{i}.svg"));
            let (code, _) = cli(&["render", "--scene", scene, "--certificate", "--out", path.to_str().unwrap()]);
            let bytes = std::fs::read(&path).unwrap_or_default();
            out.require(code == Some(0) && bytes == golden, format!("{kind} svg run {i} differs from the golden file"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    out.info("800 documents, 3 argv pairs, 2 golden scenes");
    out
}

fn main() {
    type Criterion = (&'static str, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("AC-1", "theorem 1 campaign, 1000 rational scenes at bound 50", ac1),
        ("AC-2", "theorem 2 campaigns over Q, GF(11), GF(13), GF(101) and seed independence", ac2),
        ("AC-3", "fact A on 1000 quadrangles per backend", ac3),
        ("AC-4", "fact B in both directions, criteria agree", ac4),
        ("AC-5", "Steiner correspondence suite", ac5),
        ("AC-6", "inversion suite", ac6),
        ("AC-7", "oracle equivalence over GF(11) and GF(13)", ac7),
        ("AC-8", "round-trips, CLI determinism, golden SVGs", ac8),
    ];
    let mut failed = 0;
    for (id, what, run) in criteria {
        let start = Instant::now();
        let o = run();
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {id} {what} ({:.1} s)", start.elapsed().as_secs_f64());
        for n in &o.notes {
            println!("       {n}");
        }
        failed += usize::from(!o.ok);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
