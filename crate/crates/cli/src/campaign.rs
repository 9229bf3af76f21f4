//! Random verification campaigns fanned out over a rayon pool.
//!
//! Case `k` uses stream `k` of the campaign seed, and results are merged in
//! case order, so the report does not depend on the number of workers.

use std::collections::BTreeMap;
use std::time::Instant;

use pappian::theorem::{
    random_scene_t1_stream, random_scene_t2_stream, ConcurrencyCertificate, TheoremError, TheoremKind,
};
use pappian::FieldSpec;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cert::{certificate_digest, certificate_json, digest_value};
use crate::doc::Scene;

/// Overrides the worker count; the default is the available parallelism.
pub const WORKERS_ENV: &str = "PAPPIAN_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub kind: TheoremKind,
    pub field: FieldSpec,
    pub count: u64,
    pub seed: u64,
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CaseOutcome {
    Accepted { scene: Scene, certificate: Box<ConcurrencyCertificate>, digest: String },
    Violation { counterexample: Value },
    Exhausted,
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseResult {
    pub case: u64,
    pub attempts: u64,
    pub rejections: BTreeMap<String, u64>,
    pub outcome: CaseOutcome,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    /// Every drawn scene; equals `accepted + rejected`.
    pub attempted: u64,
    pub accepted: u64,
    /// Draws that failed a hypothesis or genericity check, or violated the theorem.
    pub rejected: u64,
    pub rejections: BTreeMap<String, u64>,
    pub violations: u64,
    /// Cases that hit the attempt cap without an acceptable scene.
    pub exhausted: u64,
    pub digests: Vec<String>,
    pub counterexamples: Vec<Value>,
    pub wall_time_ms: u128,
    pub cases: Vec<CaseResult>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.exhausted == 0 && self.accepted == self.config.count
    }

    /// Machine report; `wall_time_ms` is the only run-dependent field.
    pub fn to_json(&self) -> Value {
        let mut v = self.stable_json();
        v["report_digest"] = json!(digest_value(&v));
        v["wall_time_ms"] = json!(self.wall_time_ms as u64);
        v
    }

    fn stable_json(&self) -> Value {
        let c = &self.config;
        json!({
            "kind": c.kind.to_string(),
            "field": c.field.to_string(),
            "seed": c.seed,
            "bound": c.bound,
            "requested": c.count,
            "attempted": self.attempted,
            "accepted": self.accepted,
            "rejected": self.rejected,
            "rejections": self.rejections,
            "violations": self.violations,
            "exhausted": self.exhausted,
            "digests": self.digests,
            "counterexamples": self.counterexamples,
        })
    }

    /// SHA-256 of the report without its wall time.
    pub fn digest(&self) -> String {
        digest_value(&self.stable_json())
    }

    pub fn summary(&self) -> String {
        let c = &self.config;
        let mut s = format!(
            "verify {} over {}: seed {}, bound {}\n  requested {}, accepted {}, attempted {}, rejected {}, violations {}, exhausted {}\n",
            c.kind, c.field, c.seed, c.bound, c.count, self.accepted, self.attempted, self.rejected, self.violations,
            self.exhausted,
        );
        if !self.rejections.is_empty() {
            let parts: Vec<_> = self.rejections.iter().map(|(k, v)| format!("{k} {v}")).collect();
            s += &format!("  rejections: {}\n", parts.join(", "));
        }
        s += &format!("  wall time {:.3} s\n  report digest {}\n", self.wall_time_ms as f64 / 1000.0, self.digest());
        s
    }
}

fn stringify(r: BTreeMap<&'static str, u64>) -> BTreeMap<String, u64> {
    r.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn run_case(config: &CampaignConfig, case: u64) -> CaseResult {
    let generated = match config.kind {
        TheoremKind::T1 => random_scene_t1_stream(config.seed, case, config.bound)
            .map(|g| (Scene::T1(g.scene), g.certificate, g.attempts, g.rejections)),
        TheoremKind::T2 => random_scene_t2_stream(config.seed, case, config.bound, config.field)
            .map(|g| (Scene::T2(g.scene), g.certificate, g.attempts, g.rejections)),
    };
    match generated {
        Ok((scene, cert, attempts, rejections)) => CaseResult {
            case,
            attempts,
            rejections: stringify(rejections),
            outcome: CaseOutcome::Accepted { scene, digest: certificate_digest(&cert), certificate: Box::new(cert) },
        },
        Err(TheoremError::ExhaustedAttempts { attempts, rejections }) => {
            CaseResult { case, attempts, rejections: stringify(rejections), outcome: CaseOutcome::Exhausted }
        }
        Err(TheoremError::TheoremViolation(cert)) => {
            let counterexample = json!({
                "kind": config.kind.to_string(),
                "field": config.field.to_string(),
                "seed": config.seed,
                "bound": config.bound,
                "case": case,
                "failed_facts": cert.failed_facts().map(|f| f.label.clone()).collect::<Vec<_>>(),
                "certificate": certificate_json(&cert),
            });
            CaseResult {
                case,
                attempts: 0,
                rejections: BTreeMap::new(),
                outcome: CaseOutcome::Violation { counterexample },
            }
        }
        Err(e) => {
            CaseResult { case, attempts: 0, rejections: BTreeMap::new(), outcome: CaseOutcome::Invalid(e.to_string()) }
        }
    }
}

/// Worker count from [`WORKERS_ENV`], if set to a positive integer.
pub fn workers_from_env() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

pub fn run_campaign(config: &CampaignConfig, workers: Option<usize>) -> CampaignReport {
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().expect("thread pool");
    let cases: Vec<CaseResult> =
        pool.install(|| (0..config.count).into_par_iter().map(|k| run_case(config, k)).collect());
    let mut report = CampaignReport {
        config: *config,
        attempted: 0,
        accepted: 0,
        rejected: 0,
        rejections: BTreeMap::new(),
        violations: 0,
        exhausted: 0,
        digests: Vec::new(),
        counterexamples: Vec::new(),
        wall_time_ms: 0,
        cases: Vec::new(),
    };
    for r in &cases {
        let rejected: u64 = r.rejections.values().sum();
        for (k, v) in &r.rejections {
            *report.rejections.entry(k.clone()).or_insert(0) += v;
        }
        report.rejected += rejected;
        report.attempted += rejected;
        match &r.outcome {
            CaseOutcome::Accepted { digest, .. } => {
                report.accepted += 1;
                report.attempted += 1;
                report.digests.push(digest.clone());
            }
            CaseOutcome::Violation { counterexample } => {
                report.violations += 1;
                report.attempted += 1;
                report.rejected += 1;
                *report.rejections.entry("theorem-violation".to_string()).or_insert(0) += 1;
                report.counterexamples.push(counterexample.clone());
            }
            CaseOutcome::Exhausted => report.exhausted += 1,
            CaseOutcome::Invalid(_) => {}
        }
    }
    report.cases = cases;
    report.wall_time_ms = start.elapsed().as_millis();
    report
}
