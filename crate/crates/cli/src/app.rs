//! Argument parsing and the exit-code contract: 0 when every check passes,
//! 1 on a theorem violation or property failure (counterexample JSON on
//! stdout), 2 on input or usage errors. Reports go to stderr unless `--json`
//! asks for the machine report on stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pappian::checks::Suite;
use pappian::theorem::{TheoremError, TheoremKind};
use pappian::FieldSpec;
use serde_json::{json, Value};

use crate::campaign::{run_campaign, workers_from_env, CampaignConfig, CaseOutcome};
use crate::cert::{certificate_digest, certificate_json, digest_value};
use crate::doc::SceneDocument;
use crate::render::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SCHEMA: &str = include_str!("schema.json");

#[derive(Parser, Debug)]
#[command(name = "pappian", version, about = "Exact verification of two six-point concurrency theorems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify one scene file or a random campaign.
    Verify(VerifyArgs),
    /// Run a property suite.
    Check(CheckArgs),
    /// Draw a rational scene as SVG.
    Render(RenderArgs),
    /// Print the scene JSON schema.
    Schema(SchemaArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Theorem {
    T1,
    T2,
}

impl From<Theorem> for TheoremKind {
    fn from(t: Theorem) -> Self {
        match t {
            Theorem::T1 => TheoremKind::T1,
            Theorem::T2 => TheoremKind::T2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    FactA,
    FactB,
    Steiner,
    Inversion,
    Oracle,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::FactA => Suite::FactA,
            SuiteArg::FactB => Suite::FactB,
            SuiteArg::Steiner => Suite::Steiner,
            SuiteArg::Inversion => Suite::Inversion,
            SuiteArg::Oracle => Suite::Oracle,
        }
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Args, Debug)]
struct VerifyArgs {
    theorem: Theorem,
    /// Scene document to verify.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    scene: Option<PathBuf>,
    /// Number of random scenes to accept.
    #[arg(long)]
    random: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coordinate bound for random scenes.
    #[arg(long, default_value_t = 20)]
    bound: u64,
    /// `rational` or `prime:P`.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Print the machine report on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    suite: SuiteArg,
    #[arg(long, default_value_t = 100)]
    cases: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Defaults to `rational`, or `prime:13` for the oracle suite.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long)]
    scene: PathBuf,
    /// Verify the scene and draw the chords and their common point.
    #[arg(long)]
    certificate: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SchemaArgs {
    #[arg(long)]
    print: bool,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn usage(&mut self, msg: impl std::fmt::Display) -> i32 {
        let _ = writeln!(self.err, "error: {msg}");
        EXIT_USAGE
    }

    fn json(&mut self, v: &Value) {
        let _ = writeln!(self.out, "{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(io.err, "{text}") } else { write!(io.out, "{text}") };
            return code;
        }
    };
    match cli.command {
        Command::Verify(a) => verify(&mut io, a),
        Command::Check(a) => check(&mut io, a),
        Command::Render(a) => render(&mut io, a),
        Command::Schema(_) => {
            let _ = write!(io.out, "{SCHEMA}");
            EXIT_OK
        }
    }
}

fn load(path: &Path) -> Result<SceneDocument, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    SceneDocument::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn verify(io: &mut Io, a: VerifyArgs) -> i32 {
    let kind: TheoremKind = a.theorem.into();
    if let Some(path) = &a.scene {
        if a.field.is_some() {
            return io.usage("--field applies to --random campaigns; a scene file names its own field");
        }
        return verify_file(io, kind, path, a.json);
    }
    let count = a.random.expect("clap requires --scene or --random");
    let field = a.field.unwrap_or(FieldSpec::Rationals);
    if kind == TheoremKind::T1 && !field.is_rational() {
        return io.usage("theorem 1 scenes live over the rationals");
    }
    if a.bound == 0 {
        return io.usage("--bound must be at least 1");
    }
    let config = CampaignConfig { kind, field, count, seed: a.seed, bound: a.bound };
    let report = run_campaign(&config, workers_from_env());
    let _ = write!(io.err, "{}", report.summary());
    for r in &report.cases {
        match &r.outcome {
            CaseOutcome::Exhausted => {
                let _ = writeln!(io.err, "case {}: no acceptable scene after {} attempts", r.case, r.attempts);
            }
            CaseOutcome::Invalid(msg) => {
                let _ = writeln!(io.err, "case {}: {msg}", r.case);
            }
            _ => {}
        }
    }
    if a.json {
        io.json(&report.to_json());
    } else if report.violations > 0 {
        io.json(&json!({ "counterexamples": report.counterexamples }));
    }
    if report.violations > 0 {
        EXIT_FAILURE
    } else if !report.passed() {
        EXIT_USAGE
    } else {
        EXIT_OK
    }
}

fn verify_file(io: &mut Io, kind: TheoremKind, path: &Path, as_json: bool) -> i32 {
    let doc = match load(path) {
        Ok(d) => d,
        Err(e) => return io.usage(e),
    };
    if doc.kind != kind {
        return io.usage(format!("{} holds a {} scene, not {kind}", path.display(), doc.kind));
    }
    let scene = match doc.to_scene() {
        Ok(s) => s,
        Err(e) => return io.usage(format!("{}: {e}", path.display())),
    };
    match scene.verify() {
        Ok(cert) => {
            let digest = certificate_digest(&cert);
            let common = cert.common_point.as_ref().map(|p| p.to_string()).unwrap_or_default();
            let _ = writeln!(
                io.err,
                "verify {kind} over {}: concurrent at {common}; {} facts hold\n  certificate digest {digest}",
                cert.field,
                cert.proof_trace.len(),
            );
            if as_json {
                io.json(&json!({ "digest": digest, "certificate": certificate_json(&cert) }));
            }
            EXIT_OK
        }
        Err(TheoremError::TheoremViolation(cert)) => {
            let _ = writeln!(io.err, "verify {kind}: THEOREM VIOLATION");
            for f in cert.failed_facts() {
                let _ = writeln!(io.err, "  failed: {}", f.label);
            }
            io.json(&json!({ "scene": doc, "certificate": certificate_json(&cert) }));
            EXIT_FAILURE
        }
        Err(e) => io.usage(format!("{}: {e}", path.display())),
    }
}

fn check(io: &mut Io, a: CheckArgs) -> i32 {
    let suite: Suite = a.suite.into();
    let field = a.field.unwrap_or(match suite {
        Suite::Oracle => FieldSpec::prime(13).expect("13 is an odd prime"),
        _ => FieldSpec::Rationals,
    });
    match suite {
        Suite::Inversion if !field.is_rational() => return io.usage("the inversion suite runs over the rationals"),
        Suite::Oracle if field.is_rational() => return io.usage("the oracle suite needs a prime field"),
        _ => {}
    }
    let report = suite.run(field, a.cases, a.seed);
    let failures: Vec<Value> =
        report.failures.iter().map(|f| json!({ "check": f.check, "case": f.case, "detail": f.detail })).collect();
    let mut machine = json!({
        "suite": suite.name(),
        "field": field.to_string(),
        "seed": a.seed,
        "cases": a.cases,
        "checks": report.checks,
        "failures": failures,
    });
    let digest = digest_value(&machine);
    machine["report_digest"] = json!(digest);

    let _ = writeln!(io.err, "check {suite} over {field}: seed {}, cases {}", a.seed, a.cases);
    for (name, n) in &report.checks {
        let failed = report.failures.iter().filter(|f| f.check == *name).count();
        let _ = writeln!(io.err, "  {name}: {n} run, {failed} failed");
    }
    let _ = writeln!(io.err, "  report digest {digest}");
    if a.json {
        io.json(&machine);
    } else if !report.passed() {
        io.json(&json!({ "counterexamples": failures }));
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn render(io: &mut Io, a: RenderArgs) -> i32 {
    let doc = match load(&a.scene) {
        Ok(d) => d,
        Err(e) => return io.usage(e),
    };
    let cert = if a.certificate {
        let scene = match doc.to_scene() {
            Ok(s) => s,
            Err(e) => return io.usage(format!("{}: {e}", a.scene.display())),
        };
        match scene.verify() {
            Ok(c) => Some(c),
            Err(TheoremError::TheoremViolation(cert)) => {
                let _ = writeln!(io.err, "render: THEOREM VIOLATION");
                io.json(&json!({ "scene": doc, "certificate": certificate_json(&cert) }));
                return EXIT_FAILURE;
            }
            Err(e) => return io.usage(format!("{}: {e}", a.scene.display())),
        }
    } else {
        None
    };
    let svg = match render_svg(&doc, cert.as_ref()) {
        Ok(s) => s,
        Err(e) => return io.usage(e),
    };
    if let Err(e) = std::fs::write(&a.out, svg) {
        return io.usage(format!("{}: {e}", a.out.display()));
    }
    let _ = writeln!(io.err, "wrote {}", a.out.display());
    EXIT_OK
}
