//! Scenes for the two concurrency theorems, the six derived points, and
//! certificates that record every checked step of the synthetic proofs.
//!
//! A scene that violates a genericity condition is reported as
//! [`TheoremError::DegenerateScene`] and is meant to be resampled. A
//! [`TheoremError::TheoremViolation`] means a checked fact failed on a
//! generic scene, which can only be a bug.

mod generate;
mod scene;
mod t1;
mod t2;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::conic::Conic;
use crate::field::{FieldSpec, Scalar};
use crate::involution::{
    concurrent_iff_involution, in_involution, in_involution_cross_ratio, in_involution_determinant, Carrier, PointPair,
};
use crate::proj::{self, ProjLine, ProjPoint};

pub use generate::{
    random_scene_t1, random_scene_t1_stream, random_scene_t2, random_scene_t2_stream, Generated, MAX_ATTEMPTS,
};
pub use scene::{alternate_seeds, default_seeds, SceneError, SceneT1, SceneT2};
pub use t1::{certify_t1, derive_six_t1, verify_theorem1};
pub use t2::{certify_t2, derive_six_t2, verify_theorem2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremKind {
    T1,
    T2,
}

impl fmt::Display for TheoremKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremKind::T1 => "t1",
            TheoremKind::T2 => "t2",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("invalid scene: {0}")]
    InvalidScene(#[from] SceneError),
    #[error("degenerate scene: {0}")]
    DegenerateScene(&'static str),
    #[error("theorem violation: a certified fact failed")]
    TheoremViolation(Box<ConcurrencyCertificate>),
    #[error("no acceptable scene after {attempts} attempts")]
    ExhaustedAttempts { attempts: u64, rejections: BTreeMap<&'static str, u64> },
    #[error("sampling bound must be at least 1, got {0}")]
    InvalidBound(u64),
}

impl TheoremError {
    /// Key under which a rejected scene is counted, if this is a rejection.
    pub fn rejection_label(&self) -> Option<&'static str> {
        match self {
            TheoremError::InvalidScene(e) => Some(e.label()),
            TheoremError::DegenerateScene(label) => Some(label),
            _ => None,
        }
    }
}

/// `U, V, W` on the auxiliary conics and `X, Y, Z` on the lines `AD, BD, CD`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSix {
    pub u: ProjPoint,
    pub v: ProjPoint,
    pub w: ProjPoint,
    pub x: ProjPoint,
    pub y: ProjPoint,
    pub z: ProjPoint,
}

impl DerivedSix {
    pub fn points(&self) -> [&ProjPoint; 6] {
        [&self.u, &self.v, &self.w, &self.x, &self.y, &self.z]
    }

    /// `(UX), (VY), (WZ)`.
    pub fn pairs(&self) -> [PointPair; 3] {
        [
            PointPair::new(self.u.clone(), self.x.clone()),
            PointPair::new(self.v.clone(), self.y.clone()),
            PointPair::new(self.w.clone(), self.z.clone()),
        ]
    }

    pub fn map(&self, mut f: impl FnMut(&ProjPoint) -> ProjPoint) -> DerivedSix {
        DerivedSix { u: f(&self.u), v: f(&self.v), w: f(&self.w), x: f(&self.x), y: f(&self.y), z: f(&self.z) }
    }

    fn validate(&self, sigma: &Conic, excluded: &[&ProjPoint]) -> Result<(), TheoremError> {
        let pts = self.points();
        if pts.iter().any(|p| p.field() != sigma.field()) {
            return Err(SceneError::MixedFields.into());
        }
        if pts.iter().any(|p| excluded.contains(p)) {
            return Err(TheoremError::DegenerateScene("six-meets-base-points"));
        }
        if (0..6).any(|i| pts[..i].contains(&pts[i])) {
            return Err(TheoremError::DegenerateScene("six-not-distinct"));
        }
        if !pts.iter().all(|p| sigma.contains(p)) {
            return Err(TheoremError::DegenerateScene("six-off-sigma"));
        }
        Ok(())
    }
}

/// One checked step of a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFact {
    pub label: String,
    pub holds: bool,
}

/// The verified conclusion for one scene.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcurrencyCertificate {
    pub kind: TheoremKind,
    pub field: FieldSpec,
    pub six: DerivedSix,
    /// `UX, VY, WZ`.
    pub chords: [ProjLine; 3],
    pub concurrency_determinant: Scalar,
    pub common_point: Option<ProjPoint>,
    pub involution_pairs_verdict: bool,
    pub proof_trace: Vec<TraceFact>,
}

impl ConcurrencyCertificate {
    /// The conclusion and every trace fact hold.
    pub fn holds(&self) -> bool {
        self.concurrency_determinant.is_zero()
            && self.common_point.as_ref().is_some_and(|p| self.chords.iter().all(|c| c.contains(p)))
            && self.involution_pairs_verdict
            && self.proof_trace.iter().all(|f| f.holds)
    }

    pub fn failed_facts(&self) -> impl Iterator<Item = &TraceFact> {
        self.proof_trace.iter().filter(|f| !f.holds)
    }
}

/// Records a fact; an error while evaluating it counts as failure.
fn record<E>(trace: &mut Vec<TraceFact>, label: impl Into<String>, result: Result<bool, E>) {
    trace.push(TraceFact { label: label.into(), holds: matches!(result, Ok(true)) });
}

fn collinear_fact(trace: &mut Vec<TraceFact>, names: [&str; 3], pts: [&ProjPoint; 3]) {
    let label = format!("collinear {{{}, {}, {}}}", names[0], names[1], names[2]);
    record::<()>(trace, label, Ok(proj::are_collinear(pts[0], pts[1], pts[2])));
}

/// Adds the conclusion on `sigma` and seals the certificate.
fn close(
    kind: TheoremKind,
    sigma: &Conic,
    six: &DerivedSix,
    mut trace: Vec<TraceFact>,
) -> Result<ConcurrencyCertificate, TheoremError> {
    let pairs = six.pairs();
    let chords = pairs.clone().map(|p| proj::join(&p.first, &p.second).expect("six points are distinct"));
    let concurrency_determinant = proj::concurrency_determinant(&chords[0], &chords[1], &chords[2]);
    let common_point = concurrency_determinant
        .is_zero()
        .then(|| proj::meet(&chords[0], &chords[1]).expect("chords of distinct pairs differ"));

    let carrier = Carrier::conic(sigma, &six.u);
    let involution_pairs_verdict = carrier.as_ref().is_ok_and(|c| in_involution(c, &pairs).unwrap_or(false));
    let by_det = carrier.as_ref().map_err(Clone::clone).and_then(|c| in_involution_determinant(c, &pairs));
    let by_cr = carrier.as_ref().map_err(Clone::clone).and_then(|c| in_involution_cross_ratio(c, &pairs));
    record(&mut trace, "(UX), (VY), (WZ) in involution on sigma: determinant criterion", by_det);
    record(&mut trace, "(UX), (VY), (WZ) in involution on sigma: cross-ratio criterion", by_cr);
    record(
        &mut trace,
        "fact B: chords UX, VY, WZ concurrent and pairs in involution",
        concurrent_iff_involution(sigma, &pairs).map(|t| t.concurrent && t.involution),
    );

    let cert = ConcurrencyCertificate {
        kind,
        field: sigma.field(),
        six: six.clone(),
        chords,
        concurrency_determinant,
        common_point,
        involution_pairs_verdict,
        proof_trace: trace,
    };
    if cert.holds() {
        Ok(cert)
    } else {
        Err(TheoremError::TheoremViolation(Box::new(cert)))
    }
}
