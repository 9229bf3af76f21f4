use thiserror::Error;

use crate::conic::Conic;
use crate::field::{FieldSpec, Scalar};
use crate::proj::{self, ProjPoint};

/// A scene that fails the hypotheses of its theorem.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SceneError {
    #[error("scene mixes coordinate fields")]
    MixedFields,
    #[error("theorem 1 scenes live over the rationals")]
    NotRational,
    #[error("theorem 1 scene points must be affine")]
    PointAtInfinity,
    #[error("A, B, C are collinear")]
    CollinearTriangle,
    #[error("D lies on a side line of ABC")]
    DOnSideLine,
    #[error("sigma is not a circle")]
    NotACircle,
    #[error("sigma is degenerate")]
    DegenerateSigma,
    #[error("sigma does not pass through D")]
    DNotOnSigma,
    #[error("D, E, F are collinear")]
    CollinearDEF,
    #[error("one of D, E, F lies on a side line of ABC")]
    DEFOnSideLine,
    #[error("sigma does not pass through D, E and F")]
    DEFNotOnSigma,
    #[error("Steiner seeds are unusable")]
    BadSeeds,
}

impl SceneError {
    /// Stable key for rejection statistics.
    pub fn label(self) -> &'static str {
        match self {
            SceneError::MixedFields => "mixed-fields",
            SceneError::NotRational => "not-rational",
            SceneError::PointAtInfinity => "point-at-infinity",
            SceneError::CollinearTriangle => "abc-collinear",
            SceneError::DOnSideLine => "d-on-side-line",
            SceneError::NotACircle => "sigma-not-circle",
            SceneError::DegenerateSigma => "sigma-degenerate",
            SceneError::DNotOnSigma => "d-not-on-sigma",
            SceneError::CollinearDEF => "def-collinear",
            SceneError::DEFOnSideLine => "def-on-side-line",
            SceneError::DEFNotOnSigma => "def-not-on-sigma",
            SceneError::BadSeeds => "bad-seeds",
        }
    }
}

fn on_side_line(p: &ProjPoint, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    proj::are_collinear(p, a, b) || proj::are_collinear(p, b, c) || proj::are_collinear(p, c, a)
}

/// Triangle `ABC`, a point `D` off its side lines and a circle through `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SceneT1 {
    pub a: ProjPoint,
    pub b: ProjPoint,
    pub c: ProjPoint,
    pub d: ProjPoint,
    pub sigma: Conic,
}

impl SceneT1 {
    pub fn new(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint, sigma: Conic) -> Result<Self, SceneError> {
        let field = a.field();
        if [&b, &c, &d].iter().any(|p| p.field() != field) || sigma.field() != field {
            return Err(SceneError::MixedFields);
        }
        if !field.is_rational() {
            return Err(SceneError::NotRational);
        }
        if [&a, &b, &c, &d].iter().any(|p| p.is_at_infinity()) {
            return Err(SceneError::PointAtInfinity);
        }
        if proj::are_collinear(&a, &b, &c) {
            return Err(SceneError::CollinearTriangle);
        }
        if on_side_line(&d, &a, &b, &c) {
            return Err(SceneError::DOnSideLine);
        }
        if !sigma.is_circle() {
            return Err(SceneError::NotACircle);
        }
        if sigma.is_degenerate() {
            return Err(SceneError::DegenerateSigma);
        }
        if !sigma.contains(&d) {
            return Err(SceneError::DNotOnSigma);
        }
        Ok(SceneT1 { a, b, c, d, sigma })
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }
}

/// Steiner seeds used unless a scene names its own.
pub fn default_seeds(field: FieldSpec) -> [[Scalar; 3]; 2] {
    [[1, 1, 1], [1, 2, 3]].map(|s| s.map(|n| field.int(n)))
}

/// Second seed pair for the seed-independence check.
pub fn alternate_seeds(field: FieldSpec) -> [[Scalar; 3]; 2] {
    [[2, 3, 5], [1, 1, 2]].map(|s| s.map(|n| field.int(n)))
}

/// Triangle `ABC`, non-collinear `D, E, F` off its side lines, a conic
/// through `D, E, F`, and the diagonal seeds of the Steiner pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SceneT2 {
    pub a: ProjPoint,
    pub b: ProjPoint,
    pub c: ProjPoint,
    pub d: ProjPoint,
    pub e: ProjPoint,
    pub f: ProjPoint,
    pub sigma: Conic,
    pub seeds: [[Scalar; 3]; 2],
}

impl SceneT2 {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: ProjPoint,
        b: ProjPoint,
        c: ProjPoint,
        d: ProjPoint,
        e: ProjPoint,
        f: ProjPoint,
        sigma: Conic,
        seeds: [[Scalar; 3]; 2],
    ) -> Result<Self, SceneError> {
        let field = a.field();
        if [&b, &c, &d, &e, &f].iter().any(|p| p.field() != field)
            || sigma.field() != field
            || seeds.iter().flatten().any(|s| s.field() != field)
        {
            return Err(SceneError::MixedFields);
        }
        if proj::are_collinear(&a, &b, &c) {
            return Err(SceneError::CollinearTriangle);
        }
        if proj::are_collinear(&d, &e, &f) {
            return Err(SceneError::CollinearDEF);
        }
        if [&d, &e, &f].iter().any(|p| on_side_line(p, &a, &b, &c)) {
            return Err(SceneError::DEFOnSideLine);
        }
        if sigma.is_degenerate() {
            return Err(SceneError::DegenerateSigma);
        }
        if ![&d, &e, &f].iter().all(|p| sigma.contains(p)) {
            return Err(SceneError::DEFNotOnSigma);
        }
        Ok(SceneT2 { a, b, c, d, e, f, sigma, seeds })
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn with_seeds(&self, seeds: [[Scalar; 3]; 2]) -> Result<Self, SceneError> {
        SceneT2::new(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
            self.f.clone(),
            self.sigma.clone(),
            seeds,
        )
    }
}
