//! Versioned JSON scene documents.
//!
//! Scalars travel as strings (`"a"`, `"a/b"`, or a residue), so documents
//! carry exact values of any size.

use std::collections::BTreeMap;
use std::str::FromStr;

use pappian::conic::conic_through_five;
use pappian::linalg::Mat3;
use pappian::theorem::{
    certify_t1, certify_t2, default_seeds, derive_six_t1, derive_six_t2, verify_theorem1, verify_theorem2,
    ConcurrencyCertificate, DerivedSix, SceneError, SceneT1, SceneT2, TheoremError, TheoremKind,
};
use pappian::{Conic, ConicError, FieldSpec, ProjPoint, Scalar};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";

pub const T1_POINTS: [&str; 4] = ["A", "B", "C", "D"];
pub const T2_POINTS: [&str; 6] = ["A", "B", "C", "D", "E", "F"];

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed scene JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0:?}, expected {SCHEMA_VERSION:?}")]
    Version(String),
    #[error("missing point {0}")]
    MissingPoint(&'static str),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("missing conic sigma")]
    MissingSigma,
    #[error("unknown conic {0}")]
    UnknownConic(String),
    #[error("bad scalar {value:?} in {place}: {reason}")]
    Scalar { place: String, value: String, reason: String },
    #[error("{0} is the zero vector")]
    ZeroVector(String),
    #[error("a through-points conic needs exactly 5 points, got {0}")]
    ThroughCount(usize),
    #[error("conic sigma: {0}")]
    Conic(#[from] ConicError),
    #[error("theorem 1 scenes take no steiner_seeds")]
    UnexpectedSeeds,
    #[error(transparent)]
    Scene(#[from] SceneError),
}

/// A conic given by five points or by its symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ConicSpec {
    Through(Vec<[String; 3]>),
    Matrix([[String; 3]; 3]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDocument {
    pub schema_version: String,
    #[serde(with = "display_fromstr")]
    pub field: FieldSpec,
    #[serde(with = "kind_str")]
    pub kind: TheoremKind,
    pub points: BTreeMap<String, [String; 3]>,
    pub conics: BTreeMap<String, ConicSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steiner_seeds: Option<[[String; 3]; 2]>,
}

mod display_fromstr {
    use super::*;

    pub fn serialize<S: Serializer>(f: &FieldSpec, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(f)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FieldSpec, D::Error> {
        let s = String::deserialize(d)?;
        FieldSpec::from_str(&s).map_err(serde::de::Error::custom)
    }
}

mod kind_str {
    use super::*;

    pub fn serialize<S: Serializer>(k: &TheoremKind, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(k)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<TheoremKind, D::Error> {
        match String::deserialize(d)?.as_str() {
            "t1" => Ok(TheoremKind::T1),
            "t2" => Ok(TheoremKind::T2),
            other => Err(serde::de::Error::custom(format!("unknown scene kind {other:?}, expected t1 or t2"))),
        }
    }
}

fn triple(v: &[Scalar; 3]) -> [String; 3] {
    v.each_ref().map(|s| s.to_string())
}

fn point_strings(p: &ProjPoint) -> [String; 3] {
    triple(p.coords())
}

fn matrix_spec(c: &Conic) -> ConicSpec {
    ConicSpec::Matrix(c.matrix().0.each_ref().map(triple))
}

/// A validated scene of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scene {
    T1(SceneT1),
    T2(SceneT2),
}

impl Scene {
    pub fn kind(&self) -> TheoremKind {
        match self {
            Scene::T1(_) => TheoremKind::T1,
            Scene::T2(_) => TheoremKind::T2,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scene::T1(s) => s.field(),
            Scene::T2(s) => s.field(),
        }
    }

    pub fn sigma(&self) -> &Conic {
        match self {
            Scene::T1(s) => &s.sigma,
            Scene::T2(s) => &s.sigma,
        }
    }

    /// Named scene points in label order.
    pub fn named_points(&self) -> Vec<(&'static str, &ProjPoint)> {
        match self {
            Scene::T1(s) => T1_POINTS.into_iter().zip([&s.a, &s.b, &s.c, &s.d]).collect(),
            Scene::T2(s) => T2_POINTS.into_iter().zip([&s.a, &s.b, &s.c, &s.d, &s.e, &s.f]).collect(),
        }
    }

    pub fn derive_six(&self) -> Result<DerivedSix, TheoremError> {
        match self {
            Scene::T1(s) => derive_six_t1(s),
            Scene::T2(s) => derive_six_t2(s),
        }
    }

    pub fn verify(&self) -> Result<ConcurrencyCertificate, TheoremError> {
        match self {
            Scene::T1(s) => verify_theorem1(s),
            Scene::T2(s) => verify_theorem2(s),
        }
    }

    pub fn certify(&self, six: &DerivedSix) -> Result<ConcurrencyCertificate, TheoremError> {
        match self {
            Scene::T1(s) => certify_t1(s, six),
            Scene::T2(s) => certify_t2(s, six),
        }
    }

    pub fn to_document(&self) -> SceneDocument {
        let points = self.named_points().into_iter().map(|(name, p)| (name.to_string(), point_strings(p))).collect();
        let conics = BTreeMap::from([("sigma".to_string(), matrix_spec(self.sigma()))]);
        let steiner_seeds = match self {
            Scene::T1(_) => None,
            Scene::T2(s) => Some(s.seeds.each_ref().map(triple)),
        };
        SceneDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            field: self.field(),
            kind: self.kind(),
            points,
            conics,
            steiner_seeds,
        }
    }
}

impl From<SceneT1> for Scene {
    fn from(s: SceneT1) -> Self {
        Scene::T1(s)
    }
}

impl From<SceneT2> for Scene {
    fn from(s: SceneT2) -> Self {
        Scene::T2(s)
    }
}

impl SceneDocument {
    pub fn from_json(text: &str) -> Result<Self, DocError> {
        let doc: SceneDocument = serde_json::from_str(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(DocError::Version(doc.schema_version));
        }
        Ok(doc)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scene documents serialize");
        s.push('\n');
        s
    }

    fn scalar(&self, place: &str, value: &str) -> Result<Scalar, DocError> {
        self.field.parse_scalar(value).map_err(|e| DocError::Scalar {
            place: place.to_string(),
            value: value.to_string(),
            reason: e.to_string(),
        })
    }

    fn vector(&self, place: &str, v: &[String; 3]) -> Result<[Scalar; 3], DocError> {
        let [x, y, z] = v;
        let out = [self.scalar(place, x)?, self.scalar(place, y)?, self.scalar(place, z)?];
        if out.iter().all(Scalar::is_zero) {
            return Err(DocError::ZeroVector(place.to_string()));
        }
        Ok(out)
    }

    fn point(&self, place: &str, v: &[String; 3]) -> Result<ProjPoint, DocError> {
        let c = self.vector(place, v)?;
        Ok(ProjPoint::from_vec(c).expect("nonzero vector"))
    }

    fn sigma(&self) -> Result<Conic, DocError> {
        if let Some(name) = self.conics.keys().find(|k| *k != "sigma") {
            return Err(DocError::UnknownConic(name.clone()));
        }
        match self.conics.get("sigma").ok_or(DocError::MissingSigma)? {
            ConicSpec::Through(pts) => {
                if pts.len() != 5 {
                    return Err(DocError::ThroughCount(pts.len()));
                }
                let pts = pts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| self.point(&format!("sigma point {}", i + 1), p))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(conic_through_five([&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]])?)
            }
            ConicSpec::Matrix(rows) => {
                let mut m = Vec::with_capacity(3);
                for (i, row) in rows.iter().enumerate() {
                    let place = format!("sigma row {}", i + 1);
                    let [a, b, c] = row;
                    m.push([self.scalar(&place, a)?, self.scalar(&place, b)?, self.scalar(&place, c)?]);
                }
                let m: [[Scalar; 3]; 3] = m.try_into().expect("three rows");
                Ok(Conic::from_matrix(Mat3(m))?)
            }
        }
    }

    /// Parses and validates the scene the document describes.
    pub fn to_scene(&self) -> Result<Scene, DocError> {
        let names: &[&'static str] = match self.kind {
            TheoremKind::T1 => &T1_POINTS,
            TheoremKind::T2 => &T2_POINTS,
        };
        if let Some(name) = self.points.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(DocError::UnknownPoint(name.clone()));
        }
        let mut pts = Vec::with_capacity(names.len());
        for &name in names {
            let v = self.points.get(name).ok_or(DocError::MissingPoint(name))?;
            pts.push(self.point(&format!("point {name}"), v)?);
        }
        let sigma = self.sigma()?;
        let mut pts = pts.into_iter();
        let mut next = || pts.next().expect("all named points parsed");
        match self.kind {
            TheoremKind::T1 => {
                if self.steiner_seeds.is_some() {
                    return Err(DocError::UnexpectedSeeds);
                }
                Ok(Scene::T1(SceneT1::new(next(), next(), next(), next(), sigma)?))
            }
            TheoremKind::T2 => {
                let seeds = match &self.steiner_seeds {
                    Some([s1, s2]) => {
                        let place = "steiner_seeds";
                        let s1 =
                            [self.scalar(place, &s1[0])?, self.scalar(place, &s1[1])?, self.scalar(place, &s1[2])?];
                        let s2 =
                            [self.scalar(place, &s2[0])?, self.scalar(place, &s2[1])?, self.scalar(place, &s2[2])?];
                        [s1, s2]
                    }
                    None => default_seeds(self.field),
                };
                Ok(Scene::T2(SceneT2::new(next(), next(), next(), next(), next(), next(), sigma, seeds)?))
            }
        }
    }
}
