//! Involutions on a parametrized line or conic.
//!
//! An involution of the parameter line is a symmetric bilinear relation
//! `α·t·t' + β·(t + t') + γ = 0`; its matrix `[[β, γ], [−α, −β]]` has trace
//! zero. Lines and conics share this code by working on parameters.

use thiserror::Error;

use crate::conic::{Conic, ConicError, ConicParametrization};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{self, Vec3};
use crate::proj::{self, cross_ratio_params, Param, ProjError, ProjLine, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvolutionError {
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error("point {0} is not on the carrier")]
    PointNotOnCarrier(ProjPoint),
    #[error("the two pairs share a point")]
    OverlappingPairs,
    #[error("no involution exchanges the given pairs")]
    NoInvolution,
    #[error("fewer than two disjoint pairs; the involution is not determined")]
    Underdetermined,
    #[error("cross-ratio criterion does not apply to these pairs")]
    CriterionInapplicable,
    #[error("involution criteria disagree")]
    CriterionMismatch,
    #[error("three of the quadrangle vertices are collinear")]
    DegenerateQuadrangle,
    #[error("line passes through a quadrangle vertex")]
    LineThroughVertex,
    #[error("the six points are not distinct")]
    DuplicatePoints,
    #[error("point {0} is not on the conic")]
    PointsNotOnConic(ProjPoint),
    #[error("concurrency and involution verdicts differ")]
    FactViolation,
}

/// An unordered pair of points; `(P, P)` is a fixed point.
#[derive(Clone, Debug, Eq)]
pub struct PointPair {
    pub first: ProjPoint,
    pub second: ProjPoint,
}

impl PointPair {
    pub fn new(first: ProjPoint, second: ProjPoint) -> Self {
        PointPair { first, second }
    }

    pub fn is_fixed(&self) -> bool {
        self.first == self.second
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        &self.first == p || &self.second == p
    }

    pub fn shares_point(&self, other: &PointPair) -> bool {
        other.contains(&self.first) || other.contains(&self.second)
    }

    pub fn flipped(&self) -> PointPair {
        PointPair::new(self.second.clone(), self.first.clone())
    }
}

impl PartialEq for PointPair {
    fn eq(&self, other: &Self) -> bool {
        (self.first == other.first && self.second == other.second)
            || (self.first == other.second && self.second == other.first)
    }
}

/// A line with a fixed projective frame: parameter `t` is `origin + t·direction`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineChart {
    line: ProjLine,
    origin: ProjPoint,
    direction: ProjPoint,
}

impl LineChart {
    /// Deterministic frame. For an affine line the direction is its point at
    /// infinity, so the x-axis gets `t = x`.
    pub fn new(line: ProjLine) -> Self {
        let field = line.field();
        let mut candidates = [2usize, 1, 0].into_iter().filter_map(|k| {
            let mut e = [field.zero(), field.zero(), field.zero()];
            e[k] = field.one();
            ProjPoint::from_vec(linalg::cross(line.coeffs(), &e)).ok()
        });
        let direction = candidates.next().expect("line has points");
        let origin = candidates.find(|p| *p != direction).expect("line has two points");
        LineChart { line, origin, direction }
    }

    pub fn with_frame(origin: ProjPoint, direction: ProjPoint) -> Result<Self, InvolutionError> {
        let line = proj::join(&origin, &direction)?;
        Ok(LineChart { line, origin, direction })
    }

    pub fn line(&self) -> &ProjLine {
        &self.line
    }

    pub fn point_of_param(&self, t: &Param) -> ProjPoint {
        let v = linalg::add(
            &linalg::scale(t.den(), self.origin.coords()),
            &linalg::scale(t.num(), self.direction.coords()),
        );
        ProjPoint::from_vec(v).expect("frame points are independent")
    }

    pub fn param_of_point(&self, p: &ProjPoint) -> Result<Param, InvolutionError> {
        if !self.line.contains(p) {
            return Err(InvolutionError::PointNotOnCarrier(p.clone()));
        }
        let w = linalg::cross(self.origin.coords(), self.direction.coords());
        let k = (0..3).find(|&k| !w[k].is_zero()).expect("frame points are independent");
        let num = -&linalg::cross(p.coords(), self.origin.coords())[k];
        let den = linalg::cross(p.coords(), self.direction.coords())[k].clone();
        Ok(Param::from_homogeneous(num, den).expect("point is nonzero"))
    }
}

/// Where an involution lives: a charted line or a parametrized conic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Carrier {
    Line(LineChart),
    Conic(ConicParametrization),
}

impl Carrier {
    pub fn line(l: ProjLine) -> Self {
        Carrier::Line(LineChart::new(l))
    }

    pub fn conic(c: &Conic, base: &ProjPoint) -> Result<Self, InvolutionError> {
        Ok(Carrier::Conic(c.parametrize(base)?))
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Carrier::Line(l) => l.line().field(),
            Carrier::Conic(c) => c.field(),
        }
    }

    pub fn param_of_point(&self, p: &ProjPoint) -> Result<Param, InvolutionError> {
        match self {
            Carrier::Line(l) => l.param_of_point(p),
            Carrier::Conic(c) => c.param_of_point(p).map_err(|e| match e {
                ConicError::PointNotOnConic(p) => InvolutionError::PointNotOnCarrier(p),
                other => other.into(),
            }),
        }
    }

    pub fn point_of_param(&self, t: &Param) -> ProjPoint {
        match self {
            Carrier::Line(l) => l.point_of_param(t),
            Carrier::Conic(c) => c.point_of_param(t),
        }
    }

    fn params(&self, pair: &PointPair) -> Result<(Param, Param), InvolutionError> {
        Ok((self.param_of_point(&pair.first)?, self.param_of_point(&pair.second)?))
    }
}

/// A non-identity projective involution of a carrier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Involution {
    carrier: Carrier,
    matrix: [[Scalar; 2]; 2],
}

impl Involution {
    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// The 2×2 matrix acting on homogeneous parameters `(num, den)`.
    pub fn matrix(&self) -> &[[Scalar; 2]; 2] {
        &self.matrix
    }

    pub fn apply_param(&self, t: &Param) -> Param {
        let m = &self.matrix;
        let num = &m[0][0] * t.num() + &m[0][1] * t.den();
        let den = &m[1][0] * t.num() + &m[1][1] * t.den();
        Param::from_homogeneous(num, den).expect("involution matrix is invertible")
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint, InvolutionError> {
        let t = self.carrier.param_of_point(p)?;
        Ok(self.carrier.point_of_param(&self.apply_param(&t)))
    }

    pub fn swaps(&self, pair: &PointPair) -> Result<bool, InvolutionError> {
        Ok(self.apply(&pair.first)? == pair.second)
    }
}

/// `(t·t', t + t', 1)` in homogeneous form: the coefficients a pair
/// contributes to the relation `α·t·t' + β·(t + t') + γ = 0`.
fn relation_row((p, q): &(Param, Param)) -> Vec3 {
    [p.num() * q.num(), p.num() * q.den() + p.den() * q.num(), p.den() * q.den()]
}

fn pairs_disjoint(a: &(Param, Param), b: &(Param, Param)) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
}

pub fn involution_from_params(
    carrier: Carrier,
    a: &(Param, Param),
    b: &(Param, Param),
) -> Result<Involution, InvolutionError> {
    if !pairs_disjoint(a, b) {
        return Err(InvolutionError::OverlappingPairs);
    }
    let [alpha, beta, gamma] = linalg::cross(&relation_row(a), &relation_row(b));
    let det = &(&alpha * &gamma) - &(&beta * &beta);
    if det.is_zero() {
        return Err(InvolutionError::NoInvolution);
    }
    let matrix = [[beta.clone(), gamma], [-alpha, -beta]];
    Ok(Involution { carrier, matrix })
}

/// The unique involution of `carrier` exchanging both pairs.
pub fn involution_from_two_pairs(
    carrier: Carrier,
    pair1: &PointPair,
    pair2: &PointPair,
) -> Result<Involution, InvolutionError> {
    let a = carrier.params(pair1)?;
    let b = carrier.params(pair2)?;
    involution_from_params(carrier, &a, &b)
}

fn require_determined(pairs: &[(Param, Param); 3]) -> Result<(), InvolutionError> {
    let determined = (0..3).any(|i| (i + 1..3).any(|j| pairs_disjoint(&pairs[i], &pairs[j])));
    if determined {
        Ok(())
    } else {
        Err(InvolutionError::Underdetermined)
    }
}

/// Determinant criterion: the three relation rows are dependent. Handles
/// fixed-point pairs `(t, t)`.
pub fn in_involution_params(pairs: &[(Param, Param); 3]) -> Result<bool, InvolutionError> {
    require_determined(pairs)?;
    let [r0, r1, r2] = [0, 1, 2].map(|i| relation_row(&pairs[i]));
    Ok(linalg::det_rows(&r0, &r1, &r2).is_zero())
}

const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Cross-ratio criterion: pairs `(P₁P₁')`, `(P₂P₂')`, `(P₃P₃')` belong to one
/// involution iff `cr(P₁,P₂,P₃,P₃') = cr(P₁',P₂',P₃',P₃)`.
///
/// Valid when `P₁,P₂,P₃` are distinct, `P₁',P₂',P₃'` are distinct and
/// `P₃ ≠ P₃'`; the pairs are reordered and flipped to reach such an
/// arrangement, and `CriterionInapplicable` is returned when none exists.
pub fn in_involution_params_cross_ratio(pairs: &[(Param, Param); 3]) -> Result<bool, InvolutionError> {
    require_determined(pairs)?;
    for order in ORDERS {
        for flips in 0..8u8 {
            let arranged: [(&Param, &Param); 3] = std::array::from_fn(|slot| {
                let (a, b) = &pairs[order[slot]];
                if flips & (1 << slot) != 0 {
                    (b, a)
                } else {
                    (a, b)
                }
            });
            let [(p1, q1), (p2, q2), (p3, q3)] = arranged;
            let distinct = |a: &Param, b: &Param, c: &Param| a != b && a != c && b != c;
            if !distinct(p1, p2, p3) || !distinct(q1, q2, q3) || p3 == q3 {
                continue;
            }
            let lhs = cross_ratio_params(p1, p2, p3, q3)?;
            let rhs = cross_ratio_params(q1, q2, q3, p3)?;
            return Ok(lhs == rhs);
        }
    }
    Err(InvolutionError::CriterionInapplicable)
}

fn pair_params(carrier: &Carrier, pairs: &[PointPair; 3]) -> Result<[(Param, Param); 3], InvolutionError> {
    Ok([carrier.params(&pairs[0])?, carrier.params(&pairs[1])?, carrier.params(&pairs[2])?])
}

/// Whether three pairs of points on `carrier` are pairs of one involution.
///
/// The determinant criterion decides; where the cross-ratio criterion also
/// applies it is evaluated as well and the two must agree.
pub fn in_involution(carrier: &Carrier, pairs: &[PointPair; 3]) -> Result<bool, InvolutionError> {
    let params = pair_params(carrier, pairs)?;
    let by_det = in_involution_params(&params)?;
    match in_involution_params_cross_ratio(&params) {
        Ok(by_cr) if by_cr != by_det => Err(InvolutionError::CriterionMismatch),
        Ok(_) | Err(InvolutionError::CriterionInapplicable) => Ok(by_det),
        Err(e) => Err(e),
    }
}

pub fn in_involution_cross_ratio(carrier: &Carrier, pairs: &[PointPair; 3]) -> Result<bool, InvolutionError> {
    in_involution_params_cross_ratio(&pair_params(carrier, pairs)?)
}

pub fn in_involution_determinant(carrier: &Carrier, pairs: &[PointPair; 3]) -> Result<bool, InvolutionError> {
    in_involution_params(&pair_params(carrier, pairs)?)
}

/// The pairs cut on `l` by the opposite sides of the complete quadrangle
/// `q`, ordered by sides `{12,34}`, `{13,24}`, `{14,23}`.
pub fn quadrangle_involution_pairs(q: [&ProjPoint; 4], l: &ProjLine) -> Result<[PointPair; 3], InvolutionError> {
    for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        if proj::are_collinear(q[i], q[j], q[k]) {
            return Err(InvolutionError::DegenerateQuadrangle);
        }
    }
    if q.iter().any(|v| l.contains(v)) {
        return Err(InvolutionError::LineThroughVertex);
    }
    let cut =
        |a: usize, b: usize| -> Result<ProjPoint, InvolutionError> { Ok(proj::meet(&proj::join(q[a], q[b])?, l)?) };
    Ok([
        PointPair::new(cut(0, 1)?, cut(2, 3)?),
        PointPair::new(cut(0, 2)?, cut(1, 3)?),
        PointPair::new(cut(0, 3)?, cut(1, 2)?),
    ])
}

/// Outcome of testing three chords of a conic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChordTest {
    pub concurrent: bool,
    pub involution: bool,
    pub common_point: Option<ProjPoint>,
}

/// Three chords `UX`, `VY`, `WZ` of a conic are concurrent exactly when
/// `(UX)`, `(VY)`, `(WZ)` are pairs of an involution on the conic. Both
/// sides are computed independently; disagreement is an error.
pub fn concurrent_iff_involution(c: &Conic, pairs: &[PointPair; 3]) -> Result<ChordTest, InvolutionError> {
    let points: Vec<&ProjPoint> = pairs.iter().flat_map(|p| [&p.first, &p.second]).collect();
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(InvolutionError::DuplicatePoints);
        }
        if !c.contains(p) {
            return Err(InvolutionError::PointsNotOnConic((*p).clone()));
        }
    }
    let chords = [0, 1, 2].map(|i| proj::join(&pairs[i].first, &pairs[i].second));
    let [a, b, d] = chords;
    let (a, b, d) = (a?, b?, d?);
    let concurrent = proj::are_concurrent(&a, &b, &d);
    let carrier = Carrier::conic(c, &pairs[0].first)?;
    let involution = in_involution(&carrier, pairs)?;
    if concurrent != involution {
        return Err(InvolutionError::FactViolation);
    }
    let common_point = if concurrent { Some(proj::meet(&a, &b)?) } else { None };
    Ok(ChordTest { concurrent, involution, common_point })
}
