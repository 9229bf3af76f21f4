//! Homogeneous points and lines of the projective plane, the projective
//! line of parameters, and cross-ratio.
//!
//! Points and lines are stored canonically: the first nonzero coordinate is
//! scaled to 1, so equality of projective objects is equality of the stored
//! triples.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::linalg::{self, Vec3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjError {
    #[error("all homogeneous coordinates are zero")]
    ZeroVector,
    #[error("coordinates from different fields")]
    MixedFields,
    #[error("cannot join a point with itself")]
    EqualPoints,
    #[error("cannot meet a line with itself")]
    EqualLines,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("three or more of the points coincide")]
    TooManyCoincident,
}

fn canonical(v: Vec3) -> Result<Vec3, ProjError> {
    let field = v[0].field();
    if v.iter().any(|s| s.field() != field) {
        return Err(ProjError::MixedFields);
    }
    let lead = v.iter().find(|s| !s.is_zero()).ok_or(ProjError::ZeroVector)?;
    if lead.is_one() {
        return Ok(v);
    }
    let inv = lead.inv().expect("lead is nonzero");
    Ok(linalg::scale(&inv, &v))
}

fn fmt_triple(v: &Vec3, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "({}:{}:{})", v[0], v[1], v[2])
}

/// A point `(x:y:z)` of the projective plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint(Vec3);

/// A line `a·x + b·y + c·z = 0`, stored as `(a:b:c)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjLine(Vec3);

impl ProjPoint {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Result<Self, ProjError> {
        Self::from_vec([x, y, z])
    }

    pub fn from_vec(v: Vec3) -> Result<Self, ProjError> {
        canonical(v).map(ProjPoint)
    }

    pub fn from_ints(field: FieldSpec, c: [i64; 3]) -> Self {
        Self::from_vec(c.map(|n| field.int(n))).expect("nonzero integer triple")
    }

    /// The affine point `(x, y)`, i.e. `(x:y:1)`.
    pub fn affine(x: Scalar, y: Scalar) -> Self {
        let one = x.one_like();
        Self::from_vec([x, y, one]).expect("z = 1")
    }

    /// Affine point with rational coordinates `xn/xd`, `yn/yd`.
    pub fn affine_ratio(field: FieldSpec, (xn, xd): (i64, i64), (yn, yd): (i64, i64)) -> Self {
        Self::affine(field.ratio(xn, xd), field.ratio(yn, yd))
    }

    pub fn coords(&self) -> &Vec3 {
        &self.0
    }

    pub fn field(&self) -> FieldSpec {
        self.0[0].field()
    }

    pub fn is_at_infinity(&self) -> bool {
        self.0[2].is_zero()
    }

    /// `(x/z, y/z)`, or `None` at infinity.
    pub fn to_affine(&self) -> Option<(Scalar, Scalar)> {
        let zinv = self.0[2].inv()?;
        Some((&self.0[0] * &zinv, &self.0[1] * &zinv))
    }

    pub fn lies_on(&self, l: &ProjLine) -> bool {
        linalg::dot(&self.0, &l.0).is_zero()
    }
}

impl ProjLine {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self, ProjError> {
        Self::from_vec([a, b, c])
    }

    pub fn from_vec(v: Vec3) -> Result<Self, ProjError> {
        canonical(v).map(ProjLine)
    }

    pub fn from_ints(field: FieldSpec, c: [i64; 3]) -> Self {
        Self::from_vec(c.map(|n| field.int(n))).expect("nonzero integer triple")
    }

    pub fn at_infinity(field: FieldSpec) -> Self {
        Self::from_ints(field, [0, 0, 1])
    }

    pub fn coeffs(&self) -> &Vec3 {
        &self.0
    }

    pub fn field(&self) -> FieldSpec {
        self.0[0].field()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.lies_on(self)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.0, f)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.0, f)
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line")?;
        fmt_triple(&self.0, f)
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.0, f)
    }
}

pub fn join(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, ProjError> {
    if p == q {
        return Err(ProjError::EqualPoints);
    }
    ProjLine::from_vec(linalg::cross(&p.0, &q.0))
}

pub fn meet(l: &ProjLine, m: &ProjLine) -> Result<ProjPoint, ProjError> {
    if l == m {
        return Err(ProjError::EqualLines);
    }
    ProjPoint::from_vec(linalg::cross(&l.0, &m.0))
}

pub fn are_collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    linalg::det_rows(&p.0, &q.0, &r.0).is_zero()
}

pub fn are_concurrent(l: &ProjLine, m: &ProjLine, n: &ProjLine) -> bool {
    linalg::det_rows(&l.0, &m.0, &n.0).is_zero()
}

/// The concurrency determinant itself, for certificates.
pub fn concurrency_determinant(l: &ProjLine, m: &ProjLine, n: &ProjLine) -> Scalar {
    linalg::det_rows(&l.0, &m.0, &n.0)
}

/// A point of the projective line of parameters: the value `num/den`,
/// with `den = 0` standing for ∞. Canonical as `(v:1)` or `(1:0)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Param {
    num: Scalar,
    den: Scalar,
}

impl Param {
    pub fn finite(value: Scalar) -> Self {
        let den = value.one_like();
        Param { num: value, den }
    }

    pub fn infinity(field: FieldSpec) -> Self {
        Param { num: field.one(), den: field.zero() }
    }

    /// `None` when both components vanish.
    pub fn from_homogeneous(num: Scalar, den: Scalar) -> Option<Self> {
        match den.inv() {
            Some(inv) => Some(Param::finite(&num * &inv)),
            None if num.is_zero() => None,
            None => Some(Param::infinity(num.field())),
        }
    }

    pub fn value(&self) -> Option<&Scalar> {
        (!self.den.is_zero()).then_some(&self.num)
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    pub fn num(&self) -> &Scalar {
        &self.num
    }

    pub fn den(&self) -> &Scalar {
        &self.den
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("∞"),
        }
    }
}

/// A cross-ratio value; `Infinity` when the denominator vanishes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CrossRatio {
    Finite(Scalar),
    Infinity,
}

impl CrossRatio {
    fn from_parts(num: Scalar, den: Scalar) -> Self {
        match den.inv() {
            Some(inv) => CrossRatio::Finite(&num * &inv),
            None => CrossRatio::Infinity,
        }
    }
}

fn three_coincide<T: PartialEq>(v: [&T; 4]) -> bool {
    (0..4).any(|i| (0..4).filter(|&j| v[j] == v[i]).count() >= 3)
}

/// `cr(a, b; c, d) = ((c−a)(d−b)) / ((c−b)(d−a))`, extended to ∞.
pub fn cross_ratio_params(a: &Param, b: &Param, c: &Param, d: &Param) -> Result<CrossRatio, ProjError> {
    if three_coincide([a, b, c, d]) {
        return Err(ProjError::TooManyCoincident);
    }
    // [ij] = n_i d_j − n_j d_i is the homogeneous form of (t_i − t_j).
    let br = |p: &Param, q: &Param| &p.num * &q.den - &q.num * &p.den;
    let num = br(c, a) * br(d, b);
    let den = br(c, b) * br(d, a);
    Ok(CrossRatio::from_parts(num, den))
}

/// Cross-ratio of four collinear points, same convention as
/// [`cross_ratio_params`] in any parametrization of their common line.
pub fn cross_ratio(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint, p4: &ProjPoint) -> Result<CrossRatio, ProjError> {
    let pts = [p1, p2, p3, p4];
    if three_coincide(pts) {
        return Err(ProjError::TooManyCoincident);
    }
    let other = pts.iter().find(|p| **p != p1).expect("not all four coincide");
    let line = join(p1, other)?;
    if !pts.iter().all(|p| p.lies_on(&line)) {
        return Err(ProjError::NotCollinear);
    }
    // P_i × P_j is a fixed multiple of the line vector times [ij]; any
    // component where the line is nonzero gives consistent brackets.
    let k = (0..3).find(|&k| !line.0[k].is_zero()).expect("line is nonzero");
    let br = |p: &ProjPoint, q: &ProjPoint| linalg::cross(&p.0, &q.0)[k].clone();
    let num = br(p3, p1) * br(p4, p2);
    let den = br(p3, p2) * br(p4, p1);
    Ok(CrossRatio::from_parts(num, den))
}

/// Every point of the plane over a prime field, as `(1:y:z)`, `(0:1:z)`,
/// `(0:0:1)`; `None` over the rationals.
pub fn all_points(field: FieldSpec) -> Option<Vec<ProjPoint>> {
    let elements: Vec<Scalar> = field.elements()?.collect();
    let (zero, one) = (field.zero(), field.one());
    let mut out = Vec::with_capacity(elements.len() * elements.len() + elements.len() + 1);
    for y in &elements {
        for z in &elements {
            out.push(ProjPoint([one.clone(), y.clone(), z.clone()]));
        }
    }
    for z in &elements {
        out.push(ProjPoint([zero.clone(), one.clone(), z.clone()]));
    }
    out.push(ProjPoint([zero.clone(), zero, one]));
    Some(out)
}

#[cfg(test)]
mod tests {

    #[test]
    fn plane_point_counts() {
        for p in [3u64, 11, 13] {
            let pts = all_points(FieldSpec::prime(p).unwrap()).unwrap();
            assert_eq!(pts.len() as u64, p * p + p + 1);
            let line = ProjLine::from_ints(FieldSpec::prime(p).unwrap(), [1, 2, 1]);
            assert_eq!(pts.iter().filter(|q| line.contains(q)).count() as u64, p + 1);
        }
        assert!(all_points(FieldSpec::Rationals).is_none());
    }
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn pt(c: [i64; 3]) -> ProjPoint {
        ProjPoint::from_ints(q(), c)
    }

    fn ln(c: [i64; 3]) -> ProjLine {
        ProjLine::from_ints(q(), c)
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&pt([1, 0, 1]), &pt([0, 1, 1])).unwrap(), ln([1, 1, -1]));
        assert_eq!(join(&pt([1, 0, 0]), &pt([0, 1, 0])).unwrap(), ln([0, 0, 1]));
        assert_eq!(join(&pt([1, 2, 1]), &pt([2, 4, 2])), Err(ProjError::EqualPoints));
    }

    #[test]
    fn meet_examples() {
        assert_eq!(meet(&ln([1, 0, 0]), &ln([0, 1, 0])).unwrap(), pt([0, 0, 1]));
        // x + y = 1 and x = y: hand solution x = y = 1/2.
        let p = meet(&ln([1, 1, -1]), &ln([1, -1, 0])).unwrap();
        assert_eq!(p, pt([1, 1, 2]));
        assert_eq!(p.to_affine().unwrap(), (q().ratio(1, 2), q().ratio(1, 2)));
        // y = 1 and y = 3 meet at infinity.
        let p = meet(&ln([0, 1, -1]), &ln([0, 1, -3])).unwrap();
        assert!(p.is_at_infinity());
        assert_eq!(meet(&ln([1, 1, 1]), &ln([2, 2, 2])), Err(ProjError::EqualLines));
    }

    #[test]
    fn incidence_predicates() {
        assert!(are_collinear(&pt([1, 0, 0]), &pt([0, 1, 0]), &pt([1, 1, 0])));
        assert!(!are_collinear(&pt([1, 0, 0]), &pt([0, 1, 0]), &pt([0, 0, 1])));
        assert!(are_collinear(&pt([1, 0, 0]), &pt([1, 0, 0]), &pt([0, 0, 1])));
        assert!(!are_concurrent(&ln([1, 0, 0]), &ln([0, 1, 0]), &ln([1, 1, -1])));
        assert!(are_concurrent(&ln([1, 0, 0]), &ln([0, 1, 0]), &ln([1, -1, 0])));
    }

    #[test]
    fn cross_ratio_examples() {
        let x = |n: i64, d: i64| ProjPoint::affine(q().ratio(n, d), q().zero());
        let cr = cross_ratio(&x(0, 1), &x(1, 1), &x(2, 1), &x(3, 1)).unwrap();
        assert_eq!(cr, CrossRatio::Finite(q().ratio(4, 3)));
        let inf = pt([1, 0, 0]);
        let cr = cross_ratio(&x(0, 1), &x(1, 1), &x(1, 2), &inf).unwrap();
        assert_eq!(cr, CrossRatio::Finite(q().int(-1)));
        let cr = cross_ratio(&x(0, 1), &x(1, 1), &x(5, 1), &x(5, 1)).unwrap();
        assert_eq!(cr, CrossRatio::Finite(q().one()));
        let cr = cross_ratio(&x(0, 1), &x(1, 1), &x(2, 1), &x(0, 1)).unwrap();
        assert_eq!(cr, CrossRatio::Infinity);
    }

    #[test]
    fn cross_ratio_errors() {
        let x = |n: i64| ProjPoint::affine(q().int(n), q().zero());
        assert_eq!(cross_ratio(&x(0), &x(1), &x(2), &pt([0, 1, 1])), Err(ProjError::NotCollinear));
        assert_eq!(cross_ratio(&x(1), &x(1), &x(2), &x(1)), Err(ProjError::TooManyCoincident));
    }

    #[test]
    fn param_cross_ratio_matches_formula() {
        let p = |n: i64| Param::finite(q().int(n));
        let cr = cross_ratio_params(&p(0), &p(1), &p(2), &p(3)).unwrap();
        assert_eq!(cr, CrossRatio::Finite(q().ratio(4, 3)));
        let inf = Param::infinity(q());
        let half = Param::finite(q().ratio(1, 2));
        assert_eq!(cross_ratio_params(&p(0), &p(1), &half, &inf).unwrap(), CrossRatio::Finite(q().int(-1)));
    }

    #[test]
    fn zero_and_mixed_vectors_rejected() {
        assert_eq!(ProjPoint::new(q().zero(), q().zero(), q().zero()), Err(ProjError::ZeroVector));
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(ProjPoint::new(q().one(), f.one(), q().one()), Err(ProjError::MixedFields));
    }
}
