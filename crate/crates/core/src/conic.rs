//! Conics as symmetric 3×3 forms.
//!
//! Every intersection in this module is taken through a point already known
//! to be common, so results never leave the base field: a line through a
//! point of a conic meets it again rationally, and two conics sharing three
//! points share a rational fourth.

use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::linalg::{self, Mat3, Vec3};
use crate::proj::{self, Param, ProjError, ProjLine, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConicError {
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("zero matrix does not define a conic")]
    ZeroMatrix,
    #[error("points do not determine a unique non-degenerate conic")]
    DegeneratePosition,
    #[error("duplicate points")]
    DuplicatePoints,
    #[error("points are collinear")]
    CollinearInput,
    #[error("operation needs the rational field, got {0}")]
    WrongField(FieldSpec),
    #[error("point at infinity where an affine point is required")]
    PointAtInfinity,
    #[error("conic is degenerate (rank {0})")]
    DegenerateConic(usize),
    #[error("point {0} is not on the conic")]
    PointNotOnConic(ProjPoint),
    #[error("point {0} is not on the line")]
    PointNotOnLine(ProjPoint),
    #[error("points are not common to both conics")]
    NotCommonPoints,
    #[error("the two conics coincide")]
    IdenticalConics,
    #[error("fourth common point {0} coincides with a known one")]
    TangentialContact(ProjPoint),
    #[error("conic is not a circle")]
    NotACircle,
}

/// A conic `Pᵀ·M·P = 0`, with `M` symmetric and scaled so that its first
/// nonzero entry (row-major) is 1. The rank is computed once.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Conic {
    matrix: Mat3,
    rank: usize,
}

impl Conic {
    pub fn from_matrix(m: Mat3) -> Result<Self, ConicError> {
        if !m.is_symmetric() {
            return Err(ConicError::NotSymmetric);
        }
        let lead = m.0.iter().flatten().find(|s| !s.is_zero()).ok_or(ConicError::ZeroMatrix)?;
        let matrix = if lead.is_one() { m.clone() } else { m.scaled(&lead.inv().expect("nonzero")) };
        let rank = matrix.rank();
        Ok(Conic { matrix, rank })
    }

    /// From the equation `xx·x² + xy·xy + yy·y² + xz·xz + yz·yz + zz·z² = 0`.
    pub fn from_equation(coeffs: [Scalar; 6]) -> Result<Self, ConicError> {
        let [xx, xy, yy, xz, yz, zz] = coeffs;
        let half = xx.field().ratio(1, 2);
        let xy = &xy * &half;
        let xz = &xz * &half;
        let yz = &yz * &half;
        Self::from_matrix(Mat3([[xx, xy.clone(), xz.clone()], [xy, yy, yz.clone()], [xz, yz, zz]]))
    }

    pub fn from_equation_ints(field: FieldSpec, c: [i64; 6]) -> Result<Self, ConicError> {
        Self::from_equation(c.map(|n| field.int(n)))
    }

    /// `Tᵀ·M·T`: the conic pulled back along the collineation `P ↦ T·P`.
    pub fn pullback(&self, t: &Mat3) -> Result<Self, ConicError> {
        Self::from_matrix(t.transpose().mul(&self.matrix).mul(t))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_degenerate(&self) -> bool {
        self.rank < 3
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    /// `Pᵀ·M·P`.
    pub fn evaluate(&self, p: &ProjPoint) -> Scalar {
        self.matrix.bilinear(p.coords(), p.coords())
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.evaluate(p).is_zero()
    }

    /// Leading form `x² + y²`, i.e. the conic passes through the circular points.
    pub fn is_circle(&self) -> bool {
        let m = &self.matrix.0;
        self.field().is_rational() && m[0][0].is_one() && m[1][1].is_one() && m[0][1].is_zero()
    }

    fn require_nondegenerate(&self) -> Result<(), ConicError> {
        if self.is_degenerate() {
            Err(ConicError::DegenerateConic(self.rank))
        } else {
            Ok(())
        }
    }

    pub fn polar(&self, p: &ProjPoint) -> Result<ProjLine, ConicError> {
        self.require_nondegenerate()?;
        Ok(ProjLine::from_vec(self.matrix.mul_vec(p.coords()))?)
    }

    pub fn pole(&self, l: &ProjLine) -> Result<ProjPoint, ConicError> {
        self.require_nondegenerate()?;
        Ok(ProjPoint::from_vec(self.matrix.adjugate().mul_vec(l.coeffs()))?)
    }

    /// The other point where `l` meets the conic, given the known point `p`.
    /// A tangent line returns `p` itself with the tangent flag set.
    pub fn second_intersection(&self, l: &ProjLine, p: &ProjPoint) -> Result<LineMeet, ConicError> {
        self.require_nondegenerate()?;
        if !self.contains(p) {
            return Err(ConicError::PointNotOnConic(p.clone()));
        }
        if !l.contains(p) {
            return Err(ConicError::PointNotOnLine(p.clone()));
        }
        let q = other_point_on_line(l, p);
        // On s·P + t·Q the form restricts to t·(2s·PᵀMQ + t·QᵀMQ).
        let pq = self.matrix.bilinear(p.coords(), &q);
        if pq.is_zero() {
            return Ok(LineMeet { point: p.clone(), tangent: true });
        }
        let qq = self.matrix.bilinear(&q, &q);
        let two_pq = &pq + &pq;
        let v = linalg::sub(&linalg::scale(&qq, p.coords()), &linalg::scale(&two_pq, &q));
        Ok(LineMeet { point: ProjPoint::from_vec(v)?, tangent: false })
    }

    pub fn parametrize(&self, base: &ProjPoint) -> Result<ConicParametrization, ConicError> {
        ConicParametrization::new(self.clone(), base.clone())
    }
}

/// Result of [`Conic::second_intersection`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineMeet {
    pub point: ProjPoint,
    pub tangent: bool,
}

/// A point of `l` different from `p`, chosen deterministically.
fn other_point_on_line(l: &ProjLine, p: &ProjPoint) -> Vec3 {
    let field = l.field();
    (0..3)
        .map(|k| {
            let mut e = [field.zero(), field.zero(), field.zero()];
            e[k] = field.one();
            linalg::cross(l.coeffs(), &e)
        })
        .find(|v| !linalg::is_zero(v) && !linalg::is_zero(&linalg::cross(v, p.coords())))
        .expect("a line carries at least two points")
}

/// The conic through five points, as the kernel of the 5×6 incidence system.
pub fn conic_through_five(points: [&ProjPoint; 5]) -> Result<Conic, ConicError> {
    for i in 0..5 {
        for j in i + 1..5 {
            if points[i] == points[j] {
                return Err(ConicError::DuplicatePoints);
            }
        }
    }
    let field = points[0].field();
    let rows = points
        .iter()
        .map(|p| {
            let [x, y, z] = p.coords();
            vec![x * x, x * y, y * y, x * z, y * z, z * z]
        })
        .collect();
    let kernel = linalg::kernel(rows, field);
    if kernel.len() != 1 {
        return Err(ConicError::DegeneratePosition);
    }
    let c: [Scalar; 6] = kernel.into_iter().next().expect("one vector").try_into().expect("six entries");
    let conic = Conic::from_equation(c)?;
    if conic.is_degenerate() {
        return Err(ConicError::DegeneratePosition);
    }
    Ok(conic)
}

/// The circle `x² + y² + d·xz + e·yz + f·z² = 0` through three affine points.
pub fn circle_through_three(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Result<Conic, ConicError> {
    let field = a.field();
    if !field.is_rational() {
        return Err(ConicError::WrongField(field));
    }
    let pts = [a, b, c].map(|p| p.to_affine().ok_or(ConicError::PointAtInfinity));
    let [(ax, ay), (bx, by), (cx, cy)] = [pts[0].clone()?, pts[1].clone()?, pts[2].clone()?];
    let one = field.one();
    let m = Mat3([
        [ax.clone(), ay.clone(), one.clone()],
        [bx.clone(), by.clone(), one.clone()],
        [cx.clone(), cy.clone(), one],
    ]);
    let det = m.det();
    if det.is_zero() {
        return Err(ConicError::CollinearInput);
    }
    let rhs = [-(&ax * &ax + &ay * &ay), -(&bx * &bx + &by * &by), -(&cx * &cx + &cy * &cy)];
    let sol = linalg::scale(&det.inv().expect("nonzero"), &m.adjugate().mul_vec(&rhs));
    let [d, e, f] = sol;
    Conic::from_equation([field.one(), field.zero(), field.one(), d, e, f])
}

/// Recovers `ℓ` from a member `N` of a pencil known to split as `m ∪ ℓ`,
/// i.e. `XᵀNX = (m·X)(ℓ·X)`. `None` if `N` does not contain `m`.
fn split_off_line(n: &Mat3, m: &ProjLine) -> Option<Vec3> {
    let mv = m.coeffs();
    let i = (0..3).find(|&i| !mv[i].is_zero())?;
    let inv = mv[i].inv()?;
    let li = &n.0[i][i] * &inv;
    let l: Vec3 = std::array::from_fn(|j| {
        if j == i {
            li.clone()
        } else {
            let twice = &n.0[i][j] + &n.0[i][j];
            &(&twice - &(&mv[j] * &li)) * &inv
        }
    });
    // Check N = (m·ℓᵀ + ℓ·mᵀ)/2 exactly.
    let half = n.field().ratio(1, 2);
    let consistent = (0..3).all(|r| (0..3).all(|c| n.0[r][c] == &(&(&mv[r] * &l[c]) + &(&l[r] * &mv[c])) * &half));
    consistent.then_some(l)
}

/// The fourth common point of two non-degenerate conics through the three
/// known common points `p1`, `p2`, `p3`.
///
/// The pencil member vanishing on a third point of line `p1p2` contains that
/// line; its residual line passes through `p3` and the fourth point.
pub fn fourth_intersection(
    c1: &Conic,
    c2: &Conic,
    p1: &ProjPoint,
    p2: &ProjPoint,
    p3: &ProjPoint,
) -> Result<ProjPoint, ConicError> {
    c1.require_nondegenerate()?;
    c2.require_nondegenerate()?;
    if p1 == p2 || p1 == p3 || p2 == p3 {
        return Err(ConicError::DuplicatePoints);
    }
    if ![p1, p2, p3].iter().all(|p| c1.contains(p) && c2.contains(p)) {
        return Err(ConicError::NotCommonPoints);
    }
    if c1 == c2 {
        return Err(ConicError::IdenticalConics);
    }
    let m = proj::join(p1, p2)?;
    let r = linalg::add(p1.coords(), p2.coords());
    let lambda = c2.matrix.bilinear(&r, &r);
    let mu = -c1.matrix.bilinear(&r, &r);
    let member = c1.matrix.scaled(&lambda).add(&c2.matrix.scaled(&mu));
    if member.is_zero() {
        return Err(ConicError::IdenticalConics);
    }
    let residual = split_off_line(&member, &m).expect("pencil member through three points of a line contains it");
    let residual = ProjLine::from_vec(residual)?;
    let meet = c1.second_intersection(&residual, p3)?;
    if meet.tangent || &meet.point == p1 || &meet.point == p2 {
        return Err(ConicError::TangentialContact(meet.point));
    }
    Ok(meet.point)
}

/// Radical axis of two circles: `C₁ − C₂ = z·(radical axis)`.
pub fn radical_axis(c1: &Conic, c2: &Conic) -> Result<ProjLine, ConicError> {
    if !c1.is_circle() || !c2.is_circle() {
        return Err(ConicError::NotACircle);
    }
    if c1 == c2 {
        return Err(ConicError::IdenticalConics);
    }
    let diff = c1.matrix.sub(&c2.matrix);
    let infinity = ProjLine::at_infinity(c1.field());
    let axis = split_off_line(&diff, &infinity).expect("difference of circles contains the line at infinity");
    Ok(ProjLine::from_vec(axis)?)
}

/// The second common point of two circles through `d`: the fourth
/// intersection specialised to circles, whose other two common points are
/// the circular points at infinity.
pub fn circles_second_common_point(c1: &Conic, c2: &Conic, d: &ProjPoint) -> Result<ProjPoint, ConicError> {
    c1.require_nondegenerate()?;
    c2.require_nondegenerate()?;
    if !c1.contains(d) || !c2.contains(d) {
        return Err(ConicError::NotCommonPoints);
    }
    let axis = radical_axis(c1, c2)?;
    let meet = c1.second_intersection(&axis, d)?;
    if meet.tangent {
        return Err(ConicError::TangentialContact(meet.point));
    }
    Ok(meet.point)
}

/// Rational parametrization of a non-degenerate conic from a base point.
///
/// Parameter `t` names the line through the base point and `Q₀ + t·Q₁`,
/// where `Q₁` lies on the tangent at the base point; `∞` is the tangent
/// itself and so maps to the base point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConicParametrization {
    conic: Conic,
    base: ProjPoint,
    offset: ProjPoint,
    direction: ProjPoint,
}

impl ConicParametrization {
    pub fn new(conic: Conic, base: ProjPoint) -> Result<Self, ConicError> {
        conic.require_nondegenerate()?;
        if !conic.contains(&base) {
            return Err(ConicError::PointNotOnConic(base));
        }
        let tangent = conic.polar(&base)?;
        let field = conic.field();
        let basis = |k: usize| {
            let mut e = [field.zero(), field.zero(), field.zero()];
            e[k] = field.one();
            e
        };
        let direction = ProjPoint::from_vec(other_point_on_line(&tangent, &base))?;
        let offset =
            (0..3).map(basis).find(|e| !linalg::dot(tangent.coeffs(), e).is_zero()).expect("tangent is a nonzero line");
        let offset = ProjPoint::from_vec(offset)?;
        Ok(ConicParametrization { conic, base, offset, direction })
    }

    pub fn conic(&self) -> &Conic {
        &self.conic
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn field(&self) -> FieldSpec {
        self.conic.field()
    }

    pub fn point_of_param(&self, t: &Param) -> ProjPoint {
        // X = den·Q₀ + num·Q₁; the second intersection of line(base, X).
        let x = linalg::add(
            &linalg::scale(t.den(), self.offset.coords()),
            &linalg::scale(t.num(), self.direction.coords()),
        );
        let m = self.conic.matrix();
        let xx = m.bilinear(&x, &x);
        let bx = m.bilinear(self.base.coords(), &x);
        let two_bx = &bx + &bx;
        let v = linalg::sub(&linalg::scale(&xx, self.base.coords()), &linalg::scale(&two_bx, &x));
        ProjPoint::from_vec(v).expect("parametrization of a non-degenerate conic is total")
    }

    pub fn param_of_point(&self, p: &ProjPoint) -> Result<Param, ConicError> {
        if !self.conic.contains(p) {
            return Err(ConicError::PointNotOnConic(p.clone()));
        }
        if p == &self.base {
            return Ok(Param::infinity(self.field()));
        }
        let l = ProjLine::from_vec(linalg::cross(self.base.coords(), p.coords()))?;
        self.param_of_chord(&l)
    }

    /// Parameter of the second point on a line through the base; the tangent gives `∞`.
    pub fn param_of_chord(&self, l: &ProjLine) -> Result<Param, ConicError> {
        if !l.contains(&self.base) {
            return Err(ConicError::PointNotOnLine(self.base.clone()));
        }
        let num = -linalg::dot(l.coeffs(), self.offset.coords());
        let den = linalg::dot(l.coeffs(), self.direction.coords());
        Ok(Param::from_homogeneous(num, den).expect("a line through the base meets the tangent basis"))
    }

    /// Unhomogenised image of a finite parameter, continuous in `t`; used
    /// for drawing where the sign of `z` tracks passage through infinity.
    pub fn raw_point(&self, t: &Scalar) -> Vec3 {
        let x = linalg::add(self.offset.coords(), &linalg::scale(t, self.direction.coords()));
        let m = self.conic.matrix();
        let xx = m.bilinear(&x, &x);
        let bx = m.bilinear(self.base.coords(), &x);
        let two_bx = &bx + &bx;
        linalg::sub(&linalg::scale(&xx, self.base.coords()), &linalg::scale(&two_bx, &x))
    }
}
