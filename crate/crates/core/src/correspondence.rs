//! Point transformations: Euclidean inversion and the Steiner
//! correspondence of two conics sharing a self-polar triangle.

use thiserror::Error;

use crate::conic::{conic_through_five, Conic, ConicError};
use crate::field::{FieldSpec, Scalar};
use crate::involution::{InvolutionError, LineChart, PointPair};
use crate::linalg::{self, Mat3, Vec3};
use crate::proj::{self, Param, ProjError, ProjLine, ProjPoint};
use crate::roots;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorrespondenceError {
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error("operation requires the rational field, got {0}")]
    WrongField(FieldSpec),
    #[error("point is the pole of the inversion")]
    PoleInput,
    #[error("point at infinity is outside the domain")]
    PointAtInfinity,
    #[error("inversion power must be nonzero")]
    ZeroPower,
    #[error("conic is not a circle")]
    NotACircle,
    #[error("circle does not pass through the pole")]
    NotThroughPole,
    #[error("triangle vertices are collinear or coincide")]
    DegenerateTriangle,
    #[error("triangle is not self-polar for the conic")]
    NotSelfPolar,
    #[error("the two conics coincide")]
    IdenticalConics,
    #[error("characteristic cubic does not split into distinct roots over the base field")]
    NotRationallyDiagonalizable,
    #[error("characteristic cubic has a repeated root")]
    RepeatedEigenvalue,
    #[error("D, E, F are collinear")]
    CollinearDEF,
    #[error("seed triple has a zero entry")]
    ZeroSeedEntry,
    #[error("seed triples are proportional")]
    ProportionalSeeds,
    #[error("seed ratios are not pairwise distinct")]
    RepeatedSeedRatio,
    #[error("point {0} is a vertex of the self-polar triangle")]
    VertexInput(ProjPoint),
    #[error("line passes through a vertex of the triangle")]
    LineThroughVertex,
    #[error("line passes through no vertex of the triangle")]
    NotThroughVertex,
    #[error("line passes through two vertices of the triangle")]
    ThroughTwoVertices,
    #[error("not enough distinct samples")]
    TooFewSamples,
    #[error("sample {0} is not on the line")]
    SampleNotOnLine(ProjPoint),
    #[error("sample {0} lies on a side line of the triangle")]
    SampleOnSideLine(ProjPoint),
    #[error("extensional check failed: {0}")]
    FactViolation(&'static str),
}

/// A point transformation with a partial domain.
pub trait PointMap {
    fn map_point(&self, p: &ProjPoint) -> Result<ProjPoint, CorrespondenceError>;
}

/// Images of three pairs under `map`, pair by pair.
pub fn pushforward_pairs<M: PointMap + ?Sized>(
    map: &M,
    pairs: &[PointPair; 3],
) -> Result<[PointPair; 3], CorrespondenceError> {
    let push = |pair: &PointPair| -> Result<PointPair, CorrespondenceError> {
        Ok(PointPair::new(map.map_point(&pair.first)?, map.map_point(&pair.second)?))
    };
    Ok([push(&pairs[0])?, push(&pairs[1])?, push(&pairs[2])?])
}

/// Up to `n` points of `l` accepted by `keep`, from a deterministic scan
/// of the chart parameters `∞, 0, 1, −1, 2, −2, …`.
pub fn points_on_line(l: &ProjLine, n: usize, keep: impl Fn(&ProjPoint) -> bool) -> Vec<ProjPoint> {
    let chart = LineChart::new(l.clone());
    let field = l.field();
    let limit = field.modulus().map_or(u64::MAX, |p| p + 1);
    let mut out: Vec<ProjPoint> = Vec::new();
    let params = std::iter::once(Param::infinity(field)).chain((0i64..).flat_map(|k| {
        if k == 0 {
            vec![Param::finite(field.zero())]
        } else {
            vec![Param::finite(field.int(k)), Param::finite(field.int(-k))]
        }
    }));
    for (scanned, t) in params.enumerate() {
        if out.len() >= n || scanned as u64 >= 2 * limit.min(1 << 40) {
            break;
        }
        let p = chart.point_of_param(&t);
        if keep(&p) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Inversion in a circle of squared radius `power` about an affine pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionMap {
    pole: ProjPoint,
    power: Scalar,
}

impl InversionMap {
    pub fn new(pole: ProjPoint, power: Scalar) -> Result<Self, CorrespondenceError> {
        if !pole.field().is_rational() {
            return Err(CorrespondenceError::WrongField(pole.field()));
        }
        if power.field() != pole.field() {
            return Err(ProjError::MixedFields.into());
        }
        if pole.is_at_infinity() {
            return Err(CorrespondenceError::PointAtInfinity);
        }
        if power.is_zero() {
            return Err(CorrespondenceError::ZeroPower);
        }
        Ok(InversionMap { pole, power })
    }

    pub fn pole(&self) -> &ProjPoint {
        &self.pole
    }

    pub fn power(&self) -> &Scalar {
        &self.power
    }

    fn pole_xy(&self) -> (Scalar, Scalar) {
        self.pole.to_affine().expect("pole is affine")
    }

    pub fn invert(&self, p: &ProjPoint) -> Result<ProjPoint, CorrespondenceError> {
        if p.field() != self.pole.field() {
            return Err(ProjError::MixedFields.into());
        }
        let (x, y) = p.to_affine().ok_or(CorrespondenceError::PointAtInfinity)?;
        if p == &self.pole {
            return Err(CorrespondenceError::PoleInput);
        }
        let (px, py) = self.pole_xy();
        let dx = &x - &px;
        let dy = &y - &py;
        let r2 = &dx.square() + &dy.square();
        let k = &self.power / &r2;
        Ok(ProjPoint::affine(&px + &(&k * &dx), &py + &(&k * &dy)))
    }

    /// Image line of a circle `x² + y² + dx + ey + f` through the pole:
    /// `a·x + b·y + (k − a·p − b·q) = 0` with `a = 2p + d`, `b = 2q + e`.
    pub fn invert_circle_through_pole(&self, c: &Conic) -> Result<ProjLine, CorrespondenceError> {
        if c.field() != self.pole.field() {
            return Err(ProjError::MixedFields.into());
        }
        if !c.is_circle() {
            return Err(CorrespondenceError::NotACircle);
        }
        if c.is_degenerate() {
            return Err(ConicError::DegenerateConic(c.rank()).into());
        }
        if !c.contains(&self.pole) {
            return Err(CorrespondenceError::NotThroughPole);
        }
        let m = &c.matrix().0;
        let field = c.field();
        let two = field.int(2);
        let (p, q) = self.pole_xy();
        let a = &two * &(&p + &m[0][2]);
        let b = &two * &(&q + &m[1][2]);
        let constant = &(&self.power - &(&a * &p)) - &(&b * &q);
        Ok(ProjLine::new(a, b, constant)?)
    }
}

impl PointMap for InversionMap {
    fn map_point(&self, p: &ProjPoint) -> Result<ProjPoint, CorrespondenceError> {
        self.invert(p)
    }
}

/// Three non-collinear points; self-polarity is a property relative to a conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfPolarTriangle {
    vertices: [ProjPoint; 3],
}

impl SelfPolarTriangle {
    pub fn new(d1: ProjPoint, d2: ProjPoint, d3: ProjPoint) -> Result<Self, CorrespondenceError> {
        if d1.field() != d2.field() || d1.field() != d3.field() {
            return Err(ProjError::MixedFields.into());
        }
        if proj::are_collinear(&d1, &d2, &d3) {
            return Err(CorrespondenceError::DegenerateTriangle);
        }
        Ok(SelfPolarTriangle { vertices: [d1, d2, d3] })
    }

    pub fn vertices(&self) -> &[ProjPoint; 3] {
        &self.vertices
    }

    pub fn has_vertex(&self, p: &ProjPoint) -> bool {
        self.vertices.contains(p)
    }

    /// Side `i` joins the two vertices other than `i`.
    pub fn side(&self, i: usize) -> ProjLine {
        let [a, b] = [&self.vertices[(i + 1) % 3], &self.vertices[(i + 2) % 3]];
        proj::join(a, b).expect("vertices are distinct")
    }

    pub fn sides(&self) -> [ProjLine; 3] {
        [self.side(0), self.side(1), self.side(2)]
    }

    pub fn is_self_polar_for(&self, c: &Conic) -> bool {
        (0..3).all(|i| c.polar(&self.vertices[i]).is_ok_and(|p| p == self.side(i)))
    }

    /// Same triangle, vertices in any order.
    pub fn same_vertices(&self, other: &SelfPolarTriangle) -> bool {
        self.vertices.iter().all(|v| other.has_vertex(v))
    }
}

/// `P ↦ polar₁(P) ∩ polar₂(P)` for two conics with a common self-polar triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerMap {
    sigma1: Conic,
    sigma2: Conic,
    triangle: SelfPolarTriangle,
}

impl SteinerMap {
    pub fn new(sigma1: Conic, sigma2: Conic, triangle: SelfPolarTriangle) -> Result<Self, CorrespondenceError> {
        for c in [&sigma1, &sigma2] {
            if c.is_degenerate() {
                return Err(ConicError::DegenerateConic(c.rank()).into());
            }
            if c.field() != triangle.vertices[0].field() {
                return Err(ProjError::MixedFields.into());
            }
        }
        if sigma1 == sigma2 {
            return Err(CorrespondenceError::IdenticalConics);
        }
        if !triangle.is_self_polar_for(&sigma1) || !triangle.is_self_polar_for(&sigma2) {
            return Err(CorrespondenceError::NotSelfPolar);
        }
        Ok(SteinerMap { sigma1, sigma2, triangle })
    }

    pub fn sigma1(&self) -> &Conic {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &Conic {
        &self.sigma2
    }

    pub fn triangle(&self) -> &SelfPolarTriangle {
        &self.triangle
    }

    pub fn field(&self) -> FieldSpec {
        self.sigma1.field()
    }

    fn on_side_line(&self, p: &ProjPoint) -> bool {
        self.triangle.sides().iter().any(|s| s.contains(p))
    }

    /// Side-line points go to the opposite vertex.
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint, CorrespondenceError> {
        if p.field() != self.field() {
            return Err(ProjError::MixedFields.into());
        }
        if self.triangle.has_vertex(p) {
            return Err(CorrespondenceError::VertexInput(p.clone()));
        }
        let p1 = self.sigma1.matrix().mul_vec(p.coords());
        let p2 = self.sigma2.matrix().mul_vec(p.coords());
        ProjPoint::from_vec(linalg::cross(&p1, &p2)).map_err(|_| CorrespondenceError::VertexInput(p.clone()))
    }

    fn check_samples(&self, l: &ProjLine, samples: &[ProjPoint]) -> Result<(), CorrespondenceError> {
        for (i, s) in samples.iter().enumerate() {
            if !l.contains(s) {
                return Err(CorrespondenceError::SampleNotOnLine(s.clone()));
            }
            if samples[..i].contains(s) {
                return Err(CorrespondenceError::TooFewSamples);
            }
        }
        Ok(())
    }

    /// Conic through the images of at least five samples of `l`, checked
    /// against every further image and the three vertices.
    pub fn line_image(&self, l: &ProjLine, samples: &[ProjPoint]) -> Result<Conic, CorrespondenceError> {
        if self.triangle.vertices.iter().any(|v| l.contains(v)) {
            return Err(CorrespondenceError::LineThroughVertex);
        }
        self.check_samples(l, samples)?;
        if samples.len() < 5 {
            return Err(CorrespondenceError::TooFewSamples);
        }
        if let Some(s) = samples.iter().find(|s| self.on_side_line(s)) {
            return Err(CorrespondenceError::SampleOnSideLine(s.clone()));
        }
        let images = samples.iter().map(|s| self.apply(s)).collect::<Result<Vec<_>, _>>()?;
        let conic = conic_through_five([&images[0], &images[1], &images[2], &images[3], &images[4]])?;
        if !images[5..].iter().all(|p| conic.contains(p)) {
            return Err(CorrespondenceError::FactViolation("line image is not a conic"));
        }
        if !self.triangle.vertices.iter().all(|v| conic.contains(v)) {
            return Err(CorrespondenceError::FactViolation("line image misses a vertex"));
        }
        Ok(conic)
    }

    /// Image line of a line through exactly one vertex, with all sample
    /// images checked to be collinear.
    pub fn vertex_line_image(&self, l: &ProjLine, samples: &[ProjPoint]) -> Result<ProjLine, CorrespondenceError> {
        let through = self.triangle.vertices.iter().filter(|v| l.contains(v)).count();
        match through {
            0 => return Err(CorrespondenceError::NotThroughVertex),
            1 => {}
            _ => return Err(CorrespondenceError::ThroughTwoVertices),
        }
        self.check_samples(l, samples)?;
        let images = samples.iter().map(|s| self.apply(s)).collect::<Result<Vec<_>, _>>()?;
        let first = images.first().ok_or(CorrespondenceError::TooFewSamples)?;
        let other = images.iter().find(|p| *p != first).ok_or(CorrespondenceError::TooFewSamples)?;
        let line = proj::join(first, other)?;
        if !images.iter().all(|p| line.contains(p)) {
            return Err(CorrespondenceError::FactViolation("vertex line image is not a line"));
        }
        Ok(line)
    }
}

impl PointMap for SteinerMap {
    fn map_point(&self, p: &ProjPoint) -> Result<ProjPoint, CorrespondenceError> {
        self.apply(p)
    }
}

/// Coefficients `[c₀, c₁, c₂, c₃]` of `det(A − λB)`.
pub fn characteristic_cubic(a: &Mat3, b: &Mat3) -> [Scalar; 4] {
    [a.det(), -&a.adjugate().mul(b).trace(), a.mul(&b.adjugate()).trace(), -&b.det()]
}

/// Recovers the common self-polar triangle from the pencil `Σ₁ − λΣ₂`.
pub fn build_steiner(sigma1: &Conic, sigma2: &Conic) -> Result<SteinerMap, CorrespondenceError> {
    if sigma1.field() != sigma2.field() {
        return Err(ProjError::MixedFields.into());
    }
    for c in [sigma1, sigma2] {
        if c.is_degenerate() {
            return Err(ConicError::DegenerateConic(c.rank()).into());
        }
    }
    if sigma1 == sigma2 {
        return Err(CorrespondenceError::IdenticalConics);
    }
    let (a, b) = (sigma1.matrix(), sigma2.matrix());
    let roots = roots::cubic_roots(&characteristic_cubic(a, b));
    if roots.iter().any(|(_, repeated)| *repeated) {
        return Err(CorrespondenceError::RepeatedEigenvalue);
    }
    if roots.len() < 3 {
        return Err(CorrespondenceError::NotRationallyDiagonalizable);
    }
    let field = sigma1.field();
    let vertices = roots
        .iter()
        .map(|(lambda, _)| {
            let m = a.sub(&b.scaled(lambda));
            let rows = (0..3).map(|i| m.row(i).to_vec()).collect();
            let kernel = linalg::kernel(rows, field);
            let v: Vec3 = [kernel[0][0].clone(), kernel[0][1].clone(), kernel[0][2].clone()];
            ProjPoint::from_vec(v).expect("kernel vector is nonzero")
        })
        .collect::<Vec<_>>();
    let [d1, d2, d3]: [ProjPoint; 3] = vertices.try_into().expect("three roots");
    let triangle = SelfPolarTriangle::new(d1, d2, d3)?;
    SteinerMap::new(sigma1.clone(), sigma2.clone(), triangle)
}

/// `Σᵢ = Tᵀ·diag(seedᵢ)·T` where `T` sends `D, E, F` to the basis triangle.
pub fn steiner_for_triangle(
    d: &ProjPoint,
    e: &ProjPoint,
    f: &ProjPoint,
    seeds: [&[Scalar; 3]; 2],
) -> Result<SteinerMap, CorrespondenceError> {
    let field = d.field();
    if e.field() != field || f.field() != field || seeds.iter().flat_map(|s| s.iter()).any(|x| x.field() != field) {
        return Err(ProjError::MixedFields.into());
    }
    if proj::are_collinear(d, e, f) {
        return Err(CorrespondenceError::CollinearDEF);
    }
    if seeds.iter().flat_map(|s| s.iter()).any(Scalar::is_zero) {
        return Err(CorrespondenceError::ZeroSeedEntry);
    }
    let [s1, s2] = seeds;
    if linalg::is_zero(&linalg::cross(s1, s2)) {
        return Err(CorrespondenceError::ProportionalSeeds);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if (&(&s1[i] * &s2[j]) - &(&s1[j] * &s2[i])).is_zero() {
            return Err(CorrespondenceError::RepeatedSeedRatio);
        }
    }
    let t = Mat3::from_columns([d.coords(), e.coords(), f.coords()]).adjugate();
    let sigma1 = Conic::from_matrix(Mat3::diag(s1))?.pullback(&t)?;
    let sigma2 = Conic::from_matrix(Mat3::diag(s2))?.pullback(&t)?;
    let triangle = SelfPolarTriangle::new(d.clone(), e.clone(), f.clone())?;
    SteinerMap::new(sigma1, sigma2, triangle)
}
