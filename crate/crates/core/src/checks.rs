//! Randomized extensional checks of the supporting facts.
//!
//! Every suite is deterministic in `(field, cases, seed)`; case `k` of a
//! sub-check draws from its own sampler stream.

use std::collections::BTreeMap;
use std::fmt;

use crate::conic::{circle_through_three, conic_through_five, fourth_intersection, Conic, ConicError};
use crate::correspondence::{
    build_steiner, points_on_line, pushforward_pairs, steiner_for_triangle, InversionMap, SteinerMap,
};
use crate::field::{FieldSpec, Scalar};
use crate::involution::{
    concurrent_iff_involution, in_involution, in_involution_cross_ratio, in_involution_determinant,
    involution_from_two_pairs, quadrangle_involution_pairs, Carrier, LineChart, PointPair,
};
use crate::proj::{self, all_points, cross_ratio, cross_ratio_params, Param, ProjLine, ProjPoint};
use crate::sample::Sampler;

/// Coordinate bound used by the suites.
pub const SUITE_BOUND: u64 = 30;
const RETRIES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    FactA,
    FactB,
    Steiner,
    Inversion,
    Oracle,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::FactA => "fact-a",
            Suite::FactB => "fact-b",
            Suite::Steiner => "steiner",
            Suite::Inversion => "inversion",
            Suite::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        [Suite::FactA, Suite::FactB, Suite::Steiner, Suite::Inversion, Suite::Oracle]
            .into_iter()
            .find(|x| x.name() == s)
    }

    pub fn run(self, field: FieldSpec, cases: u64, seed: u64) -> SuiteReport {
        match self {
            Suite::FactA => fact_a(field, cases, seed),
            Suite::FactB => fact_b(field, cases, seed),
            Suite::Steiner => steiner(field, cases, seed),
            Suite::Inversion => inversion(field, cases, seed),
            Suite::Oracle => oracle(field, cases, seed),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: &'static str,
    pub case: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub field: FieldSpec,
    pub seed: u64,
    /// Completed cases per sub-check.
    pub checks: BTreeMap<&'static str, u64>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(suite: Suite, field: FieldSpec, seed: u64) -> Self {
        SuiteReport { suite, field, seed, checks: BTreeMap::new(), failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn count(&self, check: &str) -> u64 {
        self.checks.get(check).copied().unwrap_or(0)
    }

    /// Runs `cases` instances of one sub-check. `body` returns `Ok(())`,
    /// or `Err` with a description of the counterexample.
    fn run(&mut self, check: &'static str, cases: u64, mut body: impl FnMut(&mut Sampler) -> Result<(), String>) {
        let tag = fnv(check);
        for case in 0..cases {
            let mut s = Sampler::new(self.field, SUITE_BOUND, self.seed ^ tag, case);
            *self.checks.entry(check).or_insert(0) += 1;
            if let Err(detail) = body(&mut s) {
                self.failures.push(Failure { check, case, detail });
            }
        }
    }
}

/// Separates the streams of different sub-checks under one seed.
fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn retry<T>(s: &mut Sampler, mut f: impl FnMut(&mut Sampler) -> Option<T>) -> Result<T, String> {
    (0..RETRIES).find_map(|_| f(s)).ok_or_else(|| "could not sample a valid configuration".to_string())
}

fn general_position(p: &[&ProjPoint]) -> bool {
    (0..p.len()).all(|i| (i + 1..p.len()).all(|j| (j + 1..p.len()).all(|k| !proj::are_collinear(p[i], p[j], p[k]))))
}

fn random_conic(s: &mut Sampler) -> Option<(Conic, ProjPoint)> {
    let pts: [ProjPoint; 5] = std::array::from_fn(|_| s.point());
    let c = conic_through_five([&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]]).ok()?;
    Some((c, pts[0].clone()))
}

fn distinct(points: &[&ProjPoint]) -> bool {
    (0..points.len()).all(|i| !points[..i].contains(&points[i]))
}

pub fn fact_a(field: FieldSpec, cases: u64, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::FactA, field, seed);
    r.run("quadrangle-involution", cases, |s| {
        let (q, l) = retry(s, |s| {
            let q: [ProjPoint; 4] = std::array::from_fn(|_| s.point());
            let l = s.line();
            let refs = [&q[0], &q[1], &q[2], &q[3]];
            (general_position(&refs) && !q.iter().any(|v| l.contains(v))).then_some((q, l))
        })?;
        let pairs = quadrangle_involution_pairs([&q[0], &q[1], &q[2], &q[3]], &l).map_err(|e| e.to_string())?;
        match in_involution(&Carrier::line(l.clone()), &pairs) {
            Ok(true) => Ok(()),
            other => Err(format!("quadrangle {q:?} line {l:?}: {other:?}")),
        }
    });
    r
}

pub fn fact_b(field: FieldSpec, cases: u64, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::FactB, field, seed);
    let verdicts = |c: &Conic, pairs: &[PointPair; 3], expected: bool| -> Result<(), String> {
        let t = concurrent_iff_involution(c, pairs).map_err(|e| format!("{e} on {pairs:?}"))?;
        if t.concurrent != expected || t.involution != expected {
            return Err(format!("expected {expected}, got {t:?} for {pairs:?}"));
        }
        let carrier = Carrier::conic(c, &pairs[0].first).map_err(|e| e.to_string())?;
        let by_det = in_involution_determinant(&carrier, pairs).map_err(|e| e.to_string())?;
        let by_cr = in_involution_cross_ratio(&carrier, pairs).map_err(|e| e.to_string())?;
        if by_det != by_cr || by_det != expected {
            return Err(format!("criteria disagree: determinant {by_det}, cross-ratio {by_cr}"));
        }
        Ok(())
    };
    r.run("forced-concurrent", cases, |s| {
        let (c, pairs) = retry(s, |s| {
            let (c, base) = random_conic(s)?;
            let par = c.parametrize(&base).ok()?;
            let centre = s.point();
            if c.contains(&centre) {
                return None;
            }
            let mut pairs = Vec::new();
            for _ in 0..3 {
                let q = s.point_on_conic(&par);
                let meet = c.second_intersection(&proj::join(&centre, &q).ok()?, &q).ok()?;
                if meet.tangent {
                    return None;
                }
                pairs.push(PointPair::new(q, meet.point));
            }
            let pairs: [PointPair; 3] = pairs.try_into().ok()?;
            let pts: Vec<&ProjPoint> = pairs.iter().flat_map(|p| [&p.first, &p.second]).collect();
            distinct(&pts).then_some((c, pairs))
        })?;
        verdicts(&c, &pairs, true)
    });
    r.run("generic", cases, |s| {
        let (c, pairs) = retry(s, |s| {
            let (c, base) = random_conic(s)?;
            let par = c.parametrize(&base).ok()?;
            let pts: [ProjPoint; 6] = std::array::from_fn(|_| s.point_on_conic(&par));
            if !distinct(&pts.iter().collect::<Vec<_>>()) {
                return None;
            }
            let pairs = [0, 1, 2].map(|i| PointPair::new(pts[i].clone(), pts[i + 3].clone()));
            let chords = pairs.clone().map(|p| proj::join(&p.first, &p.second).expect("distinct"));
            (!proj::are_concurrent(&chords[0], &chords[1], &chords[2])).then_some((c, pairs))
        })?;
        verdicts(&c, &pairs, false)
    });
    r
}

fn random_steiner(s: &mut Sampler) -> Result<SteinerMap, String> {
    retry(s, |s| {
        let [d, e, f] = std::array::from_fn(|_| s.point());
        let seeds: [[Scalar; 3]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| s.nonzero_scalar()));
        steiner_for_triangle(&d, &e, &f, [&seeds[0], &seeds[1]]).ok()
    })
}

fn off_sides(map: &SteinerMap) -> impl Fn(&ProjPoint) -> bool + '_ {
    let sides = map.triangle().sides();
    move |p| !sides.iter().any(|l| l.contains(p))
}

/// A line through no vertex, with `n` distinct samples off the side lines.
fn free_line(s: &mut Sampler, map: &SteinerMap, n: usize) -> Result<(ProjLine, Vec<ProjPoint>), String> {
    let keep = off_sides(map);
    retry(s, |s| {
        let l = s.line();
        if map.triangle().vertices().iter().any(|v| l.contains(v)) {
            return None;
        }
        let samples = points_on_line(&l, n, &keep);
        (samples.len() == n).then_some((l, samples))
    })
}

/// Three pairs on `carrier` drawn from `pool`. The third pair is swapped by
/// the involution of the first two exactly when `involutive`.
fn pairs_on(
    s: &mut Sampler,
    carrier: &Carrier,
    pool: &[ProjPoint],
    involutive: bool,
    keep: &dyn Fn(&ProjPoint) -> bool,
) -> Option<[PointPair; 3]> {
    let pick = |s: &mut Sampler| pool[s.index(pool.len())].clone();
    let p: [ProjPoint; 5] = std::array::from_fn(|_| pick(s));
    let first = PointPair::new(p[0].clone(), p[1].clone());
    let second = PointPair::new(p[2].clone(), p[3].clone());
    let inv = involution_from_two_pairs(carrier.clone(), &first, &second).ok()?;
    let partner = inv.apply(&p[4]).ok()?;
    let third = if involutive {
        PointPair::new(p[4].clone(), partner)
    } else {
        PointPair::new(p[4].clone(), Some(pick(s)).filter(|q| *q != partner)?)
    };
    let pts = [&first.first, &first.second, &second.first, &second.second, &third.first, &third.second];
    (distinct(&pts) && keep(&third.second)).then_some([first, second, third])
}

pub fn steiner(field: FieldSpec, cases: u64, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Steiner, field, seed);
    let fifth = cases.div_ceil(5);
    r.run("involutive", cases, |s| {
        let map = random_steiner(s)?;
        let keep = off_sides(&map);
        let p = retry(s, |s| Some(s.point()).filter(|p| keep(p)))?;
        let back = map.apply(&map.apply(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        (back == p).then_some(()).ok_or_else(|| format!("S(S({p:?})) = {back:?}"))
    });
    r.run("line-image-conic", fifth, |s| {
        let map = random_steiner(s)?;
        let n = if field.is_rational() { 15 } else { 6 };
        let (l, samples) = free_line(s, &map, n)?;
        let conic = map.line_image(&l, &samples).map_err(|e| e.to_string())?;
        let vertices = map.triangle().vertices().iter().all(|v| conic.contains(v));
        let images = samples.iter().all(|p| map.apply(p).is_ok_and(|q| conic.contains(&q)));
        (vertices && images).then_some(()).ok_or_else(|| format!("line {l:?}: image conic misses points"))
    });
    r.run("vertex-line-collinear", fifth, |s| {
        let map = random_steiner(s)?;
        let i = s.index(3);
        let vertex = map.triangle().vertices()[i].clone();
        let keep = off_sides(&map);
        let (l, samples) = retry(s, |s| {
            let q = s.point();
            if !keep(&q) {
                return None;
            }
            let l = proj::join(&vertex, &q).ok()?;
            let samples = points_on_line(&l, 6, |p| p != &vertex);
            (samples.len() >= 3).then_some((l, samples))
        })?;
        let line = map.vertex_line_image(&l, &samples).map_err(|e| e.to_string())?;
        let images: Vec<ProjPoint> = samples.iter().map(|p| map.apply(p).expect("not a vertex")).collect();
        let det_zero =
            images.windows(3).all(|w| crate::linalg::det_rows(w[0].coords(), w[1].coords(), w[2].coords()).is_zero());
        (det_zero && images.iter().all(|p| line.contains(p)))
            .then_some(())
            .ok_or_else(|| format!("line {l:?}: images not collinear"))
    });
    r.run("pushforward-involution", 2 * fifth, |s| {
        let map = random_steiner(s)?;
        let n = if field.is_rational() { 12 } else { 8 };
        let (l, pool) = free_line(s, &map, n)?;
        let conic = map.line_image(&l, &pool[..5]).map_err(|e| e.to_string())?;
        let on_line = Carrier::line(l.clone());
        let base = map.triangle().vertices()[0].clone();
        let on_conic = Carrier::conic(&conic, &base).map_err(|e| e.to_string())?;
        let involutive = s.index(2) == 0;
        let image_pool: Vec<ProjPoint> = pool.iter().map(|p| map.apply(p).expect("off the vertices")).collect();
        let forward = s.index(2) == 0;
        let sides = off_sides(&map);
        let not_vertex = |p: &ProjPoint| !map.triangle().has_vertex(p);
        let (from, to, pool, keep): (_, _, _, &dyn Fn(&ProjPoint) -> bool) = if forward {
            (&on_line, &on_conic, &pool, &sides)
        } else {
            (&on_conic, &on_line, &image_pool, &not_vertex)
        };
        let pairs = retry(s, |s| pairs_on(s, from, pool, involutive, keep))?;
        let pushed = pushforward_pairs(&map, &pairs).map_err(|e| e.to_string())?;
        let before = in_involution(from, &pairs).map_err(|e| e.to_string())?;
        let after = in_involution(to, &pushed).map_err(|e| e.to_string())?;
        let round_trip = pushforward_pairs(&map, &pushed).map_err(|e| e.to_string())? == pairs;
        (before == after && before == involutive && round_trip)
            .then_some(())
            .ok_or_else(|| format!("verdict {before} -> {after} (expected {involutive}) for {pairs:?}"))
    });
    r.run("build-steiner-recovers-triangle", fifth, |s| {
        let map = random_steiner(s)?;
        let built = build_steiner(map.sigma1(), map.sigma2()).map_err(|e| e.to_string())?;
        built
            .triangle()
            .same_vertices(map.triangle())
            .then_some(())
            .ok_or_else(|| format!("recovered {:?}, expected {:?}", built.triangle(), map.triangle()))
    });
    r
}

pub fn inversion(field: FieldSpec, cases: u64, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Inversion, field, seed);
    if !field.is_rational() {
        r.failures.push(Failure { check: "field", case: 0, detail: "inversion needs the rationals".into() });
        return r;
    }
    let map_of = |s: &mut Sampler| InversionMap::new(s.affine_point(), s.nonzero_scalar()).expect("affine pole");
    let two_fifths = 2 * cases.div_ceil(5);
    r.run("involutive", cases, |s| {
        let m = map_of(s);
        let p = retry(s, |s| Some(s.affine_point()).filter(|p| p != m.pole()))?;
        let back = m.invert(&m.invert(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        (back == p).then_some(()).ok_or_else(|| format!("{p:?} returned as {back:?}"))
    });
    let circle_through_pole = |s: &mut Sampler, m: &InversionMap| {
        retry(s, |s| {
            let (p, q) = (s.affine_point(), s.affine_point());
            let c = circle_through_three(m.pole(), &p, &q).ok()?;
            Some((c, p))
        })
    };
    let concyclic = |s: &mut Sampler, c: &Conic, base: &ProjPoint, pole: &ProjPoint, n: usize| {
        let par = c.parametrize(base).expect("base lies on the circle");
        retry(s, |s| {
            let pts: Vec<ProjPoint> = (0..n).map(|_| s.point_on_conic(&par)).collect();
            (distinct(&pts.iter().collect::<Vec<_>>()) && !pts.contains(pole)).then_some(pts)
        })
    };
    r.run("circle-through-pole", two_fifths, |s| {
        let m = map_of(s);
        let (c, base) = circle_through_pole(s, &m)?;
        let line = m.invert_circle_through_pole(&c).map_err(|e| e.to_string())?;
        let pts = concyclic(s, &c, &base, m.pole(), 5)?;
        pts.iter()
            .all(|p| m.invert(p).is_ok_and(|q| line.contains(&q)))
            .then_some(())
            .ok_or_else(|| format!("circle {c:?}: images off {line:?}"))
    });
    r.run("cross-ratio-collinear", two_fifths, |s| {
        let m = map_of(s);
        let l = retry(s, |s| proj::join(m.pole(), &s.affine_point()).ok())?;
        let chart = LineChart::new(l.clone());
        let pts = retry(s, |s| {
            let pts: Vec<ProjPoint> = (0..4).map(|_| chart.point_of_param(&s.param())).collect();
            (distinct(&pts.iter().collect::<Vec<_>>()) && pts.iter().all(|p| p != m.pole() && !p.is_at_infinity()))
                .then_some(pts)
        })?;
        let images: Vec<ProjPoint> = pts.iter().map(|p| m.invert(p).expect("affine, not the pole")).collect();
        let before = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).map_err(|e| e.to_string())?;
        let after = cross_ratio(&images[0], &images[1], &images[2], &images[3]).map_err(|e| e.to_string())?;
        (before == after).then_some(()).ok_or_else(|| format!("{before:?} != {after:?} on {pts:?}"))
    });
    r.run("cross-ratio-concyclic", two_fifths, |s| {
        let m = map_of(s);
        let (c, base) = circle_through_pole(s, &m)?;
        let pts = concyclic(s, &c, &base, m.pole(), 4)?;
        let par = c.parametrize(&base).expect("base lies on the circle");
        let t: Vec<Param> = pts.iter().map(|p| par.param_of_point(p).expect("on the circle")).collect();
        let on_circle = cross_ratio_params(&t[0], &t[1], &t[2], &t[3]).map_err(|e| e.to_string())?;
        let images: Vec<ProjPoint> = pts.iter().map(|p| m.invert(p).expect("affine, not the pole")).collect();
        let on_line = cross_ratio(&images[0], &images[1], &images[2], &images[3]).map_err(|e| e.to_string())?;
        (on_circle == on_line).then_some(()).ok_or_else(|| format!("{on_circle:?} != {on_line:?} on {pts:?}"))
    });
    r
}

pub fn oracle(field: FieldSpec, cases: u64, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Oracle, field, seed);
    let Some(plane) = all_points(field) else {
        r.failures.push(Failure { check: "field", case: 0, detail: "oracle scans need a prime field".into() });
        return r;
    };
    let p = field.modulus().expect("prime field");
    r.run("fourth-intersection", cases, |s| {
        let (d, e, f, c1, c2) = retry(s, |s| {
            let [d, e, f, p1, p2, q1, q2] = std::array::from_fn(|_| s.point());
            let c1 = conic_through_five([&d, &e, &f, &p1, &p2]).ok()?;
            let c2 = conic_through_five([&d, &e, &f, &q1, &q2]).ok()?;
            (c1 != c2).then_some((d, e, f, c1, c2))
        })?;
        let scan: Vec<&ProjPoint> =
            plane.iter().filter(|x| c1.contains(x) && c2.contains(x) && ![&d, &e, &f].contains(x)).collect();
        match fourth_intersection(&c1, &c2, &d, &e, &f) {
            Ok(x) if scan == [&x] => Ok(()),
            Err(ConicError::TangentialContact(_)) if scan.is_empty() => Ok(()),
            other => Err(format!("computed {other:?}, scan found {scan:?}")),
        }
    });
    r.run("second-intersection", cases, |s| {
        let (c, base) = retry(s, random_conic)?;
        let par = c.parametrize(&base).expect("base lies on the conic");
        let point = s.point_on_conic(&par);
        let l = retry(s, |s| proj::join(&point, &s.point()).ok())?;
        let scan: Vec<&ProjPoint> = plane.iter().filter(|x| l.contains(x) && c.contains(x)).collect();
        let meet = c.second_intersection(&l, &point).map_err(|e| e.to_string())?;
        let ok = if meet.tangent {
            scan == [&point]
        } else {
            scan.len() == 2 && scan.contains(&&meet.point) && scan.contains(&&point) && meet.point != point
        };
        ok.then_some(()).ok_or_else(|| format!("computed {meet:?}, scan found {scan:?}"))
    });
    r.run("conic-point-count", cases, |s| {
        let (c, _) = retry(s, random_conic)?;
        let count = plane.iter().filter(|x| c.contains(x)).count() as u64;
        (count == p + 1).then_some(()).ok_or_else(|| format!("{c:?} has {count} points"))
    });
    r
}
