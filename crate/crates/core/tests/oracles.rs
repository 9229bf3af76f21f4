use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pappian::conic::conic_through_five;
use pappian::linalg::Mat3;
use pappian::proj::all_points;
use pappian::sample::Sampler;
use pappian::theorem::{
    derive_six_t1, derive_six_t2, random_scene_t1_stream, random_scene_t2_stream, verify_theorem2, SceneT2,
};
use pappian::{Conic, FieldSpec, ProjLine, ProjPoint, Scalar};

type Q = BigRational;

fn q(s: &Scalar) -> Q {
    s.as_rational().expect("rational").clone()
}

fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut acc = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Q::zero() };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc *= m[c][c].clone();
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            let pivot = m[c].clone();
            for (x, p) in m[r].iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
    }
    acc
}

/// Coefficients of the conic through five points as cofactors of the 6×6
/// determinant `det[x², xy, y², xz, yz, z²]` with a generic first row.
#[test]
fn conic_through_five_matches_determinant_oracle() {
    let field = FieldSpec::Rationals;
    let mut checked = 0;
    for case in 0..200 {
        let mut s = Sampler::new(field, 12, 77, case);
        let pts: [ProjPoint; 5] = std::array::from_fn(|_| s.point());
        let Ok(conic) = conic_through_five([&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]]) else { continue };
        let rows: Vec<Vec<Q>> = pts
            .iter()
            .map(|p| {
                let [x, y, z] = p.coords().each_ref().map(q);
                vec![&x * &x, &x * &y, &y * &y, &x * &z, &y * &z, &z * &z]
            })
            .collect();
        let coeffs: Vec<Q> = (0..6)
            .map(|j| {
                let minor: Vec<Vec<Q>> = rows
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let sign = if j % 2 == 0 { Q::one() } else { -Q::one() };
                sign * det(minor)
            })
            .collect();
        let m = conic.matrix();
        let two = Q::from_integer(BigInt::from(2));
        let from_matrix = [
            q(m.get(0, 0)),
            &two * q(m.get(0, 1)),
            q(m.get(1, 1)),
            &two * q(m.get(0, 2)),
            &two * q(m.get(1, 2)),
            q(m.get(2, 2)),
        ];
        let lead = coeffs.iter().find(|c| !c.is_zero()).expect("nonzero cofactor").clone();
        let pivot = from_matrix.iter().find(|c| !c.is_zero()).expect("nonzero conic").clone();
        for (a, b) in coeffs.iter().zip(&from_matrix) {
            assert_eq!(a * &pivot, b * &lead, "case {case}");
        }
        checked += 1;
    }
    assert!(checked > 150);
}

struct Circle {
    a: Q,
    b: Q,
}

/// `x² + y² + a·x + b·y + c = 0` read off a canonical circle matrix.
fn circle(c: &Conic) -> Circle {
    let m = c.matrix();
    let two = Q::from_integer(BigInt::from(2));
    Circle { a: &two * q(m.get(0, 2)), b: &two * q(m.get(1, 2)) }
}

fn xy(p: &ProjPoint) -> (Q, Q) {
    let (x, y) = p.to_affine().expect("affine");
    (q(&x), q(&y))
}

fn invert(d: &(Q, Q), p: &(Q, Q)) -> (Q, Q) {
    let (dx, dy) = (&p.0 - &d.0, &p.1 - &d.1);
    let r2 = &dx * &dx + &dy * &dy;
    (&d.0 + &dx / &r2, &d.1 + &dy / &r2)
}

fn meet(p1: &(Q, Q), p2: &(Q, Q), p3: &(Q, Q), p4: &(Q, Q)) -> (Q, Q) {
    let (a1, b1) = (&p2.1 - &p1.1, &p1.0 - &p2.0);
    let c1 = &a1 * &p1.0 + &b1 * &p1.1;
    let (a2, b2) = (&p4.1 - &p3.1, &p3.0 - &p4.0);
    let c2 = &a2 * &p3.0 + &b2 * &p3.1;
    let den = &a1 * &b2 - &a2 * &b1;
    ((&c1 * &b2 - &c2 * &b1) / &den, (&a1 * &c2 - &a2 * &c1) / &den)
}

/// Second point of the circle on the line from `d` towards `p`, by Vieta.
fn vieta(sigma: &Circle, d: &(Q, Q), p: &(Q, Q)) -> (Q, Q) {
    let v = (&p.0 - &d.0, &p.1 - &d.1);
    let two = Q::from_integer(BigInt::from(2));
    let lin = &two * (&d.0 * &v.0 + &d.1 * &v.1) + &sigma.a * &v.0 + &sigma.b * &v.1;
    let s = -lin / (&v.0 * &v.0 + &v.1 * &v.1);
    (&d.0 + &s * &v.0, &d.1 + &s * &v.1)
}

#[test]
fn t1_six_points_match_inversion_route() {
    for k in 0..60 {
        let g = random_scene_t1_stream(5, k, 25).unwrap();
        let s = &g.scene;
        let six = derive_six_t1(s).unwrap();
        let sig = circle(&s.sigma);
        let d = xy(&s.d);
        let (a, b, c) = (xy(&s.a), xy(&s.b), xy(&s.c));
        let (x, y, z) = (vieta(&sig, &d, &a), vieta(&sig, &d, &b), vieta(&sig, &d, &c));
        assert_eq!((xy(&six.x), xy(&six.y), xy(&six.z)), (x.clone(), y.clone(), z), "scene {k}");
        let (a1, b1, c1) = (invert(&d, &a), invert(&d, &b), invert(&d, &c));
        let (x1, y1) = (invert(&d, &x), invert(&d, &y));
        let back = |p: (Q, Q)| invert(&d, &p);
        assert_eq!(xy(&six.u), back(meet(&x1, &y1, &b1, &c1)), "scene {k}");
        assert_eq!(xy(&six.v), back(meet(&x1, &y1, &a1, &c1)), "scene {k}");
        assert_eq!(xy(&six.w), back(meet(&x1, &y1, &a1, &b1)), "scene {k}");
    }
}

fn scan_meets(plane: &[ProjPoint], on: impl Fn(&ProjPoint) -> bool, excluded: &[&ProjPoint]) -> Vec<ProjPoint> {
    plane.iter().filter(|p| on(p) && !excluded.contains(p)).cloned().collect()
}

fn line(p: &ProjPoint, q: &ProjPoint) -> ProjLine {
    pappian::proj::join(p, q).unwrap()
}

#[test]
fn gf13_six_points_and_common_point_match_plane_scan() {
    let field = FieldSpec::prime(13).unwrap();
    let plane = all_points(field).unwrap();
    assert_eq!(plane.len(), 183);
    for k in 0..60 {
        let g = random_scene_t2_stream(9, k, 20, field).unwrap();
        let s = &g.scene;
        let six = derive_six_t2(s).unwrap();
        let base = [&s.d, &s.e, &s.f];
        let aux = |p: &ProjPoint, q: &ProjPoint| conic_through_five([p, q, &s.d, &s.e, &s.f]).unwrap();
        for (got, (p, q)) in [(&six.u, (&s.b, &s.c)), (&six.v, (&s.a, &s.c)), (&six.w, (&s.a, &s.b))] {
            let c = aux(p, q);
            assert_eq!(
                scan_meets(&plane, |x| s.sigma.contains(x) && c.contains(x), &base),
                vec![got.clone()],
                "scene {k}"
            );
        }
        for (got, p) in [(&six.x, &s.a), (&six.y, &s.b), (&six.z, &s.c)] {
            let l = line(p, &s.d);
            assert_eq!(
                scan_meets(&plane, |x| s.sigma.contains(x) && l.contains(x), &[&s.d]),
                vec![got.clone()],
                "scene {k}"
            );
        }
        let chords = [line(&six.u, &six.x), line(&six.v, &six.y), line(&six.w, &six.z)];
        let common = scan_meets(&plane, |x| chords.iter().all(|c| c.contains(x)), &[]);
        assert_eq!(common.len(), 1, "scene {k}");
        assert_eq!(g.certificate.common_point.as_ref(), Some(&common[0]), "scene {k}");
    }
}

/// Reduces the primitive integer representative, so every point reduces.
fn reduce_point(p: &ProjPoint, f: FieldSpec) -> Option<ProjPoint> {
    let c = p.coords().each_ref().map(q);
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = c.map(|x| (x * Q::from_integer(lcm.clone())).to_integer());
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ProjPoint::from_vec(ints.map(|x| f.bigint(&(x / &g)))).ok()
}

#[test]
fn t2_rational_scenes_reduce_mod_10007() {
    let f = FieldSpec::prime(10_007).unwrap();
    let mut compared = 0;
    for k in 0..40 {
        let g = random_scene_t2_stream(13, k, 20, FieldSpec::Rationals).unwrap();
        let s = &g.scene;
        let red = |p: &ProjPoint| reduce_point(p, f);
        let pts = [&s.a, &s.b, &s.c, &s.d, &s.e, &s.f].map(&red);
        if pts.iter().any(Option::is_none) {
            continue;
        }
        let [a, b, c, d, e, ff] = pts.map(Option::unwrap);
        let m = s.sigma.matrix();
        let entries: Vec<Q> = (0..9).map(|k| q(m.get(k / 3, k % 3))).collect();
        let lcm = entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = entries.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
        let Ok(sigma) = Conic::from_matrix(Mat3::from_fn(|i, j| f.bigint(&ints[3 * i + j]))) else { continue };
        let seeds = [[1, 1, 1], [1, 2, 3]].map(|r| r.map(|n| f.int(n)));
        let Ok(scene) = SceneT2::new(a, b, c, d, e, ff, sigma, seeds) else { continue };
        let Ok(cert) = verify_theorem2(&scene) else { continue };
        let expected = g.certificate.six.map(|p| red(p).expect("reducible"));
        assert_eq!(cert.six, expected, "scene {k}");
        assert_eq!(cert.common_point, g.certificate.common_point.as_ref().and_then(red), "scene {k}");
        compared += 1;
    }
    assert!(compared >= 36, "only {compared} scenes reduced cleanly");
}

#[test]
fn generation_is_deterministic() {
    for k in 0..5 {
        let a = random_scene_t2_stream(1, k, 10, FieldSpec::Rationals).unwrap();
        let b = random_scene_t2_stream(1, k, 10, FieldSpec::Rationals).unwrap();
        assert_eq!(a.scene, b.scene);
        assert_eq!(a.certificate, b.certificate);
        assert_eq!(a.rejections, b.rejections);
    }
}
