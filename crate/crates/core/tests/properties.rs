use pappian::conic::{circle_through_three, conic_through_five};
use pappian::correspondence::{build_steiner, steiner_for_triangle};
use pappian::involution::{in_involution_params, in_involution_params_cross_ratio, involution_from_params};
use pappian::linalg::{self, Mat3};
use pappian::proj::{self, cross_ratio, cross_ratio_params};
use pappian::{Carrier, FieldSpec, InversionMap, Param, ProjLine, ProjPoint, Scalar};
use proptest::prelude::*;

const FIELDS: [u64; 4] = [0, 11, 13, 101];

fn field_of(p: u64) -> FieldSpec {
    if p == 0 {
        FieldSpec::Rationals
    } else {
        FieldSpec::prime(p).unwrap()
    }
}

fn any_field() -> impl Strategy<Value = FieldSpec> {
    proptest::sample::select(FIELDS.to_vec()).prop_map(field_of)
}

fn scalar(field: FieldSpec) -> impl Strategy<Value = Scalar> {
    (-60i64..=60, 1i64..=9).prop_filter_map("denominator vanishes", move |(n, d)| {
        let d = field.int(d);
        (!d.is_zero()).then(|| &field.int(n) / &d)
    })
}

fn triple(field: FieldSpec) -> impl Strategy<Value = [Scalar; 3]> {
    [scalar(field), scalar(field), scalar(field)]
}

fn point(field: FieldSpec) -> impl Strategy<Value = ProjPoint> {
    triple(field).prop_filter_map("zero vector", |v| ProjPoint::from_vec(v).ok())
}

fn affine(field: FieldSpec) -> impl Strategy<Value = ProjPoint> {
    (scalar(field), scalar(field)).prop_map(|(x, y)| ProjPoint::affine(x, y))
}

fn matrix(field: FieldSpec) -> impl Strategy<Value = Mat3> {
    [triple(field), triple(field), triple(field)].prop_map(Mat3).prop_filter("singular", |m| !m.det().is_zero())
}

fn param(field: FieldSpec) -> impl Strategy<Value = Param> {
    prop_oneof![1 => Just(Param::infinity(field)), 9 => scalar(field).prop_map(Param::finite)]
}

fn transform(m: &Mat3, p: &ProjPoint) -> ProjPoint {
    ProjPoint::from_vec(m.mul_vec(p.coords())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(f in any_field().prop_flat_map(|f| (scalar(f), scalar(f), scalar(f)))) {
        let (a, b, c) = f;
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn points_are_canonical(case in any_field().prop_flat_map(|f| (triple(f), scalar(f)))) {
        let (v, k) = case;
        prop_assume!(!k.is_zero() && !linalg::is_zero(&v));
        let p = ProjPoint::from_vec(v.clone()).unwrap();
        let q = ProjPoint::from_vec(linalg::scale(&k, &v)).unwrap();
        prop_assert_eq!(&p, &q);
        let lead = p.coords().iter().find(|s| !s.is_zero()).unwrap();
        prop_assert!(lead.is_one());
    }

    #[test]
    fn cross_ratio_is_projectively_invariant(
        case in any_field().prop_flat_map(|f| (point(f), point(f), [param(f), param(f), param(f), param(f)], matrix(f)))
    ) {
        let (o, d, t, m) = case;
        prop_assume!(o != d);
        let chart = pappian::involution::LineChart::with_frame(o, d).unwrap();
        let pts: Vec<_> = t.iter().map(|t| chart.point_of_param(t)).collect();
        let before = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]);
        let on_params = cross_ratio_params(&t[0], &t[1], &t[2], &t[3]);
        prop_assert_eq!(&before, &on_params);
        let img: Vec<_> = pts.iter().map(|p| transform(&m, p)).collect();
        prop_assert_eq!(&before, &cross_ratio(&img[0], &img[1], &img[2], &img[3]));
        // Double transposition symmetry.
        prop_assert_eq!(&before, &cross_ratio(&pts[1], &pts[0], &pts[3], &pts[2]));
    }

    #[test]
    fn involution_matrix_shape(case in any_field().prop_flat_map(|f| [param(f), param(f), param(f), param(f)])) {
        let [a, b, c, d] = case;
        let field = a.field();
        let carrier = Carrier::line(ProjLine::at_infinity(field));
        if let Ok(inv) = involution_from_params(carrier, &(a.clone(), b.clone()), &(c.clone(), d.clone())) {
            let [[p, q], [r, s]] = inv.matrix().clone();
            prop_assert!((&p + &s).is_zero());
            let det = &(&p * &s) - &(&q * &r);
            // M² = -det(M)·I
            prop_assert_eq!(&(&p * &p) + &(&q * &r), -det.clone());
            prop_assert!((&(&p * &q) + &(&q * &s)).is_zero());
            prop_assert_eq!(inv.apply_param(&a), b.clone());
            prop_assert_eq!(inv.apply_param(&inv.apply_param(&c)), c.clone());
        }
    }

    #[test]
    fn involution_criteria_agree(case in any_field().prop_flat_map(|f| [param(f), param(f), param(f), param(f), param(f), param(f)])) {
        let [a, b, c, d, e, g] = case;
        let pairs = [(a, b), (c, d), (e, g)];
        if let (Ok(x), Ok(y)) = (in_involution_params(&pairs), in_involution_params_cross_ratio(&pairs)) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn inversion_is_involutive(case in (affine(FieldSpec::Rationals), affine(FieldSpec::Rationals), 1i64..20)) {
        let (pole, p, k) = case;
        prop_assume!(pole != p);
        let inv = InversionMap::new(pole.clone(), FieldSpec::Rationals.int(k)).unwrap();
        let q = inv.invert(&p).unwrap();
        prop_assert_eq!(inv.invert(&q).unwrap(), p.clone());
        prop_assert!(proj::are_collinear(&pole, &p, &q));
    }

    #[test]
    fn circles_through_the_pole_become_lines(
        case in (affine(FieldSpec::Rationals), affine(FieldSpec::Rationals), affine(FieldSpec::Rationals), affine(FieldSpec::Rationals))
    ) {
        let (d, p, q, r) = case;
        let Ok(c) = circle_through_three(&d, &p, &q) else { return Ok(()) };
        let inv = InversionMap::new(d.clone(), FieldSpec::Rationals.one()).unwrap();
        let line = inv.invert_circle_through_pole(&c).unwrap();
        for x in [&p, &q] {
            prop_assert!(line.contains(&inv.invert(x).unwrap()));
        }
        if r != d {
            prop_assert_eq!(c.contains(&r), line.contains(&inv.invert(&r).unwrap()));
        }
    }

    #[test]
    fn steiner_is_involutive_and_rebuildable(
        case in any_field().prop_flat_map(|f| (point(f), point(f), point(f), triple(f), triple(f), point(f)))
    ) {
        let (d, e, g, s1, s2, p) = case;
        let Ok(map) = steiner_for_triangle(&d, &e, &g, [&s1, &s2]) else { return Ok(()) };
        if let Ok(q) = map.apply(&p) {
            if let Ok(back) = map.apply(&q) {
                let on_side = map.triangle().sides().iter().any(|l| l.contains(&p));
                prop_assert!(on_side || back == p);
            }
        }
        let rebuilt = build_steiner(map.sigma1(), map.sigma2()).unwrap();
        prop_assert!(rebuilt.triangle().same_vertices(map.triangle()));
    }

    #[test]
    fn five_points_lie_on_their_conic(case in any_field().prop_flat_map(|f| [point(f), point(f), point(f), point(f), point(f)])) {
        let [a, b, c, d, e] = case;
        if let Ok(k) = conic_through_five([&a, &b, &c, &d, &e]) {
            for p in [&a, &b, &c, &d, &e] {
                prop_assert!(k.contains(p));
            }
            prop_assert!(k.matrix().is_symmetric());
            prop_assert!(!k.is_degenerate());
        }
    }
}
