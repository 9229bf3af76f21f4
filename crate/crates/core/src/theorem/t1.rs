use crate::conic::{circle_through_three, circles_second_common_point, Conic, ConicError};
use crate::correspondence::InversionMap;
use crate::involution::{in_involution, in_involution_cross_ratio, quadrangle_involution_pairs, Carrier, PointPair};
use crate::proj::{self, cross_ratio, cross_ratio_params, ProjPoint};

use super::{close, collinear_fact, record, ConcurrencyCertificate, DerivedSix, SceneT1, TheoremError, TheoremKind};

fn aux_meet_error(e: ConicError) -> TheoremError {
    TheoremError::DegenerateScene(match e {
        ConicError::IdenticalConics => "sigma-equals-aux-conic",
        ConicError::TangentialContact(_) => "sigma-tangent-to-aux-conic",
        _ => "aux-meet-undefined",
    })
}

/// Second point of the line `pd` on `sigma`.
pub(super) fn line_meet(sigma: &Conic, p: &ProjPoint, d: &ProjPoint) -> Result<ProjPoint, TheoremError> {
    let line = proj::join(p, d).map_err(|_| TheoremError::DegenerateScene("line-undefined"))?;
    let meet = sigma.second_intersection(&line, d).map_err(|_| TheoremError::DegenerateScene("line-meet-undefined"))?;
    if meet.tangent {
        return Err(TheoremError::DegenerateScene("line-tangent-to-sigma"));
    }
    Ok(meet.point)
}

pub fn derive_six_t1(s: &SceneT1) -> Result<DerivedSix, TheoremError> {
    let aux = |p: &ProjPoint, q: &ProjPoint| -> Result<ProjPoint, TheoremError> {
        let circle =
            circle_through_three(p, q, &s.d).map_err(|_| TheoremError::DegenerateScene("aux-conic-undefined"))?;
        circles_second_common_point(&s.sigma, &circle, &s.d).map_err(aux_meet_error)
    };
    let six = DerivedSix {
        u: aux(&s.b, &s.c)?,
        v: aux(&s.a, &s.c)?,
        w: aux(&s.a, &s.b)?,
        x: line_meet(&s.sigma, &s.a, &s.d)?,
        y: line_meet(&s.sigma, &s.b, &s.d)?,
        z: line_meet(&s.sigma, &s.c, &s.d)?,
    };
    six.validate(&s.sigma, &[&s.d])?;
    Ok(six)
}

/// Derives the six points, rejects scenes where `A, B, C, D` are concyclic
/// (the inverted quadrangle collapses), and certifies.
pub fn verify_theorem1(s: &SceneT1) -> Result<ConcurrencyCertificate, TheoremError> {
    let six = derive_six_t1(s)?;
    let abc = circle_through_three(&s.a, &s.b, &s.c).expect("scene triangle is non-degenerate");
    if abc.contains(&s.d) {
        return Err(TheoremError::DegenerateScene("abcd-concyclic"));
    }
    certify_t1(s, &six)
}

/// Replays the inversion proof on the given six points.
pub fn certify_t1(s: &SceneT1, six: &DerivedSix) -> Result<ConcurrencyCertificate, TheoremError> {
    six.validate(&s.sigma, &[&s.d])?;
    let field = s.field();
    let inversion = InversionMap::new(s.d.clone(), field.one()).expect("scene D is affine");
    let inv = |p: &ProjPoint| inversion.invert(p).expect("point is affine and differs from D");
    let (a1, b1, c1) = (inv(&s.a), inv(&s.b), inv(&s.c));
    let six1 = six.map(inv);
    let sigma1 = inversion.invert_circle_through_pole(&s.sigma).expect("scene circle passes through D");
    let d = &s.d;
    let mut trace = Vec::new();

    collinear_fact(&mut trace, ["D", "A'", "X'"], [d, &a1, &six1.x]);
    collinear_fact(&mut trace, ["D", "B'", "Y'"], [d, &b1, &six1.y]);
    collinear_fact(&mut trace, ["D", "C'", "Z'"], [d, &c1, &six1.z]);
    collinear_fact(&mut trace, ["A'", "B'", "W'"], [&a1, &b1, &six1.w]);
    collinear_fact(&mut trace, ["A'", "C'", "V'"], [&a1, &c1, &six1.v]);
    collinear_fact(&mut trace, ["B'", "C'", "U'"], [&b1, &c1, &six1.u]);
    record::<()>(
        &mut trace,
        "U', V', W', X', Y', Z' lie on the line sigma'",
        Ok(six1.points().iter().all(|p| sigma1.contains(p))),
    );

    let expected = [
        PointPair::new(six1.w.clone(), six1.z.clone()),
        PointPair::new(six1.v.clone(), six1.y.clone()),
        PointPair::new(six1.x.clone(), six1.u.clone()),
    ];
    let quad = quadrangle_involution_pairs([&a1, &b1, &c1, d], &sigma1);
    record(
        &mut trace,
        "opposite sides of A'B'C'D meet sigma' in (W'Z'), (V'Y'), (X'U')",
        quad.as_ref().map(|q| *q == expected).map_err(Clone::clone),
    );
    let line_carrier = Carrier::line(sigma1.clone());
    record(
        &mut trace,
        "fact A: the quadrangle pairs are in involution on sigma'",
        quad.and_then(|q| in_involution(&line_carrier, &q)),
    );

    let base = Carrier::conic(&s.sigma, &six.u);
    let transfer = |q: [&ProjPoint; 4], q1: [&ProjPoint; 4]| -> Result<bool, TheoremError> {
        let c = base.as_ref().map_err(|_| TheoremError::DegenerateScene("carrier"))?;
        let t: Vec<_> = q
            .iter()
            .map(|p| c.param_of_point(p))
            .collect::<Result<_, _>>()
            .map_err(|_| TheoremError::DegenerateScene("param"))?;
        let on_conic = cross_ratio_params(&t[0], &t[1], &t[2], &t[3]);
        let on_line = cross_ratio(q1[0], q1[1], q1[2], q1[3]);
        Ok(on_conic.is_ok() && on_conic == on_line)
    };
    record(
        &mut trace,
        "cr(U, V, W, X) on sigma equals cr(U', V', W', X') on sigma'",
        transfer([&six.u, &six.v, &six.w, &six.x], [&six1.u, &six1.v, &six1.w, &six1.x]),
    );
    record(
        &mut trace,
        "cr(X, Y, Z, U) on sigma equals cr(X', Y', Z', U') on sigma'",
        transfer([&six.x, &six.y, &six.z, &six.u], [&six1.x, &six1.y, &six1.z, &six1.u]),
    );
    let primed_pairs = six1.pairs();
    let criterion = base.as_ref().map_err(Clone::clone).and_then(|c| {
        let on_sigma = in_involution_cross_ratio(c, &six.pairs())?;
        let on_line = in_involution_cross_ratio(&line_carrier, &primed_pairs)?;
        Ok(on_sigma && on_line)
    });
    record(
        &mut trace,
        "cross-ratio involution criterion holds for (U'X'), (V'Y'), (W'Z') on sigma' and (UX), (VY), (WZ) on sigma",
        criterion,
    );

    close(TheoremKind::T1, &s.sigma, six, trace)
}
