use crate::conic::{conic_through_five, fourth_intersection, ConicError};
use crate::correspondence::{points_on_line, steiner_for_triangle, SteinerMap};
use crate::involution::{in_involution, quadrangle_involution_pairs, Carrier, PointPair};
use crate::proj::{self, ProjPoint};

use super::t1::line_meet;
use super::{
    close, collinear_fact, record, ConcurrencyCertificate, DerivedSix, SceneError, SceneT2, TheoremError, TheoremKind,
};

fn aux_meet_error(e: ConicError) -> TheoremError {
    TheoremError::DegenerateScene(match e {
        ConicError::IdenticalConics => "sigma-equals-aux-conic",
        ConicError::TangentialContact(_) => "sigma-tangent-to-aux-conic",
        _ => "aux-meet-undefined",
    })
}

pub fn derive_six_t2(s: &SceneT2) -> Result<DerivedSix, TheoremError> {
    let aux = |p: &ProjPoint, q: &ProjPoint| -> Result<ProjPoint, TheoremError> {
        let conic = conic_through_five([p, q, &s.d, &s.e, &s.f])
            .map_err(|_| TheoremError::DegenerateScene("aux-conic-undefined"))?;
        fourth_intersection(&s.sigma, &conic, &s.d, &s.e, &s.f).map_err(aux_meet_error)
    };
    let six = DerivedSix {
        u: aux(&s.b, &s.c)?,
        v: aux(&s.a, &s.c)?,
        w: aux(&s.a, &s.b)?,
        x: line_meet(&s.sigma, &s.a, &s.d)?,
        y: line_meet(&s.sigma, &s.b, &s.d)?,
        z: line_meet(&s.sigma, &s.c, &s.d)?,
    };
    six.validate(&s.sigma, &[&s.d, &s.e, &s.f])?;
    Ok(six)
}

fn steiner(s: &SceneT2) -> Result<SteinerMap, TheoremError> {
    steiner_for_triangle(&s.d, &s.e, &s.f, [&s.seeds[0], &s.seeds[1]]).map_err(|_| SceneError::BadSeeds.into())
}

/// Derives the six points, rejects scenes whose Steiner image quadrangle
/// `A'B'C'D` is not in general position with respect to `U'V'`, and certifies.
pub fn verify_theorem2(s: &SceneT2) -> Result<ConcurrencyCertificate, TheoremError> {
    let six = derive_six_t2(s)?;
    let map = steiner(s)?;
    let sides = map.triangle().sides();
    if [&s.a, &s.b, &s.c].iter().any(|p| sides.iter().any(|l| l.contains(p))) {
        return Err(TheoremError::DegenerateScene("abc-on-def-side"));
    }
    let img = |p: &ProjPoint| map.apply(p).expect("point is not a vertex");
    let (a1, b1, c1) = (img(&s.a), img(&s.b), img(&s.c));
    let (u1, v1) = (img(&six.u), img(&six.v));
    let quad = [&a1, &b1, &c1, &s.d];
    if [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        .iter()
        .any(|&(i, j, k)| proj::are_collinear(quad[i], quad[j], quad[k]))
    {
        return Err(TheoremError::DegenerateScene("quadrangle-degenerate"));
    }
    if let Ok(l) = proj::join(&u1, &v1) {
        if quad.iter().any(|p| l.contains(p)) {
            return Err(TheoremError::DegenerateScene("image-line-through-quadrangle-vertex"));
        }
    }
    certify_t2(s, &six)
}

/// Replays the Steiner-correspondence proof on the given six points.
pub fn certify_t2(s: &SceneT2, six: &DerivedSix) -> Result<ConcurrencyCertificate, TheoremError> {
    six.validate(&s.sigma, &[&s.d, &s.e, &s.f])?;
    let map = steiner(s)?;
    let img = |p: &ProjPoint| map.apply(p).map_err(|_| TheoremError::DegenerateScene("steiner-undefined"));
    let (a1, b1, c1) = (img(&s.a)?, img(&s.b)?, img(&s.c)?);
    let six1 = DerivedSix {
        u: img(&six.u)?,
        v: img(&six.v)?,
        w: img(&six.w)?,
        x: img(&six.x)?,
        y: img(&six.y)?,
        z: img(&six.z)?,
    };
    let d = &s.d;
    let mut trace = Vec::new();

    collinear_fact(&mut trace, ["U'", "V'", "W'"], [&six1.u, &six1.v, &six1.w]);
    collinear_fact(&mut trace, ["U'", "B'", "C'"], [&six1.u, &b1, &c1]);
    collinear_fact(&mut trace, ["V'", "A'", "C'"], [&six1.v, &a1, &c1]);
    collinear_fact(&mut trace, ["W'", "A'", "B'"], [&six1.w, &a1, &b1]);

    let line = proj::join(&six1.u, &six1.v);
    for (name, vertex_name, vertex, image) in
        [("X'", "A'", &a1, &six1.x), ("Y'", "B'", &b1, &six1.y), ("Z'", "C'", &c1, &six1.z)]
    {
        let meet = line
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|l| proj::meet(&proj::join(d, vertex)?, l))
            .map(|p| &p == image);
        record(&mut trace, format!("{name} = D{vertex_name} meet U'V'"), meet);
    }

    let expected = [
        PointPair::new(six1.w.clone(), six1.z.clone()),
        PointPair::new(six1.v.clone(), six1.y.clone()),
        PointPair::new(six1.x.clone(), six1.u.clone()),
    ];
    let quad =
        line.as_ref().map_err(|e| e.clone().into()).and_then(|l| quadrangle_involution_pairs([&a1, &b1, &c1, d], l));
    record(
        &mut trace,
        "opposite sides of A'B'C'D meet U'V' in (W'Z'), (V'Y'), (X'U')",
        quad.as_ref().map(|q| *q == expected).map_err(Clone::clone),
    );
    record(
        &mut trace,
        "fact A: the quadrangle pairs are in involution on U'V'",
        line.as_ref()
            .map_err(|e| e.clone().into())
            .and_then(|l| quad.and_then(|q| in_involution(&Carrier::line(l.clone()), &q))),
    );

    let back = six1.points().iter().map(|p| map.apply(p)).collect::<Result<Vec<_>, _>>();
    record(
        &mut trace,
        "S maps U', V', W', X', Y', Z' back to U, V, W, X, Y, Z",
        back.map(|b| b.iter().zip(six.points()).all(|(p, q)| p == q)),
    );
    let image_conic = line.as_ref().map_err(|e| e.clone().into()).and_then(|l| {
        let sides = map.triangle().sides();
        let samples = points_on_line(l, 7, |p| !sides.iter().any(|sd| sd.contains(p)));
        map.line_image(l, &samples).map(|c| c == s.sigma)
    });
    record(&mut trace, "S sends the line U'V' onto sigma through D, E, F", image_conic);

    close(TheoremKind::T2, &s.sigma, six, trace)
}
