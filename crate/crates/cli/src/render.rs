//! Deterministic SVG figures of rational scenes in the affine chart `z = 1`.

use std::fmt::Write;

use pappian::conic::{circle_through_three, conic_through_five};
use pappian::proj;
use pappian::theorem::{ConcurrencyCertificate, DerivedSix};
use pappian::{Conic, ConicParametrization, FieldSpec, ProjLine, ProjPoint, Scalar};
use thiserror::Error;

use crate::doc::{DocError, Scene, SceneDocument};

pub const CANVAS: f64 = 1000.0;
pub const MARGIN: f64 = 0.1;
pub const CONIC_SAMPLES: i64 = 256;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("figures are drawn over the rationals only, got {0}")]
    NonRationalField(FieldSpec),
    #[error("scene has no affine point to frame")]
    EmptyScene,
    #[error(transparent)]
    Document(#[from] DocError),
}

fn affine(p: &ProjPoint) -> Option<(f64, f64)> {
    let (x, y) = p.to_affine()?;
    Some((x.to_f64()?, y.to_f64()?))
}

struct Frame {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Option<Frame> {
        let first = points.first()?;
        let (mut x0, mut y0, mut x1, mut y1) = (first.0, first.1, first.0, first.1);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let span = (x1 - x0).max(y1 - y0);
        let span = if span > 0.0 { span } else { 1.0 };
        Some(Frame { cx: (x0 + x1) / 2.0, cy: (y0 + y1) / 2.0, scale: CANVAS * (1.0 - 2.0 * MARGIN) / span })
    }

    fn screen(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (CANVAS / 2.0 + (x - self.cx) * self.scale, CANVAS / 2.0 - (y - self.cy) * self.scale)
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn far((x, y): (f64, f64)) -> bool {
    !(x.is_finite() && y.is_finite()) || x.abs() > 3.0 * CANVAS || y.abs() > 3.0 * CANVAS
}

/// Polylines of a conic. Sample `k` is the second point of the chord from
/// `base` at angle `π(k + 1/2)/256`, which spaces samples evenly along a
/// circle; `base` itself sits at the tangent angle. A run breaks where the
/// conic passes through infinity (the sign of `Q` on the chord direction
/// flips) or leaves the drawing.
fn conic_polylines(conic: &Conic, base: &ProjPoint, frame: &Frame) -> Vec<Vec<(f64, f64)>> {
    let q = FieldSpec::Rationals;
    let (Ok(param), Some(b_aff)) = (ConicParametrization::new(conic.clone(), base.clone()), affine(base)) else {
        return Vec::new();
    };
    let Ok(tangent) = conic.polar(base) else {
        return Vec::new();
    };
    let sign_along = |d: [Scalar; 3]| ProjPoint::from_vec(d).ok().and_then(|d| conic.evaluate(&d).signum());
    // (angle, screen point, sign of Q on the direction)
    type Sample = (f64, Option<(f64, f64)>, Option<i8>);
    let mut samples: Vec<Sample> = Vec::with_capacity(CONIC_SAMPLES as usize + 1);
    let scale = (1_i64 << 20) as f64;
    for k in 0..CONIC_SAMPLES {
        let theta = std::f64::consts::PI * (k as f64 + 0.5) / CONIC_SAMPLES as f64;
        let (dx, dy) = ((theta.cos() * scale).round() as i64, (theta.sin() * scale).round() as i64);
        let d = [q.int(dx), q.int(dy), q.zero()];
        let bz = &base.coords()[2];
        let through = [&base.coords()[0] + &(bz * &d[0]), &base.coords()[1] + &(bz * &d[1]), bz.clone()];
        let line = ProjPoint::from_vec(through).ok().and_then(|p| proj::join(base, &p).ok());
        let point = line
            .and_then(|l| param.param_of_chord(&l).ok())
            .filter(|t| !t.is_infinity())
            .map(|t| param.point_of_param(&t))
            .and_then(|p| affine(&p))
            .map(|p| frame.screen(p))
            .filter(|p| !far(*p));
        samples.push((theta, point, sign_along(d)));
    }
    let [ta, tb, _] = tangent.coeffs().clone();
    let tangent_dir = [-tb, ta, q.zero()];
    let (tx, ty) = (tangent_dir[0].to_f64().unwrap_or(0.0), tangent_dir[1].to_f64().unwrap_or(0.0));
    let theta_t = ty.atan2(tx).rem_euclid(std::f64::consts::PI);
    let at = samples.partition_point(|s| s.0 < theta_t);
    samples.insert(at, (theta_t, Some(frame.screen(b_aff)), sign_along(tangent_dir)));

    let n = samples.len();
    let joined = |i: usize| {
        let (u, v) = (&samples[i], &samples[(i + 1) % n]);
        u.1.is_some() && v.1.is_some() && u.2.is_some() && u.2 == v.2
    };
    let Some(cut) = (0..n).find(|&i| !joined(i)) else {
        let mut run: Vec<_> = samples.iter().filter_map(|s| s.1).collect();
        run.push(run[0]);
        return vec![run];
    };
    let mut runs = Vec::new();
    let mut run = Vec::new();
    for step in 1..=n {
        let i = (cut + step) % n;
        if let Some(p) = samples[i].1 {
            run.push(p);
        }
        if !joined(i) {
            runs.push(std::mem::take(&mut run));
        }
    }
    runs.into_iter().filter(|r| r.len() > 1).collect()
}

/// Clips the line to the canvas.
fn clip_line(l: &ProjLine, frame: &Frame) -> Option<((f64, f64), (f64, f64))> {
    let [a, b, c] = l.coeffs().each_ref().map(|s| s.to_f64().unwrap_or(0.0));
    // In screen coordinates x = cx + (X - W/2)/scale, y = cy - (Y - H/2)/scale.
    let (sa, sb) = (a / frame.scale, -b / frame.scale);
    let sc = a * (frame.cx - CANVAS / 2.0 / frame.scale) + b * (frame.cy + CANVAS / 2.0 / frame.scale) + c;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if sb.abs() > f64::EPSILON {
        for x in [0.0, CANVAS] {
            let y = -(sa * x + sc) / sb;
            if (0.0..=CANVAS).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if sa.abs() > f64::EPSILON {
        for y in [0.0, CANVAS] {
            let x = -(sb * y + sc) / sa;
            if (0.0..=CANVAS).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    let p = *hits.first()?;
    let q = hits.iter().copied().max_by(|u, v| {
        let d = |w: &(f64, f64)| (w.0 - p.0).powi(2) + (w.1 - p.1).powi(2);
        d(u).total_cmp(&d(v))
    })?;
    (q != p).then_some((p, q))
}

/// The two farthest-apart points of a collinear set.
fn hull_segment(points: &[(f64, f64)]) -> Option<((f64, f64), (f64, f64))> {
    let mut best = None;
    let mut best_d = -1.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let d = (p.0 - q.0).powi(2) + (p.1 - q.1).powi(2);
            if d > best_d {
                best_d = d;
                best = Some((*p, *q));
            }
        }
    }
    best
}

fn aux_conics(scene: &Scene) -> Vec<Conic> {
    match scene {
        Scene::T1(s) => [(&s.b, &s.c), (&s.a, &s.c), (&s.a, &s.b)]
            .iter()
            .filter_map(|(p, q)| circle_through_three(p, q, &s.d).ok())
            .collect(),
        Scene::T2(s) => [(&s.b, &s.c), (&s.a, &s.c), (&s.a, &s.b)]
            .iter()
            .filter_map(|(p, q)| conic_through_five([p, q, &s.d, &s.e, &s.f]).ok())
            .collect(),
    }
}

fn polyline(out: &mut String, class: &str, pts: &[(f64, f64)]) {
    let coords: Vec<_> = pts.iter().map(|&(x, y)| format!("{},{}", num(x), num(y))).collect();
    writeln!(out, r#"<polyline class="{class}" points="{}"/>"#, coords.join(" ")).unwrap();
}

fn segment(out: &mut String, class: &str, (p, q): ((f64, f64), (f64, f64))) {
    writeln!(out, r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(p.0), num(p.1), num(q.0), num(q.1))
        .unwrap();
}

const STYLE: &str = "\
.sigma{fill:none;stroke:#1f4e9c;stroke-width:2}
.aux{fill:none;stroke:#8a8a8a;stroke-width:1;stroke-dasharray:6 4}
.side{stroke:#000000;stroke-width:1.5}
.cevian{stroke:#5a5a5a;stroke-width:1}
.chord{stroke:#c0392b;stroke-width:2}
.point{fill:#000000}
.common{fill:#c0392b;stroke:#000000;stroke-width:1}
text{font-family:sans-serif;font-size:16px}
";

/// Renders the scene; with a certificate, the three chords and their common point are drawn too.
pub fn render_svg(doc: &SceneDocument, cert: Option<&ConcurrencyCertificate>) -> Result<String, RenderError> {
    if !doc.field.is_rational() {
        return Err(RenderError::NonRationalField(doc.field));
    }
    let scene = doc.to_scene()?;
    let six: Option<DerivedSix> = cert.map(|c| c.six.clone()).or_else(|| scene.derive_six().ok());
    let named = scene.named_points();
    let mut labelled: Vec<(&str, ProjPoint)> = named.iter().map(|(n, p)| (*n, (*p).clone())).collect();
    if let Some(six) = &six {
        for (n, p) in ["U", "V", "W", "X", "Y", "Z"].into_iter().zip(six.points()) {
            labelled.push((n, p.clone()));
        }
    }
    let finite: Vec<(f64, f64)> = labelled.iter().filter_map(|(_, p)| affine(p)).collect();
    let frame = Frame::fit(&finite).ok_or(RenderError::EmptyScene)?;
    let at = |p: &ProjPoint| affine(p).map(|q| frame.screen(q));

    let mut out = String::new();
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    )
    .unwrap();
    writeln!(out, "<style>\n{STYLE}</style>").unwrap();
    writeln!(out, r##"<rect width="{c}" height="{c}" fill="#ffffff"/>"##, c = CANVAS).unwrap();

    out += "<g id=\"conics\">\n";
    let bases: Vec<&ProjPoint> = labelled.iter().map(|(_, p)| p).filter(|p| !p.is_at_infinity()).collect();
    let base_on = |c: &Conic| bases.iter().copied().find(|p| c.contains(p)).cloned();
    for conic in aux_conics(&scene) {
        for run in base_on(&conic).map(|b| conic_polylines(&conic, &b, &frame)).unwrap_or_default() {
            polyline(&mut out, "aux", &run);
        }
    }
    let d = named[3].1;
    let sigma_runs = base_on(scene.sigma()).map(|b| conic_polylines(scene.sigma(), &b, &frame)).unwrap_or_default();
    for run in sigma_runs {
        polyline(&mut out, "sigma", &run);
    }
    out += "</g>\n<g id=\"triangle\">\n";
    let (a, b, c) = (named[0].1, named[1].1, named[2].1);
    for (p, q) in [(a, b), (b, c), (c, a)] {
        if let (Some(p), Some(q)) = (at(p), at(q)) {
            segment(&mut out, "side", (p, q));
        }
    }
    if let Some(six) = &six {
        for (v, x) in [(a, &six.x), (b, &six.y), (c, &six.z)] {
            let pts: Vec<_> = [v, d, x].into_iter().filter_map(at).collect();
            if let Some(s) = hull_segment(&pts) {
                segment(&mut out, "cevian", s);
            }
        }
    }
    out += "</g>\n";

    if let Some(cert) = cert {
        out += "<g id=\"chords\">\n";
        for chord in &cert.chords {
            if let Some(s) = clip_line(chord, &frame) {
                segment(&mut out, "chord", s);
            }
        }
        out += "</g>\n";
    }

    out += "<g id=\"points\">\n";
    for (_, p) in &labelled {
        if let Some((x, y)) = at(p) {
            writeln!(out, r#"<circle class="point" cx="{}" cy="{}" r="4"/>"#, num(x), num(y)).unwrap();
        }
    }
    if let Some(q) = cert.and_then(|c| c.common_point.as_ref()).and_then(at) {
        writeln!(out, r#"<circle id="common-point" class="common" cx="{}" cy="{}" r="7"/>"#, num(q.0), num(q.1))
            .unwrap();
    }
    out += "</g>\n<g id=\"labels\">\n";
    for (name, p) in &labelled {
        if let Some((x, y)) = at(p) {
            writeln!(out, r#"<text x="{}" y="{}">{name}</text>"#, num(x + 8.0), num(y - 8.0)).unwrap();
        }
    }
    out += "</g>\n</svg>\n";
    Ok(out)
}
