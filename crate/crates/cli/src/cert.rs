//! Canonical JSON for certificates and their SHA-256 digests.

use pappian::theorem::ConcurrencyCertificate;
use pappian::{ProjLine, ProjPoint};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

fn point(p: &ProjPoint) -> Value {
    json!(p.coords().each_ref().map(|s| s.to_string()))
}

fn line(l: &ProjLine) -> Value {
    json!(l.coeffs().each_ref().map(|s| s.to_string()))
}

/// Keys are sorted, so the compact encoding is canonical.
pub fn certificate_json(c: &ConcurrencyCertificate) -> Value {
    let six = &c.six;
    json!({
        "kind": c.kind.to_string(),
        "field": c.field.to_string(),
        "six": {
            "U": point(&six.u), "V": point(&six.v), "W": point(&six.w),
            "X": point(&six.x), "Y": point(&six.y), "Z": point(&six.z),
        },
        "chords": {"UX": line(&c.chords[0]), "VY": line(&c.chords[1]), "WZ": line(&c.chords[2])},
        "concurrency_determinant": c.concurrency_determinant.to_string(),
        "common_point": c.common_point.as_ref().map(point),
        "involution_pairs_verdict": c.involution_pairs_verdict,
        "proof_trace": c.proof_trace.iter().map(|f| json!({"fact": f.label, "holds": f.holds})).collect::<Vec<_>>(),
    })
}

pub fn digest_value(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("JSON values serialize");
    hex::encode(Sha256::digest(bytes))
}

pub fn certificate_digest(c: &ConcurrencyCertificate) -> String {
    digest_value(&certificate_json(c))
}
