//! Rejection-sampled random scenes.
//!
//! Scene `k` of a run with seed `s` draws from ChaCha8 stream `k` of seed
//! `s`. Each attempt draws, in order:
//!
//! * theorem 1: affine `A, B, C, D, P, Q`; `sigma` is the circle `DPQ`;
//! * theorem 2: points `A, B, C, D, E, F, P, Q`; `sigma` is the conic
//!   `DEFPQ`, and the Steiner seeds are the defaults.
//!
//! An attempt is accepted when the scene verifies; any scene or degeneracy
//! error counts as a rejection under its label.

use std::collections::BTreeMap;

use crate::conic::{circle_through_three, conic_through_five};
use crate::field::FieldSpec;
use crate::sample::Sampler;

use super::{default_seeds, verify_theorem1, verify_theorem2, ConcurrencyCertificate, SceneT1, SceneT2, TheoremError};

/// Attempts per scene before giving up.
pub const MAX_ATTEMPTS: u64 = 10_000;

/// An accepted scene with its certificate and the rejections before it.
#[derive(Clone, Debug)]
pub struct Generated<S> {
    pub scene: S,
    pub certificate: ConcurrencyCertificate,
    pub attempts: u64,
    pub rejections: BTreeMap<&'static str, u64>,
}

fn run<S>(
    sampler: &mut Sampler,
    draw: impl Fn(&mut Sampler) -> Result<S, TheoremError>,
    verify: impl Fn(&S) -> Result<ConcurrencyCertificate, TheoremError>,
) -> Result<Generated<S>, TheoremError> {
    let mut rejections = BTreeMap::new();
    for attempt in 1..=MAX_ATTEMPTS {
        let outcome = draw(sampler).and_then(|scene| verify(&scene).map(|cert| (scene, cert)));
        match outcome {
            Ok((scene, certificate)) => {
                return Ok(Generated { scene, certificate, attempts: attempt, rejections });
            }
            Err(e) => match e.rejection_label() {
                Some(label) => *rejections.entry(label).or_insert(0) += 1,
                None => return Err(e),
            },
        }
    }
    Err(TheoremError::ExhaustedAttempts { attempts: MAX_ATTEMPTS, rejections })
}

fn draw_t1(s: &mut Sampler) -> Result<SceneT1, TheoremError> {
    let [a, b, c, d, p, q] = std::array::from_fn(|_| s.affine_point());
    let sigma = circle_through_three(&d, &p, &q).map_err(|_| TheoremError::DegenerateScene("sigma-undefined"))?;
    Ok(SceneT1::new(a, b, c, d, sigma)?)
}

fn draw_t2(s: &mut Sampler) -> Result<SceneT2, TheoremError> {
    let [a, b, c, d, e, f, p, q] = std::array::from_fn(|_| s.point());
    let sigma =
        conic_through_five([&d, &e, &f, &p, &q]).map_err(|_| TheoremError::DegenerateScene("sigma-undefined"))?;
    let seeds = default_seeds(s.field());
    Ok(SceneT2::new(a, b, c, d, e, f, sigma, seeds)?)
}

pub fn random_scene_t1_stream(seed: u64, stream: u64, bound: u64) -> Result<Generated<SceneT1>, TheoremError> {
    if bound == 0 {
        return Err(TheoremError::InvalidBound(bound));
    }
    let mut sampler = Sampler::new(FieldSpec::Rationals, bound, seed, stream);
    run(&mut sampler, draw_t1, verify_theorem1)
}

pub fn random_scene_t1(seed: u64, bound: u64) -> Result<Generated<SceneT1>, TheoremError> {
    random_scene_t1_stream(seed, 0, bound)
}

pub fn random_scene_t2_stream(
    seed: u64,
    stream: u64,
    bound: u64,
    field: FieldSpec,
) -> Result<Generated<SceneT2>, TheoremError> {
    if bound == 0 {
        return Err(TheoremError::InvalidBound(bound));
    }
    let mut sampler = Sampler::new(field, bound, seed, stream);
    run(&mut sampler, draw_t2, verify_theorem2)
}

pub fn random_scene_t2(seed: u64, bound: u64, field: FieldSpec) -> Result<Generated<SceneT2>, TheoremError> {
    random_scene_t2_stream(seed, 0, bound, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_t1() {
        let a = random_scene_t1(1, 10).unwrap();
        let b = random_scene_t1(1, 10).unwrap();
        assert_eq!(a.scene, b.scene);
        assert_eq!(a.certificate, b.certificate);
        assert_eq!(a.attempts, 1 + a.rejections.values().sum::<u64>());
    }

    #[test]
    fn tiny_fields_exhaust() {
        for p in [5, 7] {
            let f = FieldSpec::prime(p).unwrap();
            assert!(matches!(random_scene_t2(1, 20, f), Err(TheoremError::ExhaustedAttempts { .. })));
        }
    }

    #[test]
    fn zero_bound_is_invalid() {
        assert!(matches!(random_scene_t1(1, 0), Err(TheoremError::InvalidBound(0))));
    }

    #[test]
    fn prime_field_scene() {
        let f = FieldSpec::prime(11).unwrap();
        let g = random_scene_t2(3, 20, f).unwrap();
        assert!(g.certificate.holds());
    }
}
