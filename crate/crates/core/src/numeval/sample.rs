//! Seeded sampling of admissible configurations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::{EvalConfig, Evaluator};
use crate::error::{Error, Result};
use crate::exactfield::{GaussRat, Rational};
use crate::symbols::{LinComb, Symbol};

pub const MAX_ATTEMPTS: usize = 1000;
const HUBS_PER_ATTEMPT: usize = 40;
/// Pairwise distance between sampled variables.
const VAR_SEPARATION: f64 = 0.1;
/// Pairwise distance between all point values, relative to their diameter.
const POINT_SEPARATION: f64 = 0.01;
const MAX_MODULUS: f64 = 1e3;

/// `k/64` with `k` uniform in `[-64 r, 64 r]`.
fn grid(rng: &mut ChaCha8Rng, r: i64) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-64 * r..=64 * r)), BigInt::from(64))
}

fn grid_point(rng: &mut ChaCha8Rng) -> GaussRat {
    GaussRat::new(grid(rng, 1), grid(rng, 1))
}

fn to_grid(x: f64) -> Rational {
    Rational::new(BigInt::from((x * 64.0).round() as i64), BigInt::from(64))
}

fn separated(points: &[C], min: f64) -> bool {
    points
        .iter()
        .enumerate()
        .all(|(i, p)| points[i + 1..].iter().all(|q| (p - q).norm() >= min))
}

fn diameter(points: &[C]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max((p - q).norm());
        }
    }
    d
}

/// Samples a configuration for all symbols of `symbols`.
pub fn sample_config(symbols: &[Symbol], seed: u64) -> Result<EvalConfig> {
    let mut expr = LinComb::new();
    for s in symbols {
        expr.add_symbol(Rational::from_integer(1.into()), s.clone());
    }
    sample_for(&Evaluator::new(&expr), seed)
}

/// Samples variables as Gaussian rationals on a `1/64` grid in the unit
/// square, then a pre-map (if some endpoint is at infinity) and a hub (if
/// the combination needs one), resampling until every pole keeps clearance.
pub fn sample_for(ev: &Evaluator, seed: u64) -> Result<EvalConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = ev.variables();
    for _ in 0..MAX_ATTEMPTS {
        let assignment: BTreeMap<String, GaussRat> = vars.iter().map(|v| (v.clone(), grid_point(&mut rng))).collect();
        let nums: Vec<C> = assignment.values().map(GaussRat::to_complex).collect();
        if !separated(&nums, VAR_SEPARATION) {
            continue;
        }
        if let Some(cfg) = try_complete(ev, assignment, &mut rng, true) {
            return Ok(cfg);
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// Keeps `assignment` fixed and searches only for a pre-map and hub.
pub fn complete_config(ev: &Evaluator, assignment: BTreeMap<String, GaussRat>, seed: u64) -> Result<EvalConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(cfg) = try_complete(ev, assignment.clone(), &mut rng, false) {
            return Ok(cfg);
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

fn try_complete(
    ev: &Evaluator,
    assignment: BTreeMap<String, GaussRat>,
    rng: &mut ChaCha8Rng,
    screen: bool,
) -> Option<EvalConfig> {
    let eps = ev.needs_regularization().then_some(1e-2);
    let mut cfg = EvalConfig::new(assignment);
    let raw = ev.raw_values(&cfg).ok()?;
    if ev.endpoint_indices().iter().any(|&i| raw[i].is_none()) {
        let finite: Vec<C> = raw.iter().flatten().map(GaussRat::to_complex).collect();
        let p = grid_point(rng);
        let pc = p.to_complex();
        if finite.iter().any(|z| (z - pc).norm() < 0.3) {
            return None;
        }
        cfg.premap = Some(p);
    }
    let values: Vec<C> = ev.values(&cfg).ok()?.iter().filter_map(|p| p.finite()).collect();
    let diam = diameter(&values);
    if screen && (values.iter().any(|z| z.norm() > MAX_MODULUS) || !separated(&values, POINT_SEPARATION * diam)) {
        return None;
    }
    if !ev.needs_hub() {
        return ev.skeleton(&cfg, eps).is_ok().then_some(cfg);
    }
    let n = values.len() as f64;
    let centre: C = values.iter().sum::<C>() / n;
    let radius = 0.75 * diam.max(0.1);
    for _ in 0..HUBS_PER_ATTEMPT {
        let off = grid_point(rng).to_complex() * radius;
        let h = GaussRat::new(to_grid(centre.re + off.re), to_grid(centre.im + off.im));
        let hc = h.to_complex();
        if values.iter().any(|z| (z - hc).norm() < 0.05 * diam) {
            continue;
        }
        cfg.hub = Some(h);
        if ev.skeleton(&cfg, eps).is_ok() {
            return Some(cfg);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeval::path::point_segment_distance;
    use crate::symbols::{parse_lincomb, parse_symbol};

    #[test]
    fn deterministic() {
        let s = vec![parse_symbol("H(a | b, c | d)").unwrap()];
        assert_eq!(sample_config(&s, 7).unwrap(), sample_config(&s, 7).unwrap());
        assert_ne!(sample_config(&s, 7).unwrap(), sample_config(&s, 8).unwrap());
    }

    #[test]
    fn clearance_is_respected() {
        let l = parse_lincomb("H(a | b, c | d) + H(c | a, d | b) + H(b | d | a)").unwrap();
        let ev = Evaluator::new(&l);
        for seed in 0..20 {
            let cfg = sample_for(&ev, seed).unwrap();
            let sk = ev.skeleton(&cfg, None).unwrap();
            let poles: Vec<C> = ev.pole_indices().iter().filter_map(|&i| sk.values[i].finite()).collect();
            for (p, seg) in &sk.segments {
                let own = sk.values[*p].finite().unwrap();
                for q in &poles {
                    if (q - own).norm() == 0.0 {
                        continue;
                    }
                    let d = point_segment_distance(*q, seg.start(), seg.end());
                    assert!(d >= 0.05 * seg.param_length() - 1e-12);
                }
            }
        }
    }

    #[test]
    fn infinity_endpoint_gets_premap() {
        let s = vec![Symbol::unchecked(
            crate::exactfield::ProjPoint::Infinity,
            vec![crate::exactfield::ProjPoint::var("a")],
            crate::exactfield::ProjPoint::var("b"),
            crate::exactfield::ProjPoint::var("x"),
        )];
        let cfg = sample_config(&s, 1).unwrap();
        assert!(cfg.premap.is_some());
    }
}
