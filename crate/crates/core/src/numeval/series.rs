//! Series oracles: classical and depth-two polylogarithms as truncated sums
//! with explicit tail bounds.

use num_complex::Complex64 as C;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted for a series argument.
pub const MAX_RADIUS: f64 = 0.95;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    /// `Li_n(z) = Σ_{k≥1} z^k / k^n`.
    Li(u32),
    /// `Li_{a,b}(u, v) = Σ_{0<m<k} u^m v^k / (m^a k^b)`.
    Li2(u32, u32),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: C,
    /// Upper bound on the modulus of the discarded tail.
    pub tail: f64,
}

fn check_radius(r: f64) -> Result<()> {
    if r <= MAX_RADIUS {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("series radius {r} exceeds {MAX_RADIUS}")))
    }
}

/// Sums the first `terms` outer terms.
pub fn series_eval(kind: SeriesKind, args: &[C], terms: usize) -> Result<SeriesValue> {
    match (kind, args) {
        (SeriesKind::Li(n), [z]) => {
            let r = z.norm();
            check_radius(r)?;
            let mut value = C::new(0.0, 0.0);
            let mut p = C::new(1.0, 0.0);
            for k in 1..=terms {
                p *= z;
                value += p / (k as f64).powi(n as i32);
            }
            Ok(SeriesValue {
                value,
                tail: tail_bound(kind, args, terms),
            })
        }
        (SeriesKind::Li2(a, b), [u, v]) => {
            let uv = u * v;
            let r = uv.norm().max(v.norm());
            check_radius(r)?;
            // |u^m v^k| = |uv|^m |v|^{k-m} ≤ r^k
            let mut value = C::new(0.0, 0.0);
            let mut inner = C::new(0.0, 0.0);
            let mut up = C::new(1.0, 0.0);
            let mut vp = C::new(1.0, 0.0);
            for k in 1..=terms {
                vp *= v;
                if k > 1 {
                    up *= u;
                    inner += up / ((k - 1) as f64).powi(a as i32);
                }
                value += inner * vp / (k as f64).powi(b as i32);
            }
            // Σ_{k>M} (k-1) r^k ≤ (M+1) r^{M+1} / (1-r)^2
            Ok(SeriesValue {
                value,
                tail: tail_bound(kind, args, terms),
            })
        }
        _ => Err(Error::Precondition(format!("{kind:?} takes a different number of arguments"))),
    }
}

/// Smallest term count whose tail bound is below `precision`.
pub fn terms_for(kind: SeriesKind, args: &[C], precision: f64) -> Result<usize> {
    let mut terms = 8;
    while series_eval(kind, args, 0).map(|_| tail_bound(kind, args, terms))? >= precision {
        terms += terms / 2;
    }
    Ok(terms)
}

fn tail_bound(kind: SeriesKind, args: &[C], terms: usize) -> f64 {
    let m = terms as f64;
    match (kind, args) {
        (SeriesKind::Li(_), [z]) => z.norm().powi(terms as i32 + 1) / (1.0 - z.norm()),
        (SeriesKind::Li2(..), [u, v]) => {
            let r = (u * v).norm().max(v.norm());
            (m + 1.0) * r.powi(terms as i32 + 1) / ((1.0 - r) * (1.0 - r))
        }
        _ => f64::INFINITY,
    }
}

/// Evaluates to within `precision`.
pub fn series_value(kind: SeriesKind, args: &[C], precision: f64) -> Result<C> {
    let terms = terms_for(kind, args, precision)?;
    Ok(series_eval(kind, args, terms)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LI2_HALF: f64 = 0.582_240_526_465_012_5;

    #[test]
    fn dilog_half() {
        let v = series_eval(SeriesKind::Li(2), &[C::new(0.5, 0.0)], 50).unwrap();
        assert!(v.tail < 1e-10);
        assert!((v.value.re - LI2_HALF).abs() < 1e-10);
        // π²/12 - ln²2/2
        let closed = std::f64::consts::PI.powi(2) / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0;
        assert!((series_value(SeriesKind::Li(2), &[C::new(0.5, 0.0)], 1e-15).unwrap().re - closed).abs() < 1e-15);
    }

    #[test]
    fn zero_argument() {
        assert_eq!(series_eval(SeriesKind::Li(3), &[C::new(0.0, 0.0)], 10).unwrap().value, C::new(0.0, 0.0));
    }

    #[test]
    fn out_of_domain() {
        assert!(matches!(series_eval(SeriesKind::Li(2), &[C::new(0.99, 0.0)], 10), Err(Error::OutOfDomain(_))));
        assert!(series_eval(SeriesKind::Li(2), &[C::new(0.1, 0.0), C::new(0.1, 0.0)], 10).is_err());
    }

    #[test]
    fn depth_two_by_brute_force() {
        let (u, v) = (C::new(0.3, 0.2), C::new(-0.4, 0.1));
        let mut direct = C::new(0.0, 0.0);
        for k in 1..200 {
            for m in 1..k {
                direct += u.powi(m) * v.powi(k) / ((m as f64).powi(2) * (k as f64).powi(1));
            }
        }
        let s = series_value(SeriesKind::Li2(2, 1), &[u, v], 1e-15).unwrap();
        assert!((s - direct).norm() < 1e-14);
    }

    #[test]
    fn stuffle_product() {
        // Li_1(x) Li_1(y) = Li_{1,1}(x, y) + Li_{1,1}(y, x) + Li_2(xy)
        let (x, y) = (C::new(0.3, 0.1), C::new(-0.2, 0.4));
        let p = |k, z| series_value(SeriesKind::Li(k), &[z], 1e-15).unwrap();
        let q = |u, v| series_value(SeriesKind::Li2(1, 1), &[u, v], 1e-15).unwrap();
        let lhs = p(1, x) * p(1, y);
        let rhs = q(x, y) + q(y, x) + p(2, x * y);
        assert!((lhs - rhs).norm() < 1e-13);
    }
}
