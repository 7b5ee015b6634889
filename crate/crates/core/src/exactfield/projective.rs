//! Points of the projective line over the rational function field, and the
//! fractional-linear action of 2×2 matrices on them.

use std::fmt;
use std::hash::{Hash, Hasher};

use super::fingerprint;
use super::ratfun::RatFun;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum ProjPoint {
    Finite(RatFun),
    Infinity,
}

impl ProjPoint {
    pub fn var(name: &str) -> Self {
        ProjPoint::Finite(RatFun::var(name))
    }

    pub fn int(n: i64) -> Self {
        ProjPoint::Finite(RatFun::int(n))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ProjPoint::Finite(u) if u.is_zero())
    }

    pub fn finite(&self) -> Option<&RatFun> {
        match self {
            ProjPoint::Finite(u) => Some(u),
            ProjPoint::Infinity => None,
        }
    }

    pub fn fingerprint(&self) -> u64 {
        match self {
            ProjPoint::Finite(u) => u.fingerprint(),
            ProjPoint::Infinity => fingerprint::INFINITY,
        }
    }

    pub fn variables(&self) -> Vec<String> {
        self.finite().map(|u| u.variables()).unwrap_or_default()
    }

    /// `num/den`, or infinity when the denominator vanishes.
    pub(crate) fn from_parts(num: RatFun, den: RatFun) -> Result<Self> {
        match (num.is_zero(), den.is_zero()) {
            (true, true) => Err(Error::IndeterminatePoint),
            (_, true) => Ok(ProjPoint::Infinity),
            _ => Ok(ProjPoint::Finite(num.div(&den)?)),
        }
    }

    pub fn substitute(
        &self,
        values: &std::collections::BTreeMap<String, RatFun>,
    ) -> Result<ProjPoint> {
        match self {
            ProjPoint::Infinity => Ok(ProjPoint::Infinity),
            ProjPoint::Finite(u) => {
                let (n, d) = u.substitute_parts(values);
                Self::from_parts(n, d)
            }
        }
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ProjPoint::Infinity, ProjPoint::Infinity) => true,
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for ProjPoint {}

impl Hash for ProjPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fingerprint().hash(state);
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(u) => write!(f, "{u}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl From<RatFun> for ProjPoint {
    fn from(u: RatFun) -> Self {
        ProjPoint::Finite(u)
    }
}

/// `t ↦ (a t + b) / (c t + d)` with `ad - bc ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius {
    pub a: RatFun,
    pub b: RatFun,
    pub c: RatFun,
    pub d: RatFun,
}

impl Mobius {
    pub fn new(a: RatFun, b: RatFun, c: RatFun, d: RatFun) -> Result<Self> {
        let m = Self { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self {
            a: RatFun::one(),
            b: RatFun::zero(),
            c: RatFun::zero(),
            d: RatFun::one(),
        }
    }

    pub fn det(&self) -> RatFun {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let (num, den) = match p {
            ProjPoint::Infinity => (self.a.clone(), self.c.clone()),
            ProjPoint::Finite(z) => (
                self.a.mul(z).add(&self.b),
                self.c.mul(z).add(&self.d),
            ),
        };
        ProjPoint::from_parts(num, den).expect("nonsingular map has no indeterminate images")
    }

    /// Matrix product `self · other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: self.a.mul(&other.a).add(&self.b.mul(&other.c)),
            b: self.a.mul(&other.b).add(&self.b.mul(&other.d)),
            c: self.c.mul(&other.a).add(&self.d.mul(&other.c)),
            d: self.c.mul(&other.b).add(&self.d.mul(&other.d)),
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        }
    }

    /// The map sending `(p, q, r)` to `(∞, 0, 1)`. Points must be pairwise
    /// distinct.
    pub fn to_standard_frame(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<Mobius> {
        use ProjPoint::{Finite, Infinity};
        if p == q || q == r || p == r {
            return Err(Error::SingularMatrix);
        }
        let one = RatFun::one;
        let zero = RatFun::zero;
        let m = match (p, q, r) {
            (Finite(p), Finite(q), Finite(r)) => {
                let rp = r.sub(p);
                let rq = r.sub(q);
                Mobius {
                    a: rp.clone(),
                    b: q.mul(&rp).neg(),
                    c: rq.clone(),
                    d: p.mul(&rq).neg(),
                }
            }
            (Infinity, Finite(q), Finite(r)) => Mobius {
                a: one(),
                b: q.neg(),
                c: zero(),
                d: r.sub(q),
            },
            (Finite(p), Infinity, Finite(r)) => Mobius {
                a: zero(),
                b: r.sub(p),
                c: one(),
                d: p.neg(),
            },
            (Finite(p), Finite(q), Infinity) => Mobius {
                a: one(),
                b: q.neg(),
                c: one(),
                d: p.neg(),
            },
            _ => unreachable!("at most one point is infinite"),
        };
        debug_assert!(!m.det().is_zero());
        Ok(m)
    }

    /// `t ↦ 1/(t - x)`.
    pub fn invert_around(x: &RatFun) -> Mobius {
        Mobius {
            a: RatFun::zero(),
            b: RatFun::one(),
            c: RatFun::one(),
            d: x.neg(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::rat;

    #[test]
    fn identity_fixes_points() {
        let p = ProjPoint::var("a");
        assert_eq!(Mobius::identity().apply(&p), p);
        assert_eq!(Mobius::identity().apply(&ProjPoint::Infinity), ProjPoint::Infinity);
    }

    #[test]
    fn reciprocal_sends_infinity_to_zero() {
        let m = Mobius::new(RatFun::zero(), RatFun::one(), RatFun::one(), RatFun::zero()).unwrap();
        assert_eq!(m.apply(&ProjPoint::Infinity), ProjPoint::zero());
        assert_eq!(m.apply(&ProjPoint::zero()), ProjPoint::Infinity);
    }

    #[test]
    fn inversion_around_marker() {
        let x = RatFun::var("x");
        let a = RatFun::var("a");
        let m = Mobius::invert_around(&x);
        let expect = RatFun::one().div(&a.sub(&x)).unwrap();
        assert_eq!(m.apply(&ProjPoint::Finite(a)), ProjPoint::Finite(expect));
        assert_eq!(m.apply(&ProjPoint::Finite(x)), ProjPoint::Infinity);
    }

    #[test]
    fn singular_matrix_rejected() {
        let a = RatFun::var("a");
        let r = Mobius::new(a.clone(), a.clone(), RatFun::one(), RatFun::one());
        assert_eq!(r, Err(Error::SingularMatrix));
    }

    #[test]
    fn standard_frame_all_cases() {
        let pts = [
            ProjPoint::var("p"),
            ProjPoint::var("q"),
            ProjPoint::var("r"),
        ];
        for inf in 0..4 {
            let mut f = pts.clone();
            if inf < 3 {
                f[inf] = ProjPoint::Infinity;
            }
            let m = Mobius::to_standard_frame(&f[0], &f[1], &f[2]).unwrap();
            assert_eq!(m.apply(&f[0]), ProjPoint::Infinity);
            assert_eq!(m.apply(&f[1]), ProjPoint::zero());
            assert_eq!(m.apply(&f[2]), ProjPoint::one());
        }
        let half = ProjPoint::Finite(RatFun::constant(rat(1, 2)));
        assert!(Mobius::to_standard_frame(&half, &half, &ProjPoint::one()).is_err());
    }
}
