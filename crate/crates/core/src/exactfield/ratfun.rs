use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::fingerprint::{self, POLE};
use super::poly::Poly;
use super::rational::{GaussRat, Rational};
use crate::error::{Error, Result};

/// Relative size below which a floating-point denominator counts as zero.
pub const DENOMINATOR_THRESHOLD: f64 = 1e-12;

/// Quotient of two polynomials. Not reduced by a gcd: two representations are
/// equal when `p*s == r*q`. The denominator is scaled to have leading
/// coefficient one and constant denominators are folded into the numerator.
#[derive(Clone)]
pub struct RatFun {
    num: Poly,
    den: Poly,
    fp: OnceLock<u64>,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let (num, den) = Poly::cancel_common_monomial(&num, &den);
        if let Some(c) = den.as_constant() {
            return Self::from_poly(num.scale(&(Rational::one() / c)));
        }
        if let Some(c) = num.proportional_to(&den) {
            return Self::constant(c);
        }
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap();
        let (num, den) = if lc.is_one() {
            (num, den)
        } else {
            let k = Rational::one() / lc;
            (num.scale(&k), den.scale(&k))
        };
        Self {
            num,
            den,
            fp: OnceLock::new(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
            fp: OnceLock::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(super::rational::int(n))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(Poly::var(name))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Variables appearing in numerator or denominator.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .num
            .vars()
            .iter()
            .chain(self.den.vars().iter())
            .cloned()
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalized(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> RatFun {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
            fp: OnceLock::new(),
        }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, k: &Rational) -> RatFun {
        Self::normalized(self.num.scale(k), self.den.clone())
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn pow(&self, e: u32) -> RatFun {
        Self::normalized(self.num.pow(e), self.den.pow(e))
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &RatFun) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Exact value at a Gaussian-rational assignment.
    pub fn eval_exact(&self, assignment: &BTreeMap<String, GaussRat>) -> Result<GaussRat> {
        let lookup = |v: &str| assignment.get(v).cloned();
        let n = self
            .num
            .eval_exact(lookup)
            .ok_or_else(|| self.missing_var(assignment))?;
        let d = self
            .den
            .eval_exact(lookup)
            .ok_or_else(|| self.missing_var(assignment))?;
        let inv = d.inv().ok_or(Error::DenominatorVanishes)?;
        Ok(&n * &inv)
    }

    /// Floating-point value; the denominator is rejected when it is below
    /// [`DENOMINATOR_THRESHOLD`] relative to its term magnitudes.
    pub fn eval(&self, assignment: &BTreeMap<String, Complex64>) -> Result<Complex64> {
        let lookup = |v: &str| assignment.get(v).copied();
        let (n, _) = self
            .num
            .eval_complex(lookup)
            .ok_or_else(|| self.missing_var(assignment))?;
        let (d, scale) = self
            .den
            .eval_complex(lookup)
            .ok_or_else(|| self.missing_var(assignment))?;
        if d.norm() <= DENOMINATOR_THRESHOLD * scale.max(1.0) {
            return Err(Error::DenominatorVanishes);
        }
        Ok(n / d)
    }

    fn missing_var<V>(&self, assignment: &BTreeMap<String, V>) -> Error {
        let var = self
            .variables()
            .into_iter()
            .find(|v| !assignment.contains_key(v))
            .unwrap_or_default();
        Error::UnboundVariable(var)
    }

    /// Substitutes rational functions for variables.
    pub fn substitute(&self, values: &BTreeMap<String, RatFun>) -> Result<RatFun> {
        let sub = |p: &Poly| {
            p.fold(
                |v| values.get(v).cloned().unwrap_or_else(|| RatFun::var(v)),
                |c| RatFun::constant(c.clone()),
                |a, b| a.add(&b),
                |a, b| a.mul(b),
            )
        };
        sub(&self.num).div(&sub(&self.den))
    }

    /// Substitution that may send the value to infinity: returns
    /// `(numerator, denominator)` after substitution.
    pub(crate) fn substitute_parts(
        &self,
        values: &BTreeMap<String, RatFun>,
    ) -> (RatFun, RatFun) {
        let sub = |p: &Poly| {
            p.fold(
                |v| values.get(v).cloned().unwrap_or_else(|| RatFun::var(v)),
                |c| RatFun::constant(c.clone()),
                |a, b| a.add(&b),
                |a, b| a.mul(b),
            )
        };
        (sub(&self.num), sub(&self.den))
    }

    pub fn fingerprint(&self) -> u64 {
        *self.fp.get_or_init(|| {
            let n = self.num.eval_mod(fingerprint::variable_point);
            let d = self.den.eval_mod(fingerprint::variable_point);
            match (n, d.and_then(fingerprint::inv_mod)) {
                (Some(n), Some(dinv)) => fingerprint::mul_mod(n, dinv),
                _ => POLE,
            }
        })
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.fingerprint(), other.fingerprint());
        if a != b && a != POLE && b != POLE {
            return false;
        }
        self.equals(other)
    }
}

impl Eq for RatFun {}

impl Hash for RatFun {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fingerprint().hash(state);
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.num_terms() > 1
}

fn is_atomic_den(p: &Poly) -> bool {
    if p.num_terms() != 1 {
        return false;
    }
    let (m, c) = p.leading().unwrap();
    let vars_used = m.0.iter().filter(|&&e| e > 0).count();
    let plain_var = vars_used == 1 && m.0.iter().all(|&e| e <= 1) && c.is_one();
    let plain_int = m.degree() == 0 && c.is_integer() && *c > Rational::zero();
    plain_var || plain_int
}

impl fmt::Display for RatFun {
    /// `(a - c)/(b - c)` style; parses back with the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if is_atomic_den(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::{int, rat};

    fn v(n: &str) -> RatFun {
        RatFun::var(n)
    }

    #[test]
    fn difference_of_squares_quotient() {
        let (a, b) = (v("a"), v("b"));
        let lhs = a.mul(&a).sub(&b.mul(&b)).div(&a.sub(&b)).unwrap();
        assert!(lhs.equals(&a.add(&b)));
        assert_eq!(lhs, a.add(&b));
    }

    #[test]
    fn distinct_denominators_differ() {
        let (a, b, c) = (v("a"), v("b"), v("c"));
        assert_ne!(a.div(&b).unwrap(), a.div(&c).unwrap());
    }

    #[test]
    fn cross_ratio_at_integers() {
        let (a, b, c, d) = (v("a"), v("b"), v("c"), v("d"));
        let cr = a
            .sub(&c)
            .mul(&b.sub(&d))
            .div(&a.sub(&d).mul(&b.sub(&c)))
            .unwrap();
        let pts: BTreeMap<String, RatFun> = [("a", 0), ("b", 1), ("c", 2), ("d", 3)]
            .into_iter()
            .map(|(k, x)| (k.to_string(), RatFun::int(x)))
            .collect();
        assert_eq!(cr.substitute(&pts).unwrap(), RatFun::constant(rat(4, 3)));
    }

    #[test]
    fn eval_three_point_ratio() {
        let (a, b, c) = (v("a"), v("b"), v("c"));
        let u = a.sub(&c).div(&b.sub(&c)).unwrap();
        let asg: BTreeMap<String, Complex64> = [("a", 0.0), ("b", 1.0), ("c", 3.0)]
            .into_iter()
            .map(|(k, x)| (k.to_string(), Complex64::new(x, 0.0)))
            .collect();
        let z = u.eval(&asg).unwrap();
        assert!((z - Complex64::new(1.5, 0.0)).norm() < 1e-15);
        let exact: BTreeMap<String, GaussRat> = [("a", 0), ("b", 1), ("c", 3)]
            .into_iter()
            .map(|(k, x)| (k.to_string(), GaussRat::real(int(x))))
            .collect();
        assert_eq!(u.eval_exact(&exact).unwrap(), GaussRat::real(rat(3, 2)));
    }

    #[test]
    fn constant_evaluates_anywhere() {
        let k = RatFun::constant(rat(7, 3));
        let z = k.eval(&BTreeMap::new()).unwrap();
        assert!((z.re - 7.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn pole_is_reported() {
        let (a, b) = (v("a"), v("b"));
        let u = RatFun::one().div(&a.sub(&b)).unwrap();
        let asg: BTreeMap<String, Complex64> = [("a", 1.0), ("b", 1.0)]
            .into_iter()
            .map(|(k, x)| (k.to_string(), Complex64::new(x, 0.0)))
            .collect();
        assert_eq!(u.eval(&asg), Err(Error::DenominatorVanishes));
        let exact: BTreeMap<String, GaussRat> = [("a", 1), ("b", 1)]
            .into_iter()
            .map(|(k, x)| (k.to_string(), GaussRat::real(int(x))))
            .collect();
        assert_eq!(u.eval_exact(&exact), Err(Error::DenominatorVanishes));
    }

    #[test]
    fn display_forms() {
        let (a, b, c) = (v("a"), v("b"), v("c"));
        assert_eq!(a.sub(&c).div(&b.sub(&c)).unwrap().to_string(), "(a - c)/(b - c)");
        assert_eq!(RatFun::constant(rat(-1, 4)).to_string(), "-1/4");
        assert_eq!(a.div(&b).unwrap().to_string(), "a/b");
        assert_eq!(b.div(&b.div(&a).unwrap()).unwrap().to_string(), "a");
        assert_eq!(a.div(&b.scale(&int(2))).unwrap().to_string(), "1/2*a/b");
    }
}
