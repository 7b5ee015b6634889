//! Sparse multivariate polynomials over the rationals.
//!
//! Each polynomial carries its own sorted variable list; binary operations
//! first lift both operands onto the union of their lists. Terms are kept in
//! graded lexicographic order and zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{GaussRat, Rational};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct Poly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self {
            vars: Arc::new(Vec::new()),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial(Vec::new()), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        Self {
            vars: Arc::new(vec![name.to_string()]),
            terms,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has degree 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    /// Leading (grlex-greatest) term.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map_or(0, |(m, _)| m.degree())
    }

    fn with_vars(&self, vars: &Arc<Vec<String>>) -> Poly {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return Poly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("variable missing from union"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; vars.len()];
                for (k, &x) in m.0.iter().enumerate() {
                    e[map[k]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    fn union_vars(&self, other: &Poly) -> Arc<Vec<String>> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return self.vars.clone();
        }
        if other.vars.is_empty() {
            return self.vars.clone();
        }
        if self.vars.is_empty() {
            return other.vars.clone();
        }
        let mut v: Vec<String> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        v.sort();
        v.dedup();
        Arc::new(v)
    }

    fn aligned(&self, other: &Poly) -> (Poly, Poly) {
        let vars = self.union_vars(other);
        (self.with_vars(&vars), other.with_vars(&vars))
    }

    /// Drops variables that no term uses.
    fn trimmed(self) -> Poly {
        if self.vars.is_empty() {
            return self;
        }
        let used: Vec<bool> = (0..self.vars.len())
            .map(|k| self.terms.keys().any(|m| m.0[k] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let vars: Vec<String> = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(m, c)| {
                let e = m
                    .0
                    .into_iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(x, _)| x)
                    .collect();
                (Monomial(e), c)
            })
            .collect();
        Poly {
            vars: Arc::new(vars),
            terms,
        }
    }

    /// Divides both polynomials by the largest monomial dividing every term
    /// of either.
    pub(crate) fn cancel_common_monomial(a: &Poly, b: &Poly) -> (Poly, Poly) {
        let (a, b) = a.aligned(b);
        let n = a.vars.len();
        let mut common: Option<Vec<u32>> = None;
        for m in a.terms.keys().chain(b.terms.keys()) {
            let c = common.get_or_insert_with(|| m.0.clone());
            for k in 0..n {
                c[k] = c[k].min(m.0[k]);
            }
        }
        match common {
            Some(c) if c.iter().any(|&e| e > 0) => {
                let divide = |p: Poly| -> Poly {
                    let terms = p
                        .terms
                        .into_iter()
                        .map(|(m, v)| (Monomial(m.0.iter().zip(&c).map(|(x, y)| x - y).collect()), v))
                        .collect();
                    Poly { vars: p.vars, terms }.trimmed()
                };
                (divide(a), divide(b))
            }
            _ => (a.trimmed(), b.trimmed()),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            let entry = a.terms.entry(m);
            match entry {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
            }
        }
        a.trimmed()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let (a, b) = self.aligned(other);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                let slot = terms.entry(Monomial(e)).or_insert_with(Rational::zero);
                *slot += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            vars: a.vars,
            terms,
        }
        .trimmed()
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Returns `Some(c)` when `self == c * other` for a rational `c`.
    pub fn proportional_to(&self, other: &Poly) -> Option<Rational> {
        if other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let (a, b) = self.aligned(other);
        let (ma, ca) = a.leading()?;
        let (mb, cb) = b.leading()?;
        if ma != mb {
            return None;
        }
        let k = ca / cb;
        for ((m1, c1), (m2, c2)) in a.terms.iter().zip(b.terms.iter()) {
            if m1 != m2 || *c1 != c2 * &k {
                return None;
            }
        }
        Some(k)
    }

    pub fn eval_exact<F>(&self, mut value: F) -> Option<GaussRat>
    where
        F: FnMut(&str) -> Option<GaussRat>,
    {
        let vals: Option<Vec<GaussRat>> = self.vars.iter().map(|v| value(v)).collect();
        let vals = vals?;
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = GaussRat::real(c.clone());
            for (x, &e) in vals.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Some(acc)
    }

    /// Evaluates with floating-point complex values; also returns the sum of
    /// absolute term magnitudes, used as a cancellation scale.
    pub fn eval_complex<F>(&self, mut value: F) -> Option<(num_complex::Complex64, f64)>
    where
        F: FnMut(&str) -> Option<num_complex::Complex64>,
    {
        let vals: Option<Vec<num_complex::Complex64>> = self.vars.iter().map(|v| value(v)).collect();
        let vals = vals?;
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (m, c) in &self.terms {
            let mut t = num_complex::Complex64::new(super::rational::to_f64(c), 0.0);
            for (x, &e) in vals.iter().zip(&m.0) {
                if e > 0 {
                    t *= x.powu(e);
                }
            }
            scale += t.norm();
            acc += t;
        }
        Some((acc, scale))
    }

    /// Value modulo the fingerprint prime; `None` if a coefficient denominator
    /// vanishes modulo the prime.
    pub fn eval_mod<F>(&self, mut value: F) -> Option<u64>
    where
        F: FnMut(&str) -> u64,
    {
        use super::fingerprint::{mul_mod, pow_mod, rational_mod, P};
        let vals: Vec<u64> = self.vars.iter().map(|v| value(v)).collect();
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = rational_mod(c)?;
            for (x, &e) in vals.iter().zip(&m.0) {
                if e > 0 {
                    t = mul_mod(t, pow_mod(*x, e as u64));
                }
            }
            acc = (acc + t) % P;
        }
        Some(acc)
    }

    /// Substitutes every variable through `value` and rebuilds the result with
    /// the supplied ring operations.
    pub fn fold<T, V, C, A, M>(&self, mut value: V, constant: C, add: A, mul: M) -> T
    where
        V: FnMut(&str) -> T,
        C: Fn(&Rational) -> T,
        A: Fn(T, T) -> T,
        M: Fn(&T, &T) -> T,
        T: Clone,
    {
        let vals: Vec<T> = self.vars.iter().map(|v| value(v)).collect();
        let mut acc = constant(&Rational::zero());
        for (m, c) in &self.terms {
            let mut t = constant(c);
            for (x, &e) in vals.iter().zip(&m.0) {
                for _ in 0..e {
                    t = mul(&t, x);
                }
            }
            acc = add(acc, t);
        }
        acc
    }

    pub fn equals(&self, other: &Poly) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for Poly {}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(&m.0) {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    /// Terms in descending graded-lex order, e.g. `a^2 - 2*a*b + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, &self.vars, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::{int, rat};

    fn p(name: &str) -> Poly {
        Poly::var(name)
    }

    #[test]
    fn grlex_order() {
        // degree dominates, then lex on exponent vectors
        assert!(Monomial(vec![0, 2]) > Monomial(vec![1, 0]));
        assert!(Monomial(vec![2, 0]) > Monomial(vec![1, 1]));
    }

    #[test]
    fn arithmetic_across_variable_lists() {
        let a = p("a");
        let b = p("b");
        let sq = a.add(&b).mul(&a.sub(&b));
        let expect = a.mul(&a).sub(&b.mul(&b));
        assert_eq!(sq, expect);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.sub(&a).vars().len(), 0);
    }

    #[test]
    fn display() {
        let a = p("a");
        let b = p("b");
        let q = a.mul(&a).scale(&int(2)).sub(&b.scale(&rat(1, 2))).add(&Poly::constant(int(-3)));
        assert_eq!(q.to_string(), "2*a^2 - 1/2*b - 3");
    }

    #[test]
    fn proportionality() {
        let a = p("a");
        let b = p("b");
        let x = a.sub(&b);
        let y = b.sub(&a).scale(&int(3));
        assert_eq!(y.proportional_to(&x), Some(int(-3)));
        assert_eq!(a.proportional_to(&b), None);
    }
}
