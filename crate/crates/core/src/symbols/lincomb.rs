use std::collections::BTreeMap;
use std::fmt;

use indexmap::IndexMap;
use num_traits::{One, Signed, Zero};

use super::symbol::Symbol;
use crate::error::Result;
use crate::exactfield::{RatFun, Rational};

/// A rational multiple of a product of symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<Symbol>,
}

impl Term {
    pub fn weight(&self) -> usize {
        self.factors.iter().map(Symbol::weight).sum()
    }

    pub fn is_product(&self) -> bool {
        self.factors.len() > 1
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for s in &self.factors {
            write!(f, "*{s}")?;
        }
        Ok(())
    }
}

/// Formal sum of terms keyed by their (sorted) factor lists.
#[derive(Clone, Debug, Default)]
pub struct LinComb {
    terms: IndexMap<Vec<Symbol>, Rational>,
}

impl LinComb {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_symbol(s: Symbol) -> Self {
        let mut l = Self::new();
        l.add_term(Rational::one(), vec![s]);
        l
    }

    pub fn add_term(&mut self, coeff: Rational, mut factors: Vec<Symbol>) {
        if coeff.is_zero() {
            return;
        }
        factors.sort();
        match self.terms.get_mut(&factors) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.shift_remove(&factors);
                }
            }
            None => {
                self.terms.insert(factors, coeff);
            }
        }
    }

    pub fn add_symbol(&mut self, coeff: Rational, s: Symbol) {
        self.add_term(coeff, vec![s]);
    }

    pub fn add_assign_scaled(&mut self, k: &Rational, other: &LinComb) {
        for (f, c) in &other.terms {
            self.add_term(k * c, f.clone());
        }
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_assign_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_assign_scaled(&-Rational::one(), other);
        out
    }

    pub fn scale(&self, k: &Rational) -> LinComb {
        let mut out = LinComb::new();
        out.add_assign_scaled(k, self);
        out
    }

    pub fn neg(&self) -> LinComb {
        self.scale(&-Rational::one())
    }

    /// Product, multiplying factor lists.
    pub fn mul(&self, other: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (f, c) in &self.terms {
            for (g, d) in &other.terms {
                let mut h = f.clone();
                h.extend(g.iter().cloned());
                out.add_term(c * d, h);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, factors: &[Symbol]) -> Rational {
        let mut f = factors.to_vec();
        f.sort();
        self.terms.get(&f).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Symbol], &Rational)> {
        self.terms.iter().map(|(f, c)| (f.as_slice(), c))
    }

    pub fn terms(&self) -> Vec<Term> {
        self.iter()
            .map(|(f, c)| Term {
                coeff: c.clone(),
                factors: f.to_vec(),
            })
            .collect()
    }

    /// Distinct symbols occurring anywhere, in first-seen order.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut seen = indexmap::IndexSet::new();
        for f in self.terms.keys() {
            for s in f {
                seen.insert(s.clone());
            }
        }
        seen.into_iter().collect()
    }

    pub fn filter(&self, mut keep: impl FnMut(&[Symbol], &Rational) -> bool) -> LinComb {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(f, c)| keep(f, c))
                .map(|(f, c)| (f.clone(), c.clone()))
                .collect(),
        }
    }

    /// The quotient-layer shadow: product terms removed.
    pub fn drop_products(&self) -> LinComb {
        self.filter(|f, _| f.len() <= 1)
    }

    pub fn products(&self) -> LinComb {
        self.filter(|f, _| f.len() > 1)
    }

    /// Removes terms with an identically vanishing factor.
    pub fn drop_zero_symbols(&self) -> LinComb {
        self.filter(|f, _| !f.iter().any(Symbol::is_zero))
    }

    pub fn has_divergent(&self) -> bool {
        self.terms.keys().flatten().any(Symbol::is_divergent)
    }

    /// Largest variable count over single-symbol terms.
    pub fn max_variable_count(&self) -> Result<usize> {
        let mut m = 0;
        for (f, _) in self.iter() {
            if let [s] = f {
                m = m.max(s.variable_count()?);
            }
        }
        Ok(m)
    }

    /// Linear extension of a map on symbols; products map factor-wise.
    pub fn map_symbols(&self, mut g: impl FnMut(&Symbol) -> Result<LinComb>) -> Result<LinComb> {
        let mut out = LinComb::new();
        for (f, c) in &self.terms {
            let mut acc = LinComb::new();
            acc.add_term(c.clone(), Vec::new());
            for s in f {
                acc = acc.mul(&g(s)?);
            }
            out.add_assign_scaled(&Rational::one(), &acc);
        }
        Ok(out)
    }

    pub fn substitute(&self, values: &BTreeMap<String, RatFun>) -> Result<LinComb> {
        self.map_symbols(|s| Ok(LinComb::from_symbol(s.substitute(values)?)))
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.symbols().iter().flat_map(|s| s.variables()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Terms in a presentation order independent of construction history.
    pub fn sorted_terms(&self) -> Vec<(Vec<String>, Rational)> {
        let mut out: Vec<(Vec<String>, Rational)> = self
            .iter()
            .map(|(f, c)| {
                let mut names: Vec<String> = f.iter().map(|s| s.to_string()).collect();
                names.sort();
                (names, c.clone())
            })
            .collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }
}

impl PartialEq for LinComb {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.terms.iter().all(|(f, c)| other.terms.get(f) == Some(c))
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (names, c)) in terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || names.is_empty() {
                parts.push(mag.to_string());
            }
            parts.extend(names.iter().cloned());
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{int, parse_point};

    fn s(text: &str) -> Symbol {
        super::super::text::parse_symbol(text).unwrap()
    }

    #[test]
    fn cancellation_and_combination() {
        let l = LinComb::from_symbol(s("H(a | b | c)"));
        assert!(l.add(&l.scale(&int(-1))).is_zero());
        let two = l.add(&l);
        assert_eq!(two.coeff_of(&[s("H(a | b | c)")]), int(2));
    }

    #[test]
    fn products_are_order_insensitive() {
        let (x, y) = (s("H(a | b | c)"), s("H(a | d | c)"));
        let mut l = LinComb::new();
        l.add_term(int(1), vec![x.clone(), y.clone()]);
        l.add_term(int(1), vec![y, x]);
        assert_eq!(l.len(), 1);
        assert!(l.drop_products().is_zero());
    }

    #[test]
    fn substitution() {
        let l = LinComb::from_symbol(s("H(a | b | c)"));
        let vals: BTreeMap<String, RatFun> = [("a", 0), ("b", 2), ("c", 1)]
            .iter()
            .map(|(k, v)| (k.to_string(), RatFun::int(*v)))
            .collect();
        let got = l.substitute(&vals).unwrap();
        assert_eq!(got, LinComb::from_symbol(s("H(0 | 2 | 1)")));
        let _ = parse_point("inf").unwrap();
    }

    #[test]
    fn display() {
        let mut l = LinComb::new();
        l.add_symbol(int(-2), s("H(0 | x | 1)"));
        l.add_term(int(1), vec![s("H(0 | y | 1)"), s("H(0 | x | 1)")]);
        assert_eq!(l.to_string(), "-2*H(0 | x | 1) + H(0 | x | 1)*H(0 | y | 1)");
    }
}
