//! The coefficient scheme for the pair relations and its formal check.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactfield::{int, Rational};

/// A pair relation, named by the `(a_1, a_2)` positions of its two symbols
/// `A_{i,j}` (`a_1` at `i`, `a_2` at `j`, the other letters in order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairLabel {
    /// `R(i-1, j | i, j)`: moves `a_1` from `i - 1` to `i`.
    First { i: usize, j: usize },
    /// `R(1, j | 1, j+1)`: moves `a_2` from `j` to `j + 1`.
    Second { j: usize },
}

impl PairLabel {
    /// The two positions `(a_1, a_2)` of the relation's source symbol.
    pub fn source(&self) -> (usize, usize) {
        match *self {
            PairLabel::First { i, j } => (i - 1, j),
            PairLabel::Second { j } => (1, j),
        }
    }

    pub fn target(&self) -> (usize, usize) {
        match *self {
            PairLabel::First { i, j } => (i, j),
            PairLabel::Second { j } => (1, j + 1),
        }
    }

    /// The adjacent word positions the relation transposes.
    pub fn swapped(&self) -> (usize, usize) {
        match *self {
            PairLabel::First { i, .. } => (i - 1, i),
            PairLabel::Second { j } => (j, j + 1),
        }
    }
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, t) = (self.source(), self.target());
        write!(f, "R({},{}|{},{})", s.0, s.1, t.0, t.1)
    }
}

/// `c(i-1,j|i,j) = -1` for `j - i` odd, else 0 (`1 < i < j ≤ n`);
/// `c(1,j|1,j+1) = (-1)^j (⌊n/2⌋ - ⌊j/2⌋)` (`1 < j < n`).
pub fn coeff_scheme(n: usize) -> BTreeMap<PairLabel, Rational> {
    let mut out = BTreeMap::new();
    for i in 2..=n {
        for j in i + 1..=n {
            let c = if (j - i) % 2 == 1 { int(-1) } else { Rational::zero() };
            out.insert(PairLabel::First { i, j }, c);
        }
    }
    for j in 2..n {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.insert(PairLabel::Second { j }, int(sign * ((n / 2) as i64 - (j / 2) as i64)));
    }
    out
}

/// Formal sum of the shuffle relation and the weighted pair relations over
/// the free module on the `A_{i,j}`.
pub fn formal_sum(n: usize) -> BTreeMap<(usize, usize), Rational> {
    let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            *acc.entry((i, j)).or_insert_with(Rational::zero) += Rational::one();
        }
    }
    for (label, c) in coeff_scheme(n) {
        for key in [label.source(), label.target()] {
            *acc.entry(key).or_insert_with(Rational::zero) += &c;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// True iff the combination is exactly `⌊n/2⌋·A_{1,2}`.
pub fn cancellation_check(n: usize) -> bool {
    if n < 3 {
        return false;
    }
    let sum = formal_sum(n);
    sum.len() == 1 && sum.get(&(1, 2)) == Some(&int((n / 2) as i64))
}

/// Odd variant over `A_p` (`a_1` at `p`): the shuffle relation minus the
/// relations `R_p` (`A_p + A_{p+1}`) for even `p` must leave exactly `A_1`.
pub fn cancellation_check_odd(n: usize) -> bool {
    if n < 3 || n % 2 == 0 {
        return false;
    }
    let mut acc: BTreeMap<usize, i64> = (1..=n).map(|p| (p, 1)).collect();
    for p in (2..n).step_by(2) {
        *acc.get_mut(&p).unwrap() -= 1;
        *acc.get_mut(&(p + 1)).unwrap() -= 1;
    }
    acc.retain(|_, c| *c != 0);
    acc.len() == 1 && acc.get(&1) == Some(&1)
}
