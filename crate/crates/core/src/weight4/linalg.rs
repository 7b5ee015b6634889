//! Sparse reduced row echelon form over the rationals. Each row carries an
//! exact combination that is transformed alongside it.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactfield::Rational;
use crate::symbols::LinComb;

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub coeffs: BTreeMap<usize, Rational>,
    pub lift: LinComb,
}

impl Row {
    fn scale(&mut self, k: &Rational) {
        for v in self.coeffs.values_mut() {
            *v *= k;
        }
        self.lift = self.lift.scale(k);
    }

    /// `self += k·other`
    fn add_scaled(&mut self, k: &Rational, other: &Row) {
        for (c, v) in &other.coeffs {
            let e = self.coeffs.entry(*c).or_insert_with(Rational::zero);
            *e += k * v;
            if e.is_zero() {
                self.coeffs.remove(c);
            }
        }
        self.lift.add_assign_scaled(k, &other.lift);
    }
}

/// Reduces `rows` with columns eliminated in increasing index order, so low
/// indices become pivots first. Returns `(pivot column, row)` pairs; zero
/// rows are dropped.
pub fn rref(mut rows: Vec<Row>) -> Vec<(usize, Row)> {
    rows.retain(|r| !r.coeffs.is_empty());
    let mut pivots: Vec<(usize, Row)> = Vec::new();
    loop {
        // the lowest column present in any remaining row
        let Some(col) = rows.iter().filter_map(|r| r.coeffs.keys().next().copied()).min() else {
            break;
        };
        let pick = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.coeffs.contains_key(&col))
            .min_by_key(|(_, r)| r.coeffs.len())
            .map(|(k, _)| k)
            .unwrap();
        let mut p = rows.swap_remove(pick);
        let inv = Rational::one() / &p.coeffs[&col];
        p.scale(&inv);
        for r in rows.iter_mut().chain(pivots.iter_mut().map(|(_, r)| r)) {
            if let Some(v) = r.coeffs.get(&col).cloned() {
                r.add_scaled(&-v, &p);
            }
        }
        rows.retain(|r| !r.coeffs.is_empty());
        pivots.push((col, p));
    }
    pivots.sort_by_key(|(c, _)| *c);
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::int;

    fn row(entries: &[(usize, i64)]) -> Row {
        Row {
            coeffs: entries.iter().map(|&(c, v)| (c, int(v))).collect(),
            lift: LinComb::new(),
        }
    }

    #[test]
    fn small_system() {
        // x0 + x1 = 0, x0 - x1 + x2 = 0  →  x0 = -x2/2, x1 = x2/2
        let out = rref(vec![row(&[(0, 1), (1, 1)]), row(&[(0, 1), (1, -1), (2, 1)])]);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].0, 0);
        assert_eq!(out[0].1.coeffs[&2], Rational::new(1.into(), 2.into()));
        assert!(!out[0].1.coeffs.contains_key(&1));
        assert_eq!(out[1].1.coeffs[&2], Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn dependent_rows_vanish() {
        let out = rref(vec![row(&[(0, 1), (1, 2)]), row(&[(0, 2), (1, 4)]), row(&[])]);
        assert_eq!(out.len(), 1);
    }
}
