//! Cross-ratio words over five points and the reference table of `[x, y]`
//! terms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactfield::RatFun;

pub const LETTERS: [char; 5] = ['a', 'b', 'c', 'd', 'e'];

/// `w1w2w3 = (w1-w3)/(w2-w3)`, `w1w2w3w4 = ((w1-w3)(w2-w4))/((w1-w4)(w2-w3))`.
pub fn word_value(word: &str, points: &BTreeMap<char, RatFun>) -> Result<RatFun> {
    let p: Vec<&RatFun> = word
        .chars()
        .map(|ch| points.get(&ch).ok_or_else(|| Error::Precondition(format!("unknown letter {ch:?} in {word:?}"))))
        .collect::<Result<_>>()?;
    for (k, ch) in word.chars().enumerate() {
        if word.chars().skip(k + 1).any(|c| c == ch) {
            return Err(Error::Precondition(format!("repeated letter in {word:?}")));
        }
    }
    match p.as_slice() {
        [a, b, c] => a.sub(c).div(&b.sub(c)),
        [a, b, c, d] => a.sub(c).mul(&b.sub(d)).div(&a.sub(d).mul(&b.sub(c))),
        _ => Err(Error::Precondition(format!("{word:?} must have 3 or 4 letters"))),
    }
}

/// The points `a..e` as indeterminates.
pub fn generic_letters() -> BTreeMap<char, RatFun> {
    LETTERS.iter().map(|&c| (c, RatFun::var(&c.to_string()))).collect()
}

fn arrangements(k: usize) -> Vec<String> {
    if k == 0 {
        return vec![String::new()];
    }
    let mut out = Vec::new();
    for w in arrangements(k - 1) {
        for c in LETTERS {
            if !w.contains(c) {
                out.push(format!("{w}{c}"));
            }
        }
    }
    out
}

/// Every 3- and 4-letter word of distinct letters with its value.
pub fn cross_ratio_words(points: &BTreeMap<char, RatFun>) -> Result<BTreeMap<String, RatFun>> {
    arrangements(3)
        .into_iter()
        .chain(arrangements(4))
        .map(|w| word_value(&w, points).map(|v| (w, v)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TableEntry {
    pub coeff: i64,
    pub x: String,
    pub y: String,
}

pub const PHI_TABLE_TEXT: &str = include_str!("../../data/phi_table.txt");

/// The reference terms of `2φ(a,b,c,d,e)`, each `coeff·[x, y]_{3,1}`.
pub fn phi_table() -> Vec<TableEntry> {
    PHI_TABLE_TEXT
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            TableEntry {
                coeff: f[0].parse().expect("table coefficient"),
                x: f[1].to_string(),
                y: f[2].to_string(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    fn at(vals: &[(char, i64)]) -> BTreeMap<char, RatFun> {
        vals.iter().map(|&(c, v)| (c, RatFun::int(v))).collect()
    }

    #[test]
    fn small_words() {
        let p = at(&[('a', 0), ('b', 1), ('c', 3)]);
        assert_eq!(word_value("abc", &p).unwrap(), RatFun::constant(rat(3, 2)));
        let p = at(&[('a', 0), ('b', 1), ('c', 2), ('d', 3)]);
        assert_eq!(word_value("abcd", &p).unwrap(), RatFun::constant(rat(4, 3)));
        assert!(word_value("aabc", &p).is_err());
        assert!(word_value("ab", &p).is_err());
    }

    #[test]
    fn all_words() {
        let w = cross_ratio_words(&generic_letters()).unwrap();
        assert_eq!(w.len(), 60 + 120);
    }

    #[test]
    fn table_shape() {
        let t = phi_table();
        assert_eq!(t.len(), 42);
        let twos: Vec<_> = t.iter().filter(|e| e.coeff.abs() == 2).collect();
        assert_eq!(twos.len(), 2);
        assert!(t.iter().all(|e| e.coeff.abs() <= 2 && e.coeff != 0));
        let letters = generic_letters();
        for e in &t {
            word_value(&e.x, &letters).unwrap();
            word_value(&e.y, &letters).unwrap();
        }
    }
}
