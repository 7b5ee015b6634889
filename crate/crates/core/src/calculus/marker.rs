//! Moving the marker: `ω(a, x) = ω(a, y) - ω(x, y)` expanded multilinearly,
//! and the marker swap that trades the marker for one of the letters.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactfield::{ProjPoint, Rational};
use crate::symbols::{Identity, LinComb, Symbol};

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Subsets of `0..n` as bitmasks, in increasing order.
fn subsets(n: usize) -> impl Iterator<Item = u64> {
    assert!(n < 64);
    0..(1u64 << n)
}

fn check_position(s: &Symbol, i: usize) -> Result<()> {
    if i == 0 || i > s.weight() {
        return Err(Error::Precondition(format!(
            "position {i} outside 1..={} for {s}",
            s.weight()
        )));
    }
    Ok(())
}

/// Expansion of `s` in the marker `y`:
/// `s - Σ_S (-1)^|S| [letters at S replaced by x // y] ≡ 0`, with terms that
/// carry a vanishing form omitted.
pub fn marker_change(s: &Symbol, y: &ProjPoint) -> Result<Identity> {
    let x = s.marker();
    let n = s.weight();
    let mut expr = LinComb::from_symbol(s.clone());
    for mask in subsets(n) {
        let word: Vec<ProjPoint> = s
            .word()
            .iter()
            .enumerate()
            .map(|(k, a)| if mask >> k & 1 == 1 { x.clone() } else { a.clone() })
            .collect();
        let t = Symbol::unchecked(s.base().clone(), word, s.end().clone(), y.clone());
        if t.has_zero_form() {
            continue;
        }
        if let Some(reason) = t.divergence() {
            return Err(Error::divergent(&t, reason));
        }
        expr.add_symbol(-sign(mask.count_ones() as usize), t);
    }
    Ok(Identity::exact(expr, format!("marker-change(y={y})")))
}

/// `s` with every position of `set` (1-based) holding the letter at `i`.
pub fn build_a(s: &Symbol, i: usize, set: &[usize]) -> Result<Symbol> {
    check_position(s, i)?;
    if !set.contains(&i) {
        return Err(Error::Precondition(format!("position {i} not in {set:?}")));
    }
    let ai = s.word()[i - 1].clone();
    let mut word = s.word().to_vec();
    for &j in set {
        check_position(s, j)?;
        word[j - 1] = ai.clone();
    }
    Ok(s.with_word(word))
}

/// `Σ_{I ∋ i, |I| ≥ 2} (-1)^|I| A(s, i, I)`, subsets in increasing bitmask
/// order.
pub fn build_b(s: &Symbol, i: usize) -> Result<LinComb> {
    Ok(build_b_terms(s, i)?
        .into_iter()
        .fold(LinComb::new(), |mut acc, (c, a, _)| {
            acc.add_symbol(c, a);
            acc
        }))
}

/// The individual `(sign, A(s,i,I), I)` of [`build_b`].
pub fn build_b_terms(s: &Symbol, i: usize) -> Result<Vec<(Rational, Symbol, Vec<usize>)>> {
    check_position(s, i)?;
    let n = s.weight();
    let mut out = Vec::new();
    for mask in subsets(n) {
        if mask >> (i - 1) & 1 == 0 || mask.count_ones() < 2 {
            continue;
        }
        let set: Vec<usize> = (1..=n).filter(|j| mask >> (j - 1) & 1 == 1).collect();
        out.push((sign(set.len()), build_a(s, i, &set)?, set));
    }
    Ok(out)
}

/// `s` with the marker written at position `i` and the letter there taking
/// over as marker.
pub fn swap_marker(s: &Symbol, i: usize) -> Result<Symbol> {
    check_position(s, i)?;
    let mut word = s.word().to_vec();
    let ai = std::mem::replace(&mut word[i - 1], s.marker().clone());
    Ok(Symbol::unchecked(s.base().clone(), word, s.end().clone(), ai))
}

/// `s + swap_marker(s, i) - B(s, i) ≡ 0` as functions.
pub fn marker_swap(s: &Symbol, i: usize) -> Result<Identity> {
    check_position(s, i)?;
    let swapped = swap_marker(s, i)?;
    for t in [s, &swapped] {
        if let Some(reason) = t.divergence() {
            return Err(Error::divergent(t, reason));
        }
    }
    let mut expr = LinComb::from_symbol(s.clone());
    expr.add_symbol(Rational::one(), swapped);
    let expr = expr.sub(&build_b(s, i)?);
    Ok(Identity::exact(expr, format!("marker-swap(i={i})")))
}
