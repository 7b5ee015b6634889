//! The lowered marker swap `D`, the transposition relation built from three
//! of them, and the shuffle relations that seed the reduction.

use num_traits::One;

use crate::calculus::{build_b_terms, collapse_closed, path_step_exact, pull_repeat_exact, shuffle_sum, swap_marker};
use crate::error::{Error, Result};
use crate::exactfield::{ProjPoint, Rational};
use crate::symbols::{Identity, Layer, LinComb, Symbol};

/// `D(t, i)`: the marker-swap remainder `B(t, i)` with the leading run of
/// `y = a_i` pulled off every term and the base moved to `y`. Every single
/// symbol of the result carries `y` at least twice (counting the base), so
/// it has at most `n - 2` variables. In the exact layer product terms are
/// kept; in the quotient layer they are dropped.
pub fn lowered_marker_swap(t: &Symbol, i: usize, layer: Layer) -> Result<LinComb> {
    let terms = build_b_terms(t, i)?;
    let y = t.word()[i - 1].clone();
    let mut out = LinComb::new();
    for (sign, a, _) in terms {
        let collapsed = match layer {
            Layer::Exact => pull_repeat_exact(&a, &y),
            Layer::Quotient => collapse_closed(&a, &y),
        };
        for (factors, c) in collapsed.iter() {
            let k = &sign * c;
            match factors {
                [s] if s.is_zero() => {}
                [s] => {
                    let stepped = path_step_exact(s, &y)?;
                    let stepped = match layer {
                        Layer::Exact => stepped,
                        Layer::Quotient => stepped.drop_products(),
                    };
                    out.add_assign_scaled(&k, &stepped);
                }
                _ if layer == Layer::Exact => out.add_term(k, factors.to_vec()),
                _ => {}
            }
        }
    }
    Ok(out.drop_zero_symbols())
}

fn identity(expr: LinComb, layer: Layer, steps: Vec<String>) -> Identity {
    Identity {
        expr,
        layer,
        derivation: steps,
    }
}

fn d_steps(i: usize, y: &ProjPoint) -> Vec<String> {
    vec![format!("marker-swap(i={i})"), format!("collapse(y={y})"), format!("path-step(y={y})")]
}

/// `t + swap_marker(t, i) - D(t, i) ≡ 0`.
pub fn lowered_swap_identity(t: &Symbol, i: usize, layer: Layer) -> Result<Identity> {
    let d = lowered_marker_swap(t, i, layer)?;
    let mut expr = LinComb::from_symbol(t.clone());
    expr.add_symbol(Rational::one(), swap_marker(t, i)?);
    Ok(identity(expr.sub(&d).drop_zero_symbols(), layer, d_steps(i, &t.word()[i - 1])))
}

/// `s` with the letters at positions `i` and `j` exchanged.
pub fn swap_letters(s: &Symbol, i: usize, j: usize) -> Symbol {
    let mut word = s.word().to_vec();
    word.swap(i - 1, j - 1);
    s.with_word(word)
}

/// `s + swap_letters(s, i, j) - [D(s, i) - D(s', j) + D(s'', i)] ≡ 0` with
/// `s' = swap_marker(s, i)` and `s'' = swap_marker(s', j)`: three marker
/// swaps through the markers `x`, `a_i`, `a_j` in turn.
pub fn transposition(s: &Symbol, i: usize, j: usize, layer: Layer) -> Result<Identity> {
    if !(1 <= i && i < j && j <= s.weight()) {
        return Err(Error::Precondition(format!("positions ({i}, {j}) invalid for {s}")));
    }
    let s1 = swap_marker(s, i)?;
    let s2 = swap_marker(&s1, j)?;
    let rhs = lowered_marker_swap(s, i, layer)?
        .sub(&lowered_marker_swap(&s1, j, layer)?)
        .add(&lowered_marker_swap(&s2, i, layer)?);
    let mut expr = LinComb::from_symbol(s.clone());
    expr.add_symbol(Rational::one(), swap_letters(s, i, j));
    let mut steps = vec![format!("transposition(i={i}, j={j})")];
    steps.extend(d_steps(i, &s.word()[i - 1]));
    steps.extend(d_steps(j, &s1.word()[j - 1]));
    steps.extend(d_steps(i, &s2.word()[i - 1]));
    Ok(identity(expr.sub(&rhs).drop_zero_symbols(), layer, steps))
}

/// `Σ_σ [a0|σ(a_1..a_n)|e] - [a0|a_1,..,a_k|e]·[a0|a_k+1..a_n|e] ≡ 0`,
/// the shuffles keeping the first `k` letters and the rest in order. The
/// quotient layer drops the product.
pub fn split_shuffle(s: &Symbol, k: usize, layer: Layer) -> Result<Identity> {
    if k == 0 || k >= s.weight() {
        return Err(Error::Precondition(format!("split {k} invalid for weight {}", s.weight())));
    }
    let (u, v) = s.word().split_at(k);
    let mut expr = shuffle_sum(s, u, v);
    if layer == Layer::Exact {
        expr.add_term(-Rational::one(), vec![s.with_word(u.to_vec()), s.with_word(v.to_vec())]);
    }
    Ok(identity(expr, layer, vec![format!("shuffle(split={k})")]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::parse_symbol;

    fn sym(t: &str) -> Symbol {
        parse_symbol(t).unwrap()
    }

    #[test]
    fn lowered_terms_have_few_variables() {
        let s = sym("H(a0 | a1, a2, a3 // x | a4)");
        for i in 1..=3 {
            let d = lowered_marker_swap(&s, i, Layer::Quotient).unwrap();
            assert!(!d.is_empty());
            assert!(d.max_variable_count().unwrap() <= 1, "{d}");
            assert!(d.products().is_empty());
        }
    }

    #[test]
    fn quotient_is_exact_without_products() {
        let s = sym("H(a0 | a1, a2, a3 // x | a4)");
        for i in 1..=3 {
            let e = lowered_marker_swap(&s, i, Layer::Exact).unwrap();
            let q = lowered_marker_swap(&s, i, Layer::Quotient).unwrap();
            assert_eq!(e.drop_products(), q);
        }
    }

    #[test]
    fn transposition_swaps_entries() {
        let s = sym("H(a0 | a1, a2, a3 // x | a4)");
        let id = transposition(&s, 1, 2, Layer::Quotient).unwrap();
        assert_eq!(id.expr.coeff_of(&[sym("H(a0 | a2, a1, a3 // x | a4)")]), Rational::one());
        assert_eq!(id.expr.coeff_of(&[s.clone()]), Rational::one());
        // everything else is lowered
        let rest = id.expr.filter(|f, _| f[0] != s && f[0] != swap_letters(&s, 1, 2));
        assert!(rest.max_variable_count().unwrap() <= 1);
    }

    #[test]
    fn split_shuffle_counts() {
        let s = sym("H(a0 | a1, a2, a3, a4 | e)");
        assert_eq!(split_shuffle(&s, 2, Layer::Quotient).unwrap().expr.len(), 6);
        assert_eq!(split_shuffle(&s, 2, Layer::Exact).unwrap().expr.len(), 7);
        assert_eq!(split_shuffle(&s, 1, Layer::Quotient).unwrap().expr.len(), 4);
    }
}
