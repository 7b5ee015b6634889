use num_traits::One;

use crate::error::{Error, Result};
use crate::exactfield::{ProjPoint, Rational};
use crate::symbols::{Identity, LinComb, Symbol};

/// All interleavings of `u` and `v` keeping the internal order of each.
pub fn shuffle_words<T: Clone>(u: &[T], v: &[T]) -> Vec<Vec<T>> {
    fn go<T: Clone>(u: &[T], v: &[T], prefix: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        match (u.split_first(), v.split_first()) {
            (None, _) => {
                let mut w = prefix.clone();
                w.extend_from_slice(v);
                out.push(w);
            }
            (_, None) => {
                let mut w = prefix.clone();
                w.extend_from_slice(u);
                out.push(w);
            }
            (Some((a, ur)), Some((b, vr))) => {
                prefix.push(a.clone());
                go(ur, v, prefix, out);
                prefix.pop();
                prefix.push(b.clone());
                go(u, vr, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(u, v, &mut Vec::new(), &mut out);
    out
}

/// `Σ` over interleavings of `u`, `v`, in the frame (base, end, marker) of
/// `frame`. With `v` empty this is just `[u]`.
pub fn shuffle_sum(frame: &Symbol, u: &[ProjPoint], v: &[ProjPoint]) -> LinComb {
    let mut out = LinComb::new();
    for w in shuffle_words(u, v) {
        out.add_symbol(Rational::one(), frame.with_word(w));
    }
    out
}

fn same_frame(s1: &Symbol, s2: &Symbol) -> bool {
    s1.base() == s2.base() && s1.end() == s2.end() && s1.marker() == s2.marker()
}

/// `s1·s2 - Σ shuffles ≡ 0`.
pub fn shuffle_identity(s1: &Symbol, s2: &Symbol) -> Result<Identity> {
    if !same_frame(s1, s2) {
        return Err(Error::FrameMismatch(format!("{s1} and {s2}")));
    }
    let mut expr = LinComb::new();
    expr.add_term(Rational::one(), vec![s1.clone(), s2.clone()]);
    let sum = shuffle_sum(s1, s1.word(), s2.word());
    Ok(Identity::exact(expr.sub(&sum), "shuffle"))
}
