//! Removing a leading run `y^s` from a word.

use num_traits::One;

use crate::exactfield::{ProjPoint, Rational};
use crate::symbols::{LinComb, Symbol};

/// Length of the maximal leading run of letters equal to `y`.
pub fn leading_run(s: &Symbol, y: &ProjPoint) -> usize {
    s.word().iter().take_while(|a| *a == y).count()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (pos, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[pos + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Closed form modulo products: `[y^s v] ≡ (-1)^s Σ_J C_J` over
/// `J ⊆ {2..n}`, `|J| = s`, where `C_J` carries `y` at `J` and `v` in order
/// elsewhere. A word not starting with `y` comes back unchanged.
pub fn collapse_closed(s: &Symbol, y: &ProjPoint) -> LinComb {
    let run = leading_run(s, y);
    let n = s.weight();
    if run == 0 {
        return LinComb::from_symbol(s.clone());
    }
    if run == n {
        // pure power of one letter: a product
        return LinComb::new();
    }
    let v = &s.word()[run..];
    let sign = if run % 2 == 0 { Rational::one() } else { -Rational::one() };
    let mut out = LinComb::new();
    let positions: Vec<usize> = (2..=n).collect();
    for set in combinations(&positions, run) {
        let mut rest = v.iter();
        let word: Vec<ProjPoint> = (1..=n)
            .map(|p| {
                if set.contains(&p) {
                    y.clone()
                } else {
                    rest.next().unwrap().clone()
                }
            })
            .collect();
        out.add_symbol(sign.clone(), s.with_word(word));
    }
    out
}

/// Exact counterpart of [`collapse_closed`], carrying product terms:
/// `[y^s v] = (1/s) ([y]·[y^{s-1} v] - Σ_k [y^{s-1} v_1..v_k y v_{k+1}..])`,
/// recursing on the run length.
pub fn pull_repeat_exact(s: &Symbol, y: &ProjPoint) -> LinComb {
    let run = leading_run(s, y);
    let n = s.weight();
    if run == 0 {
        return LinComb::from_symbol(s.clone());
    }
    let y = y.clone();
    let single = s.with_word(vec![y.clone()]);
    if run == n {
        // [y^n] = [y]^n / n!
        let fact: u64 = (1..=n as u64).product();
        let mut out = LinComb::new();
        out.add_term(Rational::new(1.into(), fact.into()), vec![single; n]);
        return out;
    }
    let k = Rational::new(1.into(), (run as u64).into());
    let shorter = s.with_word(s.word()[1..].to_vec());
    let mut out = LinComb::new();
    out.add_term(k.clone(), vec![single, shorter.clone()]);
    let v = &s.word()[run..];
    let head = &s.word()[..run - 1];
    for pos in 1..=v.len() {
        let mut w = head.to_vec();
        w.extend_from_slice(&v[..pos]);
        w.push(y.clone());
        w.extend_from_slice(&v[pos..]);
        out.add_assign_scaled(&-k.clone(), &pull_repeat_exact(&s.with_word(w), &y));
    }
    out
}
