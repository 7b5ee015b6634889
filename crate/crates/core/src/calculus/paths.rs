//! Path composition (Chen), reversal, the antipode, and the two-term path
//! step built from them.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactfield::{ProjPoint, RatFun, Rational};
use crate::symbols::{Identity, LinComb, Symbol};

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn piece(frame: &Symbol, base: &ProjPoint, word: &[ProjPoint], end: &ProjPoint) -> Option<Symbol> {
    (!word.is_empty()).then(|| Symbol::unchecked(base.clone(), word.to_vec(), end.clone(), frame.marker().clone()))
}

/// Adds `c · Π pieces` where empty words contribute the factor 1.
fn add_product(out: &mut LinComb, c: Rational, pieces: impl IntoIterator<Item = Option<Symbol>>) {
    out.add_term(c, pieces.into_iter().flatten().collect());
}

fn reversed(w: &[ProjPoint]) -> Vec<ProjPoint> {
    w.iter().rev().cloned().collect()
}

/// `Σ_{k=0..n} [a|w_1..k|m]·[m|w_k+1..n|b]`, the value along `a → m → b`.
pub fn chen_expansion(s: &Symbol, m: &ProjPoint) -> LinComb {
    let w = s.word();
    let mut out = LinComb::new();
    for k in 0..=w.len() {
        add_product(
            &mut out,
            Rational::one(),
            [piece(s, s.base(), &w[..k], m), piece(s, m, &w[k..], s.end())],
        );
    }
    out
}

/// `[a|w|b] - Σ_k [a|w_1..k|m]·[m|w_k+1..n|b] ≡ 0`. Pieces may diverge; they
/// are kept and evaluated with an endpoint deformation.
pub fn path_split_chen(s: &Symbol, m: &ProjPoint) -> Identity {
    let expr = LinComb::from_symbol(s.clone()).sub(&chen_expansion(s, m));
    Identity::exact(expr, format!("chen(m={m})"))
}

/// `[a|w|b] - (-1)^n [b|rev w|a] ≡ 0`.
pub fn reverse_path(s: &Symbol) -> Identity {
    let mut expr = LinComb::from_symbol(s.clone());
    let r = Symbol::unchecked(s.end().clone(), reversed(s.word()), s.base().clone(), s.marker().clone());
    expr.add_symbol(-sign(s.weight()), r);
    Identity::exact(expr, "reversal")
}

/// `Σ_{k=0..n} (-1)^k [a|rev(w_1..k)|b]·[a|w_k+1..n|b] ≡ 0`.
pub fn antipode_identity(s: &Symbol) -> Identity {
    let w = s.word();
    let mut expr = LinComb::new();
    for k in 0..=w.len() {
        add_product(
            &mut expr,
            sign(k),
            [
                piece(s, s.base(), &reversed(&w[..k]), s.end()),
                piece(s, s.base(), &w[k..], s.end()),
            ],
        );
    }
    Identity::exact(expr, "antipode")
}

/// Rewrites `[a0|C|e]` through the point `y`:
///
/// `[y|C|e] - [y|C|a0] + Σ_{0<k<n} [a0|C_1..k|y]·[y|C_k+1..n|e]
///  - Σ_{0<k<n} (-1)^k [y|rev C_1..k|a0]·[y|C_k+1..n|a0]`
///
/// (Chen at `y`, then the antipode on the piece ending at `y`). Requires
/// `C_1 ≠ y`.
pub fn path_step_exact(s: &Symbol, y: &ProjPoint) -> Result<LinComb> {
    let w = s.word();
    if w[0] == *y {
        return Err(Error::divergent(s, format!("first letter equals the path point {y}")));
    }
    let (a0, e) = (s.base(), s.end());
    let n = w.len();
    let mut out = LinComb::new();
    out.add_symbol(Rational::one(), Symbol::unchecked(y.clone(), w.to_vec(), e.clone(), s.marker().clone()));
    out.add_symbol(-Rational::one(), Symbol::unchecked(y.clone(), w.to_vec(), a0.clone(), s.marker().clone()));
    for k in 1..n {
        add_product(&mut out, Rational::one(), [piece(s, a0, &w[..k], y), piece(s, y, &w[k..], e)]);
        add_product(
            &mut out,
            -sign(k),
            [piece(s, y, &reversed(&w[..k]), a0), piece(s, y, &w[k..], a0)],
        );
    }
    Ok(out)
}

/// Exact form of the path step: `s - path_step_exact(s, y) ≡ 0`.
pub fn path_step_identity(s: &Symbol, y: &ProjPoint) -> Result<Identity> {
    let expr = LinComb::from_symbol(s.clone()).sub(&path_step_exact(s, y)?);
    Ok(Identity {
        expr,
        layer: crate::symbols::Layer::Exact,
        derivation: vec![format!("chen(m={y})"), "reversal".into(), "antipode".into()],
    })
}

/// `[a0|w|e] - [m|w|e] + [m|w|a0] ≡ 0` modulo products.
pub fn path_two_term(s: &Symbol, m: &ProjPoint) -> Result<Identity> {
    Ok(path_step_identity(s, m)?.to_quotient())
}

/// The multiplicative value of a weight-one symbol: `[a|z//x|b]` is the
/// logarithm of `((b-z)/(a-z)) · ((a-x)/(b-x))`; factors at infinity drop out.
pub fn weight1_value(s: &Symbol) -> Result<RatFun> {
    if s.weight() != 1 {
        return Err(Error::Precondition(format!("{s} has weight {}", s.weight())));
    }
    if s.has_zero_form() || s.base() == s.end() {
        return Ok(RatFun::one());
    }
    if let Some(reason) = s.divergence() {
        return Err(Error::divergent(s, reason));
    }
    let z = &s.word()[0];
    let x = s.marker();
    // f(t) = (t - z)/(t - x); value f(b)/f(a). At t = ∞ (with z, x finite,
    // guaranteed by convergence) f = 1.
    let f = |t: &ProjPoint| -> Result<RatFun> {
        let Some(t) = t.finite() else {
            return Ok(RatFun::one());
        };
        let num = z.finite().map(|z| t.sub(z)).unwrap_or_else(RatFun::one);
        let den = x.finite().map(|x| t.sub(x)).unwrap_or_else(RatFun::one);
        num.div(&den)
    };
    f(s.end())?.div(&f(s.base())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{int, rat};
    use crate::symbols::parse_symbol;

    fn sym(t: &str) -> Symbol {
        parse_symbol(t).unwrap()
    }

    #[test]
    fn weight_one_chen_is_additivity() {
        let id = path_split_chen(&sym("H(a | z | b)"), &ProjPoint::var("m"));
        let mut expect = LinComb::from_symbol(sym("H(a | z | b)"));
        expect.add_symbol(int(-1), sym("H(a | z | m)"));
        expect.add_symbol(int(-1), sym("H(m | z | b)"));
        assert_eq!(id.expr, expect);
    }

    #[test]
    fn chen_ends_are_the_only_singles() {
        let id = path_split_chen(&sym("H(a | u, v, w | b)"), &ProjPoint::var("m"));
        assert_eq!(id.expr.drop_products().len(), 3);
        assert_eq!(id.expr.len(), 5);
    }

    #[test]
    fn reversal() {
        let id = reverse_path(&sym("H(a | z | b)"));
        assert_eq!(id.expr.len(), 2);
        assert_eq!(id.expr.coeff_of(&[sym("H(b | z | a)")]), int(1));
        let id = reverse_path(&sym("H(a | u, v | b)"));
        assert_eq!(id.expr.coeff_of(&[sym("H(b | v, u | a)")]), int(-1));
        // reversing twice returns the start
        let r = sym("H(b | v, u | a)");
        let back = reverse_path(&r);
        assert_eq!(back.expr.coeff_of(&[sym("H(a | u, v | b)")]), int(-1));
    }

    #[test]
    fn antipode_low_weight() {
        assert!(antipode_identity(&sym("H(a | z | b)")).is_trivial());
        let id = antipode_identity(&sym("H(a | u, v | b)"));
        let sh = super::super::shuffle::shuffle_identity(&sym("H(a | u | b)"), &sym("H(a | v | b)")).unwrap();
        assert_eq!(id.expr, sh.expr.neg());
    }

    #[test]
    fn two_term_step() {
        let id = path_two_term(&sym("H(a0 | u, m, v | e)"), &ProjPoint::var("m")).unwrap();
        let mut expect = LinComb::from_symbol(sym("H(a0 | u, m, v | e)"));
        expect.add_symbol(int(-1), sym("H(m | u, m, v | e)"));
        expect.add_symbol(int(1), sym("H(m | u, m, v | a0)"));
        assert_eq!(id.expr, expect);
        assert!(path_two_term(&sym("H(a0 | m, v | e)"), &ProjPoint::var("m")).is_err());
    }

    #[test]
    fn weight_one_values() {
        let v = weight1_value(&sym("H(0 | 2 | 1)")).unwrap();
        assert_eq!(v, RatFun::constant(rat(1, 2)));
        assert_eq!(weight1_value(&sym("H(a | z | a)")).unwrap(), RatFun::one());
        let ab = weight1_value(&sym("H(a | z | b)")).unwrap();
        let bc = weight1_value(&sym("H(b | z | c)")).unwrap();
        let ac = weight1_value(&sym("H(a | z | c)")).unwrap();
        assert_eq!(ab.mul(&bc), ac);
    }
}
