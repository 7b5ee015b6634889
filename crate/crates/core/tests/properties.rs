use std::collections::BTreeMap;

use num_complex::Complex64 as C;
use proptest::prelude::*;

use plog_core::calculus::shuffle_words;
use plog_core::exactfield::{int, Mobius, ProjPoint, RatFun};
use plog_core::symbols::doc::{lincomb_from_json, lincomb_to_json};
use plog_core::symbols::{parse_symbol, LinComb, Symbol};
use plog_core::weight4::{classify_w4, CanonicalW4, W4Kind};

/// `Σ c_ij a^i b^j` with `i, j ≤ 2`.
fn poly() -> impl Strategy<Value = RatFun> {
    prop::collection::vec(-4i64..=4, 9).prop_map(|cs| {
        let (a, b) = (RatFun::var("a"), RatFun::var("b"));
        let mut p = RatFun::zero();
        for (k, c) in cs.into_iter().enumerate() {
            p = p.add(&a.pow((k / 3) as u32).mul(&b.pow((k % 3) as u32)).scale(&int(c)));
        }
        p
    })
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| n.div(&d).ok())
}

fn constant_mobius() -> impl Strategy<Value = Mobius> {
    prop::array::uniform4(-5i64..=5).prop_filter_map("singular", |[a, b, c, d]| {
        Mobius::new(RatFun::int(a), RatFun::int(b), RatFun::int(c), RatFun::int(d)).ok()
    })
}

fn sample_point() -> BTreeMap<String, C> {
    [("a".to_string(), C::new(0.31, -0.72)), ("b".to_string(), C::new(-1.13, 0.47))].into()
}

const LETTERS: [&str; 5] = ["p", "q", "r", "s", "t"];

/// A symbol over distinct variable endpoints and letters drawn from a small pool.
fn symbol() -> impl Strategy<Value = Symbol> {
    prop::collection::vec(0usize..LETTERS.len(), 1..=4).prop_map(|idx| {
        let word = idx.iter().map(|&k| ProjPoint::var(LETTERS[k])).collect();
        Symbol::unchecked(ProjPoint::var("a"), word, ProjPoint::var("b"), ProjPoint::var("x"))
    })
}

fn lincomb() -> impl Strategy<Value = LinComb> {
    prop::collection::vec((-3i64..=3, symbol(), prop::option::of(symbol())), 0..5).prop_map(|terms| {
        let mut l = LinComb::new();
        for (c, s, t) in terms {
            let mut f = vec![s];
            f.extend(t);
            l.add_term(int(c), f);
        }
        l
    })
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in ratfun(), y in ratfun(), z in ratfun()) {
        prop_assert!(x.add(&y).equals(&y.add(&x)));
        prop_assert!(x.mul(&y).equals(&y.mul(&x)));
        prop_assert!(x.add(&y).add(&z).equals(&x.add(&y.add(&z))));
        prop_assert!(x.mul(&y).mul(&z).equals(&x.mul(&y.mul(&z))));
        prop_assert!(x.mul(&y.add(&z)).equals(&x.mul(&y).add(&x.mul(&z))));
        prop_assert!(x.sub(&x).is_zero());
        if !x.is_zero() {
            prop_assert!(x.div(&x).unwrap().equals(&RatFun::one()));
        }
    }

    #[test]
    fn evaluation_is_multiplicative(x in ratfun(), y in ratfun()) {
        let at = sample_point();
        if let (Ok(u), Ok(v), Ok(uv)) = (x.eval(&at), y.eval(&at), x.mul(&y).eval(&at)) {
            prop_assert!((uv - u * v).norm() <= 1e-12 * (1.0 + (u * v).norm()));
        }
    }

    #[test]
    fn mobius_composition(m1 in constant_mobius(), m2 in constant_mobius(), x in ratfun()) {
        let p = ProjPoint::Finite(x);
        prop_assert_eq!(m1.compose(&m2).apply(&p), m1.apply(&m2.apply(&p)));
        prop_assert_eq!(m1.inverse().apply(&m1.apply(&p)), p.clone());
        prop_assert_eq!(m1.apply(&ProjPoint::Infinity), m1.compose(&Mobius::identity()).apply(&ProjPoint::Infinity));
    }

    #[test]
    fn canonical_form_is_pgl2_invariant(s in symbol(), m in constant_mobius()) {
        let c = s.canonicalize().unwrap();
        prop_assert_eq!(c.canonicalize().unwrap(), c.clone());
        prop_assert_eq!(s.map(&m).canonicalize().unwrap(), c);
    }

    #[test]
    fn symbol_text_round_trip(s in symbol()) {
        prop_assert_eq!(parse_symbol(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn lincomb_json_round_trip(l in lincomb()) {
        prop_assert_eq!(lincomb_from_json(&lincomb_to_json(&l)).unwrap(), l);
    }

    #[test]
    fn lincomb_module_laws(x in lincomb(), y in lincomb(), z in lincomb(), k in -4i64..=4) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.add(&y).scale(&int(k)), x.scale(&int(k)).add(&y.scale(&int(k))));
        prop_assert!(x.sub(&x).is_zero());
        prop_assert!(x.iter().all(|(_, c)| *c != int(0)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn shuffle_counts(m in 0usize..5, n in 0usize..5) {
        let u: Vec<usize> = (0..m).collect();
        let v: Vec<usize> = (10..10 + n).collect();
        let w = shuffle_words(&u, &v);
        prop_assert_eq!(w.len(), binom(m + n, m));
        let mut sorted = w.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), w.len());
    }

    #[test]
    fn depth_two_classification_is_stable(m in constant_mobius(), k in 0usize..4) {
        let kind = [W4Kind::T31, W4Kind::T22, W4Kind::T13, W4Kind::T4][k];
        let args = [RatFun::var("u"), RatFun::var("v")];
        let n = if kind == W4Kind::T4 { 1 } else { 2 };
        let s = CanonicalW4::symbol(kind, &args[..n]).unwrap();
        let c = classify_w4(&s.map(&m)).unwrap();
        prop_assert_eq!(c.kind, kind);
        for (got, want) in c.args.iter().zip(&args[..n]) {
            prop_assert!(got.equals(want));
        }
    }
}
