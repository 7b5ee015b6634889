//! Nested-sum descriptions of the depth-two shapes, valid for
//! `|1/x|, |1/y| ≤ 0.9`.

use num_complex::Complex64 as C;
use serde::Serialize;

use super::classify::W4Kind;
use crate::error::{Error, Result};
use crate::numeval::{series_value, SeriesKind};

pub const DOMAIN_RADIUS: f64 = 0.9;

/// `value = sign · series(kind, args)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesDescription {
    pub sign: i32,
    pub kind: SeriesKind,
    pub args: Vec<[f64; 2]>,
}

impl SeriesDescription {
    pub fn eval(&self, precision: f64) -> Result<C> {
        let args: Vec<C> = self.args.iter().map(|a| C::new(a[0], a[1])).collect();
        Ok(series_value(self.kind, &args, precision)? * self.sign as f64)
    }
}

/// `[x]_4 = -Li_4(1/x)`; `[x,y]_{a,b} = Li_{a,b}(y/x, 1/y)` for the three
/// two-variable shapes.
pub fn series_dictionary(kind: W4Kind, args: &[C]) -> Result<SeriesDescription> {
    for a in args {
        if a.norm() * DOMAIN_RADIUS < 1.0 {
            return Err(Error::OutOfDomain(format!("argument {a} has |1/x| > {DOMAIN_RADIUS}")));
        }
    }
    let pair = |z: C| [z.re, z.im];
    let (sign, kind, series_args) = match (kind, args) {
        (W4Kind::T4, [x]) => (-1, SeriesKind::Li(4), vec![pair(x.inv())]),
        (W4Kind::T31, [x, y]) => (1, SeriesKind::Li2(3, 1), vec![pair(y / x), pair(y.inv())]),
        (W4Kind::T22, [x, y]) => (1, SeriesKind::Li2(2, 2), vec![pair(y / x), pair(y.inv())]),
        (W4Kind::T13, [x, y]) => (1, SeriesKind::Li2(1, 3), vec![pair(y / x), pair(y.inv())]),
        _ => return Err(Error::Precondition(format!("no series for kind {kind} with {} args", args.len()))),
    };
    Ok(SeriesDescription {
        sign,
        kind,
        args: series_args,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{GaussRat, RatFun};
    use crate::numeval::{eval_symbol, EvalConfig};
    use crate::weight4::CanonicalW4;

    fn gauss(re: i64, im: i64, d: i64) -> GaussRat {
        GaussRat::new(crate::exactfield::rat(re, d), crate::exactfield::rat(im, d))
    }

    #[test]
    fn series_match_quadrature() {
        let x = gauss(3, 1, 2);
        let y = gauss(-5, 2, 3);
        let cfg = EvalConfig::new([("x".to_string(), x.clone()), ("y".to_string(), y.clone())].into());
        let (xc, yc) = (x.to_complex(), y.to_complex());
        let args2 = [RatFun::var("x"), RatFun::var("y")];
        for kind in [W4Kind::T31, W4Kind::T22, W4Kind::T13, W4Kind::T4] {
            let (sym, nums) = if kind == W4Kind::T4 {
                (CanonicalW4::symbol(kind, &args2[..1]).unwrap(), vec![xc])
            } else {
                (CanonicalW4::symbol(kind, &args2).unwrap(), vec![xc, yc])
            };
            let q = eval_symbol(&sym, &cfg, None).unwrap();
            let s = series_dictionary(kind, &nums).unwrap().eval(1e-14).unwrap();
            assert!((q - s).norm() < 1e-10, "{kind}: quadrature {q} series {s}");
        }
    }

    #[test]
    fn domain() {
        assert!(matches!(series_dictionary(W4Kind::T4, &[C::new(0.5, 0.0)]), Err(Error::OutOfDomain(_))));
    }
}
