//! The four depth-two shapes of weight four in the canonical frame.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{ProjPoint, RatFun};
use crate::symbols::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum W4Kind {
    /// `[0|x,0,0,y|1]`
    T31,
    /// `[0|x,0,y,0|1]`
    T22,
    /// `[0|x,y,0,0|1]`
    T13,
    /// `[0|x,0,0,0|1]`
    T4,
    Other,
}

impl fmt::Display for W4Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            W4Kind::T31 => "3,1",
            W4Kind::T22 => "2,2",
            W4Kind::T13 => "1,3",
            W4Kind::T4 => "4",
            W4Kind::Other => "other",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalW4 {
    pub kind: W4Kind,
    pub args: Vec<RatFun>,
    pub canonical: Symbol,
}

impl CanonicalW4 {
    /// Builds the canonical symbol of a kind from its arguments.
    pub fn symbol(kind: W4Kind, args: &[RatFun]) -> Result<Symbol> {
        let p = |k: usize| ProjPoint::Finite(args[k].clone());
        let z = ProjPoint::zero;
        let word = match (kind, args.len()) {
            (W4Kind::T31, 2) => vec![p(0), z(), z(), p(1)],
            (W4Kind::T22, 2) => vec![p(0), z(), p(1), z()],
            (W4Kind::T13, 2) => vec![p(0), p(1), z(), z()],
            (W4Kind::T4, 1) => vec![p(0), z(), z(), z()],
            _ => return Err(Error::Precondition(format!("no canonical symbol for kind {kind} with {} args", args.len()))),
        };
        Symbol::plain(ProjPoint::zero(), word, ProjPoint::one())
    }
}

/// Canonicalizes a weight-4 symbol with at most two variables and reads off
/// its shape and arguments.
pub fn classify_w4(s: &Symbol) -> Result<CanonicalW4> {
    if s.weight() != 4 {
        return Err(Error::NotDepthTwo(format!("{s} has weight {}", s.weight())));
    }
    let c = s.canonicalize()?;
    if c.variable_count()? > 2 {
        return Err(Error::NotDepthTwo(format!("{s} has more than two variables")));
    }
    let w = c.word();
    let nz: Vec<bool> = w.iter().map(|a| !a.is_zero()).collect();
    let arg = |k: usize| -> Result<RatFun> {
        w[k].finite()
            .cloned()
            .ok_or_else(|| Error::NotDepthTwo(format!("{s} has a letter at infinity")))
    };
    let (kind, args) = match nz.as_slice() {
        [true, false, false, true] => (W4Kind::T31, vec![arg(0)?, arg(3)?]),
        [true, false, true, false] => (W4Kind::T22, vec![arg(0)?, arg(2)?]),
        [true, true, false, false] => (W4Kind::T13, vec![arg(0)?, arg(1)?]),
        [true, false, false, false] => (W4Kind::T4, vec![arg(0)?]),
        _ => (W4Kind::Other, Vec::new()),
    };
    Ok(CanonicalW4 {
        kind,
        args,
        canonical: c,
    })
}
