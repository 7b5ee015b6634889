//! `H(a0 | a1, ..., an // x | aend)` and sums of products of such symbols.

use num_bigint::BigInt;
use num_traits::One;

use super::lincomb::LinComb;
use super::symbol::Symbol;
use crate::error::{Error, Result};
use crate::exactfield::parse::{Parser, Tok};
use crate::exactfield::{ProjPoint, Rational};

fn symbol(p: &mut Parser) -> Result<Symbol> {
    match p.next() {
        Some(Tok::Ident(h)) if h == "H" => {}
        _ => return Err(p.error("expected 'H('".into())),
    }
    p.expect(&Tok::LParen, "'('")?;
    let base = p.point()?;
    p.expect(&Tok::Bar, "'|'")?;
    let mut word = vec![p.point()?];
    while p.eat(&Tok::Comma) {
        word.push(p.point()?);
    }
    let marker = if p.eat(&Tok::DoubleSlash) {
        p.point()?
    } else {
        ProjPoint::Infinity
    };
    p.expect(&Tok::Bar, "'|'")?;
    let end = p.point()?;
    p.expect(&Tok::RParen, "')'")?;
    // stored unchecked: identities legitimately contain divergent terms
    Ok(Symbol::unchecked(base, word, end, marker))
}

pub fn parse_symbol(src: &str) -> Result<Symbol> {
    let mut p = Parser::new(src)?;
    let s = symbol(&mut p)?;
    p.finish()?;
    Ok(s)
}

fn rational_literal(p: &mut Parser) -> Result<Option<Rational>> {
    let Some(Tok::Int(n)) = p.peek().cloned() else {
        return Ok(None);
    };
    p.next();
    let mut q = Rational::from_integer(n);
    if p.peek() == Some(&Tok::Slash) {
        p.next();
        match p.next() {
            Some(Tok::Int(d)) if d != BigInt::from(0) => q /= Rational::from_integer(d),
            _ => return Err(p.error("expected a nonzero denominator".into())),
        }
    }
    Ok(Some(q))
}

/// `[-] term (('+'|'-') term)*` with `term := [p/q '*'] H(...) ('*' H(...))* | p/q`.
pub fn parse_lincomb(src: &str) -> Result<LinComb> {
    let mut p = Parser::new(src)?;
    let mut out = LinComb::new();
    let mut sign = if p.eat(&Tok::Minus) { -Rational::one() } else { Rational::one() };
    loop {
        let mut coeff = sign.clone();
        let mut factors = Vec::new();
        match rational_literal(&mut p)? {
            Some(q) => {
                coeff *= q;
                if p.eat(&Tok::Star) {
                    factors.push(symbol(&mut p)?);
                }
            }
            None => factors.push(symbol(&mut p)?),
        }
        while p.eat(&Tok::Star) {
            factors.push(symbol(&mut p)?);
        }
        out.add_term(coeff, factors);
        if p.eat(&Tok::Plus) {
            sign = Rational::one();
        } else if p.eat(&Tok::Minus) {
            sign = -Rational::one();
        } else {
            break;
        }
    }
    if !p.at_end() {
        return Err(Error::parse(p.offset(), "trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::int;

    #[test]
    fn symbol_roundtrip() {
        for text in [
            "H(0 | x, 0, 0, y | 1)",
            "H(a | b // c | d)",
            "H(inf | (a - c)/(b - c), 1/2 | 1)",
            "H(0 | inf // 5 | 1)",
        ] {
            let s = parse_symbol(text).unwrap();
            assert_eq!(s.to_string(), text);
            assert_eq!(parse_symbol(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn compact_spelling() {
        let s = parse_symbol("H(0|1,0|1/2)").unwrap();
        assert_eq!(s.to_string(), "H(0 | 1, 0 | 1/2)");
    }

    #[test]
    fn lincomb_roundtrip() {
        let l = parse_lincomb("-2*H(0|x|1) + H(0|x|1)*H(0|y|1) - 1/3*H(a|b//c|d)").unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(parse_lincomb(&l.to_string()).unwrap(), l);
        assert_eq!(l.coeff_of(&[parse_symbol("H(0|x|1)").unwrap()]), int(-2));
    }

    #[test]
    fn malformed() {
        for bad in ["H(0|1)", "H(0|1|2", "G(0|1|2)", "H(0|1|2) +", "H(0||1)", "H(0|1|2) 3"] {
            assert!(matches!(parse_lincomb(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }
}
