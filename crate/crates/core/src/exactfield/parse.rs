//! Tokenizer and recursive-descent parser for rational-function expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! point  := 'inf' | expr
//! ```
//!
//! The same token stream is reused by the symbol grammar, which is why `|`,
//! `,` and `//` are tokens here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::projective::ProjPoint;
use super::ratfun::RatFun;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    DoubleSlash,
    Caret,
    LParen,
    RParen,
    Bar,
    Comma,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'|' => Some(Tok::Bar),
            b',' => Some(Tok::Comma),
            b'/' => {
                if bytes.get(i + 1) == Some(&b'/') {
                    i += 2;
                    out.push((start, Tok::DoubleSlash));
                    continue;
                }
                Some(Tok::Slash)
            }
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else {
            let ch = src[start..].chars().next().unwrap();
            return Err(Error::parse(start, format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

pub(crate) struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Self> {
        Ok(Self {
            toks: tokenize(src)?,
            pos: 0,
            end: src.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    pub(crate) fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("trailing input".into()))
        }
    }

    pub(crate) fn error(&self, message: String) -> Error {
        Error::parse(self.offset(), message)
    }

    pub(crate) fn point(&mut self) -> Result<ProjPoint> {
        if let Some(Tok::Ident(name)) = self.peek() {
            if name == "inf" {
                self.pos += 1;
                return Ok(ProjPoint::Infinity);
            }
        }
        Ok(ProjPoint::Finite(self.expr()?))
    }

    pub(crate) fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(&Tok::Slash) {
                let at = self.offset();
                self.pos += 1;
                let d = self.unary()?;
                acc = acc
                    .div(&d)
                    .map_err(|_| Error::parse(at, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun> {
        if self.eat(&Tok::Minus) {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        let negative = self.eat(&Tok::Minus);
        let e = match self.next() {
            Some(Tok::Int(n)) => n
                .to_u32()
                .ok_or_else(|| Error::parse(at, "exponent too large"))?,
            _ => return Err(Error::parse(at, "expected integer exponent")),
        };
        let p = base.pow(e);
        if negative {
            p.inv()
                .map_err(|_| Error::parse(at, "zero raised to a negative power"))
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<RatFun> {
        let at = self.offset();
        match self.next() {
            Some(Tok::Int(n)) => Ok(RatFun::constant(BigRational::from_integer(n))),
            Some(Tok::Ident(name)) if name == "inf" => {
                Err(Error::parse(at, "inf is not allowed inside an expression"))
            }
            Some(Tok::Ident(name)) => Ok(RatFun::var(&name)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(t) => Err(Error::parse(at, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

pub fn parse_ratfun(src: &str) -> Result<RatFun> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Either `inf` or a rational-function expression.
pub fn parse_point(src: &str) -> Result<ProjPoint> {
    let mut p = Parser::new(src)?;
    let e = p.point()?;
    p.finish()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::rat;

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse_ratfun("1/2*a/b").unwrap().to_string(), "1/2*a/b");
        assert_eq!(parse_ratfun("2+3*4").unwrap(), RatFun::int(14));
        assert_eq!(parse_ratfun("-2^2").unwrap(), RatFun::int(-4));
        assert_eq!(parse_ratfun("8/4/2").unwrap(), RatFun::int(1));
        assert_eq!(parse_ratfun("2^-2").unwrap(), RatFun::constant(rat(1, 4)));
    }

    #[test]
    fn cross_ratio_text() {
        let u = parse_ratfun("((a-c)*(b-d))/((a-d)*(b-c))").unwrap();
        let back = parse_ratfun(&u.to_string()).unwrap();
        assert_eq!(u, back);
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("inf").unwrap(), ProjPoint::Infinity);
        assert_eq!(parse_point(" x ").unwrap(), ProjPoint::var("x"));
        assert!(parse_point("inf+1").is_err());
        assert!(parse_point("1+inf").is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_ratfun("a + $") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_ratfun("a/0").is_err());
        assert!(parse_ratfun("(a").is_err());
        assert!(parse_ratfun("").is_err());
    }

    #[test]
    fn double_slash_is_one_token() {
        let t = tokenize("a//b").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[1].1, Tok::DoubleSlash);
    }
}
