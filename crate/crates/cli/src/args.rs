//! Parsing of command-line values that clap does not know about.

use anyhow::{anyhow, bail, Result};
use num_bigint::BigInt;
use plog_core::exactfield::{parse_point, GaussRat, ProjPoint, Rational};

/// `3`, `-1/2`, `0.25`, `1e-3`-free decimals.
pub fn parse_real(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || anyhow!("not a real number: {text:?}");
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            bail!("zero denominator in {text:?}");
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let q = Rational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Ok(if neg { -q } else { q })
}

/// `re`, `imi`, `re+imi` or `re-imi`; `i` alone is the imaginary unit.
pub fn parse_complex(text: &str) -> Result<GaussRat> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let zero = || Rational::from_integer(0.into());
    let Some(body) = t.strip_suffix('i') else {
        return Ok(GaussRat::new(parse_real(&t)?, zero()));
    };
    // split at the last sign that is not leading
    let cut = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(k, _)| k).last();
    let (re, im) = match cut {
        Some(k) => (parse_real(&body[..k])?, &body[k..]),
        None => (zero(), body),
    };
    let im = match im {
        "" | "+" => Rational::from_integer(1.into()),
        "-" => Rational::from_integer((-1).into()),
        s => parse_real(s)?,
    };
    Ok(GaussRat::new(re, im))
}

/// `name=value`.
pub fn parse_binding(text: &str) -> Result<(String, GaussRat)> {
    let (name, value) = text.split_once('=').ok_or_else(|| anyhow!("expected name=value, got {text:?}"))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        bail!("invalid variable name {name:?}");
    }
    Ok((name.to_string(), parse_complex(value)?))
}

pub fn parse_points(text: &str) -> Result<Vec<ProjPoint>> {
    text.split(',').map(|p| Ok(parse_point(p.trim())?)).collect()
}

pub fn parse_eps(text: &str) -> Result<Vec<f64>> {
    let eps: Vec<f64> = text
        .split(',')
        .map(|e| e.trim().parse::<f64>().map_err(|_| anyhow!("not a number: {e:?}")))
        .collect::<Result<_>>()?;
    if eps.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
        bail!("epsilon values must lie in (0, 1)");
    }
    Ok(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use plog_core::exactfield::rat;

    #[test]
    fn reals() {
        assert_eq!(parse_real("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_real("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_real("3").unwrap(), rat(3, 1));
        assert!(parse_real("1e3").is_err());
        assert!(parse_real(".").is_err());
    }

    #[test]
    fn complexes() {
        assert_eq!(parse_complex("1/2").unwrap(), GaussRat::new(rat(1, 2), rat(0, 1)));
        assert_eq!(parse_complex("1/2-3/4i").unwrap(), GaussRat::new(rat(1, 2), rat(-3, 4)));
        assert_eq!(parse_complex("-i").unwrap(), GaussRat::new(rat(0, 1), rat(-1, 1)));
        assert_eq!(parse_complex("0.5+i").unwrap(), GaussRat::new(rat(1, 2), rat(1, 1)));
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn bindings() {
        let (n, v) = parse_binding("z=1/3").unwrap();
        assert_eq!((n.as_str(), v), ("z", GaussRat::new(rat(1, 3), rat(0, 1))));
        assert!(parse_binding("z").is_err());
    }
}
