use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::exactfield::{Mobius, ProjPoint, RatFun};

/// `[a0 | a1, ..., an // x | a_{n+1}]`: the iterated integral from `a0` to
/// `a_{n+1}` of the forms `dt/(t - a_i) - dt/(t - x)`, with `a1` innermost.
/// A marker at infinity gives the plain forms `dt/(t - a_i)`.
#[derive(Clone, Debug)]
pub struct Symbol {
    base: ProjPoint,
    word: Vec<ProjPoint>,
    end: ProjPoint,
    marker: ProjPoint,
}

impl Symbol {
    /// Validated constructor: rejects the four divergent configurations.
    pub fn new(base: ProjPoint, word: Vec<ProjPoint>, end: ProjPoint, marker: ProjPoint) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Precondition("a symbol needs at least one letter".into()));
        }
        let s = Self::unchecked(base, word, end, marker);
        s.validate()?;
        Ok(s)
    }

    pub fn plain(base: ProjPoint, word: Vec<ProjPoint>, end: ProjPoint) -> Result<Self> {
        Self::new(base, word, end, ProjPoint::Infinity)
    }

    /// No convergence check. Used for intermediate terms of path splittings,
    /// which are evaluated with an endpoint deformation.
    pub fn unchecked(base: ProjPoint, word: Vec<ProjPoint>, end: ProjPoint, marker: ProjPoint) -> Self {
        debug_assert!(!word.is_empty());
        Self {
            base,
            word,
            end,
            marker,
        }
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn word(&self) -> &[ProjPoint] {
        &self.word
    }

    pub fn end(&self) -> &ProjPoint {
        &self.end
    }

    pub fn marker(&self) -> &ProjPoint {
        &self.marker
    }

    pub fn weight(&self) -> usize {
        self.word.len()
    }

    /// Some letter equals the marker, so one of the forms is identically zero.
    pub fn has_zero_form(&self) -> bool {
        self.word.iter().any(|a| *a == self.marker)
    }

    /// Value is zero: a vanishing form, or a closed (contractible) path.
    pub fn is_zero(&self) -> bool {
        self.has_zero_form() || self.base == self.end
    }

    /// The first violated convergence condition, if any.
    pub fn divergence(&self) -> Option<&'static str> {
        if self.base == self.marker {
            Some("base equals marker")
        } else if self.marker == self.end {
            Some("marker equals end")
        } else if self.base == self.word[0] {
            Some("base equals first letter")
        } else if self.end == *self.word.last().unwrap() {
            Some("last letter equals end")
        } else {
            None
        }
    }

    /// Divergent and not identically zero; needs regularization to evaluate.
    pub fn is_divergent(&self) -> bool {
        !self.is_zero() && self.divergence().is_some()
    }

    pub fn validate(&self) -> Result<()> {
        match self.divergence() {
            Some(reason) if !self.has_zero_form() => Err(Error::divergent(self, reason)),
            _ => Ok(()),
        }
    }

    pub fn with_word(&self, word: Vec<ProjPoint>) -> Symbol {
        Symbol::unchecked(self.base.clone(), word, self.end.clone(), self.marker.clone())
    }

    pub fn with_marker(&self, marker: ProjPoint) -> Symbol {
        Symbol::unchecked(self.base.clone(), self.word.clone(), self.end.clone(), marker)
    }

    pub fn with_endpoints(&self, base: ProjPoint, end: ProjPoint) -> Symbol {
        Symbol::unchecked(base, self.word.clone(), end, self.marker.clone())
    }

    /// Every point mentioned: base, letters, end, marker.
    pub fn points(&self) -> impl Iterator<Item = &ProjPoint> {
        std::iter::once(&self.base)
            .chain(self.word.iter())
            .chain([&self.end, &self.marker])
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.points().flat_map(|p| p.variables()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Applies a Möbius map to every entry, marker included.
    pub fn map(&self, m: &Mobius) -> Symbol {
        Symbol::unchecked(
            m.apply(&self.base),
            self.word.iter().map(|a| m.apply(a)).collect(),
            m.apply(&self.end),
            m.apply(&self.marker),
        )
    }

    /// Representative with marker ∞, base 0, end 1.
    pub fn canonicalize(&self) -> Result<Symbol> {
        let degenerate = || Error::DegenerateFrame(self.to_string());
        if self.base == self.end || self.base == self.marker || self.marker == self.end {
            return Err(degenerate());
        }
        let m = Mobius::to_standard_frame(&self.marker, &self.base, &self.end).map_err(|_| degenerate())?;
        let mut s = self.map(&m);
        // The frame points land exactly; store the literal constants.
        s.base = ProjPoint::zero();
        s.end = ProjPoint::one();
        s.marker = ProjPoint::Infinity;
        Ok(s)
    }

    pub fn is_canonical(&self) -> bool {
        self.base.is_zero() && self.end == ProjPoint::one() && self.marker.is_infinite()
    }

    /// Number of distinct non-zero letters of the canonical word.
    pub fn variable_count(&self) -> Result<usize> {
        let c = self.canonicalize()?;
        let mut seen: Vec<&ProjPoint> = Vec::new();
        for a in &c.word {
            if !a.is_zero() && !seen.contains(&a) {
                seen.push(a);
            }
        }
        Ok(seen.len())
    }

    /// Substitutes for variables. A symbol that converged before must still
    /// converge afterwards.
    pub fn substitute(&self, values: &BTreeMap<String, RatFun>) -> Result<Symbol> {
        let sub = |p: &ProjPoint| p.substitute(values);
        let s = Symbol::unchecked(
            sub(&self.base)?,
            self.word.iter().map(sub).collect::<Result<_>>()?,
            sub(&self.end)?,
            sub(&self.marker)?,
        );
        if self.divergence().is_none() || self.has_zero_form() {
            s.validate()?;
        }
        Ok(s)
    }

    /// Hash-consistent sort key (fingerprints of all entries).
    pub fn key(&self) -> Vec<u64> {
        let mut k = Vec::with_capacity(self.word.len() + 3);
        k.push(self.word.len() as u64);
        k.extend(self.points().map(|p| p.fingerprint()));
        k
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.word.len() == other.word.len()
            && self.base == other.base
            && self.end == other.end
            && self.marker == other.marker
            && self.word == other.word
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.len().hash(state);
        for p in self.points() {
            p.hash(state);
        }
    }
}

/// Order by fingerprints. Consistent with equality up to fingerprint
/// collisions, which only matter for sorting ties.
impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.key().cmp(&other.key()).then_with(|| self.to_string().cmp(&other.to_string()))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({} | ", self.base)?;
        for (k, a) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.marker.is_infinite() {
            write!(f, " // {}", self.marker)?;
        }
        write!(f, " | {})", self.end)
    }
}
