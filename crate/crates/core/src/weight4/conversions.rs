//! Expressing `[x,y]_{2,2}` and `[x,y]_{1,3}` through `[x,y]_{3,1}` and
//! `[x]_4` modulo products, by exact elimination over a generated set of
//! numerically checked relations.

use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::classify::{classify_w4, CanonicalW4, W4Kind};
use super::linalg::{rref, Row};
use crate::calculus::{antipode_identity, shuffle_identity};
use crate::error::Result;
use crate::exactfield::{ProjPoint, RatFun, Rational};
use crate::numeval::{verify_identity, VerifyOptions};
use crate::symbols::{Identity, Layer, LinComb, Symbol};

/// Tolerance a relation must meet before it is admitted.
pub const ADMISSION_TOL: f64 = 1e-7;
const ADMISSION_TRIALS: usize = 3;

fn plain(word: Vec<ProjPoint>) -> Result<Symbol> {
    Symbol::plain(ProjPoint::zero(), word, ProjPoint::one())
}

fn pt(r: &RatFun) -> ProjPoint {
    ProjPoint::Finite(r.clone())
}

fn w4(kind: W4Kind, args: &[RatFun]) -> Result<Symbol> {
    CanonicalW4::symbol(kind, args)
}

/// Relation families, each instantiated at a pair of arguments `(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Template {
    /// `[p] ⧢ [q,0,0]`
    Shuffle13,
    /// `[p,0] ⧢ [q,0]`
    Shuffle22,
    /// `[p,0,0] ⧢ [q]`
    Shuffle31,
    /// antipode of `[p,q]_{3,1}`
    Antipode31,
    /// series product `[p/q]_1 · [q]_{3}` (as `[0|q,0,0|1]`)
    Stuffle13,
    /// series product `[p/q,0] · [q,0]`
    Stuffle22,
    /// series product `[p/q,0,0] · [q]`
    Stuffle31,
}

pub const TEMPLATES: [Template; 7] = [
    Template::Shuffle13,
    Template::Shuffle22,
    Template::Shuffle31,
    Template::Antipode31,
    Template::Stuffle13,
    Template::Stuffle22,
    Template::Stuffle31,
];

impl Template {
    /// The relation as an exact identity (`expr ≡ 0` as functions).
    pub fn instantiate(self, p: &RatFun, q: &RatFun) -> Result<Identity> {
        let z = ProjPoint::zero;
        let shuffle = |u: Vec<ProjPoint>, v: Vec<ProjPoint>| -> Result<Identity> {
            shuffle_identity(&plain(u)?, &plain(v)?)
        };
        // [0|p,..|1] series products: Li-type stuffle, with `r = p/q`
        let stuffle = |k1: W4Kind, k2: W4Kind, left: Vec<ProjPoint>, right: Vec<ProjPoint>, label: &str| -> Result<Identity> {
            let r = p.div(q)?;
            let mut expr = LinComb::new();
            expr.add_symbol(Rational::one(), w4(k1, &[p.clone(), q.clone()])?);
            expr.add_symbol(Rational::one(), w4(k2, &[p.clone(), r])?);
            expr.add_symbol(-Rational::one(), w4(W4Kind::T4, &[p.clone()])?);
            expr.add_term(-Rational::one(), vec![plain(left)?, plain(right)?]);
            Ok(Identity::exact(expr, label))
        };
        let (pp, qq) = (pt(p), pt(q));
        match self {
            Template::Shuffle13 => shuffle(vec![pp], vec![qq, z(), z()]),
            Template::Shuffle22 => shuffle(vec![pp, z()], vec![qq, z()]),
            Template::Shuffle31 => shuffle(vec![pp, z(), z()], vec![qq]),
            Template::Antipode31 => Ok(antipode_identity(&w4(W4Kind::T31, &[p.clone(), q.clone()])?)),
            Template::Stuffle13 => {
                let r = pt(&p.div(q)?);
                stuffle(W4Kind::T13, W4Kind::T31, vec![r], vec![qq, z(), z()], "stuffle(1,3)")
            }
            Template::Stuffle22 => {
                let r = pt(&p.div(q)?);
                stuffle(W4Kind::T22, W4Kind::T22, vec![r, z()], vec![qq, z()], "stuffle(2,2)")
            }
            Template::Stuffle31 => {
                let r = pt(&p.div(q)?);
                stuffle(W4Kind::T31, W4Kind::T13, vec![r, z(), z()], vec![qq], "stuffle(3,1)")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationRecord {
    pub template: Template,
    pub p: String,
    pub q: String,
    pub admitted: bool,
    pub max_residual: f64,
}

/// `target(u, v) ≡ expression` modulo products; `lift` is the exact
/// identity (product terms included) it was read from.
#[derive(Clone, Debug)]
pub struct Conversion {
    pub kind: W4Kind,
    pub expression: LinComb,
    pub lift: Identity,
}

#[derive(Clone, Debug)]
pub struct ConversionSet {
    pub t22: Conversion,
    pub t13: Conversion,
    pub relations: Vec<RelationRecord>,
}

#[derive(Clone, Debug)]
pub struct InsufficientReport {
    pub relations: Vec<RelationRecord>,
    /// Rows of the reduced system that still involve `(2,2)` or `(1,3)`
    /// symbols besides their pivot.
    pub residual_basis: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum Conversions {
    Closed(ConversionSet),
    Insufficient(InsufficientReport),
}

pub fn u() -> RatFun {
    RatFun::var("u")
}

pub fn v() -> RatFun {
    RatFun::var("v")
}

fn group(kind: W4Kind) -> u8 {
    match kind {
        W4Kind::T22 | W4Kind::T13 | W4Kind::Other => 0,
        W4Kind::T31 => 1,
        W4Kind::T4 => 2,
    }
}

pub fn derive_conversions() -> Result<Conversions> {
    derive_conversions_with(0)
}

pub fn derive_conversions_with(seed: u64) -> Result<Conversions> {
    let (u, v) = (u(), v());
    let pairs = [
        (u.clone(), v.clone()),
        (v.clone(), u.clone()),
        (u.clone(), u.div(&v)?),
        (v.clone(), v.div(&u)?),
    ];
    let mut jobs = Vec::new();
    for t in TEMPLATES {
        for (p, q) in &pairs {
            jobs.push((t, p.clone(), q.clone()));
        }
    }
    let opts = VerifyOptions {
        trials: ADMISSION_TRIALS,
        tol: ADMISSION_TOL,
        seed,
        ..Default::default()
    };
    let checked: Vec<Result<(RelationRecord, Identity)>> = jobs
        .par_iter()
        .map(|(t, p, q)| {
            let id = t.instantiate(p, q)?;
            let report = verify_identity(&id, &opts)?;
            Ok((
                RelationRecord {
                    template: *t,
                    p: p.to_string(),
                    q: q.to_string(),
                    admitted: report.pass,
                    max_residual: report.max_residual,
                },
                id,
            ))
        })
        .collect();
    let mut relations = Vec::new();
    let mut admitted = Vec::new();
    for c in checked {
        let (rec, id) = c?;
        if rec.admitted {
            admitted.push(id);
        }
        relations.push(rec);
    }

    // columns: every depth-two symbol, ordered by elimination priority
    let mut columns: Vec<(u8, String, Symbol)> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let quotients: Vec<LinComb> = admitted.iter().map(|id| id.to_quotient().expr).collect();
    for q in &quotients {
        for s in q.symbols() {
            let c = classify_w4(&s)?;
            let key = s.to_string();
            if !columns.iter().any(|(_, k, _)| *k == key) {
                columns.push((group(c.kind), key, s));
            }
        }
    }
    columns.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    for (k, (_, key, _)) in columns.iter().enumerate() {
        index.insert(key.clone(), k);
    }
    let rows: Vec<Row> = quotients
        .iter()
        .zip(&admitted)
        .map(|(q, id)| Row {
            coeffs: q.iter().map(|(f, c)| (index[&f[0].to_string()], c.clone())).collect(),
            lift: id.expr.clone(),
        })
        .collect();
    let reduced = rref(rows);

    let read = |kind: W4Kind| -> Result<Option<Conversion>> {
        let target = w4(kind, &[u.clone(), v.clone()])?;
        let Some(&col) = index.get(&target.to_string()) else {
            return Ok(None);
        };
        let Some((_, row)) = reduced.iter().find(|(c, _)| *c == col) else {
            return Ok(None);
        };
        let mut expression = LinComb::new();
        for (&c, k) in &row.coeffs {
            if c == col {
                continue;
            }
            if columns[c].0 == 0 {
                return Ok(None);
            }
            expression.add_symbol(-k.clone(), columns[c].2.clone());
        }
        Ok(Some(Conversion {
            kind,
            expression,
            lift: Identity {
                expr: row.lift.clone(),
                layer: Layer::Exact,
                derivation: vec![format!("conversion({kind})")],
            },
        }))
    };
    match (read(W4Kind::T22)?, read(W4Kind::T13)?) {
        (Some(t22), Some(t13)) => Ok(Conversions::Closed(ConversionSet { t22, t13, relations })),
        _ => {
            let residual_basis = reduced
                .iter()
                .filter(|(c, r)| columns[*c].0 == 0 && r.coeffs.keys().any(|&k| k != *c && columns[k].0 == 0))
                .map(|(c, r)| {
                    let terms: Vec<String> = r.coeffs.iter().map(|(k, q)| format!("{q}*{}", columns[*k].2)).collect();
                    format!("{}: {}", columns[*c].2, terms.join(" + "))
                })
                .collect();
            Ok(Conversions::Insufficient(InsufficientReport {
                relations,
                residual_basis,
            }))
        }
    }
}

impl Conversion {
    /// The conversion at arguments `(x, y)`.
    pub fn apply(&self, x: &RatFun, y: &RatFun) -> Result<LinComb> {
        let values: BTreeMap<String, RatFun> = [("u".to_string(), x.clone()), ("v".to_string(), y.clone())].into();
        self.expression.substitute(&values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_template_has_four_words() {
        let id = Template::Shuffle13.instantiate(&u(), &v()).unwrap();
        let q = id.to_quotient().expr;
        assert_eq!(q.len(), 4);
        let kinds: Vec<W4Kind> = q.symbols().iter().map(|s| classify_w4(s).unwrap().kind).collect();
        assert!(kinds.contains(&W4Kind::T13) && kinds.contains(&W4Kind::T31) && kinds.contains(&W4Kind::T22));
    }
}
