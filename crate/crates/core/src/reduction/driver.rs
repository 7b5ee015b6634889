//! End-to-end reduction of `[a0|a_1..a_n // x|e]` to symbols with at most
//! `n - 2` variables.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::relations::{split_shuffle, transposition};
use super::scheme::{cancellation_check, cancellation_check_odd, coeff_scheme};
use crate::error::{Error, Result};
use crate::exactfield::rational::parse_rational;
use crate::exactfield::{int, ProjPoint, Rational};
use crate::symbols::doc::{docs_to_terms, terms_to_docs, TermDoc, FORMAT_VERSION};
use crate::symbols::{parse_symbol, Identity, Layer, LinComb, Symbol};

/// `leading_coeff · input ≡ result`; in the exact layer `result` carries all
/// product terms, in the quotient layer every symbol of `result` has at most
/// `n - 2` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionOutput {
    pub input: Symbol,
    pub mode: Layer,
    pub result: LinComb,
    pub leading_coeff: Rational,
    pub log: Vec<String>,
}

impl ReductionOutput {
    pub fn n(&self) -> usize {
        self.input.weight()
    }

    /// `leading_coeff · input - result ≡ 0`.
    pub fn identity(&self) -> Identity {
        let mut expr = LinComb::new();
        expr.add_symbol(self.leading_coeff.clone(), self.input.clone());
        Identity {
            expr: expr.sub(&self.result),
            layer: self.mode,
            derivation: self.log.clone(),
        }
    }

    /// `result / leading_coeff`, the expression for `input` itself.
    pub fn normalized(&self) -> LinComb {
        self.result.scale(&(Rational::one() / &self.leading_coeff))
    }

    pub fn to_json(&self) -> String {
        let doc = ReductionDoc {
            version: FORMAT_VERSION,
            kind: "reduction".into(),
            mode: self.mode,
            n: self.n(),
            input: self.input.to_string(),
            leading_coeff: self.leading_coeff.to_string(),
            log: self.log.clone(),
            terms: terms_to_docs(&self.result),
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ReductionDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if doc.kind != "reduction" {
            return Err(Error::Format(format!("expected kind \"reduction\", found {:?}", doc.kind)));
        }
        Ok(Self {
            input: parse_symbol(&doc.input)?,
            mode: doc.mode,
            result: docs_to_terms(&doc.terms)?,
            leading_coeff: parse_rational(&doc.leading_coeff)?,
            log: doc.log,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ReductionDoc {
    version: u32,
    kind: String,
    mode: Layer,
    n: usize,
    input: String,
    leading_coeff: String,
    log: Vec<String>,
    terms: Vec<TermDoc>,
}

fn general_position(a0: &ProjPoint, word: &[ProjPoint], end: &ProjPoint, marker: &ProjPoint) -> Result<Symbol> {
    let n = word.len();
    if n < 3 {
        return Err(Error::Precondition(format!("weight {n} < 3")));
    }
    let all: Vec<&ProjPoint> = [a0, end, marker].into_iter().chain(word).collect();
    for (k, p) in all.iter().enumerate() {
        if all[k + 1..].contains(p) {
            return Err(Error::Precondition(format!("point {p} repeated; entries must be distinct")));
        }
    }
    Symbol::new(a0.clone(), word.to_vec(), end.clone(), marker.clone())
}

/// `s` with `a_1` at `i`, `a_2` at `j` and `a_3..a_n` in order elsewhere.
fn placed(s: &Symbol, i: usize, j: usize) -> Symbol {
    let w = s.word();
    let mut rest = w[2..].iter();
    let word = (1..=w.len())
        .map(|p| {
            if p == i {
                w[0].clone()
            } else if p == j {
                w[1].clone()
            } else {
                rest.next().unwrap().clone()
            }
        })
        .collect();
    s.with_word(word)
}

/// `s` with `a_1` at `p` and `a_2..a_n` in order elsewhere.
fn placed_first(s: &Symbol, p: usize) -> Symbol {
    let mut word = s.word()[1..].to_vec();
    word.insert(p - 1, s.word()[0].clone());
    s.with_word(word)
}

/// Splits `expr = lead·s + rest` and checks that everything in `rest` is
/// lowered.
fn finish(s: &Symbol, expr: LinComb, lead: Rational, layer: Layer, log: Vec<String>) -> Result<ReductionOutput> {
    let n = s.weight();
    let got = expr.coeff_of(std::slice::from_ref(s));
    if got != lead {
        return Err(Error::CancellationFailure {
            n,
            detail: format!("input coefficient {got}, expected {lead}"),
        });
    }
    let mut rest = expr;
    rest.add_symbol(-lead.clone(), s.clone());
    for (factors, _) in rest.iter() {
        if let [t] = factors {
            let count = t.variable_count()?;
            if count > n - 2 {
                return Err(Error::CancellationFailure {
                    n,
                    detail: format!("{t} has {count} variables"),
                });
            }
        }
    }
    Ok(ReductionOutput {
        input: s.clone(),
        mode: layer,
        result: rest.neg(),
        leading_coeff: lead,
        log,
    })
}

/// Adds the weighted relations to `acc` in the given order; the relations
/// themselves are built concurrently.
fn accumulate(acc: &mut LinComb, log: &mut Vec<String>, jobs: Vec<(Rational, Symbol, usize, usize, String)>, layer: Layer) -> Result<()> {
    let built: Vec<Result<Identity>> = jobs
        .par_iter()
        .map(|(_, src, p, q, _)| transposition(src, *p, *q, layer))
        .collect();
    for ((c, _, p, q, what), id) in jobs.into_iter().zip(built) {
        acc.add_assign_scaled(&c, &id?.expr);
        log.push(format!("{c}*{what}: transposition(i={p}, j={q})"));
    }
    Ok(())
}

/// `⌊n/2⌋·[a0|a_1..a_n // x|e]` as a combination of lowered symbols (plus
/// products in the exact layer), from the shuffle of `(a_1, a_2)` into
/// `(a_3..a_n)` and the weighted pair relations.
pub fn reduce_symbol(
    a0: &ProjPoint,
    word: &[ProjPoint],
    end: &ProjPoint,
    marker: &ProjPoint,
    layer: Layer,
) -> Result<ReductionOutput> {
    let s = general_position(a0, word, end, marker)?;
    let n = s.weight();
    if !cancellation_check(n) {
        return Err(Error::CancellationFailure {
            n,
            detail: "coefficient scheme does not cancel".into(),
        });
    }
    let shuffle = split_shuffle(&s, 2, layer)?;
    let mut expr = shuffle.expr;
    let mut log = shuffle.derivation;
    let jobs = coeff_scheme(n)
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(label, c)| {
            let (i, j) = label.source();
            let (p, q) = label.swapped();
            (c, placed(&s, i, j), p, q, label.to_string())
        })
        .collect();
    accumulate(&mut expr, &mut log, jobs, layer)?;
    finish(&s, expr.drop_zero_symbols(), int((n / 2) as i64), layer, log)
}

/// Odd weights: the shuffle of `a_1` into `(a_2..a_n)` minus the relations
/// moving `a_1` from `p` to `p + 1` for even `p` leaves `1·s`.
pub fn reduce_odd(
    a0: &ProjPoint,
    word: &[ProjPoint],
    end: &ProjPoint,
    marker: &ProjPoint,
    layer: Layer,
) -> Result<ReductionOutput> {
    let s = general_position(a0, word, end, marker)?;
    let n = s.weight();
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("odd reduction needs odd weight, got {n}")));
    }
    if !cancellation_check_odd(n) {
        return Err(Error::CancellationFailure {
            n,
            detail: "odd scheme does not cancel".into(),
        });
    }
    let shuffle = split_shuffle(&s, 1, layer)?;
    let mut expr = shuffle.expr;
    let mut log = shuffle.derivation;
    let jobs = (2..n)
        .step_by(2)
        .map(|p| (int(-1), placed_first(&s, p), p, p + 1, format!("R_{p}")))
        .collect();
    accumulate(&mut expr, &mut log, jobs, layer)?;
    finish(&s, expr.drop_zero_symbols(), Rational::one(), layer, log)
}

/// Distinct indeterminates `a0, a1..an, e` with marker `x`.
pub fn generic_points(n: usize) -> (ProjPoint, Vec<ProjPoint>, ProjPoint, ProjPoint) {
    (
        ProjPoint::var("a0"),
        (1..=n).map(|k| ProjPoint::var(&format!("a{k}"))).collect(),
        ProjPoint::var(&format!("a{}", n + 1)),
        ProjPoint::var("x"),
    )
}
