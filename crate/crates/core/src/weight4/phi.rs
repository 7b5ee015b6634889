//! `2φ(a,b,c,d,e)`: the part of the weight-4 reduction of `[a|b,c,d,e|f]`
//! ending at `a`, rewritten in `[x,y]_{3,1}` and `[x]_4`, and compared with
//! the reference table.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::classify::{classify_w4, W4Kind};
use super::conversions::{derive_conversions, ConversionSet, Conversions};
use super::words::{cross_ratio_words, generic_letters, phi_table, word_value};
use crate::error::{Error, Result};
use crate::exactfield::{int, ProjPoint, RatFun, Rational};
use crate::reduction::reduce_symbol;
use crate::symbols::doc::FORMAT_VERSION;
use crate::symbols::{Layer, LinComb};

#[derive(Clone, Debug, Serialize)]
pub struct PhiTerm {
    pub coeff: String,
    pub x: String,
    pub y: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchStatus {
    Match,
    CoeffMismatch,
    MissingInComputed,
    #[serde(rename = "missing-in-paper")]
    MissingInReference,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub x: String,
    pub y: String,
    pub computed: String,
    pub reference: String,
    pub status: MatchStatus,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct KindCounts {
    pub t31: usize,
    pub t22: usize,
    pub t13: usize,
    pub t4: usize,
    pub other: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub version: u32,
    pub kind: &'static str,
    /// The terms below add up to `leading_coeff · φ`.
    pub leading_coeff: String,
    pub raw_counts: KindCounts,
    /// Whether the `(2,2)` and `(1,3)` conversions were available.
    pub conversions_closed: bool,
    pub message: String,
    /// The `f`-side terms equal minus the `a`-side terms with `a ↦ f`.
    pub antisymmetric: bool,
    pub computed_t31: Vec<PhiTerm>,
    /// One-variable remainder (`γ`).
    pub gamma: Vec<PhiTerm>,
    /// Raw `(2,2)`/`(1,3)` terms left when conversions are unavailable.
    pub unconverted: Vec<PhiTerm>,
    pub reference_term_count: usize,
    pub reference_terms: Vec<PhiTerm>,
    pub comparison: Option<Vec<Comparison>>,
    pub status_counts: BTreeMap<String, usize>,
    pub normalization: &'static str,
}

impl PhiReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

const NORMALIZATION: &str = "[x,y] and -[y,x] are identified (antipode); pairs are ordered by a fixed \
     fingerprint of their arguments";

/// Readable names for argument values: cross-ratio words where possible.
struct Namer {
    words: BTreeMap<u64, String>,
}

impl Namer {
    fn new() -> Result<Self> {
        let mut words = BTreeMap::new();
        let all = cross_ratio_words(&generic_letters())?;
        // shorter words win
        let mut list: Vec<(String, RatFun)> = all.into_iter().collect();
        list.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        for (w, v) in list {
            words.entry(v.fingerprint()).or_insert(w);
        }
        Ok(Self { words })
    }

    fn name(&self, r: &RatFun) -> String {
        self.words.get(&r.fingerprint()).cloned().unwrap_or_else(|| r.to_string())
    }
}

/// `(x, y, sign)` with the pair put in fingerprint order.
fn normalize(x: &RatFun, y: &RatFun) -> (RatFun, RatFun, Rational) {
    if x.fingerprint() <= y.fingerprint() {
        (x.clone(), y.clone(), int(1))
    } else {
        (y.clone(), x.clone(), int(-1))
    }
}

#[derive(Default)]
struct Collected {
    t31: BTreeMap<(u64, u64), (RatFun, RatFun, Rational)>,
    t4: BTreeMap<u64, (RatFun, Rational)>,
    unconverted: Vec<(W4Kind, RatFun, RatFun, Rational)>,
    other: usize,
}

impl Collected {
    fn add_t31(&mut self, x: &RatFun, y: &RatFun, c: &Rational) {
        let (x, y, s) = normalize(x, y);
        let e = self
            .t31
            .entry((x.fingerprint(), y.fingerprint()))
            .or_insert_with(|| (x, y, Rational::zero()));
        e.2 += c * s;
    }

    fn add(&mut self, l: &LinComb, conv: Option<&ConversionSet>, counts: Option<&mut KindCounts>) -> Result<()> {
        let mut local = KindCounts::default();
        for (factors, c) in l.iter() {
            let [s] = factors else {
                return Err(Error::Precondition("product term in a quotient result".into()));
            };
            let w = classify_w4(s)?;
            match w.kind {
                W4Kind::T31 => {
                    local.t31 += 1;
                    self.add_t31(&w.args[0], &w.args[1], c);
                }
                W4Kind::T4 => {
                    local.t4 += 1;
                    let e = self
                        .t4
                        .entry(w.args[0].fingerprint())
                        .or_insert_with(|| (w.args[0].clone(), Rational::zero()));
                    e.1 += c;
                }
                W4Kind::T22 | W4Kind::T13 => {
                    if w.kind == W4Kind::T22 {
                        local.t22 += 1;
                    } else {
                        local.t13 += 1;
                    }
                    match conv {
                        Some(set) => {
                            let conversion = if w.kind == W4Kind::T22 { &set.t22 } else { &set.t13 };
                            let image = conversion.apply(&w.args[0], &w.args[1])?.scale(c);
                            self.add(&image, None, None)?;
                        }
                        None => self.unconverted.push((w.kind, w.args[0].clone(), w.args[1].clone(), c.clone())),
                    }
                }
                W4Kind::Other => {
                    local.other += 1;
                    self.other += 1;
                }
            }
        }
        if let Some(counts) = counts {
            *counts = local;
        }
        Ok(())
    }
}

fn term(c: &Rational, x: String, y: Option<String>) -> PhiTerm {
    PhiTerm {
        coeff: c.to_string(),
        x,
        y,
    }
}

/// Runs the pipeline on the generic points `a..f`, deriving conversions.
pub fn phi_report(compare: bool) -> Result<PhiReport> {
    let conv = derive_conversions()?;
    let set = match &conv {
        Conversions::Closed(set) => Some(set),
        Conversions::Insufficient(_) => None,
    };
    phi_report_with(set, compare)
}

/// As [`phi_report`] with given conversions (`None`: raw decomposition).
pub fn phi_report_with(conv: Option<&ConversionSet>, compare: bool) -> Result<PhiReport> {
    let v = ProjPoint::var;
    let (a, f) = (v("a"), v("f"));
    let word = vec![v("b"), v("c"), v("d"), v("e")];
    let out = reduce_symbol(&a, &word, &f, &ProjPoint::Infinity, Layer::Quotient)?;
    let a_side = out.result.filter(|fs, _| fs[0].end() == &a);
    let f_side = out.result.filter(|fs, _| fs[0].end() == &f);
    let swap: BTreeMap<String, RatFun> = [("a".to_string(), RatFun::var("f"))].into();
    let antisymmetric = a_side.substitute(&swap)?.add(&f_side).is_zero();

    let mut counts = KindCounts::default();
    let mut col = Collected::default();
    col.add(&a_side, conv, Some(&mut counts))?;

    let namer = Namer::new()?;
    let mut computed_t31: Vec<PhiTerm> = col
        .t31
        .values()
        .filter(|(_, _, c)| !c.is_zero())
        .map(|(x, y, c)| term(c, namer.name(x), Some(namer.name(y))))
        .collect();
    computed_t31.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
    let mut gamma: Vec<PhiTerm> = col
        .t4
        .values()
        .filter(|(_, c)| !c.is_zero())
        .map(|(x, c)| term(c, namer.name(x), None))
        .collect();
    gamma.sort_by(|p, q| p.x.cmp(&q.x));
    let unconverted: Vec<PhiTerm> = col
        .unconverted
        .iter()
        .map(|(k, x, y, c)| term(c, format!("[{k}] {}", namer.name(x)), Some(namer.name(y))))
        .collect();

    // the reference table, normalized the same way
    let letters = generic_letters();
    let table = phi_table();
    let mut reference = Collected::default();
    for e in &table {
        let (x, y) = (word_value(&e.x, &letters)?, word_value(&e.y, &letters)?);
        reference.add_t31(&x, &y, &int(e.coeff));
    }
    let reference_terms = table
        .iter()
        .map(|e| term(&int(e.coeff), e.x.clone(), Some(e.y.clone())))
        .collect();

    let mut status_counts = BTreeMap::new();
    let comparison = compare.then(|| {
        let mut keys: Vec<(u64, u64)> = col.t31.keys().chain(reference.t31.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        let mut rows = Vec::new();
        for k in keys {
            let got = col.t31.get(&k).map(|e| e.2.clone()).unwrap_or_else(Rational::zero);
            let want = reference.t31.get(&k).map(|e| e.2.clone()).unwrap_or_else(Rational::zero);
            if got.is_zero() && want.is_zero() {
                continue;
            }
            let (x, y) = col.t31.get(&k).or(reference.t31.get(&k)).map(|e| (&e.0, &e.1)).unwrap();
            let status = if want.is_zero() {
                MatchStatus::MissingInReference
            } else if got.is_zero() {
                MatchStatus::MissingInComputed
            } else if got == want {
                MatchStatus::Match
            } else {
                MatchStatus::CoeffMismatch
            };
            let label = serde_json::to_value(status).unwrap().as_str().unwrap().to_string();
            *status_counts.entry(label).or_insert(0) += 1;
            rows.push(Comparison {
                x: namer.name(x),
                y: namer.name(y),
                computed: got.to_string(),
                reference: want.to_string(),
                status,
            });
        }
        rows.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
        rows
    });

    let message = if conv.is_some() {
        "(2,2) and (1,3) terms rewritten through derived conversions".to_string()
    } else {
        "conversions unavailable; raw (3,1), (2,2), (1,3) and 4 decomposition reported".to_string()
    };
    Ok(PhiReport {
        version: FORMAT_VERSION,
        kind: "phi-report",
        leading_coeff: out.leading_coeff.to_string(),
        raw_counts: counts,
        conversions_closed: conv.is_some(),
        message,
        antisymmetric,
        computed_t31,
        gamma,
        unconverted,
        reference_term_count: table.len(),
        reference_terms,
        comparison,
        status_counts,
        normalization: NORMALIZATION,
    })
}
