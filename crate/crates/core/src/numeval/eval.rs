//! Evaluating symbols and linear combinations at a configuration.
//!
//! All symbols of one combination share a path skeleton. If every symbol runs
//! between the same two endpoints the path is the straight segment; otherwise
//! every endpoint is joined to a common hub `h` and `[p|w|q]` is integrated
//! along `p → h → q`. Path composition, reversal and the antipode are then
//! consistent across the whole combination, so identities hold on one branch.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64 as C;
use rayon::prelude::*;
use serde::Serialize;

use super::integrate::{iterated_integral, Form, Leg};
use super::path::{Panel, Segment};
use crate::error::{Error, Result};
use crate::exactfield::{GaussRat, ProjPoint};
use crate::symbols::{LinComb, Symbol};

/// Default number of initial panels per segment (before refinement).
pub const DEFAULT_PANELS: usize = 2;

pub fn default_panels() -> usize {
    std::env::var("PLOG_PANELS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_PANELS)
}

/// Where variables sit and which path skeleton is used.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalConfig {
    pub assignment: BTreeMap<String, GaussRat>,
    /// When set, every point is first sent through `t ↦ 1/(t - p)`; used to
    /// bring points at infinity into the finite plane.
    pub premap: Option<GaussRat>,
    /// Hub waypoint (in the mapped plane) for combinations with several
    /// endpoint pairs.
    pub hub: Option<GaussRat>,
    /// Initial panels per segment.
    pub panels: usize,
    /// Minimal pole-to-path distance, relative to the segment length.
    pub clearance: f64,
}

impl EvalConfig {
    pub fn new(assignment: BTreeMap<String, GaussRat>) -> Self {
        Self {
            assignment,
            premap: None,
            hub: None,
            panels: default_panels(),
            clearance: 0.05,
        }
    }
}

/// Serializable summary of a configuration.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigSummary {
    pub assignment: BTreeMap<String, String>,
    pub premap: Option<String>,
    pub hub: Option<String>,
}

impl From<&EvalConfig> for ConfigSummary {
    fn from(c: &EvalConfig) -> Self {
        Self {
            assignment: c.assignment.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            premap: c.premap.as_ref().map(|p| p.to_string()),
            hub: c.hub.as_ref().map(|p| p.to_string()),
        }
    }
}

/// A point's numeric value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Pt {
    Fin(C),
    Inf,
}

impl Pt {
    pub fn finite(&self) -> Option<C> {
        match self {
            Pt::Fin(z) => Some(*z),
            Pt::Inf => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Indexed {
    base: usize,
    end: usize,
    marker: usize,
    word: Vec<usize>,
    zero: bool,
}

/// Precomputed structure of a combination: distinct symbols and points.
pub struct Evaluator {
    expr: LinComb,
    symbols: Vec<Symbol>,
    indexed: Vec<Indexed>,
    points: Vec<ProjPoint>,
    /// Indices of points used as endpoints / as letters or markers.
    endpoints: Vec<usize>,
    poles: Vec<usize>,
    divergent: bool,
    straight: Option<(usize, usize)>,
}

fn exact_value(p: &ProjPoint, cfg: &EvalConfig) -> Result<Option<GaussRat>> {
    let Some(u) = p.finite() else {
        return Ok(None);
    };
    match u.eval_exact(&cfg.assignment) {
        Ok(z) => Ok(Some(z)),
        Err(Error::DenominatorVanishes) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `t ↦ 1/(t - p)` on exact values (`None` is infinity).
fn premap(z: Option<GaussRat>, p: &GaussRat) -> Option<GaussRat> {
    match z {
        None => Some(GaussRat::zero()),
        Some(z) => (&z - p).inv(),
    }
}

fn unit(v: C) -> C {
    v / v.norm()
}

/// Point values and the undiscretized segments (keyed by the endpoint index
/// they serve; a straight route has one segment keyed by its base).
pub struct Skeleton {
    pub values: Vec<Pt>,
    pub segments: Vec<(usize, Segment)>,
}

/// Prepared discretization for one configuration and deformation.
pub struct Geometry {
    values: Vec<Pt>,
    route: Route,
}

enum Route {
    Straight(Vec<Panel>),
    Hub(HashMap<usize, Vec<Panel>>),
}

impl Evaluator {
    pub fn new(expr: &LinComb) -> Self {
        let symbols = expr.symbols();
        let mut points: Vec<ProjPoint> = Vec::new();
        let mut index: HashMap<ProjPoint, usize> = HashMap::new();
        let mut idx = |p: &ProjPoint| -> usize {
            *index.entry(p.clone()).or_insert_with(|| {
                points.push(p.clone());
                points.len() - 1
            })
        };
        let indexed: Vec<Indexed> = symbols
            .iter()
            .map(|s| Indexed {
                base: idx(s.base()),
                end: idx(s.end()),
                marker: idx(s.marker()),
                word: s.word().iter().map(&mut idx).collect(),
                zero: s.is_zero(),
            })
            .collect();
        let live: Vec<&Indexed> = indexed.iter().filter(|s| !s.zero).collect();
        let mut endpoints: Vec<usize> = live.iter().flat_map(|s| [s.base, s.end]).collect();
        endpoints.sort();
        endpoints.dedup();
        let mut poles: Vec<usize> = live
            .iter()
            .flat_map(|s| s.word.iter().copied().chain([s.marker]))
            .collect();
        poles.sort();
        poles.dedup();
        let straight = match live.first() {
            Some(first) if live.iter().all(|s| (s.base, s.end) == (first.base, first.end)) => {
                Some((first.base, first.end))
            }
            None => Some((0, 0)),
            _ => None,
        };
        let divergent = symbols.iter().any(Symbol::is_divergent);
        Self {
            expr: expr.clone(),
            symbols,
            indexed,
            points,
            endpoints,
            poles,
            divergent,
            straight,
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn needs_regularization(&self) -> bool {
        self.divergent
    }

    pub fn needs_hub(&self) -> bool {
        self.straight.is_none()
    }

    pub fn variables(&self) -> Vec<String> {
        self.expr.variables()
    }

    pub fn endpoint_indices(&self) -> &[usize] {
        &self.endpoints
    }

    pub fn pole_indices(&self) -> &[usize] {
        &self.poles
    }

    /// Exact values before any pre-map (`None` = infinity).
    pub(crate) fn raw_values(&self, cfg: &EvalConfig) -> Result<Vec<Option<GaussRat>>> {
        self.points.iter().map(|p| exact_value(p, cfg)).collect()
    }

    /// Numeric point values after the optional pre-map.
    pub fn values(&self, cfg: &EvalConfig) -> Result<Vec<Pt>> {
        let raw = self.raw_values(cfg)?;
        Ok(raw
            .into_iter()
            .map(|z| {
                let z = match &cfg.premap {
                    Some(p) => premap(z, p),
                    None => z,
                };
                z.map(|z| Pt::Fin(z.to_complex())).unwrap_or(Pt::Inf)
            })
            .collect())
    }

    fn finite(&self, values: &[Pt], i: usize) -> Result<C> {
        values[i].finite().ok_or_else(|| {
            Error::Precondition(format!(
                "endpoint {} is at infinity; a pre-map is required",
                self.points[i]
            ))
        })
    }

    /// Builds the path skeleton and checks pole clearance. With `eps`, every
    /// endpoint that coincides with a pole is pushed a distance `eps` along
    /// the path into the interior.
    pub fn skeleton(&self, cfg: &EvalConfig, eps: Option<f64>) -> Result<Skeleton> {
        if self.divergent && eps.is_none() {
            let s = self.symbols.iter().find(|s| s.is_divergent()).unwrap();
            return Err(Error::DivergenceWithoutEpsilon(s.to_string()));
        }
        let eps = if self.divergent { eps } else { None };
        let values = self.values(cfg)?;
        let deformed = |p: usize, toward: C| -> Result<C> {
            let z = self.finite(&values, p)?;
            Ok(match eps {
                Some(e) if self.poles.contains(&p) => z + unit(toward - z) * e,
                _ => z,
            })
        };
        let check = |seg: &Segment, own: &[usize]| -> Result<()> {
            let len = seg.param_length();
            for &q in &self.poles {
                if own.contains(&q) {
                    continue;
                }
                if let Some(z) = values[q].finite() {
                    let d = seg.distance_to(z);
                    if d < cfg.clearance * len {
                        return Err(Error::PathTooClose {
                            distance: d,
                            clearance: cfg.clearance * len,
                        });
                    }
                }
            }
            Ok(())
        };
        let mut segments = Vec::new();
        match self.straight {
            Some((b, e)) if b == e => {}
            Some((b, e)) => {
                let (zb, ze) = (self.finite(&values, b)?, self.finite(&values, e)?);
                let seg = Segment::line(deformed(b, ze)?, deformed(e, zb)?);
                check(&seg, &[b, e])?;
                segments.push((b, seg));
            }
            None => {
                let h = cfg
                    .hub
                    .as_ref()
                    .ok_or_else(|| Error::Precondition("combination needs a hub waypoint".into()))?
                    .to_complex();
                for &p in &self.endpoints {
                    let seg = Segment::line(h, deformed(p, h)?);
                    check(&seg, &[p])?;
                    segments.push((p, seg));
                }
            }
        }
        Ok(Skeleton { values, segments })
    }

    /// Skeleton plus discretization.
    pub fn geometry(&self, cfg: &EvalConfig, eps: Option<f64>) -> Result<Geometry> {
        let Skeleton { values, segments } = self.skeleton(cfg, eps)?;
        let pole_values: Vec<C> = self.poles.iter().filter_map(|&i| values[i].finite()).collect();
        let route = if self.straight.is_some() {
            Route::Straight(
                segments
                    .first()
                    .map(|(_, seg)| seg.discretize(&pole_values, cfg.panels))
                    .unwrap_or_default(),
            )
        } else {
            Route::Hub(
                segments
                    .iter()
                    .map(|(p, seg)| (*p, seg.discretize(&pole_values, cfg.panels)))
                    .collect(),
            )
        };
        Ok(Geometry { values, route })
    }

    fn forms(&self, s: &Indexed, values: &[Pt]) -> Vec<Form> {
        s.word
            .iter()
            .map(|&a| {
                if a == s.marker {
                    Form::ZERO
                } else {
                    Form {
                        letter: values[a].finite(),
                        marker: values[s.marker].finite(),
                    }
                }
            })
            .collect()
    }

    fn eval_indexed(&self, s: &Indexed, g: &Geometry) -> C {
        if s.zero || s.base == s.end {
            return C::new(0.0, 0.0);
        }
        let forms = self.forms(s, &g.values);
        match &g.route {
            Route::Straight(panels) => iterated_integral(
                &forms,
                &[Leg {
                    panels,
                    reversed: false,
                }],
            ),
            Route::Hub(spokes) => iterated_integral(
                &forms,
                &[
                    Leg {
                        panels: &spokes[&s.base],
                        reversed: true,
                    },
                    Leg {
                        panels: &spokes[&s.end],
                        reversed: false,
                    },
                ],
            ),
        }
    }

    /// Values of all distinct symbols, in [`Evaluator::symbols`] order.
    pub fn symbol_values(&self, g: &Geometry) -> Vec<C> {
        self.indexed.par_iter().map(|s| self.eval_indexed(s, g)).collect()
    }

    /// `Σ coeff · Π factor values`.
    pub fn eval(&self, cfg: &EvalConfig, eps: Option<f64>) -> Result<C> {
        let g = self.geometry(cfg, eps)?;
        let vals = self.symbol_values(&g);
        let lookup: HashMap<&Symbol, C> = self.symbols.iter().zip(vals).collect();
        Ok(combine(&self.expr, |s| lookup[s]))
    }
}

pub(crate) fn combine(expr: &LinComb, value: impl Fn(&Symbol) -> C) -> C {
    expr.iter()
        .map(|(factors, c)| {
            let prod: C = factors.iter().map(&value).product();
            prod * crate::exactfield::rational::to_f64(c)
        })
        .sum()
}

pub fn eval_lincomb(expr: &LinComb, cfg: &EvalConfig, eps: Option<f64>) -> Result<C> {
    Evaluator::new(expr).eval(cfg, eps)
}

pub fn eval_symbol(s: &Symbol, cfg: &EvalConfig, eps: Option<f64>) -> Result<C> {
    eval_lincomb(&LinComb::from_symbol(s.clone()), cfg, eps)
}

/// Evaluates `s` along an explicit chain of segments from its base to its
/// end, ignoring the configuration's skeleton. Points must be finite.
pub fn eval_symbol_on(s: &Symbol, cfg: &EvalConfig, segments: &[Segment]) -> Result<C> {
    if s.is_zero() {
        return Ok(C::new(0.0, 0.0));
    }
    let value = |p: &ProjPoint| -> Result<Pt> {
        let z = exact_value(p, cfg)?;
        let z = match &cfg.premap {
            Some(q) => premap(z, q),
            None => z,
        };
        Ok(z.map(|z| Pt::Fin(z.to_complex())).unwrap_or(Pt::Inf))
    };
    let marker = value(s.marker())?;
    let mut poles = Vec::new();
    let mut forms = Vec::new();
    for a in s.word() {
        let av = value(a)?;
        poles.extend(av.finite());
        forms.push(if a == s.marker() {
            Form::ZERO
        } else {
            Form {
                letter: av.finite(),
                marker: marker.finite(),
            }
        });
    }
    poles.extend(marker.finite());
    let panels: Vec<Vec<Panel>> = segments.iter().map(|seg| seg.discretize(&poles, cfg.panels)).collect();
    let legs: Vec<Leg<'_>> = panels
        .iter()
        .map(|p| Leg {
            panels: p,
            reversed: false,
        })
        .collect();
    Ok(iterated_integral(&forms, &legs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;
    use crate::symbols::{parse_lincomb, parse_symbol};

    fn cfg(pairs: &[(&str, (i64, i64), (i64, i64))]) -> EvalConfig {
        EvalConfig::new(
            pairs
                .iter()
                .map(|(k, re, im)| (k.to_string(), GaussRat::new(rat(re.0, re.1), rat(im.0, im.1))))
                .collect(),
        )
    }

    #[test]
    fn log_of_half() {
        let v = eval_symbol(&parse_symbol("H(0 | 2 | 1)").unwrap(), &cfg(&[]), None).unwrap();
        assert!((v.re + std::f64::consts::LN_2).abs() < 1e-14 && v.im.abs() < 1e-15);
    }

    #[test]
    fn closed_path_is_zero() {
        let s = Symbol::unchecked(ProjPoint::var("a"), vec![ProjPoint::var("z")], ProjPoint::var("a"), ProjPoint::Infinity);
        let c = cfg(&[("a", (1, 3), (0, 1)), ("z", (2, 1), (1, 2))]);
        assert_eq!(eval_symbol(&s, &c, None).unwrap(), C::new(0.0, 0.0));
    }

    #[test]
    fn products_multiply() {
        let s = parse_symbol("H(0 | 2 | 1)").unwrap();
        let v = eval_lincomb(&parse_lincomb("H(0|2|1)*H(0|2|1)").unwrap(), &cfg(&[]), None).unwrap();
        let w = eval_symbol(&s, &cfg(&[]), None).unwrap();
        assert!((v - w * w).norm() < 1e-14);
        assert_eq!(eval_lincomb(&LinComb::new(), &cfg(&[]), None).unwrap(), C::new(0.0, 0.0));
    }

    #[test]
    fn divergence_needs_epsilon() {
        let l = parse_lincomb("H(0 | 0, 2 | 1)").unwrap();
        assert!(matches!(eval_lincomb(&l, &cfg(&[]), None), Err(Error::DivergenceWithoutEpsilon(_))));
        assert!(eval_lincomb(&l, &cfg(&[]), Some(1e-3)).is_ok());
    }

    #[test]
    fn too_close_is_reported() {
        let l = parse_lincomb("H(0 | a | 1)").unwrap();
        let c = cfg(&[("a", (1, 2), (1, 100))]);
        assert!(matches!(eval_lincomb(&l, &c, None), Err(Error::PathTooClose { .. })));
    }

    #[test]
    fn weight_one_additivity_on_hub() {
        let l = parse_lincomb("H(a | z | b) + H(b | z | c) - H(a | z | c)").unwrap();
        let mut c = cfg(&[
            ("a", (0, 1), (0, 1)),
            ("b", (1, 1), (1, 4)),
            ("c", (1, 2), (1, 1)),
            ("z", (-1, 1), (1, 2)),
        ]);
        c.hub = Some(GaussRat::new(rat(1, 2), rat(-1, 2)));
        assert!(eval_lincomb(&l, &c, None).unwrap().norm() < 1e-13);
    }
}
