//! Numerical verification of exact identities.

use num_complex::Complex64 as C;
use rayon::prelude::*;
use serde::Serialize;

use super::eval::{ConfigSummary, Evaluator};
use super::sample::sample_for;
use crate::error::{Error, Result};
use crate::symbols::doc::FORMAT_VERSION;
use crate::symbols::{Identity, Layer};

pub const DEFAULT_EPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

pub const BRANCH_CONVENTION: &str = "all terms share one path skeleton: a straight segment when every \
     symbol has the same endpoints, otherwise straight spokes from a common hub to each endpoint";

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
    pub eps: Vec<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            trials: 20,
            tol: 1e-6,
            seed: 0,
            eps: DEFAULT_EPS.to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsFit {
    /// Finite part.
    pub c0: [f64; 2],
    /// Coefficient of `ε log ε`.
    pub c1: [f64; 2],
    pub monotone: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub index: usize,
    pub seed: u64,
    pub config: ConfigSummary,
    /// Value of the identity; one entry per ε when regularized.
    pub values: Vec<[f64; 2]>,
    pub fit: Option<EpsFit>,
    /// `|value|`, or `|c0|` when regularized.
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub version: u32,
    pub kind: &'static str,
    pub pass: bool,
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
    pub terms: usize,
    pub derivation: Vec<String>,
    pub epsilon_sequence: Option<Vec<f64>>,
    pub branch_convention: &'static str,
    pub max_residual: f64,
    pub trial_reports: Vec<TrialReport>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn pair(z: C) -> [f64; 2] {
    [z.re, z.im]
}

/// Independent per-trial seed.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Least-squares fit `v(ε) ≈ c1 ε log ε + c0`, plus a check that `|v(ε)|`
/// does not grow as `ε` shrinks (up to `floor`).
pub fn fit_eps(eps: &[f64], values: &[C], floor: f64) -> EpsFit {
    let n = eps.len() as f64;
    let xs: Vec<f64> = eps.iter().map(|e| e * e.ln()).collect();
    let (sx, sxx) = (xs.iter().sum::<f64>(), xs.iter().map(|x| x * x).sum::<f64>());
    let sy: C = values.iter().sum();
    let sxy: C = xs.iter().zip(values).map(|(x, v)| v * x).sum();
    let det = n * sxx - sx * sx;
    let (c0, c1) = if det.abs() > 0.0 {
        ((sy * sxx - sxy * sx) / det, (sxy * n - sy * sx) / det)
    } else {
        (sy / n, C::new(0.0, 0.0))
    };
    // order by decreasing ε
    let mut idx: Vec<usize> = (0..eps.len()).collect();
    idx.sort_by(|&a, &b| eps[b].total_cmp(&eps[a]));
    let monotone = idx
        .windows(2)
        .all(|w| values[w[1]].norm() <= values[w[0]].norm() + floor);
    EpsFit {
        c0: pair(c0),
        c1: pair(c1),
        monotone,
    }
}

/// Evaluates an exact identity at `trials` sampled configurations.
pub fn verify_identity(id: &Identity, opts: &VerifyOptions) -> Result<VerifyReport> {
    if id.layer != Layer::Exact {
        return Err(Error::QuotientLayerRejected);
    }
    let ev = Evaluator::new(&id.expr);
    let regularize = ev.needs_regularization();
    if regularize && opts.eps.is_empty() {
        return Err(Error::Precondition("identity needs an ε sequence".into()));
    }
    let floor = (opts.tol * 1e-3).max(1e-12);
    let trial_reports: Vec<TrialReport> = (0..opts.trials)
        .into_par_iter()
        .map(|index| -> Result<TrialReport> {
            let seed = trial_seed(opts.seed, index);
            let cfg = sample_for(&ev, seed)?;
            let config = ConfigSummary::from(&cfg);
            if regularize {
                let values = opts
                    .eps
                    .iter()
                    .map(|&e| ev.eval(&cfg, Some(e)))
                    .collect::<Result<Vec<C>>>()?;
                let fit = fit_eps(&opts.eps, &values, floor);
                let residual = C::new(fit.c0[0], fit.c0[1]).norm();
                let pass = residual < opts.tol && fit.monotone;
                Ok(TrialReport {
                    index,
                    seed,
                    config,
                    values: values.into_iter().map(pair).collect(),
                    fit: Some(fit),
                    residual,
                    pass,
                })
            } else {
                let v = ev.eval(&cfg, None)?;
                Ok(TrialReport {
                    index,
                    seed,
                    config,
                    values: vec![pair(v)],
                    fit: None,
                    residual: v.norm(),
                    pass: v.norm() < opts.tol,
                })
            }
        })
        .collect::<Result<_>>()?;
    let max_residual = trial_reports.iter().map(|t| t.residual).fold(0.0, f64::max);
    Ok(VerifyReport {
        version: FORMAT_VERSION,
        kind: "verify-report",
        pass: trial_reports.iter().all(|t| t.pass),
        trials: opts.trials,
        tol: opts.tol,
        seed: opts.seed,
        terms: id.expr.len(),
        derivation: id.derivation.clone(),
        epsilon_sequence: regularize.then(|| opts.eps.clone()),
        branch_convention: BRANCH_CONVENTION,
        max_residual,
        trial_reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_coefficients() {
        let eps = DEFAULT_EPS;
        let vals: Vec<C> = eps.iter().map(|e| C::new(0.3, -0.1) * (e * e.ln()) + C::new(2e-9, 0.0)).collect();
        let fit = fit_eps(&eps, &vals, 1e-12);
        assert!((fit.c0[0] - 2e-9).abs() < 1e-15 && fit.c0[1].abs() < 1e-15);
        assert!((fit.c1[0] - 0.3).abs() < 1e-12 && (fit.c1[1] + 0.1).abs() < 1e-12);
        assert!(fit.monotone);
        let grow: Vec<C> = vec![C::new(1e-6, 0.0), C::new(1e-3, 0.0), C::new(1e-1, 0.0)];
        assert!(!fit_eps(&eps, &grow, 1e-12).monotone);
    }

    #[test]
    fn quotient_is_rejected() {
        let id = Identity::quotient(crate::symbols::LinComb::new(), "x");
        assert!(matches!(verify_identity(&id, &VerifyOptions::default()), Err(Error::QuotientLayerRejected)));
    }
}
