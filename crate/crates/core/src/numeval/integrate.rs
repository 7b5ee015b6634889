//! Iterated integrals by propagating all partial integrals `I_0..I_n` along a
//! discretized path: `I_k(t) = ∫ ω_k I_{k-1}`, with `ω_1` innermost.

use num_complex::Complex64 as C;

use super::path::Panel;
use super::quadrature::{rule, NODES};

/// `dt/(t - a) - dt/(t - x)`; a missing pole (at infinity) drops its term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Form {
    pub letter: Option<C>,
    pub marker: Option<C>,
}

impl Form {
    pub const ZERO: Form = Form {
        letter: None,
        marker: None,
    };

    pub fn plain(a: C) -> Self {
        Form {
            letter: Some(a),
            marker: None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.letter.is_none() && self.marker.is_none()
    }

    #[inline]
    pub fn at(&self, t: C) -> C {
        let mut v = C::new(0.0, 0.0);
        if let Some(a) = self.letter {
            v += (t - a).inv();
        }
        if let Some(x) = self.marker {
            v -= (t - x).inv();
        }
        v
    }
}

/// A run of panels, possibly traversed backwards.
#[derive(Clone, Copy)]
pub struct Leg<'a> {
    pub panels: &'a [Panel],
    pub reversed: bool,
}

pub fn iterated_integral(forms: &[Form], legs: &[Leg<'_>]) -> C {
    let n = forms.len();
    if n == 0 {
        return C::new(1.0, 0.0);
    }
    if forms.iter().any(Form::is_zero) {
        return C::new(0.0, 0.0);
    }
    let r = rule();
    let zero = C::new(0.0, 0.0);
    // running values at the start of the current panel
    let mut start = vec![zero; n + 1];
    start[0] = C::new(1.0, 0.0);
    let mut prev = [zero; NODES];
    let mut cur = [zero; NODES];
    let mut f = [zero; NODES];
    let mut z = [zero; NODES];
    let mut dz = [zero; NODES];
    for leg in legs {
        let order: Box<dyn Iterator<Item = &Panel>> = if leg.reversed {
            Box::new(leg.panels.iter().rev())
        } else {
            Box::new(leg.panels.iter())
        };
        for panel in order {
            for j in 0..NODES {
                if leg.reversed {
                    z[j] = panel.z[NODES - 1 - j];
                    dz[j] = -panel.dz[NODES - 1 - j];
                } else {
                    z[j] = panel.z[j];
                    dz[j] = panel.dz[j];
                }
            }
            prev.fill(start[0]);
            for k in 1..=n {
                let form = forms[k - 1];
                for m in 0..NODES {
                    f[m] = form.at(z[m]) * dz[m] * prev[m];
                }
                let total: C = (0..NODES).map(|m| f[m] * r.w[m]).sum();
                if k < n {
                    for j in 0..NODES {
                        let q = &r.q[j];
                        let mut acc = start[k];
                        for m in 0..NODES {
                            acc += f[m] * q[m];
                        }
                        cur[j] = acc;
                    }
                    std::mem::swap(&mut prev, &mut cur);
                }
                start[k] += total;
            }
        }
    }
    start[n]
}
