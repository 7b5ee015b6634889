//! Integration contours: straight segments and Möbius images of straight
//! segments, discretized into Gauss–Legendre panels refined near poles.

use num_complex::Complex64 as C;

use super::quadrature::{rule, NODES};

/// Smallest panel, relative to the parameter-plane segment length.
const MIN_PANEL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub enum Segment {
    /// `z(s) = from + s (to - from)`.
    Line { from: C, to: C },
    /// `z(s) = M(u(s))` with `u(s) = from + s (to - from)` and
    /// `M(u) = (a u + b)/(c u + d)`.
    Mobius { m: [C; 4], from: C, to: C },
}

/// Nodes and scaled derivatives `z'(s) ds/dx` of one panel.
#[derive(Clone, Debug)]
pub struct Panel {
    pub z: [C; NODES],
    pub dz: [C; NODES],
}

fn mobius(m: &[C; 4], u: C) -> C {
    (m[0] * u + m[1]) / (m[2] * u + m[3])
}

fn mobius_inverse(m: &[C; 4], z: C) -> Option<C> {
    // u = (d z - b)/(-c z + a)
    let den = -m[2] * z + m[0];
    (den.norm() > 0.0).then(|| (m[3] * z - m[1]) / den)
}

/// Distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance(p: C, a: C, b: C) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * d.conj()).re / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

impl Segment {
    pub fn line(from: C, to: C) -> Self {
        Segment::Line { from, to }
    }

    fn param_ends(&self) -> (C, C) {
        match self {
            Segment::Line { from, to } | Segment::Mobius { from, to, .. } => (*from, *to),
        }
    }

    pub fn start(&self) -> C {
        self.point(0.0)
    }

    pub fn end(&self) -> C {
        self.point(1.0)
    }

    pub fn point(&self, s: f64) -> C {
        let (a, b) = self.param_ends();
        let u = a + (b - a) * s;
        match self {
            Segment::Line { .. } => u,
            Segment::Mobius { m, .. } => mobius(m, u),
        }
    }

    /// `dz/ds`.
    pub fn derivative(&self, s: f64) -> C {
        let (a, b) = self.param_ends();
        match self {
            Segment::Line { .. } => b - a,
            Segment::Mobius { m, .. } => {
                let u = a + (b - a) * s;
                let det = m[0] * m[3] - m[1] * m[2];
                let den = m[2] * u + m[3];
                det / (den * den) * (b - a)
            }
        }
    }

    /// Poles as seen in the parameter plane.
    fn param_poles(&self, poles: &[C]) -> Vec<C> {
        match self {
            Segment::Line { .. } => poles.to_vec(),
            Segment::Mobius { m, .. } => {
                let mut out: Vec<C> = poles.iter().filter_map(|&p| mobius_inverse(m, p)).collect();
                if m[2].norm() > 0.0 {
                    out.push(-m[3] / m[2]);
                }
                out
            }
        }
    }

    /// Parameter-plane length.
    pub fn param_length(&self) -> f64 {
        let (a, b) = self.param_ends();
        (b - a).norm()
    }

    /// Smallest parameter-plane distance from any of `poles` to the segment.
    pub fn distance_to(&self, pole: C) -> f64 {
        let (a, b) = self.param_ends();
        self.param_poles(&[pole])
            .into_iter()
            .map(|p| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Splits `[0, 1]` into `base` equal panels, then bisects any panel longer
    /// than its distance to the nearest pole.
    pub fn discretize(&self, poles: &[C], base: usize) -> Vec<Panel> {
        let (a, b) = self.param_ends();
        let len = (b - a).norm();
        let pp = self.param_poles(poles);
        let mut intervals = Vec::new();
        let mut stack: Vec<(f64, f64)> = (0..base.max(1))
            .rev()
            .map(|k| (k as f64 / base as f64, (k + 1) as f64 / base as f64))
            .collect();
        while let Some((s0, s1)) = stack.pop() {
            let plen = (s1 - s0) * len;
            let (u0, u1) = (a + (b - a) * s0, a + (b - a) * s1);
            let dist = pp
                .iter()
                .map(|&p| point_segment_distance(p, u0, u1))
                .fold(f64::INFINITY, f64::min);
            if plen <= dist || s1 - s0 <= MIN_PANEL {
                intervals.push((s0, s1));
            } else {
                let mid = 0.5 * (s0 + s1);
                stack.push((mid, s1));
                stack.push((s0, mid));
            }
        }
        let r = rule();
        intervals
            .into_iter()
            .map(|(s0, s1)| {
                let half = 0.5 * (s1 - s0);
                let mut z = [C::new(0.0, 0.0); NODES];
                let mut dz = [C::new(0.0, 0.0); NODES];
                for j in 0..NODES {
                    let s = s0 + half * (r.x[j] + 1.0);
                    z[j] = self.point(s);
                    dz[j] = self.derivative(s) * half;
                }
                Panel { z, dz }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refines_towards_nearby_pole() {
        let seg = Segment::line(C::new(0.0, 0.0), C::new(1.0, 0.0));
        let far = seg.discretize(&[C::new(0.5, 10.0)], 2);
        assert_eq!(far.len(), 2);
        let near = seg.discretize(&[C::new(1.0 + 1e-6, 0.0)], 2);
        assert!(near.len() > 15 && near.len() < 40, "{}", near.len());
    }

    #[test]
    fn panels_integrate_length() {
        let seg = Segment::line(C::new(0.0, 0.0), C::new(3.0, 4.0));
        let r = rule();
        let total: C = seg
            .discretize(&[C::new(1.0, 1.0)], 3)
            .iter()
            .flat_map(|p| (0..NODES).map(move |j| p.dz[j] * r.w[j]))
            .sum();
        assert!((total - C::new(3.0, 4.0)).norm() < 1e-13);
    }

    #[test]
    fn mobius_segment_endpoints() {
        // M(u) = 1/u
        let m = [C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0)];
        let seg = Segment::Mobius { m, from: C::new(1.0, 0.0), to: C::new(2.0, 1.0) };
        assert!((seg.start() - C::new(1.0, 0.0)).norm() < 1e-15);
        assert!((seg.end() - C::new(1.0, 0.0) / C::new(2.0, 1.0)).norm() < 1e-15);
        let r = rule();
        let total: C = seg
            .discretize(&[], 4)
            .iter()
            .flat_map(|p| (0..NODES).map(move |j| p.dz[j] * r.w[j]))
            .sum();
        assert!((total - (seg.end() - seg.start())).norm() < 1e-13);
    }

    #[test]
    fn distances() {
        assert!((point_segment_distance(C::new(0.5, 1.0), C::new(0.0, 0.0), C::new(1.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((point_segment_distance(C::new(2.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)) - 1.0).abs() < 1e-15);
    }
}
