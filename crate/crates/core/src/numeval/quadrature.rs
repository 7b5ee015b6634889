//! 16-point Gauss–Legendre rule together with its spectral integration
//! matrix, so that running integrals are available at every node.

use std::sync::OnceLock;

pub const NODES: usize = 16;

pub struct Rule {
    pub x: [f64; NODES],
    pub w: [f64; NODES],
    /// `q[j][m]`: weight of node `m` in `∫_{-1}^{x_j} f`.
    pub q: [[f64; NODES]; NODES],
}

/// Legendre polynomials `P_0..=P_n` at `x`.
fn legendre_all(n: usize, x: f64) -> Vec<f64> {
    let mut p = vec![0.0; n + 1];
    p[0] = 1.0;
    if n > 0 {
        p[1] = x;
    }
    for l in 1..n {
        p[l + 1] = ((2 * l + 1) as f64 * x * p[l] - l as f64 * p[l - 1]) / (l + 1) as f64;
    }
    p
}

fn build() -> Rule {
    let n = NODES;
    let mut x = [0.0; NODES];
    let mut w = [0.0; NODES];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let p = legendre_all(n, z);
            let dp = n as f64 * (z * p[n] - p[n - 1]) / (z * z - 1.0);
            let dz = p[n] / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let p = legendre_all(n, z);
        let dp = n as f64 * (z * p[n] - p[n - 1]) / (z * z - 1.0);
        // ascending order
        x[n - 1 - i] = z;
        w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    // f ≈ Σ_l c_l P_l with c_l = (2l+1)/2 Σ_m w_m f_m P_l(x_m), and
    // ∫_{-1}^{x} P_l = (P_{l+1} - P_{l-1})/(2l+1), ∫_{-1}^{x} P_0 = x + 1.
    let pm: Vec<Vec<f64>> = x.iter().map(|&xm| legendre_all(n, xm)).collect();
    let mut q = [[0.0; NODES]; NODES];
    for j in 0..n {
        let pj = &pm[j];
        let mut antider = vec![0.0; n];
        antider[0] = x[j] + 1.0;
        for l in 1..n {
            antider[l] = (pj[l + 1] - pj[l - 1]) / (2 * l + 1) as f64;
        }
        for m in 0..n {
            q[j][m] = w[m]
                * (0..n)
                    .map(|l| (2 * l + 1) as f64 / 2.0 * pm[m][l] * antider[l])
                    .sum::<f64>();
        }
    }
    Rule { x, w, q }
}

pub fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(build)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_symmetry() {
        let r = rule();
        assert!((r.w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for i in 0..NODES {
            assert!((r.x[i] + r.x[NODES - 1 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_on_polynomials() {
        let r = rule();
        for k in 0..=15 {
            let f: Vec<f64> = r.x.iter().map(|x| x.powi(k)).collect();
            let full: f64 = (0..NODES).map(|m| r.w[m] * f[m]).sum();
            let expect = (1.0 - (-1f64).powi(k + 1)) / (k + 1) as f64;
            assert!((full - expect).abs() < 1e-14, "k={k}");
            for j in 0..NODES {
                let run: f64 = (0..NODES).map(|m| r.q[j][m] * f[m]).sum();
                let expect = (r.x[j].powi(k + 1) - (-1f64).powi(k + 1)) / (k + 1) as f64;
                assert!((run - expect).abs() < 1e-13, "k={k} j={j}");
            }
        }
    }
}
