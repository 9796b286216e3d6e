//! Composite Gauss–Legendre panels with spectral indefinite integration.
//!
//! A function on `[0, x_max]` is stored through its values at the panel
//! nodes; its antiderivative at any point follows from integrating the
//! Lagrange interpolant, using Legendre expansions of the cardinal
//! polynomials.

use crate::error::{Error, Result};

/// Legendre polynomials P_0..=P_n at `x`.
fn legendre_all(n: usize, x: f64) -> Vec<f64> {
    let mut p = vec![0.0; n + 1];
    p[0] = 1.0;
    if n >= 1 {
        p[1] = x;
    }
    for m in 1..n {
        let mf = m as f64;
        p[m + 1] = ((2.0 * mf + 1.0) * x * p[m] - mf * p[m - 1]) / (mf + 1.0);
    }
    p
}

/// Nodes and weights of the `n`-point rule on [−1, 1], nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let p = legendre_all(n, x);
            let dp = n as f64 * (x * p[n] - p[n - 1]) / (x * x - 1.0);
            let dx = p[n] / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let p = legendre_all(n, x);
        let dp = n as f64 * (x * p[n] - p[n - 1]) / (x * x - 1.0);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Weights `r_k` with ∫_{−1}^{t} p = Σ_k r_k p(x_k) for every polynomial of
/// degree < n.
fn integration_row(t: f64, nodes: &[f64], weights: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let pt = legendre_all(n, t);
    nodes
        .iter()
        .zip(weights)
        .map(|(&xk, &wk)| {
            let pk = legendre_all(n, xk);
            let mut acc = (t + 1.0) / 2.0;
            for m in 1..n {
                acc += pk[m] * (pt[m + 1] - pt[m - 1]) / 2.0;
            }
            wk * acc
        })
        .collect()
}

/// Panels on `[0, x_max]`, graded geometrically towards 1.
#[derive(Debug, Clone)]
pub struct Mesh {
    breaks: Vec<f64>,
    ref_nodes: Vec<f64>,
    ref_weights: Vec<f64>,
    /// Indefinite-integration matrix on the reference panel, row-major.
    ref_matrix: Vec<Vec<f64>>,
}

pub const NODES_PER_PANEL: usize = 20;

impl Mesh {
    /// Uniform panels of width 0.05 on [0, 1/2], then breakpoints
    /// 1 − 2^{−k}/2 up to `x_max < 1`.
    pub fn graded(x_max: f64) -> Mesh {
        assert!(x_max > 0.0 && x_max < 1.0);
        let mut breaks: Vec<f64> = (0..=10)
            .map(|i| i as f64 * 0.05)
            .filter(|&b| b < x_max)
            .collect();
        let mut gap = 0.25;
        while 1.0 - gap < x_max {
            if 1.0 - gap > *breaks.last().unwrap() {
                breaks.push(1.0 - gap);
            }
            gap /= 2.0;
        }
        breaks.push(x_max);
        Mesh::with_breaks(breaks, NODES_PER_PANEL)
    }

    pub fn with_breaks(breaks: Vec<f64>, n: usize) -> Mesh {
        assert!(
            breaks.windows(2).all(|w| w[0] < w[1]),
            "breakpoints must increase"
        );
        let (ref_nodes, ref_weights) = gauss_legendre(n);
        let ref_matrix = ref_nodes
            .iter()
            .map(|&t| integration_row(t, &ref_nodes, &ref_weights))
            .collect();
        Mesh {
            breaks,
            ref_nodes,
            ref_weights,
            ref_matrix,
        }
    }

    pub fn x_max(&self) -> f64 {
        *self.breaks.last().unwrap()
    }

    pub fn panels(&self) -> usize {
        self.breaks.len() - 1
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.ref_nodes.len()
    }

    /// All nodes, panel by panel.
    pub fn nodes(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.panels() * self.nodes_per_panel());
        for p in 0..self.panels() {
            let (a, b) = (self.breaks[p], self.breaks[p + 1]);
            out.extend(self.ref_nodes.iter().map(|t| a + (b - a) * (t + 1.0) / 2.0));
        }
        out
    }

    /// Antiderivative vanishing at 0 of the function with node values `g`.
    pub fn integrate(&self, g: &[f64]) -> Antiderivative {
        let n = self.nodes_per_panel();
        assert_eq!(g.len(), self.panels() * n);
        let mut at_breaks = vec![0.0; self.breaks.len()];
        let mut at_nodes = vec![0.0; g.len()];
        for p in 0..self.panels() {
            let half = (self.breaks[p + 1] - self.breaks[p]) / 2.0;
            let gp = &g[p * n..(p + 1) * n];
            for (j, row) in self.ref_matrix.iter().enumerate() {
                let s: f64 = row.iter().zip(gp).map(|(r, v)| r * v).sum();
                at_nodes[p * n + j] = at_breaks[p] + half * s;
            }
            let full: f64 = self.ref_weights.iter().zip(gp).map(|(w, v)| w * v).sum();
            at_breaks[p + 1] = at_breaks[p] + half * full;
        }
        Antiderivative {
            at_breaks,
            at_nodes,
            integrand: g.to_vec(),
        }
    }

    fn locate(&self, x: f64) -> Result<usize> {
        if !(0.0..=self.x_max()).contains(&x) {
            return Err(Error::Quadrature(format!(
                "{x} outside [0, {}]",
                self.x_max()
            )));
        }
        Ok(self
            .breaks
            .partition_point(|&b| b <= x)
            .saturating_sub(1)
            .min(self.panels() - 1))
    }
}

/// Values of an antiderivative at nodes and breakpoints, plus the
/// integrand it came from.
#[derive(Debug, Clone)]
pub struct Antiderivative {
    at_breaks: Vec<f64>,
    at_nodes: Vec<f64>,
    integrand: Vec<f64>,
}

impl Antiderivative {
    pub fn at_nodes(&self) -> &[f64] {
        &self.at_nodes
    }

    /// Value at an arbitrary point of the mesh interval.
    pub fn eval(&self, mesh: &Mesh, x: f64) -> Result<f64> {
        let p = mesh.locate(x)?;
        let n = mesh.nodes_per_panel();
        let (a, b) = (mesh.breaks[p], mesh.breaks[p + 1]);
        let t = 2.0 * (x - a) / (b - a) - 1.0;
        let row = integration_row(t, &mesh.ref_nodes, &mesh.ref_weights);
        let s: f64 = row
            .iter()
            .zip(&self.integrand[p * n..(p + 1) * n])
            .map(|(r, v)| r * v)
            .sum();
        let v = self.at_breaks[p] + (b - a) / 2.0 * s;
        if !v.is_finite() {
            return Err(Error::Quadrature(format!("non-finite value at {x}")));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(7);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((s - 2.0 / 13.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn indefinite_rows_are_exact_for_low_degree() {
        let (x, w) = gauss_legendre(6);
        for t in [-1.0, -0.3, 0.2, 1.0] {
            let row = integration_row(t, &x, &w);
            let s: f64 = row.iter().zip(&x).map(|(r, xk)| r * xk.powi(4)).sum();
            let exact = (t.powi(5) + 1.0) / 5.0;
            assert!((s - exact).abs() < 1e-14, "t={t}");
        }
    }

    #[test]
    fn log_singularity_towards_one() {
        // ∫_0^x dt/(1−t) = −ln(1−x), up to 1 − 1e-4.
        let mesh = Mesh::graded(1.0 - 1e-4);
        let g: Vec<f64> = mesh.nodes().iter().map(|t| 1.0 / (1.0 - t)).collect();
        let f = mesh.integrate(&g);
        for x in [0.013, 0.3, 0.7, 0.999, 1.0 - 1e-4] {
            let v = f.eval(&mesh, x).unwrap();
            assert!((v + (1.0 - x).ln()).abs() < 1e-13, "x={x}: {v}");
        }
        // A second integration against dt/t: ∫ −ln(1−t)/t = Li_2.
        let g2: Vec<f64> = mesh
            .nodes()
            .iter()
            .zip(f.at_nodes())
            .map(|(t, v)| v / t)
            .collect();
        let f2 = mesh.integrate(&g2);
        let li2_half = std::f64::consts::PI.powi(2) / 12.0 - 2f64.ln().powi(2) / 2.0;
        assert!((f2.eval(&mesh, 0.5).unwrap() - li2_half).abs() < 1e-14);
        assert!(f.eval(&mesh, 1.0).is_err());
    }
}
