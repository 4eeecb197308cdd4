//! Panel grids and Nystrom discretisation of the Lorentzian kernel
//! `(w/pi) / (x^2 + w^2)`.
//!
//! Panels whose Bernstein ellipse contains the kernel pole use product
//! integration against the panel's Lagrange basis; all others use plain
//! Gauss-Legendre weights.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre_reference, legendre_with_derivative};

pub(crate) const PANEL_ORDER: usize = 8;
const NEAR_RHO: f64 = 8.0;

#[derive(Debug, Clone)]
pub(crate) struct PanelGrid {
    breaks: Vec<f64>,
    ref_nodes: Vec<f64>,
    ref_weights: Vec<f64>,
    /// Row q holds the monomial coefficients of the q-th Lagrange basis polynomial.
    lagrange: Vec<Vec<f64>>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl PanelGrid {
    pub(crate) fn new(breaks: Vec<f64>) -> Result<Self> {
        if breaks.len() < 2 || breaks.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("panel breakpoints must increase".into()));
        }
        let m = PANEL_ORDER;
        let (ref_nodes, ref_weights) = gauss_legendre_reference(m)?;
        let vandermonde = DMatrix::from_fn(m, m, |i, n| ref_nodes[i].powi(n as i32));
        let inv = vandermonde
            .try_inverse()
            .ok_or_else(|| Error::Sanity("singular Vandermonde matrix".into()))?;
        let lagrange = (0..m)
            .map(|q| (0..m).map(|n| inv[(n, q)]).collect())
            .collect();
        let mut nodes = Vec::with_capacity(m * (breaks.len() - 1));
        let mut weights = Vec::with_capacity(nodes.capacity());
        for w in breaks.windows(2) {
            let half = 0.5 * (w[1] - w[0]);
            let mid = 0.5 * (w[1] + w[0]);
            for (t, wt) in ref_nodes.iter().zip(&ref_weights) {
                nodes.push(mid + half * t);
                weights.push(half * wt);
            }
        }
        Ok(Self {
            breaks,
            ref_nodes,
            ref_weights,
            lagrange,
            nodes,
            weights,
        })
    }

    pub(crate) fn uniform(a: f64, b: f64, panels: usize) -> Result<Self> {
        let panels = panels.max(1);
        Self::new(
            (0..=panels)
                .map(|k| a + (b - a) * k as f64 / panels as f64)
                .collect(),
        )
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn panels(&self) -> usize {
        self.breaks.len() - 1
    }

    pub(crate) fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub(crate) fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub(crate) fn integrate(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    /// Weights `out[q]` with `sum_q out[q] phi(s_q) ~ int_panel L_w(y - s) phi(s) ds`.
    fn panel_weights(&self, p: usize, y: f64, width: f64, out: &mut [f64]) {
        let m = PANEL_ORDER;
        let (a, b) = (self.breaks[p], self.breaks[p + 1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let z = Complex64::new((y - mid) / half, width / half);
        let root = (z * z - 1.0).sqrt();
        let rho = (z + root).norm().max((z - root).norm());
        if rho >= NEAR_RHO {
            for (q, o) in out.iter_mut().enumerate().take(m) {
                let d = y - self.nodes[p * m + q];
                *o = self.weights[p * m + q] * width / (PI * (d * d + width * width));
            }
            return;
        }
        // D_n = int_{-1}^{1} t^n / (t - z) dt by upward recurrence.
        let mut moments = [0.0; PANEL_ORDER];
        let mut d = (1.0 - z).ln() - (-1.0 - z).ln();
        moments[0] = d.im / PI;
        for (n, slot) in moments.iter_mut().enumerate().skip(1) {
            let odd = if n % 2 == 1 { 2.0 / n as f64 } else { 0.0 };
            d = z * d + odd;
            *slot = d.im / PI;
        }
        for (q, o) in out.iter_mut().enumerate() {
            *o = self.lagrange[q]
                .iter()
                .zip(&moments)
                .map(|(c, mo)| c * mo)
                .sum();
        }
    }

    /// Discretised convolution with the Lorentzian of half-width `width`.
    ///
    /// With `folded`, the grid represents an even function on the mirrored
    /// domain and the operator includes the reflected contribution.
    pub(crate) fn lorentzian_matrix(&self, width: f64, folded: bool) -> DMatrix<f64> {
        let n = self.len();
        let m = PANEL_ORDER;
        let mut mat = DMatrix::zeros(n, n);
        let mut buf = [0.0; PANEL_ORDER];
        for i in 0..n {
            let y = self.nodes[i];
            for p in 0..self.panels() {
                self.panel_weights(p, y, width, &mut buf);
                for q in 0..m {
                    mat[(i, p * m + q)] += buf[q];
                }
                if folded {
                    self.panel_weights(p, -y, width, &mut buf);
                    for q in 0..m {
                        mat[(i, p * m + q)] += buf[q];
                    }
                }
            }
        }
        mat
    }

    /// Panels whose trailing Legendre coefficients of `values` exceed
    /// `rel_tol` times the largest sample magnitude.
    pub(crate) fn unresolved(&self, values: &[f64], rel_tol: f64) -> Vec<bool> {
        let m = PANEL_ORDER;
        let scale = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let tails: Vec<(f64, f64)> = self
            .ref_nodes
            .iter()
            .map(|&t| {
                let (p_last, _) = legendre_with_derivative(m - 1, t);
                let (p_prev, _) = legendre_with_derivative(m - 2, t);
                (p_last, p_prev)
            })
            .collect();
        (0..self.panels())
            .map(|p| {
                let mut c_last = 0.0;
                let mut c_prev = 0.0;
                for q in 0..m {
                    let v = values[p * m + q] * self.ref_weights[q];
                    c_last += v * tails[q].0;
                    c_prev += v * tails[q].1;
                }
                c_last *= (2 * m - 1) as f64 / 2.0;
                c_prev *= (2 * m - 3) as f64 / 2.0;
                c_last.abs() + c_prev.abs() > rel_tol * scale
            })
            .collect()
    }

    /// Split every flagged panel at its midpoint.
    pub(crate) fn refine(&self, flags: &[bool]) -> Result<Self> {
        let mut breaks = vec![self.breaks[0]];
        for (p, w) in self.breaks.windows(2).enumerate() {
            if flags[p] {
                breaks.push(0.5 * (w[0] + w[1]));
            }
            breaks.push(w[1]);
        }
        Self::new(breaks)
    }

    /// Panel-polynomial interpolant of nodal `values` at `x` (clamped to the grid).
    pub(crate) fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        let m = PANEL_ORDER;
        let last = self.panels() - 1;
        let p = match self.breaks.binary_search_by(|b| b.total_cmp(&x)) {
            Ok(k) => k.min(last),
            Err(0) => 0,
            Err(k) => (k - 1).min(last),
        };
        let (a, b) = (self.breaks[p], self.breaks[p + 1]);
        let t = ((2.0 * x - a - b) / (b - a)).clamp(-1.0, 1.0);
        let mut powers = [1.0; PANEL_ORDER];
        for n in 1..m {
            powers[n] = powers[n - 1] * t;
        }
        (0..m)
            .map(|q| {
                let basis: f64 = self.lagrange[q]
                    .iter()
                    .zip(&powers)
                    .map(|(c, tp)| c * tp)
                    .sum();
                basis * values[p * m + q]
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lorentz_integral(y: f64, w: f64, a: f64, b: f64) -> f64 {
        (((b - y) / w).atan() - ((a - y) / w).atan()) / PI
    }

    #[test]
    fn constant_function_is_convolved_exactly() {
        let grid = PanelGrid::uniform(-1.0, 1.0, 10).unwrap();
        for &w in &[1e-6, 1e-3, 0.05, 1.0, 100.0] {
            let mat = grid.lorentzian_matrix(w, false);
            for i in 0..grid.len() {
                let row: f64 = (0..grid.len()).map(|j| mat[(i, j)]).sum();
                let exact = lorentz_integral(grid.nodes()[i], w, -1.0, 1.0);
                assert!(
                    (row - exact).abs() < 1e-13,
                    "w = {w}, i = {i}: {row} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn folded_operator_matches_full_line_operator() {
        let half = PanelGrid::uniform(0.0, 3.0, 6).unwrap();
        let full = PanelGrid::uniform(-3.0, 3.0, 12).unwrap();
        let w = 0.3;
        let even = |x: f64| (-x * x).exp();
        let fh: Vec<f64> = half.nodes().iter().map(|&x| even(x)).collect();
        let ff: Vec<f64> = full.nodes().iter().map(|&x| even(x)).collect();
        let ah = half.lorentzian_matrix(w, true) * nalgebra::DVector::from_vec(fh);
        let af = full.lorentzian_matrix(w, false) * nalgebra::DVector::from_vec(ff);
        for (i, &x) in half.nodes().iter().enumerate() {
            let j = full
                .nodes()
                .iter()
                .position(|&s| (s - x).abs() < 1e-12)
                .unwrap();
            assert!((ah[i] - af[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn interpolation_reproduces_smooth_functions() {
        let grid = PanelGrid::uniform(0.0, 2.0, 8).unwrap();
        let vals: Vec<f64> = grid.nodes().iter().map(|x| x.sin()).collect();
        for k in 0..=40 {
            let x = 2.0 * k as f64 / 40.0;
            assert!((grid.interpolate(&vals, x) - x.sin()).abs() < 1e-10);
        }
    }

    #[test]
    fn refinement_flags_sharp_features_only() {
        let grid = PanelGrid::uniform(0.0, 8.0, 8).unwrap();
        let vals: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|&x| 1.0 / (1.0 + ((x - 5.5) / 0.02).exp()))
            .collect();
        let flags = grid.unresolved(&vals, 1e-10);
        assert!(flags[5]);
        assert!(!flags[0] && !flags[1]);
        let finer = grid.refine(&flags).unwrap();
        assert_eq!(finer.panels(), 8 + flags.iter().filter(|f| **f).count());
    }
}
