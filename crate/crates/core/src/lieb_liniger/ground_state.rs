//! Zero-temperature solution of the Lieb integral equation.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::kernel::PanelGrid;
use crate::error::{domain, Error, Result};
use crate::numerics::{derivative, expand_bracket, find_root};

/// Tonks-Girardeau ground-state energy per particle, pi^2/3.
pub const TONKS_ENERGY: f64 = PI * PI / 3.0;

#[derive(Debug, Clone, Serialize)]
pub struct GroundState {
    pub gamma: f64,
    /// Rescaled Fermi rapidity: `gamma * int g`.
    pub lambda: f64,
    /// Dimensionless energy per particle, `E / (N hbar^2 rho^2 / 2m)`.
    pub energy: f64,
    /// Grid on [0, 1]; the rapidity density is even.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub density: Vec<f64>,
}

/// Lieb equation solver on a fixed panel grid, so that nearby couplings
/// share their discretisation error (needed for smooth derivatives).
#[derive(Debug, Clone)]
pub struct GroundStateSolver {
    grid: PanelGrid,
}

fn lambda_estimate(gamma: f64) -> f64 {
    (0.5 * gamma.sqrt()).min(gamma / PI)
}

/// Panels on [0, 1] graded geometrically toward the endpoint, where the
/// solution has branch points a distance `lambda` off the real axis.
fn graded_breaks(lambda: f64, splits: u32) -> Vec<f64> {
    let max_width = 0.25;
    let mut from_edge = vec![0.0];
    let mut width = (0.5 * lambda).min(max_width);
    while from_edge[from_edge.len() - 1] + width < 1.0 - 1e-12 {
        from_edge.push(from_edge[from_edge.len() - 1] + width);
        width = (2.0 * width).min(max_width);
    }
    from_edge.push(1.0);
    let mut breaks: Vec<f64> = from_edge.iter().rev().map(|d| 1.0 - d).collect();
    breaks[0] = 0.0;
    for _ in 0..splits {
        let mut finer = vec![breaks[0]];
        for w in breaks.windows(2) {
            finer.push(0.5 * (w[0] + w[1]));
            finer.push(w[1]);
        }
        breaks = finer;
    }
    breaks
}

struct Discrete {
    density: Vec<f64>,
    norm: f64,
}

impl GroundStateSolver {
    /// Build a grid adapted to `gamma`, splitting panels until the energy is
    /// stable to 1e-12 relative.
    pub fn for_gamma(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        let lambda = lambda_estimate(gamma);
        let mut previous: Option<f64> = None;
        for splits in 0..5 {
            let solver = Self {
                grid: PanelGrid::new(graded_breaks(lambda, splits))?,
            };
            let e = solver.solve(gamma)?.energy;
            if let Some(p) = previous {
                if (e - p).abs() <= 1e-12 * p.abs().max(1e-300) {
                    return Ok(solver);
                }
            }
            previous = Some(e);
        }
        Err(Error::Convergence {
            iterations: 5,
            residual: f64::NAN,
        })
    }

    pub fn nodes(&self) -> usize {
        self.grid.len()
    }

    fn discrete(&self, lambda: f64) -> Result<Discrete> {
        let n = self.grid.len();
        let a = self.grid.lorentzian_matrix(lambda, true);
        let system = DMatrix::identity(n, n) - a;
        let rhs = DVector::from_element(n, 0.5 / PI);
        let g = system
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Sanity("singular Lieb system".into()))?;
        let density: Vec<f64> = g.iter().copied().collect();
        let norm = 2.0 * self.grid.integrate(&density);
        Ok(Discrete { density, norm })
    }

    pub fn solve(&self, gamma: f64) -> Result<GroundState> {
        check_gamma(gamma)?;
        let target = gamma.ln();
        let mismatch = |s: f64| -> Result<f64> {
            let lambda = s.exp();
            let d = self.discrete(lambda)?;
            Ok((lambda / d.norm).ln() - target)
        };
        let s0 = lambda_estimate(gamma).ln();
        let (lo, hi) = expand_bracket(mismatch, s0 - 0.5, s0 + 0.5, 60)?;
        let s = find_root(mismatch, lo, hi, 1e-15, 0.0)?;
        let lambda = s.exp();
        let d = self.discrete(lambda)?;
        let second: f64 = 2.0
            * self
                .grid
                .nodes()
                .iter()
                .zip(self.grid.weights())
                .zip(&d.density)
                .map(|((t, w), g)| w * t * t * g)
                .sum::<f64>();
        let energy = (gamma / lambda).powi(3) * second;
        if !(0.0..=TONKS_ENERGY * (1.0 + 1e-10)).contains(&energy) {
            return Err(Error::Sanity(format!(
                "ground-state energy {energy} outside [0, pi^2/3] at gamma = {gamma}"
            )));
        }
        Ok(GroundState {
            gamma,
            lambda,
            energy,
            nodes: self.grid.nodes().to_vec(),
            weights: self.grid.weights().to_vec(),
            density: d.density,
        })
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(domain(format!(
            "coupling must be positive and finite, got {gamma}"
        )));
    }
    Ok(())
}

/// Ground state at coupling `gamma` on an automatically chosen grid.
pub fn solve_ground_state(gamma: f64) -> Result<GroundState> {
    GroundStateSolver::for_gamma(gamma)?.solve(gamma)
}

/// Zero-temperature interaction energy shift `gamma * dE/dgamma / 2`, in units
/// of `hbar^2 rho^2 / 2m`.
///
/// Differentiates in `ln gamma` with a relative step of 1e-3 on one fixed grid.
/// Returns 0 for the ideal (`gamma = 0`) and hard-core (`gamma = inf`) limits.
pub fn e_res_zero_t(gamma: f64) -> Result<f64> {
    if gamma == 0.0 || gamma == f64::INFINITY {
        return Ok(0.0);
    }
    check_gamma(gamma)?;
    let solver = GroundStateSolver::for_gamma(gamma)?;
    let d = derivative(
        |s| solver.solve(s.exp()).map(|g| g.energy),
        gamma.ln(),
        1e-3,
    )?;
    Ok(0.5 * d.value)
}
