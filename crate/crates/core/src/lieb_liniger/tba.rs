//! Finite-temperature Yang-Yang equations in units where wave-vectors are
//! measured in `rho` and energies in `k_B T_D = hbar^2 rho^2 / 2m`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::kernel::{PanelGrid, PANEL_ORDER};
use super::LLParams;
use crate::error::{domain, Error, Result};
use crate::numerics::{expand_bracket, fermi, find_root, integrate_adaptive, softplus};

/// Below this reduced temperature the zero-temperature solver should be used.
pub const MIN_TAU: f64 = 1e-3;

const REFINE_TOL: f64 = 1e-8;
const MAX_NEWTON: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TbaConfig {
    /// Relative change in energy per particle accepted between successive grids.
    pub energy_rtol: f64,
    /// Tolerance on the dressed-energy update (sup norm).
    pub dressed_tol: f64,
    /// Accepted deviation of the density normalisation from 1.
    pub normalization_tol: f64,
    /// Minimum number of nodes on the full symmetric grid.
    pub min_nodes: usize,
    /// Refinement stops with an error beyond this many nodes on the full grid.
    pub max_nodes: usize,
}

impl Default for TbaConfig {
    fn default() -> Self {
        Self {
            energy_rtol: 1e-8,
            dressed_tol: 1e-11,
            normalization_tol: 1e-10,
            min_nodes: 201,
            max_nodes: 16_384,
        }
    }
}

impl TbaConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.energy_rtol)
            || !positive(self.dressed_tol)
            || !positive(self.normalization_tol)
        {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if self.min_nodes < 2 || self.max_nodes < self.min_nodes {
            return Err(Error::Config("need 2 <= min_nodes <= max_nodes".into()));
        }
        Ok(())
    }
}

/// Converged thermal state. Grid quantities live on `K >= 0`; all of them are even in `K`.
#[derive(Debug, Clone, Serialize)]
pub struct TbaSolution {
    pub params: LLParams,
    pub mu: f64,
    pub grid: Vec<f64>,
    /// Full-line integration weights (already doubled for the mirrored half).
    pub weights: Vec<f64>,
    pub eps: Vec<f64>,
    pub density: Vec<f64>,
    pub nodes_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observables {
    /// Energy per particle over `k_B T_D`.
    pub energy: f64,
    /// Pressure over `rho k_B T_D`.
    pub pressure: f64,
    /// Interaction shift `energy - pressure / 2`.
    pub e_res: f64,
    pub mu: f64,
    /// Integral of the particle density (should be 1).
    pub normalization: f64,
}

/// Chemical potential of free fermions at unit density and temperature `tau`.
pub fn free_fermion_mu(tau: f64) -> Result<f64> {
    let density = |mu: f64| -> Result<f64> {
        let edge = mu.max(0.0).sqrt();
        let cut = (mu.max(0.0) + 40.0 * tau).sqrt();
        let occ = |k: f64| fermi((k * k - mu) / tau);
        let half = integrate_adaptive(occ, 0.0, edge, 0.0, 1e-12)?
            + integrate_adaptive(occ, edge, cut, 0.0, 1e-12)?;
        Ok(half / PI - 1.0)
    };
    let (lo, hi) = expand_bracket(density, -tau - 1.0, PI * PI + 1.0, 200)?;
    find_root(density, lo, hi, 1e-13, 0.0)
}

/// Chemical potential of the ideal Bose gas at unit density and temperature `tau`.
pub fn ideal_bose_mu(tau: f64) -> Result<f64> {
    // Root in s = ln(-mu).
    let density = |s: f64| -> Result<f64> {
        let m = s.exp();
        let cut = (m + 40.0 * tau).sqrt();
        let f = |k: f64| 1.0 / ((k * k + m) / tau).exp_m1();
        let peak = m.sqrt().min(cut);
        let mut total = integrate_adaptive(f, 0.0, peak, 0.0, 1e-12)?;
        total += integrate_adaptive(f, peak, cut, 0.0, 1e-12)?;
        Ok(total / PI - 1.0)
    };
    let guess = if tau > 4.0 * PI {
        0.5 * tau * (tau / (4.0 * PI)).ln() + 0.5 * tau
    } else {
        0.25 * tau * tau
    };
    let s0 = guess.max(1e-300).ln();
    let (lo, hi) = expand_bracket(density, s0 - 1.0, s0 + 1.0, 200)?;
    Ok(-find_root(density, lo, hi, 1e-13, 0.0)?.exp())
}

struct GridState {
    mu: f64,
    eps: Vec<f64>,
    dressing: Vec<f64>,
}

struct GridSolver<'a> {
    grid: &'a PanelGrid,
    kernel: DMatrix<f64>,
    tau: f64,
    cfg: &'a TbaConfig,
}

impl GridSolver<'_> {
    /// Newton iteration for the dressed energy at fixed `mu`.
    ///
    /// Stops once the step is below tolerance, or once it stalls at the
    /// rounding floor (no longer shrinking while already below sqrt(tol)).
    fn dressed_energy(&self, mu: f64, guess: Vec<f64>) -> Result<Vec<f64>> {
        let tau = self.tau;
        let k = self.grid.nodes();
        let n = k.len();
        let tol = self.cfg.dressed_tol;
        let mut e = guess;
        let mut last_step = f64::INFINITY;
        for _ in 0..MAX_NEWTON {
            let sp = DVector::from_iterator(n, e.iter().map(|v| tau * softplus(-v / tau)));
            let conv = &self.kernel * sp;
            let residual =
                DVector::from_iterator(n, (0..n).map(|i| e[i] - (k[i] * k[i] - mu - conv[i])));
            let step = self
                .jacobian(&e)
                .lu()
                .solve(&residual)
                .ok_or_else(|| Error::Sanity("singular dressed-energy Jacobian".into()))?;
            let size = step.amax();
            if !size.is_finite() {
                return Err(Error::NonFinite("dressed-energy update".into()));
            }
            for (x, s) in e.iter_mut().zip(step.iter()) {
                *x -= s;
            }
            if size < tol || (size < tol.sqrt() && size > 0.25 * last_step) {
                return Ok(e);
            }
            last_step = size;
        }
        Err(Error::Convergence {
            iterations: MAX_NEWTON,
            residual: last_step,
        })
    }

    /// `I - K diag(n)`, shared by the Newton step and the density equation.
    fn jacobian(&self, eps: &[f64]) -> DMatrix<f64> {
        let n = eps.len();
        let occ: Vec<f64> = eps.iter().map(|e| fermi(e / self.tau)).collect();
        let mut jac = -self.kernel.clone();
        for j in 0..n {
            for i in 0..n {
                jac[(i, j)] *= occ[j];
            }
            jac[(j, j)] += 1.0;
        }
        jac
    }

    fn state_at(&self, mu: f64, guess: Vec<f64>) -> Result<GridState> {
        let eps = self.dressed_energy(mu, guess)?;
        let ones = DVector::from_element(eps.len(), 1.0);
        let dressing = self
            .jacobian(&eps)
            .lu()
            .solve(&ones)
            .ok_or_else(|| Error::Sanity("singular density system".into()))?;
        Ok(GridState {
            mu,
            eps,
            dressing: dressing.iter().copied().collect(),
        })
    }

    fn density(&self, s: &GridState) -> Vec<f64> {
        s.eps
            .iter()
            .zip(&s.dressing)
            .map(|(e, d)| fermi(e / self.tau) * d / (2.0 * PI))
            .collect()
    }

    fn normalization(&self, s: &GridState) -> f64 {
        2.0 * self.grid.integrate(&self.density(s))
    }

    /// Find `mu` with unit density, starting from `start` and a bracket guess.
    fn solve(&self, start: GridState, bracket: (f64, f64)) -> Result<GridState> {
        let mut current = start;
        let mut eval = |mu: f64| -> Result<f64> {
            // d = -dE/dmu gives a first-order predictor from the last state.
            let guess: Vec<f64> = current
                .eps
                .iter()
                .zip(&current.dressing)
                .map(|(e, d)| e - (mu - current.mu) * d)
                .collect();
            current = self.state_at(mu, guess)?;
            Ok(self.normalization(&current) - 1.0)
        };
        let (lo, hi) = expand_bracket(&mut eval, bracket.0, bracket.1, 100)?;
        let mu = find_root(
            &mut eval,
            lo,
            hi,
            1e-14 * (1.0 + lo.abs().max(hi.abs())),
            0.1 * self.cfg.normalization_tol,
        )?;
        if current.mu != mu {
            let guess = current
                .eps
                .iter()
                .zip(&current.dressing)
                .map(|(e, d)| e - (mu - current.mu) * d)
                .collect();
            current = self.state_at(mu, guess)?;
        }
        let norm = self.normalization(&current);
        if (norm - 1.0).abs() > self.cfg.normalization_tol {
            return Err(Error::Sanity(format!(
                "density normalisation {norm} differs from 1"
            )));
        }
        Ok(current)
    }
}

fn energy_of(grid: &PanelGrid, density: &[f64]) -> f64 {
    2.0 * grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .zip(density)
        .map(|((k, w), f)| w * k * k * f)
        .sum::<f64>()
}

/// Solve the thermal equations with default settings.
pub fn solve_tba(params: LLParams) -> Result<TbaSolution> {
    solve_tba_with(params, &TbaConfig::default(), None)
}

/// Solve the thermal equations, optionally warm-starting from a nearby solution.
pub fn solve_tba_with(
    params: LLParams,
    cfg: &TbaConfig,
    warm: Option<&TbaSolution>,
) -> Result<TbaSolution> {
    cfg.validate()?;
    let (gamma, tau) = (params.gamma(), params.tau());
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(domain(format!(
            "thermal solver needs a finite positive coupling, got {gamma}; use the analytic ideal-gas limits"
        )));
    }
    if tau < MIN_TAU {
        return Err(domain(format!(
            "reduced temperature {tau} below {MIN_TAU}; use the zero-temperature solver"
        )));
    }
    let mu_hi = free_fermion_mu(tau)?;
    let mu_lo = ideal_bose_mu(tau)?;
    let cutoff = (mu_hi.max(0.0) + 30.0 * tau).sqrt();
    let panels = (cfg.min_nodes / 2).div_ceil(PANEL_ORDER).max(2);
    let mut grid = PanelGrid::uniform(0.0, cutoff, panels)?;

    let interpolate_from = |sol: &TbaSolution, grid: &PanelGrid| -> Result<Vec<f64>> {
        let old = PanelGrid::new(breaks_from(&sol.grid, &sol.weights))?;
        let top = sol.grid[sol.grid.len() - 1];
        Ok(grid
            .nodes()
            .iter()
            .map(|&k| {
                if k <= top {
                    old.interpolate(&sol.eps, k)
                } else {
                    k * k - sol.mu
                }
            })
            .collect())
    };

    let (mut eps0, mut mu0, mut bracket) = match warm {
        Some(w) if w.params.gamma() == gamma => {
            let e = interpolate_from(w, &grid)?;
            let width = 1e-2 * (tau + w.mu.abs());
            (e, w.mu, (w.mu - width, w.mu + width))
        }
        _ => {
            let mid = 0.5 * (mu_lo + mu_hi);
            let e = grid.nodes().iter().map(|k| k * k - mid).collect();
            (e, mid, (mu_lo, mu_hi))
        }
    };
    let mut previous: Option<f64> = None;
    loop {
        let solver = GridSolver {
            grid: &grid,
            kernel: grid.lorentzian_matrix(gamma, true),
            tau,
            cfg,
        };
        let start = solver.state_at(mu0, eps0)?;
        let state = solver.solve(start, bracket)?;
        let density = solver.density(&state);
        let energy = energy_of(&grid, &density);
        let occupation: Vec<f64> = state.eps.iter().map(|e| fermi(e / tau)).collect();
        let mut flags = grid.unresolved(&occupation, REFINE_TOL);
        for (f, g) in flags.iter_mut().zip(grid.unresolved(&density, REFINE_TOL)) {
            *f |= g;
        }
        let settled =
            previous.is_some_and(|p| (energy - p).abs() <= cfg.energy_rtol * energy.abs());
        if settled && !flags.iter().any(|&f| f) {
            return Ok(TbaSolution {
                params,
                mu: state.mu,
                grid: grid.nodes().to_vec(),
                weights: grid.weights().iter().map(|w| 2.0 * w).collect(),
                eps: state.eps,
                density,
                nodes_used: 2 * grid.len(),
            });
        }
        if !flags.iter().any(|&f| f) {
            flags.iter_mut().for_each(|f| *f = true);
        }
        let finer = grid.refine(&flags)?;
        if 2 * finer.len() > cfg.max_nodes {
            return Err(Error::Convergence {
                iterations: 2 * grid.len(),
                residual: previous.map_or(f64::NAN, |p| (energy - p).abs() / energy.abs()),
            });
        }
        let snapshot = TbaSolution {
            params,
            mu: state.mu,
            grid: grid.nodes().to_vec(),
            weights: grid.weights().iter().map(|w| 2.0 * w).collect(),
            eps: state.eps,
            density,
            nodes_used: 2 * grid.len(),
        };
        grid = finer;
        eps0 = interpolate_from(&snapshot, &grid)?;
        mu0 = snapshot.mu;
        let width = 1e-6 * (tau + mu0.abs());
        bracket = (mu0 - width, mu0 + width);
        previous = Some(energy);
    }
}

/// Recover panel breakpoints from Gauss-Legendre nodes and weights laid out panel by panel.
fn breaks_from(nodes: &[f64], weights: &[f64]) -> Vec<f64> {
    let mut breaks = vec![0.0];
    for p in 0..nodes.len() / PANEL_ORDER {
        let width: f64 = weights[p * PANEL_ORDER..(p + 1) * PANEL_ORDER]
            .iter()
            .sum::<f64>()
            / 2.0;
        breaks.push(breaks[p] + width);
    }
    breaks
}

/// Energy, pressure and interaction shift from a converged solution.
pub fn observables(sol: &TbaSolution) -> Observables {
    let tau = sol.params.tau();
    let mut energy = 0.0;
    let mut pressure = 0.0;
    let mut normalization = 0.0;
    for i in 0..sol.grid.len() {
        let w = sol.weights[i];
        let k = sol.grid[i];
        energy += w * k * k * sol.density[i];
        pressure += w * softplus(-sol.eps[i] / tau);
        normalization += w * sol.density[i];
    }
    pressure *= tau / (2.0 * PI);
    Observables {
        energy,
        pressure,
        e_res: energy - 0.5 * pressure,
        mu: sol.mu,
        normalization,
    }
}

/// Interaction shift at finite temperature in units of `k_B T_D`.
///
/// The ideal (`gamma = 0`) and hard-core (`gamma = inf`) limits return 0.
pub fn e_res_finite_t(params: LLParams) -> Result<f64> {
    if params.gamma() == 0.0 || params.gamma() == f64::INFINITY {
        return Ok(0.0);
    }
    Ok(observables(&solve_tba(params)?).e_res)
}
