//! Damped fixed-point iteration on vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Damping, tolerance and iteration cap for [`solve_fixed_point`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPointConfig {
    damping: f64,
    tol: f64,
    max_iter: usize,
}

impl FixedPointConfig {
    pub fn new(damping: f64, tol: f64, max_iter: usize) -> Result<Self> {
        if !(damping > 0.0 && damping <= 1.0) {
            return Err(Error::Config(format!(
                "damping must lie in (0, 1], got {damping}"
            )));
        }
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        if max_iter == 0 {
            return Err(Error::Config("max_iter must be positive".into()));
        }
        Ok(Self {
            damping,
            tol,
            max_iter,
        })
    }

    pub fn damping(&self) -> f64 {
        self.damping
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }
}

impl Default for FixedPointConfig {
    fn default() -> Self {
        Self {
            damping: 0.5,
            tol: 1e-10,
            max_iter: 5000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointSolution {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Iterate `x <- (1 - d) x + d map(x)` until `sup |x - map(x)| < tol`.
///
/// The returned `x` is the iterate at which the residual was measured.
pub fn solve_fixed_point<F>(
    mut map: F,
    x0: Vec<f64>,
    cfg: &FixedPointConfig,
) -> Result<FixedPointSolution>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    let mut x = x0;
    let mut residual = f64::INFINITY;
    for it in 1..=cfg.max_iter {
        let y = map(&x);
        if y.len() != x.len() {
            return Err(Error::Config("map changed the vector length".into()));
        }
        residual = 0.0;
        for (xi, yi) in x.iter().zip(&y) {
            if !yi.is_finite() {
                return Err(Error::NonFinite("fixed-point map output".into()));
            }
            residual = f64::max(residual, (xi - yi).abs());
        }
        if residual < cfg.tol {
            return Ok(FixedPointSolution {
                x,
                iterations: it,
                residual,
            });
        }
        let d = cfg.damping;
        for (xi, yi) in x.iter_mut().zip(y) {
            *xi += d * (yi - *xi);
        }
    }
    Err(Error::Convergence {
        iterations: cfg.max_iter,
        residual,
    })
}
