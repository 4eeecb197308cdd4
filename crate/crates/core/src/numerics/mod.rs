//! Numerical building blocks shared by the physics modules.

mod diff;
mod fixed_point;
mod quadrature;
mod roots;
mod special;

pub use diff::{derivative, Derivative};
pub use fixed_point::{solve_fixed_point, FixedPointConfig, FixedPointSolution};
pub(crate) use quadrature::legendre_with_derivative;
pub use quadrature::{
    gauss_legendre_reference, integrate, integrate_adaptive, integrate_semi_infinite,
    QuadratureRule,
};
pub use roots::{expand_bracket, find_root};
pub use special::{erf, erf_family, erfc, erfcx, ErfValues};

use crate::error::{Error, Result};

/// Least-squares slope of log|y| against log x.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Config(
            "slope fit needs at least two matching points".into(),
        ));
    }
    if xs.iter().any(|&x| !(x > 0.0)) || ys.iter().any(|&y| y == 0.0 || !y.is_finite()) {
        return Err(Error::Domain(
            "slope fit needs positive x and non-zero finite y".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    linear_slope(&lx, &ly)
}

/// Least-squares slope of y against x.
pub fn linear_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Config(
            "slope fit needs at least two matching points".into(),
        ));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("slope fit needs distinct abscissae".into()));
    }
    Ok(sxy / sxx)
}

/// ln(1 + exp(x)) without overflow.
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// 1 / (1 + exp(x)) without overflow.
pub fn fermi(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}
