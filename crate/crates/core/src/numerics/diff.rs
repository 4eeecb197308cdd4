//! Central differences with one level of Richardson extrapolation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub error: f64,
}

/// First derivative of `f` at `x` with step `h = scale * max(|x|, 1)`.
///
/// The error estimate adds the Richardson correction, a fourth-difference
/// term that picks up noise in `f`, and a rounding term.
pub fn derivative<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    x: f64,
    scale: f64,
) -> Result<Derivative> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Config(format!(
            "step scale must be positive, got {scale}"
        )));
    }
    let h = scale * x.abs().max(1.0);
    let f_p1 = f(x + h)?;
    let f_m1 = f(x - h)?;
    let f_p2 = f(x + 0.5 * h)?;
    let f_m2 = f(x - 0.5 * h)?;
    let f_0 = f(x)?;
    let coarse = (f_p1 - f_m1) / (2.0 * h);
    let fine = (f_p2 - f_m2) / h;
    let value = (4.0 * fine - coarse) / 3.0;
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("derivative at x = {x}")));
    }
    let magnitude = f_p1.abs().max(f_m1.abs()).max(f_p2.abs()).max(f_m2.abs());
    let rounding = 16.0 * f64::EPSILON * magnitude / h;
    let fourth = (f_m1 - 4.0 * f_m2 + 6.0 * f_0 - 4.0 * f_p2 + f_p1).abs() / h;
    Ok(Derivative {
        value,
        error: (value - fine).abs() + fourth + rounding,
    })
}
