//! Error function family with an overflow-safe scaled complement.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErfValues {
    pub erf: f64,
    pub erfc: f64,
    /// exp(x^2) * erfc(x)
    pub erfcx: f64,
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

const DIRECT_LIMIT: f64 = 5.0;

/// Scaled complementary error function exp(x^2) erfc(x).
///
/// Direct product up to x = 5, Laplace continued fraction beyond; the
/// reflection `2 exp(x^2) - erfcx(-x)` covers negative arguments.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 * (x * x).exp() - erfcx(-x);
    }
    if x <= DIRECT_LIMIT {
        return (x * x).exp() * libm::erfc(x);
    }
    if x.is_infinite() {
        return 0.0;
    }
    let mut t = x;
    for k in (1..=80).rev() {
        t = x + 0.5 * k as f64 / t;
    }
    1.0 / (PI.sqrt() * t)
}

pub fn erf_family(x: f64) -> ErfValues {
    ErfValues {
        erf: erf(x),
        erfc: erfc(x),
        erfcx: erfcx(x),
    }
}
