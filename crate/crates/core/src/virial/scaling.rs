//! Scale-invariance checks, isoentropic scaling and the one-dimensional
//! hard-core gas.

use serde::Serialize;

use super::VirialModel;
use crate::error::{domain, Result};

/// Macroscopic state used by [`isoentropic_scale`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermoState {
    pub energy: f64,
    pub temperature: f64,
    pub volume: f64,
}

/// Apply `V -> s^d V`, `E -> s^-alpha E`, `T -> s^-alpha T`.
pub fn isoentropic_scale(
    state: ThermoState,
    factor: f64,
    dimension: u32,
    dispersion: f64,
) -> Result<ThermoState> {
    if !(factor > 0.0) || !factor.is_finite() {
        return Err(domain(format!(
            "scale factor must be positive, got {factor}"
        )));
    }
    let shrink = factor.powf(-dispersion);
    Ok(ThermoState {
        energy: state.energy * shrink,
        temperature: state.temperature * shrink,
        volume: state.volume * factor.powi(dimension as i32),
    })
}

/// Dilution `rho lambda_T^d` with `lambda_T = T^(-1/alpha)` in natural units.
pub fn dilution(
    particles: f64,
    volume: f64,
    temperature: f64,
    dimension: u32,
    dispersion: f64,
) -> f64 {
    particles / volume * temperature.powf(-f64::from(dimension) / dispersion)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardCoreEnergy {
    pub energy: f64,
    pub shift: f64,
}

/// Energy and interaction shift of 1d hard rods of length `core` from the
/// product `P L`: `E = P L (1 - a rho) / 2`.
pub fn hardcore_1d(pressure_length: f64, core: f64, rho: f64) -> Result<HardCoreEnergy> {
    if !(core >= 0.0) || !(rho >= 0.0) {
        return Err(domain("core size and density must be non-negative"));
    }
    let packing = core * rho;
    if packing >= 1.0 {
        return Err(domain(format!(
            "excluded length a rho = {packing} fills the box"
        )));
    }
    Ok(HardCoreEnergy {
        energy: 0.5 * pressure_length * (1.0 - packing),
        shift: -0.5 * pressure_length * packing,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderScaling {
    /// Power of density multiplying the coefficient (`B_{k+1}` multiplies `rho^k`).
    pub order: usize,
    /// `B_{k+1}(T) T^{d k / alpha}` at each sample.
    pub scaled: Vec<f64>,
    pub max_relative_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub orders: Vec<OrderScaling>,
    pub pass: bool,
}

/// Verify `B_{k+1}(T) T^{d k / alpha}` is constant over the samples, order by order.
pub fn check_scale_invariance(
    model: &VirialModel,
    temperatures: &[f64],
    rel_tol: f64,
) -> Result<ScalingReport> {
    if temperatures.len() < 2 {
        return Err(domain("need at least two temperature samples"));
    }
    if temperatures.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
        return Err(domain("temperatures must be positive and finite"));
    }
    let d = f64::from(model.dimension());
    let mut orders = Vec::with_capacity(model.orders());
    for (i, coeff) in model.coefficients.iter().enumerate() {
        let k = (i + 1) as f64;
        let scaled: Vec<f64> = temperatures
            .iter()
            .map(|&t| coeff.value(t) * t.powf(d * k / model.dispersion()))
            .collect();
        let reference = scaled[0];
        let spread = scaled
            .iter()
            .fold(0.0f64, |acc, v| acc.max((v - reference).abs()));
        let magnitude = scaled.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let max_relative_deviation = if magnitude == 0.0 {
            0.0
        } else {
            spread / magnitude
        };
        let finite = scaled.iter().all(|v| v.is_finite());
        orders.push(OrderScaling {
            order: i + 1,
            scaled,
            max_relative_deviation,
            pass: finite && max_relative_deviation <= rel_tol,
        });
    }
    let pass = orders.iter().all(|o| o.pass);
    Ok(ScalingReport { orders, pass })
}
