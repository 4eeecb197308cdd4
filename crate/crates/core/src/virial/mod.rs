//! Virial-expansion thermodynamics in `d` dimensions with dispersion
//! `E ~ p^alpha`, scale-invariance diagnostics, and the high-temperature
//! boundedness classifier for the interaction energy shift.

mod classify;
mod scaling;

use serde::Serialize;

use crate::error::{domain, Error, Result};

pub use classify::{
    classify_shift, ExpansionTerm, ShiftClassification, SmallBetaExpansion, Verdict,
};
pub use scaling::{
    check_scale_invariance, dilution, hardcore_1d, isoentropic_scale, HardCoreEnergy, OrderScaling,
    ScalingReport, ThermoState,
};

/// One virial coefficient `B_{k+1}(T)` with its temperature derivative.
pub trait VirialCoefficient: Send + Sync {
    fn value(&self, t: f64) -> f64;
    fn t_derivative(&self, t: f64) -> f64;
}

/// `B(T) = amplitude * T^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLaw {
    pub amplitude: f64,
    pub exponent: f64,
}

impl VirialCoefficient for PowerLaw {
    fn value(&self, t: f64) -> f64 {
        self.amplitude * t.powf(self.exponent)
    }

    fn t_derivative(&self, t: f64) -> f64 {
        if self.exponent == 0.0 {
            return 0.0;
        }
        self.amplitude * self.exponent * t.powf(self.exponent - 1.0)
    }
}

/// Coefficients `B_2, B_3, ...` of a gas in `dimension` dimensions.
pub struct VirialModel {
    dimension: u32,
    dispersion: f64,
    coefficients: Vec<Box<dyn VirialCoefficient>>,
}

impl std::fmt::Debug for VirialModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VirialModel")
            .field("dimension", &self.dimension)
            .field("dispersion", &self.dispersion)
            .field("orders", &self.coefficients.len())
            .finish()
    }
}

impl VirialModel {
    /// `coefficients[k - 1]` is `B_{k+1}`, multiplying `rho^k`.
    pub fn new(
        dimension: u32,
        dispersion: f64,
        coefficients: Vec<Box<dyn VirialCoefficient>>,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(domain("dimension must be positive"));
        }
        if !(dispersion > 0.0) || !dispersion.is_finite() {
            return Err(domain(format!(
                "dispersion exponent must be positive, got {dispersion}"
            )));
        }
        Ok(Self {
            dimension,
            dispersion,
            coefficients,
        })
    }

    /// Scale-invariant model `B_{k+1} = a_k T^{-d k / alpha}`.
    pub fn scale_invariant(dimension: u32, dispersion: f64, amplitudes: &[f64]) -> Result<Self> {
        let d = f64::from(dimension);
        let coefficients = amplitudes
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                Box::new(PowerLaw {
                    amplitude: a,
                    exponent: -d * (i + 1) as f64 / dispersion,
                }) as Box<dyn VirialCoefficient>
            })
            .collect();
        Self::new(dimension, dispersion, coefficients)
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn dispersion(&self) -> f64 {
        self.dispersion
    }

    pub fn orders(&self) -> usize {
        self.coefficients.len()
    }

    /// Ideal-gas energy per particle in units of `k_B T`.
    pub fn ideal_energy(&self) -> f64 {
        f64::from(self.dimension) / self.dispersion
    }

    fn evaluate(&self, t: f64) -> Result<Vec<(f64, f64)>> {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (b, db) = (c.value(t), c.t_derivative(t));
                if b.is_finite() && db.is_finite() {
                    Ok((b, db))
                } else {
                    Err(Error::NonFinite(format!(
                        "virial coefficient B_{} at T = {t}",
                        i + 2
                    )))
                }
            })
            .collect()
    }
}

/// Per-particle thermodynamics in units of `k_B T` (entropy in `k_B`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VirialThermo {
    /// `P V / N k_B T`
    pub pressure: f64,
    /// Helmholtz free energy minus its ideal part.
    pub helmholtz_excess: f64,
    /// Gibbs free energy minus its ideal part.
    pub gibbs_excess: f64,
    /// `(S - S_ideal) / N k_B`
    pub entropy_excess: f64,
    pub energy: f64,
    pub enthalpy: f64,
    /// `(E - (d/alpha) P V) / N k_B T` contributed by each order `rho^k`.
    pub shift_by_order: Vec<f64>,
}

impl VirialThermo {
    /// `(E - (d/alpha) P V) / N k_B T`
    pub fn energy_shift(&self) -> f64 {
        self.shift_by_order.iter().sum()
    }
}

fn check_state(rho: f64, t: f64) -> Result<()> {
    if !(rho >= 0.0) || !rho.is_finite() {
        return Err(domain(format!("density must be non-negative, got {rho}")));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("temperature must be positive, got {t}")));
    }
    Ok(())
}

/// Evaluate the truncated virial series at density `rho` and temperature `t`.
///
/// The ideal energy is `d/alpha` per particle, reducing to `d/2` for quadratic dispersion.
pub fn thermo_from_virial(model: &VirialModel, rho: f64, t: f64) -> Result<VirialThermo> {
    check_state(rho, t)?;
    let ideal = model.ideal_energy();
    let mut out = VirialThermo {
        pressure: 1.0,
        helmholtz_excess: 0.0,
        gibbs_excess: 0.0,
        entropy_excess: 0.0,
        energy: ideal,
        enthalpy: ideal + 1.0,
        shift_by_order: Vec::with_capacity(model.orders()),
    };
    let mut rho_k = 1.0;
    for (i, (b, db)) in model.evaluate(t)?.into_iter().enumerate() {
        let k = (i + 1) as f64;
        rho_k *= rho;
        let b_term = b * rho_k;
        let db_term = t * db * rho_k / k;
        out.pressure += b_term;
        out.helmholtz_excess += b_term / k;
        out.gibbs_excess += (k + 1.0) / k * b_term;
        out.entropy_excess -= b_term / k + db_term;
        out.energy -= db_term;
        out.enthalpy += b_term - db_term;
        out.shift_by_order.push(-db_term - ideal * b_term);
    }
    Ok(out)
}

/// Excess pressure `delta P = rho k_B T sum_k B_{k+1} rho^k`.
pub fn excess_pressure(model: &VirialModel, rho: f64, t: f64) -> Result<f64> {
    check_state(rho, t)?;
    let mut rho_k = 1.0;
    let mut sum = 0.0;
    for (b, _) in model.evaluate(t)? {
        rho_k *= rho;
        sum += b * rho_k;
    }
    Ok(rho * t * sum)
}

/// Internal pressure `T (dP/dT)_V - P = rho k_B T^2 sum_k B'_{k+1} rho^k`.
pub fn internal_pressure(model: &VirialModel, rho: f64, t: f64) -> Result<f64> {
    check_state(rho, t)?;
    let mut rho_k = 1.0;
    let mut sum = 0.0;
    for (_, db) in model.evaluate(t)? {
        rho_k *= rho;
        sum += db * rho_k;
    }
    Ok(rho * t * t * sum)
}

#[cfg(test)]
mod tests;
