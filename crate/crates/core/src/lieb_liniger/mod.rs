//! The one-dimensional Bose gas with repulsive contact interactions.

mod ground_state;
mod high_temp;
pub(crate) mod kernel;
mod tba;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub use ground_state::{
    e_res_zero_t, solve_ground_state, GroundState, GroundStateSolver, TONKS_ENERGY,
};
pub use high_temp::{b2_ll, contact_virial_model, e_res_high_t, ContactB2};
pub use tba::{
    e_res_finite_t, free_fermion_mu, ideal_bose_mu, observables, solve_tba, solve_tba_with,
    Observables, TbaConfig, TbaSolution, MIN_TAU,
};

/// Dimensionless coupling `gamma = m g / (hbar^2 rho)` and reduced
/// temperature `tau = T / T_D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LLParams {
    gamma: f64,
    tau: f64,
}

impl LLParams {
    /// `gamma` may be 0 or infinite (analytic limits); `tau` must be positive and finite.
    pub fn new(gamma: f64, tau: f64) -> Result<Self> {
        if gamma.is_nan() || gamma < 0.0 {
            return Err(domain(format!(
                "coupling must be non-negative, got {gamma}"
            )));
        }
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(domain(format!(
                "reduced temperature must be positive and finite, got {tau}"
            )));
        }
        Ok(Self { gamma, tau })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}
