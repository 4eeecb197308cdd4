//! Second virial coefficient of the repulsive Bose gas and the resulting
//! high-temperature interaction shift.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::LLParams;
use crate::numerics::erfcx;
use crate::virial::{VirialCoefficient, VirialModel};

fn scaled_coupling(params: LLParams) -> f64 {
    params.gamma() / (2.0 * params.tau()).sqrt()
}

/// Dimensionless second virial coefficient `B2 / lambda_T`.
pub fn b2_ll(params: LLParams) -> f64 {
    0.5 * FRAC_1_SQRT_2 - FRAC_1_SQRT_2 * erfcx(scaled_coupling(params))
}

/// Leading high-temperature interaction shift in units of `k_B T_D`.
///
/// Only meaningful for `tau >> 4 pi`; smaller temperatures log a warning.
pub fn e_res_high_t(params: LLParams) -> f64 {
    let (gamma, tau) = (params.gamma(), params.tau());
    if tau < 4.0 * PI {
        log::warn!(
            "high-temperature shift used at tau = {tau}, where the virial expansion is unreliable"
        );
    }
    if gamma == f64::INFINITY {
        return 0.0;
    }
    gamma - (PI / (2.0 * tau)).sqrt() * gamma * gamma * erfcx(scaled_coupling(params))
}

/// Second virial coefficient of the contact-interacting Bose gas in units
/// `hbar^2 / 2m = k_B = 1`, with coupling strength `c` (so `gamma = c / rho`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactB2 {
    pub coupling: f64,
}

impl ContactB2 {
    fn thermal_wavelength(t: f64) -> f64 {
        (4.0 * PI / t).sqrt()
    }

    fn reduced(&self, t: f64) -> (f64, f64) {
        let x = self.coupling * self.coupling / (2.0 * t);
        let s = x.sqrt();
        let b = 0.5 * FRAC_1_SQRT_2 - FRAC_1_SQRT_2 * erfcx(s);
        // d b / d x
        let db = if s == 0.0 {
            f64::INFINITY
        } else {
            -FRAC_1_SQRT_2 * (erfcx(s) - 1.0 / (s * PI.sqrt()))
        };
        (b, db)
    }
}

impl VirialCoefficient for ContactB2 {
    fn value(&self, t: f64) -> f64 {
        Self::thermal_wavelength(t) * self.reduced(t).0
    }

    fn t_derivative(&self, t: f64) -> f64 {
        let lambda = Self::thermal_wavelength(t);
        let (b, db) = self.reduced(t);
        let x = self.coupling * self.coupling / (2.0 * t);
        if x == 0.0 {
            return -0.5 * lambda * b / t;
        }
        -0.5 * lambda * b / t - lambda * db * x / t
    }
}

/// Second-order virial model of the contact-interacting Bose gas (d = 1, quadratic dispersion).
pub fn contact_virial_model(coupling: f64) -> VirialModel {
    VirialModel::new(1, 2.0, vec![Box::new(ContactB2 { coupling })]).expect("valid built-in model")
}
