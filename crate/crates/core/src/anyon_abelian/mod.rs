//! Two-dimensional abelian anyons: second virial coefficient and the
//! relative interaction energy shift under hard-core and soft-core
//! two-body boundary conditions.

mod integrals;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numerics::erfcx;

use integrals::{scattering_integral, sin_pi, ScatteringWeight};

/// Largest `eps` for which the attractive-branch bound-state weight `e^eps` is evaluated.
pub const MAX_BOUND_EPS: f64 = 700.0;

/// Statistical parameter `alpha = 2 j + delta` with integer `j` and `|delta| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatisticsParameter {
    alpha: f64,
    winding: i64,
    reduced: f64,
}

impl StatisticsParameter {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(domain(format!(
                "statistical parameter must be finite, got {alpha}"
            )));
        }
        let winding = (alpha / 2.0).round();
        Ok(Self {
            alpha,
            winding: winding as i64,
            reduced: alpha - 2.0 * winding,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    /// `delta`, in [-1, 1].
    pub fn reduced(&self) -> f64 {
        self.reduced
    }

    /// `|delta|`, in [0, 1]; all observables depend only on this.
    pub fn magnitude(&self) -> f64 {
        self.reduced.abs()
    }
}

/// Sign of the self-adjoint extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtensionSign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl ExtensionSign {
    pub fn from_int(sigma: i32) -> Result<Self> {
        match sigma {
            1 => Ok(Self::Plus),
            -1 => Ok(Self::Minus),
            other => Err(domain(format!(
                "extension sign must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
        }
    }
}

/// Soft-core boundary condition: extension sign and hard-core parameter
/// `eps = kappa^2 / (M k_B T)`. `eps = inf` with the plus sign is the hard-core limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SoftCoreBC {
    sign: ExtensionSign,
    eps: f64,
}

impl SoftCoreBC {
    pub fn new(sign: ExtensionSign, eps: f64) -> Result<Self> {
        if eps.is_nan() || eps < 0.0 {
            return Err(domain(format!(
                "hard-core parameter must be non-negative, got {eps}"
            )));
        }
        if eps.is_infinite() && sign == ExtensionSign::Minus {
            return Err(domain(
                "the attractive branch has no hard-core limit (eps = inf needs sign +1)",
            ));
        }
        Ok(Self { sign, eps })
    }

    pub fn hard_core() -> Self {
        Self {
            sign: ExtensionSign::Plus,
            eps: f64::INFINITY,
        }
    }

    pub fn sign(&self) -> ExtensionSign {
        self.sign
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn is_hard_core(&self) -> bool {
        self.eps == f64::INFINITY
    }

    /// Same sign, different hard-core parameter.
    pub fn with_eps(&self, eps: f64) -> Result<Self> {
        Self::new(self.sign, eps)
    }

    fn bound_weight(&self) -> Result<f64> {
        match self.sign {
            ExtensionSign::Plus => Ok(0.0),
            ExtensionSign::Minus if self.eps > MAX_BOUND_EPS => Err(domain(format!(
                "bound-state weight exp({}) overflows",
                self.eps
            ))),
            ExtensionSign::Minus => Ok(self.eps.exp()),
        }
    }
}

/// Second virial coefficient in units of `lambda_T^2`, with its decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct B2Value {
    pub value: f64,
    pub hard_core: f64,
    pub bound_state: f64,
    pub scattering: f64,
}

/// Hard-core second virial coefficient `-1/4 + |delta| - delta^2 / 2` (units of `lambda_T^2`).
pub fn b2_hardcore(alpha: f64) -> Result<f64> {
    let a = StatisticsParameter::new(alpha)?.magnitude();
    Ok(-0.25 + a - 0.5 * a * a)
}

const INTEGER_EPS: f64 = 1e-14;

/// `(sigma / pi) sin(pi a) int_0^inf e^{-eps t} t^{a-1+shift} / D(t^a) dt` with the
/// integer endpoints taken analytically.
fn scattering_term(a: f64, bc: SoftCoreBC, weight: ScatteringWeight) -> Result<f64> {
    let sigma = bc.sign.value();
    let eps = bc.eps;
    if a < INTEGER_EPS {
        return Ok(0.0);
    }
    if 1.0 - a < INTEGER_EPS {
        // The denominator (1 - sigma t)^2 becomes singular only for sigma = +1,
        // where the vanishing sine leaves a delta function at t = 1.
        return Ok(match bc.sign {
            ExtensionSign::Plus => (-eps).exp(),
            ExtensionSign::Minus => 0.0,
        });
    }
    let integral = scattering_integral(a, sigma, eps, weight)?;
    Ok(sigma / PI * sin_pi(a) * integral)
}

/// Soft-core second virial coefficient in units of `lambda_T^2`.
pub fn b2_softcore(alpha: f64, bc: SoftCoreBC) -> Result<B2Value> {
    let a = StatisticsParameter::new(alpha)?.magnitude();
    let hard_core = b2_hardcore(alpha)?;
    if bc.is_hard_core() {
        return Ok(B2Value {
            value: hard_core,
            hard_core,
            bound_state: 0.0,
            scattering: 0.0,
        });
    }
    let bound_state = -2.0 * bc.bound_weight()?;
    let scattering = -2.0 * scattering_term(a, bc, ScatteringWeight::Virial)?;
    Ok(B2Value {
        value: hard_core + bound_state + scattering,
        hard_core,
        bound_state,
        scattering,
    })
}

fn check_dilution(dilution: f64) -> Result<()> {
    if !(dilution >= 0.0) || !dilution.is_finite() {
        return Err(domain(format!(
            "dilution must be non-negative and finite, got {dilution}"
        )));
    }
    Ok(())
}

/// Relative interaction shift `(E - P A) / (N k_B T)` to first order in the dilution `rho lambda_T^2`.
pub fn e_rel_abelian(alpha: f64, bc: SoftCoreBC, dilution: f64) -> Result<f64> {
    check_dilution(dilution)?;
    let a = StatisticsParameter::new(alpha)?.magnitude();
    let eps = bc.eps;
    if bc.is_hard_core() || eps == 0.0 {
        return Ok(0.0);
    }
    let bracket = -bc.bound_weight()? + scattering_term(a, bc, ScatteringWeight::Energy)?;
    Ok(2.0 * dilution * eps * bracket)
}

/// Closed form of [`e_rel_abelian`] at `alpha = 1/2`.
pub fn e_rel_semion(bc: SoftCoreBC, dilution: f64) -> Result<f64> {
    check_dilution(dilution)?;
    let eps = bc.eps;
    if bc.is_hard_core() {
        return Ok(0.0);
    }
    let root = eps.sqrt();
    let per_unit = match bc.sign {
        ExtensionSign::Plus => (eps / PI).sqrt() - eps * erfcx(root),
        ExtensionSign::Minus => eps * (erfcx(root) - 2.0 * bc.bound_weight()?) - (eps / PI).sqrt(),
    };
    Ok(dilution * per_unit)
}

/// Dilute compressibility factor `1 - (1 - 4|delta| + 2 delta^2) x / 4` of hard-core anyons.
pub fn y_dilute(x: f64, alpha: f64) -> Result<f64> {
    check_dilution(x)?;
    let a = StatisticsParameter::new(alpha)?.magnitude();
    Ok(1.0 - 0.25 * (1.0 - 4.0 * a + 2.0 * a * a) * x)
}
