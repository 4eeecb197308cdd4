//! Non-abelian Chern-Simons particles: per-channel reduction to abelian
//! anyons, the second virial coefficient with a general soft-core parameter
//! matrix, and the relative interaction energy shift.

use serde::{Deserialize, Serialize};

use crate::anyon_abelian::{b2_softcore, e_rel_abelian, ExtensionSign, SoftCoreBC};
use crate::error::{domain, Result};

/// Chern-Simons level `k`, isospin `l` (stored as `2l`), and the matrix
/// `eps[j][jz + j]` of hard-core parameters for `j = 0..=2l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NacsSystem {
    level: i64,
    twice_isospin: u32,
    eps: Vec<Vec<f64>>,
    sign: ExtensionSign,
}

impl NacsSystem {
    pub fn new(
        level: i64,
        twice_isospin: u32,
        eps: Vec<Vec<f64>>,
        sign: ExtensionSign,
    ) -> Result<Self> {
        if level == 0 {
            return Err(domain("Chern-Simons level must be a non-zero integer"));
        }
        let channels = twice_isospin as usize + 1;
        if eps.len() != channels {
            return Err(domain(format!(
                "expected {channels} rows of hard-core parameters, got {}",
                eps.len()
            )));
        }
        for (j, row) in eps.iter().enumerate() {
            if row.len() != 2 * j + 1 {
                return Err(domain(format!(
                    "row j = {j} needs {} entries, got {}",
                    2 * j + 1,
                    row.len()
                )));
            }
            for &e in row {
                // Validates sign/sentinel combinations.
                SoftCoreBC::new(sign, e)?;
            }
        }
        Ok(Self {
            level,
            twice_isospin,
            eps,
            sign,
        })
    }

    /// Every channel shares the same hard-core parameter.
    pub fn isotropic(
        level: i64,
        twice_isospin: u32,
        eps: f64,
        sign: ExtensionSign,
    ) -> Result<Self> {
        let rows = (0..=twice_isospin as usize)
            .map(|j| vec![eps; 2 * j + 1])
            .collect();
        Self::new(level, twice_isospin, rows, sign)
    }

    /// Hard-core boundary conditions in every channel.
    pub fn hard_core(level: i64, twice_isospin: u32) -> Result<Self> {
        Self::isotropic(level, twice_isospin, f64::INFINITY, ExtensionSign::Plus)
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn isospin(&self) -> f64 {
        f64::from(self.twice_isospin) / 2.0
    }

    pub fn sign(&self) -> ExtensionSign {
        self.sign
    }

    pub fn eps_matrix(&self) -> &[Vec<f64>] {
        &self.eps
    }

    /// Number of `(j, jz)` entries, `(2l + 1)^2`.
    pub fn channel_count(&self) -> usize {
        self.eps.iter().map(Vec::len).sum()
    }

    /// The common hard-core parameter, if the matrix is uniform.
    pub fn uniform_eps(&self) -> Option<f64> {
        let first = self.eps[0][0];
        self.eps
            .iter()
            .flatten()
            .all(|&e| e == first)
            .then_some(first)
    }

    fn normalization(&self) -> f64 {
        let n = f64::from(self.twice_isospin) + 1.0;
        1.0 / (n * n)
    }
}

/// Effective abelian parameters of the two-body channel with total isospin `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Channel {
    pub j: u32,
    pub omega: f64,
    /// Reduced parameter used with bosonic parity.
    pub delta: f64,
    /// Reduced parameter used with fermionic parity.
    pub gamma: f64,
    /// Parity-selected reduced parameter.
    pub nu: f64,
    pub bosonic: f64,
    pub fermionic: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelWeights {
    pub channels: Vec<Channel>,
}

/// `x - 2 floor(x / 2)`, in [0, 2).
fn mod2(x: f64) -> f64 {
    x - 2.0 * (x / 2.0).floor()
}

pub fn channel_weights(sys: &NacsSystem) -> ChannelWeights {
    let two_l = f64::from(sys.twice_isospin);
    // 2 l (l + 1) = (2l)(2l + 2) / 2
    let casimir_pair = 0.5 * two_l * (two_l + 2.0);
    let channels = (0..=sys.twice_isospin)
        .map(|j| {
            let jf = f64::from(j);
            let omega = (jf * (jf + 1.0) - casimir_pair) / sys.level as f64;
            let bosonic = if (j + sys.twice_isospin).is_multiple_of(2) {
                1.0
            } else {
                0.0
            };
            Channel {
                j,
                omega,
                delta: mod2(omega + 1.0) - 1.0,
                gamma: mod2(omega) - 1.0,
                nu: mod2(omega - bosonic) - 1.0,
                bosonic,
                fermionic: 1.0 - bosonic,
            }
        })
        .collect();
    ChannelWeights { channels }
}

/// Second virial coefficient in units of `lambda_T^2` for an arbitrary
/// parameter matrix, summed over `j` ascending then `jz` ascending.
pub fn b2_nacs_general(sys: &NacsSystem) -> Result<f64> {
    let weights = channel_weights(sys);
    let mut total = 0.0;
    for (ch, row) in weights.channels.iter().zip(&sys.eps) {
        for &eps in row {
            let bc = SoftCoreBC::new(sys.sign, eps)?;
            if ch.bosonic != 0.0 {
                total += ch.bosonic * b2_softcore(ch.delta, bc)?.value;
            }
            if ch.fermionic != 0.0 {
                total += ch.fermionic * b2_softcore(ch.gamma, bc)?.value;
            }
        }
    }
    Ok(sys.normalization() * total)
}

fn require_uniform(sys: &NacsSystem) -> Result<SoftCoreBC> {
    let eps = sys
        .uniform_eps()
        .ok_or_else(|| domain("isotropic formula needs a uniform hard-core parameter matrix"))?;
    SoftCoreBC::new(sys.sign, eps)
}

/// `(2l+1)^-2 sum_j (2j+1) B2(nu_j)` for a uniform parameter matrix.
pub fn b2_nacs_isotropic(sys: &NacsSystem) -> Result<f64> {
    let bc = require_uniform(sys)?;
    let mut total = 0.0;
    for ch in channel_weights(sys).channels {
        total += f64::from(2 * ch.j + 1) * b2_softcore(ch.nu, bc)?.value;
    }
    Ok(sys.normalization() * total)
}

/// Relative interaction shift for a uniform parameter matrix, first order in the dilution.
pub fn e_rel_nacs(sys: &NacsSystem, dilution: f64) -> Result<f64> {
    let bc = require_uniform(sys)?;
    let mut total = 0.0;
    for ch in channel_weights(sys).channels {
        total += f64::from(2 * ch.j + 1) * e_rel_abelian(ch.nu, bc, dilution)?;
    }
    Ok(sys.normalization() * total)
}

/// Channel-by-channel relative shift for a non-uniform matrix.
///
/// An extension of the isotropic formula, to which it reduces for uniform matrices.
pub fn e_rel_nacs_anisotropic(sys: &NacsSystem, dilution: f64) -> Result<f64> {
    let weights = channel_weights(sys);
    let mut total = 0.0;
    for (ch, row) in weights.channels.iter().zip(&sys.eps) {
        for &eps in row {
            let bc = SoftCoreBC::new(sys.sign, eps)?;
            if ch.bosonic != 0.0 {
                total += ch.bosonic * e_rel_abelian(ch.delta, bc, dilution)?;
            }
            if ch.fermionic != 0.0 {
                total += ch.fermionic * e_rel_abelian(ch.gamma, bc, dilution)?;
            }
        }
    }
    Ok(sys.normalization() * total)
}
