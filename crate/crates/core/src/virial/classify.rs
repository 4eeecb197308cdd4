//! High-temperature boundedness of the interaction energy shift from the
//! small-beta shape of `B_2`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// `coefficient * beta^power * (ln beta)^log_power`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    pub coefficient: f64,
    pub power: f64,
    #[serde(default)]
    pub log_power: u32,
}

/// `B_2(beta) = sum of terms + o(beta^remainder_order)` as `beta -> 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallBetaExpansion {
    pub terms: Vec<ExpansionTerm>,
    pub remainder_order: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Unbounded,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftClassification {
    pub verdict: Verdict,
    /// `lim_{T -> inf} e_res / rho`, present only when bounded.
    pub limit_value: Option<f64>,
}

impl ShiftClassification {
    fn bounded(limit: f64) -> Self {
        Self {
            verdict: Verdict::Bounded,
            limit_value: Some(limit),
        }
    }

    fn other(verdict: Verdict) -> Self {
        Self {
            verdict,
            limit_value: None,
        }
    }
}

const POWER_EPS: f64 = 1e-12;

/// Classify `e_res / rho = dB_2/dbeta - (d/2) B_2 / beta` as `beta -> 0`
/// for quadratic dispersion in `dimension` dimensions.
///
/// A term `c beta^p L^m` (with `L = ln beta`) contributes
/// `c beta^(p-1) [(p - d/2) L^m + m L^(m-1)]`.
pub fn classify_shift(
    expansion: &SmallBetaExpansion,
    dimension: u32,
) -> Result<ShiftClassification> {
    if dimension == 0 {
        return Err(domain("dimension must be positive"));
    }
    let half_d = f64::from(dimension) / 2.0;
    let mut limit = 0.0;
    let mut unbounded = false;
    for term in &expansion.terms {
        let (c, p, m) = (term.coefficient, term.power, term.log_power);
        if !c.is_finite() || !p.is_finite() {
            return Ok(ShiftClassification::other(Verdict::Indeterminate));
        }
        if c == 0.0 || p > 1.0 + POWER_EPS {
            continue;
        }
        let at_half_d = (p - half_d).abs() < POWER_EPS;
        let at_one = (p - 1.0).abs() < POWER_EPS;
        match (at_one, at_half_d, m) {
            (_, true, 0) => {}
            (true, false, 0) => limit += (1.0 - half_d) * c,
            (true, true, 1) => limit += c,
            _ => unbounded = true,
        }
    }
    if unbounded {
        return Ok(ShiftClassification::other(Verdict::Unbounded));
    }
    if expansion.remainder_order < 1.0 - POWER_EPS {
        return Ok(ShiftClassification::other(Verdict::Indeterminate));
    }
    Ok(ShiftClassification::bounded(limit))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(coefficient: f64, power: f64, log_power: u32) -> ExpansionTerm {
        ExpansionTerm {
            coefficient,
            power,
            log_power,
        }
    }

    /// Brute-force e_res / rho from the shape at beta = 1 / T.
    fn brute_force(exp: &SmallBetaExpansion, d: u32, t: f64) -> f64 {
        let x = 1.0 / t;
        let half_d = f64::from(d) / 2.0;
        exp.terms
            .iter()
            .map(|tm| {
                let l = x.ln();
                let lm = if tm.log_power == 0 {
                    1.0
                } else {
                    l.powi(tm.log_power as i32)
                };
                let lm1 = if tm.log_power == 0 {
                    0.0
                } else {
                    tm.log_power as f64 * l.powi(tm.log_power as i32 - 1)
                };
                tm.coefficient * x.powf(tm.power - 1.0) * ((tm.power - half_d) * lm + lm1)
            })
            .sum()
    }

    fn shapes() -> Vec<(SmallBetaExpansion, u32)> {
        vec![
            (
                SmallBetaExpansion {
                    terms: vec![term(-0.7, 0.5, 0), term(0.4, 1.0, 0), term(0.2, 1.5, 0)],
                    remainder_order: 1.5,
                },
                1,
            ),
            (
                SmallBetaExpansion {
                    terms: vec![term(0.3, 1.0, 1), term(1.1, 2.0, 0)],
                    remainder_order: 2.0,
                },
                2,
            ),
            (
                SmallBetaExpansion {
                    terms: vec![term(-0.25, 1.0, 0)],
                    remainder_order: 2.0,
                },
                2,
            ),
            (
                SmallBetaExpansion {
                    terms: vec![term(0.8, 1.0, 0), term(0.1, 1.5, 0)],
                    remainder_order: 2.0,
                },
                3,
            ),
        ]
    }

    #[test]
    fn bounded_limits_agree_with_brute_force() {
        for (exp, d) in shapes() {
            let cls = classify_shift(&exp, d).unwrap();
            assert_eq!(cls.verdict, Verdict::Bounded);
            let limit = cls.limit_value.unwrap();
            let far = brute_force(&exp, d, 1e6);
            assert!(
                (far - limit).abs() <= 0.01 * limit.abs().max(1e-3),
                "d = {d}: {far} vs {limit}"
            );
            for t in [1e2, 1e4, 1e6] {
                assert!(brute_force(&exp, d, t).is_finite());
            }
        }
    }

    #[test]
    fn documented_limits() {
        let d1 = SmallBetaExpansion {
            terms: vec![term(-0.5, 0.5, 0), term(0.6, 1.0, 0)],
            remainder_order: 1.5,
        };
        assert_eq!(classify_shift(&d1, 1).unwrap().limit_value, Some(0.3));
        let d3 = SmallBetaExpansion {
            terms: vec![term(0.6, 1.0, 0)],
            remainder_order: 1.5,
        };
        assert_eq!(classify_shift(&d3, 3).unwrap().limit_value, Some(-0.3));
        let d2 = SmallBetaExpansion {
            terms: vec![term(0.6, 1.0, 1)],
            remainder_order: 1.5,
        };
        assert_eq!(classify_shift(&d2, 2).unwrap().limit_value, Some(0.6));
    }

    #[test]
    fn divergent_and_unknown_shapes() {
        let sqrt_in_2d = SmallBetaExpansion {
            terms: vec![term(1.0, 0.5, 0)],
            remainder_order: 1.0,
        };
        let c = classify_shift(&sqrt_in_2d, 2).unwrap();
        assert_eq!(c.verdict, Verdict::Unbounded);
        assert_eq!(c.limit_value, None);
        let log_in_1d = SmallBetaExpansion {
            terms: vec![term(1.0, 1.0, 1)],
            remainder_order: 2.0,
        };
        assert_eq!(
            classify_shift(&log_in_1d, 1).unwrap().verdict,
            Verdict::Unbounded
        );
        let weak_remainder = SmallBetaExpansion {
            terms: vec![term(1.0, 1.0, 0)],
            remainder_order: 0.5,
        };
        assert_eq!(
            classify_shift(&weak_remainder, 3).unwrap().verdict,
            Verdict::Indeterminate
        );
    }
}
