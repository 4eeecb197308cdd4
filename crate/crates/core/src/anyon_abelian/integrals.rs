//! Scattering integrals `int_0^inf e^{-eps t} t^{a-1} w(t) / (1 + 2 s cos(pi a) t^a + t^{2a}) dt`
//! with `w = 1` (virial) or `w = t` (energy).
//!
//! With `u = t^a` the integral becomes `(1/a) int_0^inf e^{-eps u^{1/a}} w / D(u) du`;
//! the half `u > 1` is mapped to `v = 1/u`, which leaves the same denominator
//! on [0, 1]. The returned value omits the `1/a` factor.

use std::f64::consts::PI;

use crate::error::Result;
use crate::numerics::{gauss_legendre_reference, integrate_adaptive};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ScatteringWeight {
    Virial,
    Energy,
}

const REL_TOL: f64 = 1e-13;

/// `x e^{-eps x}` or `e^{-eps x}` without 0 * inf.
fn damped(x: f64, eps: f64, weight: ScatteringWeight) -> f64 {
    let arg = eps * x;
    if arg > 745.0 || x.is_infinite() {
        return 0.0;
    }
    let e = (-arg).exp();
    match weight {
        ScatteringWeight::Virial => e,
        ScatteringWeight::Energy => x * e,
    }
}

/// A cut point held both as `u` and as `z = u - 1`, each to full relative accuracy.
#[derive(Debug, Clone, Copy)]
struct Cut {
    u: f64,
    z: f64,
}

impl Cut {
    /// The point `u = e^l`.
    fn from_log(l: f64) -> Self {
        Cut {
            u: l.exp(),
            z: l.exp_m1(),
        }
    }
}

/// Sorted, de-duplicated cuts on [0, 1] including both ends and 1/2.
fn pieces(mut cuts: Vec<Cut>) -> Vec<Cut> {
    cuts.extend([
        Cut { u: 0.0, z: -1.0 },
        Cut { u: 0.5, z: -0.5 },
        Cut { u: 1.0, z: 0.0 },
    ]);
    cuts.retain(|c| (0.0..=1.0).contains(&c.u) && (-1.0..=0.0).contains(&c.z));
    cuts.sort_by(|a, b| a.u.total_cmp(&b.u).then(a.z.total_cmp(&b.z)));
    cuts.dedup_by(|a, b| a.u == b.u && a.z == b.z);
    cuts
}

/// Sum the integrals of `f` over `spans`, largest first, so that pieces that
/// are negligible next to the total converge against an absolute floor.
fn integrate_spans<F: FnMut(usize, f64) -> f64>(
    mut f: F,
    spans: &[(usize, f64, f64)],
) -> Result<f64> {
    let (nodes, weights) = gauss_legendre_reference(8)?;
    let rough = |f: &mut F, &(k, a, b): &(usize, f64, f64)| {
        let (h, m) = (0.5 * (b - a), 0.5 * (a + b));
        nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * h * f(k, m + h * x))
            .sum::<f64>()
            .abs()
    };
    let mut order: Vec<(f64, usize)> = spans
        .iter()
        .enumerate()
        .map(|(i, s)| (rough(&mut f, s), i))
        .collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut total = 0.0f64;
    for (_, i) in order {
        let (k, a, b) = spans[i];
        let floor = (1e-3 * REL_TOL * total.abs()).max(1e-300);
        total += integrate_adaptive(|y| f(k, y), a, b, floor, REL_TOL)?;
    }
    Ok(total)
}

/// `sin(pi a)` for `a` in [0, 1], accurate near both ends.
pub(crate) fn sin_pi(a: f64) -> f64 {
    (PI * a.min(1.0 - a)).sin()
}

/// Multiples of `1 / eps` bracketing the switch-off of `x e^{-eps x}`.
const X_CUTS: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 40.0];

pub(crate) fn scattering_integral(
    a: f64,
    sigma: f64,
    eps: f64,
    weight: ScatteringWeight,
) -> Result<f64> {
    let s2 = sin_pi(a).powi(2);
    let inv_a = 1.0 / a;
    // 1 + sigma cos(pi a) by half-angle formulas; the denominator minimum sits at u = 1 - gap.
    let gap = if sigma > 0.0 {
        2.0 * (0.5 * PI * (1.0 - a)).sin().powi(2)
    } else {
        2.0 * (0.5 * PI * a).sin().powi(2)
    };
    let c = gap - 1.0;
    // Cuts where x = k / eps on the direct half and on the mirrored half.
    let mut spans: Vec<(usize, f64, f64)> = vec![];
    for (half, sign) in [(0, 1.0), (1, -1.0)] {
        let cuts = pieces(
            X_CUTS
                .iter()
                .map(|k| Cut::from_log(sign * a * (k / eps).ln()))
                .chain([Cut {
                    u: 1.0 - gap,
                    z: -gap,
                }])
                .collect(),
        );
        for w in cuts.windows(2) {
            // Below 1/2 integrate in u itself (tag 2 * half), above in z = u - 1.
            if w[1].u <= 0.5 {
                spans.push((2 * half, w[0].u, w[1].u));
            } else {
                spans.push((2 * half + 1, w[0].z, w[1].z));
            }
        }
    }
    // In z the denominator (u + c)^2 + sin^2 is (z + gap)^2 + sin^2 and ln u = ln(1 + z),
    // which stay accurate where u^(1/a) is steep or the peak is narrow.
    integrate_spans(
        |tag, y| {
            let (ln_u, w) = if tag % 2 == 0 {
                (y.ln(), y + c)
            } else {
                (y.ln_1p(), y + gap)
            };
            let x = if tag < 2 {
                (ln_u * inv_a).exp()
            } else {
                (-ln_u * inv_a).exp()
            };
            damped(x, eps, weight) / (w * w + s2)
        },
        &spans,
    )
}
