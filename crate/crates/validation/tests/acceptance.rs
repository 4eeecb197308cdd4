//! Numbered acceptance checks. Prints one PASS/FAIL line per check and exits
//! non-zero if any check fails.

use std::f64::consts::{E, FRAC_1_SQRT_2, PI};
use std::path::PathBuf;
use std::time::Duration;

use gasshift_cli::{run_sweep, RunConfig, SweepSpec};
use gasshift_core::anyon_abelian::{
    b2_hardcore, b2_softcore, e_rel_abelian, e_rel_semion, ExtensionSign, SoftCoreBC,
};
use gasshift_core::anyon_nacs::{b2_nacs_general, b2_nacs_isotropic, e_rel_nacs, NacsSystem};
use gasshift_core::lieb_liniger::{
    b2_ll, contact_virial_model, e_res_finite_t, e_res_high_t, e_res_zero_t, solve_ground_state,
    LLParams,
};
use gasshift_core::numerics::{integrate_adaptive, linear_slope, loglog_slope};
use gasshift_core::virial::{
    classify_shift, thermo_from_virial, ExpansionTerm, SmallBetaExpansion, VirialModel,
};
use gasshift_validation::{geomspace, golden_section_max, local_maxima, Check, Report};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn plus(eps: f64) -> SoftCoreBC {
    SoftCoreBC::new(ExtensionSign::Plus, eps).expect("valid parameter")
}

fn ground_state_endpoints() -> Check {
    let strong = solve_ground_state(1e4).map_err(err)?.energy;
    let weak = solve_ground_state(0.01).map_err(err)?.energy / 0.01;
    let strong_dev = (strong / (PI * PI / 3.0) - 1.0).abs();
    let weak_dev = (weak - 1.0).abs();
    Ok((
        strong_dev < 5e-3 && weak_dev < 0.1,
        format!("E(1e4)/(pi^2/3) - 1 = {strong_dev:.3e} (< 5e-3), E(0.01)/0.01 = {weak:.6} (|.-1| < 0.1)"),
    ))
}

fn shift_maximum() -> Check {
    let (g, e) = golden_section_max(e_res_zero_t, 1.0, 10.0, 1e-3).map_err(err)?;
    Ok((
        (4.5..=4.9).contains(&g),
        format!("argmax gamma = {g:.4} in [4.5, 4.9], max shift {e:.6}"),
    ))
}

fn shift_curves() -> Check {
    let gammas = geomspace(1e-3, 1e4, 57);
    let mut notes = vec![];
    let mut pass = true;
    for tau in [0.0, 0.1, 0.5, 1.0, 2.0] {
        let ys = gammas
            .iter()
            .map(|&g| {
                if tau == 0.0 {
                    e_res_zero_t(g)
                } else {
                    e_res_finite_t(LLParams::new(g, tau)?)
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let positive = ys.iter().all(|&y| y > 0.0);
        let (lo, hi) = (ys[0], ys[ys.len() - 1]);
        let maxima = local_maxima(&ys);
        let ok = positive && lo.abs() < 1e-2 && hi.abs() < 1e-2 && maxima.len() == 1;
        pass &= ok;
        let peak = maxima.first().map_or(f64::NAN, |&i| gammas[i]);
        notes.push(format!(
            "tau={tau}: {}ends {lo:.1e}/{hi:.1e}, {} max(es) near {peak:.3}",
            if positive { "" } else { "NON-POSITIVE, " },
            maxima.len()
        ));
    }
    Ok((pass, notes.join("; ")))
}

fn high_t_saturation() -> Check {
    let mut worst: (f64, f64, f64) = (0.0, 0.0, 0.0);
    for g in [0.1, 0.3, 1.0, 3.0, 10.0] {
        for m in [1e2, 1e3, 1e4, 1e6] {
            let tau = m * g * g;
            let dev = (e_res_high_t(LLParams::new(g, tau).map_err(err)?) / g - 1.0).abs();
            if dev > worst.0 {
                worst = (dev, g, m);
            }
        }
    }
    let at_100 = (e_res_high_t(LLParams::new(1.0, 100.0).map_err(err)?) - 1.0).abs();
    Ok((
        worst.0 < 1e-2,
        format!(
            "max |e/gamma - 1| = {:.4e} at gamma={}, tau={:.0e} gamma^2 (needs < 1e-2); at tau = 100 gamma^2 it is {at_100:.4e}",
            worst.0, worst.1, worst.2
        ),
    ))
}

fn ll_b2_endpoints() -> Check {
    let ideal_exact = [0.1, 1.0, 10.0, 1e3]
        .iter()
        .map(|&tau| LLParams::new(0.0, tau).map(b2_ll))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?
        .iter()
        .all(|&b| b == -0.5 * FRAC_1_SQRT_2);
    let tau: f64 = 1.0;
    let gamma = (2e4 * tau).sqrt();
    let dev = (b2_ll(LLParams::new(gamma, tau).map_err(err)?) - 0.5 * FRAC_1_SQRT_2).abs();
    Ok((
        ideal_exact && dev < 1e-3,
        format!("b2(0, tau) == -1/(2 sqrt 2): {ideal_exact}; |b2 - 1/(2 sqrt 2)| at gamma^2/2tau = 1e4: {dev:.4e} (< 1e-3)"),
    ))
}

fn tba_vs_virial() -> Check {
    let mut notes = vec![];
    let mut pass = true;
    for tau in [50.0, 100.0, 200.0] {
        let p = LLParams::new(1.0, tau).map_err(err)?;
        let (exact, virial) = (e_res_finite_t(p).map_err(err)?, e_res_high_t(p));
        let rel = (exact - virial).abs() / virial;
        pass &= rel < 0.05;
        notes.push(format!(
            "tau={tau}: {exact:.6} vs {virial:.6} ({:.2}%)",
            100.0 * rel
        ));
    }
    Ok((pass, notes.join("; ")))
}

fn abelian_hard_core() -> Check {
    let got = [0.0, 0.5, 1.0].map(|a| b2_hardcore(a).unwrap_or(f64::NAN));
    Ok((
        got == [-0.25, 0.125, 0.25],
        format!("{got:?} == [-1/4, 1/8, 1/4]"),
    ))
}

fn fermionic_point() -> Check {
    let e = |eps: f64| e_rel_abelian(1.0, plus(eps), 1.0);
    let mut worst = 0.0f64;
    for eps in [1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 30.0] {
        worst = worst.max((e(eps).map_err(err)? / (2.0 * eps * (-eps).exp()) - 1.0).abs());
    }
    let (x, peak) = golden_section_max(e, 0.1, 5.0, 1e-9).map_err(err)?;
    let small = geomspace(1e-6, 1e-3, 7);
    let small_slope = loglog_slope(
        &small,
        &small
            .iter()
            .map(|&x| e(x))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?,
    )
    .map_err(err)?;
    let large: Vec<f64> = (0..7).map(|i| 40.0 + 5.0 * i as f64).collect();
    let logs = large
        .iter()
        .map(|&x| e(x).map(f64::ln))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let large_slope = linear_slope(&large, &logs).map_err(err)?;
    let pass = worst < 1e-10
        && (peak - 2.0 / E).abs() < 1e-6
        && (x - 1.0).abs() < 1e-6
        && (small_slope - 1.0).abs() < 0.01
        && (large_slope + 1.0).abs() < 0.05;
    Ok((
        pass,
        format!(
            "max rel dev from 2 eps e^-eps {worst:.1e}; max {peak:.9} at eps={x:.7} (2/e = {:.9}); log-log slope on [1e-6,1e-3] {small_slope:.5}; d ln e/d eps on [40,70] {large_slope:.4}",
            2.0 / E
        ),
    ))
}

fn semion_closed_form() -> Check {
    let mut worst = 0.0f64;
    for sign in [ExtensionSign::Plus, ExtensionSign::Minus] {
        for eps in [0.01, 1.0, 100.0] {
            let bc = SoftCoreBC::new(sign, eps).map_err(err)?;
            let closed = e_rel_semion(bc, 1.0).map_err(err)?;
            let quad = e_rel_abelian(0.5, bc, 1.0).map_err(err)?;
            worst = worst.max(((closed - quad) / quad).abs());
        }
    }
    let (s, peak) = golden_section_max(
        |s: f64| e_rel_semion(plus(s.exp()), 1.0),
        (1e-3f64).ln(),
        (1e2f64).ln(),
        1e-8,
    )
    .map_err(err)?;
    Ok((
        worst < 1e-8 && (peak - 0.14).abs() <= 0.01,
        format!("max rel err {worst:.2e} (< 1e-8); sigma=+1 maximum {peak:.5} at eps={:.4} (0.14 +- 0.01)", s.exp()),
    ))
}

fn thermodynamic_consistency() -> Check {
    // Fixed kappa: eps = eps0 / T and lambda_T^2 ~ 1 / T, so with T0 = 1 and unit dilution
    // B2(T) = b2(eps0 / T) / T and e_rel = -(B2 + T dB2/dT) at T = 1.
    let h = 1e-4;
    let mut worst = 0.0f64;
    for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for eps0 in [0.1, 1.0, 10.0] {
            let b2 = |t: f64| b2_softcore(alpha, plus(eps0 / t)).map(|b| b.value / t);
            let (bp, bm, b0) = (
                b2(1.0 + h).map_err(err)?,
                b2(1.0 - h).map_err(err)?,
                b2(1.0).map_err(err)?,
            );
            let fd = -(b0 + (bp - bm) / (2.0 * h));
            let direct = e_rel_abelian(alpha, plus(eps0), 1.0).map_err(err)?;
            worst = worst.max(((fd - direct) / direct).abs());
        }
    }
    Ok((
        worst < 1e-5,
        format!("max rel err on 5x3 grid {worst:.2e} (< 1e-5)"),
    ))
}

fn nacs_hard_core() -> Check {
    let b = b2_nacs_general(&NacsSystem::hard_core(3, 1).map_err(err)?).map_err(err)?;
    let rel = (b + 1.0 / 24.0).abs() * 24.0;
    Ok((
        rel < 1e-14,
        format!(
            "{b:.17e} vs -1/24 = {:.17e}, rel diff {rel:.1e} (floating-point exact: < 1e-14)",
            -1.0 / 24.0
        ),
    ))
}

/// `-(1/24){1 + (p/pi) int e^{-eps t}[q t^{-1/2}/(1+t) + t^{-5/6}/(1+sqrt3 t^{1/6}+t^{1/3})] dt}`
/// evaluated with `t = s^6`, which makes the integrand smooth.
fn nacs_integral_form(eps: f64, p: f64, q: f64) -> Result<f64, String> {
    let upper = (42.0 / eps).powf(1.0 / 6.0);
    let f = |s: f64| {
        let s2 = s * s;
        (-eps * s2 * s2 * s2).exp()
            * (6.0 * q * s2 / (1.0 + s2 * s2 * s2) + 6.0 / (1.0 + 3f64.sqrt() * s + s2))
    };
    let integral = integrate_adaptive(f, 0.0, upper, 1e-15, 1e-14).map_err(err)?;
    Ok(-(1.0 + p / PI * integral) / 24.0)
}

fn nacs_printed_integral() -> Check {
    let mut worst = 0.0f64;
    let mut notes = vec![];
    for eps in [0.1, 1.0, 10.0] {
        let sys = NacsSystem::isotropic(3, 1, eps, ExtensionSign::Plus).map_err(err)?;
        let b = b2_nacs_isotropic(&sys).map_err(err)?;
        let printed = nacs_integral_form(eps, 4.0, 6.0)?;
        let rederived = nacs_integral_form(eps, 3.0, 2.0)?;
        worst = worst.max(((b - printed) / printed).abs());
        notes.push(format!(
            "eps={eps}: {b:.8} vs printed {printed:.8} (rederived 3/pi, 2t^-1/2 form: rel {:.1e})",
            ((b - rederived) / rederived).abs()
        ));
    }
    Ok((
        worst < 1e-8,
        format!(
            "max rel err vs printed integral {worst:.3e}; {}",
            notes.join("; ")
        ),
    ))
}

fn nacs_tails() -> Check {
    let e = |eps: f64| -> Result<f64, String> {
        e_rel_nacs(
            &NacsSystem::isotropic(3, 1, eps, ExtensionSign::Plus).map_err(err)?,
            1.0,
        )
        .map_err(err)
    };
    let slope = |a: f64, b: f64| -> Result<f64, String> {
        let xs = geomspace(a, b, 7);
        let ys = xs.iter().map(|&x| e(x)).collect::<Result<Vec<_>, _>>()?;
        loglog_slope(&xs, &ys).map_err(err)
    };
    let (lo, hi) = (slope(1e-6, 1e-3)?, slope(1e3, 1e6)?);
    let v = e(1e5)?;
    let pass = (lo - 0.15).abs() <= 0.03 && (hi + 0.15).abs() <= 0.03 && (0.01..=0.03).contains(&v);
    Ok((
        pass,
        format!("slopes {lo:+.4} on [1e-6,1e-3], {hi:+.4} on [1e3,1e6] (+-0.15 +- 0.03); e_rel(1e5) = {v:.5} (2e-2 +- 50%)"),
    ))
}

fn scale_invariance_equivalence() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5ca1e);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let d = rng.random_range(1..=3u32);
        let alpha = rng.random_range(0.5..3.0);
        let n = rng.random_range(1..=4usize);
        let amps: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let (rho, t) = (rng.random_range(1e-3..0.5), rng.random_range(0.1..50.0));
        let model = VirialModel::scale_invariant(d, alpha, &amps).map_err(err)?;
        let th = thermo_from_virial(&model, rho, t).map_err(err)?;
        worst = th.shift_by_order.iter().fold(worst, |w, s| w.max(s.abs()));
    }
    // gamma = c / rho = 1
    let ll = thermo_from_virial(&contact_virial_model(1.0), 1.0, 1.0)
        .map_err(err)?
        .energy_shift();
    Ok((
        worst < 1e-12 && ll.abs() > 1e-6,
        format!("max |shift| per order over 20 models {worst:.1e} (< 1e-12); contact model at gamma=1: {ll:.6}"),
    ))
}

fn term(coefficient: f64, power: f64, log_power: u32) -> ExpansionTerm {
    ExpansionTerm {
        coefficient,
        power,
        log_power,
    }
}

fn classifier_brute_force() -> Check {
    let shapes = [
        (
            1u32,
            vec![term(-0.886, 0.5, 0), term(0.5, 1.0, 0), term(0.02, 1.5, 0)],
            1.5,
        ),
        (2, vec![term(0.3, 1.0, 0), term(-0.1, 2.0, 0)], 2.0),
        (
            3,
            vec![term(-0.2, 1.5, 0), term(0.4, 1.0, 0), term(0.05, 2.0, 0)],
            2.0,
        ),
    ];
    let mut pass = true;
    let mut notes = vec![];
    for (d, terms, remainder_order) in shapes {
        let exp = SmallBetaExpansion {
            terms: terms.clone(),
            remainder_order,
        };
        let limit = classify_shift(&exp, d)
            .map_err(err)?
            .limit_value
            .ok_or("shape not classified as bounded")?;
        let f = |x: f64| {
            terms
                .iter()
                .map(|t| t.coefficient * x.powf(t.power))
                .sum::<f64>()
        };
        let scale = terms
            .iter()
            .fold(limit.abs(), |m, t| m.max(t.coefficient.abs()));
        let mut devs = vec![];
        for t in [1e2, 1e4, 1e6] {
            let x = 1.0 / t;
            let h = 1e-4 * x;
            let e = (f(x + h) - f(x - h)) / (2.0 * h) - 0.5 * f64::from(d) * f(x) / x;
            devs.push((e - limit).abs() / scale);
        }
        pass &= devs.iter().all(|&v| v < 1e-2);
        notes.push(format!(
            "d={d}: limit {limit:+.4}, rel devs {:.1e}/{:.1e}/{:.1e}",
            devs[0], devs[1], devs[2]
        ));
    }
    Ok((pass, notes.join("; ")))
}

fn cli_determinism() -> Check {
    let path =
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../sweeps/ll_shift_vs_coupling.toml");
    let spec = SweepSpec::load(&path).map_err(err)?;
    let cfg = RunConfig::default();
    let a = run_sweep(&spec, &cfg).map_err(err)?;
    let b = run_sweep(&spec, &cfg).map_err(err)?;
    let (ca, cb) = (a.to_csv().map_err(err)?, b.to_csv().map_err(err)?);
    Ok((
        ca == cb && a.failures() == 0,
        format!(
            "{} rows, {} bytes, identical: {}, failed rows: {}",
            a.rows.len(),
            ca.len(),
            ca == cb,
            a.failures()
        ),
    ))
}

fn main() {
    let mut r = Report::default();
    r.run(
        1,
        "ground-state energy endpoints",
        secs(5),
        ground_state_endpoints,
    );
    r.run(2, "zero-temperature shift maximum", secs(60), shift_maximum);
    r.run(
        3,
        "finite-temperature shift curves",
        secs(600),
        shift_curves,
    );
    r.run(
        4,
        "high-temperature shift saturation",
        secs(1),
        high_t_saturation,
    );
    r.run(5, "contact-gas B2 endpoints", secs(1), ll_b2_endpoints);
    r.run(
        6,
        "thermal solver vs virial shift",
        secs(120),
        tba_vs_virial,
    );
    r.run(7, "abelian hard-core B2", None, abelian_hard_core);
    r.run(8, "fermionic-point shift", None, fermionic_point);
    r.run(9, "semion closed form", None, semion_closed_form);
    r.run(
        10,
        "shift from B2 temperature derivative",
        None,
        thermodynamic_consistency,
    );
    r.run(11, "non-abelian hard-core B2", None, nacs_hard_core);
    r.run(
        12,
        "non-abelian B2 vs integral form",
        None,
        nacs_printed_integral,
    );
    r.run(
        13,
        "non-abelian shift power-law tails",
        secs(120),
        nacs_tails,
    );
    r.run(
        14,
        "scale invariance equivalence",
        None,
        scale_invariance_equivalence,
    );
    r.run(
        15,
        "boundedness classifier vs brute force",
        None,
        classifier_brute_force,
    );
    r.run(16, "sweep output determinism", None, cli_determinism);
    let failed = r.failed();
    println!(
        "{} of {} checks passed",
        r.outcomes.len() - failed.len(),
        r.outcomes.len()
    );
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
