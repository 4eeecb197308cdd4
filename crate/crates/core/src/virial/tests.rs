use super::*;
use crate::lieb_liniger::{contact_virial_model, e_res_high_t, LLParams};
use proptest::prelude::*;

#[test]
fn ideal_gas_has_no_corrections() {
    let model = VirialModel::new(3, 2.0, vec![]).unwrap();
    let th = thermo_from_virial(&model, 0.7, 2.0).unwrap();
    assert_eq!(th.pressure, 1.0);
    assert_eq!(th.energy, 1.5);
    assert_eq!(th.energy_shift(), 0.0);
    assert_eq!(internal_pressure(&model, 0.7, 2.0).unwrap(), 0.0);
    let zeros = VirialModel::scale_invariant(2, 2.0, &[0.0, 0.0]).unwrap();
    let th = thermo_from_virial(&zeros, 0.3, 1.0).unwrap();
    assert_eq!((th.pressure, th.energy), (1.0, 1.0));
}

#[test]
fn scale_invariant_second_coefficient_has_no_shift() {
    let model = VirialModel::scale_invariant(3, 2.0, &[0.37]).unwrap();
    let th = thermo_from_virial(&model, 0.05, 1.7).unwrap();
    assert!(th.shift_by_order[0].abs() < 1e-12);
}

#[test]
fn hard_core_anyon_series() {
    // B_{k+1} = T^-k with unit amplitudes, d = 2, alpha = 2.
    let model = VirialModel::scale_invariant(2, 2.0, &[1.0, 1.0, 1.0]).unwrap();
    let (rho, t) = (0.2, 1.3);
    let th = thermo_from_virial(&model, rho, t).unwrap();
    let b = |k: i32| t.powi(-k) * rho.powi(k);
    let entropy: f64 = (1..=3).map(|k| (k as f64 - 1.0) / k as f64 * b(k)).sum();
    let energy: f64 = 1.0 + (1..=3).map(b).sum::<f64>();
    let enthalpy: f64 = 2.0 + 2.0 * (1..=3).map(b).sum::<f64>();
    assert!((th.entropy_excess - entropy).abs() < 1e-12);
    assert!((th.energy - energy).abs() < 1e-12);
    assert!((th.enthalpy - enthalpy).abs() < 1e-12);
    assert!((th.enthalpy - 2.0 * th.energy).abs() < 1e-12);
    assert!((th.energy - th.pressure).abs() < 1e-12);
}

#[test]
fn internal_pressure_of_scale_invariant_models() {
    for (d, alpha) in [(2u32, 2.0), (3, 2.0), (1, 2.0), (3, 1.0)] {
        let model = VirialModel::scale_invariant(d, alpha, &[0.8]).unwrap();
        let (rho, t) = (0.01, 3.0);
        let pi_t = internal_pressure(&model, rho, t).unwrap();
        let dp = excess_pressure(&model, rho, t).unwrap();
        assert!((pi_t + f64::from(d) / alpha * dp).abs() < 1e-10);
    }
}

#[test]
fn contact_gas_virial_shift_matches_closed_form() {
    let (gamma, tau) = (1.0, 100.0);
    let model = contact_virial_model(gamma);
    let th = thermo_from_virial(&model, 1.0, tau).unwrap();
    let from_series = tau * th.energy_shift();
    let closed = e_res_high_t(LLParams::new(gamma, tau).unwrap());
    assert!(
        (from_series - closed).abs() <= 0.01 * closed.abs(),
        "{from_series} vs {closed}"
    );
}

#[test]
fn scale_invariance_report() {
    let inverse_t = VirialModel::scale_invariant(2, 2.0, &[0.5]).unwrap();
    assert!(
        check_scale_invariance(&inverse_t, &[0.5, 2.0, 10.0], 1e-12)
            .unwrap()
            .pass
    );
    let contact = contact_virial_model(1.0);
    let report = check_scale_invariance(&contact, &[1.0, 10.0], 1e-6).unwrap();
    assert!(!report.pass);
    assert!(check_scale_invariance(&contact, &[1.0], 1e-6).is_err());
}

#[test]
fn hard_rods() {
    let free = hardcore_1d(3.0, 0.0, 1.0).unwrap();
    assert_eq!((free.energy, free.shift), (1.5, 0.0));
    let half = hardcore_1d(2.0, 0.5, 1.0).unwrap();
    assert!((half.energy - 0.5).abs() < 1e-15 && (half.shift + 0.5).abs() < 1e-15);
    assert!(hardcore_1d(1.0, 1.0, 1.0).is_err());
}

#[test]
fn isoentropic_identity_and_example() {
    let s = ThermoState {
        energy: 3.0,
        temperature: 2.0,
        volume: 5.0,
    };
    assert_eq!(isoentropic_scale(s, 1.0, 2, 2.0).unwrap(), s);
    let scaled = isoentropic_scale(s, 2.0, 2, 2.0).unwrap();
    assert_eq!(scaled.volume, 20.0);
    assert_eq!(scaled.energy, 0.75);
    assert_eq!(scaled.temperature, 0.5);
    assert_eq!(scaled.energy * scaled.volume, s.energy * s.volume);
    assert!(isoentropic_scale(s, 0.0, 2, 2.0).is_err());
}

fn random_scale_invariant() -> impl Strategy<Value = (u32, f64, Vec<f64>, f64, f64)> {
    (
        1u32..4,
        prop_oneof![Just(1.0), Just(2.0), 0.5f64..3.0],
        prop::collection::vec(-2.0f64..2.0, 1..5),
        1e-3f64..0.5,
        0.1f64..50.0,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scale_invariant_models_have_no_shift_at_any_order((d, alpha, amps, rho, t) in random_scale_invariant()) {
        let model = VirialModel::scale_invariant(d, alpha, &amps).unwrap();
        let th = thermo_from_virial(&model, rho, t).unwrap();
        for s in &th.shift_by_order {
            prop_assert!(s.abs() < 1e-12);
        }
        prop_assert!((th.enthalpy - th.energy - th.pressure).abs() < 1e-12);
        prop_assert!((th.gibbs_excess - th.helmholtz_excess - (th.pressure - 1.0)).abs() < 1e-12);
        if d == 2 && alpha == 2.0 {
            prop_assert!((th.enthalpy - 2.0 * th.energy).abs() < 1e-12);
        }
    }

    #[test]
    fn dilution_is_isoentropic_invariant(d in 1u32..4, alpha in 0.5f64..3.0, s in 0.1f64..10.0, t in 0.1f64..10.0) {
        let state = ThermoState { energy: 1.0, temperature: t, volume: 2.0 };
        let scaled = isoentropic_scale(state, s, d, alpha).unwrap();
        let x0 = dilution(5.0, state.volume, state.temperature, d, alpha);
        let x1 = dilution(5.0, scaled.volume, scaled.temperature, d, alpha);
        prop_assert!((x0 - x1).abs() <= 1e-12 * x0);
        let ev0 = state.energy * state.volume.powf(alpha / f64::from(d));
        let ev1 = scaled.energy * scaled.volume.powf(alpha / f64::from(d));
        prop_assert!((ev0 - ev1).abs() <= 1e-12 * ev0.abs());
    }

    #[test]
    fn hard_rod_shift_is_negative(pl in 0.1f64..10.0, a in 1e-6f64..1.0, rho in 1e-3f64..0.99) {
        prop_assume!(a * rho < 1.0);
        prop_assert!(hardcore_1d(pl, a, rho).unwrap().shift < 0.0);
    }
}
