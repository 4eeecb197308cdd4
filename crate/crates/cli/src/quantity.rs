//! Quantities a sweep can evaluate: parameter names, output columns, and the
//! per-point library call.

use gasshift_core::anyon_abelian::{
    b2_softcore, e_rel_abelian, e_rel_semion, ExtensionSign, SoftCoreBC,
};
use gasshift_core::anyon_nacs::{b2_nacs_general, e_rel_nacs_anisotropic, NacsSystem};
use gasshift_core::lieb_liniger::{
    b2_ll, contact_virial_model, e_res_high_t, e_res_zero_t, observables, solve_ground_state,
    solve_tba_with, LLParams,
};
use gasshift_core::virial::{
    classify_shift, internal_pressure, thermo_from_virial, ExpansionTerm, SmallBetaExpansion,
    Verdict, VirialModel,
};
use gasshift_core::Error as CoreError;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::spec::{FixedValue, SweepSpec};
use crate::table::{Cell, Column};
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    LlShift,
    LlB2,
    LlTba,
    LlGround,
    AnyonB2,
    AnyonShift,
    AnyonSemion,
    NacsB2,
    NacsShift,
    VirialThermo,
    Classify,
}

/// Numeric input; `default: None` means it must be swept or fixed.
#[derive(Debug, Clone, Copy)]
pub struct Param {
    pub name: &'static str,
    pub unit: &'static str,
    pub default: Option<f64>,
}

const fn req(name: &'static str, unit: &'static str) -> Param {
    Param {
        name,
        unit,
        default: None,
    }
}

const fn opt(name: &'static str, unit: &'static str, default: f64) -> Param {
    Param {
        name,
        unit,
        default: Some(default),
    }
}

const GAMMA: Param = req("gamma", "1");
const TAU: Param = req("tau", "1");
const ALPHA: Param = req("alpha", "1");
const SIGMA: Param = opt("sigma", "1", 1.0);
const EPS: Param = req("eps", "1");
const DILUTION: Param = opt("dilution", "1", 1.0);
const LEVEL: Param = req("level", "1");
const ISOSPIN: Param = req("isospin", "1");
const TAU_OR_ZERO: Param = opt("tau", "1", 0.0);
const EPS_OR_HARD: Param = opt("eps", "1", f64::INFINITY);
const VIRIAL_PARAMS: &[Param] = &[
    req("rho", "model"),
    req("temperature", "model"),
    opt("dimension", "1", 1.0),
    opt("dispersion", "1", 2.0),
    opt("coupling", "model", 0.0),
];
const CLASSIFY_PARAMS: &[Param] = &[
    opt("dimension", "1", 1.0),
    opt("remainder_order", "1", 2.0),
    opt("scale", "1", 1.0),
];

const THERMO_OUTPUTS: &[(&str, &str)] = &[
    ("pressure", "model"),
    ("helmholtz_excess", "model"),
    ("gibbs_excess", "model"),
    ("entropy_excess", "model"),
    ("energy", "model"),
    ("enthalpy", "model"),
    ("energy_shift", "model"),
    ("internal_pressure", "model"),
];

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Self::LlShift => "ll-shift",
            Self::LlB2 => "ll-b2",
            Self::LlTba => "ll-tba",
            Self::LlGround => "ll-ground",
            Self::AnyonB2 => "anyon-b2",
            Self::AnyonShift => "anyon-shift",
            Self::AnyonSemion => "anyon-semion",
            Self::NacsB2 => "nacs-b2",
            Self::NacsShift => "nacs-shift",
            Self::VirialThermo => "virial-thermo",
            Self::Classify => "classify",
        }
    }

    pub fn params(self) -> &'static [Param] {
        match self {
            Self::LlGround => &[GAMMA],
            Self::LlShift => &[GAMMA, TAU_OR_ZERO],
            Self::LlTba | Self::LlB2 => &[GAMMA, TAU],
            Self::AnyonB2 => &[ALPHA, SIGMA, EPS_OR_HARD],
            Self::AnyonShift => &[ALPHA, SIGMA, EPS, DILUTION],
            Self::AnyonSemion => &[SIGMA, EPS, DILUTION],
            Self::NacsB2 => &[LEVEL, ISOSPIN, SIGMA, EPS_OR_HARD],
            Self::NacsShift => &[LEVEL, ISOSPIN, SIGMA, EPS, DILUTION],
            Self::VirialThermo => VIRIAL_PARAMS,
            Self::Classify => CLASSIFY_PARAMS,
        }
    }

    /// Non-numeric fixed entries the quantity understands.
    pub fn extras(self) -> &'static [&'static str] {
        match self {
            Self::NacsB2 | Self::NacsShift => &["eps_matrix"],
            Self::VirialThermo => &["model", "amplitudes"],
            Self::Classify => &["terms"],
            _ => &[],
        }
    }

    pub fn outputs(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Self::LlGround => &[("lambda", "1"), ("energy", "k_B T_D"), ("e_res", "k_B T_D")],
            Self::LlShift => &[("e_res", "k_B T_D")],
            Self::LlTba => &[
                ("mu", "k_B T_D"),
                ("energy", "k_B T_D"),
                ("pressure", "rho k_B T_D"),
                ("e_res", "k_B T_D"),
                ("normalization", "1"),
                ("nodes", "1"),
            ],
            Self::LlB2 => &[("b2", "lambda_T"), ("e_res_high_t", "k_B T_D")],
            Self::AnyonB2 => &[
                ("b2", "lambda_T^2"),
                ("hard_core", "lambda_T^2"),
                ("bound_state", "lambda_T^2"),
                ("scattering", "lambda_T^2"),
            ],
            Self::AnyonShift | Self::AnyonSemion | Self::NacsShift => &[("e_rel", "1")],
            Self::NacsB2 => &[("b2", "lambda_T^2")],
            Self::VirialThermo => THERMO_OUTPUTS,
            Self::Classify => &[("verdict", "-"), ("limit_value", "1")],
        }
    }

    pub fn columns(self) -> Vec<Column> {
        self.params()
            .iter()
            .map(|p| Column::new(p.name, p.unit))
            .chain(self.outputs().iter().map(|&(n, u)| Column::new(n, u)))
            .chain(std::iter::once(Column::new("status", "-")))
            .collect()
    }

    pub(crate) fn check_names(self, spec: &SweepSpec) -> CliResult<()> {
        let params = self.params();
        let is_param = |n: &str| params.iter().any(|p| p.name == n);
        for axis in &spec.axes {
            if !is_param(&axis.name) {
                return Err(CliError::spec(format!(
                    "`{}` cannot be swept for {}",
                    axis.name,
                    self.name()
                )));
            }
        }
        for (key, value) in &spec.fixed {
            match (is_param(key), self.extras().contains(&key.as_str()), value) {
                (true, _, FixedValue::Number(_)) => {}
                (true, _, _) => {
                    return Err(CliError::spec(format!("fixed `{key}` must be a number")))
                }
                (false, true, _) => {}
                (false, false, _) => {
                    return Err(CliError::spec(format!(
                        "unknown parameter `{key}` for {}",
                        self.name()
                    )));
                }
            }
        }
        for p in params.iter().filter(|p| p.default.is_none()) {
            if !spec.axes.iter().any(|a| a.name == p.name) && !spec.fixed.contains_key(p.name) {
                return Err(CliError::spec(format!(
                    "{} needs `{}` (swept or fixed)",
                    self.name(),
                    p.name
                )));
            }
        }
        self.check_extras(spec)
    }

    fn check_extras(self, spec: &SweepSpec) -> CliResult<()> {
        let bad = |k: &str, want: &str| Err(CliError::spec(format!("fixed `{k}` must be {want}")));
        for (key, value) in spec
            .fixed
            .iter()
            .filter(|(k, _)| self.extras().contains(&k.as_str()))
        {
            match (key.as_str(), value) {
                ("eps_matrix", FixedValue::Matrix(_)) | ("amplitudes", FixedValue::List(_)) => {}
                ("model", FixedValue::Text(t)) if t == "power-law" || t == "contact" => {}
                ("terms", FixedValue::Matrix(rows))
                    if rows.iter().all(|r| r.len() == 2 || r.len() == 3) => {}
                ("eps_matrix", _) => return bad(key, "an array of rows"),
                ("amplitudes", _) => return bad(key, "a list of numbers"),
                ("model", _) => return bad(key, "\"power-law\" or \"contact\""),
                _ => {
                    return bad(
                        key,
                        "a list of [coefficient, power] or [coefficient, power, log_power] rows",
                    )
                }
            }
        }
        if self == Self::Classify && !spec.fixed.contains_key("terms") {
            return Err(CliError::spec("classify needs fixed `terms`"));
        }
        Ok(())
    }

    /// Evaluate one grid point. `inputs` follows `params()` order.
    pub(crate) fn evaluate(
        self,
        inputs: &[f64],
        spec: &SweepSpec,
        cfg: &RunConfig,
    ) -> Result<Vec<Cell>, CoreError> {
        let get = |name: &str| {
            let i = self
                .params()
                .iter()
                .position(|p| p.name == name)
                .expect("declared parameter");
            inputs[i]
        };
        let nums = |v: Vec<f64>| v.into_iter().map(Cell::Num).collect::<Vec<_>>();
        Ok(match self {
            Self::LlGround => {
                let gamma = get("gamma");
                let gs = solve_ground_state(gamma)?;
                nums(vec![gs.lambda, gs.energy, e_res_zero_t(gamma)?])
            }
            Self::LlShift => {
                let (gamma, tau) = (get("gamma"), get("tau"));
                if tau == 0.0 {
                    nums(vec![e_res_zero_t(gamma)?])
                } else {
                    let params = LLParams::new(gamma, tau)?;
                    if gamma == 0.0 || gamma == f64::INFINITY {
                        nums(vec![0.0])
                    } else {
                        nums(vec![
                            observables(&solve_tba_with(params, &cfg.tba(), None)?).e_res,
                        ])
                    }
                }
            }
            Self::LlTba => {
                let sol =
                    solve_tba_with(LLParams::new(get("gamma"), get("tau"))?, &cfg.tba(), None)?;
                let obs = observables(&sol);
                nums(vec![
                    obs.mu,
                    obs.energy,
                    obs.pressure,
                    obs.e_res,
                    obs.normalization,
                    sol.nodes_used as f64,
                ])
            }
            Self::LlB2 => {
                let params = LLParams::new(get("gamma"), get("tau"))?;
                nums(vec![b2_ll(params), e_res_high_t(params)])
            }
            Self::AnyonB2 => {
                let bc = SoftCoreBC::new(sign(get("sigma"))?, get("eps"))?;
                let b = b2_softcore(get("alpha"), bc)?;
                nums(vec![b.value, b.hard_core, b.bound_state, b.scattering])
            }
            Self::AnyonShift => {
                let bc = SoftCoreBC::new(sign(get("sigma"))?, get("eps"))?;
                nums(vec![e_rel_abelian(get("alpha"), bc, get("dilution"))?])
            }
            Self::AnyonSemion => {
                let bc = SoftCoreBC::new(sign(get("sigma"))?, get("eps"))?;
                nums(vec![e_rel_semion(bc, get("dilution"))?])
            }
            Self::NacsB2 | Self::NacsShift => {
                let sys = nacs_system(&get, spec)?;
                if self == Self::NacsB2 {
                    nums(vec![b2_nacs_general(&sys)?])
                } else {
                    nums(vec![e_rel_nacs_anisotropic(&sys, get("dilution"))?])
                }
            }
            Self::VirialThermo => {
                let model = virial_model(&get, spec)?;
                let (rho, t) = (get("rho"), get("temperature"));
                let th = thermo_from_virial(&model, rho, t)?;
                let pi = internal_pressure(&model, rho, t)?;
                nums(vec![
                    th.pressure,
                    th.helmholtz_excess,
                    th.gibbs_excess,
                    th.entropy_excess,
                    th.energy,
                    th.enthalpy,
                    th.energy_shift(),
                    pi,
                ])
            }
            Self::Classify => {
                let scale = get("scale");
                let terms = match spec.fixed.get("terms") {
                    Some(FixedValue::Matrix(rows)) => rows
                        .iter()
                        .map(|r| ExpansionTerm {
                            coefficient: scale * r[0],
                            power: r[1],
                            log_power: r.get(2).copied().unwrap_or(0.0) as u32,
                        })
                        .collect(),
                    _ => vec![],
                };
                let exp = SmallBetaExpansion {
                    terms,
                    remainder_order: get("remainder_order"),
                };
                let c = classify_shift(&exp, integer(get("dimension"), "dimension")? as u32)?;
                let verdict = match c.verdict {
                    Verdict::Bounded => "bounded",
                    Verdict::Unbounded => "unbounded",
                    Verdict::Indeterminate => "indeterminate",
                };
                vec![
                    Cell::Text(verdict.into()),
                    c.limit_value.map_or(Cell::Empty, Cell::Num),
                ]
            }
        })
    }
}

fn integer(x: f64, what: &str) -> Result<i64, CoreError> {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
        Ok(x as i64)
    } else {
        Err(CoreError::Domain(format!(
            "{what} must be an integer, got {x}"
        )))
    }
}

fn sign(sigma: f64) -> Result<ExtensionSign, CoreError> {
    ExtensionSign::from_int(integer(sigma, "sigma")? as i32)
}

fn nacs_system(get: &dyn Fn(&str) -> f64, spec: &SweepSpec) -> Result<NacsSystem, CoreError> {
    let level = integer(get("level"), "level")?;
    let twice = integer(2.0 * get("isospin"), "twice the isospin")?;
    if twice < 0 {
        return Err(CoreError::Domain("isospin must be non-negative".into()));
    }
    let sigma = sign(get("sigma"))?;
    match spec.fixed.get("eps_matrix") {
        Some(FixedValue::Matrix(rows)) => NacsSystem::new(level, twice as u32, rows.clone(), sigma),
        _ => NacsSystem::isotropic(level, twice as u32, get("eps"), sigma),
    }
}

fn virial_model(get: &dyn Fn(&str) -> f64, spec: &SweepSpec) -> Result<VirialModel, CoreError> {
    let model = match spec.fixed.get("model") {
        Some(FixedValue::Text(t)) => t.as_str(),
        _ if spec.fixed.contains_key("amplitudes") => "power-law",
        _ => "contact",
    };
    if model == "contact" {
        if get("dimension") != 1.0 || get("dispersion") != 2.0 {
            return Err(CoreError::Domain(
                "the contact model is one-dimensional with quadratic dispersion".into(),
            ));
        }
        return Ok(contact_virial_model(get("coupling")));
    }
    let amplitudes = match spec.fixed.get("amplitudes") {
        Some(FixedValue::List(a)) => a.clone(),
        _ => vec![],
    };
    let d = integer(get("dimension"), "dimension")?;
    if d <= 0 {
        return Err(CoreError::Domain("dimension must be positive".into()));
    }
    VirialModel::scale_invariant(d as u32, get("dispersion"), &amplitudes)
}
