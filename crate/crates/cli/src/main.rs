use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gasshift_cli::config::ConfigLayer;
use gasshift_cli::quantity::Quantity;
use gasshift_cli::spec::FixedValue;
use gasshift_cli::table::write_text;
use gasshift_cli::{
    gnuplot, reports, run_sweep, CliError, CliResult, OutputFormat, ResultTable, RunConfig,
    SweepSpec,
};
use gasshift_core::lieb_liniger::contact_virial_model;
use gasshift_core::virial::VirialModel;
use serde_json::json;

/// Energy shifts, virial coefficients and equation-of-state checks for
/// low-dimensional quantum gases.
#[derive(Debug, Parser)]
#[command(name = "gasshift", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Output file (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Relative energy tolerance of the thermal solver
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Minimum quadrature nodes of the thermal solver
    #[arg(long, global = true)]
    nodes: Option<usize>,
    /// Also write `<out>.gp`, a gnuplot script reading the CSV
    #[arg(long, global = true)]
    gnuplot: bool,
    /// Key-value config file; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Evaluate grid points on one thread
    #[arg(long, global = true)]
    serial: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Repulsive contact Bose gas in one dimension
    #[command(subcommand)]
    Ll(LlCmd),
    /// Abelian anyons
    #[command(subcommand)]
    Anyon(AnyonCmd),
    /// Non-abelian Chern-Simons particles
    #[command(subcommand)]
    Nacs(NacsCmd),
    /// Generic virial thermodynamics
    #[command(subcommand)]
    Virial(VirialCmd),
    /// Run a TOML sweep specification
    Sweep { spec: PathBuf },
}

#[derive(Debug, Subcommand)]
enum LlCmd {
    /// Ground-state energy and shift
    Ground {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        /// Emit the rapidity density instead
        #[arg(long)]
        profile: bool,
    },
    /// Thermal equilibrium observables
    Tba {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, allow_negative_numbers = true)]
        tau: f64,
        /// Emit dressed energy and density instead
        #[arg(long)]
        profile: bool,
    },
    /// Interaction energy shift; `--tau 0` uses the ground state
    Shift {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        tau: f64,
    },
    /// Second virial coefficient and its high-temperature shift
    B2 {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, allow_negative_numbers = true)]
        tau: f64,
    },
}

#[derive(Debug, Args)]
struct SoftCore {
    /// Extension sign, +1 or -1
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    sigma: i32,
    /// Hard-core parameter; `inf` for hard core
    #[arg(long, default_value_t = f64::INFINITY, allow_negative_numbers = true)]
    eps: f64,
}

#[derive(Debug, Subcommand)]
enum AnyonCmd {
    B2 {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[command(flatten)]
        bc: SoftCore,
    },
    Shift {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[command(flatten)]
        bc: SoftCore,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        dilution: f64,
    },
    /// Closed form at half-integer statistics
    Semion {
        #[command(flatten)]
        bc: SoftCore,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        dilution: f64,
    },
}

#[derive(Debug, Args)]
struct NacsArgs {
    #[arg(long, allow_negative_numbers = true)]
    level: i64,
    /// Isospin l (integer or half-integer)
    #[arg(long, allow_negative_numbers = true)]
    isospin: f64,
    #[command(flatten)]
    bc: SoftCore,
    /// Per-channel parameters: rows `j = 0..=2l` separated by `;`, entries by `,`
    #[arg(long)]
    eps_matrix: Option<String>,
}

#[derive(Debug, Subcommand)]
enum NacsCmd {
    B2 {
        #[command(flatten)]
        sys: NacsArgs,
    },
    Shift {
        #[command(flatten)]
        sys: NacsArgs,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        dilution: f64,
    },
    /// Per-channel statistics parameters
    Channels {
        #[arg(long, allow_negative_numbers = true)]
        level: i64,
        #[arg(long, allow_negative_numbers = true)]
        isospin: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelKind {
    PowerLaw,
    Contact,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Contact)]
    model: ModelKind,
    /// Contact coupling
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    coupling: f64,
    #[arg(long, default_value_t = 1)]
    dimension: u32,
    #[arg(long, default_value_t = 2.0)]
    dispersion: f64,
    /// Power-law amplitudes of B_2, B_3, ...
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    amplitudes: Vec<f64>,
}

#[derive(Debug, Subcommand)]
enum VirialCmd {
    Thermo {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[arg(long, allow_negative_numbers = true)]
        temperature: f64,
    },
    /// High-temperature boundedness of the shift from the small-beta form of B_2
    Classify {
        #[arg(long, default_value_t = 1)]
        dimension: u32,
        /// Term `coefficient:power[:log_power]`; repeatable
        #[arg(
            long = "term",
            allow_negative_numbers = true,
            allow_hyphen_values = true
        )]
        terms: Vec<String>,
        #[arg(long, default_value_t = 2.0)]
        remainder: f64,
    },
    /// Is B_{k+1} T^{dk/alpha} constant at every order?
    CheckScaling {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
        temperatures: Vec<f64>,
        #[arg(long, default_value_t = 1e-10)]
        rtol: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gasshift: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    let c = &cli.common;
    let file = match &c.config {
        Some(p) => ConfigLayer::load(p)?,
        None => ConfigLayer::default(),
    };
    let flags = ConfigLayer {
        tol: c.tol,
        nodes: c.nodes,
        format: c.format,
        gnuplot: c.gnuplot.then_some(true),
        serial: c.serial.then_some(true),
    };
    let mut out = c.out.clone();
    let mut spec_layer = ConfigLayer::default();
    let spec = match &cli.command {
        Command::Sweep { spec } => {
            let spec = SweepSpec::load(spec)?;
            spec_layer.format = spec.output.format;
            spec_layer.gnuplot = spec.output.gnuplot;
            out = out.or_else(|| spec.output.path.clone());
            Some(spec)
        }
        _ => None,
    };
    let cfg = RunConfig::resolve(&file.overlay(&spec_layer).overlay(&flags))?;
    if cfg.gnuplot && (out.is_none() || cfg.format != OutputFormat::Csv) {
        return Err(CliError::spec("--gnuplot needs --out and CSV output"));
    }

    let (table, sweep) = match cli.command {
        Command::Sweep { .. } => {
            let spec = spec.expect("loaded above");
            (run_sweep(&spec, &cfg)?, Some(spec))
        }
        Command::Ll(cmd) => ll(cmd, &cfg)?,
        Command::Anyon(cmd) => (anyon(cmd, &cfg)?, None),
        Command::Nacs(cmd) => nacs(cmd, &cfg)?,
        Command::Virial(cmd) => virial(cmd, &cfg)?,
    };
    table.emit(out.as_deref(), cfg.format)?;
    if cfg.gnuplot {
        let csv = out.as_deref().expect("checked above");
        write_text(
            &script_path(csv),
            &gnuplot::script(&table, sweep.as_ref(), csv),
        )?;
    }
    let failures = table.failures();
    if failures > 0 {
        eprintln!(
            "gasshift: {failures} of {} points failed; see the status column",
            table.rows.len()
        );
        return Ok(gasshift_cli::EXIT_SOLVER_FAILURE as u8);
    }
    Ok(gasshift_cli::EXIT_OK as u8)
}

fn script_path(csv: &Path) -> PathBuf {
    let mut name = csv.as_os_str().to_owned();
    name.push(".gp");
    name.into()
}

type Output = (ResultTable, Option<SweepSpec>);

fn point(q: Quantity, fixed: &[(&str, f64)], cfg: &RunConfig) -> CliResult<Output> {
    let spec = fixed
        .iter()
        .fold(SweepSpec::new(q), |s, &(k, v)| s.fix(k, v));
    Ok((run_sweep(&spec, cfg)?, None))
}

fn ll(cmd: LlCmd, cfg: &RunConfig) -> CliResult<Output> {
    match cmd {
        LlCmd::Ground {
            gamma,
            profile: true,
        } => Ok((reports::ground_profile(gamma, cfg)?, None)),
        LlCmd::Ground { gamma, .. } => point(Quantity::LlGround, &[("gamma", gamma)], cfg),
        LlCmd::Tba {
            gamma,
            tau,
            profile: true,
        } => Ok((reports::tba_profile(gamma, tau, cfg)?, None)),
        LlCmd::Tba { gamma, tau, .. } => {
            point(Quantity::LlTba, &[("gamma", gamma), ("tau", tau)], cfg)
        }
        LlCmd::Shift { gamma, tau } => {
            point(Quantity::LlShift, &[("gamma", gamma), ("tau", tau)], cfg)
        }
        LlCmd::B2 { gamma, tau } => point(Quantity::LlB2, &[("gamma", gamma), ("tau", tau)], cfg),
    }
}

fn anyon(cmd: AnyonCmd, cfg: &RunConfig) -> CliResult<ResultTable> {
    let (q, fixed) = match cmd {
        AnyonCmd::B2 { alpha, bc } => (
            Quantity::AnyonB2,
            vec![
                ("alpha", alpha),
                ("sigma", f64::from(bc.sigma)),
                ("eps", bc.eps),
            ],
        ),
        AnyonCmd::Shift {
            alpha,
            bc,
            dilution,
        } => (
            Quantity::AnyonShift,
            vec![
                ("alpha", alpha),
                ("sigma", f64::from(bc.sigma)),
                ("eps", bc.eps),
                ("dilution", dilution),
            ],
        ),
        AnyonCmd::Semion { bc, dilution } => (
            Quantity::AnyonSemion,
            vec![
                ("sigma", f64::from(bc.sigma)),
                ("eps", bc.eps),
                ("dilution", dilution),
            ],
        ),
    };
    Ok(point(q, &fixed, cfg)?.0)
}

fn parse_matrix(text: &str) -> CliResult<Vec<Vec<f64>>> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::spec(format!("bad matrix entry `{v}`")))
                })
                .collect()
        })
        .collect()
}

fn nacs(cmd: NacsCmd, cfg: &RunConfig) -> CliResult<Output> {
    let (q, sys, dilution) = match cmd {
        NacsCmd::Channels { level, isospin } => {
            let twice = 2.0 * isospin;
            if !(twice >= 0.0 && twice.fract() == 0.0) {
                return Err(CliError::spec(
                    "isospin must be a non-negative multiple of 1/2",
                ));
            }
            return Ok((reports::channel_table(level, twice as u32, cfg)?, None));
        }
        NacsCmd::B2 { sys } => (Quantity::NacsB2, sys, None),
        NacsCmd::Shift { sys, dilution } => (Quantity::NacsShift, sys, Some(dilution)),
    };
    let mut spec = SweepSpec::new(q)
        .fix("level", sys.level as f64)
        .fix("isospin", sys.isospin)
        .fix("sigma", f64::from(sys.bc.sigma))
        .fix("eps", sys.bc.eps);
    if let Some(d) = dilution {
        spec = spec.fix("dilution", d);
    }
    if let Some(m) = &sys.eps_matrix {
        // The scalar column would echo an unused default.
        spec = spec
            .fix("eps", f64::NAN)
            .fix_value("eps_matrix", FixedValue::Matrix(parse_matrix(m)?));
    }
    Ok((run_sweep(&spec, cfg)?, None))
}

fn build_model(m: &ModelArgs) -> CliResult<(VirialModel, serde_json::Value)> {
    Ok(match m.model {
        ModelKind::Contact => (
            contact_virial_model(m.coupling),
            json!({ "model": "contact", "coupling": m.coupling }),
        ),
        ModelKind::PowerLaw => (
            VirialModel::scale_invariant(m.dimension, m.dispersion, &m.amplitudes)?,
            json!({ "model": "power-law", "dimension": m.dimension, "dispersion": m.dispersion, "amplitudes": m.amplitudes }),
        ),
    })
}

fn parse_term(text: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| CliError::spec(format!("bad term `{text}`")))
        })
        .collect::<CliResult<_>>()?;
    if parts.len() == 2 || parts.len() == 3 {
        Ok(parts)
    } else {
        Err(CliError::spec(format!(
            "term `{text}` must be coefficient:power[:log_power]"
        )))
    }
}

fn virial(cmd: VirialCmd, cfg: &RunConfig) -> CliResult<Output> {
    match cmd {
        VirialCmd::Thermo {
            model,
            rho,
            temperature,
        } => {
            let mut spec = SweepSpec::new(Quantity::VirialThermo)
                .fix("rho", rho)
                .fix("temperature", temperature)
                .fix("dimension", f64::from(model.dimension))
                .fix("dispersion", model.dispersion);
            spec = match model.model {
                ModelKind::Contact => spec
                    .fix("coupling", model.coupling)
                    .fix_value("model", FixedValue::Text("contact".into())),
                ModelKind::PowerLaw => spec
                    .fix_value("model", FixedValue::Text("power-law".into()))
                    .fix_value("amplitudes", FixedValue::List(model.amplitudes.clone())),
            };
            Ok((run_sweep(&spec, cfg)?, None))
        }
        VirialCmd::Classify {
            dimension,
            terms,
            remainder,
        } => {
            let rows = terms
                .iter()
                .map(|t| parse_term(t))
                .collect::<CliResult<Vec<_>>>()?;
            let spec = SweepSpec::new(Quantity::Classify)
                .fix("dimension", f64::from(dimension))
                .fix("remainder_order", remainder)
                .fix_value("terms", FixedValue::Matrix(rows));
            Ok((run_sweep(&spec, cfg)?, None))
        }
        VirialCmd::CheckScaling {
            model,
            temperatures,
            rtol,
        } => {
            let (m, input) = build_model(&model)?;
            Ok((
                reports::scaling_table(&m, &temperatures, rtol, input, cfg)?,
                None,
            ))
        }
    }
}
