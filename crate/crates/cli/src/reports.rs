//! Tables that are not grid sweeps: solution profiles, channel listings and
//! scale-invariance reports.

use gasshift_core::anyon_nacs::{channel_weights, NacsSystem};
use gasshift_core::lieb_liniger::{solve_ground_state, solve_tba_with, LLParams};
use gasshift_core::virial::{check_scale_invariance, VirialModel};
use serde_json::json;

use crate::config::RunConfig;
use crate::table::{metadata, Cell, Column, ResultTable};
use crate::CliResult;

fn nums(v: &[f64]) -> Vec<Cell> {
    v.iter().map(|&x| Cell::Num(x)).collect()
}

/// Ground-state rapidity density on `[0, 1]` (in units of the Fermi rapidity; it is even).
pub fn ground_profile(gamma: f64, cfg: &RunConfig) -> CliResult<ResultTable> {
    let gs = solve_ground_state(gamma)?;
    let meta = metadata(
        "ll-ground-profile",
        cfg,
        json!({ "gamma": gamma, "lambda": gs.lambda, "energy": gs.energy }),
    );
    let mut t = ResultTable::new(
        vec![Column::new("x", "lambda"), Column::new("g", "1")],
        meta,
    );
    for (x, g) in gs.nodes.iter().zip(&gs.density) {
        t.push(nums(&[*x, *g]));
    }
    Ok(t)
}

/// Dressed energy and particle density on `K >= 0` (both even in `K`).
pub fn tba_profile(gamma: f64, tau: f64, cfg: &RunConfig) -> CliResult<ResultTable> {
    let sol = solve_tba_with(LLParams::new(gamma, tau)?, &cfg.tba(), None)?;
    let meta = metadata(
        "ll-tba-profile",
        cfg,
        json!({ "gamma": gamma, "tau": tau, "mu": sol.mu, "nodes": sol.nodes_used }),
    );
    let mut t = ResultTable::new(
        vec![
            Column::new("k", "rho"),
            Column::new("eps", "k_B T_D"),
            Column::new("f", "1"),
        ],
        meta,
    );
    for i in 0..sol.grid.len() {
        t.push(nums(&[sol.grid[i], sol.eps[i], sol.density[i]]));
    }
    Ok(t)
}

pub fn channel_table(level: i64, twice_isospin: u32, cfg: &RunConfig) -> CliResult<ResultTable> {
    let sys = NacsSystem::hard_core(level, twice_isospin)?;
    let meta = metadata(
        "nacs-channels",
        cfg,
        json!({ "level": level, "isospin": sys.isospin() }),
    );
    let columns = ["j", "omega", "delta", "gamma", "nu", "bosonic", "fermionic"]
        .iter()
        .map(|n| Column::new(n, "1"))
        .collect();
    let mut t = ResultTable::new(columns, meta);
    for c in channel_weights(&sys).channels {
        t.push(nums(&[
            f64::from(c.j),
            c.omega,
            c.delta,
            c.gamma,
            c.nu,
            c.bosonic,
            c.fermionic,
        ]));
    }
    Ok(t)
}

/// One row per virial order: the scaled coefficient at each temperature and the verdict.
pub fn scaling_table(
    model: &VirialModel,
    temperatures: &[f64],
    rel_tol: f64,
    input: serde_json::Value,
    cfg: &RunConfig,
) -> CliResult<ResultTable> {
    let report = check_scale_invariance(model, temperatures, rel_tol)?;
    let meta = metadata(
        "check-scaling",
        cfg,
        json!({ "model": input, "temperatures": temperatures, "rel_tol": rel_tol, "pass": report.pass }),
    );
    let mut columns = vec![Column::new("order", "1")];
    columns.extend((0..temperatures.len()).map(|i| Column::new(&format!("scaled_{i}"), "model")));
    columns.push(Column::new("max_relative_deviation", "1"));
    columns.push(Column::new("pass", "-"));
    let mut t = ResultTable::new(columns, meta);
    for o in report.orders {
        let mut row = vec![Cell::Num(o.order as f64)];
        row.extend(nums(&o.scaled));
        row.push(Cell::Num(o.max_relative_deviation));
        row.push(Cell::Text(o.pass.to_string()));
        t.push(row);
    }
    Ok(t)
}
