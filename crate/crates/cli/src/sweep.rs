//! Grid evaluation.

use rayon::prelude::*;
use serde_json::json;

use crate::config::RunConfig;
use crate::quantity::Quantity;
use crate::spec::{FixedValue, SweepSpec};
use crate::table::{metadata, Cell, ResultTable, STATUS_OK};
use crate::{CliError, CliResult};

/// Evaluate `spec.quantity` on every grid point. Points are independent; a
/// failing point yields NaN outputs and its error in the `status` column.
pub fn run_sweep(spec: &SweepSpec, cfg: &RunConfig) -> CliResult<ResultTable> {
    spec.validate()?;
    let q = spec.quantity;
    let points = spec.grid();
    let eval = |p: &Vec<f64>| row(q, p, spec, cfg);
    let rows: Vec<Vec<Cell>> = if cfg.serial {
        points.iter().map(eval).collect()
    } else {
        points.par_iter().map(eval).collect()
    };
    let input = serde_json::to_value(spec).map_err(|e| CliError::spec(e.to_string()))?;
    let mut table = ResultTable::new(q.columns(), metadata(q.name(), cfg, json!(input)));
    for r in rows {
        table.push(r);
    }
    Ok(table)
}

fn row(q: Quantity, point: &[f64], spec: &SweepSpec, cfg: &RunConfig) -> Vec<Cell> {
    let inputs: Vec<f64> = q
        .params()
        .iter()
        .map(|p| {
            if let Some(i) = spec.axes.iter().position(|a| a.name == p.name) {
                point[i]
            } else if let Some(FixedValue::Number(v)) = spec.fixed.get(p.name) {
                *v
            } else {
                p.default
                    .expect("required parameters are checked by validate")
            }
        })
        .collect();
    let mut cells: Vec<Cell> = inputs.iter().map(|&x| Cell::Num(x)).collect();
    match q.evaluate(&inputs, spec, cfg) {
        Ok(out) => {
            cells.extend(out);
            cells.push(Cell::Text(STATUS_OK.into()));
        }
        Err(e) => {
            cells.extend(q.outputs().iter().map(|_| Cell::Num(f64::NAN)));
            cells.push(Cell::Text(format!("error: {e}")));
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{Axis, Spacing};

    #[test]
    fn failures_are_flagged_not_fatal() {
        let spec = SweepSpec::new(Quantity::LlB2)
            .fix("tau", 1.0)
            .with_axis(Axis::list("gamma", vec![1.0, -1.0, 2.0]));
        let t = run_sweep(&spec, &RunConfig::default()).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.failures(), 1);
        assert!(matches!(t.rows[1][2], Cell::Num(x) if x.is_nan()));
        assert!(matches!(&t.rows[1][4], Cell::Text(s) if s.starts_with("error")));
    }

    #[test]
    fn parallel_matches_serial() {
        let spec = SweepSpec::new(Quantity::AnyonShift)
            .fix("eps", 1.0)
            .with_axis(Axis::range("alpha", 0.0, 2.0, 21, Spacing::Linear));
        let par = run_sweep(&spec, &RunConfig::default()).unwrap();
        let ser = run_sweep(
            &spec,
            &RunConfig {
                serial: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(par.rows, ser.rows);
    }

    #[test]
    fn classify_reports_limit() {
        let spec = SweepSpec::new(Quantity::Classify)
            .fix("dimension", 2.0)
            .fix_value(
                "terms",
                FixedValue::Matrix(vec![vec![0.3, 1.0, 1.0], vec![1.1, 2.0]]),
            );
        let t = run_sweep(&spec, &RunConfig::default()).unwrap();
        assert_eq!(t.rows[0][3], Cell::Text("bounded".into()));
        assert_eq!(t.rows[0][4], Cell::Num(0.3));
    }

    #[test]
    fn missing_required_parameter_is_a_spec_error() {
        let spec = SweepSpec::new(Quantity::LlTba).fix("gamma", 1.0);
        assert!(matches!(
            run_sweep(&spec, &RunConfig::default()),
            Err(CliError::Spec(_))
        ));
    }
}
