//! Plot scripts that read the emitted CSV.

use std::fmt::Write;
use std::path::Path;

use crate::spec::SweepSpec;
use crate::table::ResultTable;

/// Script plotting every output column against the fastest axis, one curve
/// per value of the slower axis when there are two. Without a sweep the
/// first column is the abscissa.
pub fn script(table: &ResultTable, spec: Option<&SweepSpec>, csv_path: &Path) -> String {
    let mut s = String::new();
    let file = csv_path.display().to_string().replace('\'', "''");
    let _ = writeln!(s, "set datafile separator ','");
    let Some(spec) = spec else {
        let numeric = |i: usize| {
            table
                .rows
                .first()
                .is_some_and(|r| matches!(r[i], crate::table::Cell::Num(_)))
        };
        let _ = writeln!(s, "set xlabel '{}'", table.columns[0].header());
        let clauses: Vec<String> = (1..table.columns.len())
            .filter(|&i| numeric(i))
            .map(|i| {
                format!(
                    "'{file}' skip 1 using 1:{} with linespoints title '{}'",
                    i + 1,
                    table.columns[i].name
                )
            })
            .collect();
        if !clauses.is_empty() {
            let _ = writeln!(s, "plot {}", clauses.join(", \\\n     "));
        }
        return s;
    };
    let Some(x_axis) = spec.axes.last() else {
        return s;
    };
    let col = |name: &str| {
        table
            .columns
            .iter()
            .position(|c| c.name == name)
            .map(|i| i + 1)
    };
    let x = col(&x_axis.name).unwrap_or(1);
    if x_axis.spacing == crate::spec::Spacing::Log {
        let _ = writeln!(s, "set logscale x");
    }
    let _ = writeln!(s, "set xlabel '{}'", table.columns[x - 1].header());
    let n_params = spec.quantity.params().len();
    let outputs: Vec<usize> = table.columns[n_params..]
        .iter()
        .enumerate()
        .filter(|(_, c)| c.name != "status" && c.name != "verdict")
        .map(|(i, _)| n_params + i + 1)
        .collect();
    let block = x_axis.grid().len().max(1);
    let blocks = if spec.axes.len() == 2 {
        spec.axes[0].grid().len()
    } else {
        1
    };
    let mut clauses = vec![];
    for y in outputs {
        for b in 0..blocks {
            let (first, last) = (b * block, (b + 1) * block - 1);
            let title = match spec.axes.first().filter(|_| blocks > 1) {
                Some(outer) => format!(
                    "{} {}={}",
                    table.columns[y - 1].name,
                    outer.name,
                    outer.grid()[b]
                ),
                None => table.columns[y - 1].name.clone(),
            };
            clauses.push(format!(
                "'{file}' skip 1 every ::{first}::{last} using {x}:{y} with linespoints title '{title}'"
            ));
        }
    }
    if !clauses.is_empty() {
        let _ = writeln!(s, "plot {}", clauses.join(", \\\n     "));
    }
    s
}
