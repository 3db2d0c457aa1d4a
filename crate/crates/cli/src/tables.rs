//! The `tables` command: numeric reproduction report for the bound and
//! detection-method catalogs.

use anyhow::Result;
use std::fmt::Write as _;

use su11::verification::{check_table_cells, CellStatus, TableParams, CELL_TOL};

fn fmt_opt(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_infinite() => "inf".to_string(),
        Some(v) => format!("{v:.9e}"),
        None => "-".to_string(),
    }
}

pub fn render_report(params: TableParams) -> Result<String> {
    let cells = check_table_cells(params).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut out = String::new();
    writeln!(
        out,
        "catalog comparison at g = {}, |alpha0| = {}, r = {} (gate: relative {CELL_TOL:.0e})",
        params.g, params.alpha_mag, params.r
    )?;
    writeln!(out)?;
    let mut current_table = "";
    let mut failures = 0usize;
    for c in &cells {
        if c.table != current_table {
            current_table = c.table;
            writeln!(out, "[{current_table}]")?;
            writeln!(
                out,
                "  {:<18} {:<10} {:>16} {:>16} {:>11}  status",
                "input", "column", "closed", "numeric", "rel-dev"
            )?;
        }
        let (status, note) = match c.status {
            CellStatus::Ok => ("OK", String::new()),
            CellStatus::Fail => {
                failures += 1;
                ("FAIL", String::new())
            }
            CellStatus::Nek => (
                "SKIP",
                " (not exactly known; numeric reference)".to_string(),
            ),
            CellStatus::Approx => (
                "APPROX",
                " (closed form is approximate; loose band only)".to_string(),
            ),
            CellStatus::Inf => (
                "INF",
                " (constant signal; no phase information)".to_string(),
            ),
        };
        let dev = match c.rel_dev {
            Some(d) => format!("{d:.3e}"),
            None => "-".to_string(),
        };
        let numeric = if c.status == CellStatus::Inf {
            "inf".to_string()
        } else {
            fmt_opt(c.numeric)
        };
        writeln!(
            out,
            "  {:<18} {:<10} {:>16} {:>16} {:>11}  {status}{note}",
            c.row,
            c.column,
            fmt_opt(c.closed),
            numeric,
            dev
        )?;
    }
    writeln!(out)?;
    writeln!(out, "{} cells checked, {} failures", cells.len(), failures)?;
    Ok(out)
}

pub fn run(out: Option<std::path::PathBuf>) -> Result<()> {
    let report = render_report(TableParams::default())?;
    match out {
        Some(path) => {
            std::fs::write(&path, &report)?;
            println!("wrote {}", path.display());
        }
        None => print!("{report}"),
    }
    Ok(())
}
