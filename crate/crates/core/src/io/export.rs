use crate::evolution::{Attribute, HallOfFame, Individual};
use crate::expr::{parse, ExprNode, ParseError};
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const HALL_OF_FAME_CSV: &str = "hall_of_fame.csv";
pub const HALL_OF_FAME_TXT: &str = "hall_of_fame.txt";

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
}

#[derive(Debug, Error)]
pub enum ResumeError {
    #[error("cannot read {path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{path}: no `expression` column")]
    NoExpressionColumn { path: PathBuf },
    #[error("{path}: line {line}: {source}")]
    Parse {
        path: PathBuf,
        line: u64,
        source: ParseError,
    },
}

/// Column names of the table: `expression`, every attribute, then `valid`.
pub fn columns() -> Vec<&'static str> {
    std::iter::once("expression")
        .chain(Attribute::ALL.iter().map(|a| a.name()))
        .chain(std::iter::once("valid"))
        .collect()
}

// Shortest text that reads back to the same value.
fn num(v: f64) -> String {
    format!("{v:?}")
}

fn record(ind: &Individual) -> Vec<String> {
    std::iter::once(ind.expr.to_string())
        .chain(Attribute::ALL.iter().map(|&a| match a {
            Attribute::Compl | Attribute::NParams | Attribute::Age => {
                format!("{}", ind.attribute(a) as u64)
            }
            _ => num(ind.attribute(a)),
        }))
        .chain(std::iter::once(ind.valid.to_string()))
        .collect()
}

/// Members ordered by complexity, then by `ms_processed_e`, then by text.
pub fn sorted_members(hof: &HallOfFame) -> Vec<&Individual> {
    let mut members: Vec<&Individual> = hof.members().iter().collect();
    members.sort_by(|a, b| {
        a.compl
            .cmp(&b.compl)
            .then(a.measures.ms_processed_e.total_cmp(&b.measures.ms_processed_e))
            .then_with(|| a.expr.to_string().cmp(&b.expr.to_string()))
    });
    members
}

pub fn write_table<W: Write>(hof: &HallOfFame, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(columns())?;
    for ind in sorted_members(hof) {
        w.write_record(record(ind))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_listing<W: Write>(hof: &HallOfFame, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{:>6} {:>14} {:>12} {:>12}  expression", "compl", "ms_processed_e", "mse", "mare")?;
    for ind in sorted_members(hof) {
        let m = &ind.measures;
        writeln!(
            out,
            "{:>6} {:>14.5e} {:>12.5e} {:>12.5e}  {}",
            ind.compl, m.ms_processed_e, m.mse, m.mare, ind.expr
        )?;
    }
    Ok(())
}

/// Writes the table and the text listing into `dir` and returns their
/// paths.
pub fn export_hall_of_fame(hof: &HallOfFame, dir: &Path) -> Result<(PathBuf, PathBuf), ExportError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| ExportError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let table = dir.join(HALL_OF_FAME_CSV);
    let file = std::fs::File::create(&table).map_err(io_err(&table))?;
    write_table(hof, std::io::BufWriter::new(file)).map_err(|source| ExportError::Csv {
        path: table.clone(),
        source,
    })?;
    let listing = dir.join(HALL_OF_FAME_TXT);
    let file = std::fs::File::create(&listing).map_err(io_err(&listing))?;
    write_listing(hof, std::io::BufWriter::new(file)).map_err(io_err(&listing))?;
    Ok((table, listing))
}

/// Expressions of a previously exported table, for resuming a run.
pub fn load_expressions(path: &Path) -> Result<Vec<ExprNode>, ResumeError> {
    let csv_err = |source| ResumeError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    let col = reader
        .headers()
        .map_err(csv_err)?
        .iter()
        .position(|h| h == "expression")
        .ok_or_else(|| ResumeError::NoExpressionColumn {
            path: path.to_path_buf(),
        })?;
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        let text = rec.get(col).unwrap_or("");
        out.push(parse(text).map_err(|source| ResumeError::Parse {
            path: path.to_path_buf(),
            line,
            source,
        })?);
    }
    Ok(out)
}
