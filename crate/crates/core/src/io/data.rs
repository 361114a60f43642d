use crate::dataset::{DataError, Dataset};
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Which columns of a delimited file become the dataset.
#[derive(Clone, Debug, PartialEq)]
pub struct DataSpec {
    pub path: PathBuf,
    pub target_column: String,
    /// Bound to v1..vN in this order. Empty means every column that is
    /// neither the target nor the weight column, in file order.
    pub variable_columns: Vec<String>,
    pub weight_column: Option<String>,
    pub fit_fraction: f64,
    pub split_seed: u64,
}

impl DataSpec {
    pub fn new(path: impl Into<PathBuf>, target_column: impl Into<String>) -> Self {
        DataSpec {
            path: path.into(),
            target_column: target_column.into(),
            variable_columns: Vec::new(),
            weight_column: None,
            fit_fraction: 0.8,
            split_seed: 0,
        }
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: malformed input at line {line}: {message}")]
    Malformed {
        path: PathBuf,
        line: u64,
        message: String,
    },
    #[error("{path}: no column named `{name}` (available: {available})")]
    MissingColumn {
        path: PathBuf,
        name: String,
        available: String,
    },
    #[error("{path}: line {line}, column `{column}`: `{value}` is not a number")]
    NonNumeric {
        path: PathBuf,
        line: u64,
        column: String,
        value: String,
    },
    #[error("{path}: line {line}, column `{column}`: weight {value} must be strictly positive")]
    NonPositiveWeight {
        path: PathBuf,
        line: u64,
        column: String,
        value: f64,
    },
    #[error("{path}: {source}")]
    Data { path: PathBuf, source: DataError },
}

/// Tab if the header has tabs but no commas, comma otherwise.
fn sniff_delimiter(text: &str) -> u8 {
    let header = text.lines().next().unwrap_or("");
    if header.contains('\t') && !header.contains(',') {
        b'\t'
    } else {
        b','
    }
}

/// Reads a comma- or tab-separated file with a header row. Line numbers in
/// errors count the header as line 1.
pub fn load_dataset(spec: &DataSpec) -> Result<Dataset, LoadError> {
    let path = &spec.path;
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.clone(),
        source,
    })?;
    parse_dataset(&text, path, spec)
}

fn parse_dataset(text: &str, path: &Path, spec: &DataSpec) -> Result<Dataset, LoadError> {
    let malformed = |line: u64, message: String| LoadError::Malformed {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(sniff_delimiter(text))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();

    let find = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| LoadError::MissingColumn {
                path: path.to_path_buf(),
                name: name.to_string(),
                available: header.join(", "),
            })
    };
    let target = find(&spec.target_column)?;
    let weight = spec.weight_column.as_deref().map(find).transpose()?;
    let variables: Vec<usize> = if spec.variable_columns.is_empty() {
        (0..header.len())
            .filter(|&i| i != target && Some(i) != weight)
            .collect()
    } else {
        spec.variable_columns
            .iter()
            .map(|c| find(c))
            .collect::<Result<_, _>>()?
    };

    let mut columns = vec![Vec::new(); variables.len()];
    let mut y = Vec::new();
    let mut w = weight.map(|_| Vec::new());
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |i: usize| -> Result<f64, LoadError> {
            let raw = record.get(i).unwrap_or("");
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| LoadError::NonNumeric {
                    path: path.to_path_buf(),
                    line,
                    column: header[i].clone(),
                    value: raw.to_string(),
                })
        };
        for (col, &i) in columns.iter_mut().zip(&variables) {
            col.push(cell(i)?);
        }
        y.push(cell(target)?);
        if let (Some(ws), Some(i)) = (w.as_mut(), weight) {
            let v = cell(i)?;
            if v <= 0.0 {
                return Err(LoadError::NonPositiveWeight {
                    path: path.to_path_buf(),
                    line,
                    column: header[i].clone(),
                    value: v,
                });
            }
            ws.push(v);
        }
    }

    let data_err = |source| LoadError::Data {
        path: path.to_path_buf(),
        source,
    };
    let names = variables.iter().map(|&i| header[i].clone()).collect();
    Dataset::from_columns(columns, y, w)
        .and_then(|d| d.with_split(spec.fit_fraction, spec.split_seed))
        .map(|d| d.with_variable_names(names))
        .map_err(data_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Split;

    fn spec() -> DataSpec {
        DataSpec {
            fit_fraction: 1.0,
            ..DataSpec::new("mem.csv", "y")
        }
    }

    #[test]
    fn comma_and_tab() {
        let d = parse_dataset("a,y,b\n1,2,3\n4,5,6\n", Path::new("m"), &spec()).unwrap();
        assert_eq!(d.all().column(1), &[1.0, 4.0]);
        assert_eq!(d.all().column(2), &[3.0, 6.0]);
        assert_eq!(d.all().target(), &[2.0, 5.0]);
        let t = parse_dataset("a\ty\n1\t2\n", Path::new("m"), &spec()).unwrap();
        assert_eq!(t.all().target(), &[2.0]);
    }

    #[test]
    fn explicit_variable_order() {
        let s = DataSpec {
            variable_columns: vec!["b".into(), "a".into()],
            ..spec()
        };
        let d = parse_dataset("a,y,b\n1,2,3\n", Path::new("m"), &s).unwrap();
        assert_eq!(d.all().column(1), &[3.0]);
        assert_eq!(d.variable_names(), &["b".to_string(), "a".to_string()]);
    }

    #[test]
    fn errors_name_line_and_column() {
        let e = parse_dataset("a,y\n1,2\n3,x\n", Path::new("m"), &spec()).unwrap_err();
        assert_eq!(e.to_string(), "m: line 3, column `y`: `x` is not a number");
        let e = parse_dataset("a,y\n1,2\n", Path::new("m"), &DataSpec::new("m", "z")).unwrap_err();
        assert!(matches!(e, LoadError::MissingColumn { .. }));
        let s = DataSpec {
            weight_column: Some("w".into()),
            ..spec()
        };
        let e = parse_dataset("a,y,w\n1,2,1\n1,2,0\n", Path::new("m"), &s).unwrap_err();
        assert_eq!(
            e.to_string(),
            "m: line 3, column `w`: weight 0 must be strictly positive"
        );
    }

    #[test]
    fn split_counts() {
        let text: String = std::iter::once("x,y\n".to_string())
            .chain((0..10).map(|i| format!("{i},{i}\n")))
            .collect();
        let s = DataSpec {
            fit_fraction: 0.75,
            ..spec()
        };
        let d = parse_dataset(&text, Path::new("m"), &s).unwrap();
        assert_eq!(d.split().iter().filter(|&&l| l == Split::Fit).count(), 8);
    }
}
