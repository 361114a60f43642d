//! Tabular data with a fixed fit/validation split.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DataError {
    #[error("dataset has no rows")]
    Empty,
    #[error("dataset has no variable columns")]
    NoVariables,
    #[error("row count mismatch: {what} has {got} rows, expected {expected}")]
    RowMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("non-finite value in {what} at row {row}")]
    NonFinite { what: String, row: usize },
    #[error("weight at row {row} is {value}, weights must be strictly positive")]
    NonPositiveWeight { row: usize, value: f64 },
    #[error("fit_fraction {0} outside (0, 1]")]
    BadFitFraction(f64),
    #[error("fit_fraction {fraction} leaves no validation rows out of {rows}")]
    EmptyValidation { fraction: f64, rows: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Split {
    Fit,
    Validation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subset {
    All,
    Fit,
    Validation,
}

/// A column-major selection of rows from a [`Dataset`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DataView {
    columns: Vec<Vec<f64>>,
    target: Vec<f64>,
    weights: Option<Vec<f64>>,
    rows: Vec<usize>,
}

impl DataView {
    fn select(full: &DataView, rows: &[usize]) -> DataView {
        DataView {
            columns: full
                .columns
                .iter()
                .map(|c| rows.iter().map(|&r| c[r]).collect())
                .collect(),
            target: rows.iter().map(|&r| full.target[r]).collect(),
            weights: full
                .weights
                .as_ref()
                .map(|w| rows.iter().map(|&r| w[r]).collect()),
            rows: rows.to_vec(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.target.len()
    }

    pub fn n_vars(&self) -> usize {
        self.columns.len()
    }

    /// Column of variable `v{index}` (1-based).
    pub fn column(&self, index: usize) -> &[f64] {
        &self.columns[index - 1]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Row indices into the full dataset.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Variable values of local row `i`.
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[i]).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    all: DataView,
    fit: DataView,
    validation: DataView,
    split: Vec<Split>,
    fit_fraction: f64,
    variable_names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from row-major variable values. All rows are
    /// assigned to the fit subset; see [`Dataset::with_split`].
    pub fn from_rows(
        x: &[Vec<f64>],
        y: Vec<f64>,
        weights: Option<Vec<f64>>,
    ) -> Result<Self, DataError> {
        let n_vars = x.first().map(Vec::len).unwrap_or(0);
        let mut columns = vec![Vec::with_capacity(x.len()); n_vars];
        for row in x {
            if row.len() != n_vars {
                return Err(DataError::RowMismatch {
                    what: "variable row",
                    got: row.len(),
                    expected: n_vars,
                });
            }
            for (c, v) in row.iter().enumerate() {
                columns[c].push(*v);
            }
        }
        Self::from_columns(columns, y, weights)
    }

    pub fn from_columns(
        columns: Vec<Vec<f64>>,
        y: Vec<f64>,
        weights: Option<Vec<f64>>,
    ) -> Result<Self, DataError> {
        let n = y.len();
        if n == 0 {
            return Err(DataError::Empty);
        }
        if columns.is_empty() {
            return Err(DataError::NoVariables);
        }
        for (c, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(DataError::RowMismatch {
                    what: "variable column",
                    got: col.len(),
                    expected: n,
                });
            }
            if let Some(row) = col.iter().position(|v| !v.is_finite()) {
                return Err(DataError::NonFinite {
                    what: format!("v{}", c + 1),
                    row,
                });
            }
        }
        if let Some(row) = y.iter().position(|v| !v.is_finite()) {
            return Err(DataError::NonFinite {
                what: "target".into(),
                row,
            });
        }
        if let Some(w) = &weights {
            if w.len() != n {
                return Err(DataError::RowMismatch {
                    what: "weights",
                    got: w.len(),
                    expected: n,
                });
            }
            if let Some(row) = w.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(DataError::NonPositiveWeight { row, value: w[row] });
            }
        }
        let variable_names = (1..=columns.len()).map(|i| format!("v{i}")).collect();
        let all = DataView {
            columns,
            target: y,
            weights,
            rows: (0..n).collect(),
        };
        Ok(Dataset {
            fit: all.clone(),
            validation: DataView::default(),
            all,
            split: vec![Split::Fit; n],
            fit_fraction: 1.0,
            variable_names,
        })
    }

    /// Randomly assigns exactly `ceil(fit_fraction * n)` rows to the fit
    /// subset, deterministically from `seed`.
    pub fn with_split(self, fit_fraction: f64, seed: u64) -> Result<Self, DataError> {
        if !(fit_fraction > 0.0 && fit_fraction <= 1.0) {
            return Err(DataError::BadFitFraction(fit_fraction));
        }
        let n = self.n_rows();
        let n_fit = ((fit_fraction * n as f64 - 1e-9).ceil() as usize).clamp(1, n);
        if fit_fraction < 1.0 && n_fit == n {
            return Err(DataError::EmptyValidation {
                fraction: fit_fraction,
                rows: n,
            });
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut labels = vec![Split::Validation; n];
        for &r in &order[..n_fit] {
            labels[r] = Split::Fit;
        }
        let mut out = self.with_split_labels(labels)?;
        out.fit_fraction = fit_fraction;
        Ok(out)
    }

    /// Uses an explicit per-row split assignment.
    pub fn with_split_labels(mut self, labels: Vec<Split>) -> Result<Self, DataError> {
        let n = self.n_rows();
        if labels.len() != n {
            return Err(DataError::RowMismatch {
                what: "split labels",
                got: labels.len(),
                expected: n,
            });
        }
        let fit_rows: Vec<usize> = (0..n).filter(|&r| labels[r] == Split::Fit).collect();
        let val_rows: Vec<usize> = (0..n).filter(|&r| labels[r] == Split::Validation).collect();
        if fit_rows.is_empty() {
            return Err(DataError::BadFitFraction(0.0));
        }
        self.fit = DataView::select(&self.all, &fit_rows);
        self.validation = DataView::select(&self.all, &val_rows);
        self.fit_fraction = fit_rows.len() as f64 / n as f64;
        self.split = labels;
        Ok(self)
    }

    pub fn with_variable_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.n_vars());
        self.variable_names = names;
        self
    }

    pub fn view(&self, subset: Subset) -> &DataView {
        match subset {
            Subset::All => &self.all,
            Subset::Fit => &self.fit,
            Subset::Validation => &self.validation,
        }
    }

    pub fn all(&self) -> &DataView {
        &self.all
    }

    pub fn fit(&self) -> &DataView {
        &self.fit
    }

    pub fn validation(&self) -> &DataView {
        &self.validation
    }

    pub fn split(&self) -> &[Split] {
        &self.split
    }

    pub fn fit_fraction(&self) -> f64 {
        self.fit_fraction
    }

    /// Early stopping is active whenever validation rows exist.
    pub fn early_stopping(&self) -> bool {
        !self.validation.is_empty()
    }

    pub fn n_rows(&self) -> usize {
        self.all.n_rows()
    }

    pub fn n_vars(&self) -> usize {
        self.all.n_vars()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }
}
