use super::{mean_square, processed_residuals, residual, ResidualConfig};
use crate::dataset::DataView;
use crate::expr::{ExprNode, Invalid};

/// Rows whose target is smaller than this in magnitude are left out of the
/// relative-error measures.
pub const MIN_RELATIVE_TARGET: f64 = 1e-300;

/// Residual-related attributes of an individual.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Measures {
    pub ms_processed_e: f64,
    pub mse: f64,
    pub mae: f64,
    pub max_ae: f64,
    pub minus_r2: f64,
    pub mare: f64,
    pub q75_are: f64,
    pub max_are: f64,
}

impl Measures {
    pub fn is_finite(&self) -> bool {
        [
            self.ms_processed_e,
            self.mse,
            self.mae,
            self.max_ae,
            self.minus_r2,
            self.mare,
            self.q75_are,
            self.max_are,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

/// Quantile by linear interpolation between order statistics (type 7).
/// Returns 0 for an empty slice.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// All residual-related measures of `expr` over every row of `data`.
///
/// Relative errors skip rows with a (near-)zero target; when no row
/// remains the relative measures are 0. With a constant target the
/// coefficient of determination is 1 for an exact fit and 0 otherwise.
pub fn compute_measures(expr: &ExprNode, data: &DataView, cfg: &ResidualConfig) -> Result<Measures, Invalid> {
    let r = residual(expr, data, cfg)?;
    let n = r.len() as f64;
    let abs: Vec<f64> = r.iter().map(|v| v.abs()).collect();
    let y = data.target();

    let mse = mean_square(&r);
    let mae = abs.iter().sum::<f64>() / n;
    let max_ae = abs.iter().cloned().fold(0.0, f64::max);

    let y_mean = y.iter().sum::<f64>() / n;
    let ss_tot: f64 = y.iter().map(|v| (v - y_mean).powi(2)).sum();
    let ss_res: f64 = r.iter().map(|v| v * v).sum();
    let r2 = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res == 0.0 {
        1.0
    } else {
        0.0
    };

    let rel: Vec<f64> = r
        .iter()
        .zip(y)
        .filter(|(_, yi)| yi.abs() >= MIN_RELATIVE_TARGET)
        .map(|(ri, yi)| (ri / yi).abs())
        .collect();
    let mare = if rel.is_empty() {
        0.0
    } else {
        rel.iter().sum::<f64>() / rel.len() as f64
    };
    let q75_are = quantile(&rel, 0.75);
    let max_are = rel.iter().cloned().fold(0.0, f64::max);

    let ms_processed_e = mean_square(&processed_residuals(r, data, cfg)?);

    let m = Measures {
        ms_processed_e,
        mse,
        mae,
        max_ae,
        minus_r2: -r2,
        mare,
        q75_are,
        max_are,
    };
    if m.is_finite() {
        Ok(m)
    } else {
        Err(Invalid::NonFinite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Dataset;
    use crate::expr::parse;

    #[test]
    fn perfect_predictions() {
        let x = vec![vec![1.0], vec![2.0], vec![3.0]];
        let d = Dataset::from_rows(&x, vec![1.0, 2.0, 3.0], None).unwrap();
        let m = compute_measures(&parse("v1").unwrap(), d.all(), &ResidualConfig::default()).unwrap();
        assert_eq!((m.mse, m.mae, m.max_ae, m.mare), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(m.minus_r2, -1.0);
    }

    #[test]
    fn mean_prediction_has_zero_r2() {
        let x = vec![vec![1.0], vec![2.0], vec![3.0]];
        let d = Dataset::from_rows(&x, vec![1.0, 2.0, 3.0], None).unwrap();
        let m = compute_measures(&parse("2.0").unwrap(), d.all(), &ResidualConfig::default()).unwrap();
        assert_eq!(m.minus_r2, 0.0);
    }

    #[test]
    fn hand_computed_residuals() {
        // predictions 9, 12, 7 against y = 10 give residuals 1, -2, 3
        let x = vec![vec![9.0], vec![12.0], vec![7.0]];
        let d = Dataset::from_rows(&x, vec![10.0; 3], None).unwrap();
        let m = compute_measures(&parse("v1").unwrap(), d.all(), &ResidualConfig::default()).unwrap();
        assert_eq!(m.mae, 2.0);
        assert_eq!(m.max_ae, 3.0);
        assert!((m.mse - 14.0 / 3.0).abs() < 1e-15);
        assert!((m.mare - 0.2).abs() < 1e-15);
        assert!((m.max_are - 0.3).abs() < 1e-15);
        // sorted relative errors 0.1 0.2 0.3, h = 1.5
        assert!((m.q75_are - 0.25).abs() < 1e-15);
        assert_eq!(m.ms_processed_e, m.mse);
    }

    #[test]
    fn zero_targets_skip_relative_error() {
        let x = vec![vec![1.0], vec![2.0]];
        let d = Dataset::from_rows(&x, vec![0.0, 4.0], None).unwrap();
        let m = compute_measures(&parse("v1").unwrap(), d.all(), &ResidualConfig::default()).unwrap();
        assert_eq!(m.mare, 0.5);
        assert_eq!(m.max_are, 0.5);
    }

    #[test]
    fn quantile_type7() {
        assert_eq!(quantile(&[4.0, 1.0, 3.0, 2.0], 0.75), 3.25);
        assert_eq!(quantile(&[5.0], 0.75), 5.0);
        assert_eq!(quantile(&[], 0.75), 0.0);
    }
}
