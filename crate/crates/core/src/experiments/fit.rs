//! Log-log least-squares order estimation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Errors below this are treated as machine floor and dropped from order fits.
pub const ERROR_FLOOR: f64 = 1e-10;

/// Floor used when fitting mass-drift decay.
pub const DRIFT_FLOOR: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderFit {
    /// Slope of `log(error)` against `log(tau)`.
    pub order: f64,
    /// RMS deviation of the log errors from the fitted line.
    pub residual: f64,
    /// Number of points that survived the floor.
    pub points: usize,
}

/// Fits `error ≈ C·tau^p` with the default machine floor.
pub fn fit_order(points: &[(f64, f64)]) -> Result<OrderFit> {
    fit_order_above(points, ERROR_FLOOR)
}

/// Fits `error ≈ C·tau^p`, ignoring points with `error < floor`.
pub fn fit_order_above(points: &[(f64, f64)], floor: f64) -> Result<OrderFit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(tau, err)| tau > 0.0 && err.is_finite() && err > 0.0 && err >= floor)
        .map(|&(tau, err)| (tau.ln(), err.ln()))
        .collect();
    if logs.len() < 3 {
        return Err(Error::InsufficientData { usable: logs.len() });
    }
    let count = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData { usable: 1 });
    }
    let order = sxy / sxx;
    let intercept = mean_y - order * mean_x;
    let residual = (logs
        .iter()
        .map(|p| (p.1 - intercept - order * p.0).powi(2))
        .sum::<f64>()
        / count)
        .sqrt();
    Ok(OrderFit {
        order,
        residual,
        points: logs.len(),
    })
}

/// Drift fit: drops points below [`DRIFT_FLOOR`], then keeps the leading run
/// (by descending `tau`) over which the drift still decreases. Once halving
/// `tau` stops reducing the drift the sequence sits on accumulated round-off.
pub fn fit_drift_order(points: &[(f64, f64)]) -> Result<OrderFit> {
    let mut sorted: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(tau, drift)| tau > 0.0 && drift.is_finite() && drift >= DRIFT_FLOOR)
        .collect();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut kept: Vec<(f64, f64)> = Vec::with_capacity(sorted.len());
    for p in sorted {
        if kept.last().is_some_and(|last| p.1 >= last.1) {
            break;
        }
        kept.push(p);
    }
    fit_order_above(&kept, DRIFT_FLOOR)
}
