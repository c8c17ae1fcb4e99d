//! Convergence-rate estimation from a trace: fit a line to
//! `ln(step_norm)` against the iteration index over the tail of the
//! trace; the geometric ratio is `exp(slope)`.

use crate::harness::trace::TraceRow;
use thiserror::Error;

/// Minimum number of positive step-norm values needed for a fit.
pub const MIN_FIT_POINTS: usize = 10;

/// Geometric-rate estimate over a trace tail.
#[derive(Debug, Clone, PartialEq)]
pub struct RateEstimate {
    /// exp(least-squares slope of ln(step_norm) vs k); below 1 means the
    /// step norms decay geometrically.
    pub geometric_ratio: f64,
    /// Goodness of the linear fit on log-residuals, in [0, 1].
    pub r_squared: f64,
    /// Iteration range (first k, last k) actually used.
    pub window: (usize, usize),
}

/// Errors from rate estimation.
#[derive(Debug, Error, PartialEq)]
pub enum RateError {
    #[error("too few positive residuals: need at least {needed}, found {found}")]
    TooFewPositiveResiduals { needed: usize, found: usize },
    #[error("log-residuals are constant over the window; no rate to fit")]
    DegenerateFit,
}

/// Estimate the geometric decay ratio of the step norms over the tail of
/// a trace. Rows with nonpositive or nonfinite step norms are ignored;
/// the fit uses the most recent half of the remaining rows (at least
/// [`MIN_FIT_POINTS`]).
pub fn estimate_rate(rows: &[TraceRow]) -> Result<RateEstimate, RateError> {
    let usable: Vec<(usize, f64)> = rows
        .iter()
        .filter(|row| row.step_norm.is_finite() && row.step_norm > 0.0)
        .map(|row| (row.k, row.step_norm.ln()))
        .collect();
    if usable.len() < MIN_FIT_POINTS {
        return Err(RateError::TooFewPositiveResiduals {
            needed: MIN_FIT_POINTS,
            found: usable.len(),
        });
    }
    let tail_len = (usable.len() / 2).max(MIN_FIT_POINTS);
    let tail = &usable[usable.len() - tail_len..];

    let n = tail.len() as f64;
    let mean_k = tail.iter().map(|&(k, _)| k as f64).sum::<f64>() / n;
    let mean_v = tail.iter().map(|&(_, v)| v).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for &(k, v) in tail {
        let dk = k as f64 - mean_k;
        let dv = v - mean_v;
        sxx += dk * dk;
        sxy += dk * dv;
        syy += dv * dv;
    }
    // Variance at the level of rounding noise in the log-residuals means
    // the data carry no slope (e.g. a constant step norm).
    let noise = 1e-12 * (1.0 + mean_v.abs());
    if sxx == 0.0 || syy <= n * noise * noise {
        return Err(RateError::DegenerateFit);
    }
    let slope = sxy / sxx;
    let r_squared = (sxy * sxy) / (sxx * syy);
    Ok(RateEstimate {
        geometric_ratio: slope.exp(),
        r_squared,
        window: (tail.first().expect("nonempty tail").0, tail.last().expect("nonempty tail").0),
    })
}
