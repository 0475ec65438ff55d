//! Real-valued sampled curves and least-squares power-law fits.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Ordered (x, y) samples with strictly increasing x and finite values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealSeries {
    points: Vec<(f64, f64)>,
}

impl RealSeries {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::Invalid(format!(
                    "series x not strictly increasing at x = {}",
                    w[1].0
                )));
            }
        }
        if points
            .iter()
            .any(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(Error::NonFinite {
                context: "series values",
            });
        }
        Ok(RealSeries { points })
    }

    pub fn from_fn(xs: &[f64], mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        Self::new(xs.iter().map(|&x| (x, f(x))).collect())
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn ys(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    pub fn min_y(&self) -> f64 {
        self.points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min)
    }

    pub fn max_y(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.1)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Straight-line least-squares result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
}

/// Least-squares line through (ln x, ln y); the slope is the power-law
/// exponent. Requires strictly positive data and at least 4 points.
pub fn fit_loglog(s: &RealSeries) -> Result<FitResult> {
    if s.len() < 4 {
        return Err(Error::TooFewPoints {
            got: s.len(),
            need: 4,
        });
    }
    if s.points().iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::NonPositiveData {
            context: "fit_loglog",
        });
    }
    let logs: Vec<(f64, f64)> = s.points().iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    Ok(fit_line(&logs))
}

/// Plain least-squares line y = slope * x + intercept.
pub fn fit_line(points: &[(f64, f64)]) -> FitResult {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let ss: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    FitResult {
        slope,
        intercept,
        residual_rms: (ss / n).sqrt(),
    }
}

/// Logarithmically spaced grid, inclusive of both ends.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Linearly spaced grid, inclusive of both ends.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}
