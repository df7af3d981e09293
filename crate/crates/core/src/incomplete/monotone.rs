use crate::{Error, Result};

/// Outcome of the grid test for "increasing almost everywhere".
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityVerdict {
    pub increasing_ae: bool,
    /// Smallest grid point that is negative, NaN, or starts a flat run.
    pub first_failure_v: Option<f64>,
    pub derivative_samples: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotoneConfig {
    pub grid_size: usize,
    /// Relative to the largest derivative magnitude on the grid.
    pub tol: f64,
}

impl Default for MonotoneConfig {
    fn default() -> Self {
        Self {
            grid_size: 4096,
            tol: 1e-9,
        }
    }
}

impl MonotoneConfig {
    fn validate(&self) -> Result<()> {
        if self.grid_size < 64 || self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Precondition(format!(
                "monotonicity grid needs at least 64 points and tol > 0, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Interior points `vmax (i+1) / (N+1)`, `i = 0..N`.
    pub fn grid(&self, vmax: f64) -> Vec<f64> {
        let m = (self.grid_size + 1) as f64;
        (1..=self.grid_size).map(|i| vmax * i as f64 / m).collect()
    }
}

/// Classifies sampled derivative values.
///
/// Fails on a value below `-tol * max|d|`, on a NaN, or on a run of at least
/// `ceil(len / 64)` consecutive values with `|d| <= tol * max|d|`.
pub fn classify_samples(samples: Vec<(f64, f64)>, tol: f64) -> MonotonicityVerdict {
    let scale = samples
        .iter()
        .map(|&(_, d)| d.abs())
        .filter(|d| d.is_finite())
        .fold(0.0, f64::max);
    let tol_eff = tol * scale;
    let run_limit = samples.len().div_ceil(64).max(1);
    let mut first_failure = None;
    let mut run = 0;
    for (i, &(v, d)) in samples.iter().enumerate() {
        if d.is_nan() || d < -tol_eff {
            first_failure = Some(v);
            break;
        }
        if d.abs() <= tol_eff {
            run += 1;
            if run >= run_limit {
                first_failure = Some(samples[i + 1 - run].0);
                break;
            }
        } else {
            run = 0;
        }
    }
    MonotonicityVerdict {
        increasing_ae: first_failure.is_none(),
        first_failure_v: first_failure,
        derivative_samples: samples,
    }
}

/// Evaluates `derivative` on the interior grid of `(0, vmax)` and classifies it.
pub fn monotone_classify<F: Fn(f64) -> f64>(
    derivative: F,
    vmax: f64,
    cfg: &MonotoneConfig,
) -> Result<MonotonicityVerdict> {
    cfg.validate()?;
    let samples = cfg
        .grid(vmax)
        .into_iter()
        .map(|v| (v, derivative(v)))
        .collect();
    Ok(classify_samples(samples, cfg.tol))
}

pub(crate) fn classify_on_grid(
    grid: Vec<f64>,
    derivative: Vec<f64>,
    cfg: &MonotoneConfig,
) -> Result<MonotonicityVerdict> {
    cfg.validate()?;
    Ok(classify_samples(
        grid.into_iter().zip(derivative).collect(),
        cfg.tol,
    ))
}
