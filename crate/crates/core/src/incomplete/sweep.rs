use rayon::prelude::*;

use super::bidfn::BidFunctionParts;
use super::distribution::ValueDistribution;
use super::equilibrium::classify_parts;
use super::monotone::MonotoneConfig;
use crate::region::{validate_grid, RegionCell, RegionGrid};
use crate::{Error, MechanismKind, QualityVector, Result};

/// `(1, second, second * tail, second * tail^2, ...)` with `k` entries.
///
/// Two positions give `(1, second)`; the geometric tail is only a convention
/// for sweeps with more positions.
pub fn position_weights(second: f64, k: usize, tail: f64) -> Result<QualityVector<f64>> {
    if k == 0 {
        return Err(Error::Precondition(
            "at least one position is needed".into(),
        ));
    }
    if !(tail > 0.0 && tail <= 1.0) {
        return Err(Error::Precondition(format!(
            "tail ratio must lie in (0, 1], got {tail}"
        )));
    }
    let mut w = vec![1.0];
    let mut next = second;
    while w.len() < k {
        w.push(next);
        next *= tail;
    }
    QualityVector::new(w)
}

/// Options shared by the incomplete-information sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub k: usize,
    pub tail: f64,
    pub monotone: MonotoneConfig,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            k: 2,
            tail: 0.5,
            monotone: MonotoneConfig::default(),
        }
    }
}

fn check_unit_grid(name: &str, grid: &[f64]) -> Result<()> {
    validate_grid(name, grid)?;
    if !(grid[0] > 0.0 && grid[grid.len() - 1] <= 1.0) {
        return Err(Error::InvalidGrid(format!(
            "{name} grid must lie in (0, 1]"
        )));
    }
    Ok(())
}

/// GFP and VCG existence verdicts over `(beta_2, alpha_2)`.
///
/// `non_truthful` in each cell is the GFP verdict. Weights beyond the second
/// position follow [`position_weights`] with `opts.tail`.
pub fn region_sweep_incomplete<D: ValueDistribution + Clone>(
    beta2_grid: &[f64],
    alpha2_grid: &[f64],
    dist: D,
    n: usize,
    opts: &SweepOptions,
) -> Result<RegionGrid<f64>> {
    check_unit_grid("beta2", beta2_grid)?;
    check_unit_grid("alpha2", alpha2_grid)?;
    if n < opts.k {
        return Err(Error::Precondition(format!(
            "need n >= k, got n = {n}, k = {}",
            opts.k
        )));
    }
    let width = alpha2_grid.len();
    let cells = (0..beta2_grid.len() * width)
        .into_par_iter()
        .map(|idx| {
            let (beta2, alpha2) = (beta2_grid[idx / width], alpha2_grid[idx % width]);
            let beta = position_weights(beta2, opts.k, opts.tail)?;
            let alpha = position_weights(alpha2, opts.k, opts.tail)?;
            let parts = BidFunctionParts::new(&alpha, &beta, dist.clone(), n)?;
            Ok(RegionCell {
                beta2,
                alpha2,
                non_truthful: classify_parts(&parts, MechanismKind::AlphaGfp, &opts.monotone)?
                    .increasing_ae,
                vcg: classify_parts(&parts, MechanismKind::AlphaVcg, &opts.monotone)?.increasing_ae,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionGrid {
        beta2: beta2_grid.to_vec(),
        alpha2: alpha2_grid.to_vec(),
        cells,
    })
}

/// One derivative sample of a candidate bidding function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub mechanism: MechanismKind,
    pub alpha2: f64,
    pub v: f64,
    pub db_dv: f64,
}

/// Derivatives of `b^F` and `b^V` for two positions with `beta = (1, beta2)`.
///
/// Rows are ordered by mechanism (GFP first), then `alpha2` as given, then `v`.
pub fn derivative_curves<D: ValueDistribution + Clone>(
    beta2: f64,
    alpha2_list: &[f64],
    grid: &[f64],
    dist: D,
    n: usize,
) -> Result<Vec<CurveSample>> {
    validate_grid("v", grid)?;
    let beta = position_weights(beta2, 2, 1.0)?;
    let mut out = Vec::with_capacity(2 * alpha2_list.len() * grid.len());
    for kind in [MechanismKind::AlphaGfp, MechanismKind::AlphaVcg] {
        let rows = alpha2_list
            .par_iter()
            .map(|&alpha2| {
                let alpha = position_weights(alpha2, 2, 1.0)?;
                let parts = BidFunctionParts::new(&alpha, &beta, dist.clone(), n)?;
                let d = parts.derivative_on_grid(kind, grid)?;
                Ok(grid
                    .iter()
                    .zip(d)
                    .map(|(&v, db_dv)| CurveSample {
                        mechanism: kind,
                        alpha2,
                        v,
                        db_dv,
                    })
                    .collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        out.extend(rows.into_iter().flatten());
    }
    Ok(out)
}
