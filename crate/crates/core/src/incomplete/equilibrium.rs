use super::bidfn::BidFunctionParts;
use super::distribution::ValueDistribution;
use super::monotone::{classify_on_grid, MonotoneConfig, MonotonicityVerdict};
use crate::{Error, MechanismKind, QualityVector, Result};

/// Whether the candidate bidding function of `kind` is increasing almost
/// everywhere, which decides existence of an efficient Bayes-Nash equilibrium.
pub fn exists_efficient_bne<D: ValueDistribution>(
    kind: MechanismKind,
    alpha: &QualityVector<f64>,
    beta: &QualityVector<f64>,
    dist: D,
    n: usize,
) -> Result<MonotonicityVerdict> {
    let parts = BidFunctionParts::new(alpha, beta, dist, n)?;
    classify_parts(&parts, kind, &MonotoneConfig::default())
}

/// [`exists_efficient_bne`] on prebuilt parts with an explicit grid.
pub fn classify_parts<D: ValueDistribution>(
    parts: &BidFunctionParts<D>,
    kind: MechanismKind,
    cfg: &MonotoneConfig,
) -> Result<MonotonicityVerdict> {
    let grid = cfg.grid(parts.support_max());
    let derivative = parts.derivative_on_grid(kind, &grid)?;
    classify_on_grid(grid, derivative, cfg)
}

/// `(vcg_exists, gfp_exists)`; requires `n > k`.
pub fn theorem2_check<D: ValueDistribution>(
    alpha: &QualityVector<f64>,
    beta: &QualityVector<f64>,
    dist: D,
    n: usize,
) -> Result<(bool, bool)> {
    theorem2_check_with(alpha, beta, dist, n, &MonotoneConfig::default())
}

pub fn theorem2_check_with<D: ValueDistribution>(
    alpha: &QualityVector<f64>,
    beta: &QualityVector<f64>,
    dist: D,
    n: usize,
    cfg: &MonotoneConfig,
) -> Result<(bool, bool)> {
    if n <= alpha.len() {
        return Err(Error::Precondition(format!(
            "needs more agents than positions, got n = {n}, k = {}",
            alpha.len()
        )));
    }
    let parts = BidFunctionParts::new(alpha, beta, dist, n)?;
    let vcg = classify_parts(&parts, MechanismKind::AlphaVcg, cfg)?.increasing_ae;
    let gfp = classify_parts(&parts, MechanismKind::AlphaGfp, cfg)?.increasing_ae;
    Ok((vcg, gfp))
}

/// `(n-k)/(n-k+1) * beta_k / alpha_k`, the slope of `b^F` at zero for
/// distributions with `f(0) > 0`.
pub fn lemma6_boundary<D: ValueDistribution>(parts: &BidFunctionParts<D>) -> f64 {
    parts.gfp_slope_at_zero()
}

/// `(b^F(2h) - b^F(h)) / h`, an `O(h)` estimate of the slope of `b^F` at zero.
pub fn lemma6_numeric_check<D: ValueDistribution>(
    parts: &BidFunctionParts<D>,
    h: f64,
) -> Result<f64> {
    check_step(parts, h)?;
    Ok((parts.gfp_bid(2.0 * h)? - parts.gfp_bid(h)?) / h)
}

/// Finite-difference view of `b^F` at zero when `n = k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma7Estimate {
    /// `2 b(h)/h - b(2h)/(2h)`, exact for quadratics.
    pub slope: f64,
    /// `(b(2h) - 2 b(h) + b(0)) / h^2`.
    pub second_difference: f64,
}

pub fn lemma7_check<D: ValueDistribution>(
    parts: &BidFunctionParts<D>,
    h: f64,
) -> Result<Lemma7Estimate> {
    if parts.n() != parts.k() {
        return Err(Error::Precondition(format!(
            "needs as many agents as positions, got n = {}, k = {}",
            parts.n(),
            parts.k()
        )));
    }
    check_step(parts, h)?;
    let (b1, b2) = (parts.gfp_bid(h)?, parts.gfp_bid(2.0 * h)?);
    Ok(Lemma7Estimate {
        slope: 2.0 * b1 / h - b2 / (2.0 * h),
        second_difference: (b2 - 2.0 * b1) / (h * h),
    })
}

fn check_step<D: ValueDistribution>(parts: &BidFunctionParts<D>, h: f64) -> Result<()> {
    if h > 0.0 && 2.0 * h <= parts.support_max() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "step {h} must lie in (0, vmax / 2]"
        )))
    }
}
