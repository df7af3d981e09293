use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::incomplete::ValueDistribution;
use crate::region::validate_grid;
use crate::{Error, MechanismKind, QualityVector, Result};

/// Bidding function given by values on a grid, linearly interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedBid {
    grid: Vec<f64>,
    bids: Vec<f64>,
}

impl TabulatedBid {
    pub fn new(grid: Vec<f64>, bids: Vec<f64>) -> Result<Self> {
        if grid.len() < 2 || grid.len() != bids.len() {
            return Err(Error::LengthMismatch {
                what: "tabulated bids",
                expected: grid.len().max(2),
                got: bids.len(),
            });
        }
        validate_grid("tabulation", &grid)?;
        if let Some(b) = bids.iter().find(|b| !b.is_finite()) {
            return Err(Error::Precondition(format!(
                "tabulated bid {b} is not finite"
            )));
        }
        Ok(Self { grid, bids })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(grid: Vec<f64>, f: F) -> Result<Self> {
        let bids = grid.iter().map(|&v| f(v)).collect();
        Self::new(grid, bids)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn bids(&self) -> &[f64] {
        &self.bids
    }

    /// Bid at the top of the grid.
    pub fn max_value_bid(&self) -> f64 {
        self.bids[self.bids.len() - 1]
    }

    /// Interpolated bid, clamped to the grid range.
    pub fn eval(&self, v: f64) -> f64 {
        let last = self.grid.len() - 1;
        if v <= self.grid[0] {
            return self.bids[0];
        }
        if v >= self.grid[last] {
            return self.bids[last];
        }
        let hi = self.grid.partition_point(|&g| g <= v);
        let lo = hi - 1;
        let w = (v - self.grid[lo]) / (self.grid[hi] - self.grid[lo]);
        self.bids[lo] + w * (self.bids[hi] - self.bids[lo])
    }

    /// `count` evenly spaced bids on `[0, b(vmax)]` plus one probe above.
    pub fn deviation_grid(&self, count: usize) -> Vec<f64> {
        let top = self.max_value_bid();
        let mut out: Vec<f64> = (0..count)
            .map(|i| top * i as f64 / (count.max(2) - 1) as f64)
            .collect();
        out.push(1.05 * top + 1e-3);
        out
    }
}

/// Symmetric game in which every opponent bids by the same function.
#[derive(Debug, Clone)]
pub struct BneGame<'a, D> {
    pub kind: MechanismKind,
    pub alpha: &'a QualityVector<f64>,
    pub beta: &'a QualityVector<f64>,
    pub dist: &'a D,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
    pub eps: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            seed: 0,
            eps: 5e-3,
        }
    }
}

/// Best deviation found at one value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McPointReport {
    pub v: f64,
    pub bid: f64,
    pub best_deviation_bid: f64,
    /// Mean utility gain of the best deviation over bidding `bid`.
    pub best_deviation_gain: f64,
    pub stderr: f64,
    pub pass: bool,
}

/// Monte-Carlo best-response check of a symmetric bidding function.
///
/// At each value `v` the utility of bidding `bidfn(v)` is compared with each
/// bid in `bid_grid` on the same opponent draws. The deviator loses ties.
/// A point passes when the best mean gain is at most `eps + 3 * stderr`.
/// Point `i` draws from stream `i` of `cfg.seed`.
pub fn mc_bne_verify<D: ValueDistribution>(
    game: &BneGame<'_, D>,
    bidfn: &TabulatedBid,
    value_grid: &[f64],
    bid_grid: &[f64],
    cfg: &McConfig,
) -> Result<Vec<McPointReport>> {
    let k = game.alpha.len();
    if game.beta.len() != k {
        return Err(Error::LengthMismatch {
            what: "beta",
            expected: k,
            got: game.beta.len(),
        });
    }
    if game.n < 2 {
        return Err(Error::Precondition("needs at least two agents".into()));
    }
    if cfg.samples < 10_000 {
        return Err(Error::Precondition(format!(
            "at least 10^4 samples are required, got {}",
            cfg.samples
        )));
    }
    if bid_grid.is_empty() || bid_grid.iter().any(|b| b.is_nan() || *b < 0.0) {
        return Err(Error::InvalidGrid(
            "deviation bids must be non-negative and non-empty".into(),
        ));
    }
    let vmax = game.dist.support_max();
    if let Some(v) = value_grid.iter().find(|v| !(0.0..=vmax).contains(*v)) {
        return Err(Error::InvalidGrid(format!("value {v} outside [0, {vmax}]")));
    }
    value_grid
        .par_iter()
        .enumerate()
        .map(|(idx, &v)| Ok(verify_point(game, bidfn, v, bid_grid, cfg, idx as u64)))
        .collect()
}

fn verify_point<D: ValueDistribution>(
    game: &BneGame<'_, D>,
    bidfn: &TabulatedBid,
    v: f64,
    bid_grid: &[f64],
    cfg: &McConfig,
    stream: u64,
) -> McPointReport {
    let k = game.alpha.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let own = bidfn.eval(v);
    let mut sum = vec![0.0; bid_grid.len()];
    let mut sum_sq = vec![0.0; bid_grid.len()];
    let mut others = vec![0.0; game.n - 1];
    // VCG payment by rank for the current draw
    let mut vcg_pay = vec![0.0; k + 2];
    for _ in 0..cfg.samples {
        for o in others.iter_mut() {
            *o = bidfn.eval(game.dist.quantile(rng.gen::<f64>()));
        }
        others.sort_unstable_by(|a, b| b.total_cmp(a));
        let o = |j: usize| others.get(j - 1).copied().unwrap_or(0.0);
        if game.kind == MechanismKind::AlphaVcg {
            vcg_pay[k + 1] = 0.0;
            for j in (1..=k).rev() {
                vcg_pay[j] = vcg_pay[j + 1] + game.alpha.step(j) * o(j);
            }
        }
        let utility = |x: f64| {
            let rank = 1 + others.iter().take_while(|&&b| b >= x).count();
            if rank > k {
                return 0.0;
            }
            let pay = match game.kind {
                MechanismKind::AlphaGfp => game.alpha.weight(rank) * x,
                MechanismKind::AlphaGsp => game.alpha.weight(rank) * o(rank),
                MechanismKind::AlphaVcg => vcg_pay[rank],
            };
            game.beta.weight(rank) * v - pay
        };
        let base = utility(own);
        for (j, &x) in bid_grid.iter().enumerate() {
            let gain = utility(x) - base;
            sum[j] += gain;
            sum_sq[j] += gain * gain;
        }
    }
    let s = cfg.samples as f64;
    let (best, mean) = sum
        .iter()
        .map(|x| x / s)
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty deviation grid");
    let var = ((sum_sq[best] - s * mean * mean) / (s - 1.0)).max(0.0);
    let stderr = (var / s).sqrt();
    McPointReport {
        v,
        bid: own,
        best_deviation_bid: bid_grid[best],
        best_deviation_gain: mean,
        stderr,
        pass: mean <= cfg.eps + 3.0 * stderr,
    }
}
