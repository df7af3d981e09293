use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::nash::nash_verify;
use super::support::{gsp_support, vcg_support, FeasibilityResult};
use crate::rational::{int, ratio};
use crate::region::{validate_grid, RegionCell, RegionGrid};
use crate::{
    is_truthful_vcg_outcome, run_mechanism, AuctionInstance, Error, MechanismKind, MechanismSpec,
    QualityVector, Rational, Result, Scalar,
};

/// GSP and VCG verdicts over `(beta_2, alpha_2)` with three positions,
/// `alpha_1 = beta_1 = 1` and `alpha_3 = beta_3 = alpha3`.
///
/// Both grids must be ascending and inside `[alpha3, 1]`.
pub fn region_sweep_complete<T: Scalar>(
    beta2_grid: &[T],
    alpha2_grid: &[T],
    alpha3: &T,
    values: &[T],
) -> Result<RegionGrid<T>> {
    validate_grid("beta2", beta2_grid)?;
    validate_grid("alpha2", alpha2_grid)?;
    if !alpha3.is_strictly_positive() || *alpha3 > T::one() {
        return Err(Error::InvalidGrid(format!(
            "alpha3 must lie in (0, 1], got {alpha3:?}"
        )));
    }
    for (name, grid) in [("beta2", beta2_grid), ("alpha2", alpha2_grid)] {
        if grid[0] < *alpha3 || grid[grid.len() - 1] > T::one() {
            return Err(Error::InvalidGrid(format!(
                "{name} grid must lie in [alpha3, 1] = [{alpha3:?}, 1]"
            )));
        }
    }
    let weights = |x: &T| QualityVector::new(vec![T::one(), x.clone(), alpha3.clone()]);
    let width = alpha2_grid.len();
    let cells = (0..beta2_grid.len() * width)
        .into_par_iter()
        .map(|idx| {
            let (beta2, alpha2) = (&beta2_grid[idx / width], &alpha2_grid[idx % width]);
            let instance = AuctionInstance::new(weights(beta2)?, values.to_vec())?;
            let alpha = weights(alpha2)?;
            Ok(RegionCell {
                beta2: beta2.clone(),
                alpha2: alpha2.clone(),
                non_truthful: gsp_support(&alpha, &instance)?.supported,
                vcg: vcg_support(&alpha, &instance)?.supported,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionGrid {
        beta2: beta2_grid.to_vec(),
        alpha2: alpha2_grid.to_vec(),
        cells,
    })
}

/// Shape of random instances for the GSP/VCG implication sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomInstanceConfig {
    pub max_k: usize,
    pub max_n: usize,
    /// Values lie on `{0, 1/q, ..., 1} * value_scale`; weights on `{1/q, ..., 1}`.
    pub q: i64,
    pub value_scale: i64,
}

impl Default for RandomInstanceConfig {
    fn default() -> Self {
        Self {
            max_k: 6,
            max_n: 8,
            q: 100,
            value_scale: 100,
        }
    }
}

fn sorted_weights<R: Rng>(rng: &mut R, k: usize, q: i64) -> Vec<i64> {
    let mut w: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=q)).collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    w
}

/// Random exact instance: `(alpha, instance)` with `k` and `n` uniform.
///
/// Half of the draws take `alpha` independent of `beta`; the other half
/// perturb `beta` by a few grid steps so that VCG is supported often enough
/// for the implication to be exercised. Weight ties occur on purpose.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    cfg: &RandomInstanceConfig,
) -> (QualityVector<Rational>, AuctionInstance<Rational>) {
    let k = rng.gen_range(1..=cfg.max_k);
    let n = rng.gen_range(1..=cfg.max_n);
    let q = cfg.q;
    let beta = sorted_weights(rng, k, q);
    let alpha = if rng.gen_bool(0.5) {
        sorted_weights(rng, k, q)
    } else {
        let spread = rng.gen_range(0..=3);
        let mut a: Vec<i64> = beta
            .iter()
            .map(|&b| (b + rng.gen_range(-spread..=spread)).clamp(1, q))
            .collect();
        a.sort_unstable_by(|a, b| b.cmp(a));
        a
    };
    let to_q = |w: Vec<i64>| {
        QualityVector::new(w.into_iter().map(|x| ratio(x, q)).collect()).expect("sorted positive")
    };
    let values = (0..n)
        .map(|_| ratio(rng.gen_range(0..=q) * cfg.value_scale, q))
        .collect();
    let instance = AuctionInstance::new(to_q(beta), values).expect("valid values");
    (to_q(alpha), instance)
}

/// Counts from [`theorem1_sweep`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Theorem1Stats {
    pub instances: usize,
    pub vcg_supported: usize,
    pub gsp_supported: usize,
    /// VCG supported while GSP is not.
    pub violations: usize,
    /// Supported witnesses that fail the Nash check or miss the truthful outcome.
    pub witness_failures: usize,
}

impl Theorem1Stats {
    fn merge(self, o: Self) -> Self {
        Self {
            instances: self.instances + o.instances,
            vcg_supported: self.vcg_supported + o.vcg_supported,
            gsp_supported: self.gsp_supported + o.gsp_supported,
            violations: self.violations + o.violations,
            witness_failures: self.witness_failures + o.witness_failures,
        }
    }
}

fn witness_ok(
    kind: MechanismKind,
    alpha: &QualityVector<Rational>,
    instance: &AuctionInstance<Rational>,
    result: &FeasibilityResult<Rational>,
) -> bool {
    let Some(bids) = result.witness_profile() else {
        return false;
    };
    // witnesses index agents in canonical order
    let instance = &instance.canonicalized();
    let spec = MechanismSpec::new(kind, alpha.clone());
    let nash = nash_verify(&spec, &bids, instance, &int(0)).unwrap_or(false);
    let truthful = run_mechanism(&spec, &bids)
        .map(|o| is_truthful_vcg_outcome(&o, instance, &int(0)))
        .unwrap_or(false);
    nash && truthful
}

/// Checks `vcg_supported => gsp_supported` and witness soundness on `count`
/// random instances. Instance `i` is drawn from stream `i` of `seed`, so the
/// result does not depend on the thread count.
pub fn theorem1_sweep(
    count: usize,
    seed: u64,
    cfg: &RandomInstanceConfig,
) -> Result<Theorem1Stats> {
    if cfg.max_k == 0 || cfg.max_n == 0 || cfg.q < 1 || cfg.value_scale < 0 {
        return Err(Error::Precondition(format!(
            "invalid random instance config {cfg:?}"
        )));
    }
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let (alpha, instance) = random_instance(&mut rng, cfg);
            let gsp = gsp_support(&alpha, &instance)?;
            let vcg = vcg_support(&alpha, &instance)?;
            let mut stats = Theorem1Stats {
                instances: 1,
                ..Default::default()
            };
            if gsp.supported {
                stats.gsp_supported = 1;
                if !witness_ok(MechanismKind::AlphaGsp, &alpha, &instance, &gsp) {
                    stats.witness_failures += 1;
                }
            }
            if vcg.supported {
                stats.vcg_supported = 1;
                if !witness_ok(MechanismKind::AlphaVcg, &alpha, &instance, &vcg) {
                    stats.witness_failures += 1;
                }
                if !gsp.supported {
                    stats.violations = 1;
                }
            }
            Ok(stats)
        })
        .try_reduce(Theorem1Stats::default, |a, b| Ok(a.merge(b)))
}
