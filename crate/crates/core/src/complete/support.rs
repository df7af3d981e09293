use crate::mechanism::truthful_vcg_payments;
use crate::{AuctionInstance, BidProfile, Error, QualityVector, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureKind {
    /// `alpha_j = 0` while the truthful price of position `j` is positive.
    ZeroAlphaPositivePrice,
    /// The implied bids are not non-increasing.
    MonotonicityViolation,
    /// `alpha_j = alpha_{j+1}` while the truthful prices of `j` and `j+1` differ.
    EqualAlphaUnequalPrice,
}

impl FailureKind {
    pub fn name(self) -> &'static str {
        match self {
            FailureKind::ZeroAlphaPositivePrice => "zero_alpha_positive_price",
            FailureKind::MonotonicityViolation => "monotonicity_violation",
            FailureKind::EqualAlphaUnequalPrice => "equal_alpha_unequal_price",
        }
    }
}

/// Position `j` whose constraint breaks the characterization.
///
/// For a monotonicity violation this is the position whose implied bid
/// `b_(j+1)` exceeds the bid `b_(j)` above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportFailure {
    pub position: usize,
    pub kind: FailureKind,
}

/// Whether a mechanism supports the truthful VCG outcome, with a witness.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityResult<T> {
    pub supported: bool,
    /// Equilibrium bids in canonical agent order, present iff `supported`.
    pub witness_bids: Option<Vec<T>>,
    pub failure: Option<SupportFailure>,
}

impl<T: Scalar> FeasibilityResult<T> {
    fn supported(bids: Vec<T>) -> Self {
        Self {
            supported: true,
            witness_bids: Some(bids),
            failure: None,
        }
    }

    fn failed(position: usize, kind: FailureKind) -> Self {
        Self {
            supported: false,
            witness_bids: None,
            failure: Some(SupportFailure { position, kind }),
        }
    }

    pub fn witness_profile(&self) -> Option<BidProfile<T>> {
        self.witness_bids.clone().map(BidProfile::new)
    }
}

fn check_alpha<T: Scalar>(alpha: &QualityVector<T>, instance: &AuctionInstance<T>) -> Result<()> {
    if alpha.len() != instance.k() {
        return Err(Error::LengthMismatch {
            what: "alpha",
            expected: instance.k(),
            got: alpha.len(),
        });
    }
    Ok(())
}

/// Bids `b_(2), ..., b_(m+1)` implied by the first `m = min(k, n-1)` positions.
///
/// `None` marks a bid left free by the characterization. Positions `j >= n`
/// carry no constraint: the missing order statistic is zero and so is the
/// truthful price.
type Chain<T> = Vec<Option<T>>;

/// Fills free bids with the previous bid (or, at the top, the largest later
/// bid) and checks that the chain is non-increasing.
fn complete_chain<T: Scalar>(chain: Chain<T>) -> std::result::Result<Vec<T>, usize> {
    let mut filled: Vec<T> = Vec::with_capacity(chain.len());
    for (idx, slot) in chain.iter().enumerate() {
        let value = match slot {
            Some(b) => b.clone(),
            None => match filled.last() {
                Some(prev) => prev.clone(),
                None => chain[idx..]
                    .iter()
                    .flatten()
                    .cloned()
                    .fold(T::zero(), T::max_of),
            },
        };
        filled.push(value);
    }
    match filled.windows(2).position(|w| w[1] > w[0]) {
        Some(idx) => Err(idx + 2),
        None => Ok(filled),
    }
}

/// Full bid vector in canonical order: `b_1 = b_(2)`, the chain, then zeros.
fn witness<T: Scalar>(chain: Vec<T>, sorted_values: &[T]) -> Vec<T> {
    let n = sorted_values.len();
    let mut bids = Vec::with_capacity(n);
    match chain.first() {
        Some(top) => bids.push(top.clone()),
        None => bids.push(sorted_values[0].clone()),
    }
    bids.extend(chain);
    bids.resize(n, T::zero());
    bids
}

fn decide<T: Scalar>(chain: Chain<T>, sorted: &[T]) -> FeasibilityResult<T> {
    match complete_chain(chain) {
        Ok(filled) => FeasibilityResult::supported(witness(filled, sorted)),
        Err(position) => FeasibilityResult::failed(position, FailureKind::MonotonicityViolation),
    }
}

/// Equilibrium of the alpha-GSP mechanism in which every agent pays its
/// truthful VCG price: `b_(j+1) = p_j / alpha_j` unless `alpha_j = p_j = 0`.
pub fn gsp_support<T: Scalar>(
    alpha: &QualityVector<T>,
    instance: &AuctionInstance<T>,
) -> Result<FeasibilityResult<T>> {
    check_alpha(alpha, instance)?;
    let sorted = instance.sorted_values();
    let prices = truthful_vcg_payments(instance);
    let m = instance.k().min(instance.n() - 1);
    let mut chain = Vec::with_capacity(m);
    for j in 1..=m {
        let a = alpha.weight(j);
        let p = prices[j - 1].clone();
        if a.is_zero() {
            if !p.is_zero() {
                return Ok(FeasibilityResult::failed(
                    j,
                    FailureKind::ZeroAlphaPositivePrice,
                ));
            }
            chain.push(None);
        } else {
            chain.push(Some(p / a));
        }
    }
    Ok(decide(chain, &sorted))
}

/// Equilibrium of the alpha-VCG mechanism in which every agent pays its
/// truthful VCG price: `b_(j+1) = (p_j - p_{j+1}) / (alpha_j - alpha_{j+1})`
/// unless `alpha_j = alpha_{j+1}` and `p_j = p_{j+1}`.
pub fn vcg_support<T: Scalar>(
    alpha: &QualityVector<T>,
    instance: &AuctionInstance<T>,
) -> Result<FeasibilityResult<T>> {
    check_alpha(alpha, instance)?;
    let sorted = instance.sorted_values();
    let prices = truthful_vcg_payments(instance);
    let price = |j: usize| prices.get(j - 1).cloned().unwrap_or_else(T::zero);
    let m = instance.k().min(instance.n() - 1);
    let mut chain = Vec::with_capacity(m);
    for j in 1..=m {
        let da = alpha.step(j);
        let dp = price(j) - price(j + 1);
        if da.is_zero() {
            if !dp.is_zero() {
                return Ok(FeasibilityResult::failed(
                    j,
                    FailureKind::EqualAlphaUnequalPrice,
                ));
            }
            chain.push(None);
        } else {
            chain.push(Some(dp / da));
        }
    }
    Ok(decide(chain, &sorted))
}

/// `(vcg_supported, gsp_supported)` for the same `alpha`, `beta` and values.
pub fn theorem1_check<T: Scalar>(
    alpha: &QualityVector<T>,
    beta: &QualityVector<T>,
    values: &[T],
) -> Result<(bool, bool)> {
    let instance = AuctionInstance::new(beta.clone(), values.to_vec())?;
    let vcg = vcg_support(alpha, &instance)?.supported;
    let gsp = gsp_support(alpha, &instance)?.supported;
    Ok((vcg, gsp))
}

/// Lower bounds on `alpha_2` in the three-position setting with `alpha_1`
/// and `alpha_3` held fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreePositionThresholds<T> {
    /// `alpha_1 p_2 / p_1`
    pub gsp: T,
    /// `(alpha_1 - alpha_3) p_2 / p_1 + alpha_3`
    pub vcg: T,
}

pub fn three_position_thresholds<T: Scalar>(
    alpha1: &T,
    alpha3: &T,
    instance: &AuctionInstance<T>,
) -> Result<ThreePositionThresholds<T>> {
    if instance.k() != 3 {
        return Err(Error::Precondition(format!(
            "three positions required, got {}",
            instance.k()
        )));
    }
    let prices = truthful_vcg_payments(instance);
    let ratio = if prices[0].is_zero() {
        T::zero()
    } else {
        prices[1].clone() / prices[0].clone()
    };
    Ok(ThreePositionThresholds {
        gsp: alpha1.clone() * ratio.clone(),
        vcg: (alpha1.clone() - alpha3.clone()) * ratio + alpha3.clone(),
    })
}

/// The inequality chain used to show that a GSP failure forces a VCG failure.
///
/// `i` is the largest position with `p_i / alpha_i < p_{i+1} / alpha_{i+1}`
/// and `j` the first position after `i` with `alpha_j != alpha_{j+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProofChain<T> {
    pub i: usize,
    pub j: usize,
    /// `(p_i - p_{i+1}) / (alpha_i - alpha_{i+1})`
    pub vcg_bid_i: T,
    /// `p_{i+1} / alpha_{i+1}`
    pub ratio_after_i: T,
    /// `p_j / alpha_j`
    pub ratio_j: T,
    /// `(p_j - p_{j+1}) / (alpha_j - alpha_{j+1})`
    pub vcg_bid_j: T,
    /// Every `m` with `i < m < j` has `p_m = p_{m+1}`.
    pub intermediate_prices_equal: bool,
}

impl<T: Scalar> ProofChain<T> {
    /// `vcg_bid_i < ratio_after_i = ratio_j <= vcg_bid_j`.
    pub fn holds(&self) -> bool {
        self.vcg_bid_i < self.ratio_after_i
            && self.ratio_after_i == self.ratio_j
            && self.ratio_j <= self.vcg_bid_j
    }
}

/// Evaluates the chain when alpha-GSP fails through a ratio violation at a
/// position with `alpha_i > alpha_{i+1} > 0`; `None` otherwise.
pub fn theorem1_proof_chain<T: Scalar>(
    alpha: &QualityVector<T>,
    instance: &AuctionInstance<T>,
) -> Result<Option<ProofChain<T>>> {
    check_alpha(alpha, instance)?;
    let k = instance.k();
    let prices = truthful_vcg_payments(instance);
    let price = |j: usize| prices.get(j - 1).cloned().unwrap_or_else(T::zero);
    let violates = |i: usize| {
        let (a, a_next) = (alpha.weight(i), alpha.weight(i + 1));
        a_next.is_strictly_positive() && price(i) / a < price(i + 1) / a_next
    };
    let Some(i) = (1..k).rev().find(|&i| violates(i)) else {
        return Ok(None);
    };
    if alpha.step(i).is_zero() {
        return Ok(None);
    }
    let j = ((i + 1)..=k)
        .find(|&j| !alpha.step(j).is_zero())
        .expect("alpha_{k+1} = 0 < alpha_{i+1}");
    let intermediate_prices_equal = ((i + 1)..j).all(|m| price(m) == price(m + 1));
    Ok(Some(ProofChain {
        i,
        j,
        vcg_bid_i: (price(i) - price(i + 1)) / alpha.step(i),
        ratio_after_i: price(i + 1) / alpha.weight(i + 1),
        ratio_j: price(j) / alpha.weight(j),
        vcg_bid_j: (price(j) - price(j + 1)) / alpha.step(j),
        intermediate_prices_equal,
    }))
}
