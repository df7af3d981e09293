//! Domain types, the efficient allocation rule and the payment rules shared by
//! both information models.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::{Error, QualityVector, Result, Scalar};

/// Payment rule applied on top of the efficient allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MechanismKind {
    /// Externality computed with `alpha`: `sum_{j>=g} (alpha_j - alpha_{j+1}) b_(j+1)`.
    AlphaVcg,
    /// Next-lower bid: `alpha_g b_(g+1)`.
    AlphaGsp,
    /// Own bid: `alpha_g b_i`.
    AlphaGfp,
}

impl MechanismKind {
    pub fn name(self) -> &'static str {
        match self {
            MechanismKind::AlphaVcg => "vcg",
            MechanismKind::AlphaGsp => "gsp",
            MechanismKind::AlphaGfp => "gfp",
        }
    }
}

impl fmt::Display for MechanismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MechanismKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "vcg" | "alpha-vcg" => Ok(MechanismKind::AlphaVcg),
            "gsp" | "alpha-gsp" => Ok(MechanismKind::AlphaGsp),
            "gfp" | "alpha-gfp" => Ok(MechanismKind::AlphaGfp),
            _ => Err(Error::Parse {
                what: "mechanism",
                input: s.to_string(),
            }),
        }
    }
}

/// A mechanism: payment rule plus the designer's quality estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct MechanismSpec<T> {
    pub kind: MechanismKind,
    pub alpha: QualityVector<T>,
}

impl<T: Scalar> MechanismSpec<T> {
    pub fn new(kind: MechanismKind, alpha: QualityVector<T>) -> Self {
        Self { kind, alpha }
    }

    pub fn k(&self) -> usize {
        self.alpha.len()
    }
}

/// Complete-information problem: true qualities `beta` and one value per agent.
#[derive(Debug, Clone, PartialEq)]
pub struct AuctionInstance<T> {
    beta: QualityVector<T>,
    values: Vec<T>,
}

impl<T: Scalar> AuctionInstance<T> {
    pub fn new(beta: QualityVector<T>, values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInstance(
                "at least one agent is required".into(),
            ));
        }
        if let Some(i) = values
            .iter()
            .position(|v| v.is_strictly_negative() || v.partial_cmp(v).is_none())
        {
            return Err(Error::InvalidInstance(format!(
                "value of agent {i} is {:?}, must be non-negative",
                values[i]
            )));
        }
        Ok(Self { beta, values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn k(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self) -> &QualityVector<T> {
        &self.beta
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Values in canonical (non-increasing) order.
    pub fn sorted_values(&self) -> Vec<T> {
        canonical_order(&self.values)
            .into_iter()
            .map(|i| self.values[i].clone())
            .collect()
    }

    /// The same instance with agents relabelled in canonical order.
    pub fn canonicalized(&self) -> Self {
        Self {
            beta: self.beta.clone(),
            values: self.sorted_values(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1])
    }
}

/// One bid per agent.
#[derive(Debug, Clone, PartialEq)]
pub struct BidProfile<T> {
    bids: Vec<T>,
}

impl<T: Scalar> BidProfile<T> {
    pub fn new(bids: Vec<T>) -> Self {
        Self { bids }
    }

    pub fn n(&self) -> usize {
        self.bids.len()
    }

    pub fn bids(&self) -> &[T] {
        &self.bids
    }

    pub fn into_bids(self) -> Vec<T> {
        self.bids
    }

    /// `b_(i)`: the `i`-th largest bid, zero when `i > n`.
    pub fn order_stat(&self, i: usize) -> T {
        assert!(i >= 1, "order statistics are 1-based");
        let order = canonical_order(&self.bids);
        order
            .get(i - 1)
            .map(|&a| self.bids[a].clone())
            .unwrap_or_else(T::zero)
    }

    /// Bids sorted non-increasingly.
    pub fn sorted(&self) -> Vec<T> {
        canonical_order(&self.bids)
            .into_iter()
            .map(|a| self.bids[a].clone())
            .collect()
    }
}

/// Assignment of agents to positions plus payments.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome<T> {
    /// 1-based position per agent, `None` for agents left without a position.
    pub assignment: Vec<Option<usize>>,
    pub payments: Vec<T>,
}

impl<T: Scalar> Outcome<T> {
    pub fn position(&self, agent: usize) -> Option<usize> {
        self.assignment[agent]
    }

    /// Agent holding 1-based `position`, if any.
    pub fn agent_at(&self, position: usize) -> Option<usize> {
        self.assignment.iter().position(|p| *p == Some(position))
    }
}

/// Agents sorted by non-increasing value, ties broken by ascending index.
pub fn canonical_order<T: PartialOrd>(values: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    // stable sort keeps ascending indices among equal values
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(Ordering::Equal));
    order
}

/// Agent with the `i`-th highest bid gets position `i` for `i <= k`.
pub fn efficient_allocation<T: Scalar>(bids: &BidProfile<T>, k: usize) -> Vec<Option<usize>> {
    let mut assignment = vec![None; bids.n()];
    for (rank, agent) in canonical_order(bids.bids()).into_iter().enumerate().take(k) {
        assignment[agent] = Some(rank + 1);
    }
    assignment
}

/// Truthful VCG price of each position, `p_j = sum_{i=j}^k (beta_i - beta_{i+1}) v_(i+1)`.
///
/// The result has length `k` and is non-increasing and non-negative.
pub fn truthful_vcg_payments<T: Scalar>(instance: &AuctionInstance<T>) -> Vec<T> {
    let sorted = instance.sorted_values();
    let beta = instance.beta();
    externality_prices(beta, &sorted)
}

/// `sum_{i=j}^k (w_i - w_{i+1}) x_(i+1)` for `j = 1..=k`, with `sorted` the
/// non-increasing order statistics (missing ones count as zero).
pub(crate) fn externality_prices<T: Scalar>(weights: &QualityVector<T>, sorted: &[T]) -> Vec<T> {
    let k = weights.len();
    let stat = |i: usize| sorted.get(i - 1).cloned().unwrap_or_else(T::zero);
    let mut prices = vec![T::zero(); k];
    let mut acc = T::zero();
    for j in (1..=k).rev() {
        acc = acc + weights.step(j) * stat(j + 1);
        prices[j - 1] = acc.clone();
    }
    prices
}

/// Runs the efficient allocation and the payment rule of `spec` on `bids`.
pub fn run_mechanism<T: Scalar>(
    spec: &MechanismSpec<T>,
    bids: &BidProfile<T>,
) -> Result<Outcome<T>> {
    if let Some(agent) = bids
        .bids()
        .iter()
        .position(|b| b.is_strictly_negative() || b.partial_cmp(b).is_none())
    {
        return Err(Error::NegativeBid {
            agent,
            bid: format!("{:?}", bids.bids()[agent]),
        });
    }
    let k = spec.k();
    let assignment = efficient_allocation(bids, k);
    let sorted = bids.sorted();
    let stat = |i: usize| sorted.get(i - 1).cloned().unwrap_or_else(T::zero);
    let alpha = &spec.alpha;
    let vcg_prices = match spec.kind {
        MechanismKind::AlphaVcg => externality_prices(alpha, &sorted),
        _ => Vec::new(),
    };
    let payments = assignment
        .iter()
        .enumerate()
        .map(|(agent, pos)| match *pos {
            None => T::zero(),
            Some(j) => match spec.kind {
                MechanismKind::AlphaVcg => vcg_prices[j - 1].clone(),
                MechanismKind::AlphaGsp => alpha.weight(j) * stat(j + 1),
                MechanismKind::AlphaGfp => alpha.weight(j) * bids.bids()[agent].clone(),
            },
        })
        .collect();
    Ok(Outcome {
        assignment,
        payments,
    })
}

/// `beta_{g_i} v_i - p_i`, with quality zero for an unassigned agent.
pub fn utility<T: Scalar>(
    agent_value: &T,
    outcome: &Outcome<T>,
    beta: &QualityVector<T>,
    agent: usize,
) -> T {
    let quality = outcome
        .position(agent)
        .map(|j| beta.weight(j))
        .unwrap_or_else(T::zero);
    quality * agent_value.clone() - outcome.payments[agent].clone()
}

/// Whether `outcome` is the efficient assignment for the true values with
/// payments within `tol` of the truthful VCG prices.
pub fn is_truthful_vcg_outcome<T: Scalar>(
    outcome: &Outcome<T>,
    instance: &AuctionInstance<T>,
    tol: &T,
) -> bool {
    if outcome.assignment.len() != instance.n() || outcome.payments.len() != instance.n() {
        return false;
    }
    let values = BidProfile::new(instance.values().to_vec());
    if outcome.assignment != efficient_allocation(&values, instance.k()) {
        return false;
    }
    let prices = truthful_vcg_payments(instance);
    outcome
        .assignment
        .iter()
        .zip(&outcome.payments)
        .all(|(pos, pay)| {
            let target = pos.map(|j| prices[j - 1].clone()).unwrap_or_else(T::zero);
            (pay.clone() - target).abs() <= *tol
        })
}
