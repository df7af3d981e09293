use std::collections::BTreeSet;

use crate::{
    run_mechanism, utility, AuctionInstance, BidProfile, Error, MechanismKind, MechanismSpec,
    Result, Scalar,
};

/// Largest unilateral gain found by [`nash_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct NashReport<T> {
    /// Never negative: staying put gains zero.
    pub max_gain: T,
    /// Agent and 1-based target rank attaining `max_gain`, if positive.
    pub best_deviation: Option<(usize, usize)>,
}

/// Ranks agent `agent` can reach by changing its bid.
///
/// Another agent ranks above `agent` when its bid is larger, or equal with a
/// smaller index. Bids at each distinct opponent bid, between consecutive
/// ones, at zero, and above the maximum cover every attainable rank.
fn attainable_ranks<T: Scalar>(bids: &[T], agent: usize) -> BTreeSet<usize> {
    let mut levels: Vec<T> = bids
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != agent)
        .map(|(_, b)| b.clone())
        .collect();
    levels.push(T::zero());
    levels.sort_by(|a, b| b.partial_cmp(a).expect("bids are comparable"));
    levels.dedup();
    let two = T::one() + T::one();
    let mut candidates = vec![levels[0].clone() + T::one()];
    for w in levels.windows(2) {
        candidates.push((w[0].clone() + w[1].clone()) / two.clone());
    }
    candidates.extend(levels);
    candidates
        .into_iter()
        .filter(|x| !x.is_strictly_negative())
        .map(|x| {
            1 + bids
                .iter()
                .enumerate()
                .filter(|&(j, b)| j != agent && (*b > x || (*b == x && j < agent)))
                .count()
        })
        .collect()
}

/// Best utility of `agent` over all bids that land it in rank `r`.
///
/// `others` are the opponents' bids sorted non-increasingly; at rank `r` the
/// bid directly below is `others[r-1]`. For GFP this is the supremum, reached
/// in the limit of bidding just enough for the rank.
fn deviation_utility<T: Scalar>(
    spec: &MechanismSpec<T>,
    instance: &AuctionInstance<T>,
    value: &T,
    others: &[T],
    r: usize,
) -> T {
    let k = spec.k();
    if r > k {
        return T::zero();
    }
    let o = |j: usize| others.get(j - 1).cloned().unwrap_or_else(T::zero);
    let alpha = &spec.alpha;
    let payment = match spec.kind {
        MechanismKind::AlphaGsp | MechanismKind::AlphaGfp => alpha.weight(r) * o(r),
        MechanismKind::AlphaVcg => (r..=k).fold(T::zero(), |acc, j| acc + alpha.step(j) * o(j)),
    };
    instance.beta().weight(r) * value.clone() - payment
}

/// Exhaustive best-response check over every attainable rank of every agent.
pub fn nash_check<T: Scalar>(
    spec: &MechanismSpec<T>,
    bids: &BidProfile<T>,
    instance: &AuctionInstance<T>,
) -> Result<NashReport<T>> {
    if bids.n() != instance.n() {
        return Err(Error::LengthMismatch {
            what: "bids",
            expected: instance.n(),
            got: bids.n(),
        });
    }
    if spec.k() != instance.k() {
        return Err(Error::LengthMismatch {
            what: "alpha",
            expected: instance.k(),
            got: spec.k(),
        });
    }
    let outcome = run_mechanism(spec, bids)?;
    let mut report = NashReport {
        max_gain: T::zero(),
        best_deviation: None,
    };
    for agent in 0..instance.n() {
        let value = &instance.values()[agent];
        let current = utility(value, &outcome, instance.beta(), agent);
        let mut others: Vec<T> = bids
            .bids()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != agent)
            .map(|(_, b)| b.clone())
            .collect();
        others.sort_by(|a, b| b.partial_cmp(a).expect("bids are comparable"));
        for r in attainable_ranks(bids.bids(), agent) {
            let gain = deviation_utility(spec, instance, value, &others, r) - current.clone();
            if gain > report.max_gain {
                report.max_gain = gain;
                report.best_deviation = Some((agent, r));
            }
        }
    }
    Ok(report)
}

/// True iff no agent can gain more than `eps` by changing its bid.
pub fn nash_verify<T: Scalar>(
    spec: &MechanismSpec<T>,
    bids: &BidProfile<T>,
    instance: &AuctionInstance<T>,
    eps: &T,
) -> Result<bool> {
    if eps.is_strictly_negative() {
        return Err(Error::Precondition(format!(
            "eps must be non-negative, got {eps:?}"
        )));
    }
    Ok(nash_check(spec, bids, instance)?.max_gain <= *eps)
}
