//! Position auctions with a misestimated quality vector.
//!
//! `n` agents with scalar values compete for `k` positions whose true relative
//! values are `beta`. The mechanisms only know an estimate `alpha` and charge
//! one of three payment rules on top of the efficient allocation:
//!
//! * alpha-VCG: the externality computed with `alpha`,
//! * alpha-GSP: `alpha_j` times the next-lower bid,
//! * alpha-GFP: `alpha_j` times the agent's own bid.
//!
//! The crate decides for which `(alpha, beta)` pairs each mechanism still
//! supports the truthful VCG outcome in equilibrium, under complete
//! information ([`complete`]) and under i.i.d. private values
//! ([`incomplete`]). [`oracles`] holds the independent verification
//! machinery: exact combinatorial identities, conditional order-statistic
//! densities and a Monte-Carlo best-response checker.
//!
//! Positions and order-statistic ranks are 1-based throughout, matching the
//! usual notation `b_(j)`; agents are plain 0-based vector indices.

pub mod complete;
mod error;
pub mod incomplete;
pub mod mechanism;
pub mod oracles;
mod quality;
pub mod rational;
pub mod region;
mod scalar;

pub use error::{Error, Result};
pub use mechanism::{
    canonical_order, efficient_allocation, is_truthful_vcg_outcome, run_mechanism,
    truthful_vcg_payments, utility, AuctionInstance, BidProfile, MechanismKind, MechanismSpec,
    Outcome,
};
pub use quality::QualityVector;
pub use rational::Rational;
pub use scalar::Scalar;
