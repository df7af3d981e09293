//! Complete information: equilibrium bid profiles that reproduce the truthful
//! VCG outcome under the alpha-GSP and alpha-VCG mechanisms, an exhaustive
//! Nash checker, and sweeps over `(alpha, beta)`.
//!
//! All routines accept unsorted values; internally the instance is put in
//! canonical order and witness bids are reported in that order.

mod nash;
mod support;
mod sweep;

pub use nash::{nash_check, nash_verify, NashReport};
pub use support::{
    gsp_support, theorem1_check, theorem1_proof_chain, three_position_thresholds, vcg_support,
    FailureKind, FeasibilityResult, ProofChain, SupportFailure, ThreePositionThresholds,
};
pub use sweep::{
    random_instance, region_sweep_complete, theorem1_sweep, RandomInstanceConfig, Theorem1Stats,
};
