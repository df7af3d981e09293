//! Independent checks: exact combinatorial identities behind the VCG payment
//! reduction, conditional order-statistic densities, and a Monte-Carlo
//! best-response test for symmetric bidding functions.

mod density;
mod identities;
mod montecarlo;

pub use density::{conditional_density, density_reduction_check, vcg_expected_payment_two_ways};
pub use identities::{
    binom_identity_all, binom_identity_check, binomial, coefficient_j, coefficient_j_factored,
    count_failures, j_factorization_all, max_abs_residual, IdentityReport, Residual,
};
pub use montecarlo::{mc_bne_verify, BneGame, McConfig, McPointReport, TabulatedBid};
