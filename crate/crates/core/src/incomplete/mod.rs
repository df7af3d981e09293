//! Incomplete information: values drawn i.i.d. from a common distribution.
//!
//! Any efficient Bayes-Nash equilibrium charges the expected payment
//! `A(v) = sum_s beta_s int_0^v P_s'(t) t dt`. Equating this with the expected
//! payment of alpha-GFP gives the candidate `b^F = A / B`, and with that of
//! alpha-VCG the candidate `b^V = A' / B'`, where `B = sum_s alpha_s P_s`.
//! Each candidate is an equilibrium exactly when it is increasing almost
//! everywhere, which is tested on a grid of analytic derivatives.

mod bidfn;
mod distribution;
mod equilibrium;
mod monotone;
mod probabilities;
mod quadrature;
mod sweep;
mod uniform;

pub use bidfn::{myerson_expected_payment, BidFunctionParts, BidSample};
pub use distribution::{Distribution, ValueDistribution};
pub use equilibrium::{
    classify_parts, exists_efficient_bne, lemma6_boundary, lemma6_numeric_check, lemma7_check,
    theorem2_check, theorem2_check_with, Lemma7Estimate,
};
pub use monotone::{classify_samples, monotone_classify, MonotoneConfig, MonotonicityVerdict};
pub use probabilities::{binomial_f64, AllocationProbabilities};
pub use quadrature::{GaussLegendre, Quadrature};
pub use sweep::{
    derivative_curves, position_weights, region_sweep_incomplete, CurveSample, SweepOptions,
};
pub use uniform::{
    gfp_threshold_uniform, uniform_closed_form_derivatives, uniform_closed_forms,
    vcg_threshold_uniform,
};
