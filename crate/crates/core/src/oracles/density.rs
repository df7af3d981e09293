use super::identities::IdentityReport;
use crate::incomplete::{binomial_f64, AllocationProbabilities, Quadrature, ValueDistribution};
use crate::{Error, QualityVector, Result};

/// `I_{l,s}(v,t)`: density at `t` of the `(l+1)`-highest of `n` values given
/// that the `s`-highest equals `v`.
///
/// `(n-s) f(t) C(n-s-1, n-l-1) F(t)^(n-l-1) (F(v)-F(t))^(l-s) / F(v)^(n-s)`;
/// zero when no `(l+1)`-highest value exists.
pub fn conditional_density<D: ValueDistribution>(
    n: usize,
    s: usize,
    ell: usize,
    dist: &D,
    v: f64,
    t: f64,
) -> Result<f64> {
    if !(1 <= s && s <= ell && ell <= n) {
        return Err(Error::Precondition(format!(
            "need 1 <= s <= l <= n, got n = {n}, s = {s}, l = {ell}"
        )));
    }
    if !(0.0 < t && t < v && v <= dist.support_max()) {
        return Err(Error::Precondition(format!(
            "need 0 < t < v <= vmax, got t = {t}, v = {v}"
        )));
    }
    Ok(density_unchecked(n, s, ell, dist, v, t))
}

fn density_unchecked<D: ValueDistribution>(
    n: usize,
    s: usize,
    ell: usize,
    dist: &D,
    v: f64,
    t: f64,
) -> f64 {
    let (n, s, ell) = (n as i64, s as i64, ell as i64);
    let c = binomial_f64(n - s - 1, n - ell - 1);
    if c == 0.0 {
        return 0.0;
    }
    let (fv, ft) = (dist.cdf(v), dist.cdf(t));
    (n - s) as f64
        * dist.pdf(t)
        * c
        * ft.powi((n - ell - 1) as i32)
        * (fv - ft).powi((ell - s) as i32)
        / fv.powi((n - s) as i32)
}

/// Both sides of the two reductions of `sum_l P_l(v) I_{s,l}(v,t)`:
///
/// * `sum_{l=1}^{s} P_l(v) I_{s,l}(v,t) = C(n-1,s-1) (1-F(t))^(s-1) (n-s) F(t)^(n-s-1) f(t)`,
/// * `sum_{l=1}^{s-1} P_l(v) I_{s-1,l}(v,t) = C(n-1,s-1) (1-F(t))^(s-2) (s-1) F(t)^(n-s) f(t)`.
///
/// Each passes when `|lhs - rhs| <= 1e-10 max(1, |rhs|)`.
pub fn density_reduction_check<D: ValueDistribution + Clone>(
    n: usize,
    k: usize,
    s: usize,
    dist: &D,
    v: f64,
    t: f64,
) -> Result<(IdentityReport, IdentityReport)> {
    if !(1 <= s && s <= k && k <= n) {
        return Err(Error::Precondition(format!(
            "need 1 <= s <= k <= n, got n = {n}, k = {k}, s = {s}"
        )));
    }
    if !(0.0 < t && t < v && v < dist.support_max()) {
        return Err(Error::Precondition(format!(
            "need 0 < t < v < vmax, got t = {t}, v = {v}"
        )));
    }
    let probs = AllocationProbabilities::new(n, k, dist.clone())?;
    let (ni, si) = (n as i64, s as i64);
    let c = binomial_f64(ni - 1, si - 1);
    let (ft, f) = (dist.cdf(t), dist.pdf(t));
    let params = format!("n={n},k={k},s={s},v={v},t={t}");

    let lhs_a: f64 = (1..=s)
        .map(|l| probs.p(l, v) * density_unchecked(n, l, s, dist, v, t))
        .sum();
    let rhs_a = if n == s {
        0.0
    } else {
        c * (1.0 - ft).powi((si - 1) as i32) * (ni - si) as f64 * ft.powi((ni - si - 1) as i32) * f
    };
    let lhs_b: f64 = (1..s)
        .map(|l| probs.p(l, v) * density_unchecked(n, l, s - 1, dist, v, t))
        .sum();
    let rhs_b = if s == 1 {
        0.0
    } else {
        c * (1.0 - ft).powi((si - 2) as i32) * (si - 1) as f64 * ft.powi((ni - si) as i32) * f
    };
    Ok((
        IdentityReport::real("aequal", params.clone(), lhs_a, rhs_a, 1e-10),
        IdentityReport::real("bequal", params, lhs_b, rhs_b, 1e-10),
    ))
}

/// Expected alpha-VCG payment of an agent with value `v` when all agents bid
/// by `bidfn`, computed two ways:
///
/// 1. `sum_s P_s(v) sum_{l=s}^k (alpha_l - alpha_{l+1}) int_0^v I_{l,s}(v,t) b(t) dt`,
/// 2. `sum_s alpha_s int_0^v P_s'(t) b(t) dt`.
pub fn vcg_expected_payment_two_ways<D, B>(
    alpha: &QualityVector<f64>,
    dist: &D,
    n: usize,
    v: f64,
    bidfn: B,
) -> Result<(f64, f64)>
where
    D: ValueDistribution + Clone,
    B: Fn(f64) -> f64,
{
    let k = alpha.len();
    let probs = AllocationProbabilities::new(n, k, dist.clone())?;
    if !(0.0..=dist.support_max()).contains(&v) {
        return Err(Error::Precondition(format!(
            "value {v} outside [0, {}]",
            dist.support_max()
        )));
    }
    if v == 0.0 {
        return Ok((0.0, 0.0));
    }
    let quad = Quadrature::default();
    let p_at_v: Vec<f64> = (1..=k).map(|s| probs.p(s, v)).collect();
    let conditional = |t: f64| {
        let mut acc = 0.0;
        for s in 1..=k {
            if p_at_v[s - 1] == 0.0 {
                continue;
            }
            let inner: f64 = (s..=k)
                .map(|l| alpha.step(l) * density_unchecked(n, s, l, dist, v, t))
                .sum();
            acc += p_at_v[s - 1] * inner;
        }
        acc * bidfn(t)
    };
    let reduced = |t: f64| {
        let w: f64 = (1..=k).map(|s| alpha.weight(s) * probs.dp(s, t)).sum();
        w * bidfn(t)
    };
    Ok((
        quad.integrate(&conditional, 0.0, v)?,
        quad.integrate(&reduced, 0.0, v)?,
    ))
}
