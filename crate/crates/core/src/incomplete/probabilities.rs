use super::distribution::{Distribution, ValueDistribution};
use crate::{Error, Result};

/// `C(n, r)` as a float, zero outside `0 <= r <= n`.
pub fn binomial_f64(n: i64, r: i64) -> f64 {
    if r < 0 || n < 0 || r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `coeff * g^eg * f^ef`, taken as zero when `coeff` is zero so that
/// negative exponents of a vanishing base never arise.
pub(crate) fn monomial(coeff: f64, g: f64, eg: i64, f: f64, ef: i64) -> f64 {
    if coeff == 0.0 {
        0.0
    } else {
        coeff * g.powi(eg as i32) * f.powi(ef as i32)
    }
}

/// Probabilities `P_s(v)` that value `v` is the `s`-highest of `n` i.i.d.
/// draws, with their first two derivatives in `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct AllocationProbabilities<D = Distribution> {
    n: usize,
    k: usize,
    dist: D,
}

impl<D: ValueDistribution> AllocationProbabilities<D> {
    pub fn new(n: usize, k: usize, dist: D) -> Result<Self> {
        if k == 0 || n < k {
            return Err(Error::Precondition(format!(
                "need 1 <= k <= n, got n = {n}, k = {k}"
            )));
        }
        Ok(Self { n, k, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn distribution(&self) -> &D {
        &self.dist
    }

    pub fn support_max(&self) -> f64 {
        self.dist.support_max()
    }

    fn check_rank(&self, s: usize) {
        assert!(s >= 1 && s <= self.n, "rank {s} outside 1..={}", self.n);
    }

    /// `P_s` as a polynomial in `F`.
    pub fn p_of_cdf(&self, s: usize, cdf: f64) -> f64 {
        self.check_rank(s);
        let (n, s) = (self.n as i64, s as i64);
        monomial(binomial_f64(n - 1, s - 1), 1.0 - cdf, s - 1, cdf, n - s)
    }

    /// `dP_s / dF`.
    pub fn dp_dcdf(&self, s: usize, cdf: f64) -> f64 {
        self.check_rank(s);
        let (n, s) = (self.n as i64, s as i64);
        let g = 1.0 - cdf;
        binomial_f64(n - 1, s - 1)
            * (monomial((n - s) as f64, g, s - 1, cdf, n - s - 1)
                - monomial((s - 1) as f64, g, s - 2, cdf, n - s))
    }

    /// `d^2 P_s / dF^2`.
    pub fn d2p_dcdf2(&self, s: usize, cdf: f64) -> f64 {
        self.check_rank(s);
        let (n, s) = (self.n as i64, s as i64);
        let g = 1.0 - cdf;
        binomial_f64(n - 1, s - 1)
            * (monomial(((n - s) * (n - s - 1)) as f64, g, s - 1, cdf, n - s - 2)
                - monomial((2 * (s - 1) * (n - s)) as f64, g, s - 2, cdf, n - s - 1)
                + monomial(((s - 1) * (s - 2)) as f64, g, s - 3, cdf, n - s))
    }

    pub fn p(&self, s: usize, v: f64) -> f64 {
        self.p_of_cdf(s, self.dist.cdf(v))
    }

    /// `dP_s / dv = (dP_s / dF) f`.
    pub fn dp(&self, s: usize, v: f64) -> f64 {
        self.dp_dcdf(s, self.dist.cdf(v)) * self.dist.pdf(v)
    }

    /// `d^2 P_s / dv^2 = (d^2 P_s / dF^2) f^2 + (dP_s / dF) f'`.
    pub fn d2p(&self, s: usize, v: f64) -> f64 {
        let cdf = self.dist.cdf(v);
        let f = self.dist.pdf(v);
        let dpf = self.dp_dcdf(s, cdf);
        let fp = if dpf == 0.0 {
            0.0
        } else {
            dpf * self.dist.pdf_prime(v)
        };
        self.d2p_dcdf2(s, cdf) * f * f + fp
    }

    /// `sum_s w_s g(s)` over the first `k` ranks.
    pub(crate) fn weighted<G: Fn(usize) -> f64>(&self, weights: &[f64], g: G) -> f64 {
        weights.iter().enumerate().map(|(i, w)| w * g(i + 1)).sum()
    }
}
