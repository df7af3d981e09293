use super::distribution::{Distribution, ValueDistribution};
use super::probabilities::AllocationProbabilities;
use super::quadrature::Quadrature;
use crate::{Error, MechanismKind, QualityVector, Result};

/// The pieces `A`, `B` of the candidate bidding functions and their derivatives.
///
/// `A(v) = sum_s beta_s int_0^v P_s'(t) t dt` is the expected payment of any
/// efficient equilibrium and `B(v) = sum_s alpha_s P_s(v)`. The GFP candidate
/// is `A / B`, the VCG candidate `A' / B'`.
#[derive(Debug, Clone)]
pub struct BidFunctionParts<D = Distribution> {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    probs: AllocationProbabilities<D>,
    quad: Quadrature,
}

/// One row of a bidding function tabulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BidSample {
    pub v: f64,
    pub bid: f64,
    pub derivative: f64,
}

impl<D: ValueDistribution> BidFunctionParts<D> {
    /// Needs `alpha` and `beta` of equal length `k <= n`, strictly positive.
    pub fn new(
        alpha: &QualityVector<f64>,
        beta: &QualityVector<f64>,
        dist: D,
        n: usize,
    ) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::LengthMismatch {
                what: "alpha",
                expected: beta.len(),
                got: alpha.len(),
            });
        }
        if let Some(w) = alpha
            .entries()
            .iter()
            .chain(beta.entries())
            .find(|w| **w <= 0.0)
        {
            return Err(Error::InvalidQuality(format!(
                "weights must be positive, got {w}"
            )));
        }
        Ok(Self {
            alpha: alpha.entries().to_vec(),
            beta: beta.entries().to_vec(),
            probs: AllocationProbabilities::new(n, alpha.len(), dist)?,
            quad: Quadrature::default(),
        })
    }

    pub fn with_quadrature(mut self, quad: Quadrature) -> Self {
        self.quad = quad;
        self
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn probs(&self) -> &AllocationProbabilities<D> {
        &self.probs
    }

    pub fn n(&self) -> usize {
        self.probs.n()
    }

    pub fn k(&self) -> usize {
        self.probs.k()
    }

    pub fn support_max(&self) -> f64 {
        self.probs.support_max()
    }

    fn check_v(&self, v: f64) -> Result<()> {
        if (0.0..=self.support_max()).contains(&v) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "value {v} outside [0, {}]",
                self.support_max()
            )))
        }
    }

    fn a_integrand(&self, t: f64) -> f64 {
        t * self.probs.weighted(&self.beta, |s| self.probs.dp(s, t))
    }

    /// `A(v)` by quadrature.
    pub fn a(&self, v: f64) -> Result<f64> {
        self.check_v(v)?;
        self.quad.integrate(&|t| self.a_integrand(t), 0.0, v)
    }

    /// `A` at every point of an ascending grid, accumulated gap by gap.
    pub fn a_on_grid(&self, grid: &[f64]) -> Result<Vec<f64>> {
        if let Some(&v) = grid
            .iter()
            .find(|v| !(0.0..=self.support_max()).contains(*v))
        {
            self.check_v(v)?;
        }
        self.quad
            .cumulative(&|t| self.a_integrand(t), grid, self.support_max())
    }

    pub fn b(&self, v: f64) -> f64 {
        self.probs.weighted(&self.alpha, |s| self.probs.p(s, v))
    }

    pub fn a_prime(&self, v: f64) -> f64 {
        self.a_integrand(v)
    }

    pub fn b_prime(&self, v: f64) -> f64 {
        self.probs.weighted(&self.alpha, |s| self.probs.dp(s, v))
    }

    pub fn a_second(&self, v: f64) -> f64 {
        self.probs.weighted(&self.beta, |s| {
            self.probs.d2p(s, v) * v + self.probs.dp(s, v)
        })
    }

    pub fn b_second(&self, v: f64) -> f64 {
        self.probs.weighted(&self.alpha, |s| self.probs.d2p(s, v))
    }

    /// `(n-k)/(n-k+1) * beta_k / alpha_k`, the slope of `b^F` at zero when
    /// the density is positive at zero.
    pub fn gfp_slope_at_zero(&self) -> f64 {
        let (n, k) = (self.n() as f64, self.k() as f64);
        (n - k) / (n - k + 1.0) * self.beta[self.k() - 1] / self.alpha[self.k() - 1]
    }

    fn gfp_from_a(&self, a: f64, v: f64) -> Result<f64> {
        if v == 0.0 {
            return Ok(0.0);
        }
        let b = self.b(v);
        if b <= 0.0 {
            return Err(Error::DenominatorVanishes { v });
        }
        Ok(a / b)
    }

    fn gfp_derivative_from_a(&self, a: f64, v: f64) -> Result<f64> {
        let b = self.b(v);
        if b <= 0.0 {
            if v != 0.0 {
                return Err(Error::DenominatorVanishes { v });
            }
            if self.probs.distribution().pdf(0.0) > 0.0 {
                return Ok(self.gfp_slope_at_zero());
            }
            // the closed-form slope needs f(0) > 0; extrapolate instead
            let h = 1e-4 * self.support_max();
            return Ok(2.0 * self.gfp_bid(h)? / h - self.gfp_bid(2.0 * h)? / (2.0 * h));
        }
        Ok((self.a_prime(v) * b - a * self.b_prime(v)) / (b * b))
    }

    /// `b^F(v) = A(v) / B(v)`, zero at `v = 0`.
    pub fn gfp_bid(&self, v: f64) -> Result<f64> {
        let a = self.a(v)?;
        self.gfp_from_a(a, v)
    }

    /// `(A' B - A B') / B^2`; at a vanishing `B(0)` the limit `gfp_slope_at_zero`.
    pub fn gfp_bid_derivative(&self, v: f64) -> Result<f64> {
        let a = self.a(v)?;
        self.gfp_derivative_from_a(a, v)
    }

    /// True when `B'(v)` is zero up to rounding relative to its terms.
    fn b_prime_vanishes(&self, v: f64) -> bool {
        let scale = self
            .probs
            .weighted(&self.alpha, |s| self.probs.dp(s, v).abs());
        self.b_prime(v).abs() <= 1e-12 * scale
    }

    /// `b^V(v) = A'(v) / B'(v)`, zero at `v = 0`.
    ///
    /// At `v = vmax` a vanishing `B'` falls back to `A'' / B''` when `A'`
    /// vanishes too and reports [`Error::Diverges`] otherwise. Elsewhere a
    /// vanishing `B'` is [`Error::DenominatorVanishes`].
    pub fn vcg_bid(&self, v: f64) -> Result<f64> {
        self.check_v(v)?;
        if v == 0.0 {
            return Ok(0.0);
        }
        if !self.b_prime_vanishes(v) {
            return Ok(self.a_prime(v) / self.b_prime(v));
        }
        if v < self.support_max() {
            return Err(Error::DenominatorVanishes { v });
        }
        let scale = v * self
            .probs
            .weighted(&self.beta, |s| self.probs.dp(s, v).abs());
        if self.a_prime(v).abs() > 1e-12 * scale {
            return Err(Error::Diverges { v });
        }
        let b2 = self.b_second(v);
        if b2 == 0.0 {
            return Err(Error::Diverges { v });
        }
        Ok(self.a_second(v) / b2)
    }

    /// `(A'' B' - A' B'') / B'^2`.
    pub fn vcg_bid_derivative(&self, v: f64) -> Result<f64> {
        self.check_v(v)?;
        if self.b_prime_vanishes(v) {
            return Err(Error::DenominatorVanishes { v });
        }
        let bp = self.b_prime(v);
        Ok((self.a_second(v) * bp - self.a_prime(v) * self.b_second(v)) / (bp * bp))
    }

    pub fn bid(&self, kind: MechanismKind, v: f64) -> Result<f64> {
        match kind {
            MechanismKind::AlphaGfp => self.gfp_bid(v),
            MechanismKind::AlphaVcg => self.vcg_bid(v),
            MechanismKind::AlphaGsp => Err(Error::UnsupportedMechanism {
                mechanism: kind.name(),
            }),
        }
    }

    /// Bid and derivative over an ascending grid in `[0, vmax]`.
    pub fn tabulate(&self, kind: MechanismKind, grid: &[f64]) -> Result<Vec<BidSample>> {
        match kind {
            MechanismKind::AlphaGfp => {
                let a = self.a_on_grid(grid)?;
                grid.iter()
                    .zip(a)
                    .map(|(&v, a)| {
                        Ok(BidSample {
                            v,
                            bid: self.gfp_from_a(a, v)?,
                            derivative: self.gfp_derivative_from_a(a, v)?,
                        })
                    })
                    .collect()
            }
            MechanismKind::AlphaVcg => grid
                .iter()
                .map(|&v| {
                    Ok(BidSample {
                        v,
                        bid: self.vcg_bid(v)?,
                        derivative: self.vcg_bid_derivative(v)?,
                    })
                })
                .collect(),
            MechanismKind::AlphaGsp => Err(Error::UnsupportedMechanism {
                mechanism: kind.name(),
            }),
        }
    }

    /// Derivative of the candidate bidding function over an ascending grid.
    pub fn derivative_on_grid(&self, kind: MechanismKind, grid: &[f64]) -> Result<Vec<f64>> {
        match kind {
            MechanismKind::AlphaGfp => {
                let a = self.a_on_grid(grid)?;
                grid.iter()
                    .zip(a)
                    .map(|(&v, a)| self.gfp_derivative_from_a(a, v))
                    .collect()
            }
            MechanismKind::AlphaVcg => grid.iter().map(|&v| self.vcg_bid_derivative(v)).collect(),
            MechanismKind::AlphaGsp => Err(Error::UnsupportedMechanism {
                mechanism: kind.name(),
            }),
        }
    }
}

/// Expected equilibrium payment `sum_s beta_s int_0^v P_s'(t) t dt` of an
/// agent with value `v` under any efficient allocation with zero payment at zero.
pub fn myerson_expected_payment<D: ValueDistribution>(
    probs: &AllocationProbabilities<D>,
    beta: &QualityVector<f64>,
    v: f64,
) -> Result<f64> {
    if beta.len() != probs.k() {
        return Err(Error::LengthMismatch {
            what: "beta",
            expected: probs.k(),
            got: beta.len(),
        });
    }
    if !(0.0..=probs.support_max()).contains(&v) {
        return Err(Error::Precondition(format!(
            "value {v} outside [0, {}]",
            probs.support_max()
        )));
    }
    let integrand = |t: f64| t * probs.weighted(beta.entries(), |s| probs.dp(s, t));
    Quadrature::default().integrate(&integrand, 0.0, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(alpha: &[f64], beta: &[f64], d: Distribution, n: usize) -> BidFunctionParts {
        let a = QualityVector::new(alpha.to_vec()).unwrap();
        let b = QualityVector::new(beta.to_vec()).unwrap();
        BidFunctionParts::new(&a, &b, d, n).unwrap()
    }

    fn unif() -> Distribution {
        Distribution::uniform(1.0).unwrap()
    }

    #[test]
    fn myerson_examples() {
        let probs = AllocationProbabilities::new(3, 2, unif()).unwrap();
        let beta = QualityVector::new(vec![1.0, 0.8]).unwrap();
        for v in [0.0, 0.25, 0.6, 1.0] {
            let exact = 2.0 / 3.0 * v * v * v + 0.8 * v * v - 4.0 / 3.0 * 0.8 * v * v * v;
            assert!((myerson_expected_payment(&probs, &beta, v).unwrap() - exact).abs() < 1e-14);
        }
        let probs = AllocationProbabilities::new(2, 1, unif()).unwrap();
        let beta = QualityVector::new(vec![1.0]).unwrap();
        assert!((myerson_expected_payment(&probs, &beta, 0.5).unwrap() - 0.125).abs() < 1e-15);
        assert!(myerson_expected_payment(&probs, &beta, 1.5).is_err());
    }

    #[test]
    fn bid_examples() {
        let p = parts(&[1.0, 0.5], &[1.0, 0.8], unif(), 3);
        assert!((p.gfp_bid(0.5).unwrap() - 0.3).abs() < 1e-12);
        assert_eq!(p.gfp_bid(0.0).unwrap(), 0.0);
        let p = parts(&[1.0, 0.75], &[1.0, 0.8], unif(), 3);
        assert!((p.vcg_bid(0.5).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(p.vcg_bid(0.0).unwrap(), 0.0);
    }

    #[test]
    fn classic_first_price() {
        for n in 2..6 {
            let p = parts(&[1.0], &[1.0], unif(), n);
            for v in [0.1, 0.5, 0.9] {
                let expected = (n as f64 - 1.0) / n as f64 * v;
                assert!((p.gfp_bid(v).unwrap() - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn vcg_truthful_when_weights_match() {
        let d = Distribution::power(2.0, 3.0).unwrap();
        let p = parts(&[1.0, 0.6, 0.2], &[1.0, 0.6, 0.2], d, 5);
        for i in 1..30 {
            let v = 3.0 * i as f64 / 30.0;
            assert!((p.vcg_bid(v).unwrap() - v).abs() < 1e-12 * v.max(1.0));
        }
    }

    #[test]
    fn endpoint_behaviour() {
        // alpha_2 = 1 > beta_2: B'(1) = 0 while A'(1) > 0
        let p = parts(&[1.0, 1.0], &[1.0, 0.8], unif(), 3);
        assert!(matches!(p.vcg_bid(1.0), Err(Error::Diverges { .. })));
        assert!(p.vcg_bid(0.999).unwrap() > 100.0);
        // alpha = beta = (1, 1): l'Hopital limit 1
        let p = parts(&[1.0, 1.0], &[1.0, 1.0], unif(), 3);
        assert!((p.vcg_bid(1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn corollary_structure_by_finite_differences() {
        let d = Distribution::power(2.0, 1.0).unwrap();
        let p = parts(&[1.0, 0.7, 0.3], &[1.0, 0.5, 0.4], d, 5);
        let h = 1e-5;
        for v in [0.2, 0.5, 0.8] {
            let fd_a = (p.a(v + h).unwrap() - p.a(v - h).unwrap()) / (2.0 * h);
            assert!((fd_a - p.a_prime(v)).abs() < 1e-6);
            let fd_b = (p.b(v + h) - p.b(v - h)) / (2.0 * h);
            assert!((fd_b - p.b_prime(v)).abs() < 1e-6);
            let fd_a2 = (p.a_prime(v + h) - p.a_prime(v - h)) / (2.0 * h);
            assert!((fd_a2 - p.a_second(v)).abs() < 1e-6);
            let fd_b2 = (p.b_prime(v + h) - p.b_prime(v - h)) / (2.0 * h);
            assert!((fd_b2 - p.b_second(v)).abs() < 1e-6);
            let fd_gfp = (p.gfp_bid(v + h).unwrap() - p.gfp_bid(v - h).unwrap()) / (2.0 * h);
            assert!((fd_gfp - p.gfp_bid_derivative(v).unwrap()).abs() < 1e-6);
            let fd_vcg = (p.vcg_bid(v + h).unwrap() - p.vcg_bid(v - h).unwrap()) / (2.0 * h);
            assert!((fd_vcg - p.vcg_bid_derivative(v).unwrap()).abs() < 1e-5);
        }
    }

    #[test]
    fn tabulation_matches_pointwise() {
        let p = parts(&[1.0, 0.5], &[1.0, 0.8], unif(), 3);
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let tab = p.tabulate(MechanismKind::AlphaGfp, &grid).unwrap();
        for s in &tab {
            assert!((s.bid - p.gfp_bid(s.v).unwrap()).abs() < 1e-13);
        }
        assert!((tab[0].derivative - p.gfp_slope_at_zero()).abs() < 1e-15);
        assert!(p.tabulate(MechanismKind::AlphaGsp, &grid).is_err());
    }

    #[test]
    fn rejects_invalid_inputs() {
        let a = QualityVector::new(vec![1.0, 0.5]).unwrap();
        let b = QualityVector::new(vec![1.0]).unwrap();
        assert!(BidFunctionParts::new(&a, &b, unif(), 3).is_err());
        let p = parts(&[1.0, 0.5], &[1.0, 0.8], unif(), 3);
        assert!(p.gfp_bid(1.2).is_err());
        assert!(p.vcg_bid(-0.1).is_err());
    }
}
