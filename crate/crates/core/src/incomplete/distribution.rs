use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Value distribution on `[0, support_max]`.
///
/// Implementors must have `cdf(0) = 0`, `cdf(support_max) = 1`, a
/// non-negative density and a bounded density derivative.
pub trait ValueDistribution: fmt::Debug + Send + Sync {
    fn support_max(&self) -> f64;
    fn cdf(&self, v: f64) -> f64;
    fn pdf(&self, v: f64) -> f64;
    fn pdf_prime(&self, v: f64) -> f64;

    /// Inverse of the cdf, used for sampling. The default bisects.
    fn quantile(&self, u: f64) -> f64 {
        let (mut lo, mut hi) = (0.0, self.support_max());
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Built-in families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    /// `F(v) = v / vmax`
    Uniform { vmax: f64 },
    /// `F(v) = (v / vmax)^theta` with `theta >= 1`
    Power { theta: f64, vmax: f64 },
}

impl Distribution {
    pub fn uniform(vmax: f64) -> Result<Self> {
        check_vmax(vmax)?;
        Ok(Distribution::Uniform { vmax })
    }

    pub fn power(theta: f64, vmax: f64) -> Result<Self> {
        check_vmax(vmax)?;
        if !(theta >= 1.0 && theta.is_finite()) {
            return Err(Error::InvalidDistribution(format!(
                "power exponent must be a finite number >= 1, got {theta}"
            )));
        }
        Ok(Distribution::Power { theta, vmax })
    }
}

fn check_vmax(vmax: f64) -> Result<()> {
    if vmax > 0.0 && vmax.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidDistribution(format!(
            "support bound must be positive and finite, got {vmax}"
        )))
    }
}

impl ValueDistribution for Distribution {
    fn support_max(&self) -> f64 {
        match *self {
            Distribution::Uniform { vmax } | Distribution::Power { vmax, .. } => vmax,
        }
    }

    fn cdf(&self, v: f64) -> f64 {
        let x = (v / self.support_max()).clamp(0.0, 1.0);
        match *self {
            Distribution::Uniform { .. } => x,
            Distribution::Power { theta, .. } => x.powf(theta),
        }
    }

    fn pdf(&self, v: f64) -> f64 {
        let vmax = self.support_max();
        if !(0.0..=vmax).contains(&v) {
            return 0.0;
        }
        match *self {
            Distribution::Uniform { .. } => 1.0 / vmax,
            Distribution::Power { theta, .. } => theta * (v / vmax).powf(theta - 1.0) / vmax,
        }
    }

    /// Unbounded at zero for `1 < theta < 2`.
    fn pdf_prime(&self, v: f64) -> f64 {
        let vmax = self.support_max();
        if !(0.0..=vmax).contains(&v) {
            return 0.0;
        }
        match *self {
            Distribution::Uniform { .. } => 0.0,
            Distribution::Power { theta: 1.0, .. } => 0.0,
            Distribution::Power { theta, .. } => {
                theta * (theta - 1.0) * (v / vmax).powf(theta - 2.0) / (vmax * vmax)
            }
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        match *self {
            Distribution::Uniform { vmax } => u * vmax,
            Distribution::Power { theta, vmax } => u.powf(1.0 / theta) * vmax,
        }
    }
}

/// `uniform:VMAX` or `power:THETA:VMAX`.
impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = || Error::Parse {
            what: "distribution",
            input: s.to_string(),
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|_| parse_err());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            [name, vmax] if name.eq_ignore_ascii_case("uniform") => {
                Distribution::uniform(num(vmax)?)
            }
            [name, theta, vmax] if name.eq_ignore_ascii_case("power") => {
                Distribution::power(num(theta)?, num(vmax)?)
            }
            _ => Err(parse_err()),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Uniform { vmax } => write!(f, "uniform:{vmax}"),
            Distribution::Power { theta, vmax } => write!(f, "power:{theta}:{vmax}"),
        }
    }
}
