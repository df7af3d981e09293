use num::{BigInt, One, Signed, Zero};

use crate::{Error, Rational, Result};

/// `C(n, r)`, zero outside `0 <= r <= n`.
pub fn binomial(n: i64, r: i64) -> BigInt {
    if n < 0 || r < 0 || r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn check_js(n: i64, ell: i64, s: i64) -> Result<()> {
    if 1 <= ell && ell <= s && s <= n {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "need 1 <= ell <= s <= n, got n = {n}, ell = {ell}, s = {s}"
        )))
    }
}

/// `J_{l,s} = C(n-1, l-1) C(n-l-1, n-s-1) (n-l)`.
pub fn coefficient_j(n: i64, ell: i64, s: i64) -> Result<BigInt> {
    check_js(n, ell, s)?;
    Ok(binomial(n - 1, ell - 1) * binomial(n - ell - 1, n - s - 1) * BigInt::from(n - ell))
}

/// `C(n-1, s-1) C(s-1, l-1) (n-s)`, equal to [`coefficient_j`].
pub fn coefficient_j_factored(n: i64, ell: i64, s: i64) -> Result<BigInt> {
    check_js(n, ell, s)?;
    Ok(binomial(n - 1, s - 1) * binomial(s - 1, ell - 1) * BigInt::from(n - s))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Residual {
    Exact(Rational),
    Real(f64),
}

/// Evaluation of one identity at one parameter tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub id: &'static str,
    /// `name=value` pairs joined by commas.
    pub params: String,
    pub residual: Residual,
    pub pass: bool,
}

impl IdentityReport {
    pub(crate) fn exact(id: &'static str, params: String, residual: BigInt) -> Self {
        let pass = residual.is_zero();
        Self {
            id,
            params,
            residual: Residual::Exact(Rational::from_integer(residual)),
            pass,
        }
    }

    pub(crate) fn real(id: &'static str, params: String, lhs: f64, rhs: f64, rel_tol: f64) -> Self {
        let residual = lhs - rhs;
        Self {
            id,
            params,
            residual: Residual::Real(residual),
            pass: residual.abs() <= rel_tol * rhs.abs().max(1.0),
        }
    }
}

/// `sum_{l=z-y+1}^{s-y} J_{l,s} C(l-1, z-y) C(s-l, y) (-1)^(l+2y-z-1)`, which vanishes.
pub fn binom_identity_check(n: i64, s: i64, z: i64, y: i64) -> Result<IdentityReport> {
    if !(s <= n && 0 <= y && y <= z && z <= s - 2) {
        return Err(Error::Precondition(format!(
            "need s <= n and 0 <= y <= z <= s - 2, got n = {n}, s = {s}, z = {z}, y = {y}"
        )));
    }
    let mut sum = BigInt::zero();
    for ell in (z - y + 1)..=(s - y) {
        let term = coefficient_j(n, ell, s)? * binomial(ell - 1, z - y) * binomial(s - ell, y);
        if (ell + 2 * y - z - 1) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(IdentityReport::exact(
        "binom",
        format!("n={n},s={s},z={z},y={y}"),
        sum,
    ))
}

/// Every admissible `(n, s, z, y)` with `n <= nmax`.
pub fn binom_identity_all(nmax: i64) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for s in 2..=n {
            for z in 0..=(s - 2) {
                for y in 0..=z {
                    out.push(binom_identity_check(n, s, z, y)?);
                }
            }
        }
    }
    Ok(out)
}

/// Difference of the two forms of `J_{l,s}` for every `1 <= l <= s <= n <= nmax`.
pub fn j_factorization_all(nmax: i64) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for s in 1..=n {
            for ell in 1..=s {
                let diff = coefficient_j(n, ell, s)? - coefficient_j_factored(n, ell, s)?;
                out.push(IdentityReport::exact(
                    "j_factorization",
                    format!("n={n},l={ell},s={s}"),
                    diff,
                ));
            }
        }
    }
    Ok(out)
}

/// Number of failing reports.
pub fn count_failures(reports: &[IdentityReport]) -> usize {
    reports.iter().filter(|r| !r.pass).count()
}

/// Largest residual magnitude, as a float.
pub fn max_abs_residual(reports: &[IdentityReport]) -> f64 {
    reports
        .iter()
        .map(|r| match &r.residual {
            Residual::Exact(q) => crate::rational::to_f64(&q.abs()),
            Residual::Real(x) => x.abs(),
        })
        .fold(0.0, f64::max)
}
