//! Closed forms for three agents, two positions and uniform values on `[0, 1]`,
//! with `alpha = (1, alpha2)` and `beta = (1, beta2)`.

use crate::{Error, Result};

fn check_weight(name: &str, w: f64) -> Result<()> {
    if w > 0.0 && w <= 1.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{name} must lie in (0, 1], got {w}"
        )))
    }
}

fn check(beta2: f64, alpha2: f64, v: f64) -> Result<()> {
    check_weight("beta2", beta2)?;
    check_weight("alpha2", alpha2)?;
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::Precondition(format!("value {v} outside [0, 1]")));
    }
    Ok(())
}

/// `(b^F(v), b^V(v))`.
///
/// `b^F = (2/3 v^3 - 4/3 beta2 v^3 + beta2 v^2) / (v^2 - 2 alpha2 v^2 + 2 alpha2 v)`
/// and `b^V = (2 v^2 - 4 beta2 v^2 + 2 beta2 v) / (2 v - 4 alpha2 v + 2 alpha2)`,
/// both zero at `v = 0`. At `v = 1` with `alpha2 = 1`, `b^V` is 1 when
/// `beta2 = 1` and infinite otherwise.
pub fn uniform_closed_forms(beta2: f64, alpha2: f64, v: f64) -> Result<(f64, f64)> {
    check(beta2, alpha2, v)?;
    if v == 0.0 {
        return Ok((0.0, 0.0));
    }
    let gfp = (2.0 / 3.0 * v.powi(3) - 4.0 / 3.0 * beta2 * v.powi(3) + beta2 * v * v)
        / (v * v - 2.0 * alpha2 * v * v + 2.0 * alpha2 * v);
    let den = 2.0 * v - 4.0 * alpha2 * v + 2.0 * alpha2;
    let num = 2.0 * v * v - 4.0 * beta2 * v * v + 2.0 * beta2 * v;
    let vcg = if den == 0.0 {
        if num == 0.0 {
            // l'Hopital: (4v - 8 beta2 v + 2 beta2) / (2 - 4 alpha2)
            (4.0 * v - 8.0 * beta2 * v + 2.0 * beta2) / (2.0 - 4.0 * alpha2)
        } else {
            f64::INFINITY
        }
    } else {
        num / den
    };
    Ok((gfp, vcg))
}

/// `(b^F'(v), b^V'(v))` by the quotient rule on the closed forms.
pub fn uniform_closed_form_derivatives(beta2: f64, alpha2: f64, v: f64) -> Result<(f64, f64)> {
    check(beta2, alpha2, v)?;
    // b^F with numerator and denominator divided by v
    let n = 2.0 / 3.0 * v * v - 4.0 / 3.0 * beta2 * v * v + beta2 * v;
    let dn = 4.0 / 3.0 * v - 8.0 / 3.0 * beta2 * v + beta2;
    let d = v - 2.0 * alpha2 * v + 2.0 * alpha2;
    let dd = 1.0 - 2.0 * alpha2;
    let gfp = (dn * d - n * dd) / (d * d);
    let n = 2.0 * v * v - 4.0 * beta2 * v * v + 2.0 * beta2 * v;
    let dn = 4.0 * v - 8.0 * beta2 * v + 2.0 * beta2;
    let d = 2.0 * v - 4.0 * alpha2 * v + 2.0 * alpha2;
    let dd = 2.0 - 4.0 * alpha2;
    let vcg = (dn * d - n * dd) / (d * d);
    Ok((gfp, vcg))
}

/// Smallest `alpha2` for which the GFP candidate is increasing:
/// 0 if `beta2 <= 1/2`, else `(2 beta2 - 1) / (2 - beta2)`.
pub fn gfp_threshold_uniform(beta2: f64) -> Result<f64> {
    check_weight("beta2", beta2)?;
    Ok(if beta2 <= 0.5 {
        0.0
    } else {
        (2.0 * beta2 - 1.0) / (2.0 - beta2)
    })
}

/// Smallest `alpha2` for which the VCG candidate is increasing:
/// 0 if `beta2 <= 1/2`, else `2 - 1 / beta2`.
pub fn vcg_threshold_uniform(beta2: f64) -> Result<f64> {
    check_weight("beta2", beta2)?;
    Ok(if beta2 <= 0.5 { 0.0 } else { 2.0 - 1.0 / beta2 })
}
