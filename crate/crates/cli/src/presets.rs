//! Named parameter bundles and the parsers for list and grid arguments.

use std::str::FromStr;

use clap::ValueEnum;
use num::{ToPrimitive, Zero};
use posauction::rational::parse_rational;
use posauction::Rational;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Three positions, beta = (1, 0.7, 0.3), values (20, 10, 10), alpha_2 = 0.6.
    Sec31,
    /// Uniform(1) values, three agents, beta = (1, 0.8), alpha = (1, 0.5).
    Sec41,
    /// Complete-information region over [0.3, 1] in steps of 1/70.
    Fig1,
    /// Incomplete-information region, Uniform(1), three agents, step 0.01.
    Fig2,
    /// Derivative curves for beta_2 = 0.8 and alpha_2 = 0.8, 0.7, ..., 0.1.
    Fig3,
}

/// Defaults supplied by a preset; explicit flags take precedence.
#[derive(Debug, Clone, Copy, Default)]
pub struct PresetValues {
    pub alpha: Option<&'static str>,
    pub beta: Option<&'static str>,
    pub values: Option<&'static str>,
    pub dist: Option<&'static str>,
    pub n: Option<usize>,
    pub beta2: Option<&'static str>,
    pub alpha2: Option<&'static str>,
    pub alpha3: Option<&'static str>,
    pub v_grid: Option<&'static str>,
}

impl Preset {
    pub fn values(self) -> PresetValues {
        match self {
            Preset::Sec31 => PresetValues {
                alpha: Some("1,0.6,0.3"),
                beta: Some("1,0.7,0.3"),
                values: Some("20,10,10"),
                ..Default::default()
            },
            Preset::Sec41 => PresetValues {
                alpha: Some("1,0.5"),
                beta: Some("1,0.8"),
                dist: Some("uniform:1"),
                n: Some(3),
                beta2: Some("0.8"),
                alpha2: Some("0.5"),
                ..Default::default()
            },
            Preset::Fig1 => PresetValues {
                values: Some("20,10,10"),
                beta2: Some("3/10:1:1/70"),
                alpha2: Some("3/10:1:1/70"),
                alpha3: Some("0.3"),
                ..Default::default()
            },
            Preset::Fig2 => PresetValues {
                dist: Some("uniform:1"),
                n: Some(3),
                beta2: Some("0.01:1:0.01"),
                alpha2: Some("0.01:1:0.01"),
                ..Default::default()
            },
            Preset::Fig3 => PresetValues {
                dist: Some("uniform:1"),
                n: Some(3),
                beta2: Some("0.8"),
                alpha2: Some("0.8,0.7,0.6,0.5,0.4,0.3,0.2,0.1"),
                v_grid: Some("0:1:0.01"),
                ..Default::default()
            },
        }
    }
}

pub(crate) fn preset_values(preset: Option<Preset>) -> PresetValues {
    preset.map(Preset::values).unwrap_or_default()
}

/// Flag value, else preset value, else a validation error naming the flag.
pub(crate) fn require<'a>(
    flag: &str,
    given: &'a Option<String>,
    preset: Option<&'a str>,
) -> CliResult<&'a str> {
    given.as_deref().or(preset).ok_or_else(|| {
        CliError::Validation(format!("{flag} is required (directly or through --preset)"))
    })
}

pub(crate) fn parse_list(flag: &str, input: &str) -> CliResult<Vec<Rational>> {
    input
        .split(',')
        .map(|x| parse_rational(x).map_err(|e| CliError::Validation(format!("{flag}: {e}"))))
        .collect()
}

/// Maximum number of points a `lo:hi:step` range may expand to.
const MAX_GRID_POINTS: usize = 1_000_000;

/// Comma-separated list or inclusive range `lo:hi:step`, in exact arithmetic.
pub(crate) fn parse_grid(flag: &str, input: &str) -> CliResult<Vec<Rational>> {
    let parts: Vec<&str> = input.split(':').collect();
    match parts.as_slice() {
        [_] => parse_list(flag, input),
        [lo, hi, step] => {
            let one = |x: &str| {
                parse_rational(x).map_err(|e| CliError::Validation(format!("{flag}: {e}")))
            };
            let (lo, hi, step) = (one(lo)?, one(hi)?, one(step)?);
            if step <= Rational::zero() || hi < lo {
                return Err(CliError::Validation(format!(
                    "{flag}: range {input:?} needs lo <= hi and a positive step"
                )));
            }
            let count = ((&hi - &lo) / &step)
                .floor()
                .to_usize()
                .filter(|&c| c < MAX_GRID_POINTS)
                .ok_or_else(|| {
                    CliError::Validation(format!("{flag}: range {input:?} has too many points"))
                })?;
            Ok((0..=count)
                .map(|i| &lo + &step * Rational::from_integer(i.into()))
                .collect())
        }
        _ => Err(CliError::Validation(format!(
            "{flag}: expected a comma-separated list or lo:hi:step, got {input:?}"
        ))),
    }
}

pub(crate) fn to_f64(xs: &[Rational]) -> Vec<f64> {
    xs.iter().map(posauction::rational::to_f64).collect()
}

pub(crate) fn parse_value<T: FromStr<Err = posauction::Error>>(
    flag: &str,
    input: &str,
) -> CliResult<T> {
    input
        .parse()
        .map_err(|e: posauction::Error| CliError::Validation(format!("{flag}: {e}")))
}
