use posauction::complete::{
    gsp_support, nash_verify, region_sweep_complete, theorem1_sweep, vcg_support,
    FeasibilityResult, RandomInstanceConfig,
};
use posauction::incomplete::{
    derivative_curves, region_sweep_incomplete, BidFunctionParts, Distribution, MonotoneConfig,
    SweepOptions, ValueDistribution,
};
use posauction::oracles::{
    binom_identity_all, density_reduction_check, j_factorization_all, mc_bne_verify, BneGame,
    IdentityReport, McConfig, Residual, TabulatedBid,
};
use posauction::region::RegionGrid;
use posauction::{
    is_truthful_vcg_outcome, run_mechanism, truthful_vcg_payments, AuctionInstance, MechanismKind,
    MechanismSpec, QualityVector, Rational,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult, Context};
use crate::output::{f, q, qs, Report};
use crate::presets::{parse_grid, parse_list, parse_value, preset_values, require, to_f64};
use crate::{
    BidfnArgs, CurvesArgs, EqCompleteArgs, IdentitiesArgs, Information, MonotoneArgs, PaymentsArgs,
    RegionArgs, VerifyBneArgs,
};

fn quality(flag: &str, input: &str) -> CliResult<QualityVector<Rational>> {
    QualityVector::new(parse_list(flag, input)?).field(flag)
}

fn float_quality(flag: &str, input: &str) -> CliResult<QualityVector<f64>> {
    quality(flag, input).map(|x| x.to_f64())
}

fn positive(flag: &str, x: usize) -> CliResult<usize> {
    if x == 0 {
        Err(CliError::Validation(format!("{flag} must be positive")))
    } else {
        Ok(x)
    }
}

fn mechanism(input: &str, allowed: &[MechanismKind]) -> CliResult<MechanismKind> {
    let kind: MechanismKind = parse_value("--mechanism", input)?;
    if allowed.contains(&kind) {
        Ok(kind)
    } else {
        Err(CliError::Validation(format!(
            "--mechanism: {kind} is not available here"
        )))
    }
}

fn evenly_spaced(vmax: f64, points: usize) -> CliResult<Vec<f64>> {
    if points < 2 {
        return Err(CliError::Validation(format!(
            "need at least 2 grid points, got {points}"
        )));
    }
    Ok((0..points)
        .map(|i| vmax * i as f64 / (points - 1) as f64)
        .collect())
}

pub fn payments(a: &PaymentsArgs) -> CliResult<Report> {
    let p = preset_values(a.preset);
    let beta = quality("--beta", require("--beta", &a.beta, p.beta)?)?;
    let values = parse_list("--values", require("--values", &a.values, p.values)?)?;
    let inst = AuctionInstance::new(beta, values).field("--values")?;
    let prices = truthful_vcg_payments(&inst);
    Ok(Report {
        json: json!({ "prices": qs(&prices) }),
        header: vec!["position", "price"],
        rows: prices
            .iter()
            .enumerate()
            .map(|(j, p)| vec![(j + 1).to_string(), q(p)])
            .collect(),
        failure: None,
    })
}

struct Checked {
    result: FeasibilityResult<Rational>,
    /// Witness passes the exact Nash check and reproduces the truthful outcome.
    verified: Option<bool>,
}

fn check_support(
    kind: MechanismKind,
    alpha: &QualityVector<Rational>,
    inst: &AuctionInstance<Rational>,
) -> CliResult<Checked> {
    let result = match kind {
        MechanismKind::AlphaGsp => gsp_support(alpha, inst),
        _ => vcg_support(alpha, inst),
    }
    .field("--alpha")?;
    let verified = match result.witness_profile() {
        Some(bids) => {
            let spec = MechanismSpec::new(kind, alpha.clone());
            let zero = Rational::from_integer(0.into());
            let nash = nash_verify(&spec, &bids, inst, &zero).field("")?;
            let outcome = run_mechanism(&spec, &bids).field("")?;
            Some(nash && is_truthful_vcg_outcome(&outcome, inst, &zero))
        }
        None => None,
    };
    Ok(Checked { result, verified })
}

fn checked_json(c: &Checked) -> Value {
    json!({
        "supported": c.result.supported,
        "witness_bids": c.result.witness_bids.as_deref().map(qs),
        "failure": c.result.failure.map(|fl| json!({ "position": fl.position, "kind": fl.kind.name() })),
        "nash_verified": c.verified,
    })
}

fn checked_row(name: &str, c: &Checked) -> Vec<String> {
    let opt = |x: Option<String>| x.unwrap_or_default();
    vec![
        name.to_string(),
        c.result.supported.to_string(),
        opt(c.result.failure.map(|fl| fl.position.to_string())),
        opt(c.result.failure.map(|fl| fl.kind.name().to_string())),
        opt(c.verified.map(|v| v.to_string())),
        opt(c.result.witness_bids.as_deref().map(|b| qs(b).join(";"))),
    ]
}

pub fn eq_complete(a: &EqCompleteArgs) -> CliResult<Report> {
    if let Some(count) = a.random {
        return eq_complete_random(a, count);
    }
    let p = preset_values(a.preset);
    let alpha = quality("--alpha", require("--alpha", &a.alpha, p.alpha)?)?;
    let beta = quality("--beta", require("--beta", &a.beta, p.beta)?)?;
    let values = parse_list("--values", require("--values", &a.values, p.values)?)?;
    let inst = AuctionInstance::new(beta, values)
        .field("--values")?
        .canonicalized();
    let gsp = check_support(MechanismKind::AlphaGsp, &alpha, &inst)?;
    let vcg = check_support(MechanismKind::AlphaVcg, &alpha, &inst)?;
    let consistent = !(vcg.result.supported && !gsp.result.supported)
        && gsp.verified != Some(false)
        && vcg.verified != Some(false);
    Ok(Report {
        json: json!({
            "values": qs(inst.values()),
            "gsp": checked_json(&gsp),
            "vcg": checked_json(&vcg),
            "theorem1_consistent": consistent,
        }),
        header: vec![
            "mechanism",
            "supported",
            "failure_position",
            "failure_kind",
            "nash_verified",
            "witness_bids",
        ],
        rows: vec![checked_row("gsp", &gsp), checked_row("vcg", &vcg)],
        failure: (!consistent)
            .then(|| "VCG support without GSP support, or a witness failed verification".into()),
    })
}

fn eq_complete_random(a: &EqCompleteArgs, count: usize) -> CliResult<Report> {
    let cfg = RandomInstanceConfig {
        max_k: positive("--max-k", a.max_k)?,
        max_n: positive("--max-n", a.max_n)?,
        ..RandomInstanceConfig::default()
    };
    let s = theorem1_sweep(count, a.seed, &cfg).field("")?;
    let bad = s.violations + s.witness_failures;
    Ok(Report {
        json: json!({
            "seed": a.seed,
            "instances": s.instances,
            "vcg_supported": s.vcg_supported,
            "gsp_supported": s.gsp_supported,
            "violations": s.violations,
            "witness_failures": s.witness_failures,
        }),
        header: vec![
            "seed",
            "instances",
            "vcg_supported",
            "gsp_supported",
            "violations",
            "witness_failures",
        ],
        rows: vec![std::iter::once(a.seed.to_string())
            .chain(
                [
                    s.instances,
                    s.vcg_supported,
                    s.gsp_supported,
                    s.violations,
                    s.witness_failures,
                ]
                .iter()
                .map(usize::to_string),
            )
            .collect()],
        failure: (bad > 0).then(|| {
            format!(
                "{} violations, {} witness failures",
                s.violations, s.witness_failures
            )
        }),
    })
}

fn monotone_config(m: &MonotoneArgs) -> CliResult<MonotoneConfig> {
    if m.grid_size < 2 || !(m.tol >= 0.0 && m.tol.is_finite()) {
        return Err(CliError::Validation(
            "--grid-size must be at least 2 and --tol finite and non-negative".into(),
        ));
    }
    Ok(MonotoneConfig {
        grid_size: m.grid_size,
        tol: m.tol,
    })
}

fn region_report<T: Clone>(
    grid: &RegionGrid<T>,
    render: impl Fn(&T) -> String,
    render_json: impl Fn(&T) -> Value,
) -> Report {
    let cells: Vec<Value> = grid
        .cells
        .iter()
        .map(|c| {
            json!({
                "beta2": render_json(&c.beta2),
                "alpha2": render_json(&c.alpha2),
                "gsp_or_gfp_feasible": c.non_truthful,
                "vcg_feasible": c.vcg,
            })
        })
        .collect();
    let boundaries: Vec<Value> = grid
        .boundaries()
        .iter()
        .map(|b| {
            json!({
                "beta2": render_json(&b.beta2),
                "gsp_or_gfp": b.non_truthful.as_ref().map(&render_json),
                "vcg": b.vcg.as_ref().map(&render_json),
            })
        })
        .collect();
    Report {
        json: json!({ "cells": cells, "boundaries": boundaries }),
        header: vec!["beta2", "alpha2", "gsp_or_gfp_feasible", "vcg_feasible"],
        rows: grid
            .cells
            .iter()
            .map(|c| {
                vec![
                    render(&c.beta2),
                    render(&c.alpha2),
                    c.non_truthful.to_string(),
                    c.vcg.to_string(),
                ]
            })
            .collect(),
        failure: None,
    }
}

pub fn region(a: &RegionArgs) -> CliResult<Report> {
    let p = preset_values(a.preset);
    let beta2 = parse_grid("--beta2", require("--beta2", &a.beta2, p.beta2)?)?;
    let alpha2 = parse_grid("--alpha2", require("--alpha2", &a.alpha2, p.alpha2)?)?;
    match a.info {
        Information::Complete => {
            let alpha3 = parse_list("--alpha3", require("--alpha3", &a.alpha3, p.alpha3)?)?;
            let [alpha3] = alpha3.as_slice() else {
                return Err(CliError::Validation("--alpha3 takes one value".into()));
            };
            let values = parse_list("--values", require("--values", &a.values, p.values)?)?;
            let grid = region_sweep_complete(&beta2, &alpha2, alpha3, &values)
                .field("--beta2/--alpha2")?;
            Ok(region_report(&grid, q, |x| Value::String(q(x))))
        }
        Information::Incomplete => {
            let dist: Distribution = parse_value("--dist", require("--dist", &a.dist, p.dist)?)?;
            let n =
                a.n.or(p.n)
                    .ok_or_else(|| CliError::Validation("--n is required".into()))?;
            if !(a.tail > 0.0 && a.tail <= 1.0) {
                return Err(CliError::Validation(format!(
                    "--tail must lie in (0, 1], got {}",
                    a.tail
                )));
            }
            let opts = SweepOptions {
                k: positive("--k", a.k)?,
                tail: a.tail,
                monotone: monotone_config(&a.monotone)?,
            };
            let grid = region_sweep_incomplete(&to_f64(&beta2), &to_f64(&alpha2), dist, n, &opts)
                .field("--beta2/--alpha2")?;
            Ok(region_report(&grid, |x| f(*x), |x| json!(x)))
        }
    }
}

fn require_dist(given: &Option<String>, preset: Option<&str>) -> CliResult<Distribution> {
    parse_value("--dist", require("--dist", given, preset)?)
}

fn require_n(given: Option<usize>, preset: Option<usize>) -> CliResult<usize> {
    given.or(preset).ok_or_else(|| {
        CliError::Validation("--n is required (directly or through --preset)".into())
    })
}

pub fn curves(a: &CurvesArgs) -> CliResult<Report> {
    let p = preset_values(a.preset);
    let beta2 = parse_list("--beta2", require("--beta2", &a.beta2, p.beta2)?)?;
    let [beta2] = to_f64(&beta2)[..] else {
        return Err(CliError::Validation("--beta2 takes one value".into()));
    };
    let alpha2 = to_f64(&parse_list(
        "--alpha2",
        require("--alpha2", &a.alpha2, p.alpha2)?,
    )?);
    let dist = require_dist(&a.dist, p.dist)?;
    let grid = match a.v_grid.as_deref().or(p.v_grid) {
        Some(g) => to_f64(&parse_grid("--v-grid", g)?),
        None => evenly_spaced(dist.support_max(), 101)?,
    };
    let n = require_n(a.n, p.n)?;
    let samples = derivative_curves(beta2, &alpha2, &grid, dist, n).field("--alpha2/--v-grid")?;
    Ok(Report {
        json: json!({
            "beta2": beta2,
            "samples": samples
                .iter()
                .map(|s| json!({ "v": s.v, "db_dv": s.db_dv, "mechanism": s.mechanism.name(), "alpha2": s.alpha2 }))
                .collect::<Vec<_>>(),
        }),
        header: vec!["v", "db_dv", "mechanism", "alpha2"],
        rows: samples
            .iter()
            .map(|s| {
                vec![
                    f(s.v),
                    f(s.db_dv),
                    s.mechanism.name().to_string(),
                    f(s.alpha2),
                ]
            })
            .collect(),
        failure: None,
    })
}

struct BidSetup {
    kind: MechanismKind,
    alpha: QualityVector<f64>,
    beta: QualityVector<f64>,
    dist: Distribution,
    n: usize,
}

fn bid_setup(
    preset: Option<crate::Preset>,
    mech: &str,
    alpha: &Option<String>,
    beta: &Option<String>,
    dist: &Option<String>,
    n: Option<usize>,
) -> CliResult<(BidSetup, BidFunctionParts)> {
    let p = preset_values(preset);
    let setup = BidSetup {
        kind: mechanism(mech, &[MechanismKind::AlphaGfp, MechanismKind::AlphaVcg])?,
        alpha: float_quality("--alpha", require("--alpha", alpha, p.alpha)?)?,
        beta: float_quality("--beta", require("--beta", beta, p.beta)?)?,
        dist: require_dist(dist, p.dist)?,
        n: require_n(n, p.n)?,
    };
    let parts = BidFunctionParts::new(&setup.alpha, &setup.beta, setup.dist, setup.n)
        .field("--alpha/--beta/--n")?;
    Ok((setup, parts))
}

pub fn bidfn(a: &BidfnArgs) -> CliResult<Report> {
    let (setup, parts) = bid_setup(a.preset, &a.mechanism, &a.alpha, &a.beta, &a.dist, a.n)?;
    let grid = match &a.v_grid {
        Some(g) => to_f64(&parse_grid("--v-grid", g)?),
        None => evenly_spaced(setup.dist.support_max(), a.points)?,
    };
    let samples = parts.tabulate(setup.kind, &grid).field("--v-grid")?;
    Ok(Report {
        json: json!({
            "mechanism": setup.kind.name(),
            "samples": samples
                .iter()
                .map(|s| json!({ "v": s.v, "bid": s.bid, "derivative": s.derivative }))
                .collect::<Vec<_>>(),
        }),
        header: vec!["v", "bid", "derivative"],
        rows: samples
            .iter()
            .map(|s| vec![f(s.v), f(s.bid), f(s.derivative)])
            .collect(),
        failure: None,
    })
}

pub fn verify_bne(a: &VerifyBneArgs) -> CliResult<Report> {
    let (setup, parts) = bid_setup(a.preset, &a.mechanism, &a.alpha, &a.beta, &a.dist, a.n)?;
    if !(a.eps >= 0.0 && a.eps.is_finite()) {
        return Err(CliError::Validation(format!(
            "--eps must be finite and non-negative, got {}",
            a.eps
        )));
    }
    let vmax = setup.dist.support_max();
    let tab_grid = evenly_spaced(vmax, a.tabulation_points)?;
    let values = evenly_spaced(vmax, a.value_points)?;
    let samples = parts.tabulate(setup.kind, &tab_grid).field("")?;
    let bid = TabulatedBid::new(tab_grid, samples.iter().map(|s| s.bid).collect()).field("")?;
    let game = BneGame {
        kind: setup.kind,
        alpha: &setup.alpha,
        beta: &setup.beta,
        dist: &setup.dist,
        n: setup.n,
    };
    let cfg = McConfig {
        samples: a.samples,
        seed: a.seed,
        eps: a.eps,
    };
    let reports = mc_bne_verify(
        &game,
        &bid,
        &values,
        &bid.deviation_grid(positive("--deviation-bids", a.deviation_bids)?),
        &cfg,
    )
    .field("--samples/--n")?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    Ok(Report {
        json: json!({
            "mechanism": setup.kind.name(),
            "samples": a.samples,
            "seed": a.seed,
            "eps": a.eps,
            "points": reports
                .iter()
                .map(|r| json!({
                    "v": r.v,
                    "bid": r.bid,
                    "best_deviation_bid": r.best_deviation_bid,
                    "best_deviation_gain": r.best_deviation_gain,
                    "stderr": r.stderr,
                    "pass": r.pass,
                }))
                .collect::<Vec<_>>(),
        }),
        header: vec!["v", "bid", "best_deviation_gain", "stderr", "pass"],
        rows: reports
            .iter()
            .map(|r| {
                vec![
                    f(r.v),
                    f(r.bid),
                    f(r.best_deviation_gain),
                    f(r.stderr),
                    r.pass.to_string(),
                ]
            })
            .collect(),
        failure: (failed > 0).then(|| {
            format!(
                "{failed} of {} value points admit a profitable deviation",
                reports.len()
            )
        }),
    })
}

fn residual(r: &Residual) -> (String, Value) {
    match r {
        Residual::Exact(x) => (q(x), Value::String(q(x))),
        Residual::Real(x) => (f(*x), json!(x)),
    }
}

pub fn identities(a: &IdentitiesArgs) -> CliResult<Report> {
    const MAX_N: i64 = 60;
    let j_nmax = a.j_nmax.unwrap_or(a.nmax);
    if !(1..=MAX_N).contains(&a.nmax) || !(1..=MAX_N).contains(&j_nmax) {
        return Err(CliError::Validation(format!(
            "--nmax and --j-nmax must lie in [1, {MAX_N}]"
        )));
    }
    let mut reports: Vec<IdentityReport> = binom_identity_all(a.nmax).field("--nmax")?;
    reports.extend(j_factorization_all(j_nmax).field("--j-nmax")?);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    for _ in 0..a.density_samples {
        let n = rng.gen_range(1..=10);
        let k = rng.gen_range(1..=n);
        let s = rng.gen_range(1..=k);
        let vmax = rng.gen_range(0.5..3.0);
        let dist = if rng.gen_bool(0.5) {
            Distribution::uniform(vmax)
        } else {
            Distribution::power(rng.gen_range(1.0..4.0), vmax)
        }
        .field("")?;
        let (x, y): (f64, f64) = (rng.gen_range(0.01..0.99), rng.gen_range(0.01..0.99));
        if x == y {
            continue;
        }
        let (ra, rb) =
            density_reduction_check(n, k, s, &dist, x.max(y) * vmax, x.min(y) * vmax).field("")?;
        reports.push(ra);
        reports.push(rb);
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    Ok(Report {
        json: json!({
            "reports": reports
                .iter()
                .map(|r| json!({ "id": r.id, "params": r.params, "residual": residual(&r.residual).1, "pass": r.pass }))
                .collect::<Vec<_>>(),
            "failures": failed,
        }),
        header: vec!["id", "params", "residual", "pass"],
        rows: reports
            .iter()
            .map(|r| {
                vec![
                    r.id.to_string(),
                    r.params.clone(),
                    residual(&r.residual).0,
                    r.pass.to_string(),
                ]
            })
            .collect(),
        failure: (failed > 0)
            .then(|| format!("{failed} of {} identity checks failed", reports.len())),
    })
}
