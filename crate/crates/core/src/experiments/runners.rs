use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::config::{ExperimentConfig, Functional};
use super::report::{Check, Comparison, ExperimentReport, SeriesPoint, TrialRecord, Verdict};
use super::thread_pool;
use crate::error::{Error, Result};
use crate::functionals::{
    measure_of_with, perimeter_fn_with, ppb_body_with, quermass_fn_with, ConvexMeasure,
};
use crate::geometry::{
    convex_hull, hausdorff_distance, quermassintegral, reflect, steiner_symmetral,
    volume, ShadowSystemPolygon, Vector,
};
use crate::model::{build_model, sample_hypograph, Role, RngStream};
use crate::pconcave::{rearrange_with, truncate, PConcaveFunction, Quadrature};

/// One-sided margin, in combined standard errors, of the stochastic verdicts.
pub const SIGMA_MARGIN: f64 = 3.0;

/// Slack allowed to deterministic inequalities for quadrature error.
pub const DETERMINISTIC_TOLERANCE: f64 = 1e-4;

/// Tolerance of the midpoint-convexity test along shadow systems.
pub const SHADOW_TOLERANCE: f64 = 1e-9;

/// Tolerance of endpoint identities and area constancy along shadow systems.
const SHADOW_IDENTITY_TOLERANCE: f64 = 1e-12;

/// Value of the functional, or `None` when it is undefined for `f`.
fn evaluate(f: &PConcaveFunction, functional: Functional, q: &Quadrature) -> Result<Option<f64>> {
    let value = match functional {
        Functional::Quermass(i) => quermass_fn_with(f, i, q),
        Functional::Perimeter => perimeter_fn_with(f, q),
        Functional::Zhang(nu) => match ppb_body_with(f, q) {
            Ok(body) => measure_of_with(&body, &nu, q),
            Err(Error::DegenerateSupport) => return Ok(None),
            Err(e) => Err(e),
        },
    };
    value.map(Some)
}

struct TrialOutcome {
    value: Option<f64>,
    acceptance: f64,
}

fn run_trial(
    f: &PConcaveFunction,
    cfg: &ExperimentConfig,
    p: f64,
    trial: usize,
    role: Role,
) -> Result<TrialOutcome> {
    let mut rng = RngStream::for_trial(cfg.seed, trial as u64, role);
    let sample = sample_hypograph(f, cfg.samples, &mut rng)?;
    let model = PConcaveFunction::from_model(build_model(&sample, p, None)?);
    Ok(TrialOutcome {
        value: evaluate(&model, cfg.functional, &cfg.quadrature)?,
        acceptance: sample.acceptance_rate(),
    })
}

/// Trials of f_ε and of (f_ε)* on independent substreams, compared one-sidedly.
fn run_paired(cfg: &ExperimentConfig, experiment: &str) -> Result<ExperimentReport> {
    let start = Instant::now();
    let (fe, resolved) = cfg.resolve_sampling()?;
    let p = resolved.exponent()?;
    let star = rearrange_with(&fe, &cfg.quadrature);
    let jobs: Vec<(usize, Role)> = [Role::Original, Role::Rearranged]
        .into_iter()
        .flat_map(|role| (0..cfg.trials).map(move |t| (t, role)))
        .collect();
    let outcomes: Vec<Result<TrialOutcome>> = thread_pool()?.install(|| {
        jobs.par_iter()
            .map(|&(t, role)| {
                let f = if role == Role::Original { &fe } else { &star };
                run_trial(f, cfg, p, t, role)
            })
            .collect()
    });

    let mut report = ExperimentReport::new(experiment, cfg.functional.name(), resolved);
    for role in [Role::Original, Role::Rearranged] {
        report.excluded_counts.insert(role.name().into(), 0);
    }
    let mut acceptance = [0.0, 0.0];
    for (&(trial, role), outcome) in jobs.iter().zip(outcomes) {
        let outcome = outcome?;
        let slot = usize::from(role == Role::Rearranged);
        acceptance[slot] += outcome.acceptance / cfg.trials as f64;
        if outcome.value.is_none() {
            *report.excluded_counts.get_mut(role.name()).expect("role inserted") += 1;
        }
        report.records.push(TrialRecord {
            trial,
            role: role.name().into(),
            value: outcome.value,
        });
    }
    report.acceptance_rate.insert("original".into(), acceptance[0]);
    report.acceptance_rate.insert("rearranged".into(), acceptance[1]);
    let comparison = Comparison::of(
        &report.values("original"),
        &report.values("rearranged"),
        cfg.functional.rearrangement_decreases(),
        SIGMA_MARGIN,
    )?;
    report.apply(comparison);
    let relation = if cfg.functional.rearrangement_decreases() { ">=" } else { "<=" };
    report.notes.push(format!(
        "verdict: mean_orig {relation} mean_rearranged within {SIGMA_MARGIN} combined standard errors"
    ));
    let excluded: usize = report.excluded_counts.values().sum();
    if excluded > 0 {
        report.notes.push(format!(
            "{excluded} trials with degenerate support excluded from the means"
        ));
    }
    report.runtime_s = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Expected W_i (or perimeter) of models of f_ε against models of (f_ε)*.
pub fn run_quermass_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if matches!(cfg.functional, Functional::Zhang(_)) {
        return Err(Error::InvalidConfig(
            "quermass experiment needs a quermass or perimeter functional".into(),
        ));
    }
    run_paired(cfg, "quermass")
}

/// Expected ν(Π°Φ) of models of f_ε against models of (f_ε)*. Trials with
/// degenerate support are excluded and counted.
pub fn run_zhang_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let mut cfg = cfg.clone();
    if !matches!(cfg.functional, Functional::Zhang(_)) {
        cfg.functional = Functional::Zhang(ConvexMeasure::Lebesgue);
    }
    run_paired(&cfg, "zhang")
}

/// Compares the configured function (truncated at `epsilon` when given)
/// with its rearrangement by quadrature:
/// W_i for every i, Lebesgue volume of Π° and ν_β(Π°) for β = n/2 and
/// β = 2 (plus the configured measure).
pub fn run_deterministic_check(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    cfg.validate()?;
    let f = match cfg.epsilon {
        Some(eps) => truncate(&cfg.function()?, eps).map_err(|e| Error::InvalidConfig(e.to_string()))?,
        None => cfg.function()?,
    };
    let q = &cfg.quadrature;
    let star = rearrange_with(&f, q);
    let mut report = ExperimentReport::new("deterministic", cfg.functional.name(), cfg.clone());

    for i in 0..cfg.n {
        let slack = quermass_fn_with(&f, i, q)? - quermass_fn_with(&star, i, q)?;
        report.checks.push(Check::new(format!("W_{i}"), slack, slack >= -DETERMINISTIC_TOLERANCE));
    }
    let body = ppb_body_with(&f, q)?;
    let body_star = ppb_body_with(&star, q)?;
    let mut measures = vec![
        ConvexMeasure::Lebesgue,
        ConvexMeasure::Beta(cfg.n as f64 / 2.0),
        ConvexMeasure::Beta(2.0),
    ];
    if let Functional::Zhang(nu) = cfg.functional {
        if !measures.contains(&nu) {
            measures.push(nu);
        }
    }
    for nu in measures {
        let slack = measure_of_with(&body_star, &nu, q)? - measure_of_with(&body, &nu, q)?;
        report.checks.push(Check::new(
            format!("{}(polar projection body)", nu.name()),
            slack,
            slack >= -DETERMINISTIC_TOLERANCE,
        ));
    }

    let orig = evaluate(&f, cfg.functional, q)?.ok_or(Error::DegenerateSupport)?;
    let rearranged = evaluate(&star, cfg.functional, q)?.ok_or(Error::DegenerateSupport)?;
    report.records = vec![
        TrialRecord { trial: 0, role: "original".into(), value: Some(orig) },
        TrialRecord { trial: 0, role: "rearranged".into(), value: Some(rearranged) },
    ];
    report.mean_orig = Some(orig);
    report.se_orig = Some(0.0);
    report.mean_rearranged = Some(rearranged);
    report.se_rearranged = Some(0.0);
    report.excluded_counts.insert("original".into(), 0);
    report.excluded_counts.insert("rearranged".into(), 0);
    report.verdict = Verdict::from_bool(report.checks.iter().all(|c| c.pass));
    report.notes.push(format!(
        "check values are slacks (positive agrees with the inequality); tolerance {DETERMINISTIC_TOLERANCE}"
    ));
    report.runtime_s = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Errors of models built from nested prefixes of one sample per seed.
///
/// `trials` is the number of seeds; each N in `N_list` uses the first N
/// points. The functional error is |W_i(Φ^N) − W_i(f_ε)| and the body error
/// is δ^H(Π°Φ^N, Π°f_ε) divided by the largest radius of Π°f_ε.
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut cfg = cfg.clone();
    if let Some(&largest) = cfg.sample_list.iter().max() {
        cfg.samples = cfg.samples.max(largest);
    }
    let cfg = &cfg;
    let (fe, resolved) = cfg.resolve_sampling()?;
    let p = resolved.exponent()?;
    let i = match cfg.functional {
        Functional::Quermass(i) => i,
        _ => return Err(Error::InvalidConfig("convergence needs a quermass functional".into())),
    };
    let sizes = &cfg.sample_list;
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig("N_list must be nonempty and strictly increasing".into()));
    }
    if sizes[0] < cfg.n + 1 {
        return Err(Error::InvalidConfig(format!("every N must be at least {}", cfg.n + 1)));
    }
    let q = &cfg.quadrature;
    let reference = quermass_fn_with(&fe, i, q)?;
    let ref_body = ppb_body_with(&fe, q)?;
    let scale = ref_body.max_radius();
    let ref_polytope = ref_body.to_polytope()?;
    let n_max = *sizes.last().expect("nonempty");

    // per N: functional error and relative Hausdorff distance
    type SeedErrors = Vec<(f64, Option<f64>)>;
    let per_seed: Vec<Result<SeedErrors>> = thread_pool()?.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|seed| {
                let mut rng = RngStream::for_trial(cfg.seed, seed as u64, Role::Original);
                let sample = sample_hypograph(&fe, n_max, &mut rng)?;
                sizes
                    .iter()
                    .map(|&n| {
                        let model = PConcaveFunction::from_model(build_model(&sample.prefix(n), p, None)?);
                        let err = (quermass_fn_with(&model, i, q)? - reference).abs();
                        let hd = match ppb_body_with(&model, q) {
                            Ok(body) => Some(hausdorff_distance(&body.to_polytope()?, &ref_polytope)? / scale),
                            Err(Error::DegenerateSupport) => None,
                            Err(e) => return Err(e),
                        };
                        Ok((err, hd))
                    })
                    .collect()
            })
            .collect()
    });
    let per_seed: Vec<SeedErrors> = per_seed.into_iter().collect::<Result<_>>()?;

    let mut report = ExperimentReport::new("convergence", cfg.functional.name(), resolved);
    let mut excluded_total = 0;
    for (k, &n) in sizes.iter().enumerate() {
        let errs: Vec<f64> = per_seed.iter().map(|s| s[k].0).collect();
        let hds: Vec<f64> = per_seed.iter().filter_map(|s| s[k].1).collect();
        let excluded = errs.len() - hds.len();
        excluded_total += excluded;
        for (seed, s) in per_seed.iter().enumerate() {
            report.records.push(TrialRecord {
                trial: seed,
                role: format!("functional_error_N{n}"),
                value: Some(s[k].0),
            });
            report.records.push(TrialRecord {
                trial: seed,
                role: format!("hausdorff_N{n}"),
                value: s[k].1,
            });
        }
        let mean_err = errs.iter().sum::<f64>() / errs.len() as f64;
        let mean_hd = if hds.is_empty() {
            f64::NAN
        } else {
            hds.iter().sum::<f64>() / hds.len() as f64
        };
        report.series.push(SeriesPoint {
            samples: n,
            functional_error: mean_err,
            relative_functional_error: mean_err / reference.abs(),
            relative_hausdorff: mean_hd,
            excluded,
        });
    }
    report.excluded_counts.insert("hausdorff".into(), excluded_total);

    let s = &report.series;
    let decreasing = |key: fn(&SeriesPoint) -> f64| s.windows(2).all(|w| key(&w[1]) < key(&w[0]));
    let last = s.last().expect("nonempty");
    let w_dec = decreasing(|p| p.functional_error);
    let h_dec = decreasing(|p| p.relative_hausdorff);
    let per_seed_ok = per_seed
        .iter()
        .all(|s| s.last().expect("nonempty").0 < s[0].0);
    report.checks = vec![
        Check::new("functional_error_decreasing", last.functional_error, w_dec),
        Check::new("hausdorff_decreasing", last.relative_hausdorff, h_dec),
        Check::new("functional_error_decreases_per_seed", last.functional_error, per_seed_ok),
        Check::new("final_relative_functional_error", last.relative_functional_error, last.relative_functional_error <= 0.05),
        Check::new("final_relative_hausdorff", last.relative_hausdorff, last.relative_hausdorff <= 0.05),
    ];
    report.verdict = Verdict::from_bool(report.checks.iter().all(|c| c.pass));
    report.notes.push(format!("reference {} = {reference}; Hausdorff scale = {scale}", cfg.functional.name()));
    report.runtime_s = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Random polygon with 3 to 12 hull candidates in [−1, 1]² and a random
/// direction.
fn random_polygon(rng: &mut RngStream) -> Result<(crate::geometry::Polytope, Vector)> {
    loop {
        let count = rng.gen_range(3..=12);
        let pts: Vec<Vector> = (0..count)
            .map(|_| Vector::new(&[rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]))
            .collect();
        let k = convex_hull(&pts, 2)?;
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        if volume(&k) > 1e-3 {
            return Ok((k, Vector::new(&[angle.cos(), angle.sin()])));
        }
    }
}

/// Worst midpoint-convexity defect of W_0 and W_1 along K_u(t) on the
/// 21-point grid, plus the endpoint and area defects.
fn shadow_defects(k: &crate::geometry::Polytope, u: &Vector) -> Result<(f64, f64)> {
    let system = ShadowSystemPolygon::new(k, u)?;
    let ts: Vec<f64> = (0..=20).map(|j| -1.0 + j as f64 / 10.0).collect();
    let bodies: Vec<_> = ts.iter().map(|&t| system.evaluate(t)).collect::<std::result::Result<_, _>>()?;
    let mut convexity: f64 = f64::NEG_INFINITY;
    for i in 0..2 {
        let w: Vec<f64> = bodies.iter().map(|b| quermassintegral(b, i)).collect::<std::result::Result<_, _>>()?;
        for j in 1..w.len() - 1 {
            convexity = convexity.max(w[j] - 0.5 * (w[j - 1] + w[j + 1]));
        }
    }
    let area = volume(k);
    let mut identity: f64 = 0.0;
    for b in &bodies {
        identity = identity.max((volume(b) - area).abs());
    }
    identity = identity
        .max(hausdorff_distance(&bodies[20], k)?)
        .max(hausdorff_distance(&bodies[0], &reflect(k, u)?)?)
        .max(hausdorff_distance(&bodies[10], &steiner_symmetral(k, u)?)?);
    Ok((convexity, identity))
}

/// Midpoint convexity of t ↦ W_i(K_u(t)) for `trials` random polygons.
pub fn run_shadow_convexity(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    if cfg.trials < 1 {
        return Err(Error::InvalidConfig("trials must be positive".into()));
    }
    let outcomes: Vec<Result<(f64, f64)>> = thread_pool()?.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|k| {
                let mut rng = RngStream::for_trial(cfg.seed, k as u64, Role::Auxiliary);
                let (body, u) = random_polygon(&mut rng)?;
                shadow_defects(&body, &u)
            })
            .collect()
    });
    let mut resolved = cfg.clone();
    resolved.n = 2;
    let mut report = ExperimentReport::new("shadow", "W_0, W_1".into(), resolved);
    let mut worst = (f64::NEG_INFINITY, 0.0f64);
    for (k, o) in outcomes.into_iter().enumerate() {
        let (convexity, identity) = o?;
        worst = (worst.0.max(convexity), worst.1.max(identity));
        report.records.push(TrialRecord { trial: k, role: "convexity_defect".into(), value: Some(convexity) });
        report.records.push(TrialRecord { trial: k, role: "identity_defect".into(), value: Some(identity) });
    }
    report.checks = vec![
        Check::new("max_convexity_defect", worst.0, worst.0 <= SHADOW_TOLERANCE),
        Check::new("max_identity_defect", worst.1, worst.1 <= SHADOW_IDENTITY_TOLERANCE),
    ];
    report.excluded_counts.insert("polygons".into(), 0);
    report.verdict = Verdict::from_bool(report.checks.iter().all(|c| c.pass));
    report.notes.push(
        "convexity defect: max of W(t_j) - (W(t_j-1) + W(t_j+1))/2 over a 21-point grid; identity defect: \
         area drift and Hausdorff gaps of K(1) = K, K(-1) = reflection, K(0) = Steiner symmetral"
            .into(),
    );
    report.runtime_s = start.elapsed().as_secs_f64();
    Ok(report)
}
