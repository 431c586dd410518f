//! Plan execution: one report row per grid point.
//!
//! Per-row computation errors are fail-soft by default: the row keeps its
//! inputs, the numeric columns stay empty, and a note goes to stderr. Under
//! `--strict` the first error aborts the run (exit code 2).

use std::time::Instant;

use nuclear_core::analytic::Analytic;
use nuclear_core::counts::{
    self, count_nuclear, count_powered, count_powered_float_theta, CountQuery,
};
use nuclear_core::ThetaRational;

use crate::cache;
use crate::plan::{Command, Plan};
use crate::report::{fmt_f64, CompareReport, Row};
use crate::CliError;

enum ThetaSpec {
    Rational(ThetaRational),
    Float(f64),
}

impl ThetaSpec {
    fn label(&self) -> String {
        match self {
            Self::Rational(t) => t.to_string(),
            Self::Float(f) => fmt_f64(*f),
        }
    }
}

fn blank_row(plan: &Plan, theta: &ThetaSpec, x: u64) -> Row {
    Row {
        x,
        theta: theta.label(),
        z: plan.z,
        big_theta: plan.big_theta,
        exact: None,
        s7: None,
        s8: None,
        ratio_s7: None,
        ratio_s8: None,
        sigma_v: None,
        f_v: None,
        elapsed_ms: 0,
        ambiguous: 0,
    }
}

fn exact_count(plan: &Plan, theta: &ThetaSpec, x: u64) -> nuclear_core::Result<counts::CountResult> {
    match theta {
        ThetaSpec::Rational(t) => {
            let query = CountQuery {
                x,
                theta: *t,
                z: plan.z,
                big_theta: plan.big_theta,
                method: plan.method,
            };
            count_powered(&query)
        }
        ThetaSpec::Float(f) => count_powered_float_theta(x, *f, plan.z, plan.big_theta),
    }
}

fn fill_estimates(
    analytic: &Analytic,
    theta: &ThetaSpec,
    x: u64,
    row: &mut Row,
) -> nuclear_core::Result<()> {
    let ThetaSpec::Rational(t) = theta else {
        // estimates require exact rational theta
        return Ok(());
    };
    let est = analytic.estimate_powered(*t, x as f64)?;
    row.s7 = Some(est.s7);
    row.s8 = Some(est.s8);
    row.sigma_v = Some(est.alpha);
    row.f_v = Some(est.f_v);
    if let Some(exact) = row.exact {
        row.ratio_s7 = Some(exact as f64 / est.s7);
        row.ratio_s8 = Some(exact as f64 / est.s8);
    }
    Ok(())
}

fn fill_saddle(
    analytic: &Analytic,
    theta: &ThetaSpec,
    x: u64,
    row: &mut Row,
) -> nuclear_core::Result<()> {
    let theta_value = match theta {
        ThetaSpec::Rational(t) => t.value(),
        ThetaSpec::Float(f) => *f,
    };
    let v = (1.0 - theta_value) * (x as f64).ln();
    if v <= 0.0 {
        return Err(nuclear_core::Error::InvalidArgument(format!(
            "saddle needs (1-theta) log x > 0, got x = {x}"
        )));
    }
    let sp = analytic.solve_saddle(v)?;
    row.sigma_v = Some(sp.sigma);
    row.f_v = Some(analytic.f_series(v)?.value);
    Ok(())
}

/// Execute the plan, producing one row per (theta, x) grid point.
pub fn execute_plan(plan: &Plan) -> Result<CompareReport, CliError> {
    let needs_analytic = matches!(
        plan.command,
        Command::Estimate | Command::Compare | Command::Saddle | Command::Validate
    );
    let analytic = if needs_analytic {
        let table = cache::load_or_generate(plan.cfg.prime_limit, plan.cache_dir.as_deref())
            .map_err(|e| CliError::Computation(e.to_string()))?;
        Some(
            Analytic::with_table(plan.cfg, &table)
                .map_err(|e| CliError::Computation(e.to_string()))?,
        )
    } else {
        None
    };

    let thetas: Vec<ThetaSpec> = plan
        .thetas
        .iter()
        .map(|t| ThetaSpec::Rational(*t))
        .chain(plan.theta_floats.iter().map(|f| ThetaSpec::Float(*f)))
        .collect();

    let mut report = CompareReport::default();
    for theta in &thetas {
        for &x in &plan.xs {
            let started = Instant::now();
            let mut row = blank_row(plan, theta, x);
            let outcome: nuclear_core::Result<()> = (|| {
                match plan.command {
                    Command::Count => {
                        let r = exact_count(plan, theta, x)?;
                        row.exact = Some(r.count);
                        row.ambiguous = r.ambiguous;
                    }
                    Command::Estimate => {
                        fill_estimates(analytic.as_ref().expect("analytic built"), theta, x, &mut row)?;
                    }
                    Command::Compare | Command::Validate => {
                        let analytic = analytic.as_ref().expect("analytic built");
                        // exact side is fail-soft on its own so the
                        // estimate columns survive an out-of-budget x
                        match exact_count(plan, theta, x) {
                            Ok(r) => {
                                row.exact = Some(r.count);
                                row.ambiguous = r.ambiguous;
                            }
                            Err(err) => {
                                if plan.strict {
                                    return Err(err);
                                }
                                eprintln!("nuclear: x={x} theta={}: {err}", theta.label());
                            }
                        }
                        fill_estimates(analytic, theta, x, &mut row)?;
                    }
                    Command::Saddle => {
                        fill_saddle(analytic.as_ref().expect("analytic built"), theta, x, &mut row)?;
                    }
                }
                Ok(())
            })();
            row.elapsed_ms = if plan.no_timing {
                0
            } else {
                started.elapsed().as_millis() as u64
            };
            match outcome {
                Ok(()) => {}
                Err(err) => {
                    if plan.strict {
                        return Err(CliError::Computation(format!(
                            "x={x} theta={}: {err}",
                            theta.label()
                        )));
                    }
                    eprintln!("nuclear: x={x} theta={}: {err}", theta.label());
                }
            }
            report.rows.push(row);
        }
    }
    report.sort();
    if plan.no_timing {
        for row in &mut report.rows {
            row.elapsed_ms = 0;
        }
    }
    Ok(report)
}

/// The `validate` command: quick self-checks at the requested grid points.
/// Returns the number of failed checks; prints one line per check.
pub fn run_validation(plan: &Plan) -> Result<usize, CliError> {
    let table = cache::load_or_generate(plan.cfg.prime_limit, plan.cache_dir.as_deref())
        .map_err(|e| CliError::Computation(e.to_string()))?;
    let analytic = Analytic::with_table(plan.cfg, &table)
        .map_err(|e| CliError::Computation(e.to_string()))?;

    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool, detail: String| {
        if ok {
            println!("ok: {name} ({detail})");
        } else {
            println!("FAIL: {name} ({detail})");
            failures += 1;
        }
    };

    match analytic.f_series(0.0) {
        Ok(f0) => check(
            "F(0) = 1",
            (f0.value - 1.0).abs() <= 1e-9,
            format!("value {}", fmt_f64(f0.value)),
        ),
        Err(e) => check("F(0) = 1", false, e.to_string()),
    }
    let expected = 2.0 - 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    match analytic.f_series(2f64.ln()) {
        Ok(f) => check(
            "F(log 2) = 2 - 6/pi^2",
            (f.value - expected).abs() <= 1e-9,
            format!("value {}", fmt_f64(f.value)),
        ),
        Err(e) => check("F(log 2) = 2 - 6/pi^2", false, e.to_string()),
    }
    match analytic.log_g(1.0) {
        Ok(g) => check(
            "log G(1) = 0",
            g.value.abs() <= 1e-9,
            format!("value {}", fmt_f64(g.value)),
        ),
        Err(e) => check("log G(1) = 0", false, e.to_string()),
    }
    match analytic.g_derivatives(0.5).and_then(|(g1, _)| {
        let sp = analytic.solve_saddle(-g1.value)?;
        Ok((sp.sigma - 0.5).abs())
    }) {
        Ok(err) => check("saddle round-trip at 0.5", err <= 1e-8, format!("error {err:.3e}")),
        Err(e) => check("saddle round-trip at 0.5", false, e.to_string()),
    }

    for theta in &plan.thetas {
        match analytic.h_series(*theta, 1.0) {
            Ok(h) => check(
                &format!("H_{theta}(1) = 1"),
                (h.value - 1.0).abs() <= 1e-9,
                format!("value {}", fmt_f64(h.value)),
            ),
            Err(e) => check(&format!("H_{theta}(1) = 1"), false, e.to_string()),
        }
        for &x in &plan.xs {
            if x > 10_000_000 {
                println!("skip: dual-method at x={x} (beyond validate budget)");
                continue;
            }
            let sieve = count_powered(&CountQuery::new(x, *theta));
            let strat = counts::count_powered_stratified(x, *theta);
            match (sieve, strat) {
                (Ok(a), Ok(b)) => check(
                    &format!("dual-method agreement at x={x} theta={theta}"),
                    a.count == b.count,
                    format!("sieve {} vs stratified {}", a.count, b.count),
                ),
                (Err(e), _) | (_, Err(e)) => check(
                    &format!("dual-method agreement at x={x} theta={theta}"),
                    false,
                    e.to_string(),
                ),
            }
            match (
                counts::count_powered_stratified(x, *theta),
                analytic.rankin_bound(*theta, x as f64, plan.eps),
            ) {
                (Ok(s), Ok(bound)) => check(
                    &format!("Rankin bound at x={x} theta={theta} eps={}", plan.eps),
                    bound.value >= s.count as f64,
                    format!("bound {:.4e} vs exact {}", bound.value, s.count),
                ),
                (Err(e), _) | (_, Err(e)) => check(
                    &format!("Rankin bound at x={x} theta={theta} eps={}", plan.eps),
                    false,
                    e.to_string(),
                ),
            }
        }
    }
    let spot = count_nuclear(10_000, 10_000)
        .map(|r| r.count)
        .unwrap_or(0);
    check("N(x, x) = x at 1e4", spot == 10_000, format!("got {spot}"));

    Ok(failures)
}
