//! Flag grammar and plan construction.
//!
//! ```text
//! nuclear <count|estimate|compare|saddle|validate>
//!     --x N | --x-grid lo:hi:xK     query abscissas (repeatable / decades)
//!     --theta a/b                    exact rational theta (repeatable)
//!     --theta-float F                opt-in float theta with ambiguity accounting
//!     --z Z --Theta T                predicate modifiers (default 1, 0)
//!     --method sieve|stratified      exact algorithm (default sieve)
//!     --eps E                        Rankin exponent for validate (default 0.1)
//!     --tol T --prime-limit P        evaluation config (default 1e-9, 1e6)
//!     --out PATH --format csv|json   report destination (default stdout, csv)
//!     --strict --no-timing --cache-dir PATH
//! ```
//!
//! `NUCLEAR_CACHE_DIR` is the fallback for `--cache-dir`.

use std::path::PathBuf;

use nuclear_core::analytic::EvalConfig;
use nuclear_core::counts::Method;
use nuclear_core::ThetaRational;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Count,
    Estimate,
    Compare,
    Saddle,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A fully resolved execution plan.
#[derive(Debug, Clone)]
pub struct Plan {
    pub command: Command,
    pub thetas: Vec<ThetaRational>,
    pub theta_floats: Vec<f64>,
    pub xs: Vec<u64>,
    pub z: f64,
    pub big_theta: f64,
    pub method: Method,
    pub eps: f64,
    pub cfg: EvalConfig,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub strict: bool,
    pub no_timing: bool,
    pub cache_dir: Option<PathBuf>,
}

pub const USAGE: &str = "\
usage: nuclear <count|estimate|compare|saddle|validate> [flags]
flags:
  --x N              add one abscissa (repeatable; accepts 1e6 notation)
  --x-grid lo:hi:xK  multiplicative grid, e.g. 1e4:1e8:x10
  --theta a/b        exact rational theta in (0,1) (repeatable)
  --theta-float F    float theta (ambiguity-accounted; repeatable)
  --z Z              predicate factor z > 0 (default 1)
  --Theta T          log-power exponent (default 0)
  --method M         sieve | stratified (default sieve)
  --eps E            Rankin exponent used by validate (default 0.1)
  --tol T            evaluation tolerance (default 1e-9)
  --prime-limit P    prime truncation (default 1000000)
  --out PATH         write the report to PATH (default: stdout)
  --format F         csv | json (default csv)
  --strict           abort on any per-row computation error (exit 2)
  --no-timing        zero the elapsed_ms column for reproducible output
  --cache-dir PATH   prime cache directory (fallback: NUCLEAR_CACHE_DIR)";

fn parse_number(flag: &str, value: &str) -> Result<f64, CliError> {
    value
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("{flag}: expected a number, got '{value}'")))
}

fn parse_x(flag: &str, value: &str) -> Result<u64, CliError> {
    let v = parse_number(flag, value)?;
    if !(v >= 1.0 && v <= 1.8e19) {
        return Err(CliError::Usage(format!("{flag}: x out of range: '{value}'")));
    }
    Ok(v.round() as u64)
}

/// Expand `lo:hi:xK` into lo, lo*K, ... up to hi (inclusive within rounding).
fn parse_grid(value: &str) -> Result<Vec<u64>, CliError> {
    let parts: Vec<&str> = value.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "--x-grid: expected lo:hi:xK, got '{value}'"
        )));
    };
    let lo = parse_number("--x-grid", lo)?;
    let hi = parse_number("--x-grid", hi)?;
    let factor = step
        .strip_prefix('x')
        .ok_or_else(|| {
            CliError::Usage(format!("--x-grid: step must look like x10, got '{step}'"))
        })
        .and_then(|f| parse_number("--x-grid", f))?;
    if !(lo >= 1.0) || hi < lo || !(factor > 1.0) {
        return Err(CliError::Usage(format!(
            "--x-grid: need 1 <= lo <= hi and multiplier > 1, got '{value}'"
        )));
    }
    let mut xs = Vec::new();
    let mut v = lo;
    while v <= hi * (1.0 + 1e-9) {
        xs.push(v.round() as u64);
        v *= factor;
    }
    Ok(xs)
}

/// Parse argv (without the program name) into a plan with defaults applied.
pub fn build_plan(argv: &[String]) -> Result<Plan, CliError> {
    let Some(command) = argv.first() else {
        return Err(CliError::Usage("missing command".into()));
    };
    let command = match command.as_str() {
        "count" => Command::Count,
        "estimate" => Command::Estimate,
        "compare" => Command::Compare,
        "saddle" => Command::Saddle,
        "validate" => Command::Validate,
        other => {
            return Err(CliError::Usage(format!(
                "unknown command '{other}' (expected count|estimate|compare|saddle|validate)"
            )))
        }
    };

    let mut plan = Plan {
        command,
        thetas: Vec::new(),
        theta_floats: Vec::new(),
        xs: Vec::new(),
        z: 1.0,
        big_theta: 0.0,
        method: Method::Sieve,
        eps: 0.1,
        cfg: EvalConfig::default(),
        out: None,
        format: OutputFormat::Csv,
        strict: false,
        no_timing: false,
        cache_dir: std::env::var_os("NUCLEAR_CACHE_DIR").map(PathBuf::from),
    };

    let mut i = 1;
    let need = |i: &mut usize, flag: &str| -> Result<String, CliError> {
        *i += 1;
        argv.get(*i)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("{flag} requires a value")))
    };
    while i < argv.len() {
        match argv[i].as_str() {
            "--x" => {
                let v = need(&mut i, "--x")?;
                plan.xs.push(parse_x("--x", &v)?);
            }
            "--x-grid" => {
                let v = need(&mut i, "--x-grid")?;
                plan.xs.extend(parse_grid(&v)?);
            }
            "--theta" => {
                let v = need(&mut i, "--theta")?;
                let theta: ThetaRational = v
                    .parse()
                    .map_err(|e| CliError::Usage(format!("--theta: {e}")))?;
                plan.thetas.push(theta);
            }
            "--theta-float" => {
                let v = need(&mut i, "--theta-float")?;
                let f = parse_number("--theta-float", &v)?;
                if !(f > 0.0 && f < 1.0) {
                    return Err(CliError::Usage(format!(
                        "--theta-float: theta must satisfy 0 < theta < 1, got {f}"
                    )));
                }
                plan.theta_floats.push(f);
            }
            "--z" => {
                let v = need(&mut i, "--z")?;
                plan.z = parse_number("--z", &v)?;
                if !(plan.z > 0.0) {
                    return Err(CliError::Usage(format!("--z: need z > 0, got {}", plan.z)));
                }
            }
            "--Theta" => {
                let v = need(&mut i, "--Theta")?;
                plan.big_theta = parse_number("--Theta", &v)?;
            }
            "--method" => {
                let v = need(&mut i, "--method")?;
                plan.method = match v.as_str() {
                    "sieve" => Method::Sieve,
                    "stratified" => Method::Stratified,
                    other => {
                        return Err(CliError::Usage(format!(
                            "--method: expected sieve or stratified, got '{other}'"
                        )))
                    }
                };
            }
            "--eps" => {
                let v = need(&mut i, "--eps")?;
                plan.eps = parse_number("--eps", &v)?;
                if !(plan.eps > 0.0) {
                    return Err(CliError::Usage("--eps: need eps > 0".into()));
                }
            }
            "--tol" => {
                let v = need(&mut i, "--tol")?;
                plan.cfg.tol = parse_number("--tol", &v)?;
                if !(plan.cfg.tol > 0.0) {
                    return Err(CliError::Usage("--tol: need tol > 0".into()));
                }
            }
            "--prime-limit" => {
                let v = need(&mut i, "--prime-limit")?;
                plan.cfg.prime_limit = parse_x("--prime-limit", &v)?;
                if plan.cfg.prime_limit < 1000 {
                    return Err(CliError::Usage(format!(
                        "--prime-limit: must be at least 1000, got {}",
                        plan.cfg.prime_limit
                    )));
                }
            }
            "--out" => {
                let v = need(&mut i, "--out")?;
                plan.out = Some(PathBuf::from(v));
            }
            "--format" => {
                let v = need(&mut i, "--format")?;
                plan.format = match v.as_str() {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    other => {
                        return Err(CliError::Usage(format!(
                            "--format: expected csv or json, got '{other}'"
                        )))
                    }
                };
            }
            "--strict" => plan.strict = true,
            "--no-timing" => plan.no_timing = true,
            "--cache-dir" => {
                let v = need(&mut i, "--cache-dir")?;
                plan.cache_dir = Some(PathBuf::from(v));
            }
            other => {
                return Err(CliError::Usage(format!("unknown flag '{other}'")));
            }
        }
        i += 1;
    }

    // defaults for validate so it can run bare
    if plan.command == Command::Validate {
        if plan.xs.is_empty() {
            plan.xs.push(10_000);
        }
        if plan.thetas.is_empty() && plan.theta_floats.is_empty() {
            plan.thetas.push(ThetaRational::new(1, 2).expect("1/2 is valid"));
        }
    }

    if plan.xs.is_empty() {
        return Err(CliError::Usage(
            "no abscissas: provide --x or --x-grid".into(),
        ));
    }
    if plan.thetas.is_empty() && plan.theta_floats.is_empty() {
        return Err(CliError::Usage(
            "no theta: provide --theta a/b (or --theta-float)".into(),
        ));
    }
    plan.xs.sort_unstable();
    plan.xs.dedup();
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &[&str]) -> Vec<String> {
        s.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_count() {
        let plan = build_plan(&args(&["count", "--x", "1000000", "--theta", "1/2"])).unwrap();
        assert_eq!(plan.command, Command::Count);
        assert_eq!(plan.xs, vec![1_000_000]);
        assert_eq!(plan.thetas.len(), 1);
        assert_eq!(plan.method, Method::Sieve);
        assert_eq!(plan.cfg.tol, 1e-9);
        assert_eq!(plan.cfg.prime_limit, 1_000_000);
    }

    #[test]
    fn rejects_bad_theta() {
        let err = build_plan(&args(&["count", "--x", "10", "--theta", "0/1"])).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
        let msg = err.to_string();
        assert!(msg.contains("theta"), "message should name the flag: {msg}");
    }

    #[test]
    fn expands_grid() {
        let plan = build_plan(&args(&[
            "compare", "--theta", "1/2", "--x-grid", "1e4:1e8:x10",
        ]))
        .unwrap();
        assert_eq!(
            plan.xs,
            vec![10_000, 100_000, 1_000_000, 10_000_000, 100_000_000]
        );
    }

    #[test]
    fn rejects_unknown_flag() {
        let err = build_plan(&args(&["count", "--x", "10", "--theta", "1/2", "--frob"]))
            .unwrap_err();
        assert!(err.to_string().contains("--frob"));
    }

    #[test]
    fn rejects_missing_command_and_values() {
        assert!(build_plan(&[]).is_err());
        assert!(build_plan(&args(&["count", "--x"])).is_err());
        assert!(build_plan(&args(&["count", "--theta", "1/2"])).is_err());
        assert!(build_plan(&args(&["frobnicate"])).is_err());
    }

    #[test]
    fn grid_syntax_errors() {
        for bad in ["1e4:1e8", "1e4:1e8:10", "1e8:1e4:x10", "a:b:x2"] {
            assert!(
                build_plan(&args(&["count", "--theta", "1/2", "--x-grid", bad])).is_err(),
                "{bad} should be rejected"
            );
        }
    }
}
