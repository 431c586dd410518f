//! Row-oriented exact-vs-estimate report, serialized to CSV or JSON.
//!
//! Both formats carry identical keys; floats are printed with 17
//! significant digits so a parse reproduces the original bits. Files are
//! written atomically (temp file + rename).

use std::fs;
use std::path::Path;

use crate::plan::OutputFormat;
use crate::CliError;

pub const CSV_HEADER: &str =
    "x,theta,z,Theta,exact,s7,s8,ratio_s7,ratio_s8,sigma_v,F_v,elapsed_ms,ambiguous";

const COLUMNS: [&str; 13] = [
    "x", "theta", "z", "Theta", "exact", "s7", "s8", "ratio_s7", "ratio_s8", "sigma_v", "F_v",
    "elapsed_ms", "ambiguous",
];

/// One grid point. Optional columns stay empty when the corresponding
/// computation was not requested or not feasible.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: u64,
    /// "a/b" for rational theta; a float rendering for --theta-float.
    pub theta: String,
    pub z: f64,
    pub big_theta: f64,
    pub exact: Option<u64>,
    pub s7: Option<f64>,
    pub s8: Option<f64>,
    pub ratio_s7: Option<f64>,
    pub ratio_s8: Option<f64>,
    pub sigma_v: Option<f64>,
    pub f_v: Option<f64>,
    pub elapsed_ms: u64,
    pub ambiguous: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CompareReport {
    pub rows: Vec<Row>,
}

/// 17 significant digits: enough for f64 round-trips.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn fmt_opt_u64(v: Option<u64>) -> String {
    v.map(|u| u.to_string()).unwrap_or_default()
}

/// Numeric value of a theta column ("a/b" or a float string), for sorting.
fn theta_value(theta: &str) -> f64 {
    if let Some((a, b)) = theta.split_once('/') {
        if let (Ok(a), Ok(b)) = (a.parse::<f64>(), b.parse::<f64>()) {
            return a / b;
        }
    }
    theta.parse::<f64>().unwrap_or(f64::MAX)
}

impl CompareReport {
    /// Sort rows by (theta, x), the canonical report ordering.
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| {
            theta_value(&a.theta)
                .partial_cmp(&theta_value(&b.theta))
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.x.cmp(&b.x))
                .then(a.z.partial_cmp(&b.z).unwrap_or(std::cmp::Ordering::Equal))
        });
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.x,
                r.theta,
                fmt_f64(r.z),
                fmt_f64(r.big_theta),
                fmt_opt_u64(r.exact),
                fmt_opt_f64(r.s7),
                fmt_opt_f64(r.s8),
                fmt_opt_f64(r.ratio_s7),
                fmt_opt_f64(r.ratio_s8),
                fmt_opt_f64(r.sigma_v),
                fmt_opt_f64(r.f_v),
                r.elapsed_ms,
                r.ambiguous
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| CliError::Usage("empty CSV report".into()))?;
        if header != CSV_HEADER {
            return Err(CliError::Usage(format!(
                "unexpected CSV header: '{header}'"
            )));
        }
        let mut rows = Vec::new();
        for (lineno, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != COLUMNS.len() {
                return Err(CliError::Usage(format!(
                    "line {}: expected {} fields, got {}",
                    lineno + 2,
                    COLUMNS.len(),
                    fields.len()
                )));
            }
            let parse_u64 = |s: &str, what: &str| -> Result<u64, CliError> {
                s.parse()
                    .map_err(|_| CliError::Usage(format!("bad {what}: '{s}'")))
            };
            let parse_f64 = |s: &str, what: &str| -> Result<f64, CliError> {
                s.parse()
                    .map_err(|_| CliError::Usage(format!("bad {what}: '{s}'")))
            };
            let opt_u64 = |s: &str, what: &str| -> Result<Option<u64>, CliError> {
                if s.is_empty() {
                    Ok(None)
                } else {
                    parse_u64(s, what).map(Some)
                }
            };
            let opt_f64 = |s: &str, what: &str| -> Result<Option<f64>, CliError> {
                if s.is_empty() {
                    Ok(None)
                } else {
                    parse_f64(s, what).map(Some)
                }
            };
            rows.push(Row {
                x: parse_u64(fields[0], "x")?,
                theta: fields[1].to_string(),
                z: parse_f64(fields[2], "z")?,
                big_theta: parse_f64(fields[3], "Theta")?,
                exact: opt_u64(fields[4], "exact")?,
                s7: opt_f64(fields[5], "s7")?,
                s8: opt_f64(fields[6], "s8")?,
                ratio_s7: opt_f64(fields[7], "ratio_s7")?,
                ratio_s8: opt_f64(fields[8], "ratio_s8")?,
                sigma_v: opt_f64(fields[9], "sigma_v")?,
                f_v: opt_f64(fields[10], "F_v")?,
                elapsed_ms: parse_u64(fields[11], "elapsed_ms")?,
                ambiguous: parse_u64(fields[12], "ambiguous")?,
            });
        }
        Ok(Self { rows })
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("[\n");
        for (i, r) in self.rows.iter().enumerate() {
            let json_opt_f64 =
                |v: Option<f64>| v.map(fmt_f64).unwrap_or_else(|| "null".to_string());
            let json_opt_u64 =
                |v: Option<u64>| v.map(|u| u.to_string()).unwrap_or_else(|| "null".to_string());
            out.push_str(&format!(
                "  {{\"x\":{},\"theta\":\"{}\",\"z\":{},\"Theta\":{},\"exact\":{},\"s7\":{},\"s8\":{},\"ratio_s7\":{},\"ratio_s8\":{},\"sigma_v\":{},\"F_v\":{},\"elapsed_ms\":{},\"ambiguous\":{}}}{}\n",
                r.x,
                r.theta,
                fmt_f64(r.z),
                fmt_f64(r.big_theta),
                json_opt_u64(r.exact),
                json_opt_f64(r.s7),
                json_opt_f64(r.s8),
                json_opt_f64(r.ratio_s7),
                json_opt_f64(r.ratio_s8),
                json_opt_f64(r.sigma_v),
                json_opt_f64(r.f_v),
                r.elapsed_ms,
                r.ambiguous,
                if i + 1 < self.rows.len() { "," } else { "" }
            ));
        }
        out.push_str("]\n");
        out
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("bad JSON report: {e}")))?;
        let array = value
            .as_array()
            .ok_or_else(|| CliError::Usage("JSON report must be an array".into()))?;
        let mut rows = Vec::with_capacity(array.len());
        for item in array {
            let obj = item
                .as_object()
                .ok_or_else(|| CliError::Usage("JSON rows must be objects".into()))?;
            let get = |key: &str| -> Result<&serde_json::Value, CliError> {
                obj.get(key)
                    .ok_or_else(|| CliError::Usage(format!("JSON row missing key '{key}'")))
            };
            let req_u64 = |key: &str| -> Result<u64, CliError> {
                get(key)?
                    .as_u64()
                    .ok_or_else(|| CliError::Usage(format!("JSON key '{key}' must be an integer")))
            };
            let req_f64 = |key: &str| -> Result<f64, CliError> {
                get(key)?
                    .as_f64()
                    .ok_or_else(|| CliError::Usage(format!("JSON key '{key}' must be a number")))
            };
            let opt_u64 = |key: &str| -> Result<Option<u64>, CliError> {
                let v = get(key)?;
                if v.is_null() {
                    Ok(None)
                } else {
                    v.as_u64().map(Some).ok_or_else(|| {
                        CliError::Usage(format!("JSON key '{key}' must be an integer or null"))
                    })
                }
            };
            let opt_f64 = |key: &str| -> Result<Option<f64>, CliError> {
                let v = get(key)?;
                if v.is_null() {
                    Ok(None)
                } else {
                    v.as_f64().map(Some).ok_or_else(|| {
                        CliError::Usage(format!("JSON key '{key}' must be a number or null"))
                    })
                }
            };
            rows.push(Row {
                x: req_u64("x")?,
                theta: get("theta")?
                    .as_str()
                    .ok_or_else(|| CliError::Usage("JSON key 'theta' must be a string".into()))?
                    .to_string(),
                z: req_f64("z")?,
                big_theta: req_f64("Theta")?,
                exact: opt_u64("exact")?,
                s7: opt_f64("s7")?,
                s8: opt_f64("s8")?,
                ratio_s7: opt_f64("ratio_s7")?,
                ratio_s8: opt_f64("ratio_s8")?,
                sigma_v: opt_f64("sigma_v")?,
                f_v: opt_f64("F_v")?,
                elapsed_ms: req_u64("elapsed_ms")?,
                ambiguous: req_u64("ambiguous")?,
            });
        }
        Ok(Self { rows })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// Write atomically: temp file in the same directory, then rename.
    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<(), CliError> {
        let payload = self.render(format);
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        let ctx = |e: std::io::Error| CliError::Computation(format!("{}: {e}", path.display()));
        fs::write(&tmp, payload).map_err(ctx)?;
        fs::rename(&tmp, path).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            ctx(e)
        })
    }
}
