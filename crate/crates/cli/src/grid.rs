//! Parsing of `lo:hi:step` ranges and exponent lists.

use crate::CliError;

/// Inclusive arithmetic range `lo:hi:step`, tolerant of rounding at `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.lo + self.step * i as f64).collect()
    }
}

pub fn parse_range(s: &str) -> Result<Range, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::config(format!("expected lo:hi:step, got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    let r = Range {
        lo: num(parts[0])?,
        hi: num(parts[1])?,
        step: num(parts[2])?,
    };
    if !(r.lo.is_finite() && r.hi.is_finite() && r.step > 0.0 && r.step.is_finite() && r.lo <= r.hi) {
        return Err(CliError::config(format!(
            "range {s:?} needs finite lo <= hi and step > 0"
        )));
    }
    Ok(r)
}

/// A cache-ratio grid: every value strictly inside (0, 1).
pub fn parse_ratio_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let r = parse_range(s)?;
    if !(r.lo > 0.0 && r.hi < 1.0) {
        return Err(CliError::config(format!(
            "cache-ratio grid {s:?} must lie within (0, 1)"
        )));
    }
    Ok(r.values())
}

/// Comma-separated exponents; each item is a number, `inf`, or a
/// `lo:hi:step` range. Values must be positive.
pub fn parse_exponents(s: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if item.contains(':') {
            out.extend(parse_range(item)?.values());
        } else {
            let v = item
                .parse::<f64>()
                .map_err(|_| CliError::config(format!("bad exponent {item:?} in a-grid")))?;
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(CliError::config("empty a-grid"));
    }
    if let Some(bad) = out.iter().find(|&&a| a.is_nan() || a <= 0.0) {
        return Err(CliError::config(format!("a-grid values must be > 0, got {bad}")));
    }
    Ok(out)
}

/// 0.1, 0.2, …, 3.0 followed by 5, 10, 100.
pub fn default_exponents() -> Vec<f64> {
    let mut v: Vec<f64> = (1..=30).map(|i| i as f64 / 10.0).collect();
    v.extend([5.0, 10.0, 100.0]);
    v
}
