//! The LRU/static miss-rate ratio in the large-N limit, as a function of the
//! scaled window size y (cache ratio δ = 1 − p·E_{p+1}(y), p = 1/a).
//!
//! An exponent of `f64::INFINITY` selects the limiting member
//! `F_∞(y) = E_0(y)/(e^{E_1(y)} − 1)`.

use crate::asymptotics::jelenkovic_constant;
use crate::error::{Error, Result};
use crate::near;
use crate::specfun::{expint, ws_fraction, ws_fraction_inv};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPoint {
    pub a: f64,
    pub p: f64,
    pub y: f64,
    pub delta: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioMaximum {
    pub a: f64,
    pub y_star: f64,
    pub delta_star: f64,
    pub f_max: f64,
    /// E_1(a), the conjectured abscissa of the maximum.
    pub y_approx: f64,
    /// Small-cache limit of the ratio, reported for a > 1.
    pub jelenkovic: Option<f64>,
}

pub const SEARCH_LO: f64 = 1e-6;
pub const SEARCH_HI: f64 = 50.0;
const GRID_POINTS: usize = 1200;
const Y_TOL: f64 = 1e-8;

fn check_exponent(op: &'static str, a: f64, allow_inf: bool) -> Result<()> {
    if a.is_nan() || a <= 0.0 || (a.is_infinite() && !allow_inf) {
        return Err(Error::domain(
            op,
            format!("need a > 0{}, got {a}", if allow_inf { "" } else { " finite" }),
        ));
    }
    Ok(())
}

fn check_y(op: &'static str, y: f64) -> Result<()> {
    if !(y > 0.0) || y.is_infinite() {
        return Err(Error::domain(op, format!("need finite y > 0, got {y}")));
    }
    Ok(())
}

/// ln δ for δ = 1 − p·E_{p+1}(y), taking whichever of δ and 1 − δ is small
/// as the primary quantity.
fn ln_delta(p: f64, y: f64) -> Result<f64> {
    let delta = ws_fraction(p, y)?;
    if delta <= 0.0 {
        return Err(Error::internal(
            "ratio_value",
            format!("cache ratio {delta} at y = {y}"),
        ));
    }
    if delta < 0.5 {
        Ok(delta.ln())
    } else {
        Ok((-p * expint(p + 1.0, y)?).ln_1p())
    }
}

/// F_a(y) = (p−1)E_p(y) / (1 − δ^{1−a}).
pub fn ratio_value(a: f64, y: f64) -> Result<f64> {
    check_exponent("ratio_value", a, true)?;
    check_y("ratio_value", y)?;
    if a.is_infinite() {
        return Ok(expint(0.0, y)? / expint(1.0, y)?.exp_m1());
    }
    if near(a, 1.0) {
        return Ok(expint(1.0, y)? / -ln_delta(1.0, y)?);
    }
    let p = 1.0 / a;
    let den = -((1.0 - a) * ln_delta(p, y)?).exp_m1();
    Ok((p - 1.0) * expint(p, y)? / den)
}

/// Cache ratio δ = 1 − p·E_{p+1}(y) reached at scaled window y.
pub fn delta_of_y(a: f64, y: f64) -> Result<f64> {
    check_exponent("delta_of_y", a, false)?;
    check_y("delta_of_y", y)?;
    ws_fraction(1.0 / a, y)
}

/// The y with `delta_of_y(a, y) = delta`.
pub fn y_of_delta(a: f64, delta: f64) -> Result<f64> {
    check_exponent("y_of_delta", a, false)?;
    ws_fraction_inv(1.0 / a, delta)
}

/// Ratio at a given cache ratio, `F_a(E^{-1}_{p+1}(a(1−δ)))`.
pub fn ratio_at_delta(a: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(
            "ratio_at_delta",
            format!("need 0 < delta < 1, got {delta}"),
        ));
    }
    ratio_value(a, y_of_delta(a, delta)?)
}

pub fn ratio_point(a: f64, y: f64) -> Result<RatioPoint> {
    Ok(RatioPoint {
        a,
        p: 1.0 / a,
        y,
        delta: delta_of_y(a, y)?,
        value: ratio_value(a, y)?,
    })
}

/// Maximum of F_a over y ∈ [1e-6, 50].
///
/// A log-spaced scan locates the best sample, then golden-section search on
/// the two neighbouring intervals refines it to |Δy| < 1e-8. Because the
/// final bracket comes from the scan, the result dominates every scanned
/// value even if F_a had a second local maximum.
pub fn find_max(a: f64) -> Result<RatioMaximum> {
    check_exponent("find_max", a, false)?;
    let f = |y: f64| ratio_value(a, y);
    let step = (SEARCH_HI / SEARCH_LO).ln() / (GRID_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..GRID_POINTS).map(|i| SEARCH_LO * (step * i as f64).exp()).collect();
    let mut best = 0;
    let mut best_v = f64::NEG_INFINITY;
    for (i, &y) in grid.iter().enumerate() {
        let v = f(y)?;
        if v > best_v {
            best_v = v;
            best = i;
        }
    }
    let mut lo = grid[best.saturating_sub(1)];
    let mut hi = grid[(best + 1).min(GRID_POINTS - 1)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > Y_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let (mut y_star, mut f_max) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if best_v > f_max {
        y_star = grid[best];
        f_max = best_v;
    }
    Ok(RatioMaximum {
        a,
        y_star,
        delta_star: delta_of_y(a, y_star)?,
        f_max,
        y_approx: approx_max_abscissa(a)?,
        jelenkovic: if a > 1.0 { Some(jelenkovic_constant(a)?) } else { None },
    })
}

/// E_1(a) = E_1(1/p), an empirical predictor of the maximizing y.
pub fn approx_max_abscissa(a: f64) -> Result<f64> {
    check_exponent("approx_max_abscissa", a, false)?;
    expint(1.0, a)
}

/// Residual of the stationarity condition of F_a, divided by (p − 1):
///
/// `E_p(y)² − E_{p−1}(y)·(δ^{1/p} − δ)/(p − 1)`,
///
/// which is continuous through a = 1, where it becomes
/// `E_1(y)² + E_0(y)·δ ln δ`. Zero at interior extrema of F_a.
pub fn stationarity_residual(a: f64, y: f64) -> Result<f64> {
    check_exponent("stationarity_residual", a, false)?;
    check_y("stationarity_residual", y)?;
    let p = 1.0 / a;
    let ln_d = ln_delta(p, y)?;
    let delta = ln_d.exp();
    // (δ^{1/p} − δ)/(p − 1) = δ·expm1((a − 1) ln δ)·a/(1 − a)
    let bracket = if near(a, 1.0) {
        -delta * ln_d
    } else {
        delta * ((a - 1.0) * ln_d).exp_m1() * a / (1.0 - a)
    };
    let e_p = expint(p, y)?;
    Ok(e_p * e_p - expint(p - 1.0, y)? * bracket)
}
