//! Limiting regimes of the LRU miss rate: caches holding almost everything,
//! caches holding almost nothing, and the origin slope of the working set.

use crate::error::{Error, Result};
use crate::model::{ws_analytic, PowerLaw};
use crate::near;
use crate::specfun::{expint, gamma, harmonic, ln_gamma, ws_fraction_inv, zeta, HarmonicSpec};
use crate::EULER_GAMMA;

/// Smallest cache ratio accepted by the large-cache forms.
pub const LARGE_CACHE_MIN_DELTA: f64 = 0.5;
/// Largest cache ratio accepted by the small-cache forms.
pub const SMALL_CACHE_MAX_DELTA: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeKind {
    LargeCache,
    SmallCache,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub kind: RegimeKind,
    pub a: f64,
    pub delta: f64,
    pub n: Option<u64>,
}

impl Regime {
    pub fn new(kind: RegimeKind, a: f64, delta: f64, n: Option<u64>) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::domain("Regime", format!("need 0 < delta < 1, got {delta}")));
        }
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::domain("Regime", format!("need finite a >= 0, got {a}")));
        }
        if n == Some(0) {
            return Err(Error::domain("Regime", "N must be >= 1"));
        }
        Ok(Regime { kind, a, delta, n })
    }

    pub fn large(a: f64, delta: f64, n: Option<u64>) -> Result<Self> {
        Self::new(RegimeKind::LargeCache, a, delta, n)
    }

    pub fn small(a: f64, delta: f64, n: Option<u64>) -> Result<Self> {
        Self::new(RegimeKind::SmallCache, a, delta, n)
    }
}

fn check_large(op: &'static str, r: &Regime) -> Result<()> {
    if r.kind != RegimeKind::LargeCache {
        return Err(Error::domain(op, "regime is not LargeCache"));
    }
    if r.delta < LARGE_CACHE_MIN_DELTA {
        return Err(Error::domain(
            op,
            format!("large-cache form needs delta >= 0.5, got {}", r.delta),
        ));
    }
    Ok(())
}

/// `N^{1−a}(1−δ)/H_{N,a}` with the exact harmonic number. Without N, the
/// N → ∞ value `(1−δ)(1−a)` is returned for a < 1; a ≥ 1 then needs N.
pub fn lru_mr_large_cache(regime: &Regime) -> Result<f64> {
    check_large("lru_mr_large_cache", regime)?;
    let Regime { a, delta, .. } = *regime;
    match regime.n {
        Some(n) => {
            let h = harmonic(HarmonicSpec::new(n, a)?);
            Ok(((1.0 - a) * (n as f64).ln()).exp() * (1.0 - delta) / h)
        }
        None if a < 1.0 && !near(a, 1.0) => Ok((1.0 - delta) * (1.0 - a)),
        None => Err(Error::MissingAlphabet {
            op: "lru_mr_large_cache",
            a,
        }),
    }
}

/// The large-N reductions of [`lru_mr_large_cache`]: `(1−δ)(1−a)` for
/// 0 ≤ a < 1, `(1−δ)/ln N` at a = 1, `N^{1−a}(1−δ)/ζ(a)` for a > 1.
pub fn lru_mr_large_cache_limit(regime: &Regime) -> Result<f64> {
    check_large("lru_mr_large_cache_limit", regime)?;
    let Regime { a, delta, n, .. } = *regime;
    if a < 1.0 && !near(a, 1.0) {
        return Ok((1.0 - delta) * (1.0 - a));
    }
    let n = n.ok_or(Error::MissingAlphabet {
        op: "lru_mr_large_cache_limit",
        a,
    })? as f64;
    if near(a, 1.0) {
        Ok((1.0 - delta) / n.ln())
    } else {
        Ok(((1.0 - a) * n.ln()).exp() * (1.0 - delta) / zeta(a)?)
    }
}

/// Large-cache LRU/static ratio, independent of N:
/// `(1−δ)(1−a)/(1−δ^{1−a})`, or `(1−δ)/(−ln δ)` at a = 1.
pub fn ratio_large_cache(a: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(
            "ratio_large_cache",
            format!("need 0 < delta < 1, got {delta}"),
        ));
    }
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::domain(
            "ratio_large_cache",
            format!("need finite a >= 0, got {a}"),
        ));
    }
    let ln_d = delta.ln();
    if near(a, 1.0) {
        return Ok((1.0 - delta) / -ln_d);
    }
    let b = 1.0 - a;
    Ok((1.0 - delta) * b / -(b * ln_d).exp_m1())
}

/// Small-cache LRU/static ratio limit for a > 1: `(1 − 1/a) Γ(1 − 1/a)^a`.
pub fn jelenkovic_constant(a: f64) -> Result<f64> {
    if !(a > 1.0) || a.is_nan() {
        return Err(Error::domain("jelenkovic_constant", format!("need a > 1, got {a}")));
    }
    if a.is_infinite() {
        return Ok(EULER_GAMMA.exp());
    }
    let q = 1.0 / a;
    Ok(((-q).ln_1p() + a * ln_gamma(1.0 - q)).exp())
}

/// LRU miss rate for caches holding a vanishing fraction δ of the alphabet.
pub fn lru_mr_small_cache(a: f64, delta: f64, n: Option<u64>) -> Result<f64> {
    const OP: &str = "lru_mr_small_cache";
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(OP, format!("need finite a > 0, got {a}")));
    }
    if !(delta > 0.0 && delta <= SMALL_CACHE_MAX_DELTA) {
        return Err(Error::domain(
            OP,
            format!("small-cache form needs 0 < delta <= 0.1, got {delta}"),
        ));
    }
    if a > 1.0 || near(a, 1.0) {
        let n = n.ok_or(Error::MissingAlphabet { op: OP, a })? as f64;
        let d = delta * n;
        if near(a, 1.0) {
            return Ok(1.0 - d.ln() / n.ln());
        }
        let q = 1.0 / a;
        let ln_mr = a * ln_gamma(1.0 - q) - a.ln() - zeta(a)?.ln() - (a - 1.0) * d.ln();
        return Ok(ln_mr.exp());
    }
    if near(a, 0.5) {
        return Ok(1.0 + 0.5 * delta * ((0.5 * delta).ln() + EULER_GAMMA - 1.0));
    }
    if a > 0.5 {
        let e = 1.0 / a - 1.0;
        return Ok(1.0 - (delta * (1.0 - a)).powf(e) * gamma(2.0 - 1.0 / a));
    }
    Ok(1.0 - delta * (1.0 - a).powi(2) / (1.0 - 2.0 * a))
}

/// The N-free form of the LRU miss rate for 0 < a < 1 obtained by replacing
/// H_{N,a} with N^{1−a}/(1−a): `(1/a − 1)·E_{1/a}(E^{-1}_{1+1/a}(a(1−δ)))`.
pub fn lru_mr_sublinear_limit(a: f64, delta: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(
            "lru_mr_sublinear_limit",
            format!("need 0 < a < 1, got {a}"),
        ));
    }
    let p = 1.0 / a;
    let y = ws_fraction_inv(p, delta)?;
    Ok((p - 1.0) * expint(p, y)?)
}

/// `ψ_α(β) = 1 − E_{1+1/α}(β)/α`, the fraction of a power-law alphabet
/// present in a TTL/LRU cache at scaled characteristic time β.
pub fn fricker_psi(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain("fricker_psi", format!("need alpha > 0, got {alpha}")));
    }
    crate::specfun::ws_fraction(1.0 / alpha, beta)
}

/// Slope at the origin of ln WS versus ln D: 1 for a ≤ 1, 1/a beyond.
pub fn ws_loglog_slope_origin(a: f64) -> Result<f64> {
    if !(a >= 0.0) {
        return Err(Error::domain("ws_loglog_slope_origin", format!("need a >= 0, got {a}")));
    }
    Ok(if a <= 1.0 { 1.0 } else { 1.0 / a })
}

/// Central finite-difference slope of ln WS against ln D at `d`, with a
/// multiplicative step `e^{±h}`.
pub fn ws_loglog_slope_at(law: &PowerLaw, d: f64, h: f64) -> Result<f64> {
    if !(d > 0.0 && h > 0.0) {
        return Err(Error::domain(
            "ws_loglog_slope_at",
            format!("need D > 0 and h > 0, got D = {d}, h = {h}"),
        ));
    }
    let up = ws_analytic(law, d * h.exp())?;
    let dn = ws_analytic(law, d * (-h).exp())?;
    Ok((up.ln() - dn.ln()) / (2.0 * h))
}

/// Decades (relative to N^{min(1,a)}) of the window used by
/// [`ws_origin_slope_fit`]. At a = 1 the slope creeps towards 1 only
/// logarithmically, so the window sits far below one access.
pub const SLOPE_FIT_DECADES: (f64, f64) = (-12.0, -8.0);

/// Least-squares slope of ln WS against ln D over 41 log-spaced points in
/// `10^{SLOPE_FIT_DECADES}·N^{min(1,a)}`: a numerical origin slope to compare
/// with [`ws_loglog_slope_origin`].
pub fn ws_origin_slope_fit(law: &PowerLaw) -> Result<f64> {
    const POINTS: usize = 41;
    let (lo, hi) = SLOPE_FIT_DECADES;
    let base = law.a().min(1.0) * (law.n() as f64).log10();
    let mut xs = Vec::with_capacity(POINTS);
    let mut ys = Vec::with_capacity(POINTS);
    for i in 0..POINTS {
        let e = base + lo + (hi - lo) * i as f64 / (POINTS - 1) as f64;
        let d = 10f64.powf(e);
        xs.push(d.ln());
        ys.push(ws_analytic(law, d)?.ln());
    }
    let mx = xs.iter().sum::<f64>() / POINTS as f64;
    let my = ys.iter().sum::<f64>() / POINTS as f64;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_large_cache_values() {
        assert!((ratio_large_cache(0.0, 0.7).unwrap() - 1.0).abs() < 1e-15);
        assert!((ratio_large_cache(1.0, 0.5).unwrap() - 0.5 / 2f64.ln()).abs() < 1e-15);
        let r = ratio_large_cache(1.0 + 1e-7, 0.5).unwrap();
        assert!((r - 0.5 / 2f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn jelenkovic_values() {
        assert!((jelenkovic_constant(2.0).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!(jelenkovic_constant(1.0).is_err());
        assert!((jelenkovic_constant(1.0 + 1e-6).unwrap() - 1.0).abs() < 1e-4);
    }

    #[test]
    fn small_cache_dispatch() {
        let v = lru_mr_small_cache(0.25, 0.01, None).unwrap();
        assert!((v - 0.98875).abs() < 1e-12);
        assert!(lru_mr_small_cache(1.0, 0.01, None).is_err());
        assert!(lru_mr_small_cache(0.3, 0.2, None).is_err());
        assert!(lru_mr_small_cache(0.0, 0.05, None).is_err());
    }

    #[test]
    fn regime_misuse_is_an_error() {
        let r = Regime::large(0.5, 0.3, None).unwrap();
        assert!(lru_mr_large_cache(&r).is_err());
        let r = Regime::small(0.5, 0.9, None).unwrap();
        assert!(lru_mr_large_cache(&r).is_err());
    }
}
