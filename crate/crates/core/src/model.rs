//! The IRM model for a power-law popularity: re-reference CCDF, working-set
//! function, its inverse, and the Fagin/Che LRU miss rate, both as exact
//! discrete sums and as continuous closed forms in E_p.

use crate::error::{Error, Result};
use crate::near;
use crate::specfun::{expint, harmonic, ws_fraction, ws_fraction_inv, HarmonicSpec};

/// Power-law popularity `p_i = k / i^a` over ranks `1..=N`, `k = 1/H_{N,a}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLaw {
    a: f64,
    n: u64,
    h: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Uniform,
    Zipf,
    General,
}

impl PowerLaw {
    pub fn new(a: f64, n: u64) -> Result<Self> {
        let spec = HarmonicSpec::new(n, a)?;
        Ok(PowerLaw {
            a,
            n,
            h: harmonic(spec),
        })
    }

    pub fn uniform(n: u64) -> Result<Self> {
        Self::new(0.0, n)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// H_{N,a}.
    pub fn harmonic(&self) -> f64 {
        self.h
    }

    /// The normalizer k = 1/H_{N,a}.
    pub fn norm(&self) -> f64 {
        1.0 / self.h
    }

    /// Probability of the address of the given rank (1-based).
    pub fn prob(&self, rank: u64) -> f64 {
        debug_assert!(rank >= 1 && rank <= self.n);
        if self.a == 0.0 {
            return 1.0 / self.h;
        }
        (rank as f64).powf(-self.a) / self.h
    }

    pub fn probabilities(&self) -> Vec<f64> {
        (1..=self.n).map(|i| self.prob(i)).collect()
    }

    fn shape(&self) -> Shape {
        if near(self.a, 0.0) {
            Shape::Uniform
        } else if near(self.a, 1.0) {
            Shape::Zipf
        } else {
            Shape::General
        }
    }

    /// Order p = 1/a of the exponential integral in the closed forms
    /// (infinite for the uniform law).
    fn p(&self) -> f64 {
        match self.shape() {
            Shape::Uniform => f64::INFINITY,
            Shape::Zipf => 1.0,
            Shape::General => 1.0 / self.a,
        }
    }

    /// ln(H_{N,a} · N^a): window sizes divided by this give the scaled
    /// argument of the exponential integrals.
    fn ln_scale(&self) -> f64 {
        match self.shape() {
            Shape::Uniform => (self.n as f64).ln(),
            _ => self.h.ln() + self.a * (self.n as f64).ln(),
        }
    }

    fn scaled(&self, d: f64) -> f64 {
        (d.ln() - self.ln_scale()).exp()
    }
}

/// A cache (or window) size, kept alongside its ratio to the alphabet size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CacheSize {
    pub d: f64,
    pub delta: f64,
}

impl CacheSize {
    /// Requires `0 < d ≤ n`.
    pub fn new(d: f64, n: u64) -> Result<Self> {
        let nf = n as f64;
        if !(d > 0.0 && d <= nf) {
            return Err(Error::domain("CacheSize", format!("need 0 < D <= N = {n}, got {d}")));
        }
        Ok(CacheSize { d, delta: d / nf })
    }

    pub fn from_ratio(delta: f64, n: u64) -> Result<Self> {
        Self::new(delta * n as f64, n)
    }
}

/// One row of an analytic prediction at cache/window size `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictionRow {
    pub d: f64,
    pub ws: f64,
    pub preref: f64,
    pub mr_lru: f64,
    pub mr_static: f64,
    pub ratio: f64,
}

/// Exact P_reref[D] = Σ p_i (1 − p_i)^D. `d` may be fractional.
pub fn preref_ccdf_discrete(law: &PowerLaw, d: f64) -> f64 {
    (1..=law.n)
        .rev()
        .map(|i| {
            let p = law.prob(i);
            p * (d * (-p).ln_1p()).exp()
        })
        .sum()
}

/// Exact WS(D) = Σ (1 − (1 − p_i)^D). `d` may be fractional.
pub fn ws_discrete(law: &PowerLaw, d: f64) -> f64 {
    (1..=law.n).rev().map(|i| -(d * (-law.prob(i)).ln_1p()).exp_m1()).sum()
}

/// Continuous re-reference CCDF.
pub fn preref_analytic(law: &PowerLaw, d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::domain("preref_analytic", format!("need D > 0, got {d}")));
    }
    let n = law.n as f64;
    let t = law.scaled(d);
    match law.shape() {
        Shape::Uniform => Ok((-d / n).exp()),
        Shape::Zipf => Ok(expint(1.0, t)? / law.h),
        Shape::General => {
            let a = law.a;
            let coef = ((1.0 - a) * n.ln() - a.ln() - law.h.ln()).exp();
            Ok(coef * expint(1.0 / a, t)?)
        }
    }
}

/// Continuous working-set function, `N (1 − (1/a) E_{1+1/a}(D / (H N^a)))`.
pub fn ws_analytic(law: &PowerLaw, d: f64) -> Result<f64> {
    if d.is_nan() || d < 0.0 {
        return Err(Error::domain("ws_analytic", format!("need D >= 0, got {d}")));
    }
    if d == 0.0 {
        return Ok(0.0);
    }
    Ok(law.n as f64 * ws_fraction(law.p(), law.scaled(d))?)
}

/// Window size whose expected working set is `d`.
pub fn ws_inverse(law: &PowerLaw, d: f64) -> Result<f64> {
    let n = law.n as f64;
    if !(d > 0.0 && d < n) {
        return Err(Error::domain("ws_inverse", format!("need 0 < D < N = {n}, got {d}")));
    }
    let y = ws_fraction_inv(law.p(), d / n)?;
    Ok((y.ln() + law.ln_scale()).exp())
}

/// Che's characteristic time: the root τ of WS(τ) = C, i.e. WS^{-1}(C).
pub fn che_characteristic_time(law: &PowerLaw, c: f64) -> Result<f64> {
    ws_inverse(law, c)
}

/// Fagin/Che LRU miss rate `P_reref[WS^{-1}(D)]`.
///
/// For a < 1 the rank integral starting at 0 over-weights the head, and the
/// closed form exceeds 1 for small caches (its D → 0 limit is
/// `N^{1−a}/((1−a) H_{N,a})`). Such values are clamped to 1.
pub fn lru_mr(law: &PowerLaw, size: CacheSize) -> Result<f64> {
    let n = law.n as f64;
    let d = size.d;
    if !(d > 0.0 && d < n) {
        return Err(Error::domain("lru_mr", format!("need 0 < D < N = {n}, got {d}")));
    }
    let mr = match law.shape() {
        Shape::Uniform => (n - d) / n,
        Shape::Zipf => {
            let y = ws_fraction_inv(1.0, size.delta)?;
            expint(1.0, y)? / law.h
        }
        Shape::General => {
            let a = law.a;
            let y = ws_fraction_inv(1.0 / a, size.delta)?;
            let coef = ((1.0 - a) * n.ln() - a.ln() - law.h.ln()).exp();
            coef * expint(1.0 / a, y)?
        }
    };
    clamp_rate("lru_mr", mr)
}

/// Static (pin the D most popular) miss rate: the popularity tail past rank D.
pub fn static_mr(law: &PowerLaw, size: CacheSize) -> Result<f64> {
    let n = law.n as f64;
    let d = size.d;
    if !(d > 0.0 && d <= n) {
        return Err(Error::domain("static_mr", format!("need 0 < D <= N = {n}, got {d}")));
    }
    let span = n.ln() - d.ln();
    let mr = if near(law.a, 1.0) {
        span / law.h
    } else {
        // N^{1−a} − D^{1−a} = D^{1−a}·expm1((1−a) ln(N/D)), exact near a = 1.
        let b = 1.0 - law.a;
        ((b * d.ln()).exp() * (b * span).exp_m1()) / (b * law.h)
    };
    clamp_rate("static_mr", mr)
}

/// All analytic quantities at one size `0 < d < N`.
pub fn predict(law: &PowerLaw, d: f64) -> Result<PredictionRow> {
    let size = CacheSize::new(d, law.n)?;
    let mr_lru = lru_mr(law, size)?;
    let mr_static = static_mr(law, size)?;
    Ok(PredictionRow {
        d,
        ws: ws_analytic(law, d)?,
        preref: preref_analytic(law, d)?,
        mr_lru,
        mr_static,
        ratio: if mr_static > 0.0 { mr_lru / mr_static } else { f64::NAN },
    })
}

fn clamp_rate(op: &'static str, v: f64) -> Result<f64> {
    if v.is_nan() || v < -1e-6 {
        return Err(Error::internal(op, format!("miss rate evaluated to {v}")));
    }
    Ok(v.clamp(0.0, 1.0))
}
