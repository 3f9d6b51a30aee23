use super::gamma::{gamma, ln_gamma};
use super::root::RootBracket;
use crate::error::{Error, Result};
use crate::EULER_GAMMA;

/// ζ(k) − 1 for k = 2..=33, used by the Taylor series of ln Γ(1 − ε).
const ZETA_MINUS_ONE: [f64; 32] = [
    0.644_934_066_848_226_4,
    0.202_056_903_159_594_3,
    0.082_323_233_711_138_19,
    0.036_927_755_143_369_93,
    0.017_343_061_984_449_14,
    0.008_349_277_381_922_827,
    0.004_077_356_197_944_339,
    0.002_008_392_826_082_214,
    0.000_994_575_127_818_085_3,
    0.000_494_188_604_119_464_6,
    0.000_246_086_553_308_048_3,
    0.000_122_713_347_578_489_1,
    6.124_813_505_870_483e-5,
    3.058_823_630_702_049e-5,
    1.528_225_940_865_187e-5,
    7.637_197_637_899_762e-6,
    3.817_293_264_999_84e-6,
    1.908_212_716_553_939e-6,
    9.539_620_338_727_96e-7,
    4.769_329_867_878_065e-7,
    2.384_505_027_277_33e-7,
    1.192_199_259_653_111e-7,
    5.960_818_905_125_948e-8,
    2.980_350_351_465_228e-8,
    1.490_155_482_836_504e-8,
    7.450_711_789_835_429e-9,
    3.725_334_024_788_457e-9,
    1.862_659_723_513_049e-9,
    9.313_274_324_196_682e-10,
    4.656_629_065_033_784e-10,
    2.328_311_833_676_505e-10,
    1.164_155_017_270_052e-10,
];

/// Below this argument E_p is summed from its power series; above it the
/// continued fraction converges quickly.
const SERIES_CUTOFF: f64 = 1.0;

/// Order `p` of the generalized exponential integral `E_p`.
///
/// Orders within 1e-9 of an integer are flagged as integer: for those the
/// power series has a logarithmic term instead of `x^(p-1) Γ(1-p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpIntOrder {
    p: f64,
    nearest: i64,
    integer: bool,
}

impl ExpIntOrder {
    pub const INTEGER_TOL: f64 = 1e-9;

    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p < -1.0 {
            return Err(Error::domain(
                "ExpIntOrder",
                format!("order must be finite and >= -1, got {p}"),
            ));
        }
        let nearest = p.round();
        Ok(ExpIntOrder {
            p,
            nearest: nearest as i64,
            integer: (p - nearest).abs() < Self::INTEGER_TOL,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_integer(&self) -> bool {
        self.integer
    }

    /// E_p(x) for x ≥ 0.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let p = self.p;
        if x.is_nan() || x < 0.0 {
            return Err(Error::domain("expint", format!("argument must be >= 0, got {x}")));
        }
        if x == 0.0 {
            if p > 1.0 {
                return Ok(1.0 / (p - 1.0));
            }
            return Err(Error::domain("expint", format!("E_{p}(0) diverges for p <= 1")));
        }
        if x.is_infinite() {
            return Ok(0.0);
        }
        if x < SERIES_CUTOFF {
            Ok(self.singular_term(x) - self.regular_sum(x, None))
        } else {
            Ok(continued_fraction(p, x))
        }
    }

    /// The term of the origin expansion that is not a plain power series:
    /// `x^(p-1) Γ(1-p)` for non-integer p, `(-x)^(n-1)/(n-1)! (ψ(n) - ln x)`
    /// for integer p = n ≥ 1.
    ///
    /// For n = round(p) ≥ 1 the Γ term is paired with the regular term of
    /// index n−1, whose denominator n−p vanishes as p → n; the pair is
    /// evaluated through expm1 so it stays accurate arbitrarily close to an
    /// integer and reduces to the ψ form at ε = 0.
    fn singular_term(&self, x: f64) -> f64 {
        let p = self.p;
        let n = self.nearest;
        if n <= 0 {
            // 1 − p ∈ (0.5, 2]: Γ is regular and no series denominator vanishes.
            return x.powf(p - 1.0) * gamma(1.0 - p);
        }
        let ln_c = (n - 1) as f64 * x.ln() - ln_gamma(n as f64);
        let c = ln_c.exp();
        if c == 0.0 {
            return 0.0;
        }
        let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
        let eps = p - n as f64;
        let core = if eps == 0.0 {
            digamma_int(n) - x.ln()
        } else {
            let ln_prod: f64 = (1..n).map(|m| (eps / m as f64).ln_1p()).sum();
            let ln_g = eps * x.ln() + ln_gamma_1m(eps) - ln_prod;
            -ln_g.exp_m1() / eps
        };
        sign * c * core
    }

    /// Σ_k (−x)^k / (k! (k+1−p)), skipping the index paired into the singular
    /// term. With `through = Some(m)` the sum stops after x^m.
    fn regular_sum(&self, x: f64, through: Option<usize>) -> f64 {
        let p = self.p;
        let skip = if self.nearest >= 1 {
            Some((self.nearest - 1) as usize)
        } else {
            None
        };
        let mut t = 1.0; // (−x)^k / k!
        let mut sum = 0.0;
        let last = through.unwrap_or(usize::MAX);
        let mut k = 0usize;
        loop {
            if Some(k) != skip {
                let term = t / (k as f64 + 1.0 - p);
                sum += term;
                if through.is_none() && k > 2 && term.abs() <= 1e-18 * sum.abs() {
                    let past_skip = skip.is_none_or(|s| k > s);
                    if past_skip {
                        break;
                    }
                }
            }
            if k >= last || k > 400 {
                break;
            }
            k += 1;
            t *= -x / k as f64;
        }
        sum
    }
}

/// ψ(n) = −γ + H_{n−1} for integer n ≥ 1.
fn digamma_int(n: i64) -> f64 {
    -EULER_GAMMA + (1..n).rev().map(|m| 1.0 / m as f64).sum::<f64>()
}

/// ln Γ(1 − ε) for |ε| ≤ 1/2, from its Taylor series about 1.
fn ln_gamma_1m(eps: f64) -> f64 {
    let mut acc = 0.0;
    let mut pow = eps * eps;
    for (i, z) in ZETA_MINUS_ONE.iter().enumerate() {
        acc += z * pow / (i + 2) as f64;
        pow *= eps;
    }
    -(-eps).ln_1p() - eps * (1.0 - EULER_GAMMA) + acc
}

/// Modified Lentz evaluation of the continued fraction for E_p, x ≥ 1.
fn continued_fraction(p: f64, x: f64) -> f64 {
    if p < 0.0 {
        // Keep the leading partial denominator x + p away from zero.
        return ((-x).exp() - p * continued_fraction(p + 1.0, x)) / x;
    }
    const TINY: f64 = 1e-300;
    let mut b = x + p;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let i = i as f64;
        let an = -i * (p - 1.0 + i);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 4.0 * f64::EPSILON {
            break;
        }
    }
    h * (-x).exp()
}

/// Generalized exponential integral `E_p(x) = ∫_1^∞ e^{−xt} t^{−p} dt`.
pub fn expint(p: f64, x: f64) -> Result<f64> {
    ExpIntOrder::new(p)?.eval(x)
}

/// Inverse of x ↦ E_p(x) on [0, ∞).
///
/// The bracket is seeded with `ln(1/v) − ln ln(1/v)`, the leading terms of
/// the inverse of `e^{−x}/x`; the seed is never returned as the answer.
pub fn expint_inv(p: f64, v: f64) -> Result<f64> {
    let order = ExpIntOrder::new(p)?;
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(
            "expint_inv",
            format!("value must be positive and finite, got {v}"),
        ));
    }
    if p > 1.0 {
        let top = 1.0 / (p - 1.0);
        if v > top {
            return Err(Error::domain(
                "expint_inv",
                format!("E_{p} never exceeds {top}, got {v}"),
            ));
        }
        if v == top {
            return Ok(0.0);
        }
    }
    let f = |x: f64| order.eval(x).map_or(f64::NAN, |e| e - v);
    let seed = if v < 0.25 {
        let l = (1.0 / v).ln();
        (l - l.ln()).max(0.5)
    } else {
        0.5
    };
    let mut hi = 2.0 * seed;
    while f(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::internal("expint_inv", format!("no upper bracket for v = {v}")));
        }
    }
    let mut lo = 0.5 * seed;
    loop {
        let f_lo = if p > 1.0 && lo == 0.0 {
            1.0 / (p - 1.0) - v
        } else {
            f(lo)
        };
        if f_lo >= 0.0 {
            break;
        }
        hi = lo;
        lo *= 0.5;
        if lo < 1e-300 {
            if p > 1.0 {
                lo = 0.0;
            } else {
                return Err(Error::domain("expint_inv", format!("E_{p}^-1({v}) underflows")));
            }
        }
    }
    let f_lo = if lo == 0.0 { 1.0 / (p - 1.0) - v } else { f(lo) };
    let bracket = RootBracket::new(lo, hi, f_lo, f(hi))?;
    Ok(bracket.solve(f, 1e-15))
}

/// Truncated expansion of E_p about the origin, keeping the regular powers
/// x^0 … x^order plus the singular term (`x^(p−1) Γ(1−p)`, or the
/// `ψ(n) − ln x` logarithmic term for integer order n).
pub fn expint_series_origin(p: f64, x: f64, order: usize) -> Result<f64> {
    let o = ExpIntOrder::new(p)?;
    if !(x > 0.0 && x < 0.5) {
        return Err(Error::domain(
            "expint_series_origin",
            format!("series used only on (0, 0.5), got x = {x}"),
        ));
    }
    if order < 1 {
        return Err(Error::domain("expint_series_origin", "order must be >= 1"));
    }
    Ok(o.singular_term(x) - o.regular_sum(x, Some(order)))
}

/// `1 − p·E_{p+1}(y)`, evaluated as `1 − e^{−y} + y·E_p(y)` (two positive
/// terms, so no cancellation for small y). With p = 1/a this is the cache
/// ratio δ reached at the scaled window size y; `p = ∞` gives the uniform
/// law's `1 − e^{−y}`.
pub fn ws_fraction(p: f64, y: f64) -> Result<f64> {
    if y.is_nan() || y < 0.0 {
        return Err(Error::domain("ws_fraction", format!("argument must be >= 0, got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let base = -(-y).exp_m1();
    if p.is_infinite() {
        return Ok(base);
    }
    Ok(base + y * expint(p, y)?)
}

/// Inverse of [`ws_fraction`]: the y with `1 − p·E_{p+1}(y) = delta`.
///
/// For delta > 1/2 this solves `E_{p+1}(y) = (1 − delta)/p` instead, which
/// keeps full relative accuracy in the small complement.
pub fn ws_fraction_inv(p: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(
            "ws_fraction_inv",
            format!("need 0 < delta < 1, got {delta}"),
        ));
    }
    if p.is_infinite() {
        return Ok(-(-delta).ln_1p());
    }
    if !(p > 0.0) {
        return Err(Error::domain("ws_fraction_inv", format!("need p > 0, got {p}")));
    }
    if delta > 0.5 {
        return expint_inv(p + 1.0, (1.0 - delta) / p);
    }
    let f = |y: f64| ws_fraction(p, y).map_or(f64::NAN, |g| g - delta);
    let mut hi = 2.0 * delta.max(0.1);
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    // g is concave with g(0) = 0; for p ≤ 1 its slope at 0 is unbounded, so
    // walk down until the sign flips.
    let mut lo = 0.5 * delta;
    while f(lo) > 0.0 {
        hi = lo;
        lo *= 0.25;
        if lo < 1e-300 {
            return Err(Error::internal(
                "ws_fraction_inv",
                format!("no lower bracket for delta = {delta}"),
            ));
        }
    }
    let bracket = RootBracket::from_fn(lo, hi, f)?;
    Ok(bracket.solve(f, 1e-15))
}
