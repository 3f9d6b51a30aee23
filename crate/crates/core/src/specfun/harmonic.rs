use crate::error::{Error, Result};
use crate::EULER_GAMMA;

/// Parameters of the generalized harmonic number H_{N,a} = Σ_{i=1..N} i^{−a}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicSpec {
    pub n: u64,
    pub a: f64,
}

impl HarmonicSpec {
    pub fn new(n: u64, a: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("HarmonicSpec", "N must be >= 1"));
        }
        if !a.is_finite() || a < 0.0 {
            return Err(Error::domain(
                "HarmonicSpec",
                format!("exponent must be finite and >= 0, got {a}"),
            ));
        }
        Ok(HarmonicSpec { n, a })
    }
}

/// Exact H_{N,a}, summed from the smallest term up.
pub fn harmonic(spec: HarmonicSpec) -> f64 {
    let HarmonicSpec { n, a } = spec;
    if a == 0.0 {
        return n as f64;
    }
    if a == 1.0 {
        return (1..=n).rev().map(|i| 1.0 / i as f64).sum();
    }
    (1..=n).rev().map(|i| (i as f64).powf(-a)).sum()
}

/// Integral approximation of H_{N,a}: `(N^{1−a} − a)/(1 − a)`, and
/// `ln N + γ` at a = 1.
pub fn harmonic_approx(spec: HarmonicSpec) -> f64 {
    let HarmonicSpec { n, a } = spec;
    let n = n as f64;
    if crate::near(a, 1.0) {
        n.ln() + EULER_GAMMA
    } else {
        (n.powf(1.0 - a) - a) / (1.0 - a)
    }
}

/// B_{2j} / (2j)! for j = 1..=7.
const BERNOULLI_OVER_FACT: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
];

/// Riemann ζ(a) for real a > 1: a short partial sum plus the
/// Euler–Maclaurin tail.
pub fn zeta(a: f64) -> Result<f64> {
    if !(a > 1.0) || a.is_nan() {
        return Err(Error::domain("zeta", format!("need a > 1, got {a}")));
    }
    if a > 60.0 {
        // 2^{-a} is already below the double-precision ulp of 1.
        return Ok(1.0 + 2f64.powf(-a) + 3f64.powf(-a));
    }
    const M: u32 = 12;
    let m = M as f64;
    let head: f64 = (1..M).rev().map(|k| (k as f64).powf(-a)).sum();
    let mut tail = m.powf(1.0 - a) / (a - 1.0) + 0.5 * m.powf(-a);
    // Derivative factors a(a+1)…(a+2j−2) times M^{−a−2j+1}.
    let mut rising = a;
    let mut pow = m.powf(-a - 1.0);
    for (j, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        tail += b * rising * pow;
        let k = 2.0 * j as f64;
        rising *= (a + k + 1.0) * (a + k + 2.0);
        pow /= m * m;
    }
    Ok(head + tail)
}
