use super::expint::expint;
use crate::error::{Error, Result};

pub use statrs::function::gamma::{gamma, ln_gamma};

/// Upper incomplete gamma function Γ(s, x) = ∫_x^∞ t^{s−1} e^{−t} dt, x > 0.
///
/// Any real s is accepted: for x > 0 the integral converges even at the
/// poles of the complete Γ(s). Orders s ≤ 2 go through `x^s E_{1−s}(x)`;
/// larger orders climb from s − ⌈s − 2⌉ with Γ(s+1, x) = sΓ(s, x) + x^s e^{−x},
/// whose terms are all positive.
pub fn upper_gamma(s: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain("upper_gamma", format!("need x > 0, got {x}")));
    }
    if !s.is_finite() {
        return Err(Error::domain("upper_gamma", format!("order must be finite, got {s}")));
    }
    if s <= 2.0 {
        return Ok((s * x.ln()).exp() * expint(1.0 - s, x)?);
    }
    let steps = (s - 2.0).ceil();
    let mut s0 = s - steps;
    let mut g = (s0 * x.ln()).exp() * expint(1.0 - s0, x)?;
    for _ in 0..steps as usize {
        g = s0 * g + (s0 * x.ln() - x).exp();
        s0 += 1.0;
    }
    Ok(g)
}
