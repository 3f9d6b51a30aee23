use crate::error::{Error, Result};

/// A sign-changing bracket `[lo, hi]` around a root of a continuous function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

const MAX_ITER: usize = 500;

impl RootBracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::domain("RootBracket", format!("need lo < hi, got [{lo}, {hi}]")));
        }
        if f_lo.is_nan() || f_hi.is_nan() || f_lo.signum() == f_hi.signum() && f_lo != 0.0 && f_hi != 0.0 {
            return Err(Error::domain(
                "RootBracket",
                format!("no sign change: f({lo}) = {f_lo}, f({hi}) = {f_hi}"),
            ));
        }
        Ok(RootBracket { lo, hi, f_lo, f_hi })
    }

    pub fn from_fn(lo: f64, hi: f64, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        let (f_lo, f_hi) = (f(lo), f(hi));
        Self::new(lo, hi, f_lo, f_hi)
    }

    /// Illinois false position, with a bisection step forced every fourth
    /// iteration and whenever the secant leaves the bracket. Bisection is
    /// geometric when the bracket spans several orders of magnitude, so
    /// roots near zero are reached in a bounded number of steps.
    ///
    /// Stops once the bracket is narrower than `rel_tol * |x|`.
    pub fn solve(self, mut f: impl FnMut(f64) -> f64, rel_tol: f64) -> f64 {
        let RootBracket {
            mut lo,
            mut hi,
            mut f_lo,
            mut f_hi,
        } = self;
        if f_lo == 0.0 {
            return lo;
        }
        if f_hi == 0.0 {
            return hi;
        }
        let mut side = 0i8;
        for iter in 0..MAX_ITER {
            let scale = lo.abs().max(hi.abs());
            if hi - lo <= rel_tol * scale || hi - lo <= f64::MIN_POSITIVE {
                break;
            }
            let mut x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            if iter % 4 == 3 || !(x > lo && x < hi) {
                x = if lo > 0.0 && hi > 4.0 * lo {
                    (lo * hi).sqrt()
                } else {
                    0.5 * (lo + hi)
                };
            }
            let fx = f(x);
            if fx == 0.0 {
                return x;
            }
            if fx.is_nan() {
                // Treat an unevaluable point like a bisection midpoint of
                // unknown sign: shrink toward the side we trust.
                hi = x;
                continue;
            }
            if (fx < 0.0) == (f_lo < 0.0) {
                lo = x;
                f_lo = fx;
                if side == -1 {
                    f_hi *= 0.5;
                }
                side = -1;
            } else {
                hi = x;
                f_hi = fx;
                if side == 1 {
                    f_lo *= 0.5;
                }
                side = 1;
            }
        }
        0.5 * (lo + hi)
    }
}
