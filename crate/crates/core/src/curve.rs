//! Sampled curves against window or cache size, and the log-spaced grids
//! they are sampled on.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub x: f64,
    pub y: f64,
}

/// Samples sorted by strictly increasing `x`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Curve {
    samples: Vec<CurveSample>,
}

impl Curve {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics if `x` does not increase.
    pub fn push(&mut self, x: f64, y: f64) {
        if let Some(last) = self.samples.last() {
            assert!(x > last.x, "curve abscissae must increase ({x} after {})", last.x);
        }
        self.samples.push(CurveSample { x, y });
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Value at an exact sample abscissa.
    pub fn at(&self, x: f64) -> Option<f64> {
        self.samples
            .binary_search_by(|s| s.x.total_cmp(&x))
            .ok()
            .map(|i| self.samples[i].y)
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].y >= w[0].y)
    }
}

impl FromIterator<(f64, f64)> for Curve {
    fn from_iter<I: IntoIterator<Item = (f64, f64)>>(iter: I) -> Self {
        let mut c = Curve::new();
        for (x, y) in iter {
            c.push(x, y);
        }
        c
    }
}

/// `10^e` for e = lo_exp, lo_exp + step, … up to hi_exp (inclusive, with a
/// half-step tolerance against rounding drift).
pub fn log_grid(lo_exp: f64, hi_exp: f64, step: f64) -> Vec<f64> {
    assert!(step > 0.0);
    let count = ((hi_exp - lo_exp) / step + 0.5).floor() as usize;
    (0..=count).map(|i| 10f64.powf(lo_exp + step * i as f64)).collect()
}

/// Distinct integers from a log grid with `step` decades between `lo` and
/// `hi` inclusive; both endpoints are always present.
pub fn log_grid_int(lo: u64, hi: u64, step: f64) -> Vec<u64> {
    assert!(lo >= 1 && lo <= hi && step > 0.0);
    let mut out = vec![lo];
    let lo_e = (lo as f64).log10();
    let hi_e = (hi as f64).log10();
    let mut i = 1usize;
    loop {
        let e = lo_e + step * i as f64;
        if e >= hi_e {
            break;
        }
        let v = 10f64.powf(e).round() as u64;
        if v > *out.last().unwrap() && v < hi {
            out.push(v);
        }
        i += 1;
    }
    if *out.last().unwrap() != hi {
        out.push(hi);
    }
    out
}
