//! Reference implementations shared by the integration tests. Each one is
//! deliberately independent of the library code it checks.
#![allow(dead_code)]

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Globally adaptive Gauss–Kronrod quadrature on a finite interval: the
/// panel with the largest error estimate is bisected until the summed
/// estimate drops below `tol` or a panel budget runs out.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    const MAX_PANELS: usize = 4000;
    let (v, e) = gk15(&f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let err: f64 = panels.iter().map(|p| p.3).sum();
        let val: f64 = panels.iter().map(|p| p.2).sum();
        if err <= tol.max(4e-16 * val.abs()) || panels.len() >= MAX_PANELS {
            return val;
        }
        let (i, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, _, _) = panels.swap_remove(i);
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            return val;
        }
        let (v1, e1) = gk15(&f, lo, m);
        let (v2, e2) = gk15(&f, m, hi);
        panels.push((lo, m, v1, e1));
        panels.push((m, hi, v2, e2));
    }
}

/// ∫_1^∞ e^{−xt} t^{−p} dt by quadrature on geometric panels [2^k, 2^{k+1}],
/// to relative accuracy about 1e-13.
pub fn expint_quad(p: f64, x: f64) -> f64 {
    let f = move |t: f64| (-x * t).exp() * t.powf(-p);
    // Rough magnitude for the absolute tolerance.
    let scale = integrate(f, 1.0, 1.0 + 1.0 / x, 1e-3 * f(1.0))
        .abs()
        .max(f(1.0) / (x + 1.0));
    let mut total = 0.0;
    let mut lo = 1.0;
    loop {
        let hi = 2.0 * lo;
        let part = integrate(f, lo, hi, 1e-15 * scale);
        total += part;
        if x * lo > 60.0 && part.abs() < 1e-18 * total.abs() {
            break;
        }
        lo = hi;
    }
    total
}

/// Γ(s, x) for s > 0 by quadrature of t^{s−1} e^{−t} over [x, ∞).
pub fn upper_gamma_quad(s: f64, x: f64) -> f64 {
    // Substitute t = u² to remove the t^{s−1} singularity for s < 1.
    let f = move |u: f64| 2.0 * u.powf(2.0 * s - 1.0) * (-u * u).exp();
    let mut total = 0.0;
    let mut lo = x.sqrt();
    let mut w = 0.25;
    while lo < 12.0 {
        total += integrate(f, lo, lo + w, 1e-17);
        lo += w;
        w *= 1.5;
    }
    total
}

/// Exact re-reference CCDF Σ p_i (1 − p_i)^D from explicit probabilities.
pub fn preref_sum(probs: &[f64], d: u64) -> f64 {
    probs.iter().map(|&p| p * (1.0 - p).powf(d as f64)).sum()
}

/// Exact IRM working set Σ (1 − (1 − p_i)^D).
pub fn ws_sum(probs: &[f64], d: f64) -> f64 {
    probs.iter().map(|&p| 1.0 - (1.0 - p).powf(d)).sum()
}

pub fn power_law(a: f64, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (1..=n).map(|i| (i as f64).powf(-a)).collect();
    let h: f64 = w.iter().sum();
    w.into_iter().map(|x| x / h).collect()
}

/// Mattson's stack algorithm with a literal move-to-front list: the stack
/// depth of an id is its distance. O(L·N).
pub fn mattson_distances(ids: &[u32]) -> Vec<Option<u64>> {
    let mut stack: Vec<u32> = Vec::new();
    ids.iter()
        .map(|&id| {
            let pos = stack.iter().position(|&s| s == id);
            if let Some(p) = pos {
                stack.remove(p);
            }
            stack.insert(0, id);
            pos.map(|p| p as u64)
        })
        .collect()
}

/// Misses of an LRU cache of size d, from the Mattson stack depths.
pub fn mattson_misses(ids: &[u32], d: u64) -> u64 {
    mattson_distances(ids)
        .iter()
        .filter(|x| x.is_none_or(|x| x >= d))
        .count() as u64
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

pub fn geom(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

pub fn lin(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Root of an increasing function on [lo, hi] by plain bisection.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if f(m) < 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}
