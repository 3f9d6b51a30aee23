use super::distance::{DistanceCcdf, HistogramBuilder};
use super::stack::{reref_ccdf, stack_ccdf};
use super::trace::Trace;
use crate::curve::{log_grid_int, Curve};

/// Default sliding-window log binning, in decades.
pub const DEFAULT_BINNING: f64 = 0.001;

/// Measured profiles of one trace.
#[derive(Debug, Clone)]
pub struct TraceSummary {
    pub distinct: usize,
    pub reref: DistanceCcdf,
    pub stack: DistanceCcdf,
    pub ws_steady: Curve,
    pub ws_window: Option<Curve>,
}

/// Working set from the re-reference distribution by the Denning–Schwartz
/// recursion WS(D+1) = WS(D) + P_reref[D], sampled at D = 1..=d_max, with
/// P_reref the steady-state estimate ([`DistanceCcdf::steady_ccdf`]), so
/// WS(1) = 1 exactly. On short traces the sum can overshoot the number of
/// ids seen, which caps it.
pub fn ws_steady_state(reref: &DistanceCcdf, d_max: u64) -> Curve {
    let cap = reref.cold() as f64;
    let mut c = Curve::new();
    let mut ws = 0.0;
    for d in 1..=d_max {
        ws += reref.steady_ccdf(d - 1);
        c.push(d as f64, ws.min(cap));
    }
    c
}

/// [`ws_steady_state`] at the given sizes (ascending).
pub fn ws_steady_state_at(reref: &DistanceCcdf, sizes: &[u64]) -> Curve {
    let cap = reref.cold() as f64;
    let mut c = Curve::new();
    let mut ws = 0.0;
    let mut d = 0u64;
    for &target in sizes {
        while d < target {
            ws += reref.steady_ccdf(d);
            d += 1;
        }
        c.push(target as f64, ws.min(cap));
    }
    c
}

/// Gaps free of each id: before its first access, between consecutive
/// accesses, and after its last one.
fn free_runs(trace: &Trace) -> (usize, super::distance::Histogram) {
    const NONE: u32 = u32::MAX;
    let mut last = vec![NONE; trace.alphabet() as usize + 1];
    let mut h = HistogramBuilder::default();
    let mut distinct = 0;
    for (t, &id) in trace.accesses().iter().enumerate() {
        let l = std::mem::replace(&mut last[id as usize], t as u32);
        if l == NONE {
            distinct += 1;
            h.push(t as u64);
        } else {
            h.push((t - l as usize - 1) as u64);
        }
    }
    let len = trace.len();
    for &l in &last {
        if l != NONE {
            h.push((len - 1 - l as usize) as u64);
        }
    }
    (distinct, h.finish())
}

/// Average number of distinct ids over all windows of each size in `sizes`
/// (ascending, each ≤ trace length), computed exactly.
///
/// An id is missing from exactly `max(0, g − D + 1)` of the `L − D + 1`
/// windows for every id-free run of length g, so the average needs only the
/// histogram of free-run lengths: O(L) once, then O(log) per size.
pub fn ws_sliding_window_at(trace: &Trace, sizes: &[u64]) -> Curve {
    let (distinct, runs) = free_runs(trace);
    let len = trace.len() as u64;
    let mut c = Curve::new();
    for &d in sizes {
        assert!(d >= 1 && d <= len, "window {d} outside 1..={len}");
        let missing = runs.weight_at_least(d) - d as u128 * runs.count_at_least(d) as u128;
        let windows = (len - d + 1) as f64;
        c.push(d as f64, distinct as f64 - missing as f64 / windows);
    }
    c
}

/// Sliding-window working set on a log grid of `binning` decades from 1 to
/// the trace length.
pub fn ws_sliding_window(trace: &Trace, binning: f64) -> Curve {
    if trace.is_empty() {
        return Curve::new();
    }
    ws_sliding_window_at(trace, &log_grid_int(1, trace.len() as u64, binning))
}

/// Stack and re-reference profiles plus the steady-state working set up to
/// `d_max`; the sliding-window curve is added when `binning` is given.
pub fn summarize(trace: &Trace, d_max: u64, binning: Option<f64>) -> TraceSummary {
    let reref = reref_ccdf(trace);
    TraceSummary {
        distinct: trace.distinct(),
        ws_steady: ws_steady_state(&reref, d_max),
        stack: stack_ccdf(trace),
        reref,
        ws_window: binning.map(|b| ws_sliding_window(trace, b)),
    }
}
