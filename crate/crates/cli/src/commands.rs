use std::fs;
use std::path::Path;

use rayon::prelude::*;

use mrcurve::asymptotics::{ws_loglog_slope_origin, ws_origin_slope_fit, SLOPE_FIT_DECADES};
use mrcurve::curve::{log_grid, log_grid_int};
use mrcurve::model::{lru_mr, predict, static_mr, ws_analytic, CacheSize, PowerLaw};
use mrcurve::ratio::{delta_of_y, find_max, ratio_value, stationarity_residual, y_of_delta};
use mrcurve::sim::{
    generate_irm_trace, reref_ccdf, stack_ccdf, ws_sliding_window_at, ws_steady_state_at, Trace, DEFAULT_BINNING,
    TRACE_MAGIC,
};

use crate::grid::{default_exponents, parse_exponents, parse_range, parse_ratio_grid};
use crate::output::{g6, Cell, Table};
use crate::{Cli, CliError, Command};

const PREDICT_BINNING: f64 = 0.01;
const DEFAULT_RATIO_GRID: &str = "0.01:0.99:0.01";
const DEFAULT_Y_GRID: &str = "-4:1.5:0.01";

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Predict => cmd_predict(cli),
        Command::Simulate => cmd_simulate(cli),
        Command::Compare => cmd_compare(cli),
        Command::Ratio => cmd_ratio(cli),
        Command::RatioMax => cmd_ratio_max(cli),
        Command::Slope => cmd_slope(cli),
    }
}

fn exponent(cli: &Cli) -> Result<f64, CliError> {
    let a = cli
        .exponent
        .ok_or_else(|| CliError::config("--exponent/-a is required"))?;
    if !(a >= 0.0 && a.is_finite()) {
        return Err(CliError::config(format!("exponent must be finite and >= 0, got {a}")));
    }
    Ok(a)
}

fn addresses(cli: &Cli) -> Result<u64, CliError> {
    match cli.addresses {
        None => Err(CliError::config("--addresses/-N is required")),
        Some(0) => Err(CliError::config("--addresses must be >= 1")),
        Some(n) if n > u32::MAX as u64 - 1 => Err(CliError::config(format!("--addresses {n} is too large"))),
        Some(n) => Ok(n),
    }
}

fn law(cli: &Cli) -> Result<PowerLaw, CliError> {
    Ok(PowerLaw::new(exponent(cli)?, addresses(cli)?)?)
}

fn binning(cli: &Cli, default: f64) -> Result<f64, CliError> {
    let b = cli.binning.unwrap_or(default);
    if !(b > 0.0 && b.is_finite()) {
        return Err(CliError::config(format!("--binning must be > 0, got {b}")));
    }
    Ok(b)
}

/// Explicit `--cache-size` values, sorted and deduplicated, each in 1..=max.
fn explicit_sizes(cli: &Cli, max: u64) -> Result<Option<Vec<u64>>, CliError> {
    if cli.cache_sizes.is_empty() {
        return Ok(None);
    }
    let mut v = cli.cache_sizes.clone();
    v.sort_unstable();
    v.dedup();
    if v[0] == 0 || *v.last().unwrap() > max {
        return Err(CliError::config(format!("cache sizes must lie in 1..={max}")));
    }
    Ok(Some(v))
}

fn cmd_predict(cli: &Cli) -> Result<(), CliError> {
    let law = law(cli)?;
    let n = law.n() as f64;
    let ds: Vec<f64> = match explicit_sizes(cli, law.n())? {
        Some(v) => v.into_iter().map(|d| d as f64).collect(),
        None => log_grid(0.0, n.log10(), binning(cli, PREDICT_BINNING)?)
            .into_iter()
            .filter(|&d| d < n)
            .collect(),
    };
    let rows = ds
        .par_iter()
        .map(|&d| predict(&law, d))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::create(
        cli.output.as_deref(),
        &["log10_D", "ws", "preref", "mr_lru", "mr_static", "ratio"],
    )?;
    for r in rows {
        t.row(&[
            Cell::F(r.d.log10()),
            Cell::F(r.ws),
            Cell::F(r.preref),
            Cell::F(r.mr_lru),
            Cell::F(r.mr_static),
            Cell::F(r.ratio),
        ])?;
    }
    t.finish()
}

fn read_trace(path: &Path) -> Result<Trace, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    if bytes.starts_with(TRACE_MAGIC) {
        return Ok(Trace::read_from(&bytes[..])?);
    }
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::config(format!("{} is neither a binary trace nor text", path.display())))?;
    let trace = Trace::from_labels(text);
    if trace.is_empty() {
        return Err(CliError::config(format!("{} holds no accesses", path.display())));
    }
    Ok(trace)
}

/// The supplied trace, or an IRM trace of the configured law (L ≥ N).
fn obtain_trace(cli: &Cli) -> Result<Trace, CliError> {
    let trace = match &cli.trace_in {
        Some(p) => read_trace(p)?,
        None => {
            let law = law(cli)?;
            let len = cli
                .trace_length
                .ok_or_else(|| CliError::config("--trace-length/-L is required"))?;
            if len < law.n() {
                return Err(CliError::config(format!(
                    "trace length {len} is shorter than N = {}",
                    law.n()
                )));
            }
            let len = usize::try_from(len).map_err(|_| CliError::config("trace length too large"))?;
            generate_irm_trace(&law, len, cli.seed)
        }
    };
    if let Some(p) = &cli.trace_out {
        trace.save(p)?;
    }
    Ok(trace)
}

fn cmd_simulate(cli: &Cli) -> Result<(), CliError> {
    let trace = obtain_trace(cli)?;
    let max = trace.alphabet().min(trace.len() as u64);
    let sizes = match explicit_sizes(cli, max)? {
        Some(v) => v,
        None => log_grid_int(1, max, binning(cli, DEFAULT_BINNING)?),
    };
    let (reref, stack) = rayon::join(|| reref_ccdf(&trace), || stack_ccdf(&trace));
    let ws = ws_steady_state_at(&reref, &sizes);
    let window = cli.window.then(|| ws_sliding_window_at(&trace, &sizes));

    let mut header = vec!["D", "reref_ccdf", "stack_ccdf", "stack_ccdf_steady", "ws_steady"];
    if window.is_some() {
        header.push("ws_window");
    }
    let mut t = Table::create(cli.output.as_deref(), &header)?;
    for (i, &d) in sizes.iter().enumerate() {
        let mut row = vec![
            Cell::I(d),
            Cell::F(reref.ccdf(d)),
            Cell::F(stack.ccdf(d)),
            Cell::F(stack.steady_ccdf(d)),
            Cell::F(ws.samples()[i].y),
        ];
        if let Some(w) = &window {
            row.push(Cell::F(w.samples()[i].y));
        }
        t.row(&row)?;
    }
    t.finish()?;
    eprintln!(
        "trace: {} accesses, {} distinct ids, alphabet {}, {} cold misses",
        trace.len(),
        trace.distinct(),
        trace.alphabet(),
        stack.cold()
    );
    Ok(())
}

fn cmd_compare(cli: &Cli) -> Result<(), CliError> {
    let law = law(cli)?;
    let deltas = parse_ratio_grid(cli.ratio_grid.as_deref().unwrap_or(DEFAULT_RATIO_GRID))?;
    let trace = obtain_trace(cli)?;
    let n = law.n();
    let sizes: Vec<u64> = deltas
        .iter()
        .map(|&r| ((r * n as f64).round() as u64).clamp(1, n))
        .collect();

    let analytic = sizes
        .par_iter()
        .map(|&d| {
            let size = CacheSize::new(d as f64, n)?;
            Ok((lru_mr(&law, size)?, static_mr(&law, size)?))
        })
        .collect::<Result<Vec<_>, mrcurve::Error>>()?;
    let stack = stack_ccdf(&trace);
    // Static cache: the d most popular ids. Generated ids are popularity
    // ranks; a supplied trace is ranked by its own counts, which flatters
    // the static cache when counts are noisy.
    let mut freq = trace.frequencies().split_off(1);
    if cli.trace_in.is_some() {
        freq.sort_unstable_by(|x, y| y.cmp(x));
    }
    let total = trace.len() as f64;

    let mut t = Table::create(
        cli.output.as_deref(),
        &[
            "delta",
            "D",
            "mr_lru",
            "mr_static",
            "mr_sim",
            "mr_sim_all",
            "mr_static_sim",
            "ratio_analytic",
            "ratio_sim",
        ],
    )?;
    let mut worst = (0.0f64, f64::NAN);
    let mut peak_sim = (f64::NEG_INFINITY, f64::NAN);
    let mut peak_analytic = (f64::NEG_INFINITY, f64::NAN);
    for (i, (&delta, &d)) in deltas.iter().zip(&sizes).enumerate() {
        let (lru, stat) = analytic[i];
        let sim = stack.steady_ccdf(d);
        let kept: u64 = freq.iter().take(d as usize).sum();
        let stat_sim = 1.0 - kept as f64 / total;
        let ratio_a = if stat > 0.0 { lru / stat } else { f64::NAN };
        let ratio_s = if stat_sim > 0.0 { sim / stat_sim } else { f64::NAN };
        let diff = (lru - sim).abs();
        if diff > worst.0 {
            worst = (diff, delta);
        }
        if ratio_s > peak_sim.0 {
            peak_sim = (ratio_s, delta);
        }
        if ratio_a > peak_analytic.0 {
            peak_analytic = (ratio_a, delta);
        }
        t.row(&[
            Cell::F(delta),
            Cell::I(d),
            Cell::F(lru),
            Cell::F(stat),
            Cell::F(sim),
            Cell::F(stack.ccdf(d)),
            Cell::F(stat_sim),
            Cell::F(ratio_a),
            Cell::F(ratio_s),
        ])?;
    }
    t.finish()?;
    eprintln!("max |mr_lru - mr_sim| = {} at delta = {}", g6(worst.0), g6(worst.1));
    eprintln!(
        "ratio peak: simulated {} at delta = {}, analytic {} at delta = {}",
        g6(peak_sim.0),
        g6(peak_sim.1),
        g6(peak_analytic.0),
        g6(peak_analytic.1)
    );
    Ok(())
}

fn exponents(cli: &Cli) -> Result<Vec<f64>, CliError> {
    match (&cli.a_grid, cli.exponent) {
        (Some(g), _) => parse_exponents(g),
        (None, Some(a)) if a > 0.0 => Ok(vec![a]),
        (None, Some(a)) => Err(CliError::config(format!("exponent must be > 0 here, got {a}"))),
        (None, None) => Ok(default_exponents()),
    }
}

fn cmd_ratio(cli: &Cli) -> Result<(), CliError> {
    let exps = exponents(cli)?;
    // Rows of (a, y, δ): a δ grid where δ is defined, otherwise a y grid.
    let by_delta = cli.y_grid.is_none() && exps.iter().all(|a| a.is_finite());
    let points: Vec<(f64, f64)> = if by_delta {
        let deltas = parse_ratio_grid(cli.ratio_grid.as_deref().unwrap_or(DEFAULT_RATIO_GRID))?;
        exps.iter().flat_map(|&a| deltas.iter().map(move |&d| (a, d))).collect()
    } else {
        let ys = log_range(cli.y_grid.as_deref().unwrap_or(DEFAULT_Y_GRID))?;
        exps.iter().flat_map(|&a| ys.iter().map(move |&y| (a, y))).collect()
    };
    let rows = points
        .par_iter()
        .map(|&(a, x)| -> mrcurve::Result<(f64, f64, Option<f64>, f64)> {
            let (y, delta) = if by_delta {
                (y_of_delta(a, x)?, Some(x))
            } else if a.is_finite() {
                (x, Some(delta_of_y(a, x)?))
            } else {
                (x, None)
            };
            Ok((a, y, delta, ratio_value(a, y)?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::create(cli.output.as_deref(), &["a", "y", "delta", "ratio"])?;
    for (a, y, delta, v) in rows {
        t.row(&[Cell::F(a), Cell::F(y), Cell::Opt(delta), Cell::F(v)])?;
    }
    t.finish()
}

/// `10^e` over a `lo:hi:step` range of exponents.
fn log_range(s: &str) -> Result<Vec<f64>, CliError> {
    Ok(parse_range(s)?.values().into_iter().map(|e| 10f64.powf(e)).collect())
}

fn cmd_ratio_max(cli: &Cli) -> Result<(), CliError> {
    let exps = exponents(cli)?;
    let rows = exps
        .par_iter()
        .map(|&a| {
            let m = find_max(a)?;
            Ok((m, stationarity_residual(a, m.y_approx)?))
        })
        .collect::<Result<Vec<_>, mrcurve::Error>>()?;
    let mut t = Table::create(
        cli.output.as_deref(),
        &[
            "a",
            "y_star",
            "delta_star",
            "f_max",
            "y_approx",
            "jelenkovic",
            "residual_at_approx",
        ],
    )?;
    for (m, res) in rows {
        t.row(&[
            Cell::F(m.a),
            Cell::F(m.y_star),
            Cell::F(m.delta_star),
            Cell::F(m.f_max),
            Cell::F(m.y_approx),
            Cell::Opt(m.jelenkovic),
            Cell::F(res),
        ])?;
    }
    t.finish()
}

fn cmd_slope(cli: &Cli) -> Result<(), CliError> {
    let law = law(cli)?;
    let fitted = ws_origin_slope_fit(&law)?;
    let analytic = ws_loglog_slope_origin(law.a())?;
    let lo = law.a().min(1.0) * (law.n() as f64).log10() + SLOPE_FIT_DECADES.0;
    let hi = (law.n() as f64).log10();
    let ds = log_grid(lo, hi, binning(cli, PREDICT_BINNING)?);
    let ws = ds
        .par_iter()
        .map(|&d| ws_analytic(&law, d))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::create(
        cli.output.as_deref(),
        &["a", "log10_D", "log10_ws", "fitted_slope", "analytic_slope"],
    )?;
    for (d, w) in ds.iter().zip(ws) {
        t.row(&[
            Cell::F(law.a()),
            Cell::F(d.log10()),
            Cell::F(w.log10()),
            Cell::F(fitted),
            Cell::F(analytic),
        ])?;
    }
    t.finish()?;
    eprintln!(
        "a = {}: fitted origin slope {}, analytic {}",
        g6(law.a()),
        g6(fitted),
        g6(analytic)
    );
    Ok(())
}
