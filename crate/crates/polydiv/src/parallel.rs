//! Rayon drivers over the core's independent work units. Results are merged
//! in a fixed order, so the thread count never changes the output.

use std::time::Instant;

use polydiv_core::arith::primes_up_to;
use polydiv_core::cluster::{ClusteredSumPlan, SquarefreeSum};
use polydiv_core::estimator::{report_row, ReportRow, WindowKind};
use polydiv_core::rho::{PrimeRoots, RootTable};
use polydiv_core::sieve::{
    count_h_window, tally_range, windows_bound, CountResult, DivisorWindow, Scratch, SieveEngine,
    WindowTally, MIN_SEGMENT,
};
use polydiv_core::IntPolynomial;
use rayon::prelude::*;

use crate::Result;

/// `threads = 0` uses every available core.
pub fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(threads).build()?)
}

const PRIME_CHUNK: usize = 2048;

pub fn build_table(f: &IntPolynomial, bound: u64, seed: u64, pool: &rayon::ThreadPool) -> Result<RootTable> {
    let primes = primes_up_to(bound);
    let parts: Vec<Vec<PrimeRoots>> = pool.install(|| {
        primes
            .par_chunks(PRIME_CHUNK)
            .map(|chunk| RootTable::compute_primes(f, chunk, bound, seed))
            .collect::<polydiv_core::Result<_>>()
    })?;
    Ok(RootTable::from_parts(
        f.degree(),
        bound,
        seed,
        parts.into_iter().flatten().collect(),
    ))
}

fn ranges(x: u64, workers: usize) -> Vec<(u64, u64)> {
    let pieces = (workers as u64 * 8).max(1);
    let step = (x / pieces).max(MIN_SEGMENT as u64 * 16);
    let mut out = Vec::new();
    let mut lo = 1;
    while lo <= x {
        let hi = x.min(lo + step - 1);
        out.push((lo, hi));
        lo = hi + 1;
    }
    out
}

/// One sieve pass over `[1, x]`, split into ranges that are tallied
/// independently.
pub fn count_windows(
    f: &IntPolynomial,
    table: &RootTable,
    x: u64,
    windows: &[DivisorWindow],
    pool: &rayon::ThreadPool,
) -> Result<Vec<WindowTally>> {
    let engine = SieveEngine::new(f, table, windows_bound(windows))?;
    let parts: Vec<Vec<WindowTally>> = pool.install(|| {
        ranges(x, pool.current_num_threads())
            .into_par_iter()
            .map_init(Scratch::default, |scratch, (lo, hi)| {
                tally_range(&engine, lo, hi, x, windows, scratch)
            })
            .collect()
    });
    let mut total = vec![WindowTally::default(); windows.len()];
    for part in parts {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    Ok(total)
}

/// `count_HF` with wall-clock timing.
pub fn count_hf(
    f: &IntPolynomial,
    table: &RootTable,
    x: u64,
    y: f64,
    z: f64,
    pool: &rayon::ThreadPool,
) -> Result<CountResult> {
    let start = Instant::now();
    let window = DivisorWindow::new(y, z)?;
    let t = count_windows(f, table, x, &[window], pool)?[0];
    Ok(CountResult {
        x,
        y,
        z,
        count: t.count,
        half_count: t.half_count,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// `H(x, y, z)` for several windows, one bitset per window.
pub fn count_h_windows(x: u64, windows: &[DivisorWindow], pool: &rayon::ThreadPool) -> Vec<WindowTally> {
    pool.install(|| windows.par_iter().map(|w| count_h_window(x, *w)).collect())
}

pub fn clustered_sum(plan: &ClusteredSumPlan, pool: &rayon::ThreadPool) -> SquarefreeSum {
    let branches: Vec<_> = pool.install(|| {
        (0..plan.branch_count())
            .into_par_iter()
            .map(|i| plan.branch(i))
            .collect()
    });
    plan.combine(&branches)
}

/// Report rows for a grid of `y` sharing one sieve pass.
pub fn ratio_report(
    f: &IntPolynomial,
    table: &RootTable,
    x: u64,
    ys: &[f64],
    kind: WindowKind,
    delta: f64,
    pool: &rayon::ThreadPool,
) -> Result<Vec<ReportRow>> {
    let windows = ys
        .iter()
        .map(|&y| DivisorWindow::new(y, kind.z_for(y)))
        .collect::<polydiv_core::Result<Vec<_>>>()?;
    let hf = count_windows(f, table, x, &windows, pool)?;
    let h = count_h_windows(x, &windows, pool);
    ys.iter()
        .zip(hf.iter().zip(&h))
        .map(|(&y, (a, b))| Ok(report_row(x, y, kind.z_for(y), delta, a.count, a.half_count, b.count)?))
        .collect()
}
