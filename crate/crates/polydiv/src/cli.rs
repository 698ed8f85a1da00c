//! The `polydiv` command line.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polydiv_core::cluster::{cluster_measure, divisors_of, w_count, ClusteredSumPlan, SumWeight};
use polydiv_core::estimator::{g_exponent, log_grid, order_h, window_params};
use polydiv_core::partition::{bad_prime_cutoff, build_partition, doubling_check};
use polydiv_core::poly::Irreducibility;
use polydiv_core::rho::{rho, roots_mod_pk, EstimatedConstants, RootTable};
use polydiv_core::sieve::DivisorWindow;
use polydiv_core::IntPolynomial;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::{parse_count, parse_grid, parse_real, parse_z, ZSpec};
use crate::output::{
    emit, ClusterRow, ClusterSumRow, CountRow, EstimateRow, Format, PartitionRow, ReportLine, RhoRow,
    RootRow, VERSION,
};
use crate::{parallel, table_io, verify, Error, Result};

#[derive(Debug, Parser, Serialize)]
#[command(name = "polydiv", version = VERSION, about = "Polynomial values with a divisor in (y, z]")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Common {
    /// Master seed for all randomized steps.
    #[arg(long, global = true, default_value = "0", value_parser = parse_count)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value = "0", value_parser = parse_count)]
    pub threads: u64,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Root table file to load instead of building one.
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,
    /// Add wall-clock columns (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Proceed when no irreducibility witness is found.
    #[arg(long, global = true)]
    pub assume_irreducible: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    /// Roots of F modulo p^k, or a whole root table.
    Roots {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = parse_count)]
        p: Option<u64>,
        #[arg(long, default_value = "1", value_parser = parse_count)]
        k: u64,
        /// Tabulate every prime power up to this bound.
        #[arg(long, value_parser = parse_count, conflicts_with = "p")]
        bound: Option<u64>,
        /// Also write the table in binary form.
        #[arg(long, requires = "bound")]
        #[serde(skip)]
        save: Option<PathBuf>,
    },
    /// ρ(d), or fitted Mertens-type constants.
    Rho {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = parse_count)]
        d: Vec<u64>,
        /// Fit constants on a table up to this bound.
        #[arg(long, value_parser = parse_count)]
        fit: Option<u64>,
    },
    /// Exact H_F(x, y, z), H_F over (x/2, x] and H(x, y, z).
    Count {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = parse_count)]
        x: u64,
        #[arg(long, value_parser = parse_real, required_unless_present = "y_grid")]
        y: Option<f64>,
        /// A number, `c·y` written as e.g. `2y`, or `y^2`.
        #[arg(long)]
        z: String,
        /// Log-spaced y values `lo:hi:steps`.
        #[arg(long, conflicts_with = "y")]
        y_grid: Option<String>,
    },
    /// Window parameters, regime and the order of magnitude of H.
    Estimate {
        #[arg(long, value_parser = parse_real)]
        x: f64,
        #[arg(long, value_parser = parse_real)]
        y: f64,
        #[arg(long)]
        z: String,
        #[arg(long, default_value = "0.1", value_parser = parse_real)]
        delta: f64,
    },
    /// L(a; σ) and W(a; σ), or a truncated clustered sum.
    Cluster {
        #[arg(long, value_parser = parse_count)]
        a: Vec<u64>,
        #[arg(long, value_parser = parse_real)]
        sigma: Option<f64>,
        #[arg(long, conflicts_with = "a")]
        poly: Option<String>,
        #[arg(long, value_parser = parse_real, requires = "poly")]
        r: Option<f64>,
        #[arg(long, value_parser = parse_real, requires = "poly")]
        t: Option<f64>,
        #[arg(long, value_parser = parse_real)]
        eta: Option<f64>,
        #[arg(long = "A-max", value_parser = parse_count, default_value = "1e5")]
        a_max: u64,
        #[arg(long, value_enum, default_value_t = Weight::Reciprocal)]
        weight: Weight,
    },
    /// Greedy prime blocks above D = 10 g D_F².
    Partition {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = parse_count)]
        z: u64,
    },
    /// Oracle cross-checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Small)]
        suite: Suite,
    },
    /// Counts and normalized ratios over a y grid.
    Report {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = parse_count)]
        x: u64,
        #[arg(long)]
        y_grid: String,
        /// `c·y` (e.g. `2y`) or `y^2`.
        #[arg(long, default_value = "2y")]
        z: String,
        #[arg(long, default_value = "0.1", value_parser = parse_real)]
        delta: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    /// 1/a
    Reciprocal,
    /// 1/φ_F(a)
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Small,
}

/// Parses `argv` and runs; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    use polydiv_core::Error as C;
    match e {
        Error::Usage(_) => 2,
        Error::Core(C::Parse { .. } | C::InvalidArgument(_)) => 2,
        _ => 1,
    }
}

fn read_poly(text: &str, common: &Common) -> Result<IntPolynomial> {
    let f: IntPolynomial = text.parse()?;
    if f.degree() >= 2 {
        match f.is_probably_irreducible(200)? {
            Irreducibility::Proved { witness } => log::debug!("{f} irreducible mod {witness}"),
            Irreducibility::Unresolved if common.assume_irreducible => {
                log::warn!("no irreducibility witness for {f}; continuing as requested")
            }
            Irreducibility::Unresolved => {
                return Err(Error::Usage(format!(
                    "no irreducibility witness for {f} among the first 200 primes; \
                     pass --assume-irreducible to continue"
                )))
            }
        }
    }
    Ok(f)
}

struct Ctx<'a> {
    cli: &'a Cli,
    pool: rayon::ThreadPool,
}

impl Ctx<'_> {
    fn table(&self, f: &IntPolynomial, bound: u64) -> Result<RootTable> {
        let c = &self.cli.common;
        table_io::obtain(f, bound.max(2), c.seed, c.table.as_deref(), &self.pool)
    }

    fn emit<R: Serialize>(&self, command: &str, summary: &Map<String, Value>, rows: &[R]) -> Result<()> {
        let c = &self.cli.common;
        match &c.out {
            Some(path) => {
                let w = BufWriter::new(File::create(path)?);
                emit(w, c.format, command, self.cli, summary, rows)
            }
            None => emit(std::io::stdout().lock(), c.format, command, self.cli, summary, rows),
        }
    }
}

fn window_bound(z: f64) -> u64 {
    z.floor() as u64
}

pub fn run(cli: &Cli) -> Result<i32> {
    let ctx = Ctx {
        cli,
        pool: parallel::pool(cli.common.threads as usize)?,
    };
    let common = &cli.common;
    let none = Map::new();
    match &cli.command {
        Command::Roots { poly, p, k, bound, save } => {
            let f = read_poly(poly, common)?;
            let mut rows = Vec::new();
            if let Some(bound) = bound {
                let table = ctx.table(&f, *bound)?;
                if let Some(path) = save {
                    table_io::save(path, &f, &table)?;
                }
                for (_, p, k, roots) in table.records() {
                    rows.extend(roots.iter().map(|&root| RootRow { p, k, root }));
                }
            } else {
                let p = p.ok_or_else(|| Error::Usage("roots needs --p or --bound".into()))?;
                let k = u32::try_from(*k).map_err(|_| Error::Usage("--k too large".into()))?;
                for root in roots_mod_pk(&f, p, k)? {
                    rows.push(RootRow { p, k, root });
                }
            }
            ctx.emit("roots", &none, &rows)?;
        }
        Command::Rho { poly, d, fit } => {
            let f = read_poly(poly, common)?;
            let rows = d
                .iter()
                .map(|&d| Ok(RhoRow { d, rho: rho(&f, d)? }))
                .collect::<Result<Vec<_>>>()?;
            let mut summary = Map::new();
            if let Some(x_max) = fit {
                let table = ctx.table(&f, *x_max)?;
                let c = EstimatedConstants::fit(&table, *x_max)?;
                summary.insert("c1_hat".into(), json!(c.c1_hat));
                summary.insert("AF_hat".into(), json!(c.af_hat));
                let mut x = 10_000;
                while x < *x_max {
                    summary.insert(format!("residual_{x}"), json!(c.mertens_residual(&table, x)?));
                    x *= 10;
                }
            }
            ctx.emit("rho", &summary, &rows)?;
        }
        Command::Count { poly, x, y, z, y_grid } => {
            let f = read_poly(poly, common)?;
            let zspec = parse_z(z).map_err(Error::Usage)?;
            let ys = match (y, y_grid) {
                (Some(y), _) => vec![*y],
                (None, Some(g)) => {
                    let g = parse_grid(g).map_err(Error::Usage)?;
                    log_grid(g.lo, g.hi, g.steps)?
                }
                (None, None) => return Err(Error::Usage("count needs --y or --y-grid".into())),
            };
            let windows = ys
                .iter()
                .map(|&y| DivisorWindow::new(y, zspec.resolve(y)))
                .collect::<polydiv_core::Result<Vec<_>>>()?;
            let zmax = ys.iter().map(|&y| zspec.resolve(y)).fold(0.0, f64::max);
            let table = ctx.table(&f, window_bound(zmax))?;
            let start = std::time::Instant::now();
            let hf = parallel::count_windows(&f, &table, *x, &windows, &ctx.pool)?;
            let h = parallel::count_h_windows(*x, &windows, &ctx.pool);
            let elapsed = start.elapsed().as_secs_f64();
            let rows: Vec<CountRow> = ys
                .iter()
                .zip(hf.iter().zip(&h))
                .map(|(&y, (a, b))| CountRow {
                    x: *x,
                    y,
                    z: zspec.resolve(y),
                    H_F: a.count,
                    H_F_half: a.half_count,
                    H: b.count,
                    elapsed: common.timing.then_some(elapsed),
                })
                .collect();
            ctx.emit("count", &none, &rows)?;
        }
        Command::Estimate { x, y, z, delta } => {
            let z = parse_z(z).map_err(Error::Usage)?.resolve(*y);
            let w = window_params(*x, *y, z, *delta)?;
            let o = order_h(*x, *y, z, *delta)?;
            let row = EstimateRow {
                x: *x,
                y: *y,
                z,
                regime: o.regime.as_str(),
                eta: w.eta,
                u: w.u,
                beta: w.beta,
                xi: w.xi,
                delta: *delta,
                G: g_exponent(w.beta).ok(),
                order: o.value,
                in_uniform_range: o.in_uniform_range,
            };
            ctx.emit("estimate", &none, &[row])?;
        }
        Command::Cluster {
            a,
            sigma,
            poly,
            r,
            t,
            eta,
            a_max,
            weight,
        } => {
            if let Some(poly) = poly {
                let f = read_poly(poly, common)?;
                let eta = eta.ok_or_else(|| Error::Usage("clustered sum needs --eta".into()))?;
                let d = bad_prime_cutoff(&f)? as f64;
                let r = r.unwrap_or(d);
                let t = t.ok_or_else(|| Error::Usage("clustered sum needs --t".into()))?;
                let table = ctx.table(&f, window_bound(t).min(*a_max))?;
                let w = match weight {
                    Weight::Reciprocal => SumWeight::Reciprocal,
                    Weight::Phi => SumWeight::PhiF,
                };
                let plan = ClusteredSumPlan::new(&table, r, t, eta, *a_max, w, None)?;
                let s = parallel::clustered_sum(&plan, &ctx.pool);
                let row = ClusterSumRow {
                    r,
                    t,
                    eta,
                    A_max: *a_max,
                    weight: match weight {
                        Weight::Reciprocal => "1/a",
                        Weight::Phi => "1/phi_F(a)",
                    },
                    value: s.value,
                    terms: s.terms,
                    last_decade: s.last_decade,
                };
                ctx.emit("cluster", &none, &[row])?;
            } else {
                if a.is_empty() {
                    return Err(Error::Usage("cluster needs --a or --poly".into()));
                }
                let sigma = sigma.or(*eta).ok_or_else(|| Error::Usage("cluster needs --sigma".into()))?;
                let rows = a
                    .iter()
                    .map(|&a| {
                        if a == 0 {
                            return Err(Error::Usage("a must be ≥ 1".into()));
                        }
                        let d = divisors_of(a);
                        Ok(ClusterRow {
                            a,
                            tau: d.len() as u64,
                            L: cluster_measure(&d, sigma)?,
                            W: w_count(&d, sigma)?,
                            sigma,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                ctx.emit("cluster", &none, &rows)?;
            }
        }
        Command::Partition { poly, z } => {
            let f = read_poly(poly, common)?;
            let table = ctx.table(&f, *z)?;
            let part = build_partition(&f, &table, *z)?;
            let rows: Vec<PartitionRow> = part
                .rows()
                .into_iter()
                .map(|(j, lambda, block_sum, dev)| PartitionRow {
                    j,
                    lambda,
                    block_sum,
                    dev,
                })
                .collect();
            let mut summary = Map::new();
            summary.insert("D".into(), json!(part.d));
            if let Ok(rep) = doubling_check(&part) {
                summary.insert("c5_hat".into(), json!(rep.c5_hat));
                summary.insert("last_truncated".into(), json!(rep.last_truncated));
            }
            ctx.emit("partition", &summary, &rows)?;
        }
        Command::Verify { suite } => {
            let rows = match suite {
                Suite::Small => verify::small_suite(common.seed)?,
            };
            for r in &rows {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                eprintln!("{mark} {}: {}", r.check, r.detail);
            }
            ctx.emit("verify", &none, &rows)?;
            if rows.iter().any(|r| !r.passed) {
                return Ok(1);
            }
        }
        Command::Report {
            poly,
            x,
            y_grid,
            z,
            delta,
        } => {
            let f = read_poly(poly, common)?;
            let kind = match parse_z(z).map_err(Error::Usage)? {
                ZSpec::Relative(k) => k,
                ZSpec::Fixed(_) => {
                    return Err(Error::Usage("report needs --z relative to y, e.g. 2y or y^2".into()))
                }
            };
            let g = parse_grid(y_grid).map_err(Error::Usage)?;
            let ys = log_grid(g.lo, g.hi, g.steps)?;
            let zmax = ys.iter().map(|&y| kind.z_for(y)).fold(0.0, f64::max);
            let table = ctx.table(&f, window_bound(zmax))?;
            let rows = parallel::ratio_report(&f, &table, *x, &ys, kind, *delta, &ctx.pool)?;
            let lines: Vec<ReportLine> = rows.iter().map(ReportLine::from).collect();
            ctx.emit("report", &none, &lines)?;
        }
    }
    Ok(0)
}
