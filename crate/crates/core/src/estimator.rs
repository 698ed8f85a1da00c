//! Closed-form order functions for `H(x, y, z)` and the quantities they are
//! built from.
//!
//! Window parameters follow `z = e^η y = y^{1+u}`, `η = (log y)^{-β}` and
//! `β = log 4 − 1 + ξ / √(log log y)`.

use alloc::vec::Vec;
use core::f64::consts::LN_2;
use core::fmt;

use libm::{exp, lgamma, log, pow, sqrt};

use crate::sieve::{self, DivisorWindow};
use crate::{Error, IntPolynomial, Result, RootTable};

/// `log 4 − 1`.
pub const LOG4_MINUS_ONE: f64 = 2.0 * LN_2 - 1.0;

/// `𝓔 = 1 − (1 + log log 2) / log 2 = 0.086071332…`
pub fn erdos_ford_tenenbaum() -> f64 {
    1.0 - (1.0 + log(LN_2)) / LN_2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// `z ≤ z₀(y)`
    Short,
    /// `z₀(y) < z ≤ 2y`
    Critical,
    /// `2y < z ≤ y²`
    Wide,
    /// `z > y²`
    Saturated,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Short => "short",
            Regime::Critical => "critical",
            Regime::Wide => "wide",
            Regime::Saturated => "saturated",
        }
    }

    pub fn classify(y: f64, z: f64) -> Self {
        if z > y * y {
            Regime::Saturated
        } else if z <= z0_unchecked(y) {
            Regime::Short
        } else if z <= 2.0 * y {
            Regime::Critical
        } else {
            Regime::Wide
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowParams {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub eta: f64,
    pub u: f64,
    pub beta: f64,
    pub xi: f64,
    pub delta: f64,
    pub regime: Regime,
}

impl WindowParams {
    /// `z` recovered as `e^η y`.
    pub fn z_from_eta(&self) -> f64 {
        exp(self.eta) * self.y
    }
}

fn params_unchecked(x: f64, y: f64, z: f64, delta: f64) -> WindowParams {
    let ly = log(y);
    let lly = log(ly);
    let eta = log(z) - ly;
    let beta = -log(eta) / lly;
    WindowParams {
        x,
        y,
        z,
        eta,
        u: eta / ly,
        beta,
        xi: (beta - LOG4_MINUS_ONE) * sqrt(lly),
        delta,
        regime: Regime::classify(y, z),
    }
}

pub fn window_params(x: f64, y: f64, z: f64, delta: f64) -> Result<WindowParams> {
    if !(y >= 4.0 && y.is_finite()) {
        return Err(Error::InvalidArgument("window parameters need y ≥ 4".into()));
    }
    if !(z > y && z.is_finite()) {
        return Err(Error::InvalidArgument("window parameters need z > y".into()));
    }
    Ok(params_unchecked(x, y, z, delta))
}

/// The exponent `G(β)`: `β` for `β ≥ log 4 − 1`, otherwise
/// `(1+β)/log 2 · log((1+β)/(e log 2)) + 1`.
pub fn g_exponent(beta: f64) -> Result<f64> {
    if !(beta >= 0.0) {
        return Err(Error::Domain("G(β) is defined for β ≥ 0".into()));
    }
    Ok(if beta >= LOG4_MINUS_ONE {
        beta
    } else {
        g_lower_branch(beta)
    })
}

/// Second branch of `G`, usable on its own for continuity checks.
pub fn g_lower_branch(beta: f64) -> f64 {
    (1.0 + beta) / LN_2 * log((1.0 + beta) / (core::f64::consts::E * LN_2)) + 1.0
}

fn z0_unchecked(y: f64) -> f64 {
    y * exp(pow(log(y), 1.0 - 2.0 * LN_2))
}

/// `z₀(y) = y exp{(log y)^{1 − log 4}}`.
pub fn z0(y: f64) -> Result<f64> {
    if !(y > 1.0) {
        return Err(Error::Domain("z₀(y) needs y > 1".into()));
    }
    Ok(z0_unchecked(y))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderEstimate {
    /// The order function for `H(x, y, z) / x`, without constants.
    pub value: f64,
    pub regime: Regime,
    /// `3 ≤ y ≤ x^{1−δ}`; outside it the value is still computed.
    pub in_uniform_range: bool,
}

/// Order of magnitude of `H(x, y, z) / x`:
/// `η` (short), `β / (max(1, −ξ) (log y)^{G(β)})` (critical),
/// `u^𝓔 (log(2/u))^{−3/2}` (wide), `1` (saturated).
pub fn order_h(x: f64, y: f64, z: f64, delta: f64) -> Result<OrderEstimate> {
    if !(y > core::f64::consts::E) {
        return Err(Error::Domain("order_H needs log log y > 0".into()));
    }
    if !(z > y) {
        return Err(Error::InvalidArgument("order_H needs z > y".into()));
    }
    let w = params_unchecked(x, y, z, delta);
    let value = match w.regime {
        Regime::Short => w.eta,
        Regime::Critical => {
            let g = g_exponent(w.beta)?;
            w.beta / (f64::max(1.0, -w.xi) * pow(log(y), g))
        }
        Regime::Wide => pow(w.u, erdos_ford_tenenbaum()) * pow(log(2.0 / w.u), -1.5),
        Regime::Saturated => 1.0,
    };
    let in_uniform_range = y >= 3.0 && y <= pow(x, 1.0 - delta);
    if !in_uniform_range {
        log::warn!("order_H: y = {y} outside 3 ≤ y ≤ x^(1-δ) for x = {x}, δ = {delta}");
    }
    Ok(OrderEstimate {
        value,
        regime: w.regime,
        in_uniform_range,
    })
}

/// `Σ_{h≤k≤m} x^k/k!` divided by `min(√x, x/(x−m)) x^m/m!`, evaluated in
/// log space.
pub fn norton_ratio(x: f64, h: u64, m: u64) -> Result<f64> {
    let (hf, mf) = (h as f64, m as f64);
    if !(x > 0.0 && h < m && mf <= x && mf - hf >= sqrt(x)) {
        return Err(Error::InvalidArgument(
            "norton_ratio needs 0 ≤ h < m ≤ x and m − h ≥ √x".into(),
        ));
    }
    let lx = log(x);
    let top = mf * lx - lgamma(mf + 1.0);
    let mut sum = crate::arith::CompensatedSum::new();
    let mut k = m;
    loop {
        let term = exp(k as f64 * lx - lgamma(k as f64 + 1.0) - top);
        sum.add(term);
        if k == h || term < 1e-18 * sum.value() {
            break;
        }
        k -= 1;
    }
    let scale = if mf >= x { sqrt(x) } else { f64::min(sqrt(x), x / (x - mf)) };
    Ok(sum.value() / scale)
}

/// How `z` is derived from `y` in a report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WindowKind {
    /// `z = c·y`
    Multiple(f64),
    /// `z = y²`
    Square,
}

impl WindowKind {
    pub fn z_for(&self, y: f64) -> f64 {
        match *self {
            WindowKind::Multiple(c) => c * y,
            WindowKind::Square => y * y,
        }
    }
}

/// One report line: counts, window parameters and normalized ratios.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReportRow {
    pub x: u64,
    pub y: f64,
    pub z: f64,
    pub regime: Regime,
    pub eta: f64,
    pub u: f64,
    pub beta: f64,
    pub xi: f64,
    pub hf: u64,
    pub hf_half: u64,
    pub h: u64,
    pub order: f64,
    /// `H_F (log y)^𝓔 (log log y)^{3/2} / x`
    pub r1: f64,
    /// `H_F / H`
    pub r2: f64,
    /// `(H_F(x) − H_F(x/2)) / H`
    pub r3: f64,
}

pub fn report_row(x: u64, y: f64, z: f64, delta: f64, hf: u64, hf_half: u64, h: u64) -> Result<ReportRow> {
    let w = window_params(x as f64, y, z, delta)?;
    let order = order_h(x as f64, y, z, delta)?.value;
    let ly = log(y);
    let r1 = hf as f64 * pow(ly, erdos_ford_tenenbaum()) * pow(log(ly), 1.5) / x as f64;
    Ok(ReportRow {
        x,
        y,
        z,
        regime: w.regime,
        eta: w.eta,
        u: w.u,
        beta: w.beta,
        xi: w.xi,
        hf,
        hf_half,
        h,
        order,
        r1,
        r2: hf as f64 / h as f64,
        r3: hf_half as f64 / h as f64,
    })
}

/// Serial report over a grid of `y`, sharing one sieve pass.
pub fn ratio_report(
    poly: &IntPolynomial,
    table: &RootTable,
    x: u64,
    ys: &[f64],
    kind: WindowKind,
    delta: f64,
) -> Result<Vec<ReportRow>> {
    let windows = ys
        .iter()
        .map(|&y| DivisorWindow::new(y, kind.z_for(y)))
        .collect::<Result<Vec<_>>>()?;
    let tallies = sieve::count_hf_windows(poly, table, x, &windows)?;
    ys.iter()
        .zip(windows.iter().zip(tallies))
        .map(|(&y, (w, t))| {
            let h = sieve::count_h_window(x, *w);
            report_row(x, y, kind.z_for(y), delta, t.count, t.half_count, h.count)
        })
        .collect()
}

/// `steps` values from `lo` to `hi`, equally spaced in `log y` and rounded
/// to integers.
pub fn log_grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && steps >= 1) {
        return Err(Error::InvalidArgument("grid needs 0 < lo ≤ hi and steps ≥ 1".into()));
    }
    if steps == 1 {
        return Ok(alloc::vec![libm::round(lo)]);
    }
    let ratio = log(hi / lo);
    Ok((0..steps)
        .map(|i| libm::round(lo * exp(ratio * i as f64 / (steps - 1) as f64)))
        .collect())
}
