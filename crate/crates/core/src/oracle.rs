//! Brute-force references.
//!
//! Nothing here calls into the root table, the sieve or the divisor search:
//! residues are scanned one by one, values are factored by trial division
//! and window hits are found by listing every divisor. Keep it that way;
//! the cross-checks are only worth something while the two sides are
//! independent.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, IntPolynomial, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `x` accepted by the naive counters.
    pub x_cap: u64,
    /// Largest number of window divisors with `ρ(d) > 0` for the
    /// inclusion-exclusion count.
    pub subset_cap: usize,
    /// Largest modulus scanned by [`naive_roots`].
    pub modulus_cap: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            x_cap: 100_000,
            subset_cap: 20,
            modulus_cap: 10_000_000,
        }
    }
}

fn coeffs_mod(f: &IntPolynomial, m: u64) -> Vec<u128> {
    let mb = BigInt::from(m);
    f.coeffs()
        .iter()
        .map(|c| {
            let r = c % &mb;
            let r = if r.is_negative() { r + &mb } else { r };
            r.to_u128().expect("reduced")
        })
        .collect()
}

fn horner_mod(c: &[u128], n: u128, m: u128) -> u128 {
    c.iter().rev().fold(0u128, |acc, &a| (acc * n + a) % m)
}

/// Every residue `r mod m` with `m | F(r)`, by scanning all of them.
pub fn naive_roots(f: &IntPolynomial, m: u64) -> Result<Vec<u64>> {
    naive_roots_capped(f, m, OracleConfig::default().modulus_cap)
}

pub fn naive_roots_capped(f: &IntPolynomial, m: u64, cap: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be ≥ 1".into()));
    }
    if m > cap {
        return Err(Error::CapExceeded {
            what: "modulus",
            value: m,
            cap,
        });
    }
    let c = coeffs_mod(f, m);
    Ok((0..m)
        .filter(|&r| horner_mod(&c, r as u128, m as u128) == 0)
        .collect())
}

/// Roots modulo `m` among the residues lying over the given roots modulo
/// `coarse` (`coarse | m`). Each candidate `r + j·coarse` is tested by
/// evaluating `F` modulo `m`; since every root modulo `m` reduces to a root
/// modulo `coarse`, the result is the full root set.
pub fn naive_roots_over(f: &IntPolynomial, coarse: u64, coarse_roots: &[u64], m: u64) -> Result<Vec<u64>> {
    if coarse == 0 || m % coarse != 0 {
        return Err(Error::InvalidArgument("coarse modulus must divide m".into()));
    }
    let c = coeffs_mod(f, m);
    let mut out = Vec::new();
    for &r in coarse_roots {
        let mut n = r;
        while n < m {
            if horner_mod(&c, n as u128, m as u128) == 0 {
                out.push(n);
            }
            n += coarse;
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn value_at(f: &IntPolynomial, n: u64) -> BigInt {
    let n = BigInt::from(n);
    let mut acc = BigInt::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc * &n + c;
    }
    acc
}

/// `|F(n)|`, or `None` for `F(n) = 0`.
fn abs_value(f: &IntPolynomial, n: u64) -> Result<Option<u128>> {
    let v = value_at(f, n);
    if v.is_zero() {
        return Ok(None);
    }
    v.abs()
        .to_u128()
        .map(Some)
        .ok_or(Error::Overflow("|F(n)| exceeds 128 bits in the oracle"))
}

/// Prime factors `p ≤ limit` of `v` with exact multiplicity, by dividing
/// by every integer `2, 3, 4, …` in turn.
pub fn trial_factor_upto(v: u128, limit: u64) -> Vec<(u64, u32)> {
    if let Ok(small) = u64::try_from(v) {
        return trial_factor_u64(small, limit);
    }
    let mut v = v;
    let mut out = Vec::new();
    let mut k: u64 = 2;
    while k <= limit && (k as u128) * (k as u128) <= v {
        if v % k as u128 == 0 {
            let mut e = 0;
            while v % k as u128 == 0 {
                v /= k as u128;
                e += 1;
            }
            out.push((k, e));
        }
        k += 1;
        if let Ok(small) = u64::try_from(v) {
            let mut rest = trial_factor_u64_from(small, limit, k);
            out.append(&mut rest);
            return out;
        }
    }
    if v > 1 && v <= limit as u128 {
        out.push((v as u64, 1));
    }
    out
}

fn trial_factor_u64(v: u64, limit: u64) -> Vec<(u64, u32)> {
    trial_factor_u64_from(v, limit, 2)
}

fn trial_factor_u64_from(mut v: u64, limit: u64, start: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut k = start;
    while k <= limit && (k as u128) * (k as u128) <= v as u128 {
        if v % k == 0 {
            let mut e = 0;
            while v % k == 0 {
                v /= k;
                e += 1;
            }
            out.push((k, e));
        }
        k += 1;
    }
    if v > 1 && v <= limit {
        out.push((v, 1));
    }
    out
}

/// Naive smooth part of one value: `None` when `F(n) = 0`.
pub fn naive_smooth_factorization(f: &IntPolynomial, n: u64, limit: u64) -> Result<Option<Vec<(u64, u32)>>> {
    Ok(abs_value(f, n)?.map(|v| trial_factor_upto(v, limit)))
}

fn all_divisors(factors: &[(u64, u32)]) -> Vec<u128> {
    let mut divs = vec![1u128];
    for &(p, e) in factors {
        let len = divs.len();
        let mut pk = 1u128;
        for _ in 0..e {
            pk *= p as u128;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs
}

fn floor_window(y: f64, z: f64) -> Result<(u64, u64)> {
    if !(y >= 0.0 && z > y && z.is_finite()) {
        return Err(Error::InvalidArgument("window needs 0 ≤ y < z".into()));
    }
    Ok((libm::floor(y) as u64, libm::floor(z) as u64))
}

/// `H_F(x, y, z)` by factoring every `F(n)` and listing its divisors.
pub fn naive_hf(f: &IntPolynomial, x: u64, y: f64, z: f64, cfg: &OracleConfig) -> Result<u64> {
    Ok(naive_hf_windows(f, x, &[(y, z)], cfg)?[0])
}

/// [`naive_hf`] for several windows, factoring each `F(n)` once.
pub fn naive_hf_windows(f: &IntPolynomial, x: u64, windows: &[(f64, f64)], cfg: &OracleConfig) -> Result<Vec<u64>> {
    if x > cfg.x_cap {
        return Err(Error::CapExceeded {
            what: "x",
            value: x,
            cap: cfg.x_cap,
        });
    }
    let bounds = windows
        .iter()
        .map(|&(y, z)| floor_window(y, z))
        .collect::<Result<Vec<_>>>()?;
    let limit = bounds.iter().map(|b| b.1).max().unwrap_or(1);
    let mut counts = vec![0u64; windows.len()];
    for n in 1..=x {
        match naive_smooth_factorization(f, n, limit)? {
            None => {
                for (c, &(lo, hi)) in counts.iter_mut().zip(&bounds) {
                    if hi > lo {
                        *c += 1;
                    }
                }
            }
            Some(factors) => {
                let divs = all_divisors(&factors);
                for (c, &(lo, hi)) in counts.iter_mut().zip(&bounds) {
                    if divs.iter().any(|&d| d > lo as u128 && d <= hi as u128) {
                        *c += 1;
                    }
                }
            }
        }
    }
    Ok(counts)
}

/// `H(x, y, z)` by testing every `d` in the window against every `n`.
pub fn naive_h(x: u64, y: f64, z: f64) -> Result<u64> {
    let (lo, hi) = floor_window(y, z)?;
    Ok((1..=x).filter(|&n| (lo + 1..=hi).any(|d| n % d == 0)).count() as u64)
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn inverse128(a: u128, m: u128) -> u128 {
    let (mut r0, mut r1) = (a as i128 % m as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m as i128) as u128
}

/// Residue classes of the integers `n ≤ x` lying in every set `A_d` chosen
/// so far. Once the modulus passes `x`, each class holds at most one such
/// `n`, and the classes are stored as those integers.
#[derive(Clone)]
enum Classes {
    Modular { modulus: u128, residues: Vec<u128> },
    Explicit(Vec<u64>),
}

impl Classes {
    fn count(&self, x: u64) -> u64 {
        match self {
            Classes::Modular { modulus, residues } => residues
                .iter()
                .map(|&r| {
                    let x = x as u128;
                    if r == 0 {
                        (x / modulus) as u64
                    } else if r <= x {
                        ((x - r) / modulus + 1) as u64
                    } else {
                        0
                    }
                })
                .sum(),
            Classes::Explicit(ns) => ns.len() as u64,
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Classes::Modular { residues, .. } => residues.is_empty(),
            Classes::Explicit(ns) => ns.is_empty(),
        }
    }

    fn intersect(&self, d: u64, roots: &[u64], x: u64) -> Classes {
        let d128 = d as u128;
        match self {
            Classes::Explicit(ns) => Classes::Explicit(
                ns.iter()
                    .copied()
                    .filter(|&n| roots.binary_search(&(n % d)).is_ok())
                    .collect(),
            ),
            Classes::Modular { modulus, residues } => {
                let l = *modulus;
                let g = gcd128(l, d128);
                let lcm = l / g * d128;
                let step = d128 / g;
                let inv = if step == 1 { 0 } else { inverse128((l / g) % step, step) };
                let mut out = Vec::new();
                for &r in residues {
                    for &s in roots {
                        let s = s as u128;
                        let diff = (s + lcm - r % d128) % d128;
                        if diff % g != 0 {
                            continue;
                        }
                        let t = if step == 1 { 0 } else { (diff / g) % step * inv % step };
                        out.push((r + l * t) % lcm);
                    }
                }
                if lcm > x as u128 {
                    let mut ns: Vec<u64> = out
                        .into_iter()
                        .filter(|&n| n >= 1 && n <= x as u128)
                        .map(|n| n as u64)
                        .collect();
                    ns.sort_unstable();
                    Classes::Explicit(ns)
                } else {
                    Classes::Modular {
                        modulus: lcm,
                        residues: out,
                    }
                }
            }
        }
    }
}

/// `|⋃_{y<d≤z} {n ≤ x : d | F(n)}|` by inclusion-exclusion over the
/// divisors `d` with `ρ(d) > 0`, each intersection counted exactly from
/// its residue classes modulo the lcm.
pub fn inclusion_exclusion_hf(f: &IntPolynomial, x: u64, y: f64, z: f64, cfg: &OracleConfig) -> Result<u64> {
    let (lo, hi) = floor_window(y, z)?;
    let mut candidates: Vec<(u64, Vec<u64>)> = Vec::new();
    for d in lo + 1..=hi {
        let roots = naive_roots_capped(f, d, cfg.modulus_cap)?;
        if !roots.is_empty() {
            if candidates.len() == cfg.subset_cap {
                return Err(Error::CapExceeded {
                    what: "window divisors with ρ(d) > 0",
                    value: cfg.subset_cap as u64 + 1,
                    cap: cfg.subset_cap as u64,
                });
            }
            candidates.push((d, roots));
        }
    }
    let start = Classes::Modular {
        modulus: 1,
        residues: vec![0],
    };
    let mut total: i128 = 0;
    subsets(&candidates, 0, &start, 0, x, &mut total);
    Ok(total as u64)
}

fn subsets(cands: &[(u64, Vec<u64>)], from: usize, state: &Classes, size: u32, x: u64, total: &mut i128) {
    for i in from..cands.len() {
        let (d, roots) = &cands[i];
        let next = state.intersect(*d, roots, x);
        if next.is_empty() {
            continue;
        }
        let c = next.count(x) as i128;
        if size % 2 == 0 {
            *total += c;
        } else {
            *total -= c;
        }
        subsets(cands, i + 1, &next, size + 1, x, total);
    }
}

/// Naive `#{n ≤ x : ∏_{p^a ‖ F(n), p ≤ v} p^a > w}`.
pub fn naive_smooth_excess(f: &IntPolynomial, x: u64, v: f64, w: f64) -> Result<u64> {
    let limit = libm::floor(v) as u64;
    let w = libm::floor(w) as u128;
    let mut count = 0;
    for n in 1..=x {
        match abs_value(f, n)? {
            None => count += 1,
            Some(val) => {
                // full division by each k ≤ v, no √ shortcut
                let mut rest = val;
                let mut part: u128 = 1;
                for k in 2..=limit {
                    while rest % k as u128 == 0 {
                        rest /= k as u128;
                        part *= k as u128;
                    }
                }
                if part > w {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}
