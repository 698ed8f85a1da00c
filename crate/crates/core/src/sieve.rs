//! Segmented sieve over the values `F(n)`, and the exact window counters
//! built on it.
//!
//! For every prime power `p^k ≤ z` and every root `r` of `F` modulo `p^k`,
//! the integers `n ≡ r (mod p^k)` in the current segment gain one unit of
//! multiplicity for `p`. A per-`n` pass then divides `|F(n)|` by the sieved
//! part, which both confirms the multiplicities and recovers powers of `p`
//! beyond the largest tabulated `p^k`.
//!
//! Values are handled in 128-bit arithmetic while `|F(n)| < 2^127`; larger
//! values drop to arbitrary precision for that `n` only.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::checked_pow;
use crate::rho::PrimeRoots;
use crate::{arith, Error, IntPolynomial, Result, RootTable};

pub const DEFAULT_SEGMENT: usize = 1 << 18;
pub const MIN_SEGMENT: usize = 1 << 10;

/// The integer divisors `d` with `y < d ≤ z`, stored as `⌊y⌋ < d ≤ ⌊z⌋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisorWindow {
    pub above: u64,
    pub upto: u64,
}

impl DivisorWindow {
    pub fn new(y: f64, z: f64) -> Result<Self> {
        if !(y.is_finite() && z.is_finite()) || y < 0.0 || z <= y {
            return Err(Error::InvalidArgument(format!(
                "window needs 0 ≤ y < z, got y = {y}, z = {z}"
            )));
        }
        Ok(Self {
            above: libm::floor(y) as u64,
            upto: libm::floor(z) as u64,
        })
    }

    #[inline]
    pub fn contains(&self, d: u64) -> bool {
        self.above < d && d <= self.upto
    }

    pub fn is_empty(&self) -> bool {
        self.upto <= self.above
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    pub x_lo: u64,
    pub x_hi: u64,
    /// Largest prime power sieved; the table must reach it.
    pub z: u64,
    pub segment: usize,
    pub threads: usize,
}

impl SieveConfig {
    pub fn new(x_lo: u64, x_hi: u64, z: u64) -> Self {
        Self {
            x_lo,
            x_hi,
            z,
            segment: DEFAULT_SEGMENT,
            threads: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.x_lo < 1 {
            return Err(Error::InvalidArgument("sieve range must start at n ≥ 1".into()));
        }
        if self.z < 2 {
            return Err(Error::InvalidArgument("sieve bound z must be ≥ 2".into()));
        }
        if self.segment < MIN_SEGMENT {
            return Err(Error::InvalidArgument(format!(
                "segment length must be ≥ {MIN_SEGMENT}"
            )));
        }
        if self.x_hi > i64::MAX as u64 {
            return Err(Error::InvalidArgument("n must fit in 63 bits".into()));
        }
        Ok(())
    }
}

/// The prime-power divisors `p^ν ‖ F(n)` with `p ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothFactorization {
    pub n: u64,
    /// `(p, ν)` ascending in `p`, multiplicities exact.
    pub factors: Vec<(u64, u32)>,
    /// `|F(n)|` equals the product of `factors`.
    pub cofactor_is_one: bool,
    /// `F(n) = 0`: every integer divides it and `factors` is empty.
    pub value_is_zero: bool,
    /// Prime bound used by the sieve.
    pub bound: u64,
}

impl SmoothFactorization {
    /// The complete factorization of `|F(n)|`, when it is `bound`-smooth.
    pub fn full_factorization(&self) -> Option<&[(u64, u32)]> {
        (self.cofactor_is_one && !self.value_is_zero).then_some(self.factors.as_slice())
    }
}

/// Borrowed per-`n` output of the sieve engine.
#[derive(Clone, Copy, Debug)]
pub struct SieveRow<'a> {
    pub n: u64,
    pub factors: &'a [(u64, u32)],
    pub cofactor_is_one: bool,
    pub value_is_zero: bool,
}

/// Reusable per-segment buffers.
#[derive(Default)]
pub struct Scratch {
    lists: Vec<Vec<(u64, u32)>>,
}

/// Sieves `F(n)` by the prime powers `≤ bound` from a root table.
#[derive(Clone, Copy)]
pub struct SieveEngine<'a> {
    poly: &'a IntPolynomial,
    entries: &'a [PrimeRoots],
    bound: u64,
    segment: usize,
}

impl<'a> SieveEngine<'a> {
    pub fn new(poly: &'a IntPolynomial, table: &'a RootTable, bound: u64) -> Result<Self> {
        table.require(bound)?;
        Ok(Self {
            poly,
            entries: table.primes_up_to(bound),
            bound,
            segment: DEFAULT_SEGMENT,
        })
    }

    pub fn with_segment(mut self, segment: usize) -> Self {
        self.segment = segment.max(1);
        self
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Calls `visit` for each `n` in `lo..=hi`, in increasing order.
    pub fn for_each<V: FnMut(SieveRow<'_>)>(&self, lo: u64, hi: u64, scratch: &mut Scratch, mut visit: V) {
        let mut start = lo;
        while start <= hi {
            let end = hi.min(start.saturating_add(self.segment as u64 - 1));
            self.segment_pass(start, end, scratch, &mut visit);
            if end == u64::MAX {
                break;
            }
            start = end + 1;
        }
    }

    fn segment_pass<V: FnMut(SieveRow<'_>)>(&self, lo: u64, hi: u64, scratch: &mut Scratch, visit: &mut V) {
        let len = (hi - lo + 1) as usize;
        if scratch.lists.len() < len {
            scratch.lists.resize_with(len, Vec::new);
        }
        let lists = &mut scratch.lists[..len];
        for l in lists.iter_mut() {
            l.clear();
        }
        for e in self.entries {
            let mut q = e.p;
            for (k, roots) in e.powers.iter().enumerate() {
                if q > self.bound {
                    break;
                }
                let lo_mod = lo % q;
                for &r in roots {
                    let mut i = ((r + q - lo_mod) % q) as usize;
                    while i < len {
                        let l = &mut lists[i];
                        if k == 0 {
                            l.push((e.p, 1));
                        } else {
                            // p's entry is the latest one: all powers of p are
                            // sieved before the next prime.
                            l.last_mut().expect("sieved by p first").1 += 1;
                        }
                        i += q as usize;
                    }
                }
                q = q.saturating_mul(e.p);
            }
        }
        let mut warned = false;
        for (i, list) in lists.iter_mut().enumerate() {
            let n = lo + i as u64;
            let (cofactor_is_one, value_is_zero) = match self.poly.evaluate_i128(n as i64) {
                Some(0) => {
                    list.clear();
                    (false, true)
                }
                Some(v) => (finish_small(v.unsigned_abs(), list, self.bound), false),
                None => {
                    if !warned {
                        log::warn!("|F(n)| ≥ 2^127 near n = {n}; using arbitrary precision");
                        warned = true;
                    }
                    let v = self.poly.evaluate_i64(n as i64);
                    (finish_big(v.magnitude().clone(), list, self.bound), false)
                }
            };
            visit(SieveRow {
                n,
                factors: list,
                cofactor_is_one,
                value_is_zero,
            });
        }
    }
}

#[inline]
fn covers_all_powers(p: u64, k: u32, bound: u64) -> bool {
    checked_pow(p, k + 1).map_or(true, |q| q > bound)
}

fn finish_small(mut m: u128, list: &mut [(u64, u32)], bound: u64) -> bool {
    for (p, k) in list.iter_mut() {
        let pp = *p as u128;
        if m <= u64::MAX as u128 {
            let mut s = m as u64;
            for _ in 0..*k {
                debug_assert_eq!(s % *p, 0);
                s /= *p;
            }
            if covers_all_powers(*p, *k, bound) {
                while s % *p == 0 {
                    s /= *p;
                    *k += 1;
                }
            }
            m = s as u128;
        } else {
            for _ in 0..*k {
                debug_assert_eq!(m % pp, 0);
                m /= pp;
            }
            if covers_all_powers(*p, *k, bound) {
                while m % pp == 0 {
                    m /= pp;
                    *k += 1;
                }
            }
        }
    }
    m == 1
}

fn finish_big(mut m: BigUint, list: &mut [(u64, u32)], bound: u64) -> bool {
    for (p, k) in list.iter_mut() {
        let pb = BigUint::from(*p);
        for _ in 0..*k {
            m /= &pb;
        }
        if covers_all_powers(*p, *k, bound) {
            loop {
                let (q, r) = m.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                m = q;
                *k += 1;
            }
        }
    }
    m.is_one()
}

/// Iterator form of the sieve: yields one [`SmoothFactorization`] per `n`
/// in the configured range, segment by segment.
pub struct SmoothSieve<'a> {
    engine: SieveEngine<'a>,
    next_lo: u64,
    x_hi: u64,
    scratch: Scratch,
    buffer: VecDeque<SmoothFactorization>,
}

impl<'a> SmoothSieve<'a> {
    pub fn new(poly: &'a IntPolynomial, table: &'a RootTable, cfg: &SieveConfig) -> Result<Self> {
        cfg.validate()?;
        let engine = SieveEngine::new(poly, table, cfg.z)?.with_segment(cfg.segment);
        Ok(Self {
            engine,
            next_lo: cfg.x_lo,
            x_hi: cfg.x_hi,
            scratch: Scratch::default(),
            buffer: VecDeque::new(),
        })
    }
}

impl Iterator for SmoothSieve<'_> {
    type Item = SmoothFactorization;

    fn next(&mut self) -> Option<SmoothFactorization> {
        if self.buffer.is_empty() && self.next_lo <= self.x_hi {
            let lo = self.next_lo;
            let hi = self.x_hi.min(lo + self.engine.segment as u64 - 1);
            let bound = self.engine.bound;
            let buffer = &mut self.buffer;
            self.engine.for_each(lo, hi, &mut self.scratch, |row| {
                buffer.push_back(SmoothFactorization {
                    n: row.n,
                    factors: row.factors.to_vec(),
                    cofactor_is_one: row.cofactor_is_one,
                    value_is_zero: row.value_is_zero,
                    bound,
                })
            });
            self.next_lo = hi + 1;
        }
        self.buffer.pop_front()
    }
}

/// `smooth_sieve`: the `z`-smooth parts of `F(n)` for `n` in the range.
pub fn smooth_sieve<'a>(
    poly: &'a IntPolynomial,
    cfg: &SieveConfig,
    table: &'a RootTable,
) -> Result<SmoothSieve<'a>> {
    SmoothSieve::new(poly, table, cfg)
}

/// Divisor enumeration over a factorization, largest primes first, pruned
/// whenever the partial product leaves the window.
struct DivisorSearch {
    // descending in p
    factors: Vec<(u64, u32)>,
    // suffix[i] = product of factors[i..], saturating
    suffix: Vec<u128>,
    window: DivisorWindow,
}

impl DivisorSearch {
    fn new(factors: &[(u64, u32)], window: DivisorWindow) -> Self {
        let mut desc: Vec<(u64, u32)> = factors.iter().rev().copied().collect();
        desc.retain(|&(p, _)| p <= window.upto);
        let mut suffix = vec![1u128; desc.len() + 1];
        for i in (0..desc.len()).rev() {
            let (p, e) = desc[i];
            let pe = (p as u128).saturating_pow(e);
            suffix[i] = suffix[i + 1].saturating_mul(pe);
        }
        Self {
            factors: desc,
            suffix,
            window,
        }
    }

    fn count(&self, idx: usize, cur: u64, stop_at_first: bool) -> u64 {
        if (cur as u128).saturating_mul(self.suffix[idx]) <= self.window.above as u128 {
            return 0;
        }
        if idx == self.factors.len() {
            return u64::from(self.window.contains(cur));
        }
        let (p, e) = self.factors[idx];
        let mut total = 0;
        let mut v = cur;
        for i in 0..=e {
            total += self.count(idx + 1, v, stop_at_first);
            if stop_at_first && total > 0 {
                return total;
            }
            if i == e {
                break;
            }
            match v.checked_mul(p) {
                Some(next) if next <= self.window.upto => v = next,
                _ => break,
            }
        }
        total
    }
}

/// `τ(m; y, z)`: the number of divisors of `m` in the window, where `m` is
/// given by its factorization (primes above `z` may be omitted).
pub fn tau_in_window(factors: &[(u64, u32)], window: DivisorWindow) -> u64 {
    if window.is_empty() {
        return 0;
    }
    DivisorSearch::new(factors, window).count(0, 1, false)
}

/// Early-exit form of [`tau_in_window`].
pub fn has_divisor_in(factors: &[(u64, u32)], window: DivisorWindow) -> bool {
    if window.is_empty() {
        return false;
    }
    DivisorSearch::new(factors, window).count(0, 1, true) > 0
}

fn row_has_divisor(factors: &[(u64, u32)], value_is_zero: bool, window: DivisorWindow) -> bool {
    if value_is_zero {
        !window.is_empty()
    } else {
        has_divisor_in(factors, window)
    }
}

/// `τ(F(n); y, z)` for a sieve output.
pub fn tau_window(sf: &SmoothFactorization, y: f64, z: f64) -> Result<u64> {
    let window = DivisorWindow::new(y, z)?;
    if window.upto > sf.bound {
        return Err(Error::TableTooSmall {
            needed: window.upto,
            bound: sf.bound,
        });
    }
    if sf.value_is_zero {
        return Ok(window.upto.saturating_sub(window.above));
    }
    Ok(tau_in_window(&sf.factors, window))
}

/// An exact window count over `n ≤ x`, with the part from `(x/2, x]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CountResult {
    pub x: u64,
    pub y: f64,
    pub z: f64,
    pub count: u64,
    /// Count restricted to `⌊x/2⌋ < n ≤ x`.
    pub half_count: u64,
    /// Wall-clock seconds; left at zero by the single-threaded core.
    pub elapsed: f64,
}

/// Per-window tallies for a sub-range of `n`; summing the tallies of a
/// partition of `[1, x]` gives the counts for `x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WindowTally {
    pub count: u64,
    pub half_count: u64,
}

impl core::ops::AddAssign for WindowTally {
    fn add_assign(&mut self, rhs: Self) {
        self.count += rhs.count;
        self.half_count += rhs.half_count;
    }
}

/// Counts, for each window, the `n` in `lo..=hi` whose `F(n)` has a divisor
/// in it. `x` fixes the half-range split `n > ⌊x/2⌋`.
pub fn tally_range(
    engine: &SieveEngine<'_>,
    lo: u64,
    hi: u64,
    x: u64,
    windows: &[DivisorWindow],
    scratch: &mut Scratch,
) -> Vec<WindowTally> {
    let half = x / 2;
    let mut out = vec![WindowTally::default(); windows.len()];
    engine.for_each(lo, hi, scratch, |row| {
        for (w, t) in windows.iter().zip(out.iter_mut()) {
            if row_has_divisor(row.factors, row.value_is_zero, *w) {
                t.count += 1;
                if row.n > half {
                    t.half_count += 1;
                }
            }
        }
    });
    out
}

/// Largest window ceiling, which is the sieve bound a window set needs.
pub fn windows_bound(windows: &[DivisorWindow]) -> u64 {
    windows.iter().map(|w| w.upto).max().unwrap_or(2).max(2)
}

/// `H_F(x, y, z)` and `H_F(x, y, z) - H_F(x/2, y, z)`.
pub fn count_hf(poly: &IntPolynomial, table: &RootTable, x: u64, y: f64, z: f64) -> Result<CountResult> {
    let window = DivisorWindow::new(y, z)?;
    let t = count_hf_windows(poly, table, x, &[window])?[0];
    Ok(CountResult {
        x,
        y,
        z,
        count: t.count,
        half_count: t.half_count,
        elapsed: 0.0,
    })
}

/// One sieve pass shared by several windows.
pub fn count_hf_windows(
    poly: &IntPolynomial,
    table: &RootTable,
    x: u64,
    windows: &[DivisorWindow],
) -> Result<Vec<WindowTally>> {
    let bound = windows_bound(windows);
    let engine = SieveEngine::new(poly, table, bound)?;
    if x == 0 {
        return Ok(vec![WindowTally::default(); windows.len()]);
    }
    Ok(tally_range(&engine, 1, x, x, windows, &mut Scratch::default()))
}

/// `H(x, y, z)`: marks the multiples of every `d` in the window on a bitset.
pub fn count_h(x: u64, y: f64, z: f64) -> Result<CountResult> {
    let window = DivisorWindow::new(y, z)?;
    let t = count_h_window(x, window);
    Ok(CountResult {
        x,
        y,
        z,
        count: t.count,
        half_count: t.half_count,
        elapsed: 0.0,
    })
}

pub fn count_h_window(x: u64, window: DivisorWindow) -> WindowTally {
    let words = (x as usize + 64) / 64;
    let mut bits = vec![0u64; words];
    let top = window.upto.min(x);
    let mut d = window.above + 1;
    while d <= top {
        let mut m = d;
        while m <= x {
            bits[(m / 64) as usize] |= 1 << (m % 64);
            m += d;
        }
        d += 1;
    }
    let count = bits.iter().map(|w| w.count_ones() as u64).sum();
    let half = x / 2;
    let mut low = 0u64;
    for n in 1..=half {
        low += (bits[(n / 64) as usize] >> (n % 64)) & 1;
    }
    WindowTally {
        count,
        half_count: count - low,
    }
}

/// `h(n; X)`: the least prime `q` such that the product of the prime-power
/// parts `p^ν ‖ n` with `p ≤ q` exceeds `√X`.
///
/// `factors` is the complete factorization of `n`, ascending.
pub fn h_of(factors: &[(u64, u32)], x_param: f64) -> Result<u64> {
    if !(x_param.is_finite() && x_param >= 0.0) {
        return Err(Error::InvalidArgument("X must be finite and ≥ 0".into()));
    }
    // P > √X  ⇔  P > ⌊√X⌋ for integers P.
    let root = floor_sqrt(x_param);
    let mut acc: u128 = 1;
    for &(p, v) in factors {
        acc = acc.saturating_mul((p as u128).saturating_pow(v));
        if acc > root as u128 {
            return Ok(p);
        }
    }
    Err(Error::Domain(format!("n ≤ √X = {}", libm::sqrt(x_param))))
}

fn floor_sqrt(x: f64) -> u64 {
    let mut s = libm::floor(libm::sqrt(x)) as u64;
    while s > 0 && (s as f64) * (s as f64) > x {
        s -= 1;
    }
    while ((s + 1) as f64) * ((s + 1) as f64) <= x {
        s += 1;
    }
    s
}

/// `d = d0 d1` with every prime of `d0` at most `bound` and every prime of
/// `d1` above it.
pub fn split_d0_d1(d: u64, bound: u64) -> Result<(u64, u64)> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be ≥ 1".into()));
    }
    let mut d0 = 1u64;
    for (p, e) in arith::factor(d) {
        if p <= bound {
            d0 *= p.pow(e);
        }
    }
    Ok((d0, d / d0))
}

/// `#{n ≤ x : ∏_{p^a ‖ F(n), p ≤ v} p^a > w}`.
pub fn smooth_excess_count(poly: &IntPolynomial, table: &RootTable, x: u64, v: f64, w: f64) -> Result<u64> {
    if !(v >= 2.0 && w >= 0.0 && v.is_finite() && w.is_finite()) {
        return Err(Error::InvalidArgument("need v ≥ 2 and w ≥ 0".into()));
    }
    let bound = libm::floor(v) as u64;
    // float-to-int casts saturate
    let w_floor = libm::floor(w) as u128;
    let engine = SieveEngine::new(poly, table, bound)?;
    let mut count = 0;
    if x == 0 {
        return Ok(0);
    }
    engine.for_each(1, x, &mut Scratch::default(), |row| {
        if row.value_is_zero {
            count += 1;
            return;
        }
        let mut acc: u128 = 1;
        for &(p, a) in row.factors {
            acc = acc.saturating_mul((p as u128).saturating_pow(a));
        }
        if acc > w_floor {
            count += 1;
        }
    });
    Ok(count)
}

/// Smooth parts of `F(n)` as exact integers, for checking against naive
/// factorization.
pub fn smooth_part(sf: &SmoothFactorization) -> BigInt {
    let mut acc = BigUint::one();
    for &(p, e) in &sf.factors {
        acc *= BigUint::from(p).pow(e);
    }
    BigInt::from(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn factorization_of(f: &IntPolynomial, n: u64, z: u64) -> SmoothFactorization {
        let table = RootTable::build(f, z, 0).unwrap();
        let cfg = SieveConfig {
            x_lo: n,
            x_hi: n,
            z,
            segment: MIN_SEGMENT,
            threads: 1,
        };
        smooth_sieve(f, &cfg, &table).unwrap().next().unwrap()
    }

    #[test]
    fn sieve_examples() {
        let f = p("t^2+1");
        let sf = factorization_of(&f, 7, 25);
        assert_eq!(sf.factors, vec![(2, 1), (5, 2)]);
        assert!(sf.cofactor_is_one);
        let sf = factorization_of(&f, 3, 2);
        assert_eq!(sf.factors, vec![(2, 1)]);
        assert!(!sf.cofactor_is_one);
        let g = p("t^2-2t+2"); // g(1) = 1
        let sf = factorization_of(&g, 1, 100);
        assert!(sf.factors.is_empty() && sf.cofactor_is_one);
    }

    #[test]
    fn multiplicity_beyond_table_is_recovered() {
        // 7^2 + 1 = 50 with z = 5: table has 5^1 only, division finds 5^2.
        let f = p("t^2+1");
        let sf = factorization_of(&f, 7, 5);
        assert_eq!(sf.factors, vec![(2, 1), (5, 2)]);
    }

    #[test]
    fn tau_examples() {
        let f = p("t^2+1");
        let sf = factorization_of(&f, 7, 60);
        assert_eq!(tau_window(&sf, 9.0, 11.0).unwrap(), 1);
        assert_eq!(tau_window(&sf, 11.0, 24.0).unwrap(), 0);
        assert_eq!(tau_window(&sf, 50.0, 60.0).unwrap(), 0);
        assert_eq!(tau_window(&sf, 0.0, 50.0).unwrap(), 6);
        assert!(tau_window(&sf, 10.0, 61.0).is_err());
    }

    #[test]
    fn count_examples() {
        let f = p("t^2+1");
        let table = RootTable::build(&f, 300, 0).unwrap();
        assert_eq!(count_hf(&f, &table, 10, 200.0, 300.0).unwrap().count, 0);
        assert_eq!(count_hf(&f, &table, 100, 1.0, 2.0).unwrap().count, 50);
        assert!(matches!(
            count_hf(&f, &table, 10, 200.0, 301.0),
            Err(Error::TableTooSmall { .. })
        ));
        assert_eq!(count_h(100, 9.0, 11.0).unwrap().count, 19);
        assert_eq!(count_h(50, 1.0, 50.0).unwrap().count, 49);
        assert_eq!(count_h(50, 7.5, 7.9).unwrap().count, 0);
    }

    #[test]
    fn half_range_split() {
        let f = p("t^2+1");
        let table = RootTable::build(&f, 200, 0).unwrap();
        let full = count_hf(&f, &table, 999, 30.0, 60.0).unwrap();
        let lower = count_hf(&f, &table, 499, 30.0, 60.0).unwrap();
        assert_eq!(full.half_count + lower.count, full.count);
        let hfull = count_h(999, 30.0, 60.0).unwrap();
        let hlower = count_h(499, 30.0, 60.0).unwrap();
        assert_eq!(hfull.half_count + hlower.count, hfull.count);
    }

    #[test]
    fn h_of_examples() {
        assert_eq!(h_of(&[(2, 10), (3, 1)], 100.0).unwrap(), 2);
        assert_eq!(h_of(&[(3, 1), (5, 1), (7, 1)], 100.0).unwrap(), 5);
        assert_eq!(h_of(&[(101, 1)], 100.0).unwrap(), 101);
        assert!(h_of(&[(2, 1), (5, 1)], 100.0).is_err());
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_d0_d1(2648, 320).unwrap(), (8, 331));
        assert_eq!(split_d0_d1(35, 320).unwrap(), (35, 1));
        assert_eq!(split_d0_d1(331, 320).unwrap(), (1, 331));
    }

    #[test]
    fn smooth_excess_examples() {
        let f = p("t^2+1");
        let table = RootTable::build(&f, 10, 0).unwrap();
        assert_eq!(smooth_excess_count(&f, &table, 1000, 2.0, 1.0).unwrap(), 500);
        assert_eq!(smooth_excess_count(&f, &table, 100, 10.0, 10_001.0).unwrap(), 0);
    }

    #[test]
    fn zero_values_count_in_every_window() {
        // F(t) = t - 5 vanishes at n = 5.
        let f = p("t-5");
        let table = RootTable::build(&f, 50, 0).unwrap();
        let sf = factorization_of(&f, 5, 50);
        assert!(sf.value_is_zero);
        assert_eq!(tau_window(&sf, 10.0, 20.0).unwrap(), 10);
        let c = count_hf(&f, &table, 6, 40.0, 50.0).unwrap();
        assert_eq!(c.count, 1);
    }
}
