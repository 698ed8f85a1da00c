//! Roots of `F` modulo prime powers and the arithmetic built on them: the
//! multiplicative root count `ρ(d)`, the Euler-like `φ_F(n)`, the prime sum
//! `Σ ρ(p)/p` and the mean value of `ρ`.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::SeedableRng;
use rand_xorshift::XorShiftRng;

use crate::arith::{self, checked_pow, inv_mod, mul_mod, sub_mod, CompensatedSum};
use crate::{modpoly, Error, IntPolynomial, Result};

/// Below this prime, roots are found by scanning every residue.
pub const EXHAUSTIVE_SCAN_BELOW: u64 = 1000;

/// Per-prime seed derived from a master seed, so that any partition of the
/// primes over workers produces the same splitting sequence.
pub fn prime_seed(master: u64, p: u64) -> u64 {
    arith::splitmix64(master ^ arith::splitmix64(p))
}

/// Sorted roots of `F` modulo the prime `p`, seeded from master seed 0.
pub fn roots_mod_p(f: &IntPolynomial, p: u64) -> Result<Vec<u64>> {
    roots_mod_p_seeded(f, p, 0)
}

pub fn roots_mod_p_seeded(f: &IntPolynomial, p: u64, seed: u64) -> Result<Vec<u64>> {
    let reduced = f.coeffs_mod(p);
    if p < EXHAUSTIVE_SCAN_BELOW {
        return Ok((0..p).filter(|&r| modpoly::eval(&reduced, r, p) == 0).collect());
    }
    let mut rng = XorShiftRng::seed_from_u64(prime_seed(seed, p));
    modpoly::roots(&reduced, p, &mut rng)
}

/// Sorted roots of `F` modulo `p^k`, by Hensel lifting from the roots
/// modulo `p`.
pub fn roots_mod_pk(f: &IntPolynomial, p: u64, k: u32) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::InvalidArgument("prime power exponent must be ≥ 1".into()));
    }
    let levels = lift_all(f, p, roots_mod_p(f, p)?, k)?;
    Ok(levels.into_iter().next_back().unwrap_or_default())
}

/// Given the roots modulo `p`, returns the root lists modulo `p, p^2, …,
/// p^k`.
fn lift_all(f: &IntPolynomial, p: u64, base: Vec<u64>, k: u32) -> Result<Vec<Vec<u64>>> {
    let top = checked_pow(p, k)
        .filter(|&m| m < 1 << 63)
        .ok_or(Error::Overflow("prime power exceeds 63 bits"))?;
    let deriv_mod_p = {
        let mut d: Vec<u64> = f
            .derivative()
            .iter()
            .map(|c| {
                use num_integer::Integer;
                use num_traits::ToPrimitive;
                c.mod_floor(&num_bigint::BigInt::from(p)).to_u64().unwrap()
            })
            .collect();
        modpoly::trim(&mut d);
        d
    };
    let coeffs_top = f.coeffs_mod(top);
    let mut levels = Vec::with_capacity(k as usize);
    levels.push(base);
    let mut prev_mod = p;
    for _ in 1..k {
        let m = prev_mod * p;
        let coeffs: Vec<u64> = coeffs_top.iter().map(|&c| c % m).collect();
        let prev = levels.last().expect("nonempty");
        let mut next = Vec::with_capacity(prev.len());
        for &r in prev {
            if modpoly::eval(&deriv_mod_p, r % p, p) != 0 {
                // Nonsingular: the Newton step gives the unique lift.
                let fr = modpoly::eval(&coeffs, r, m);
                let dr = derivative_at(&coeffs, r, m);
                let inv = inv_mod(dr, m).expect("derivative is a unit");
                next.push(sub_mod(r, mul_mod(fr, inv, m), m));
            } else {
                for j in 0..p {
                    let c = r + j * prev_mod;
                    if modpoly::eval(&coeffs, c, m) == 0 {
                        next.push(c);
                    }
                }
            }
        }
        next.sort_unstable();
        levels.push(next);
        prev_mod = m;
    }
    Ok(levels)
}

fn derivative_at(coeffs: &[u64], x: u64, m: u64) -> u64 {
    let mut acc = 0u64;
    for (i, &c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = arith::add_mod(mul_mod(acc, x, m), mul_mod(c, i as u64 % m, m), m);
    }
    acc
}

/// `ρ(d)`, the number of residues `n mod d` with `d | F(n)`.
pub fn rho(f: &IntPolynomial, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidArgument("ρ(0) is undefined".into()));
    }
    arith::factor(d).into_iter().try_fold(1u64, |acc, (p, e)| {
        let c = roots_mod_pk(f, p, e)?.len() as u64;
        Ok(acc * c)
    })
}

/// `φ_F(n) = n ∏_{p|n} (1 - ρ(p)/p)`.
///
/// Always an integer: it equals `(n / rad n) ∏_{p|n} (p - ρ(p))`. It is zero
/// when some `p | n` has `ρ(p) = p`.
pub fn phi_f(f: &IntPolynomial, n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArgument("φ_F(0) is undefined".into()));
    }
    let mut acc = n as u128;
    for (p, _) in arith::factor(n) {
        let r = roots_mod_p(f, p)?.len() as u128;
        acc = acc / p as u128 * (p as u128 - r);
    }
    Ok(acc)
}

/// `Σ_{p ≤ x} ρ(p)/p`, summed with compensation.
pub fn mertens_sum(f: &IntPolynomial, x: u64) -> Result<f64> {
    if x < 2 {
        return Err(Error::InvalidArgument("mertens_sum needs x ≥ 2".into()));
    }
    let mut sum = CompensatedSum::new();
    for p in arith::primes_up_to(x) {
        let r = roots_mod_p(f, p)?.len();
        sum.add(r as f64 / p as f64);
    }
    Ok(sum.value())
}

/// Roots of `F` modulo every power of one prime up to the table bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRoots {
    pub p: u64,
    /// `powers[k - 1]` holds the sorted roots modulo `p^k`.
    pub powers: Vec<Vec<u64>>,
}

impl PrimeRoots {
    pub fn compute(f: &IntPolynomial, p: u64, bound: u64, seed: u64) -> Result<Self> {
        let mut k = 1;
        while checked_pow(p, k + 1).is_some_and(|q| q <= bound) {
            k += 1;
        }
        let base = roots_mod_p_seeded(f, p, seed)?;
        let powers = lift_all(f, p, base, k)?;
        Ok(Self { p, powers })
    }

    /// `ρ(p)`.
    pub fn count(&self) -> usize {
        self.powers[0].len()
    }

    /// Largest `k` with `p^k` in the table.
    pub fn max_power(&self) -> u32 {
        self.powers.len() as u32
    }
}

/// Roots of `F` modulo all prime powers `p^k ≤ bound`.
///
/// Built once (optionally in parallel through [`RootTable::compute_primes`]
/// and [`RootTable::from_parts`]) and read-only afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootTable {
    bound: u64,
    seed: u64,
    degree: usize,
    primes: Vec<PrimeRoots>,
}

impl RootTable {
    pub fn build(f: &IntPolynomial, bound: u64, seed: u64) -> Result<Self> {
        let primes = arith::primes_up_to(bound);
        let parts = Self::compute_primes(f, &primes, bound, seed)?;
        Ok(Self::from_parts(f.degree(), bound, seed, parts))
    }

    /// Root data for a slice of the primes below `bound`; the unit of work
    /// for parallel construction.
    pub fn compute_primes(
        f: &IntPolynomial,
        primes: &[u64],
        bound: u64,
        seed: u64,
    ) -> Result<Vec<PrimeRoots>> {
        primes
            .iter()
            .map(|&p| PrimeRoots::compute(f, p, bound, seed))
            .collect()
    }

    pub fn from_parts(degree: usize, bound: u64, seed: u64, mut primes: Vec<PrimeRoots>) -> Self {
        primes.sort_unstable_by_key(|e| e.p);
        Self {
            bound,
            seed,
            degree,
            primes,
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn primes(&self) -> &[PrimeRoots] {
        &self.primes
    }

    pub fn prime(&self, p: u64) -> Option<&PrimeRoots> {
        self.primes
            .binary_search_by_key(&p, |e| e.p)
            .ok()
            .map(|i| &self.primes[i])
    }

    /// Roots modulo `p^k`, if tabulated.
    pub fn roots(&self, p: u64, k: u32) -> Option<&[u64]> {
        let e = self.prime(p)?;
        e.powers.get(k.checked_sub(1)? as usize).map(Vec::as_slice)
    }

    /// Entries with prime power `≤ limit`, in increasing `p`, each with its
    /// powers in increasing `k`.
    pub fn primes_up_to(&self, limit: u64) -> &[PrimeRoots] {
        let end = self.primes.partition_point(|e| e.p <= limit);
        &self.primes[..end]
    }

    /// All `(p^k, p, k, roots)` records ordered by the prime power.
    pub fn records(&self) -> Vec<(u64, u64, u32, &[u64])> {
        let mut out = Vec::new();
        for e in &self.primes {
            for (i, r) in e.powers.iter().enumerate() {
                let k = i as u32 + 1;
                out.push((checked_pow(e.p, k).unwrap(), e.p, k, r.as_slice()));
            }
        }
        out.sort_unstable_by_key(|r| r.0);
        out
    }

    /// `ρ(d)`, falling back to direct lifting for prime powers above the
    /// table bound.
    pub fn rho(&self, f: &IntPolynomial, d: u64) -> Result<u64> {
        if d == 0 {
            return Err(Error::InvalidArgument("ρ(0) is undefined".into()));
        }
        let mut acc = 1u64;
        for (p, e) in arith::factor(d) {
            let c = match self.roots(p, e) {
                Some(r) => r.len() as u64,
                None => roots_mod_pk(f, p, e)?.len() as u64,
            };
            acc = acc.checked_mul(c).ok_or(Error::Overflow("ρ(d)"))?;
        }
        Ok(acc)
    }

    /// `Σ_{p ≤ x} ρ(p)/p` from the table.
    pub fn mertens_sum(&self, x: u64) -> Result<f64> {
        if x < 2 {
            return Err(Error::InvalidArgument("mertens_sum needs x ≥ 2".into()));
        }
        self.require(x)?;
        let sum: CompensatedSum = self
            .primes_up_to(x)
            .iter()
            .map(|e| e.count() as f64 / e.p as f64)
            .collect();
        Ok(sum.value())
    }

    /// `ρ(d)` for every `0 ≤ d ≤ x` (index 0 unused), by a smallest-prime-
    /// factor sieve and multiplicativity.
    pub fn rho_values_upto(&self, x: u64) -> Result<Vec<u32>> {
        self.require(x)?;
        let n = x as usize;
        let mut by_power = vec![0u32; n + 1];
        for e in self.primes_up_to(x) {
            let mut q = e.p;
            for r in &e.powers {
                if q > x {
                    break;
                }
                by_power[q as usize] = r.len() as u32;
                q = q.saturating_mul(e.p);
            }
        }
        let mut spf = vec![0u32; n + 1];
        for e in self.primes_up_to(arith::isqrt(x)) {
            let p = e.p as usize;
            let mut m = p * p;
            while m <= n {
                if spf[m] == 0 {
                    spf[m] = p as u32;
                }
                m += p;
            }
        }
        let mut rho = vec![0u32; n + 1];
        if n >= 1 {
            rho[1] = 1;
        }
        for d in 2..=n {
            let p = if spf[d] == 0 { d } else { spf[d] as usize };
            let mut m = d;
            while m % p == 0 {
                m /= p;
            }
            rho[d] = rho[m].saturating_mul(by_power[d / m]);
        }
        Ok(rho)
    }

    /// `Σ_{d ≤ x} ρ(d)`.
    pub fn sum_rho_upto(&self, x: u64) -> Result<u64> {
        Ok(self
            .rho_values_upto(x)?
            .iter()
            .skip(1)
            .map(|&r| r as u64)
            .sum())
    }

    pub(crate) fn require(&self, needed: u64) -> Result<()> {
        if needed > self.bound {
            Err(Error::TableTooSmall {
                needed,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }
}

/// Empirical stand-ins for the Mertens-type constant and the mean value of
/// `ρ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimatedConstants {
    /// `Σ_{p ≤ x} ρ(p)/p - log log x` at the top of the fit range.
    pub c1_hat: f64,
    /// `(Σ_{d ≤ x} ρ(d)) / x` at the top of the fit range.
    pub af_hat: f64,
    pub fit_range: (u64, u64),
}

impl EstimatedConstants {
    pub fn fit(table: &RootTable, x_max: u64) -> Result<Self> {
        if x_max < 10_000 {
            return Err(Error::InvalidArgument("fit_constants needs x_max ≥ 10^4".into()));
        }
        let lx = libm::log(libm::log(x_max as f64));
        let c1_hat = table.mertens_sum(x_max)? - lx;
        let af_hat = table.sum_rho_upto(x_max)? as f64 / x_max as f64;
        Ok(Self {
            c1_hat,
            af_hat,
            fit_range: (2, x_max),
        })
    }

    /// `Σ_{p ≤ x} ρ(p)/p - log log x - c1_hat`.
    pub fn mertens_residual(&self, table: &RootTable, x: u64) -> Result<f64> {
        Ok(table.mertens_sum(x)? - libm::log(libm::log(x as f64)) - self.c1_hat)
    }
}

/// Builds a table to `x_max` and fits both constants.
pub fn fit_constants(f: &IntPolynomial, x_max: u64, seed: u64) -> Result<EstimatedConstants> {
    let table = RootTable::build(f, x_max, seed)?;
    EstimatedConstants::fit(&table, x_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn scan(f: &IntPolynomial, m: u64) -> Vec<u64> {
        (0..m)
            .filter(|&r| (f.evaluate_i64(r as i64) % m as i64) == num_bigint::BigInt::from(0))
            .collect()
    }

    #[test]
    fn roots_mod_prime_examples() {
        let f = p("t^2+1");
        assert_eq!(roots_mod_p(&f, 5).unwrap(), vec![2, 3]);
        assert_eq!(roots_mod_p(&f, 3).unwrap(), Vec::<u64>::new());
        assert_eq!(roots_mod_p(&f, 2).unwrap(), vec![1]);
    }

    #[test]
    fn large_prime_path_matches_scan() {
        let f = p("t^3+t+1");
        for q in arith::primes_in(1000, 1400) {
            assert_eq!(roots_mod_p(&f, q).unwrap(), scan(&f, q), "p = {q}");
        }
    }

    #[test]
    fn roots_mod_prime_power_examples() {
        let f = p("t^2+1");
        assert_eq!(roots_mod_pk(&f, 5, 2).unwrap(), vec![7, 18]);
        assert!(roots_mod_pk(&f, 3, 2).unwrap().is_empty());
        assert!(roots_mod_pk(&f, 2, 2).unwrap().is_empty());
        assert!(roots_mod_pk(&f, 2, 0).is_err());
    }

    #[test]
    fn singular_roots_lift_by_enumeration() {
        // t^2 - 2t + 9 has D = -32; 2 | D.
        let f = p("t^2-2t+9");
        for k in 1..=7 {
            let m = 1u64 << k;
            assert_eq!(roots_mod_pk(&f, 2, k).unwrap(), scan(&f, m), "k = {k}");
        }
        let g = p("t^3-2");
        for k in 1..=4 {
            assert_eq!(roots_mod_pk(&g, 3, k).unwrap(), scan(&g, 3u64.pow(k)));
        }
    }

    #[test]
    fn rho_and_phi_examples() {
        let f = p("t^2+1");
        assert_eq!(rho(&f, 1).unwrap(), 1);
        assert_eq!(rho(&f, 65).unwrap(), 4);
        assert_eq!(rho(&f, 3).unwrap(), 0);
        assert!(rho(&f, 0).is_err());
        assert_eq!(phi_f(&f, 1).unwrap(), 1);
        assert_eq!(phi_f(&f, 5).unwrap(), 3);
        assert_eq!(phi_f(&f, 15).unwrap(), 9);
    }

    #[test]
    fn mertens_examples() {
        let f = p("t^2+1");
        assert_eq!(mertens_sum(&f, 2).unwrap(), 0.5);
        assert_eq!(mertens_sum(&f, 4).unwrap(), 0.5);
        assert!((mertens_sum(&f, 5).unwrap() - 0.9).abs() < 1e-15);
        let table = RootTable::build(&f, 100, 0).unwrap();
        assert_eq!(table.mertens_sum(97).unwrap(), mertens_sum(&f, 97).unwrap());
    }

    #[test]
    fn table_rho_values_match_direct() {
        let f = p("t^2-t+1");
        let table = RootTable::build(&f, 2000, 3).unwrap();
        let vals = table.rho_values_upto(2000).unwrap();
        for d in 1..=2000u64 {
            assert_eq!(vals[d as usize] as u64, rho(&f, d).unwrap(), "d = {d}");
        }
        assert!(table.rho_values_upto(2001).is_err());
    }

    #[test]
    fn linear_polynomial_has_unit_density() {
        let f = p("t");
        let c = fit_constants(&f, 20_000, 0).unwrap();
        assert_eq!(c.af_hat, 1.0);
    }
}
