//! Greedy partition of the primes above `D = 10 g D_F²` into blocks
//! `E_j = (λ_{j-1}, λ_j]` carrying `Σ ρ(p)/p ≈ log 2` each, and the sums
//! `T_k(z)` restricted to a fixed number of prime factors.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::arith::{self, CompensatedSum};
use crate::cluster::{ClusteredSumPlan, SquarefreeSum, SumWeight};
use crate::{Error, IntPolynomial, Result, RootTable};

/// Slack allowed when admitting a prime into a block.
pub const ADMIT_SLACK: f64 = 1e-12;

/// `D = 10 g D_F²`.
pub fn bad_prime_cutoff(poly: &IntPolynomial) -> Result<u64> {
    let d = poly.discriminant();
    let v = (d * d) * 10u32 * poly.degree() as u32;
    v.to_u64().ok_or(Error::Overflow("10 g D_F² exceeds 64 bits"))
}

/// `Q = ∏_{p ≤ D} p`.
pub fn primorial(d: u64) -> BigUint {
    let mut q = BigUint::one();
    for p in arith::primes_up_to(d) {
        q *= p;
    }
    q
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionBlock {
    /// Right end `λ_j` (the largest prime admitted).
    pub lambda: u64,
    pub block_sum: f64,
    pub prime_count: u64,
    /// `false` for a final block cut short at `z` before reaching `log 2`.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionTable {
    pub d: u64,
    pub z: u64,
    /// `[λ_0 = D, λ_1, …, λ_J]`.
    pub lambdas: Vec<u64>,
    /// `blocks[j - 1]` is `E_j`.
    pub blocks: Vec<PartitionBlock>,
}

impl PartitionTable {
    /// `Q`, the primorial of `D`.
    pub fn q(&self) -> BigUint {
        primorial(self.d)
    }

    pub fn complete_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| b.complete).count()
    }

    /// Index `j ≥ 1` of the block holding `p`, for `D < p ≤ λ_J`.
    pub fn block_of(&self, p: u64) -> Option<usize> {
        if p <= self.d {
            return None;
        }
        let j = self.lambdas.partition_point(|&l| l < p);
        (j < self.lambdas.len()).then_some(j)
    }

    /// CSV rows `(j, λ_j, block sum, log₂ log λ_j − j)`; the block sum of
    /// `j = 0` is reported as 0.
    pub fn rows(&self) -> Vec<(usize, u64, f64, f64)> {
        self.lambdas
            .iter()
            .enumerate()
            .map(|(j, &l)| {
                let sum = if j == 0 { 0.0 } else { self.blocks[j - 1].block_sum };
                (j, l, sum, doubling_deviation(l, j))
            })
            .collect()
    }
}

fn doubling_deviation(lambda: u64, j: usize) -> f64 {
    libm::log2(libm::log(lambda as f64)) - j as f64
}

/// Greedy blocks for the primes in `(D, z]`; the table must reach `z`.
pub fn build_partition(poly: &IntPolynomial, table: &RootTable, z: u64) -> Result<PartitionTable> {
    let d = bad_prime_cutoff(poly)?;
    if d < 2 {
        return Err(Error::Domain("D < 2".into()));
    }
    table.require(z)?;
    let threshold = core::f64::consts::LN_2 + ADMIT_SLACK;
    let mut lambdas = alloc::vec![d];
    let mut blocks = Vec::new();
    let mut sum = CompensatedSum::new();
    let mut count = 0u64;
    let mut last = d;
    for e in table.primes_up_to(z) {
        if e.p <= d {
            continue;
        }
        let v = e.count() as f64 / e.p as f64;
        if count > 0 && sum.value() + v > threshold {
            blocks.push(PartitionBlock {
                lambda: last,
                block_sum: sum.value(),
                prime_count: count,
                complete: true,
            });
            lambdas.push(last);
            sum = CompensatedSum::new();
            count = 0;
        }
        sum.add(v);
        count += 1;
        last = e.p;
    }
    if count > 0 {
        blocks.push(PartitionBlock {
            lambda: last,
            block_sum: sum.value(),
            prime_count: count,
            complete: false,
        });
        lambdas.push(last);
    }
    Ok(PartitionTable {
        d,
        z,
        lambdas,
        blocks,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoublingReport {
    /// `max_j |log₂ log λ_j − j|` over `j = 0..=J`.
    pub c5_hat: f64,
    pub deviations: Vec<f64>,
    pub strictly_increasing: bool,
    /// `log λ_{j+1} / log λ_j ∈ [2^{1−2ĉ}, 2^{1+2ĉ}]` for every `j < J`.
    pub ratios_within: bool,
    /// The last block was cut short at `z`, so `λ_J` is the largest prime
    /// up to `z` rather than a greedy end point.
    pub last_truncated: bool,
}

/// Empirical constant in `2^{j−c} ≤ log λ_j ≤ 2^{j+c}`.
///
/// Blocks grow doubly exponentially (`λ_1 ≈ 1.3·10⁵` for `t²+1`), so at
/// practical `z` the table holds one or two blocks and the last one is
/// usually truncated; it is included and flagged.
pub fn doubling_check(table: &PartitionTable) -> Result<DoublingReport> {
    let lambdas = &table.lambdas;
    if lambdas.len() < 2 {
        return Err(Error::Domain("doubling check needs at least one block above D".into()));
    }
    let deviations: Vec<f64> = lambdas
        .iter()
        .enumerate()
        .map(|(j, &l)| doubling_deviation(l, j))
        .collect();
    let c5_hat = deviations.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let logs: Vec<f64> = lambdas.iter().map(|&l| libm::log(l as f64)).collect();
    let strictly_increasing = logs.windows(2).all(|w| w[0] < w[1]);
    let lo = libm::exp2(1.0 - 2.0 * c5_hat);
    let hi = libm::exp2(1.0 + 2.0 * c5_hat);
    let ratios_within = logs.windows(2).all(|w| {
        let r = w[1] / w[0];
        r >= lo * (1.0 - 1e-12) && r <= hi * (1.0 + 1e-12)
    });
    Ok(DoublingReport {
        c5_hat,
        deviations,
        strictly_increasing,
        ratios_within,
        last_truncated: table.blocks.last().is_some_and(|b| !b.complete),
    })
}

/// `T_k(z) = Σ_{a ∈ 𝒫(D, z), ω(a) = k, a ≤ A_max} L(a; η) ρ(a) / φ_F(a)`.
pub fn t_k_sum(
    poly: &IntPolynomial,
    table: &RootTable,
    z: f64,
    eta: f64,
    k: u32,
    a_max: u64,
) -> Result<SquarefreeSum> {
    let d = bad_prime_cutoff(poly)? as f64;
    if z <= d {
        // 𝒫(D, z) = {1}
        return Ok(SquarefreeSum {
            value: if k == 0 { eta } else { 0.0 },
            terms: u64::from(k == 0),
            last_decade: 0.0,
            a_max,
        });
    }
    Ok(ClusteredSumPlan::new(table, d, z, eta, a_max, SumWeight::PhiF, Some(k))?.evaluate())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_for_gaussian_polynomial() {
        let f: IntPolynomial = "t^2+1".parse().unwrap();
        assert_eq!(bad_prime_cutoff(&f).unwrap(), 320);
        assert_eq!(primorial(10), BigUint::from(210u32));
    }

    #[test]
    fn blocks_close_greedily() {
        let f: IntPolynomial = "t^2+1".parse().unwrap();
        let table = RootTable::build(&f, 200_000, 0).unwrap();
        let part = build_partition(&f, &table, 200_000).unwrap();
        assert_eq!(part.lambdas[0], 320);
        assert!(part.complete_blocks() >= 1);
        for b in &part.blocks {
            assert!(b.block_sum <= core::f64::consts::LN_2 + ADMIT_SLACK);
        }
        assert_eq!(part.block_of(320), None);
        assert_eq!(part.block_of(321), Some(1));
        let rep = doubling_check(&part).unwrap();
        assert!(rep.strictly_increasing && rep.ratios_within && rep.last_truncated);
        assert!((rep.deviations[0] - libm::log2(libm::log(320.0))).abs() < 1e-15);
    }

    #[test]
    fn t0_is_eta() {
        let f: IntPolynomial = "t^2+1".parse().unwrap();
        let table = RootTable::build(&f, 2000, 0).unwrap();
        let s = t_k_sum(&f, &table, 2000.0, 0.37, 0, 10_000).unwrap();
        assert_eq!(s.value, 0.37);
        assert_eq!(s.terms, 1);
    }
}
