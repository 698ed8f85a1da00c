//! Clustering of divisors on the logarithmic scale.
//!
//! For `σ > 0`, `𝓛(a; σ)` is the set of real `x` such that `a` has a divisor
//! in `(e^x, e^{x+σ}]`, i.e. the union of `[log d - σ, log d)` over `d | a`.
//! Its Lebesgue measure `L(a; σ)` and the close-pair count `W(a; σ)` feed
//! the truncated squarefree sums `Σ L(a; η) ρ(a) / a` and
//! `Σ L(a; η) ρ(a) / φ_F(a)`.

use alloc::vec::Vec;

use crate::arith::{self, CompensatedSum};
use crate::{Error, Result, RootTable};

/// Relative tolerance for comparisons between computed measures.
pub const REL_TOL: f64 = 1e-9;

/// Sorted, disjoint, non-touching half-open intervals `[lo, hi)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    /// Normalizes arbitrary intervals: empty ones dropped, overlapping or
    /// touching ones merged.
    pub fn from_intervals<I: IntoIterator<Item = (f64, f64)>>(iter: I) -> Self {
        let mut v: Vec<(f64, f64)> = iter.into_iter().filter(|(lo, hi)| lo < hi).collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
        for (lo, hi) in v {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        Self { intervals: out }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn measure(&self) -> f64 {
        let s: CompensatedSum = self.intervals.iter().map(|(lo, hi)| hi - lo).collect();
        s.value()
    }

    pub fn contains(&self, x: f64) -> bool {
        let i = self.intervals.partition_point(|iv| iv.1 <= x);
        self.intervals.get(i).is_some_and(|iv| iv.0 <= x)
    }
}

/// All divisors of `∏ p^e`, ascending.
pub fn divisors(factors: &[(u64, u32)]) -> Vec<u64> {
    let mut divs = alloc::vec![1u64];
    for &(p, e) in factors {
        let base = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(base.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

pub fn divisors_of(a: u64) -> Vec<u64> {
    divisors(&arith::factor(a))
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("σ must be a positive real".into()))
    }
}

/// `𝓛(a; σ)` from the sorted divisor list of `a`.
pub fn script_l(divisors: &[u64], sigma: f64) -> Result<IntervalUnion> {
    check_sigma(sigma)?;
    Ok(IntervalUnion::from_intervals(divisors.iter().map(|&d| {
        let l = libm::log(d as f64);
        (l - sigma, l)
    })))
}

/// `L(a; σ)`. With the log-divisors sorted, the union has measure
/// `σ + Σ min(σ, gap)` over consecutive gaps.
pub fn cluster_measure(divisors: &[u64], sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(measure_sorted(divisors, sigma))
}

fn measure_sorted(divisors: &[u64], sigma: f64) -> f64 {
    let mut s = CompensatedSum::new();
    let mut prev: Option<f64> = None;
    for &d in divisors {
        let l = libm::log(d as f64);
        match prev {
            None => s.add(sigma),
            Some(q) => s.add(sigma.min(l - q)),
        }
        prev = Some(l);
    }
    s.value()
}

/// `W(a; σ)`: ordered pairs of divisors `(d, d')` with `|log(d/d')| ≤ σ`.
pub fn w_count(divisors: &[u64], sigma: f64) -> Result<u64> {
    check_sigma(sigma)?;
    let logs: Vec<f64> = divisors.iter().map(|&d| libm::log(d as f64)).collect();
    let mut close_pairs = 0u64;
    let mut hi = 0usize;
    for i in 0..logs.len() {
        if hi < i {
            hi = i;
        }
        while hi + 1 < logs.len() && logs[hi + 1] - logs[i] <= sigma {
            hi += 1;
        }
        close_pairs += (hi - i) as u64;
    }
    Ok(logs.len() as u64 + 2 * close_pairs)
}

/// One evaluated inequality `lhs ≤ rhs` (or `≥`, per the check).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CheckOutcome {
    Evaluated(Inequality),
    NotApplicable(&'static str),
}

impl CheckOutcome {
    /// `false` only for an evaluated inequality that fails.
    pub fn is_ok(&self) -> bool {
        match self {
            CheckOutcome::Evaluated(i) => i.holds,
            CheckOutcome::NotApplicable(_) => true,
        }
    }
}

fn at_most(lhs: f64, rhs: f64) -> Inequality {
    let slack = REL_TOL * lhs.abs().max(rhs.abs());
    Inequality {
        lhs,
        rhs,
        holds: lhs <= rhs + slack,
    }
}

/// The three elementary bounds on `L`:
/// (i) `L(ab; σ) ≤ τ(b) L(a; σ)` for coprime `a, b`;
/// (ii) `L(p_1⋯p_k; σ) ≤ min_j 2^{k-j} (log(p_1⋯p_j) + σ)` for squarefree `a`;
/// (iii) `L(a; σ) ≥ σ (2τ(a) - W(a; σ))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma26Report {
    pub coprime_product: CheckOutcome,
    pub squarefree_bound: CheckOutcome,
    pub isolated_divisors: CheckOutcome,
}

impl Lemma26Report {
    pub fn all_hold(&self) -> bool {
        self.coprime_product.is_ok() && self.squarefree_bound.is_ok() && self.isolated_divisors.is_ok()
    }
}

/// `2^{k-j} (log(p_1⋯p_j) + σ)` for ascending distinct primes.
pub fn squarefree_bound_at(primes: &[u64], j: usize, sigma: f64) -> f64 {
    let k = primes.len();
    let log_prefix: f64 = primes[..j].iter().map(|&p| libm::log(p as f64)).sum();
    libm::ldexp(log_prefix + sigma, (k - j) as i32)
}

pub fn lemma26_check(a: u64, b: u64, sigma: f64) -> Result<Lemma26Report> {
    check_sigma(sigma)?;
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("a and b must be positive".into()));
    }
    let fa = arith::factor(a);
    let da = divisors(&fa);
    let la = measure_sorted(&da, sigma);

    let coprime_product = if arith::gcd(a, b) != 1 {
        CheckOutcome::NotApplicable("gcd(a, b) ≠ 1")
    } else {
        let ab = a
            .checked_mul(b)
            .ok_or(Error::Overflow("a·b exceeds 64 bits"))?;
        let lab = measure_sorted(&divisors_of(ab), sigma);
        let tau_b = divisors_of(b).len() as f64;
        CheckOutcome::Evaluated(at_most(lab, tau_b * la))
    };

    let squarefree_bound = if fa.iter().any(|&(_, e)| e > 1) {
        CheckOutcome::NotApplicable("a is not squarefree")
    } else {
        let primes: Vec<u64> = fa.iter().map(|&(p, _)| p).collect();
        let bound = (0..=primes.len())
            .map(|j| squarefree_bound_at(&primes, j, sigma))
            .fold(f64::INFINITY, f64::min);
        CheckOutcome::Evaluated(at_most(la, bound))
    };

    let w = w_count(&da, sigma)? as f64;
    let lower = sigma * (2.0 * da.len() as f64 - w);
    let isolated_divisors = CheckOutcome::Evaluated(Inequality {
        lhs: la,
        rhs: lower,
        holds: lower <= la + REL_TOL * la.abs().max(lower.abs()),
    });

    Ok(Lemma26Report {
        coprime_product,
        squarefree_bound,
        isolated_divisors,
    })
}

/// Weight applied to each squarefree `a` in a clustered sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumWeight {
    /// `1/a`
    Reciprocal,
    /// `1/φ_F(a)`
    PhiF,
}

/// A truncated sum over squarefree `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquarefreeSum {
    pub value: f64,
    pub terms: u64,
    /// Contribution of the terms with `a_max/10 < a ≤ a_max`; a heuristic
    /// for the size of the truncated tail, not a bound.
    pub last_decade: f64,
    pub a_max: u64,
}

/// Partial result of one branch of the enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BranchSum {
    pub value: f64,
    pub terms: u64,
    pub last_decade: f64,
}

/// Enumeration plan for `Σ L(a; η) ρ(a) w(a)` over squarefree `a ≤ a_max`
/// composed of primes in `(r, t]` with `ρ(a) > 0`, optionally restricted to
/// `ω(a) = k`.
///
/// Branch 0 is `a = 1`; branch `i ≥ 1` holds the `a` whose least prime is
/// the `i`-th admissible prime. Branches are independent, and
/// [`ClusteredSumPlan::combine`] merges them in index order, so any
/// evaluation schedule yields the same bits.
#[derive(Clone, Debug)]
pub struct ClusteredSumPlan {
    primes: Vec<(u64, u64)>,
    eta: f64,
    a_max: u64,
    weight: SumWeight,
    omega: Option<u32>,
}

impl ClusteredSumPlan {
    pub fn new(
        table: &RootTable,
        r: f64,
        t: f64,
        eta: f64,
        a_max: u64,
        weight: SumWeight,
        omega: Option<u32>,
    ) -> Result<Self> {
        check_sigma(eta)?;
        if !(r < t) {
            return Err(Error::InvalidArgument("need r < t".into()));
        }
        if a_max < 1 {
            return Err(Error::InvalidArgument("A_max must be ≥ 1".into()));
        }
        let lo = if r < 0.0 { 0 } else { libm::floor(r) as u64 };
        let hi = libm::floor(t) as u64;
        let cap = hi.min(a_max);
        table.require(cap)?;
        let mut primes = Vec::new();
        for e in table.primes_up_to(cap) {
            if e.p <= lo {
                continue;
            }
            let rho = e.count() as u64;
            if rho == 0 {
                continue;
            }
            if weight == SumWeight::PhiF && rho >= e.p {
                return Err(Error::Domain(alloc::format!("φ_F vanishes at p = {}", e.p)));
            }
            primes.push((e.p, rho));
        }
        Ok(Self {
            primes,
            eta,
            a_max,
            weight,
            omega,
        })
    }

    pub fn branch_count(&self) -> usize {
        self.primes.len() + 1
    }

    pub fn branch(&self, index: usize) -> BranchSum {
        let mut acc = Accumulator {
            plan: self,
            sum: CompensatedSum::new(),
            tail: CompensatedSum::new(),
            terms: 0,
        };
        if index == 0 {
            if self.omega.map_or(true, |k| k == 0) {
                acc.visit(1, &[1], 1.0, 1.0);
            }
        } else {
            let (p, rho) = self.primes[index - 1];
            let phi = (p - rho) as f64;
            acc.descend(index - 1, p, &[1, p], rho as f64, phi, 1);
        }
        BranchSum {
            value: acc.sum.value(),
            terms: acc.terms,
            last_decade: acc.tail.value(),
        }
    }

    pub fn combine(&self, branches: &[BranchSum]) -> SquarefreeSum {
        let value: CompensatedSum = branches.iter().map(|b| b.value).collect();
        let tail: CompensatedSum = branches.iter().map(|b| b.last_decade).collect();
        SquarefreeSum {
            value: value.value(),
            terms: branches.iter().map(|b| b.terms).sum(),
            last_decade: tail.value(),
            a_max: self.a_max,
        }
    }

    /// Evaluates every branch in order.
    pub fn evaluate(&self) -> SquarefreeSum {
        let branches: Vec<BranchSum> = (0..self.branch_count()).map(|i| self.branch(i)).collect();
        self.combine(&branches)
    }
}

struct Accumulator<'p> {
    plan: &'p ClusteredSumPlan,
    sum: CompensatedSum,
    tail: CompensatedSum,
    terms: u64,
}

impl Accumulator<'_> {
    fn visit(&mut self, a: u64, divs: &[u64], rho: f64, phi: f64) {
        let l = measure_sorted(divs, self.plan.eta);
        let denom = match self.plan.weight {
            SumWeight::Reciprocal => a as f64,
            SumWeight::PhiF => phi,
        };
        let term = l * rho / denom;
        self.sum.add(term);
        if a > self.plan.a_max / 10 {
            self.tail.add(term);
        }
        self.terms += 1;
    }

    // `a` has `depth` primes, the largest being primes[idx].
    fn descend(&mut self, idx: usize, a: u64, divs: &[u64], rho: f64, phi: f64, depth: u32) {
        let omega = self.plan.omega;
        if omega.map_or(true, |k| k == depth) {
            self.visit(a, divs, rho, phi);
        }
        if omega.is_some_and(|k| depth >= k) {
            return;
        }
        for j in idx + 1..self.plan.primes.len() {
            let (p, rp) = self.plan.primes[j];
            let Some(next) = a.checked_mul(p).filter(|&n| n <= self.plan.a_max) else {
                break;
            };
            let mut merged = Vec::with_capacity(divs.len() * 2);
            let (mut i, mut k) = (0, 0);
            while i < divs.len() || k < divs.len() {
                let scaled = divs.get(k).map(|d| d * p);
                match (divs.get(i), scaled) {
                    (Some(&d), Some(s)) if d <= s => {
                        merged.push(d);
                        i += 1;
                    }
                    (Some(&d), None) => {
                        merged.push(d);
                        i += 1;
                    }
                    (_, Some(s)) => {
                        merged.push(s);
                        k += 1;
                    }
                    (None, None) => break,
                }
            }
            self.descend(j, next, &merged, rho * rp as f64, phi * (p - rp) as f64, depth + 1);
        }
    }
}

/// `Σ_{a ∈ 𝒫(r,t), a ≤ A_max} L(a; η) ρ(a) w(a)`.
pub fn clustered_sum(
    table: &RootTable,
    r: f64,
    t: f64,
    eta: f64,
    a_max: u64,
    weight: SumWeight,
) -> Result<SquarefreeSum> {
    Ok(ClusteredSumPlan::new(table, r, t, eta, a_max, weight, None)?.evaluate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn script_l_examples() {
        let u = script_l(&[1], 0.3).unwrap();
        assert_eq!(u.intervals(), &[(-0.3, 0.0)]);
        assert_eq!(u.measure(), 0.3);
        let u = script_l(&[1, 7], 1.0).unwrap();
        assert_eq!(u.intervals().len(), 2);
        assert!((u.measure() - 2.0).abs() < 1e-15);
        // divisors 1, 2, 3, 6 at σ = 0.5: [−.5,0) ∪ [log 2 − .5, log 3) ∪ [log 6 − .5, log 6)
        let u = script_l(&[1, 2, 3, 6], 0.5).unwrap();
        assert_eq!(u.intervals().len(), 3);
        let expect = 0.5 + (libm::log(3.0) - (libm::log(2.0) - 0.5)) + 0.5;
        assert!((u.measure() - expect).abs() < 1e-12);
        assert!((u.measure() - 1.905_465_108).abs() < 1e-9);
        assert!(script_l(&[1], 0.0).is_err());
    }

    #[test]
    fn measure_routes_agree() {
        for a in [1u64, 6, 12, 360, 720_720, 999_983] {
            let d = divisors_of(a);
            for sigma in [0.01, 0.1, 0.5, 1.0, 3.0] {
                let via_union = script_l(&d, sigma).unwrap().measure();
                let via_gaps = cluster_measure(&d, sigma).unwrap();
                assert!((via_union - via_gaps).abs() <= REL_TOL * via_union, "a={a} σ={sigma}");
            }
        }
    }

    #[test]
    fn w_examples() {
        assert_eq!(w_count(&[1], 0.5).unwrap(), 1);
        assert_eq!(w_count(&[1, 2, 3, 6], 0.5).unwrap(), 6);
        assert_eq!(w_count(&[1, 13], 1.0).unwrap(), 2);
    }

    #[test]
    fn lemma26_examples() {
        let r = lemma26_check(30, 1, 0.2).unwrap();
        match r.coprime_product {
            CheckOutcome::Evaluated(i) => assert_eq!(i.lhs, i.rhs),
            other => panic!("{other:?}"),
        }
        let r = lemma26_check(101, 1, 0.5).unwrap();
        match r.isolated_divisors {
            CheckOutcome::Evaluated(i) => {
                assert!((i.lhs - 1.0).abs() < 1e-15);
                assert!((i.rhs - 1.0).abs() < 1e-15);
                assert!(i.holds);
            }
            other => panic!("{other:?}"),
        }
        let l30 = cluster_measure(&divisors_of(30), 0.1).unwrap();
        assert_eq!(squarefree_bound_at(&[2, 3, 5], 0, 0.1), 0.8);
        assert!(l30 <= 0.8);
        let r = lemma26_check(12, 6, 0.4).unwrap();
        assert_eq!(r.coprime_product, CheckOutcome::NotApplicable("gcd(a, b) ≠ 1"));
        assert_eq!(r.squarefree_bound, CheckOutcome::NotApplicable("a is not squarefree"));
        assert!(r.all_hold());
    }

    #[test]
    fn interval_union_normalizes() {
        let u = IntervalUnion::from_intervals(vec![(2.0, 3.0), (0.0, 1.0), (1.0, 1.5), (2.5, 2.7), (4.0, 4.0)]);
        assert_eq!(u.intervals(), &[(0.0, 1.5), (2.0, 3.0)]);
        assert!(u.contains(1.0) && !u.contains(1.5) && u.contains(2.0) && !u.contains(3.5));
    }
}
