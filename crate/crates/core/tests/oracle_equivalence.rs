use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use polydiv_core::arith::{is_prime, primes_up_to};
use polydiv_core::cluster::{clustered_sum, cluster_measure, divisors_of, SumWeight};
use polydiv_core::estimator::norton_ratio;
use polydiv_core::oracle::{
    inclusion_exclusion_hf, naive_hf, naive_roots, naive_smooth_excess, naive_smooth_factorization,
    OracleConfig,
};
use polydiv_core::partition::{bad_prime_cutoff, build_partition, t_k_sum};
use polydiv_core::rho::{fit_constants, roots_mod_pk, RootTable};
use polydiv_core::sieve::{count_hf, smooth_excess_count, smooth_part, smooth_sieve, SieveConfig};
use polydiv_core::IntPolynomial;

const SUITE: [&str; 4] = ["t^2+1", "t^2-t+1", "t^3-2", "t^3+t+1"];

fn p(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

#[test]
fn roots_match_scan_for_small_prime_powers() {
    for s in SUITE {
        let f = p(s);
        for q in primes_up_to(2000) {
            let mut pk = q;
            let mut k = 1;
            while pk <= 2000 {
                assert_eq!(roots_mod_pk(&f, q, k).unwrap(), naive_roots(&f, pk).unwrap(), "{s} mod {q}^{k}");
                pk *= q;
                k += 1;
            }
        }
    }
}

#[test]
fn sieve_matches_trial_division() {
    let bound = 1000;
    for s in SUITE {
        let f = p(s);
        let table = RootTable::build(&f, bound, 0).unwrap();
        let rows: Vec<_> = smooth_sieve(&f, &SieveConfig::new(1, 10_000, bound), &table)
            .unwrap()
            .collect();
        assert_eq!(rows.len(), 10_000);
        for row in rows {
            let naive = naive_smooth_factorization(&f, row.n, bound).unwrap();
            match naive {
                None => assert!(row.value_is_zero),
                Some(factors) => {
                    assert_eq!(row.factors, factors, "{s} at n = {}", row.n);
                    let full = f.evaluate_i64(row.n as i64).abs();
                    assert_eq!(row.cofactor_is_one, smooth_part(&row) == full);
                }
            }
        }
    }
}

#[test]
fn three_counts_agree_on_small_window() {
    let cfg = OracleConfig::default();
    let f = p("t^2+1");
    let table = RootTable::build(&f, 100, 0).unwrap();
    let fast = count_hf(&f, &table, 10_000, 10.0, 20.0).unwrap().count;
    assert_eq!(fast, naive_hf(&f, 10_000, 10.0, 20.0, &cfg).unwrap());
    assert_eq!(fast, inclusion_exclusion_hf(&f, 10_000, 10.0, 20.0, &cfg).unwrap());
    assert_eq!(fast, 2533);
}

#[test]
fn smooth_excess_matches_naive() {
    let f = p("t^2+1");
    let table = RootTable::build(&f, 100, 0).unwrap();
    assert_eq!(smooth_excess_count(&f, &table, 1000, 2.0, 1.0).unwrap(), 500);
    let fast = smooth_excess_count(&f, &table, 10_000, 10.0, 1000.0).unwrap();
    assert_eq!(fast, naive_smooth_excess(&f, 10_000, 10.0, 1000.0).unwrap());
    assert_eq!(fast, 19);
}

/// Measure of `⋃_{d | a} [log d − σ, log d)` by sorting and sweeping.
fn naive_l(a: u64, sigma: f64) -> f64 {
    let mut ends: Vec<f64> = (1..=a).filter(|d| a % d == 0).map(|d| (d as f64).ln()).collect();
    ends.sort_by(f64::total_cmp);
    let mut total = 0.0;
    let mut covered_to = f64::NEG_INFINITY;
    for e in ends {
        let start = (e - sigma).max(covered_to);
        if e > start {
            total += e - start;
        }
        covered_to = covered_to.max(e);
    }
    total
}

fn prime_factors(mut a: u64) -> Option<Vec<u64>> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= a {
        if a % q == 0 {
            a /= q;
            if a % q == 0 {
                return None;
            }
            out.push(q);
        }
        q += 1;
    }
    if a > 1 {
        out.push(a);
    }
    Some(out)
}

fn oracle_clustered(f: &IntPolynomial, r: u64, t: u64, eta: f64, a_max: u64, phi: bool) -> f64 {
    let mut sum = 0.0;
    for a in 1..=a_max {
        let Some(ps) = prime_factors(a) else { continue };
        if ps.iter().any(|&q| q <= r || q > t) {
            continue;
        }
        let rho = naive_roots(f, a).unwrap().len() as f64;
        if rho == 0.0 {
            continue;
        }
        let w = if phi {
            ps.iter()
                .map(|&q| q as f64 - naive_roots(f, q).unwrap().len() as f64)
                .product::<f64>()
        } else {
            a as f64
        };
        sum += naive_l(a, eta) * rho / w;
    }
    sum
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs())
}

#[test]
fn clustered_sum_matches_enumeration() {
    let f = p("t^2+1");
    let table = RootTable::build(&f, 100_000, 0).unwrap();
    let s = clustered_sum(&table, 320.0, 1000.0, 0.1, 100_000, SumWeight::Reciprocal).unwrap();
    let o = oracle_clustered(&f, 320, 1000, 0.1, 100_000, false);
    assert!(close(s.value, o), "{} vs {}", s.value, o);
    assert!(close(s.value, 0.13322972897771618), "{}", s.value);

    let s = clustered_sum(&table, 1.0, 60.0, 0.7, 20_000, SumWeight::Reciprocal).unwrap();
    assert!(close(s.value, oracle_clustered(&f, 1, 60, 0.7, 20_000, false)));
    let s = clustered_sum(&table, 4.0, 60.0, 0.3, 20_000, SumWeight::PhiF).unwrap();
    assert!(close(s.value, oracle_clustered(&f, 4, 60, 0.3, 20_000, true)));
}

#[test]
fn only_a_equal_one_below_two() {
    let f = p("t^3-2");
    let table = RootTable::build(&f, 1000, 0).unwrap();
    for eta in [0.01, 0.25, 1.0, 3.5] {
        let s = clustered_sum(&table, 2.0, 1000.0, eta, 1, SumWeight::PhiF).unwrap();
        assert_eq!(s.value, eta);
        assert_eq!(cluster_measure(&divisors_of(1), eta).unwrap(), eta);
    }
}

#[test]
fn phi_weight_dominates() {
    let f = p("t^2-t+1");
    let table = RootTable::build(&f, 50_000, 0).unwrap();
    let a = clustered_sum(&table, 3.0, 5000.0, 0.2, 50_000, SumWeight::Reciprocal).unwrap();
    let b = clustered_sum(&table, 3.0, 5000.0, 0.2, 50_000, SumWeight::PhiF).unwrap();
    assert_eq!(a.terms, b.terms);
    assert!(b.value >= a.value);
}

#[test]
fn first_lambda_matches_greedy_scan() {
    let f = p("t^2+1");
    let table = RootTable::build(&f, 200_000, 0).unwrap();
    let part = build_partition(&f, &table, 200_000).unwrap();
    assert!(part.blocks[0].complete);
    let mut sum = 0.0;
    let mut lambda1 = 0;
    for q in (321..).filter(|&q| is_prime(q)) {
        let v = naive_roots(&f, q).unwrap().len() as f64 / q as f64;
        if sum + v > std::f64::consts::LN_2 {
            break;
        }
        sum += v;
        lambda1 = q;
    }
    assert_eq!(part.lambdas[1], lambda1);
    assert_eq!(lambda1, 128_683);
}

#[test]
fn partition_tiles_and_is_maximal() {
    let f = p("t^3-2");
    let z = 300_000;
    let table = RootTable::build(&f, z, 0).unwrap();
    let part = build_partition(&f, &table, z).unwrap();
    let d = part.d;
    let primes: Vec<u64> = primes_up_to(z).into_iter().filter(|&q| q > d).collect();
    let mut seen = vec![0usize; part.blocks.len() + 1];
    for &q in &primes {
        let j = part.block_of(q).expect("covered");
        assert!(part.lambdas[j - 1] < q && q <= part.lambdas[j]);
        seen[j] += 1;
    }
    for (j, b) in part.blocks.iter().enumerate() {
        assert_eq!(seen[j + 1] as u64, b.prime_count);
        if b.complete {
            let next = primes.iter().find(|&&q| q > b.lambda).unwrap();
            let extra = table.prime(*next).unwrap().count() as f64 / *next as f64;
            assert!(b.block_sum + extra > std::f64::consts::LN_2);
        }
    }
}

#[test]
fn t1_closed_form_and_omega_split() {
    let f = p("t^2+1");
    let z = 20_000.0;
    let eta: f64 = 0.4;
    let table = RootTable::build(&f, 20_000, 0).unwrap();
    let d = bad_prime_cutoff(&f).unwrap();
    let closed: f64 = primes_up_to(20_000)
        .into_iter()
        .filter(|&q| q > d)
        .map(|q| {
            let rho = naive_roots(&f, q).unwrap().len() as f64;
            (eta + eta.min((q as f64).ln())) * rho / (q as f64 - rho)
        })
        .sum();
    let t1 = t_k_sum(&f, &table, z, eta, 1, 20_000).unwrap();
    assert!(close(t1.value, closed), "{} vs {closed}", t1.value);

    let a_max = 20_000_000;
    let total = clustered_sum(&table, d as f64, z, eta, a_max, SumWeight::PhiF).unwrap();
    let mut parts = 0.0;
    for k in 0..4 {
        parts += t_k_sum(&f, &table, z, eta, k, a_max).unwrap().value;
    }
    assert!(close(total.value, parts));
    let count = primes_up_to(20_000).into_iter().filter(|&q| q > d).count() as u32;
    assert_eq!(t_k_sum(&f, &table, z, eta, count + 1, a_max).unwrap().value, 0.0);
}

#[test]
fn clustered_sum_growth_shape() {
    // ratio against the first window, scaled by (log t / log s)²
    let f = p("t^2+1");
    let table = RootTable::build(&f, 200_000, 0).unwrap();
    let s0 = 1000.0f64;
    let base = clustered_sum(&table, 320.0, s0, 0.1, 1_000_000, SumWeight::Reciprocal).unwrap().value;
    let scaled: Vec<f64> = [2000.0f64, 5000.0, 20_000.0, 50_000.0, 200_000.0]
        .iter()
        .map(|&t| {
            let v = clustered_sum(&table, 320.0, t, 0.1, 1_000_000, SumWeight::Reciprocal).unwrap().value;
            v / base / (t.ln() / s0.ln()).powi(2)
        })
        .collect();
    let k = scaled[0].max(scaled[1]);
    for s in &scaled[2..] {
        assert!(*s <= 2.0 * k, "{scaled:?}");
    }
}

#[test]
fn norton_ratio_grid() {
    for x in [100.0f64, 1000.0] {
        for frac in [0.6, 0.7, 0.8, 0.9] {
            let m = (frac * x) as u64;
            let r = norton_ratio(x, 0, m).unwrap();
            assert!((0.1..=10.0).contains(&r), "x = {x}, m = {m}: {r}");
        }
    }
    let r = norton_ratio(100.0, 50, 80).unwrap();
    assert!(r.is_finite() && r > 0.0);
    assert!(norton_ratio(100.0, 80, 80).is_err());
}

#[test]
fn fitted_constants() {
    let id = p("t");
    let c = fit_constants(&id, 100_000, 0).unwrap();
    assert!((c.af_hat - 1.0).abs() < 0.01);

    let f = p("t^2+1");
    let hi = fit_constants(&f, 1_000_000, 0).unwrap();
    let lo = fit_constants(&f, 100_000, 0).unwrap();
    assert!((hi.af_hat - lo.af_hat).abs() / hi.af_hat < 0.02);
    let table = RootTable::build(&f, 100_000, 0).unwrap();
    assert!(hi.mertens_residual(&table, 100_000).unwrap().abs() < 0.05);
}

#[test]
fn values_past_128_bits_use_the_slow_path() {
    let f = IntPolynomial::new(vec![BigInt::from(1), BigInt::from(0), BigInt::from(1u128 << 100)]).unwrap();
    let table = RootTable::build(&f, 100, 0).unwrap();
    let rows: Vec<_> = smooth_sieve(&f, &SieveConfig::new(1_000_000, 1_000_050, 100), &table)
        .unwrap()
        .collect();
    for row in rows {
        let v = f.evaluate_i64(row.n as i64);
        assert!(v.to_i128().is_none());
        for &(q, e) in &row.factors {
            let qe = BigInt::from(q).pow(e);
            assert_eq!(&v % &qe, BigInt::from(0));
            assert_ne!(&v % (qe * q), BigInt::from(0));
        }
    }
}
