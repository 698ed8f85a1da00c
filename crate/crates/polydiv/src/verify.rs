//! The `verify` suites: the main code paths against the brute-force oracles.

use polydiv_core::arith::{gcd, primes_up_to};
use polydiv_core::cluster::{cluster_measure, divisors_of, lemma26_check};
use polydiv_core::oracle::{
    inclusion_exclusion_hf, naive_hf_windows, naive_roots, naive_roots_over, naive_smooth_factorization,
    OracleConfig,
};
use polydiv_core::rho::{rho, roots_mod_pk, RootTable};
use polydiv_core::sieve::{count_hf_windows, smooth_sieve, DivisorWindow, SieveConfig};
use polydiv_core::IntPolynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::output::VerifyRow;
use crate::Result;

pub const SUITE_POLYS: [&str; 4] = ["t^2+1", "t^2-t+1", "t^3-2", "t^3+t+1"];

fn row(check: impl Into<String>, failures: u64, total: u64) -> VerifyRow {
    VerifyRow {
        check: check.into(),
        passed: failures == 0,
        detail: format!("{} of {total} cases agree", total - failures),
    }
}

fn poly(s: &str) -> IntPolynomial {
    s.parse().expect("suite polynomial")
}

/// Fast oracle equivalences at small sizes (a few seconds).
pub fn small_suite(seed: u64) -> Result<Vec<VerifyRow>> {
    let cfg = OracleConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for s in SUITE_POLYS {
        let f = poly(s);

        let (mut bad, mut total) = (0, 0);
        for p in primes_up_to(1000) {
            let (mut pk, mut k) = (p, 1);
            while pk <= 1000 {
                total += 1;
                if roots_mod_pk(&f, p, k)? != naive_roots(&f, pk)? {
                    bad += 1;
                }
                pk *= p;
                k += 1;
            }
        }
        rows.push(row(format!("roots {s}"), bad, total));

        let (mut bad, mut total) = (0, 0);
        while total < 200 {
            let d1 = rng.random_range(1..=300u64);
            let d2 = rng.random_range(1..=300u64);
            if gcd(d1, d2) != 1 {
                continue;
            }
            total += 1;
            let r1 = naive_roots(&f, d1)?;
            let full = naive_roots_over(&f, d1, &r1, d1 * d2)?.len() as u64;
            if rho(&f, d1 * d2)? != full || rho(&f, d1)? * rho(&f, d2)? != full {
                bad += 1;
            }
        }
        rows.push(row(format!("multiplicativity {s}"), bad, total));

        let table = RootTable::build(&f, 2000, seed)?;
        let mut bad = 0;
        for sf in smooth_sieve(&f, &SieveConfig::new(1, 2000, 2000), &table)? {
            let naive = naive_smooth_factorization(&f, sf.n, 2000)?;
            let same = match naive {
                None => sf.value_is_zero,
                Some(factors) => factors == sf.factors,
            };
            bad += u64::from(!same);
        }
        rows.push(row(format!("sieve {s}"), bad, 2000));

        let x = 2000;
        let spec = [(10.0, 20.0), (20.0, 40.0), (50.0, 55.0), (100.0, 300.0), (300.0, 330.0), (1.0, 2.0)];
        let windows = spec
            .iter()
            .map(|&(y, z)| DivisorWindow::new(y, z))
            .collect::<polydiv_core::Result<Vec<_>>>()?;
        let fast = count_hf_windows(&f, &table, x, &windows)?;
        let slow = naive_hf_windows(&f, x, &spec, &cfg)?;
        let (mut bad, mut total) = (0, 0);
        for ((&(y, z), a), b) in spec.iter().zip(&fast).zip(&slow) {
            total += 1;
            let mut ok = a.count == *b;
            match inclusion_exclusion_hf(&f, x, y, z, &cfg) {
                Ok(c) => ok &= c == *b,
                Err(polydiv_core::Error::CapExceeded { .. }) => {}
                Err(e) => return Err(e.into()),
            }
            bad += u64::from(!ok);
        }
        rows.push(row(format!("count {s}"), bad, total));
    }

    let mut bad = 0;
    for i in 1..=10 {
        let eta = i as f64 * 0.37;
        bad += u64::from(cluster_measure(&divisors_of(1), eta)? != eta);
    }
    rows.push(row("L(1; eta) = eta", bad, 10));

    let (mut bad, mut total) = (0, 0);
    while total < 200 {
        let a = rng.random_range(1..=10_000u64);
        let b = rng.random_range(1..=10_000u64);
        if gcd(a, b) != 1 {
            continue;
        }
        total += 1;
        let sigma = rng.random_range(0.01..3.0);
        bad += u64::from(!lemma26_check(a, b, sigma)?.all_hold());
    }
    rows.push(row("cluster inequalities", bad, total));
    Ok(rows)
}
