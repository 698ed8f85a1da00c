use num_bigint::BigInt;
use polydiv_core::arith::{gcd, is_prime};
use polydiv_core::cluster::{cluster_measure, divisors_of, w_count};
use polydiv_core::estimator::{g_exponent, window_params};
use polydiv_core::oracle::{naive_roots, naive_roots_over};
use polydiv_core::rho::{rho, roots_mod_pk, RootTable};
use polydiv_core::sieve::{count_hf, h_of, DivisorWindow};
use polydiv_core::IntPolynomial;
use proptest::prelude::*;

const SUITE: [&str; 4] = ["t^2+1", "t^2-t+1", "t^3-2", "t^3+t+1"];

fn suite_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::sample::select(SUITE.to_vec()).prop_map(|s| s.parse().unwrap())
}

fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
    (1usize..=5)
        .prop_flat_map(|g| (prop::collection::vec(-1000i64..=1000, g), 1i64..=1000, any::<bool>()))
        .prop_map(|(mut c, lead, neg)| {
            c.push(if neg { -lead } else { lead });
            IntPolynomial::from_i64s(&c).unwrap()
        })
}

fn monomial_sum(f: &IntPolynomial, n: i64) -> BigInt {
    let n = BigInt::from(n);
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * num_traits::pow(n.clone(), i))
        .sum()
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn horner_matches_monomials(f in poly_strategy(), n in -100_000i64..=100_000) {
        prop_assert_eq!(f.evaluate_i64(n), monomial_sum(&f, n));
        if let Some(v) = f.evaluate_i128(n) {
            prop_assert_eq!(BigInt::from(v), monomial_sum(&f, n));
        }
    }
}

proptest! {
    #[test]
    fn repeated_root_kills_discriminant(a in -20i64..=20, h in prop::collection::vec(-9i64..=9, 1..3)) {
        let mut h = h;
        h.push(1);
        let sq = poly_mul(&[-a, 1], &[-a, 1]);
        let f = IntPolynomial::from_i64s(&poly_mul(&sq, &h)).unwrap();
        prop_assert_eq!(f.discriminant(), &BigInt::from(0));
    }

    #[test]
    fn monic_quadratic_discriminant(b in -10_000i64..=10_000, c in -10_000i64..=10_000) {
        let f = IntPolynomial::from_i64s(&[c, b, 1]).unwrap();
        prop_assert_eq!(f.discriminant(), &BigInt::from(b * b - 4 * c));
    }

    #[test]
    fn rho_is_multiplicative(f in suite_poly(), d1 in 1u64..=300, d2 in 1u64..=300) {
        prop_assume!(gcd(d1, d2) == 1);
        let r1 = naive_roots(&f, d1).unwrap();
        let r12 = naive_roots_over(&f, d1, &r1, d1 * d2).unwrap();
        let r2 = naive_roots(&f, d2).unwrap();
        prop_assert_eq!(r12.len(), r1.len() * r2.len());
        prop_assert_eq!(rho(&f, d1 * d2).unwrap() as usize, r12.len());
    }

    #[test]
    fn hensel_count_stable_off_discriminant(f in suite_poly(), i in 0usize..40) {
        let p = (2u64..).filter(|&q| is_prime(q)).nth(i).unwrap();
        let disc = f.discriminant() * f.leading_coefficient();
        prop_assume!(disc % p != BigInt::from(0));
        let one = roots_mod_pk(&f, p, 1).unwrap().len();
        let mut pk = p;
        for k in 2..=6u32 {
            pk = match pk.checked_mul(p) { Some(v) if v <= 10_000_000 => v, _ => break };
            prop_assert_eq!(roots_mod_pk(&f, p, k).unwrap().len(), one);
        }
    }

    #[test]
    fn l_bounds(a in 1u64..=1_000_000, sigma in 1e-3f64..5.0) {
        let d = divisors_of(a);
        let l = cluster_measure(&d, sigma).unwrap();
        prop_assert!(l > 0.0);
        let cap = (d.len() as f64 * sigma).min((a as f64).ln() + sigma);
        prop_assert!(l <= cap * (1.0 + 1e-9));
    }

    #[test]
    fn l_monotone_and_lipschitz(a in 1u64..=1_000_000, sigma in 1e-3f64..3.0, eps in 0.0f64..1.0) {
        let d = divisors_of(a);
        let l0 = cluster_measure(&d, sigma).unwrap();
        let l1 = cluster_measure(&d, sigma + eps).unwrap();
        prop_assert!(l1 >= l0 * (1.0 - 1e-12));
        prop_assert!(l1 <= l0 + d.len() as f64 * eps + 1e-9 * l1);
    }

    #[test]
    fn w_at_least_tau(a in 1u64..=1_000_000, sigma in 1e-4f64..2.0) {
        let d = divisors_of(a);
        let w = w_count(&d, sigma).unwrap();
        prop_assert!(w >= d.len() as u64);
        let close = d.windows(2).any(|p| ((p[1] as f64) / (p[0] as f64)).ln() <= sigma);
        prop_assert_eq!(w == d.len() as u64, !close);
    }

    #[test]
    fn h_of_monotone(n in 2u64..=10_000_000, x1 in 0.0f64..1e12, x2 in 0.0f64..1e12) {
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        prop_assume!((n as f64) > hi.sqrt() + 1.0);
        let f = polydiv_core::arith::factor(n);
        prop_assert!(h_of(&f, lo).unwrap() <= h_of(&f, hi).unwrap());
    }

    #[test]
    fn g_nondecreasing(b0 in 0.0f64..5.0, db in 0.0f64..1.0) {
        prop_assert!(g_exponent(b0 + db).unwrap() >= g_exponent(b0).unwrap() - 1e-15);
    }

    #[test]
    fn window_params_invert(y in 4.0f64..1e12, ratio in 1.0001f64..1e6) {
        let w = window_params(1e15, y, y * ratio, 0.1).unwrap();
        prop_assert!((w.z_from_eta() - w.z).abs() <= 1e-12 * w.z);
    }
}

fn table(f: &IntPolynomial) -> RootTable {
    RootTable::build(f, 5000, 0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn count_monotone(f in suite_poly(), x in 1u64..=3000, y in 1.0f64..200.0, r in 1.05f64..4.0, s in 1.0f64..1.5) {
        let t = table(&f);
        let z = y * r;
        let base = count_hf(&f, &t, x, y, z).unwrap().count;
        prop_assert!(count_hf(&f, &t, x, y, z * s).unwrap().count >= base);
        prop_assert!(count_hf(&f, &t, x + 500, y, z).unwrap().count >= base);
        let y_up = (y * s).min(z - 0.5);
        prop_assert!(count_hf(&f, &t, x, y_up, z).unwrap().count <= base);
    }

    #[test]
    fn half_count_identity(f in suite_poly(), x in 1u64..=5000, y in 1.0f64..300.0, r in 1.05f64..8.0) {
        let t = table(&f);
        let z = (y * r).min(4999.0);
        prop_assume!(z > y);
        let full = count_hf(&f, &t, x, y, z).unwrap();
        let lower = count_hf(&f, &t, x / 2, y, z).unwrap();
        prop_assert_eq!(full.half_count + lower.count, full.count);
    }

    #[test]
    fn union_bound(f in suite_poly(), x in 1u64..=5000, y in 1.0f64..300.0, r in 1.05f64..4.0) {
        let t = table(&f);
        let z = y * r;
        let w = DivisorWindow::new(y, z).unwrap();
        let bound: u64 = (w.above + 1..=w.upto)
            .map(|d| {
                let rd = rho(&f, d).unwrap();
                x * rd / d + rd
            })
            .sum();
        prop_assert!(count_hf(&f, &t, x, y, z).unwrap().count <= bound);
    }
}
