//! Dense polynomials over the prime field `Z/pZ`.
//!
//! Coefficients are stored constant term first and kept trimmed (no
//! trailing zeros); the zero polynomial is the empty vector. All routines
//! assume `p` is prime and fits in 63 bits.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::arith::{add_mod, inv_mod, mul_mod, sub_mod};
use crate::{Error, Result};

/// Retry cap for one equal-degree split.
pub const SPLIT_ATTEMPTS: u32 = 64;

pub fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn degree(f: &[u64]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter()
        .rev()
        .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = add_mod(x, y, p);
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = sub_mod(x, y, p);
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

pub fn monic(f: &[u64], p: u64) -> Vec<u64> {
    match f.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = inv_mod(lc, p).expect("nonzero leading coefficient is invertible mod a prime");
            f.iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

/// Quotient and remainder of `a / m`; `m` must be nonzero.
pub fn div_rem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!m.is_empty(), "division by the zero polynomial");
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < m.len() {
        return (Vec::new(), r);
    }
    let inv = inv_mod(m[dm], p).expect("leading coefficient is invertible");
    let mut q = vec![0u64; r.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = mul_mod(r[i], inv, p);
        if c == 0 {
            continue;
        }
        q[i - dm] = c;
        for (j, &mj) in m.iter().enumerate() {
            let k = i - dm + j;
            r[k] = sub_mod(r[k], mul_mod(c, mj, p), p);
        }
    }
    r.truncate(dm);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    div_rem(a, m, p).1
}

/// Monic greatest common divisor.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `base^e mod m`.
pub fn pow_mod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = rem(&mul(&b, &b, p), m, p);
        }
    }
    acc
}

/// Sorted distinct roots of `f` in `Z/pZ`.
///
/// Isolates the split part `gcd(f, x^p - x)` and separates its linear
/// factors with random shifts `gcd((x + c)^((p-1)/2) - 1, ·)`.
pub fn roots<R: RngCore>(f: &[u64], p: u64, rng: &mut R) -> Result<Vec<u64>> {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.is_empty() {
        return Ok((0..p).collect());
    }
    if p == 2 {
        return Ok((0..2).filter(|&r| eval(&f, r, 2) == 0).collect());
    }
    let f = monic(&f, p);
    if f.len() == 1 {
        return Ok(Vec::new());
    }
    let xp = pow_mod(&[0, 1], p as u128, &f, p);
    let split = gcd(&f, &sub(&xp, &[0, 1], p), p);
    let mut out = Vec::new();
    split_linear(&split, p, rng, &mut out)?;
    out.sort_unstable();
    Ok(out)
}

fn split_linear<R: RngCore>(g: &[u64], p: u64, rng: &mut R, out: &mut Vec<u64>) -> Result<()> {
    match g.len() {
        0 | 1 => return Ok(()),
        2 => {
            // monic x + g0
            out.push(sub_mod(0, g[0], p));
            return Ok(());
        }
        _ => {}
    }
    let half = (p - 1) / 2;
    for _ in 0..SPLIT_ATTEMPTS {
        let c = rng.next_u64() % p;
        let h = pow_mod(&[c, 1], half as u128, g, p);
        let h = sub(&h, &[1], p);
        let d = gcd(&h, g, p);
        if d.len() > 1 && d.len() < g.len() {
            let (q, _) = div_rem(g, &d, p);
            split_linear(&d, p, rng, out)?;
            split_linear(&monic(&q, p), p, rng, out)?;
            return Ok(());
        }
    }
    Err(Error::SplittingFailed {
        p,
        attempts: SPLIT_ATTEMPTS,
    })
}

/// Rabin's irreducibility test for a polynomial of degree ≥ 1 over `Z/pZ`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = monic(f, p);
    let n = match degree(&f) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    // x^(p^i) mod f for i = 0..=n
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(rem(&[0, 1], &f, p));
    for i in 1..=n {
        let next = pow_mod(&frob[i - 1], p as u128, &f, p);
        frob.push(next);
    }
    let x = rem(&[0, 1], &f, p);
    if frob[n] != x {
        return false;
    }
    for (q, _) in crate::arith::factor(n as u64) {
        let k = n / q as usize;
        let g = gcd(&sub(&frob[k], &x, p), &f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_core::SeedableRng;
    use rand_xorshift::XorShiftRng;

    #[test]
    fn division_identity() {
        let p = 101;
        let a = vec![3, 0, 7, 1, 99, 5];
        let m = vec![4, 2, 1];
        let (q, r) = div_rem(&a, &m, p);
        assert_eq!(add(&mul(&q, &m, p), &r, p), a);
        assert!(r.len() < m.len());
    }

    #[test]
    fn roots_of_product_of_linears() {
        let p = 1_000_003;
        let mut f = vec![1];
        for r in [5u64, 17, 999_999, 123_456] {
            f = mul(&f, &[p - r, 1], p);
        }
        // times an irreducible quadratic (x^2 - 2 is irreducible since 1000003 ≡ 3 mod 8)
        f = mul(&f, &[p - 2, 0, 1], p);
        let mut rng = XorShiftRng::seed_from_u64(7);
        assert_eq!(roots(&f, p, &mut rng).unwrap(), vec![5, 17, 123_456, 999_999]);
    }

    #[test]
    fn rabin_test() {
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 3));
        assert!(is_irreducible(&[1, 1, 1], 2));
    }
}
