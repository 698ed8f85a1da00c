//! Integer polynomials: parsing, exact evaluation, discriminant and an
//! irreducibility witness search.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{arith, modpoly, Error, Result};

/// A polynomial `F(t) = c0 + c1 t + … + cg t^g` with integer coefficients
/// and degree `g ≥ 1`.
///
/// The discriminant is computed once at construction. Values are immutable,
/// so a polynomial can be shared freely between threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
    small: Option<Vec<i128>>,
    disc: BigInt,
}

/// Outcome of [`IntPolynomial::is_probably_irreducible`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// `F mod p` is irreducible for this prime, which certifies `F`.
    Proved { witness: u64 },
    Unresolved,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => return Err(Error::ZeroPolynomial),
            1 => {
                return Err(Error::DegreeTooSmall {
                    degree: 0,
                    required: 1,
                })
            }
            _ => {}
        }
        let small = coeffs.iter().map(|c| c.to_i128()).collect::<Option<Vec<_>>>();
        let disc = discriminant_of(&coeffs);
        Ok(Self {
            coeffs,
            small,
            disc,
        })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading_coefficient(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    /// `D_F = (-1)^{g(g-1)/2} Res(F, F') / lc(F)`.
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn derivative(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect()
    }

    /// `F(n)` by Horner's rule in arbitrary precision.
    pub fn evaluate(&self, n: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * n + c)
    }

    pub fn evaluate_i64(&self, n: i64) -> BigInt {
        self.evaluate(&BigInt::from(n))
    }

    /// `F(n)` in 128-bit arithmetic, or `None` when any intermediate value
    /// leaves the `i128` range.
    #[inline]
    pub fn evaluate_i128(&self, n: i64) -> Option<i128> {
        let small = self.small.as_ref()?;
        let n = n as i128;
        let mut acc: i128 = 0;
        for &c in small.iter().rev() {
            acc = acc.checked_mul(n)?.checked_add(c)?;
        }
        Some(acc)
    }

    /// Coefficients reduced into `[0, m)`, trailing zeros trimmed.
    pub fn coeffs_mod(&self, m: u64) -> Vec<u64> {
        let m_big = BigInt::from(m);
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&m_big).to_u64().expect("reduced below modulus"))
            .collect();
        modpoly::trim(&mut out);
        out
    }

    /// Searches the first `trial_primes` primes not dividing `lc(F)·D_F` for
    /// one modulo which `F` stays irreducible. Never reports a reducible
    /// polynomial as irreducible.
    pub fn is_probably_irreducible(&self, trial_primes: usize) -> Result<Irreducibility> {
        if self.degree() < 2 {
            return Err(Error::DegreeTooSmall {
                degree: self.degree(),
                required: 2,
            });
        }
        let content = self.content();
        if !content.is_one() {
            return Err(Error::NotPrimitive {
                content: content.to_string(),
            });
        }
        if self.disc.is_zero() {
            return Ok(Irreducibility::Unresolved);
        }
        let bad = self.leading_coefficient() * &self.disc;
        let mut tried = 0;
        let mut bound = 64;
        let mut start = 0;
        while tried < trial_primes {
            for p in arith::primes_in(start, bound) {
                if tried == trial_primes {
                    break;
                }
                if (&bad % p).is_zero() {
                    continue;
                }
                tried += 1;
                if modpoly::is_irreducible(&self.coeffs_mod(p), p) {
                    return Ok(Irreducibility::Proved { witness: p });
                }
            }
            start = bound;
            bound *= 2;
        }
        Ok(Irreducibility::Unresolved)
    }
}

fn discriminant_of(coeffs: &[BigInt]) -> BigInt {
    let g = coeffs.len() - 1;
    let deriv: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let res = resultant(coeffs, &deriv);
    let lc = &coeffs[g];
    let d = res / lc;
    if (g * (g - 1) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

/// `Res(f, h)` as the determinant of the Sylvester matrix; both inputs are
/// constant term first with nonzero leading coefficient.
pub fn resultant(f: &[BigInt], h: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = h.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec_zero(size);
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec_zero(size);
        for (j, c) in h.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_determinant(rows)
}

fn vec_zero(n: usize) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::zero()).collect()
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Accepts either `c0,c1,...,cg` (constant term first) or a symbolic sum
    /// of monomials in one variable such as `t^2+1` or `3x^3 - 2*x + 7`.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason| Error::Parse {
            text: s.to_string(),
            reason,
        };
        if text.is_empty() {
            return Err(err("empty input"));
        }
        let coeffs = if text.chars().any(|c| c.is_ascii_alphabetic()) {
            parse_symbolic(&text).map_err(err)?
        } else {
            text.split(',')
                .map(|c| BigInt::from_str(c).map_err(|_| err("bad coefficient")))
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(coeffs)
    }
}

fn parse_symbolic(text: &str) -> core::result::Result<Vec<BigInt>, &'static str> {
    let bytes = text.as_bytes();
    let var = *bytes
        .iter()
        .find(|b| b.is_ascii_alphabetic())
        .ok_or("no variable")?;
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        &text[start..*i]
    };
    while i < bytes.len() {
        let negative = match bytes[i] {
            b'+' => {
                i += 1;
                false
            }
            b'-' => {
                i += 1;
                true
            }
            _ if i == 0 => false,
            _ => return Err("expected + or - between terms"),
        };
        let coef_text = digits(&mut i);
        let mut coef = if coef_text.is_empty() {
            None
        } else {
            Some(BigInt::from_str(coef_text).map_err(|_| "bad coefficient")?)
        };
        if i < bytes.len() && bytes[i] == b'*' {
            if coef.is_none() {
                return Err("dangling *");
            }
            i += 1;
            if i >= bytes.len() || bytes[i] != var {
                return Err("expected variable after *");
            }
        }
        let exp = if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
            if bytes[i] != var {
                return Err("more than one variable");
            }
            i += 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let e = digits(&mut i);
                e.parse::<usize>().map_err(|_| "bad exponent")?
            } else {
                1
            }
        } else {
            if coef.is_none() {
                return Err("empty term");
            }
            0
        };
        if exp > 4096 {
            return Err("exponent too large");
        }
        let c = coef.take().unwrap_or_else(BigInt::one);
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        if negative {
            coeffs[exp] -= c;
        } else {
            coeffs[exp] += c;
        }
    }
    Ok(coeffs)
}
