//! Exact counting of integers `n ≤ x` whose polynomial value `F(n)` has a
//! divisor in a window `(y, z]`, together with the arithmetic objects that
//! govern the order of magnitude of that count.
//!
//! The crate is `no_std` and needs only `alloc`. Everything here is
//! single-threaded and deterministic; the companion `polydiv` crate adds
//! parallel drivers, file formats and the command line front-end on top of
//! the per-segment and per-branch entry points exposed here.
//!
//! Module map:
//!
//! * [`poly`]: integer polynomials, discriminant, irreducibility witness.
//! * [`rho`]: roots modulo prime powers, `ρ(d)`, `φ_F(n)`, prime sums.
//! * [`sieve`]: segmented sieve over `F(n)`, window counters `H_F` and `H`.
//! * [`cluster`]: the divisor cluster set `𝓛(a;σ)`, its measure and `W(a;σ)`.
//! * [`partition`]: greedy prime blocks `λ_j` and the sums `T_k(z)`.
//! * [`estimator`]: closed-form window parameters and order functions.
//! * [`oracle`]: brute-force references sharing no code with the above.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod cluster;
mod error;
pub mod estimator;
pub mod modpoly;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod rho;
pub mod sieve;

pub use error::{Error, Result};
pub use poly::IntPolynomial;
pub use rho::RootTable;
