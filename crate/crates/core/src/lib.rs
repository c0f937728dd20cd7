//! Exact verification of the q-analogue of Gauss' divisibility theorem.
//!
//! For positive integers `n` and `a`, with `b = gcd(n, a)`,
//!
//! ```text
//! F(q) = sum_{d | n} mu(d) (q^{ad}; q^{ad})_{n/d} / (q^d; q^d)_{n/d}  ==  0   (mod [n]_{q^b})
//! ```
//!
//! in `Z[q]`. Setting `q = 1` recovers Gauss' classical congruence
//! `n | sum_{d|n} mu(d) a^{n/d}`.
//!
//! This crate builds `F(q)` exactly over arbitrary-precision integers and
//! checks the congruence, the classical specializations, and the supporting
//! identities at roots of unity, instance by instance:
//!
//! ```
//! use qgauss::theorems::check_q_gauss;
//!
//! let check = check_q_gauss(2, 2).unwrap();
//! assert_eq!(check.f.to_string(), "q + q^3");
//! assert_eq!(check.modulus.to_string(), "1 + q^2");
//! assert_eq!(check.division.quotient.to_string(), "q");
//! assert!(check.report.holds);
//! ```
//!
//! Modules, bottom-up:
//!
//! - [`bigpoly`]: dense polynomials over `BigInt`, monic division.
//! - [`numth`]: divisors, Möbius, totient, gcd counting.
//! - [`qseries`]: q-integers, q-Pochhammer symbols, `F(q)`.
//! - [`cyclo`]: cyclotomic polynomials and exact arithmetic in `Z[zeta_m]`.
//! - [`theorems`]: one verification engine per statement.
//! - [`sweep`]: parallel grid sweeps and JSON/CSV/human reports.
//!
//! The guide under `book/` walks through the mathematics; its code listings
//! are compiled and run as doctests of this crate.

pub mod bigpoly;
pub mod cyclo;
pub mod error;
pub mod numth;
pub mod qseries;
pub mod sweep;
pub mod theorems;

pub use bigpoly::{Degree, DivRemResult, Polynomial};
pub use cyclo::CycloElem;
pub use error::{Error, Result};
pub use sweep::{ReportFormat, SweepConfig, SweepReport};
pub use theorems::{StatementId, VerificationReport};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    pub mod polynomials {}
    #[doc = include_str!("../../../book/src/number-theory.md")]
    pub mod number_theory {}
    #[doc = include_str!("../../../book/src/q-analogues.md")]
    pub mod q_analogues {}
    #[doc = include_str!("../../../book/src/roots-of-unity.md")]
    pub mod roots_of_unity {}
    #[doc = include_str!("../../../book/src/congruence.md")]
    pub mod congruence {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    pub mod sweeps {}
}
