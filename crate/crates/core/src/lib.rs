//! Exact orbifold Riemann–Roch and Hilbert series parsing for polarized
//! quasismooth varieties whose orbifold loci have dimension at most one.
//!
//! Everything here is exact: coefficients are rationals over arbitrary
//! precision integers and denominators of rational functions are kept in
//! factored form `∏(1 - t^a)^m`. The crate is `no_std` and only needs
//! `alloc`; JSON, files and the command line live in the `orbirr` crate.
//!
//! Module map:
//!
//! - [`exactpoly`]: Laurent polynomials, factored rational functions, XGCD,
//!   windowed reduction modulo a polynomial, text rendering and parsing.
//! - [`dedekind`]: generalized Dedekind sums `σ_i(1/r(a_1,…,a_n))` and an
//!   independent roots-of-unity oracle.
//! - [`hilbert`]: variety descriptors, Hilbert series, power series
//!   expansion, Gorenstein symmetry.
//! - [`orbterms`]: closed-form orbifold terms (point terms, curve parts,
//!   bites, initial term).
//! - [`riemannroch`]: `χ(O_X(d))` from Chern data and the orbifold basket.
//! - [`parser`]: decomposition of a Hilbert series into initial, point and
//!   curve terms, its verification report, and the candidate grid search.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dedekind;
mod error;
pub mod exactpoly;
pub mod hilbert;
mod linalg;
pub mod orbterms;
pub mod parser;
pub mod riemannroch;

pub use error::{Error, Result};
pub use exactpoly::{Denominator, LaurentPoly, RationalFn};

/// Exact rational number used for every coefficient in the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a [`Rational`] from small integers.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Floor of `num / 2` for possibly negative `num`.
pub(crate) fn floor_half(num: i64) -> i64 {
    num.div_euclid(2)
}
