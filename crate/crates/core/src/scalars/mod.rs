//! Exact coefficient arithmetic.
//!
//! The scalar tower is fixed: arbitrary-precision rationals Q at the bottom,
//! the fraction field Q(c, h) of the bivariate polynomial ring on top. Every
//! coefficient produced anywhere in the workbench lives in one of these two,
//! and all arithmetic is exact and canonicalized.

pub mod matrix;
pub mod parse;
pub mod poly;
pub mod ratfunc;

pub use matrix::{ExactMatrix, Subspace};
pub use poly::MPoly;
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rat = BigRational;

/// Rational from a machine integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q from machine integers. Panics on q = 0.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

/// Canonical text form of a rational: "p" or "p/q" with q > 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "p" or "p/q" (q > 0 after normalization).
pub fn rat_from_str(s: &str) -> crate::error::Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| crate::error::Error::Parse(format!("bad integer {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| crate::error::Error::Parse(format!("bad integer {den:?}")))?;
    if d.is_zero() {
        return Err(crate::error::Error::DivisionByZero);
    }
    Ok(Rat::new(n, d))
}

/// True if `r` is a nonnegative integer.
pub fn rat_is_nat(r: &Rat) -> bool {
    r.denom().is_one() && !r.numer().is_negative()
}

/// Extract a u32 from an integer rational, if it is one and fits.
pub fn rat_to_u32(r: &Rat) -> Option<u32> {
    if !r.denom().is_one() {
        return None;
    }
    u32::try_from(r.numer()).ok()
}
