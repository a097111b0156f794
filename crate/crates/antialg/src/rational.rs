//! Exact rational scalars.
//!
//! Everything in this crate is computed over ℚ with arbitrary-precision
//! integers. There is no floating point anywhere: the identities we verify
//! are exact, and a tolerance would only mask sign-convention mistakes.

use crate::error::{AlgError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// The scalar field: normalized fractions of arbitrary-precision integers.
///
/// `BigRational` keeps gcd(numerator, denominator) = 1 with a positive
/// denominator, which is exactly the invariant we need.
pub type Rat = BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rat {
    assert!(denom != 0, "zero denominator");
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer scalar.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Parse `"p"` or `"p/q"` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || AlgError::BadRational(s.to_string());
    match t.split_once('/') {
        None => {
            let n = BigInt::from_str(t).map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Canonical string form, `"p"` or `"p/q"` with positive denominator.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// True when `r` is a (possibly negative) integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}
