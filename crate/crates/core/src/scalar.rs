//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `7`, `-3`, `3/2` or `-3/2`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse { column: 0, message: format!("not a rational number: {text:?}") };
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse { column: 0, message: "zero denominator".into() });
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// `a/b` or `a` when the denominator is one.
pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}
