//! Exact rational scalars.
//!
//! The ground field is the rationals; every coefficient in the crate is a
//! [`Scalar`] and no floating point appears anywhere. `BigRational` already
//! maintains the invariants we rely on: values are kept in lowest terms with
//! a positive denominator, and zero is `0/1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Shorthand for an integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `p/q`. Panics on `q == 0`; use [`parse_rational`]
/// for untrusted input.
pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses an exact rational literal: an optionally signed integer or `p/q`.
pub fn parse_rational(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Renders a scalar as the literal form accepted by [`parse_rational`].
pub fn format_rational(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Bit size of a scalar: combined magnitude bits of numerator and denominator.
/// Used by the elimination pivot rule; zero never occurs as a stored entry.
pub fn bit_size(x: &Scalar) -> u64 {
    x.numer().abs().bits() + x.denom().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_integer_and_fraction() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-2/4").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational(" 5 / 3 ").unwrap(), frac(5, 3));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0/0").is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "a", "1.5", "1/2/3", "--3", "1/ "] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn format_round_trips() {
        for x in [int(0), int(12), frac(-7, 3), frac(22, 4)] {
            assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
    }

    #[test]
    fn lowest_terms_invariant() {
        let x = frac(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
    }
}
