//! Small exact-arithmetic helpers shared across modules.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_big(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// `choose(n, k)`, zero whenever `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Converts an exact rational that must be an integer.
pub fn to_integer(value: &Rational, what: &str) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::Integrality(format!("{what} evaluated to {value}")))
    }
}

pub fn to_natural(value: &Rational, what: &str) -> Result<BigUint> {
    let n = to_integer(value, what)?;
    n.to_biguint().ok_or_else(|| Error::Integrality(format!("{what} evaluated to negative {n}")))
}

/// Renders `p/q`, or `p` for integers.
pub fn render(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// A nonnegative coefficient in front of a symbol: empty for 1, bare for
/// integers, parenthesized for fractions.
pub(crate) fn coefficient(value: &Rational) -> String {
    if value.is_one() {
        String::new()
    } else if value.is_integer() {
        render(value)
    } else {
        format!("({})", render(value))
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}
