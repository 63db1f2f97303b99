//! Canonical rational scalars.
//!
//! `BigRational` already keeps values reduced with a positive denominator, so
//! the scalar type is an alias. What this module adds is the strict textual
//! form used in files and reports: `"p"` for integers and `"p/q"` otherwise,
//! with no leading zeros, no `+` sign and no negative zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_integer_token(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = if allow_sign {
        s.strip_prefix('-').unwrap_or(s)
    } else {
        s
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    let value: BigInt = s.parse().ok()?;
    if s.starts_with('-') && value.is_zero() {
        return None;
    }
    Some(value)
}

/// Parses a rational in canonical form; anything else (`"2/4"`, `"3/1"`,
/// `"-0"`, `"+1"`, `"1/-2"`) is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("non-canonical rational {s:?}"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(
            parse_integer_token(s, true).ok_or_else(bad)?,
        )),
        Some((p, q)) => {
            let num = parse_integer_token(p, true).ok_or_else(bad)?;
            let den = parse_integer_token(q, false).ok_or_else(bad)?;
            if den <= BigInt::one() || num.is_zero() || !num.gcd(&den).is_one() {
                return Err(bad());
            }
            Ok(Rational::new_raw(num, den))
        }
    }
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a vector to coprime integers whose first nonzero entry is positive.
/// The zero vector is returned unchanged.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| (x / &content) * &sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings_round_trip() {
        for s in [
            "0",
            "1",
            "-1",
            "7/3",
            "-12/5",
            "123456789012345678901234567890",
        ] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }

    #[test]
    fn non_canonical_strings_rejected() {
        for s in [
            "2/4", "3/1", "-0", "+1", "01", "1/-2", "1/0", "0/5", "", "1.5", "a/b", "1/02",
        ] {
            assert!(parse_rational(s).is_err(), "{s} should be rejected");
        }
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![ratio(-1, 2), rat(0), ratio(3, 4)];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(0), BigInt::from(-3)]);
    }
}
