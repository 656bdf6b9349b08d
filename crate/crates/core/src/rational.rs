//! Exact rational scalars and their canonical `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational used for every exact coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string: integers print without a denominator, everything else as `p/q`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_f64(x: &Q) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale both sides down for huge operands.
            let bits = x.numer().bits().max(x.denom().bits()) as i64 - 900;
            let shift = bits.max(0) as usize;
            let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (x.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                if x.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Serde adapter storing a [`Q`] as its canonical string.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        for x in [qr(91, 12), q(-7), qr(-3, 9), q(0)] {
            assert_eq!(parse_q(&format_q(&x)).unwrap(), x);
        }
        assert_eq!(format_q(&qr(2, 4)), "1/2");
        assert_eq!(format_q(&q(5)), "5");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn huge_values_convert() {
        let big = Q::from_integer(BigInt::from(10).pow(400)) / Q::from_integer(BigInt::from(10).pow(398));
        assert!((to_f64(&big) - 100.0).abs() < 1e-9);
    }
}
