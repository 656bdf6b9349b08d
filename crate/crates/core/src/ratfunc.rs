//! Rational functions over Q in one variable, kept in lowest terms.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, JsonCoeff};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Q;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero_poly() {
            return Err(Error::NotInvertible("rational function with zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero_poly() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lead = den.leading().cloned().expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scaled(&inv);
            den = den.scaled(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Value at a point; `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// The polynomial itself when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero_poly()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
}

impl std::ops::Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self.plus(&rhs)
    }
}

impl std::ops::Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self.times(&rhs)
    }
}

impl Coeff for RatFunc {
    fn plus(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::reduce(self.num.plus(&other.num), self.den.clone());
        }
        Self::reduce(
            self.num.times(&other.den).plus(&other.num.times(&self.den)),
            self.den.times(&other.den),
        )
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::reduce(self.num.times(&other.num), self.den.times(&other.den))
    }
    fn negated(&self) -> Self {
        RatFunc { num: self.num.negated(), den: self.den.clone() }
    }
    fn scaled(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scaled(s), den: self.den.clone() }
    }
    fn from_q(x: Q) -> Self {
        Self::from_poly(Poly::constant(x))
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::reduce(self.den.clone(), self.num.clone()))
        }
    }
    fn domain() -> &'static str {
        "rational-function"
    }
}

impl JsonCoeff for RatFunc {
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "num": self.num.to_strings(), "den": self.den.to_strings() })
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone())
            .map_err(Error::from)
            .and_then(|r: RatFunc| RatFunc::new(r.num, r.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn lowest_terms() {
        // (x^2 - 1) / (2x - 2) = (x + 1) / 2
        let r = RatFunc::new(p(&[-1, 0, 1]), p(&[-2, 2])).unwrap();
        assert_eq!(r.den(), &Poly::one());
        assert_eq!(r.num(), &Poly::new(vec![crate::rational::qr(1, 2), crate::rational::qr(1, 2)]));
        assert!(RatFunc::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(p(&[1]), p(&[0, 1])).unwrap();
        let b = RatFunc::new(p(&[1]), p(&[1, 1])).unwrap();
        // 1/x - 1/(x+1) = 1/(x(x+1))
        let d = a.minus(&b);
        assert_eq!(d, RatFunc::new(p(&[1]), p(&[0, 1, 1])).unwrap());
        assert_eq!(d.times(&d.try_inv().unwrap()), RatFunc::one());
        assert_eq!(d.eval(&q(1)), Some(crate::rational::qr(1, 2)));
        assert_eq!(d.eval(&q(0)), None);
    }

    #[test]
    fn json_round_trip() {
        let a = RatFunc::new(p(&[3, 1]), p(&[0, 2, 4])).unwrap();
        assert_eq!(RatFunc::from_json(&a.to_json()).unwrap(), a);
    }
}
