//! Dense univariate polynomials over the rationals.
//!
//! Used for polynomials in the colour weight τ ([`TauPoly`]) and in the genus
//! parameter 1/N² ([`GenusPoly`]). Coefficients are stored in ascending
//! powers and trailing zeros are always trimmed.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Q>,
}

/// Polynomial in the colour weight τ.
pub type TauPoly = Poly;
/// Polynomial in ε = 1/N²; the coefficient of εʰ is the genus-h part.
pub type GenusPoly = Poly;

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| crate::rational::q(c)).collect())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·xᵈ`.
    pub fn monomial(c: Q, d: usize) -> Self {
        let mut v = vec![Q::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::rational::to_f64(c))
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::NotInvertible("division by the zero polynomial".into()))?;
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::default(), self.clone()));
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (quot, rem) = self.div_rem(d)?;
        if !rem.is_zero_poly() {
            return Err(Error::InexactDivision(format!("({self}) / ({d}) leaves {rem}")));
        }
        Ok(quot)
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero_poly() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Newton-form interpolation through distinct nodes.
    pub fn interpolate(points: &[(Q, Q)]) -> Result<Poly> {
        let n = points.len();
        let mut dd: Vec<Q> = points.iter().map(|p| p.1.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                let den = &points[i].0 - &points[i - j].0;
                if den.is_zero() {
                    return Err(Error::InvalidArgument("repeated interpolation node".into()));
                }
                dd[i] = (&dd[i] - &dd[i - 1]) / den;
            }
        }
        let mut acc = Poly::default();
        for i in (0..n).rev() {
            acc = acc.times(&Poly::new(vec![-points[i].0.clone(), Q::one()]));
            acc = acc.plus(&Poly::constant(dd[i].clone()));
        }
        Ok(acc)
    }

    /// Substitute x → x + shift.
    pub fn shifted(&self, shift: &Q) -> Poly {
        let lin = Poly::new(vec![shift.clone(), Q::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::default(), |acc, c| acc.times(&lin).plus(&Poly::constant(c.clone())))
    }

    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_q).collect()
    }

    pub fn from_strings(v: &[String]) -> Result<Poly> {
        Ok(Poly::new(v.iter().map(|s| parse_q(s)).collect::<Result<_>>()?))
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Q::one())
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        self.plus(&rhs)
    }
}

impl std::ops::Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.times(&rhs)
    }
}

impl Coeff for Poly {
    fn plus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
    fn minus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
    fn times(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::default();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
    fn negated(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn scaled(&self, s: &Q) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }
    fn from_q(x: Q) -> Self {
        Poly::constant(x)
    }
    fn try_inv(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => Some(Poly::constant(c.recip())),
            _ => None,
        }
    }
    fn domain() -> &'static str {
        "polynomial"
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag_s = format_q(&mag);
            match i {
                0 => write!(f, "{mag_s}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_s}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?
                    } else {
                        write!(f, "x^{i}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        Poly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}
