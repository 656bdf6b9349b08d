//! The coefficient abstraction shared by every series in the crate.
//!
//! A [`Coeff`] is a commutative ring with a rational scaling action. Units
//! report an inverse through [`Coeff::try_inv`]; that is all series division,
//! reversion and Newton iteration need from the coefficient domain.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::rational::Q;

pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + Zero + One + 'static {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, s: &Q) -> Self;
    fn from_q(x: Q) -> Self;
    /// Multiplicative inverse when `self` is a unit of the ring.
    fn try_inv(&self) -> Option<Self>;
    /// Short tag naming the domain, used in serialized output and errors.
    fn domain() -> &'static str;

    fn from_i64(n: i64) -> Self {
        Self::from_q(crate::rational::q(n))
    }
}

impl Coeff for Q {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, s: &Q) -> Self {
        self * s
    }
    fn from_q(x: Q) -> Self {
        x
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn domain() -> &'static str {
        "rational"
    }
}

/// JSON representation of a coefficient: exact rationals as `"p/q"` strings,
/// polynomials as ascending arrays of such strings.
pub trait JsonCoeff: Coeff {
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> crate::error::Result<Self>;
}

impl JsonCoeff for Q {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(crate::rational::format_q(self))
    }
    fn from_json(v: &serde_json::Value) -> crate::error::Result<Self> {
        match v {
            serde_json::Value::String(s) => crate::rational::parse_q(s),
            other => Err(crate::error::Error::DomainMismatch(format!(
                "expected a rational string, found {other}"
            ))),
        }
    }
}

impl JsonCoeff for crate::poly::Poly {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.to_strings().into_iter().map(serde_json::Value::String).collect(),
        )
    }
    fn from_json(v: &serde_json::Value) -> crate::error::Result<Self> {
        let arr = v.as_array().ok_or_else(|| {
            crate::error::Error::DomainMismatch(format!("expected a polynomial array, found {v}"))
        })?;
        let items = arr.iter().map(Q::from_json).collect::<crate::error::Result<Vec<_>>>()?;
        Ok(crate::poly::Poly::new(items))
    }
}
