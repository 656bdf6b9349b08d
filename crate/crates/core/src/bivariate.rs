//! Truncated power series in two couplings `(g₁, g₂)`, truncated by total degree.

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bivariate<C> {
    order: usize,
    /// `coeffs[n1][n2]` for `n1 + n2 <= order`.
    coeffs: Vec<Vec<C>>,
}

impl<C: Coeff> Bivariate<C> {
    pub fn zero(order: usize) -> Self {
        Bivariate { order, coeffs: (0..=order).map(|n1| vec![C::zero(); order - n1 + 1]).collect() }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        Bivariate { order, coeffs: (0..=order).map(|n1| (0..=order - n1).map(|n2| f(n1, n2)).collect()).collect() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n1: usize, n2: usize) -> &C {
        &self.coeffs[n1][n2]
    }

    pub fn set(&mut self, n1: usize, n2: usize, c: C) {
        self.coeffs[n1][n2] = c;
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Bivariate<D> {
        Bivariate { order: self.order, coeffs: self.coeffs.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    /// Restriction to `g₂ = 0` as a series in `g₁`.
    pub fn first_axis(&self) -> Series<C> {
        Series::new(self.coeffs.iter().map(|r| r[0].clone()).collect(), self.order)
    }

    /// Substitute `g₁ = u1(g)`, `g₂ = u2(g)`, both without constant term.
    pub fn substitute(&self, u1: &Series<C>, u2: &Series<C>) -> Result<Series<C>> {
        if !u1.coeff(0).is_zero() || !u2.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order.min(u1.order()).min(u2.order());
        let mut total = Series::zero(order);
        let mut p1 = Series::one(order);
        for n1 in 0..=order {
            let mut term = p1.clone();
            for n2 in 0..=order - n1 {
                if term.valuation().is_none() {
                    break;
                }
                let c = &self.coeffs[n1][n2];
                if !c.is_zero() {
                    total = total.add(&term.mul_coeff(c));
                }
                term = term.mul(&u2.truncate(order));
            }
            p1 = p1.mul(&u1.truncate(order));
        }
        Ok(total)
    }
}
