//! Virtual tangles: the genus expansion of the complex quartic model.
//!
//! The oracle supplies the connected vacuum energy `f(s) = Σ fₙ(ε) sⁿ` with
//! `ε = N⁻²` at unit propagator. Scaling gives `F(g, t) = f(g/t²)`, so with
//! `s = g/t²` and `D(s) = 1 + 2s f′(s)` the condition `Δ = 1` reads `t = D(s)`
//! and `g = s D(s)²`. Reverting the latter yields `t(g, N)`, and the
//! four-point combination becomes `Γ = (t − 1)/g − 2`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::flype;
use crate::oracle::{enumerate_free_energy, GenusSeries, VertexKind};
use crate::poly::GenusPoly;
use crate::rational::{q, Q};
use crate::series::Series;

/// Exact coefficients indexed by `(g-order, h)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoubleSeries {
    pub max_g: usize,
    pub max_h: usize,
    #[serde(with = "crate::oracle::genus_coeffs")]
    pub coeffs: Vec<Vec<Q>>,
}

impl DoubleSeries {
    pub fn from_series(s: &Series<GenusPoly>, max_h: usize) -> Self {
        let coeffs = s.coeffs().iter().map(|p| (0..=max_h).map(|h| p.coeff(h)).collect()).collect();
        DoubleSeries { max_g: s.order(), max_h, coeffs }
    }

    pub fn get(&self, n: usize, h: usize) -> Q {
        self.coeffs.get(n).and_then(|r| r.get(h)).cloned().unwrap_or_else(Q::zero)
    }

    /// The `N^{2−2h}` part as a series in `g`.
    pub fn stratum(&self, h: usize) -> Series {
        Series::from_fn(self.max_g, |n| self.get(n, h))
    }
}

/// Genus-resolved normalization built from complex-model vacuum data.
#[derive(Clone, Debug)]
pub struct VirtualGenus {
    pub vacuum: GenusSeries,
    pub max_h: usize,
    t: Series<GenusPoly>,
    gamma: Series<GenusPoly>,
}

impl VirtualGenus {
    /// Runs the oracle to `max_g + 1` vertices, enough for `Γ` through `g^{max_g}`.
    pub fn compute(max_g: usize, max_h: usize) -> Result<Self> {
        Self::from_vacuum(enumerate_free_energy(VertexKind::Complex, max_g + 1)?, max_h)
    }

    pub fn from_vacuum(vacuum: GenusSeries, max_h: usize) -> Result<Self> {
        if vacuum.model != "complex" {
            return Err(Error::InvalidArgument(format!("expected complex-model data, got {}", vacuum.model)));
        }
        let m = vacuum.max_order;
        if m < 1 {
            return Err(Error::Infeasible { order: 1, bound: m });
        }
        let d = Series::from_fn(m, |n| {
            if n == 0 {
                GenusPoly::one()
            } else {
                truncate_h(&vacuum.epsilon_poly(n), max_h).scaled(&q(2 * n as i64))
            }
        });
        let g_of_s = d.mul(&d).shift_up_extend(1).truncate(m);
        let s_of_g = g_of_s.reversion()?;
        let t = d.compose(&s_of_g)?.map(|p| truncate_h(p, max_h));
        let gamma = t.sub(&Series::one(m)).shift_down(1)?.sub(&Series::constant(GenusPoly::from_ints(&[2]), m - 1));
        Ok(VirtualGenus { vacuum, max_h, t, gamma })
    }

    /// Highest `g`-order of `Γ^{(h)}` available.
    pub fn max_g(&self) -> usize {
        self.gamma.order()
    }

    /// `t(g, N)` with `Δ = 1` imposed.
    pub fn t(&self) -> DoubleSeries {
        DoubleSeries::from_series(&self.t, self.max_h)
    }

    pub fn gamma(&self) -> DoubleSeries {
        DoubleSeries::from_series(&self.gamma, self.max_h)
    }

    /// Prime 2-tangles of minimal genus `h`.
    pub fn gamma_h(&self, h: usize) -> Result<Series> {
        if h > self.max_h {
            return Err(Error::InvalidArgument(format!("genus {h} above computed maximum {}", self.max_h)));
        }
        Ok(self.gamma().stratum(h))
    }

    /// `Γ^{(h)}(g₀(g))`, the quotient by planar flypes.
    pub fn flype_quotient_h(&self, h: usize) -> Result<Series> {
        let gamma = self.gamma_h(h)?;
        let g0 = flype::g0_of_g(gamma.order())?;
        gamma.compose(&g0)
    }
}

fn truncate_h(p: &GenusPoly, max_h: usize) -> GenusPoly {
    GenusPoly::new(p.coeffs().iter().take(max_h + 1).cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn low_order_strata() {
        let v = VirtualGenus::compute(3, 2).unwrap();
        assert_eq!(ints(&v.gamma_h(0).unwrap()), vec![0, 1, 2, 6]);
        assert_eq!(ints(&v.gamma_h(1).unwrap()), vec![0, 1, 8, 59]);
        assert_eq!(ints(&v.gamma_h(2).unwrap()), vec![0, 0, 0, 17]);
        assert_eq!(ints(&v.flype_quotient_h(1).unwrap()), vec![0, 1, 8, 57]);
        assert_eq!(v.t().get(0, 0), q(1));
    }
}
