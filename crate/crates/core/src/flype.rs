//! Quotient by flype equivalence as a coupling-constant renormalization.
//!
//! Everything is parametrized by `A = 6/(4 - a²)`, which solves a quintic
//! with `A(0) = 2`. From it `g₀ = 4(A-2)/A³` and `Γ̃ = (A-2)(4-A)/4`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::planar::renormalize_t;
use crate::rational::{q, qr, Q};
use crate::series::{residual, solve_algebraic, Series, SeriesPoly};

#[derive(Clone, Debug)]
pub struct FlypeState {
    pub a: Series,
    pub g0: Series,
    pub gamma_tilde: Series,
    pub h_tilde_prime: Series,
}

/// Coefficients (in `A`) of `A⁵g - 6A⁴g + 4A³(g²-2g-1)/(g-1) - 32A² + 64A - 32`.
pub fn quintic(order: usize) -> SeriesPoly<Q> {
    let n = order;
    // (g²-2g-1)/(g-1) = (1 + 2g - g²)/(1 - g)
    let num = Series::from_ints(&[1, 2, -1], n);
    let geo = Series::geometric(&Q::one(), n);
    let a3 = num.mul(&geo).scale(&q(4));
    vec![
        Series::constant(q(-32), n),
        Series::constant(q(64), n),
        Series::constant(q(-32), n),
        a3,
        Series::var(n).scale(&q(-6)),
        Series::var(n),
    ]
}

/// The branch of the quintic with `A(0) = 2`.
pub fn solve_a(order: usize) -> Result<Series> {
    solve_algebraic(&quintic(order), q(2))
}

pub fn gamma_tilde_of(a: &Series) -> Series {
    let n = a.order();
    a.sub(&Series::constant(q(2), n))
        .mul(&Series::constant(q(4), n).sub(a))
        .scale(&qr(1, 4))
}

pub fn g0_of(a: &Series) -> Result<Series> {
    let n = a.order();
    a.sub(&Series::constant(q(2), n)).scale(&q(4)).div(&a.pow(3))
}

/// Generating function of flype classes of prime alternating 2-tangles.
pub fn gamma_tilde(order: usize) -> Result<Series> {
    if order < 1 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    Ok(gamma_tilde_of(&solve_a(order)?))
}

/// The renormalized-to-bare coupling map `g ↦ g₀(g)`.
pub fn g0_of_g(order: usize) -> Result<Series> {
    g0_of(&solve_a(order)?)
}

/// Residual of `g₀ = g(-1 + 2/((1-g)(1+Γ(g₀))))` with `Γ` the
/// renormalized planar 4-point function composed with `g₀`.
pub fn g00_residual(order: usize) -> Result<Series> {
    let n = order;
    let g0 = g0_of_g(n)?;
    let gamma = renormalize_t(n)?.gamma()?;
    let gamma_g0 = gamma.compose(&g0)?;
    implicit_g0_residual(&g0, &gamma_g0)
}

/// `g₀ - g(-1 + 2/((1-g)(1+X)))` for a given 4-point series `X`.
pub fn implicit_g0_residual(g0: &Series, x: &Series) -> Result<Series> {
    let n = g0.order().min(x.order());
    let g = Series::var(n);
    let one = Series::one(n);
    let den = one.sub(&g).mul(&one.add(&x.truncate(n)));
    let rhs = g.mul(&Series::constant(q(2), n).div(&den)?.sub(&one));
    Ok(g0.truncate(n).sub(&rhs))
}

/// H2PI pieces: `H = Γ/(1+Γ)` for the renormalized planar `Γ`, and the
/// nontrivial flype-class H2PI series `H̃'` defined by `g₀ = g - 2gH̃'`.
pub fn h2pi_decomposition(order: usize) -> Result<(Series, Series)> {
    if order < 1 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    let gamma = renormalize_t(order)?.gamma()?;
    let h = gamma.div(&Series::one(order).add(&gamma))?;
    let g0 = g0_of_g(order)?;
    let h_tp = h_tilde_prime_of(&g0)?;
    Ok((h, h_tp))
}

/// `H̃' = (g - g₀)/(2g)`; the order drops by one because of the division by `g`.
pub fn h_tilde_prime_of(g0: &Series) -> Result<Series> {
    let n = g0.order();
    Ok(Series::var(n).sub(g0).shift_down(1)?.scale(&qr(1, 2)))
}

/// Residual of `Γ̃ = g + gΓ̃ + H̃'/(1 - H̃')`.
pub fn gamma_tilde_recursion_residual(gamma_t: &Series, h_tp: &Series) -> Result<Series> {
    let n = gamma_t.order().min(h_tp.order());
    let g = Series::var(n);
    let gt = gamma_t.truncate(n);
    let h = h_tp.truncate(n);
    let frac = h.div(&Series::one(n).sub(&h))?;
    Ok(gt.sub(&g).sub(&g.mul(&gt)).sub(&frac))
}

impl FlypeState {
    pub fn compute(order: usize) -> Result<Self> {
        let a = solve_a(order)?;
        let g0 = g0_of(&a)?;
        let gamma_tilde = gamma_tilde_of(&a);
        let h_tilde_prime = h_tilde_prime_of(&g0)?;
        Ok(FlypeState { a, g0, gamma_tilde, h_tilde_prime })
    }

    /// Residual of the quintic at the computed `A`.
    pub fn quintic_residual(&self) -> Series {
        residual(&quintic(self.a.order()), &self.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_series() {
        let a = solve_a(9).unwrap();
        assert_eq!(
            a,
            Series::from_ints(&[2, 2, 6, 20, 78, 334, 1532, 7372, 36734, 187902], 9)
        );
        assert_eq!(solve_a(0).unwrap(), Series::from_ints(&[2], 0));
    }

    #[test]
    fn gamma_tilde_series() {
        let gt = gamma_tilde(9).unwrap();
        assert_eq!(gt, Series::from_ints(&[0, 1, 2, 4, 10, 29, 98, 372, 1538, 6755], 9));
        assert!(gamma_tilde(0).is_err());
    }

    #[test]
    fn g0_leading_terms() {
        let g0 = g0_of_g(4).unwrap();
        assert_eq!(g0.coeff(0), q(0));
        assert_eq!(g0.coeff(1), q(1));
        assert_eq!(g0.coeff(2), q(0));
    }

    #[test]
    fn flype_identities() {
        let n = 14;
        let st = FlypeState::compute(n).unwrap();
        assert!(st.quintic_residual().is_zero());
        assert!(g00_residual(n).unwrap().is_zero());
        let gamma = renormalize_t(n).unwrap().gamma().unwrap();
        assert_eq!(gamma.compose(&st.g0).unwrap(), st.gamma_tilde);
        assert!(gamma_tilde_recursion_residual(&st.gamma_tilde, &st.h_tilde_prime)
            .unwrap()
            .is_zero());
        // the same implicit form written with Γ̃ in place of Γ(g₀)
        assert!(implicit_g0_residual(&st.g0, &st.gamma_tilde).unwrap().is_zero());
    }

    #[test]
    fn h2pi_leading_terms() {
        let (h, htp) = h2pi_decomposition(6).unwrap();
        assert_eq!(h.coeff(0), q(0));
        assert_eq!(h.coeff(1), q(1));
        // H̃' starts at g² (first nontrivial H2PI flype class)
        assert_eq!(htp.coeff(0), q(0));
        assert_eq!(htp.coeff(1), q(0));
    }

    #[test]
    fn gamma_tilde_bounded_by_gamma() {
        let n = 20;
        let gt = gamma_tilde(n).unwrap();
        let gamma = renormalize_t(n).unwrap().gamma().unwrap();
        for i in 1..=n {
            let (a, b) = (gt.coeff(i), gamma.coeff(i));
            assert!(a.is_integer() && a > q(0));
            assert!(a <= b);
            if i >= 3 {
                assert!(a < b, "order {i}");
            }
        }
    }
}
