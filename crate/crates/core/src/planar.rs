//! Planar quartic one-matrix model: the endpoint parameter a², free energy,
//! 2- and 4-point functions, wave-function renormalization and the
//! multi-leg flype-class generating functions.
//!
//! The model has weight `exp N tr(-t/2 M² + g/4 M⁴)`. Its planar limit
//! depends on `g` and `t` only through `g/t²`; the eigenvalue density is
//! supported on `[-2a, 2a]` with `3(g/t²)a⁴ - a² + 1 = 0`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, q, qr, Q};
use crate::series::{residual, solve_algebraic, Series};

/// `(g, t, a²)` on the planar branch with `a²(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarState {
    pub t: Series,
    pub a2: Series,
}

impl PlanarState {
    /// Bare model at fixed `t = 1`.
    pub fn bare(order: usize) -> Result<Self> {
        Self::with_t(Series::one(order))
    }

    pub fn with_t(t: Series) -> Result<Self> {
        let a2 = solve_a2(&t)?;
        Ok(PlanarState { t, a2 })
    }

    pub fn order(&self) -> usize {
        self.a2.order()
    }

    /// Residual of `3(g/t²)a⁴ - a² + 1`; zero on a valid state.
    pub fn quartic_residual(&self) -> Result<Series> {
        let n = self.order();
        let s = coupling_ratio(&self.t.truncate(n))?;
        let a4 = self.a2.square();
        Ok(s.mul(&a4).scale(&q(3)).sub(&self.a2).add(&Series::one(n)))
    }
}

/// `g/t²` as a series; needs `t(0) ≠ 0`.
fn coupling_ratio(t: &Series) -> Result<Series> {
    if t.coeff(0).is_zero() {
        return Err(Error::InvalidArgument("t(0) must be nonzero".into()));
    }
    let n = t.order();
    Series::var(n).div(&t.square())
}

/// The endpoint parameter a² solving `3(g/t²)a⁴ - a² + 1 = 0`, `a²(0) = 1`.
pub fn solve_a2(t: &Series) -> Result<Series> {
    let n = t.order();
    let s = coupling_ratio(t)?;
    let p = vec![Series::one(n), Series::constant(q(-1), n), s.scale(&q(3))];
    solve_algebraic(&p, Q::one())
}

/// `F = Σ_{p≥1} (3g/t²)ᵖ (2p-1)!/(p!(p+2)!)`.
pub fn free_energy(t: &Series, order: usize) -> Result<Series> {
    if order < 1 {
        return Err(Error::InvalidArgument("free energy needs order >= 1".into()));
    }
    let t = t.truncate(order);
    let s3 = coupling_ratio(&t)?.scale(&q(3));
    let mut acc = Series::zero(order);
    let mut power = Series::one(order);
    for p in 1..=order as u64 {
        power = power.mul(&s3);
        let c = Q::new(factorial(2 * p - 1), factorial(p) * factorial(p + 2));
        acc = acc.add(&power.scale(&c));
    }
    Ok(acc)
}

/// `F = ½ log a² - (a²-1)(9-a²)/24`, the same quantity through a².
pub fn free_energy_from_a2(a2: &Series) -> Result<Series> {
    let n = a2.order();
    let one = Series::one(n);
    let nine = Series::constant(q(9), n);
    let log_part = a2.log()?.scale(&qr(1, 2));
    let poly = a2.sub(&one).mul(&nine.sub(a2)).scale(&qr(1, 24));
    Ok(log_part.sub(&poly))
}

/// `Δ = a²(4 - a²)/(3t)`.
pub fn two_point(state: &PlanarState) -> Result<Series> {
    let n = state.order();
    let four = Series::constant(q(4), n);
    state.a2.mul(&four.sub(&state.a2)).div(&state.t.truncate(n).scale(&q(3)))
}

/// Connected `Γ = a⁴(1 - a²)(2a² - 5)/(9t²)`.
pub fn four_point(state: &PlanarState) -> Result<Series> {
    let n = state.order();
    let a2 = &state.a2;
    let one = Series::one(n);
    let five = Series::constant(q(5), n);
    let num = a2.square().mul(&one.sub(a2)).mul(&a2.scale(&q(2)).sub(&five));
    num.div(&state.t.truncate(n).square().scale(&q(9)))
}

/// Planar quantities after imposing `Δ = 1`.
#[derive(Clone, Debug)]
pub struct RenormalizedPlanar {
    pub state: PlanarState,
}

/// Wave-function renormalization: the unique `t(g)`, `t(0) = 1`, with `Δ ≡ 1`.
///
/// Eliminating `t` between the quartic and `Δ = 1` leaves the single
/// relation `(a² - 1)(4 - a²)² = 27 g`, solved by Newton iteration from
/// `a² = 1`; then `t = a²(4 - a²)/3`.
pub fn renormalize_t(order: usize) -> Result<RenormalizedPlanar> {
    let n = order;
    // (y-1)(4-y)^2 - 27g = y^3 - 9y^2 + 24y - 16 - 27g
    let p = vec![
        Series::constant(q(-16), n).sub(&Series::var(n).scale(&q(27))),
        Series::constant(q(24), n),
        Series::constant(q(-9), n),
        Series::one(n),
    ];
    let a2 = solve_algebraic(&p, Q::one())?;
    let t = a2.mul(&Series::constant(q(4), n).sub(&a2)).scale(&qr(1, 3));
    Ok(RenormalizedPlanar { state: PlanarState { t, a2 } })
}

impl RenormalizedPlanar {
    pub fn order(&self) -> usize {
        self.state.order()
    }

    pub fn t(&self) -> &Series {
        &self.state.t
    }

    pub fn a2(&self) -> &Series {
        &self.state.a2
    }

    /// `Γ(g) = (5 - 2a²)(a² - 1)/(4 - a²)²`.
    pub fn gamma(&self) -> Result<Series> {
        let n = self.order();
        let a2 = self.a2();
        let num = Series::constant(q(5), n).sub(&a2.scale(&q(2))).mul(&a2.sub(&Series::one(n)));
        num.div(&Series::constant(q(4), n).sub(a2).square())
    }

    /// Generating function of prime link diagrams.
    ///
    /// From the bare `F(g, t)` this strips the Gaussian normalization and
    /// the quadratic counterterm, `Φ = F - ½ log t + ½(t - 1)`, and then
    /// `2Φ - g` drops the single one-vertex (nugatory) diagram and restores
    /// the complex-model normalization, so that `Γ = 2 dF/dg`.
    pub fn free_energy(&self) -> Result<Series> {
        let n = self.order();
        let t = self.t();
        let bare = free_energy_from_a2(self.a2())?;
        let phi = bare
            .sub(&t.log()?.scale(&qr(1, 2)))
            .add(&t.sub(&Series::one(n)).scale(&qr(1, 2)));
        Ok(phi.scale(&q(2)).sub(&Series::var(n)))
    }

    /// `A = 6/(4 - a²)`.
    pub fn a_param(&self) -> Result<Series> {
        let n = self.order();
        Series::constant(q(6), n).div(&Series::constant(q(4), n).sub(self.a2()))
    }
}

fn c_cache() -> &'static Mutex<HashMap<usize, Q>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Q>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `c_{ℓ+1} = (1/(3ℓ+1)) Σ_{ℓ/2 ≤ q ≤ ℓ} (-4)^{q-ℓ} (ℓ+q)!/((2q-ℓ)!(ℓ-q)!)`, memoized.
pub fn c_coefficient(l: usize) -> Result<Q> {
    if l < 2 {
        return Err(Error::InvalidArgument(format!("c_l is defined for l >= 2, got {l}")));
    }
    if let Some(c) = c_cache().lock().expect("cache poisoned").get(&l) {
        return Ok(c.clone());
    }
    let m = (l - 1) as u64;
    let mut acc = Q::zero();
    for qq in m.div_ceil(2)..=m {
        let num = factorial(m + qq);
        let den = factorial(2 * qq - m) * factorial(m - qq);
        let term = Q::new(num, den);
        let e = (m - qq) as i32;
        let sign_pow = Q::from_integer((-4i64).into()).pow(-e);
        acc += term * sign_pow;
    }
    let c = acc / q(3 * m as i64 + 1);
    c_cache().lock().expect("cache poisoned").insert(l, c.clone());
    Ok(c)
}

/// `Γ_{2ℓ} = (c_ℓ/ℓ!)(A-2)^{ℓ-1}(3ℓ - 2 - (ℓ-1)A)`, flype classes of prime ℓ-tangles.
pub fn gamma_2l(l: usize, a: &Series) -> Result<Series> {
    let c = c_coefficient(l)?;
    let n = a.order();
    let pref = c / Q::from_integer(factorial(l as u64));
    let am2 = a.sub(&Series::constant(q(2), n));
    let lin = Series::constant(q(3 * l as i64 - 2), n).sub(&a.scale(&q(l as i64 - 1)));
    Ok(am2.pow(l as u32 - 1).mul(&lin).scale(&pref))
}

/// Eigenvalue density of the bare model at `t = 1` and a numeric coupling.
#[derive(Clone, Copy, Debug)]
pub struct Density {
    pub g: f64,
    pub a2: f64,
}

impl Density {
    /// Density on the branch continuous at `g = 0`; requires `12 g < 1`.
    pub fn at(g: f64) -> Result<Self> {
        if 12.0 * g >= 1.0 {
            return Err(Error::InvalidArgument(format!("g = {g} is outside the planar branch")));
        }
        let a2 = if g == 0.0 { 1.0 } else { 2.0 / (1.0 + (1.0 - 12.0 * g).sqrt()) };
        Ok(Density { g, a2 })
    }

    pub fn edge(&self) -> f64 {
        2.0 * self.a2.sqrt()
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        let r = 4.0 * self.a2 - lambda * lambda;
        if r <= 0.0 {
            return 0.0;
        }
        (1.0 - 2.0 * self.g * self.a2 - self.g * lambda * lambda) * r.sqrt() / (2.0 * std::f64::consts::PI)
    }

    /// `∫ u(λ) λ^{2p} dλ` via λ = 2a sin θ and adaptive Simpson at tolerance 1e-12.
    pub fn moment(&self, p: u32) -> f64 {
        let e = self.edge();
        let f = |th: f64| {
            let lam = e * th.sin();
            self.eval(lam) * lam.powi(2 * p as i32) * e * th.cos()
        };
        adaptive_simpson(&f, -std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2, 1e-12)
    }

    /// The closed-form 2-point function at this coupling.
    pub fn two_point(&self) -> f64 {
        self.a2 * (4.0 - self.a2) / 3.0
    }
}

pub(crate) fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    rec(f, a, fa, b, fb, m, fm, whole, tol, 48)
}

/// Residual check helper shared with tests: a² must satisfy its quartic.
pub fn a2_residual(t: &Series, a2: &Series) -> Result<Series> {
    let s = coupling_ratio(t)?;
    let n = a2.order();
    let p = vec![Series::one(n), Series::constant(q(-1), n), s.scale(&q(3))];
    Ok(residual(&p, a2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_low_orders() {
        let st = PlanarState::bare(2).unwrap();
        assert_eq!(st.a2, Series::from_ints(&[1, 3, 18], 2));
        assert!(st.quartic_residual().unwrap().is_zero());
    }

    #[test]
    fn a2_matches_catalan_closed_form() {
        // a² = Σ 3ᵖ Cat(p) gᵖ on the bare branch
        let st = PlanarState::bare(12).unwrap();
        for p in 0..=12u64 {
            let cat = Q::new(factorial(2 * p), factorial(p) * factorial(p + 1));
            assert_eq!(st.a2.coeff(p as usize), cat * Q::from_integer(3.into()).pow(p as i32));
        }
    }

    #[test]
    fn free_energy_terms() {
        let f = free_energy(&Series::one(4), 4).unwrap();
        assert_eq!(f.coeff(0), q(0));
        assert_eq!(f.coeff(1), qr(1, 2));
        assert_eq!(f.coeff(2), qr(9, 8));
        assert!(free_energy(&Series::one(0), 0).is_err());
    }

    #[test]
    fn two_free_energy_forms_agree() {
        let st = PlanarState::bare(10).unwrap();
        assert_eq!(free_energy(&st.t, 10).unwrap(), free_energy_from_a2(&st.a2).unwrap());
        let t = Series::from_ints(&[1, 2, -1, 3], 8);
        let st = PlanarState::with_t(t.clone()).unwrap();
        assert_eq!(free_energy(&t, 8).unwrap(), free_energy_from_a2(&st.a2).unwrap());
    }

    #[test]
    fn gaussian_and_first_order_two_point() {
        let st = PlanarState::bare(1).unwrap();
        assert_eq!(two_point(&st).unwrap(), Series::from_ints(&[1, 2], 1));
        assert_eq!(four_point(&st).unwrap().coeff(0), q(0));
    }

    #[test]
    fn renormalized_series() {
        let r = renormalize_t(9).unwrap();
        assert!(two_point(&r.state).unwrap().sub(&Series::one(9)).is_zero());
        assert!(r.state.quartic_residual().unwrap().is_zero());
        assert_eq!(r.gamma().unwrap().truncate(5), Series::from_ints(&[0, 1, 2, 6, 22, 91], 5));
        assert_eq!(r.gamma().unwrap(), four_point(&r.state).unwrap());
        let f = r.free_energy().unwrap();
        let expect = Series::new(vec![q(0), q(0), qr(1, 4), qr(1, 3), qr(3, 4), qr(11, 5), qr(91, 12)], 6);
        assert_eq!(f.truncate(6), expect);
        // Γ = 2 dF/dg
        assert_eq!(f.derivative().scale(&q(2)), r.gamma().unwrap().truncate(8));
        assert_eq!(renormalize_t(0).unwrap().t().coeff(0), q(1));
    }

    #[test]
    fn c_recursion() {
        assert_eq!(c_coefficient(2).unwrap(), qr(1, 2));
        assert_eq!(c_coefficient(3).unwrap(), qr(3, 2));
        assert!(c_coefficient(1).is_err());
    }

    #[test]
    fn density_normalization_and_moment() {
        for g in [0.0, 0.01, 0.05, -0.02] {
            let d = Density::at(g).unwrap();
            assert!((d.moment(0) - 1.0).abs() < 1e-10, "g={g}");
            assert!((d.moment(1) - d.two_point()).abs() < 1e-10, "g={g}");
        }
        assert!(Density::at(0.1).is_err());
    }
}
