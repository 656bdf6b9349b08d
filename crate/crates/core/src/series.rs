//! Truncated formal power series in the coupling `g` with exact coefficients.
//!
//! A [`Series`] always carries its truncation order explicitly: it knows the
//! coefficients of `g⁰ … gᴺ` and nothing beyond. Binary operations truncate
//! to the smaller of the two orders, so precision is never invented.

use num_traits::{One, Zero};

use crate::coeff::{Coeff, JsonCoeff};
use crate::error::{Error, Result};
use crate::rational::{q, Q};

#[derive(Clone, PartialEq, Debug)]
pub struct Series<C: Coeff = Q> {
    order: usize,
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    /// Build from leading coefficients; missing ones are zero, extra ones dropped.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The series `g`.
    pub fn var(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series { order, coeffs: (0..=order).map(f).collect() }
    }

    /// Highest retained power of `g`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn set_coeff(&mut self, i: usize, c: C) {
        if i <= self.order {
            self.coeffs[i] = c;
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a series from order {} to {order}", self.order);
        Series { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn map<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> Series<D> {
        Series { order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order.min(other.order);
        Self::from_fn(n, |i| self.coeffs[i].plus(&other.coeffs[i]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order.min(other.order);
        Self::from_fn(n, |i| self.coeffs[i].minus(&other.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        self.map(Coeff::negated)
    }

    pub fn scale(&self, s: &Q) -> Self {
        self.map(|c| c.scaled(s))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order.min(other.order);
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Series { order: n, coeffs: out }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiply by `gᵏ`, keeping the truncation order.
    pub fn shift_up(&self, k: usize) -> Self {
        Self::from_fn(self.order, |i| if i >= k { self.coeffs[i - k].clone() } else { C::zero() })
    }

    /// Divide by `gᵏ`; the low coefficients must vanish and the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order {
            return Err(Error::InvalidArgument(format!("cannot divide an order-{} series by g^{k}", self.order)));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("series is not divisible by g^{k}")));
        }
        Ok(Series { order: self.order - k, coeffs: self.coeffs[k..].to_vec() })
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .try_inv()
            .ok_or_else(|| Error::NotInvertible(format!("constant term {:?}", self.coeffs[0])))?;
        let n = self.order;
        let mut out = vec![C::zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.plus(&self.coeffs[j].times(&out[k - j]));
                }
            }
            out[k] = acc.times(&c0).negated();
        }
        Ok(Series { order: n, coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn derivative(&self) -> Self {
        if self.order == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order - 1, |i| self.coeffs[i + 1].scaled(&q(i as i64 + 1)))
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integral(&self) -> Self {
        Self::from_fn(self.order + 1, |i| {
            if i == 0 {
                C::zero()
            } else {
                self.coeffs[i - 1].scaled(&Q::new(1.into(), (i as i64).into()))
            }
        })
    }

    /// `log(f)` for `f(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != C::one() {
            return Err(Error::InvalidArgument("log needs constant term 1".into()));
        }
        if self.order == 0 {
            return Ok(Self::zero(0));
        }
        let d = self.derivative().div(&self.truncate(self.order - 1))?;
        Ok(d.integral())
    }

    /// `exp(f)` for `f(0) = 0`, by the recurrence `n·eₙ = Σ k·fₖ·eₙ₋ₖ`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("exp needs constant term 0".into()));
        }
        let n = self.order;
        let mut out = vec![C::zero(); n + 1];
        out[0] = C::one();
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc = acc.plus(&self.coeffs[k].scaled(&q(k as i64)).times(&out[m - k]));
                }
            }
            out[m] = acc.scaled(&Q::new(1.into(), (m as i64).into()));
        }
        Ok(Series { order: n, coeffs: out })
    }

    /// `f(h(g))`; `h` must have zero constant term. Result order is the min of both.
    pub fn compose(&self, h: &Self) -> Result<Self> {
        if !h.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order.min(h.order);
        let h = h.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&h);
            acc.coeffs[0] = acc.coeffs[0].plus(&self.coeffs[i]);
        }
        Ok(acc)
    }

    /// Compositional inverse: the series `r` with `f(r(g)) = g`.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() || self.order == 0 {
            return Err(Error::NotReversible);
        }
        let lin_inv = self.coeffs[1].try_inv().ok_or(Error::NotReversible)?;
        let n = self.order;
        let fprime = self.derivative();
        // r is correct modulo g^prec.
        let mut r = Self::monomial(lin_inv, 1, 1);
        let mut prec = 2;
        while prec <= n {
            let o = (2 * prec).min(n + 1) - 1;
            let r_o = r.extend_exact(o);
            let resid = self.truncate(o).compose(&r_o)?.sub(&Self::var(o));
            let low = resid.shift_down(prec)?;
            let m = o - prec;
            let slope = fprime.truncate(m).compose(&r_o.truncate(m))?;
            r = r_o.sub(&low.div(&slope)?.shift_up_extend(prec));
            prec = o + 1;
        }
        Ok(r.truncate(n))
    }

    /// Multiply by `gᵏ` and raise the order by `k` (exact, no information lost).
    pub fn shift_up_extend(&self, k: usize) -> Self {
        Self::from_fn(self.order + k, |i| if i >= k { self.coeffs[i - k].clone() } else { C::zero() })
    }

    /// Raise the truncation order by padding with zeros. Only valid when the
    /// caller knows the series is exactly a polynomial of degree ≤ current order.
    pub fn extend_exact(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    /// Substitute a coefficient-level map then collapse, e.g. evaluating τ.
    pub fn map_to<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> Series<D> {
        self.map(f)
    }

    pub fn to_json(&self) -> serde_json::Value
    where
        C: JsonCoeff,
    {
        serde_json::json!({
            "truncation_order": self.order,
            "coeffs": self.coeffs.iter().map(JsonCoeff::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self>
    where
        C: JsonCoeff,
    {
        let order = v["truncation_order"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing truncation_order".into()))? as usize;
        let arr = v["coeffs"].as_array().ok_or_else(|| Error::Parse("missing coeffs".into()))?;
        if arr.len() != order + 1 {
            return Err(Error::Parse(format!(
                "coeffs has {} entries for truncation order {order}",
                arr.len()
            )));
        }
        let coeffs = arr.iter().map(C::from_json).collect::<Result<Vec<_>>>()?;
        Ok(Series { order, coeffs })
    }
}

/// Polynomial in `y` whose coefficients are series in `g`, lowest power first.
pub type SeriesPoly<C> = Vec<Series<C>>;

fn eval_poly_at<C: Coeff>(p: &[Series<C>], y: &Series<C>, order: usize) -> Series<C> {
    let mut acc = Series::zero(order);
    for c in p.iter().rev() {
        acc = acc.mul(y).add(&c.truncate(order));
    }
    acc
}

fn derivative_in_y<C: Coeff>(p: &[Series<C>]) -> SeriesPoly<C> {
    p.iter().enumerate().skip(1).map(|(i, c)| c.scale(&q(i as i64))).collect()
}

/// Newton iteration for the series root `y(g)` of `P(g, y) = 0` with `y(0) = y0`.
///
/// The truncation order of the answer is the minimum order among the
/// coefficients of `P`. Each step doubles the number of correct terms.
pub fn solve_algebraic<C: Coeff>(p: &[Series<C>], y0: C) -> Result<Series<C>> {
    if p.is_empty() {
        return Err(Error::InvalidArgument("empty polynomial".into()));
    }
    let n = p.iter().map(Series::order).min().unwrap_or(0);
    let dp = derivative_in_y(p);
    let seed = Series::constant(y0.clone(), 0);
    let r0 = eval_poly_at(p, &seed, 0).coeff(0);
    if !r0.is_zero() {
        return Err(Error::BadSeed(format!("{r0:?}")));
    }
    let d0 = if dp.is_empty() { C::zero() } else { eval_poly_at(&dp, &seed, 0).coeff(0) };
    if d0.try_inv().is_none() {
        return Err(Error::SingularDerivative);
    }
    let mut y = Series::constant(y0, n);
    let mut prec = 1;
    while prec <= n {
        prec = (2 * prec).min(n + 1);
        let o = prec - 1;
        let y_o = y.truncate(o);
        let resid = eval_poly_at(p, &y_o, o);
        let slope = eval_poly_at(&dp, &y_o, o);
        y = y_o.sub(&resid.div(&slope)?).extend_exact(n);
        if o == n {
            break;
        }
    }
    Ok(y.truncate(n))
}

/// Residual `P(g, y(g))`, used to check Newton output.
pub fn residual<C: Coeff>(p: &[Series<C>], y: &Series<C>) -> Series<C> {
    let n = p.iter().map(Series::order).min().unwrap_or(0).min(y.order());
    eval_poly_at(p, &y.truncate(n), n)
}

impl Series<Q> {
    pub fn from_ints(cs: &[i64], order: usize) -> Self {
        Self::new(cs.iter().map(|&c| q(c)).collect(), order)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(crate::rational::to_f64).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Geometric series `Σ (a g)ⁿ`.
    pub fn geometric(a: &Q, order: usize) -> Self {
        let mut c = Q::one();
        Self::from_fn(order, |_| {
            let out = c.clone();
            c *= a;
            out
        })
    }
}

impl Series<crate::poly::Poly> {
    /// Evaluate every coefficient polynomial at a value of its variable.
    pub fn eval_at(&self, x: &Q) -> Series<Q> {
        self.map(|p| p.eval(x))
    }
}
