//! Renormalised two-coupling O(τ) model and coloured flype-class tangle series.
//!
//! Bare correlators `E_π(g₁, g₂)` at unit propagator come from the loop solver
//! with symbolic τ. With propagator `1/t` a `2k`-point function rescales as
//! `t^{-k} E_π(g₁/t², g₂/t²)`. The bare parameters are then fixed as series in
//! the renormalised coupling `g` by `Δ = 1` and the two conditions on the
//! horizontally irreducible parts `H₀, H₊, H₋`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::bivariate::Bivariate;
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::loops::solve_generic;
use crate::patterns::weingarten::{generic_table, CosetAlgebra};
use crate::patterns::LinkPattern;
use crate::poly::{Poly, TauPoly};
use crate::rational::{q, qr};
use crate::ratfunc::RatFunc;
use crate::series::Series;

pub type TauSeries = Series<TauPoly>;

fn tau() -> Poly {
    Poly::x()
}

fn div_tau(s: &TauSeries) -> Result<TauSeries> {
    let c = s.coeffs().iter().map(|p| p.div_exact(&tau())).collect::<Result<Vec<_>>>()?;
    Ok(Series::new(c, s.order()))
}

/// One representative per dihedral class of patterns with `1 ≤ k ≤ kmax`.
pub fn canonical_classes(kmax: usize) -> Vec<LinkPattern> {
    let mut out = Vec::new();
    for k in 1..=kmax {
        let mut seen = std::collections::BTreeSet::new();
        for p in LinkPattern::enumerate(k) {
            seen.insert(p.canonical());
        }
        out.extend(seen);
    }
    out
}

/// Bare correlators at `t = 1` with symbolic τ.
pub struct BareCorrelators {
    order: usize,
    table: HashMap<LinkPattern, Bivariate<TauPoly>>,
}

impl BareCorrelators {
    pub fn compute(order: usize, kmax: usize) -> Result<Self> {
        let classes = canonical_classes(kmax);
        let values = solve_generic(&classes, order, true)?;
        Ok(BareCorrelators { order, table: classes.into_iter().zip(values).collect() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, p: &LinkPattern) -> Result<&Bivariate<TauPoly>> {
        self.table.get(&p.canonical()).ok_or(Error::MissingTable(p.k()))
    }

    /// `t^{-k} E_π(g₁/t², g₂/t²)` as a series in `g`.
    pub fn rescaled(&self, p: &LinkPattern, g1: &TauSeries, g2: &TauSeries, t: &TauSeries) -> Result<TauSeries> {
        let tinv = t.inverse()?;
        let tinv2 = tinv.square();
        let e = self.get(p)?.substitute(&g1.mul(&tinv2), &g2.mul(&tinv2))?;
        Ok(e.mul(&tinv.pow(p.k() as u32)))
    }
}

/// `I = W·E` coefficientwise with the symbolic Weingarten function.
pub fn internal_from_external(k: usize, e: impl Fn(&LinkPattern) -> Result<TauSeries>) -> Result<HashMap<LinkPattern, TauSeries>> {
    let table = generic_table(&CosetAlgebra::new(k)?)?;
    let w = table.lookup();
    let pats = LinkPattern::enumerate(k);
    let es: Vec<TauSeries> = pats.iter().map(&e).collect::<Result<_>>()?;
    let order = es.iter().map(Series::order).min().unwrap_or(0);
    let mut out = HashMap::new();
    for a in &pats {
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = RatFunc::zero();
            for (b, eb) in pats.iter().zip(&es) {
                let c = eb.coeff(n);
                if !c.is_zero_poly() {
                    acc = acc.plus(&w[&a.coset_type(b)?].times(&RatFunc::from_poly(c)));
                }
            }
            let p = acc
                .as_poly()
                .cloned()
                .ok_or_else(|| Error::Check(format!("I_{a} at order {n} is not polynomial in τ: {acc}")))?;
            coeffs.push(p);
        }
        out.insert(a.clone(), Series::new(coeffs, order));
    }
    Ok(out)
}

/// `(Δ, Γ₀, Γ₊, Γ₋)` from 2- and 4-point external correlators.
pub struct Combinations {
    pub delta: TauSeries,
    pub gamma0: TauSeries,
    pub gamma_plus: TauSeries,
    pub gamma_minus: TauSeries,
}

pub fn correlator_combinations(e: impl Fn(&LinkPattern) -> Result<TauSeries>) -> Result<Combinations> {
    let p12 = LinkPattern::parse("(12)")?;
    let p1234 = LinkPattern::parse("(12)(34)")?;
    let p1324 = LinkPattern::parse("(13)(24)")?;
    let delta = div_tau(&e(&p12)?)?;
    let order = delta.order();
    let d2 = delta.square();
    let tt1 = Poly::from_ints(&[0, 1, 1]);
    let gamma0 = div_tau(&e(&p1234)?.sub(&d2.mul_coeff(&tt1)))?;
    let i = internal_from_external(2, &e)?;
    let i_par = i[&p1234].truncate(order);
    let i_cross = i[&p1324].truncate(order);
    let base = i_par.sub(&d2);
    Ok(Combinations { gamma_plus: base.add(&i_cross), gamma_minus: base.sub(&i_cross), delta, gamma0 })
}

/// Bare parameters as series in the renormalised coupling.
pub struct ColouredRenormState {
    pub order: usize,
    pub g1: TauSeries,
    pub g2: TauSeries,
    pub t: TauSeries,
    bare: BareCorrelators,
}

fn h_of(gamma: &TauSeries, sign: i64) -> Result<TauSeries> {
    let order = gamma.order();
    let one = TauSeries::one(order);
    let lin = one.sub(&TauSeries::var(order).scale(&q(sign)));
    Ok(one.sub(&lin.mul(&one.add(gamma)).inverse()?))
}

/// Solve the renormalisation conditions to `order` by fixed-point iteration;
/// each pass fixes one more order of `(g₁, g₂, t)`.
pub fn renormalize(order: usize) -> Result<ColouredRenormState> {
    renormalize_with(BareCorrelators::compute(order, 2)?, order)
}

pub fn renormalize_with(bare: BareCorrelators, order: usize) -> Result<ColouredRenormState> {
    if order < 1 || bare.order() < order {
        return Err(Error::InvalidArgument(format!("renormalisation order {order} with correlators to {}", bare.order())));
    }
    let g = TauSeries::var(order);
    let mut t = TauSeries::one(order);
    let mut g1 = g.clone();
    let mut g2 = TauSeries::zero(order);
    for _ in 0..=order + 1 {
        let e = |p: &LinkPattern| bare.rescaled(p, &g1, &g2, &t);
        let c = correlator_combinations(e)?;
        let h0 = h_of(&c.gamma0, 1)?;
        let hp = h_of(&c.gamma_plus, 1)?;
        let hm = h_of(&c.gamma_minus, -1)?;
        let one = TauSeries::one(order);
        let new_g1 = g.mul(&one.sub(&hp).sub(&hm));
        let inner = hp.sub(&hm).scale(&qr(1, 2)).add(&div_tau(&h0.sub(&hp))?);
        let new_g2 = g.mul(&inner).neg();
        let new_t = t.mul(&c.delta);
        let done = new_g1 == g1 && new_g2 == g2 && new_t == t;
        g1 = new_g1;
        g2 = new_g2;
        t = new_t;
        if done {
            return Ok(ColouredRenormState { order, g1, g2, t, bare });
        }
    }
    Err(Error::Check("renormalisation iteration did not settle".into()))
}

/// Set partitions of `0..n`.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|&x| {
        a.iter().any(|&y| x < y && b.iter().any(|&u| x < u && u < y) && b.iter().any(|&v| v < x || v > y))
    })
}

/// Restriction of `p` to a subset of its points, relabelled in boundary order.
fn restrict(p: &LinkPattern, points: &[usize]) -> LinkPattern {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let pos: HashMap<usize, usize> = sorted.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    LinkPattern::new(sorted.iter().map(|&x| pos[&p.partner(x)] as u8).collect()).expect("closed under pairing")
}

/// Connected parts `I^c` by removing planar disjoint unions of smaller pieces.
pub fn connected_parts(internal: &HashMap<LinkPattern, TauSeries>) -> Result<HashMap<LinkPattern, TauSeries>> {
    let mut pats: Vec<&LinkPattern> = internal.keys().collect();
    pats.sort_by_key(|p| (p.k(), (*p).clone()));
    let mut out: HashMap<LinkPattern, TauSeries> = HashMap::new();
    for p in pats {
        let pairs: Vec<(usize, usize)> = (0..p.size()).filter(|&i| i < p.partner(i)).map(|i| (i, p.partner(i))).collect();
        let mut ic = internal[p].clone();
        for part in set_partitions(pairs.len()) {
            if part.len() < 2 {
                continue;
            }
            let blocks: Vec<Vec<usize>> =
                part.iter().map(|b| b.iter().flat_map(|&i| [pairs[i].0, pairs[i].1]).collect()).collect();
            let planar = (0..blocks.len()).all(|i| (i + 1..blocks.len()).all(|j| !blocks_cross(&blocks[i], &blocks[j])));
            if !planar {
                continue;
            }
            let mut prod = TauSeries::one(ic.order());
            for b in &blocks {
                let r = restrict(p, b);
                let piece = out.get(&r).ok_or(Error::MissingTable(r.k()))?;
                prod = prod.mul(&piece.truncate(ic.order().min(piece.order())).extend_exact(ic.order()));
            }
            ic = ic.sub(&prod);
        }
        out.insert(p.clone(), ic);
    }
    Ok(out)
}

impl ColouredRenormState {
    /// Renormalised external correlator `E_π(g)`.
    pub fn external(&self, p: &LinkPattern) -> Result<TauSeries> {
        self.bare.rescaled(p, &self.g1, &self.g2, &self.t)
    }

    pub fn combinations(&self) -> Result<Combinations> {
        correlator_combinations(|p| self.external(p))
    }

    /// `I^c_π` for every pattern with `k ≤ kmax` (limited by the bare table).
    pub fn flype_classes(&self, kmax: usize) -> Result<HashMap<LinkPattern, TauSeries>> {
        let mut internal = HashMap::new();
        for k in 1..=kmax {
            internal.extend(internal_from_external(k, |p| self.external(p))?);
        }
        connected_parts(&internal)
    }

    pub fn flype_class_series(&self, p: &LinkPattern) -> Result<TauSeries> {
        let all = self.flype_classes(p.k())?;
        all.get(p).cloned().ok_or(Error::MissingTable(p.k()))
    }
}

/// Substitute τ = 1.
pub fn at_tau_one(s: &TauSeries) -> Series {
    s.map_to(|p| p.eval(&q(1)))
}

/// Outcome of the τ = 1 consistency identities.
pub struct TauOneReport {
    pub four_point: Series,
    pub gamma_tilde: Series,
    pub six_point: Series,
    pub gamma_six: Series,
}

impl TauOneReport {
    pub fn holds(&self) -> bool {
        self.four_point == self.gamma_tilde && self.six_point == self.gamma_six
    }
}

/// Compare `2I^c_{(12)(34)} + I^c_{(13)(24)}` and the weighted sum of all six-point
/// classes at τ = 1 with the one-matrix flype results.
pub fn tau_one_crosschecks(state: &ColouredRenormState, classes: &HashMap<LinkPattern, TauSeries>) -> Result<TauOneReport> {
    let order = state.order;
    let get = |s: &str| -> Result<Series> {
        let p = LinkPattern::parse(s)?;
        classes.get(&p).map(at_tau_one).ok_or(Error::MissingTable(p.k()))
    };
    let four_point = get("(12)(34)")?.scale(&q(2)).add(&get("(13)(24)")?);
    let mut six_point = Series::zero(order);
    for (pat, mult) in [("(14)(25)(36)", 1), ("(14)(26)(35)", 3), ("(12)(35)(46)", 6), ("(14)(23)(56)", 3), ("(12)(34)(56)", 2)] {
        six_point = six_point.add(&get(pat)?.truncate(order).scale(&q(mult)));
    }
    let a = crate::flype::solve_a(order)?;
    let gamma_tilde = crate::flype::gamma_tilde_of(&a).truncate(order);
    let gamma_six = crate::planar::gamma_2l(3, &a)?.truncate(order);
    let four_point = four_point.truncate(order);
    Ok(TauOneReport { four_point, gamma_tilde, six_point, gamma_six })
}
