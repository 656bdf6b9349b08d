//! Planar loop equations for external-connectivity correlators `E_π`.
//!
//! `E_π` sums planar diagrams whose boundary legs are connected by the colour
//! strands according to `π`. Expanding on the propagator leaving leg 1 gives
//!
//! ```text
//! E_π = g₁ E_{π×} + g₂ (E_{π⊂} + E_{π⊃}) + Σ_i τ^{[π(1) = 2i]} Σ_{ρ₁,ρ₂} W_{ρ₁ρ₂} E_{π₁(ρ₁)} E_{π₂(ρ₂)}
//! ```
//!
//! where the first terms attach a crossing or a tangency vertex to leg 1 and the
//! sum splits the disk along the propagator from leg 1 to leg 2i. Strands that
//! cross the cut are reconnected through the Weingarten function `W`.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::bivariate::Bivariate;
use crate::error::{Error, Result};
use crate::patterns::pattern::{canonical_raw, loop_lengths};
use crate::patterns::weingarten::{fixed_table, tau_zero_table, CosetAlgebra, WeingartenTable};
use crate::patterns::{LinkPattern, Partition};
use crate::poly::{Poly, TauPoly};
use crate::rational::{format_q, qr, Q};

/// How closed colour loops are weighted.
#[derive(Clone, Debug, PartialEq)]
pub enum LoopWeight {
    /// Every loop weighs τ.
    Fixed(Q),
    /// Leading coefficient of `E/τ` as τ → 0.
    Zero,
}

/// New pattern after attaching a vertex to leg 0. Legs `x, 1′, y` replace leg 0;
/// old leg `j ≥ 1` moves to `j + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Attach {
    /// `1′` continues the strand of leg 0, `x` and `y` are joined.
    Cross,
    /// `x` continues the strand, `1′` and `y` are joined.
    TurnLeft,
    /// `y` continues the strand, `x` and `1′` are joined.
    TurnRight,
}

fn attach(p: &[u8], how: Attach) -> Vec<u8> {
    let n = p.len();
    let mut out = vec![0u8; n + 2];
    let (cont, a, b) = match how {
        Attach::Cross => (1, 0, 2),
        Attach::TurnLeft => (0, 1, 2),
        Attach::TurnRight => (2, 0, 1),
    };
    let old = p[0] as usize + 2;
    out[cont] = old as u8;
    out[old] = cont as u8;
    out[a] = b as u8;
    out[b] = a as u8;
    for j in 1..n {
        if j != p[0] as usize {
            out[j + 2] = p[j] + 2;
        }
    }
    out
}

/// One way of cutting the disk along the propagator from leg 0 to odd leg `j`.
struct Split {
    delta: bool,
    /// Sub-pattern skeletons; cross-line slots are filled per ρ.
    side_a: Vec<u8>,
    side_b: Vec<u8>,
    /// Local positions of the cross-line ends, in label order.
    ends_a: Vec<u8>,
    ends_b: Vec<u8>,
}

fn splits(p: &[u8]) -> Vec<Split> {
    let n = p.len();
    let mut out = Vec::new();
    for j in (1..n).step_by(2) {
        let delta = p[0] as usize == j;
        let mut pt: Vec<u8> = p.to_vec();
        if !delta {
            let (u, v) = (p[0] as usize, p[j] as usize);
            pt[u] = v as u8;
            pt[v] = u as u8;
        }
        let a_len = j - 1;
        let b_len = n - j - 1;
        let mut side_a = vec![u8::MAX; a_len];
        let mut side_b = vec![u8::MAX; b_len];
        let mut ends_a = Vec::new();
        let mut ends_b = Vec::new();
        for x in 1..j {
            let y = pt[x] as usize;
            if y < j {
                side_a[x - 1] = (y - 1) as u8;
            } else {
                ends_a.push((x - 1) as u8);
                ends_b.push((y - j - 1) as u8);
            }
        }
        for x in j + 1..n {
            let y = pt[x] as usize;
            if y > j {
                side_b[x - j - 1] = (y - j - 1) as u8;
            }
        }
        out.push(Split { delta, side_a, side_b, ends_a, ends_b });
    }
    out
}

fn fill(skeleton: &[u8], ends: &[u8], rho: &LinkPattern) -> Vec<u8> {
    let mut out = skeleton.to_vec();
    for (label, &pos) in ends.iter().enumerate() {
        out[pos as usize] = ends[rho.partner(label)];
    }
    out
}

/// Weingarten data for the cross-line count ℓ.
struct CrossTable {
    rhos: Vec<LinkPattern>,
    /// `types[i * len + j]` indexes `values` for small ℓ.
    types: Vec<u8>,
    values: Vec<Q>,
    by_type: HashMap<Partition, Q>,
}

impl CrossTable {
    fn new(table: &WeingartenTable<Q>) -> Self {
        let rhos = LinkPattern::enumerate(table.k);
        let by_type = table.lookup();
        let index: HashMap<&Partition, usize> = table.partitions.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut types = Vec::new();
        if table.k <= 5 {
            for a in &rhos {
                for b in &rhos {
                    types.push(index[&Partition::new(loop_lengths(a.raw(), b.raw()))] as u8);
                }
            }
        }
        CrossTable { rhos, types, values: table.values.clone(), by_type }
    }

    fn weight(&self, i: usize, j: usize) -> Q {
        if self.types.is_empty() {
            let t = Partition::new(loop_lengths(self.rhos[i].raw(), self.rhos[j].raw()));
            self.by_type[&t].clone()
        } else {
            self.values[self.types[i * self.rhos.len() + j] as usize].clone()
        }
    }
}

type Key = Vec<u8>;

/// Right-hand-side structure of one pattern, with canonical keys precomputed.
struct Node {
    /// Crossing, left turn and right turn attachments.
    attached: [Key; 3],
    splits: Vec<SplitNode>,
}

struct SplitNode {
    factor: Q,
    cross: usize,
    /// Canonical sub-blob keys, one per reconnection ρ of the cross lines.
    subs_a: Vec<Key>,
    subs_b: Vec<Key>,
}

/// Memoised solver at one loop weight.
pub struct LoopSolver {
    weight: LoopWeight,
    tables: HashMap<usize, CrossTable>,
    nodes: FxHashMap<Key, Arc<Node>>,
    memo: FxHashMap<(Key, u16, u16), Q>,
    /// `W · E_B` per (pattern, split, order of the B side).
    contracted: FxHashMap<(Key, u16, u16, u16), Arc<Vec<Q>>>,
}

impl LoopSolver {
    pub fn new(weight: LoopWeight) -> Self {
        LoopSolver {
            weight,
            tables: HashMap::new(),
            nodes: FxHashMap::default(),
            memo: FxHashMap::default(),
            contracted: FxHashMap::default(),
        }
    }

    pub fn weight(&self) -> &LoopWeight {
        &self.weight
    }

    /// Number of memoised `(pattern, n₁, n₂)` entries.
    pub fn states(&self) -> usize {
        self.memo.len()
    }

    fn table(&mut self, l: usize) -> Result<()> {
        if !self.tables.contains_key(&l) {
            let alg = CosetAlgebra::new(l)?;
            let t = match &self.weight {
                LoopWeight::Fixed(tau) => fixed_table(&alg, tau)?,
                LoopWeight::Zero => tau_zero_table(&alg)?,
            };
            self.tables.insert(l, CrossTable::new(&t));
        }
        Ok(())
    }

    fn node(&mut self, p: &Key) -> Result<Arc<Node>> {
        if let Some(n) = self.nodes.get(p) {
            return Ok(n.clone());
        }
        let attached = [Attach::Cross, Attach::TurnLeft, Attach::TurnRight].map(|a| canonical_raw(&attach(p, a)));
        let mut out = Vec::new();
        for sp in splits(p) {
            let a_empty = sp.side_a.is_empty();
            let b_empty = sp.side_b.is_empty();
            let l = sp.ends_a.len() / 2;
            let factor = match &self.weight {
                LoopWeight::Zero => {
                    if (sp.delta && !(a_empty && b_empty)) || (l == 0 && !a_empty && !b_empty) {
                        continue;
                    }
                    Q::one()
                }
                LoopWeight::Fixed(tau) if sp.delta => tau.clone(),
                LoopWeight::Fixed(_) => Q::one(),
            };
            let (subs_a, subs_b) = if l == 0 {
                (vec![canonical_raw(&sp.side_a)], vec![canonical_raw(&sp.side_b)])
            } else {
                self.table(l)?;
                let rhos = &self.tables[&l].rhos;
                (
                    rhos.iter().map(|r| canonical_raw(&fill(&sp.side_a, &sp.ends_a, r))).collect(),
                    rhos.iter().map(|r| canonical_raw(&fill(&sp.side_b, &sp.ends_b, r))).collect(),
                )
            };
            out.push(SplitNode { factor, cross: l, subs_a, subs_b });
        }
        let n = Arc::new(Node { attached, splits: out });
        self.nodes.insert(p.clone(), n.clone());
        Ok(n)
    }

    /// Coefficient of `g₁^{n1} g₂^{n2}` in `E_π`.
    pub fn coefficient(&mut self, pi: &LinkPattern, n1: usize, n2: usize) -> Result<Q> {
        self.e(&canonical_raw(pi.raw()), n1, n2)
    }

    /// `E_π` in the single-coupling model as a series to `order`.
    pub fn series(&mut self, pi: &LinkPattern, order: usize) -> Result<crate::Series> {
        let key = canonical_raw(pi.raw());
        let c = (0..=order).map(|n| self.e(&key, n, 0)).collect::<Result<Vec<_>>>()?;
        Ok(crate::Series::new(c, order))
    }

    /// `E_π` in both couplings, truncated at total degree `order`.
    pub fn bivariate(&mut self, pi: &LinkPattern, order: usize) -> Result<Bivariate<Q>> {
        let key = canonical_raw(pi.raw());
        let mut out = Bivariate::zero(order);
        for n in 0..=order {
            for n1 in 0..=n {
                let v = self.e(&key, n1, n - n1)?;
                out.set(n1, n - n1, v);
            }
        }
        Ok(out)
    }

    fn contracted(&mut self, p: &Key, idx: usize, node: &Node, b1: usize, b2: usize) -> Result<Arc<Vec<Q>>> {
        let key = (p.clone(), idx as u16, b1 as u16, b2 as u16);
        if let Some(v) = self.contracted.get(&key) {
            return Ok(v.clone());
        }
        let sp = &node.splits[idx];
        let eb: Vec<Q> = sp.subs_b.iter().map(|s| self.e(s, b1, b2)).collect::<Result<_>>()?;
        let t = &self.tables[&sp.cross];
        let out: Vec<Q> = (0..eb.len())
            .map(|i| {
                let mut acc = Q::zero();
                for (j, y) in eb.iter().enumerate() {
                    if !y.is_zero() {
                        acc += t.weight(i, j) * y;
                    }
                }
                acc
            })
            .collect();
        let out = Arc::new(out);
        self.contracted.insert(key, out.clone());
        Ok(out)
    }

    /// `key` must be canonical.
    fn e(&mut self, key: &Key, n1: usize, n2: usize) -> Result<Q> {
        if key.is_empty() {
            return Ok(if n1 == 0 && n2 == 0 { Q::one() } else { Q::zero() });
        }
        let mkey = (key.clone(), n1 as u16, n2 as u16);
        if let Some(v) = self.memo.get(&mkey) {
            return Ok(v.clone());
        }
        let node = self.node(key)?;
        let mut total = Q::zero();
        if n1 > 0 {
            total += self.e(&node.attached[0], n1 - 1, n2)?;
        }
        if n2 > 0 {
            total += self.e(&node.attached[1], n1, n2 - 1)?;
            total += self.e(&node.attached[2], n1, n2 - 1)?;
        }
        for (idx, sp) in node.splits.iter().enumerate() {
            let mut s = Q::zero();
            for a1 in 0..=n1 {
                for a2 in 0..=n2 {
                    let (b1, b2) = (n1 - a1, n2 - a2);
                    if sp.cross == 0 {
                        let ea = self.e(&sp.subs_a[0], a1, a2)?;
                        if !ea.is_zero() {
                            s += ea * self.e(&sp.subs_b[0], b1, b2)?;
                        }
                        continue;
                    }
                    let ea: Vec<Q> = sp.subs_a.iter().map(|k| self.e(k, a1, a2)).collect::<Result<_>>()?;
                    if ea.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let web = self.contracted(key, idx, &node, b1, b2)?;
                    for (x, y) in ea.iter().zip(web.iter()) {
                        if !x.is_zero() && !y.is_zero() {
                            s += x * y;
                        }
                    }
                }
            }
            if !s.is_zero() {
                total += &sp.factor * s;
            }
        }
        self.memo.insert(mkey, total.clone());
        Ok(total)
    }
}

/// Distinct interpolation nodes where every Gram matrix is invertible.
pub fn half_integer_nodes(count: usize) -> Vec<Q> {
    (0..count).map(|i| qr(2 * i as i64 + 1, 2)).collect()
}

/// Degree bound in τ for the `g₁^{n1} g₂^{n2}` coefficient of a `2k`-point correlator.
///
/// Boundary strands close into at most `k` loops. A closed internal loop meets the
/// rest of a connected planar diagram either at an even number (so at least two)
/// of crossings or at a tangency, hence at most `n1/2 + n2` of them.
pub fn tau_degree_bound(k: usize, n1: usize, n2: usize) -> usize {
    k + n1 / 2 + n2
}

/// Correlators with symbolic τ, obtained by exact interpolation across
/// fixed-τ solves. One node beyond the degree bound is kept as a consistency check.
pub fn solve_generic(patterns: &[LinkPattern], order: usize, two_coupling: bool) -> Result<Vec<Bivariate<TauPoly>>> {
    let kmax = patterns.iter().map(LinkPattern::k).max().unwrap_or(0);
    let top = if two_coupling { tau_degree_bound(kmax, 0, order) } else { tau_degree_bound(kmax, order, 0) };
    let nodes = half_integer_nodes(top + 2);
    let per_node: Vec<Vec<Bivariate<Q>>> = nodes
        .par_iter()
        .map(|tau| {
            let mut solver = LoopSolver::new(LoopWeight::Fixed(tau.clone()));
            patterns
                .iter()
                .map(|p| {
                    if two_coupling {
                        solver.bivariate(p, order)
                    } else {
                        let s = solver.series(p, order)?;
                        Ok(Bivariate::from_fn(order, |n1, n2| if n2 == 0 { s.coeff(n1).clone() } else { Q::zero() }))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(patterns.len());
    for (pi_idx, pi) in patterns.iter().enumerate() {
        let mut biv = Bivariate::<TauPoly>::zero(order);
        for n in 0..=order {
            for n1 in 0..=n {
                let n2 = n - n1;
                if n2 > 0 && !two_coupling {
                    continue;
                }
                let bound = tau_degree_bound(pi.k(), n1, n2);
                let pts: Vec<(Q, Q)> = nodes[..=bound]
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (t.clone(), per_node[i][pi_idx].coeff(n1, n2).clone()))
                    .collect();
                let poly = Poly::interpolate(&pts)?;
                let check = &nodes[bound + 1];
                if poly.eval(check) != *per_node[bound + 1][pi_idx].coeff(n1, n2) {
                    return Err(Error::Check(format!(
                        "τ-degree bound {bound} exceeded for {pi} at order ({n1},{n2}) (check node {})",
                        format_q(check)
                    )));
                }
                biv.set(n1, n2, poly);
            }
        }
        out.push(biv);
    }
    Ok(out)
}

/// `I = W·E` over all patterns of size `2k` at a fixed τ where `G` is invertible.
pub fn e_to_i(e: &HashMap<LinkPattern, Q>, k: usize, tau: &Q) -> Result<HashMap<LinkPattern, Q>> {
    let table = crate::patterns::weingarten::strict_table(&CosetAlgebra::new(k)?, tau)?;
    let lookup = table.lookup();
    let pats = LinkPattern::enumerate(k);
    let ev: Vec<Q> = pats
        .iter()
        .map(|p| e.get(&p.canonical()).or_else(|| e.get(p)).cloned().ok_or_else(|| Error::InvalidArgument(format!("missing E for {p}"))))
        .collect::<Result<_>>()?;
    let mut out = HashMap::new();
    for a in &pats {
        let mut s = Q::zero();
        for (b, x) in pats.iter().zip(&ev) {
            s += &lookup[&a.coset_type(b)?] * x;
        }
        out.insert(a.clone(), s);
    }
    Ok(out)
}

/// Shorthand used in tests and the CLI: the two-point knot series `Ê_{(12)}` at τ → 0.
pub fn knot_series(order: usize) -> Result<crate::Series> {
    let mut s = LoopSolver::new(LoopWeight::Zero);
    s.series(&LinkPattern::parse("(12)")?, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn lp(s: &str) -> LinkPattern {
        LinkPattern::parse(s).unwrap()
    }

    #[test]
    fn attach_conventions() {
        let p = [1u8, 0];
        assert_eq!(attach(&p, Attach::Cross), vec![2, 3, 0, 1]);
        assert_eq!(attach(&p, Attach::TurnLeft), vec![3, 2, 1, 0]);
        assert_eq!(attach(&p, Attach::TurnRight), vec![1, 0, 3, 2]);
    }

    #[test]
    fn knot_series_head() {
        let s = knot_series(7).unwrap();
        assert_eq!(s, crate::Series::from_ints(&[1, 2, 8, 42, 260, 1796, 13396, 105706], 7));
    }

    #[test]
    fn hermitean_at_tau_one() {
        let mut s = LoopSolver::new(LoopWeight::Fixed(q(1)));
        let e = s.series(&lp("(12)"), 4).unwrap();
        assert_eq!(e, crate::Series::from_ints(&[1, 2, 9, 54, 378], 4));
    }

    #[test]
    fn empty_and_order_zero() {
        let mut s = LoopSolver::new(LoopWeight::Fixed(q(3)));
        assert_eq!(s.coefficient(&LinkPattern::empty(), 0, 0).unwrap(), q(1));
        assert_eq!(s.coefficient(&lp("(12)"), 0, 0).unwrap(), q(3));
    }
}
