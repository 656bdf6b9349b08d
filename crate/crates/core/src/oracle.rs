//! Exhaustive Wick enumeration of quartic fat graphs.
//!
//! Diagrams are built by matching half-edges one at a time, always extending
//! the lowest unmatched half-edge already attached to the graph. A fresh vertex
//! is only ever introduced as the next unused label, entered through a fixed
//! representative leg of its rotation class; this quotients out vertex
//! relabellings and rotations exactly, so every surviving matching carries the
//! same weight. Faces are the cycles of `rotation ∘ matching`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::patterns::LinkPattern;
use crate::poly::{Poly, TauPoly};
use crate::rational::{q, qr, Q};
use crate::series::Series;

/// Decorated four-valent vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// `tr M⁴`; any two half-edges may be joined.
    Hermitean,
    /// `tr (M M†)²`; legs alternate `M, M†` and propagators join `M` to `M†`.
    Complex,
    /// `tr M_a M_b M_a M_b`; colour strands go straight through.
    Crossing,
    /// `tr M_a² M_b²`; colour strands turn back between adjacent legs.
    Tangency,
}

impl VertexKind {
    /// Leg polarity: complex vertices have `M` at even legs and `M†` at odd legs.
    fn polarity(self, leg: usize) -> u8 {
        match self {
            VertexKind::Complex => (leg % 2) as u8 + 1,
            _ => 0,
        }
    }

    fn strand_partner(self, leg: usize) -> usize {
        match self {
            VertexKind::Tangency => leg ^ 1,
            _ => (leg + 2) % 4,
        }
    }

    /// Representative legs through which a new vertex may be entered from a
    /// half-edge of the given polarity; rotations permute the rest.
    fn entry_legs(self, from: u8) -> &'static [usize] {
        match (self, from) {
            (VertexKind::Hermitean | VertexKind::Crossing, _) => &[0],
            (VertexKind::Tangency, _) => &[0, 1],
            (VertexKind::Complex, 1) => &[1],
            (VertexKind::Complex, _) => &[0],
        }
    }

    fn compatible(a: u8, b: u8) -> bool {
        a == 0 && b == 0 || a + b == 3
    }
}

struct Graph {
    /// Vertex of each half-edge; vertex 0 is the root (or the boundary).
    vertex: Vec<usize>,
    /// Half-edges of each vertex in cyclic order.
    corners: Vec<Vec<usize>>,
    polarity: Vec<u8>,
    partner: Vec<usize>,
    kinds: Vec<Option<VertexKind>>,
}

const NONE: usize = usize::MAX;

impl Graph {
    fn add_vertex(&mut self, legs: usize, kind: Option<VertexKind>) -> usize {
        let v = self.corners.len();
        let start = self.vertex.len();
        for leg in 0..legs {
            self.vertex.push(v);
            self.polarity.push(kind.map_or(0, |k| k.polarity(leg)));
            self.partner.push(NONE);
        }
        self.corners.push((start..start + legs).collect());
        self.kinds.push(kind);
        v
    }

    fn pop_vertex(&mut self) {
        let legs = self.corners.pop().expect("vertex").len();
        self.kinds.pop();
        for _ in 0..legs {
            self.vertex.pop();
            self.polarity.pop();
            self.partner.pop();
        }
    }

    fn link(&mut self, a: usize, b: usize) {
        self.partner[a] = b;
        self.partner[b] = a;
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.partner[a] = NONE;
        self.partner[b] = NONE;
    }

    /// Next matched half-edge after `h` around its vertex.
    fn next_matched(&self, h: usize) -> usize {
        let c = &self.corners[self.vertex[h]];
        let pos = h - c[0];
        for s in 1..=c.len() {
            let x = c[(pos + s) % c.len()];
            if self.partner[x] != NONE {
                return x;
            }
        }
        h
    }

    /// Genus of the sub-ribbon-graph spanned by matched half-edges (all vertices
    /// with at least one matched half-edge are connected by construction).
    fn partial_genus(&self, seen: &mut Vec<bool>) -> usize {
        seen.clear();
        seen.resize(self.partner.len(), false);
        let mut faces = 0;
        let mut edges2 = 0;
        let mut vertices = 0;
        for c in &self.corners {
            if c.iter().any(|&h| self.partner[h] != NONE) {
                vertices += 1;
            }
        }
        for h in 0..self.partner.len() {
            if self.partner[h] == NONE {
                continue;
            }
            edges2 += 1;
            if seen[h] {
                continue;
            }
            faces += 1;
            let mut x = h;
            while !seen[x] {
                seen[x] = true;
                x = self.next_matched(self.partner[x]);
            }
        }
        let chi = vertices as i64 - (edges2 / 2) as i64 + faces as i64;
        ((2 - chi) / 2) as usize
    }
}

struct Search<'a, F: FnMut(&Graph)> {
    g: Graph,
    /// Unused vertices per kind.
    remaining: Vec<(VertexKind, usize)>,
    planar_only: bool,
    seen: Vec<bool>,
    leaf: &'a mut F,
}

impl<F: FnMut(&Graph)> Search<'_, F> {
    fn run(&mut self) {
        let Some(h) = (0..self.g.partner.len()).find(|&h| self.g.partner[h] == NONE) else {
            if self.remaining.iter().all(|&(_, n)| n == 0) {
                (self.leaf)(&self.g);
            }
            return;
        };
        let pol = self.g.polarity[h];
        for x in h + 1..self.g.partner.len() {
            if self.g.partner[x] == NONE && VertexKind::compatible(pol, self.g.polarity[x]) {
                self.g.link(h, x);
                if !self.planar_only || self.g.partial_genus(&mut self.seen) == 0 {
                    self.run();
                }
                self.g.unlink(h, x);
            }
        }
        for i in 0..self.remaining.len() {
            let (kind, left) = self.remaining[i];
            if left == 0 {
                continue;
            }
            self.remaining[i].1 -= 1;
            let v = self.g.add_vertex(4, Some(kind));
            let base = self.g.corners[v][0];
            for &leg in kind.entry_legs(pol) {
                let x = base + leg;
                if !VertexKind::compatible(pol, self.g.polarity[x]) {
                    continue;
                }
                self.g.link(h, x);
                if !self.planar_only || self.g.partial_genus(&mut self.seen) == 0 {
                    self.run();
                }
                self.g.unlink(h, x);
            }
            self.g.pop_vertex();
            self.remaining[i].1 += 1;
        }
    }
}

fn enumerate(root: (usize, Option<VertexKind>), remaining: Vec<(VertexKind, usize)>, planar_only: bool, mut leaf: impl FnMut(&Graph)) {
    let mut g = Graph { vertex: Vec::new(), corners: Vec::new(), polarity: Vec::new(), partner: Vec::new(), kinds: Vec::new() };
    g.add_vertex(root.0, root.1);
    let mut s = Search { g, remaining, planar_only, seen: Vec::new(), leaf: &mut leaf };
    s.run();
}

/// Genus of a complete connected fat graph: `h = (2 − V + E − F)/2`.
fn genus(g: &Graph) -> usize {
    let mut seen = Vec::new();
    g.partial_genus(&mut seen)
}

/// Euler characteristic data of a fat graph given by its rotation system.
///
/// `rotation[v]` lists the half-edges at vertex `v` in cyclic order and
/// `matching[h]` is the partner of half-edge `h`.
pub fn genus_of(rotation: &[Vec<usize>], matching: &[usize]) -> Result<usize> {
    let n = matching.len();
    let mut vertex = vec![NONE; n];
    for (v, hs) in rotation.iter().enumerate() {
        for &h in hs {
            if h >= n || vertex[h] != NONE {
                return Err(Error::InvalidArgument(format!("half-edge {h} is out of range or repeated")));
            }
            vertex[h] = v;
        }
    }
    if vertex.contains(&NONE) || (0..n).any(|h| matching[h] >= n || matching[matching[h]] != h || matching[h] == h) {
        return Err(Error::InvalidArgument("matching is not a perfect involution on the half-edges".into()));
    }
    let mut parent: Vec<usize> = (0..rotation.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for h in 0..n {
        let (a, b) = (find(&mut parent, vertex[h]), find(&mut parent, vertex[matching[h]]));
        parent[a] = b;
    }
    let roots = (0..rotation.len()).filter(|&v| find(&mut parent, v) == v).count();
    if roots != 1 {
        return Err(Error::InvalidArgument(format!("diagram has {roots} components")));
    }
    let mut next = vec![0; n];
    for hs in rotation {
        for (i, &h) in hs.iter().enumerate() {
            next[h] = hs[(i + 1) % hs.len()];
        }
    }
    let mut seen = vec![false; n];
    let mut faces = 0i64;
    for s in 0..n {
        if !seen[s] {
            faces += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = next[matching[x]];
            }
        }
    }
    let chi = rotation.len() as i64 - (n / 2) as i64 + faces;
    Ok(((2 - chi) / 2) as usize)
}

/// Genus-stratified coefficients: `coeffs[n][h]` multiplies `g^n N^{2−2h}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenusSeries {
    pub model: String,
    pub max_order: usize,
    #[serde(with = "genus_coeffs")]
    pub coeffs: Vec<Vec<Q>>,
}

pub(crate) mod genus_coeffs {
    use super::Q;
    use crate::rational::{format_q, parse_q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = c.iter().map(|r| r.iter().map(format_q).collect()).collect();
        serde::Serialize::serialize(&v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let v = Vec::<Vec<String>>::deserialize(d)?;
        v.iter()
            .map(|r| r.iter().map(|x| parse_q(x).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

impl GenusSeries {
    pub fn max_genus(&self) -> usize {
        self.coeffs.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// `F^{(h)}` as a series in `g`.
    pub fn stratum(&self, h: usize) -> Series {
        Series::from_fn(self.max_order, |n| self.coeffs[n].get(h).cloned().unwrap_or_else(Q::zero))
    }

    /// Sum over all genera at `N = 1`.
    pub fn total(&self) -> Series {
        Series::from_fn(self.max_order, |n| self.coeffs[n].iter().sum())
    }

    /// `F_n` as a polynomial in `ε = N⁻²` (times `N²`).
    pub fn epsilon_poly(&self, n: usize) -> Poly {
        Poly::new(self.coeffs[n].clone())
    }
}

pub const VACUUM_MAX_ORDER: usize = 7;

/// Connected vacuum free energy `Σ_D g^n N^{χ(D)} / |Aut D|` for the Hermitean
/// `(g/4) tr M⁴` or complex `(g/2) tr (MM†)²` vertex.
pub fn enumerate_free_energy(kind: VertexKind, max_order: usize) -> Result<GenusSeries> {
    if !matches!(kind, VertexKind::Hermitean | VertexKind::Complex) {
        return Err(Error::InvalidArgument(format!("no vacuum model for {kind:?}")));
    }
    if max_order > VACUUM_MAX_ORDER {
        return Err(Error::Infeasible { order: max_order, bound: VACUUM_MAX_ORDER });
    }
    let mut coeffs = vec![Vec::new()];
    for n in 1..=max_order {
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        enumerate((4, Some(kind)), vec![(kind, n - 1)], false, |g| {
            *counts.entry(genus(g)).or_insert(0) += 1;
        });
        // Orbits have size (n-1)! s^{n-1}; the vertex weight is (1/s)^n / n! for rotation symmetry s.
        let sym = if kind == VertexKind::Hermitean { 4 } else { 2 };
        let scale = qr(1, (sym * n) as i64);
        let top = counts.keys().max().copied().unwrap_or(0);
        let row: Vec<Q> = (0..=top).map(|h| q(*counts.get(&h).unwrap_or(&0) as i64) * &scale).collect();
        coeffs.push(row);
    }
    let model = match kind {
        VertexKind::Hermitean => "hermitean",
        _ => "complex",
    };
    Ok(GenusSeries { model: model.into(), max_order, coeffs })
}

/// Planar diagrams with a boundary of `2k` labelled legs, `n1` crossing and
/// `n2` tangency vertices, sorted by internal connectivity σ; each entry holds
/// the counts by number of closed colour loops.
#[derive(Clone, Debug, PartialEq)]
pub struct InternalCounts {
    pub k: usize,
    pub n1: usize,
    pub n2: usize,
    pub by_sigma: BTreeMap<LinkPattern, Vec<u64>>,
}

pub const CORRELATOR_MAX_HALF_EDGES: usize = 30;

pub fn enumerate_internal(k: usize, n1: usize, n2: usize) -> Result<InternalCounts> {
    let half_edges = 2 * k + 4 * (n1 + n2);
    if half_edges > CORRELATOR_MAX_HALF_EDGES {
        return Err(Error::Infeasible { order: n1 + n2, bound: (CORRELATOR_MAX_HALF_EDGES - 2 * k) / 4 });
    }
    let mut by_sigma: BTreeMap<LinkPattern, Vec<u64>> = BTreeMap::new();
    let ext = 2 * k;
    enumerate((ext, None), vec![(VertexKind::Crossing, n1), (VertexKind::Tangency, n2)], true, |g| {
        let total = g.partner.len();
        let mut seen = vec![false; total];
        let mut sigma = vec![0u8; ext];
        let step = |h: usize| -> usize {
            let v = g.vertex[h];
            let kind = g.kinds[v].expect("internal vertex");
            let base = g.corners[v][0];
            base + kind.strand_partner(h - base)
        };
        for e in 0..ext {
            if seen[e] {
                continue;
            }
            seen[e] = true;
            let mut x = g.partner[e];
            while x >= ext {
                seen[x] = true;
                let y = step(x);
                seen[y] = true;
                x = g.partner[y];
            }
            seen[x] = true;
            sigma[e] = x as u8;
            sigma[x] = e as u8;
        }
        let mut loops = 0;
        for h in ext..total {
            if seen[h] {
                continue;
            }
            loops += 1;
            let mut x = h;
            while !seen[x] {
                seen[x] = true;
                let y = step(x);
                seen[y] = true;
                x = g.partner[y];
            }
        }
        let entry = by_sigma.entry(LinkPattern::new(sigma).expect("pairing")).or_default();
        if entry.len() <= loops {
            entry.resize(loops + 1, 0);
        }
        entry[loops] += 1;
    });
    Ok(InternalCounts { k, n1, n2, by_sigma })
}

impl InternalCounts {
    /// `I_σ` as a polynomial in τ.
    pub fn internal(&self, sigma: &LinkPattern) -> TauPoly {
        self.by_sigma
            .get(sigma)
            .map(|c| Poly::new(c.iter().map(|&x| q(x as i64)).collect()))
            .unwrap_or_default()
    }

    /// `E_π = Σ_σ τ^{loops(π,σ)} I_σ`.
    pub fn external(&self, pi: &LinkPattern) -> Result<TauPoly> {
        let mut acc = Poly::default();
        for (sigma, counts) in &self.by_sigma {
            let shift = pi.loops_with(sigma)?;
            let p = Poly::new(counts.iter().map(|&x| q(x as i64)).collect());
            acc = acc + p * Poly::monomial(q(1), shift);
        }
        Ok(acc)
    }
}

/// `E_π` coefficients `[n1][n2]` by brute force, up to total order `max_order`.
pub fn enumerate_correlator(pi: &LinkPattern, max_order: usize, two_coupling: bool) -> Result<Vec<Vec<TauPoly>>> {
    let mut out = Vec::new();
    for n1 in 0..=max_order {
        let mut row = Vec::new();
        for n2 in 0..=max_order - n1 {
            if n2 > 0 && !two_coupling {
                row.push(Poly::default());
                continue;
            }
            row.push(enumerate_internal(pi.k(), n1, n2)?.external(pi)?);
        }
        out.push(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitean_first_orders() {
        let f = enumerate_free_energy(VertexKind::Hermitean, 2).unwrap();
        assert_eq!(f.coeffs[1], vec![qr(1, 2), qr(1, 4)]);
        assert_eq!(f.coeffs[0], Vec::<Q>::new());
    }

    #[test]
    fn genus_of_simple_graphs() {
        // one vertex, legs 0..3, planar self-pairing (01)(23)
        assert_eq!(genus_of(&[vec![0, 1, 2, 3]], &[1, 0, 3, 2]).unwrap(), 0);
        // crossing self-pairing (02)(13)
        assert_eq!(genus_of(&[vec![0, 1, 2, 3]], &[2, 3, 0, 1]).unwrap(), 1);
        assert!(genus_of(&[vec![0, 1], vec![2, 3]], &[1, 0, 3, 2]).is_err());
    }

    #[test]
    fn two_point_first_orders() {
        let p = LinkPattern::parse("(12)").unwrap();
        let e = enumerate_correlator(&p, 2, true).unwrap();
        assert_eq!(e[0][0], Poly::from_ints(&[0, 1]));
        assert_eq!(e[1][0], Poly::from_ints(&[0, 2]));
        assert_eq!(e[0][1], Poly::from_ints(&[0, 2, 2]));
    }
}
