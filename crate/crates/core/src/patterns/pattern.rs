//! Link patterns: fixed-point-free involutions of the boundary points.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};

/// A pairing of `2k` boundary points, stored 0-based as `pairing[i] = partner of i`.
///
/// The canonical text form is the 1-based array `(π(1), …, π(2k))` or cycle
/// notation such as `(12)(34)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    pairing: Vec<u8>,
}

impl LinkPattern {
    pub fn new(pairing: Vec<u8>) -> Result<Self> {
        let n = pairing.len();
        if n % 2 != 0 || n > 250 {
            return Err(Error::InvalidArgument(format!("pattern of odd or excessive size {n}")));
        }
        for (i, &p) in pairing.iter().enumerate() {
            let p = p as usize;
            if p >= n || p == i || pairing[p] as usize != i {
                return Err(Error::InvalidArgument(format!("not a fixed-point-free involution: {pairing:?}")));
            }
        }
        Ok(LinkPattern { pairing })
    }

    pub(crate) fn from_raw(pairing: Vec<u8>) -> Self {
        debug_assert!(LinkPattern::new(pairing.clone()).is_ok(), "{pairing:?}");
        LinkPattern { pairing }
    }

    pub fn empty() -> Self {
        LinkPattern { pairing: Vec::new() }
    }

    /// From 1-based partner array `(π(1), …, π(2k))`.
    pub fn from_one_based(arr: &[usize]) -> Result<Self> {
        let v: Option<Vec<u8>> = arr.iter().map(|&x| x.checked_sub(1).and_then(|y| u8::try_from(y).ok())).collect();
        Self::new(v.ok_or_else(|| Error::InvalidArgument(format!("bad 1-based pattern {arr:?}")))?)
    }

    /// Parse `(12)(34)` or `(1,4)(2,6)(3,5)`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad link pattern {s:?}"));
        let mut pairs = Vec::new();
        for chunk in s.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let body = chunk.strip_prefix('(').ok_or_else(bad)?;
            let nums: Vec<usize> = if body.contains(',') {
                body.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
            } else {
                body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
            };
            if nums.len() != 2 {
                return Err(bad());
            }
            pairs.push((nums[0], nums[1]));
        }
        let n = 2 * pairs.len();
        let mut arr = vec![0usize; n];
        for (a, b) in pairs {
            if a == 0 || b == 0 || a > n || b > n || arr[a - 1] != 0 || arr[b - 1] != 0 {
                return Err(bad());
            }
            arr[a - 1] = b;
            arr[b - 1] = a;
        }
        Self::from_one_based(&arr)
    }

    pub fn size(&self) -> usize {
        self.pairing.len()
    }

    pub fn k(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.pairing.is_empty()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i] as usize
    }

    pub fn raw(&self) -> &[u8] {
        &self.pairing
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.pairing.iter().map(|&p| p as usize + 1).collect()
    }

    /// All `(2k-1)!!` patterns, deterministic order: point 0's partner varies slowest.
    pub fn enumerate(k: usize) -> Vec<LinkPattern> {
        fn rec(cur: &mut Vec<u8>, out: &mut Vec<LinkPattern>) {
            match cur.iter().position(|&x| x == u8::MAX) {
                None => out.push(LinkPattern { pairing: cur.clone() }),
                Some(i) => {
                    for j in i + 1..cur.len() {
                        if cur[j] == u8::MAX {
                            cur[i] = j as u8;
                            cur[j] = i as u8;
                            rec(cur, out);
                            cur[i] = u8::MAX;
                            cur[j] = u8::MAX;
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut vec![u8::MAX; 2 * k], &mut out);
        out
    }

    /// `(01)(23)…`, the base point of the coset-type coordinates.
    pub fn identity(k: usize) -> LinkPattern {
        LinkPattern { pairing: (0..2 * k).map(|i| (i ^ 1) as u8).collect() }
    }

    /// Half-lengths of the loops formed by gluing two pairings; as a partition
    /// of k this is the coset type of the pair.
    pub fn coset_type(&self, other: &LinkPattern) -> Result<Partition> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(Partition::new(loop_lengths(&self.pairing, &other.pairing)))
    }

    /// Number of closed loops after gluing (half the number of cycles of π∘π′).
    pub fn loops_with(&self, other: &LinkPattern) -> Result<usize> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(loop_lengths(&self.pairing, &other.pairing).len())
    }

    /// Number of cycles of the permutation π∘π′.
    pub fn composition_cycles(&self, other: &LinkPattern) -> Result<usize> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let n = self.size();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for s in 0..n {
            if !seen[s] {
                cycles += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = self.partner(other.partner(x));
                }
            }
        }
        Ok(cycles)
    }

    /// Conjugation `σ·π = σ π σ⁻¹`, `sigma[i]` the image of point `i`.
    pub fn conjugate(&self, sigma: &[usize]) -> LinkPattern {
        let mut out = vec![0u8; self.size()];
        for (i, &p) in self.pairing.iter().enumerate() {
            out[sigma[i]] = sigma[p as usize] as u8;
        }
        LinkPattern { pairing: out }
    }

    /// Representative of the dihedral orbit (rotations and reflections of the disk).
    pub fn canonical(&self) -> LinkPattern {
        LinkPattern { pairing: canonical_raw(&self.pairing) }
    }

    pub fn rotated(&self, s: usize) -> LinkPattern {
        let n = self.size();
        LinkPattern { pairing: (0..n).map(|i| ((self.partner((i + s) % n) + n - s) % n) as u8).collect() }
    }

    pub fn reflected(&self) -> LinkPattern {
        let n = self.size();
        LinkPattern { pairing: (0..n).map(|i| ((n - self.partner((n - i) % n)) % n) as u8).collect() }
    }

    /// True if no two chords cross.
    pub fn is_noncrossing(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            let b = self.partner(a);
            a > b || (a + 1..b).all(|c| {
                let d = self.partner(c);
                a < d && d < b
            })
        })
    }
}

/// Lengths (in pairs) of the loops of the union of two pairings.
pub(crate) fn loop_lengths(p: &[u8], q: &[u8]) -> Vec<usize> {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        loop {
            seen[x] = true;
            let y = p[x] as usize;
            seen[y] = true;
            len += 1;
            x = q[y] as usize;
            if x == s {
                break;
            }
        }
        out.push(len);
    }
    out
}

pub(crate) fn canonical_raw(p: &[u8]) -> Vec<u8> {
    let n = p.len();
    if n <= 2 {
        return p.to_vec();
    }
    let mut best: Vec<u8> = p.to_vec();
    let mut cand = vec![0u8; n];
    for s in 0..n {
        // rotation: new i ↔ old (i+s)
        let mut better = false;
        let mut decided = false;
        for i in 0..n {
            let v = ((p[(i + s) % n] as usize + n - s) % n) as u8;
            cand[i] = v;
            if !decided {
                if v < best[i] {
                    better = true;
                    decided = true;
                } else if v > best[i] {
                    decided = true;
                }
            }
        }
        if better {
            best.copy_from_slice(&cand);
        }
        // reflection: new i ↔ old (s - i)
        let mut better = false;
        let mut decided = false;
        for i in 0..n {
            let old = (s + n - i) % n;
            let v = ((s + n - p[old] as usize) % n) as u8;
            cand[i] = v;
            if !decided {
                if v < best[i] {
                    better = true;
                    decided = true;
                } else if v > best[i] {
                    decided = true;
                }
            }
        }
        if better {
            best.copy_from_slice(&cand);
        }
    }
    best
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
        let wide = self.size() > 9;
        for i in 0..self.size() {
            let j = self.partner(i);
            if i < j {
                if wide {
                    write!(f, "({},{})", i + 1, j + 1)?;
                } else {
                    write!(f, "({}{})", i + 1, j + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinkPattern{self}")
    }
}

impl Serialize for LinkPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinkPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        LinkPattern::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LinkPattern {
        LinkPattern::parse(s).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(LinkPattern::enumerate(1), vec![lp("(12)")]);
        let k2 = LinkPattern::enumerate(2);
        assert_eq!(k2, vec![lp("(12)(34)"), lp("(13)(24)"), lp("(14)(23)")]);
        assert_eq!(LinkPattern::enumerate(5).len(), 945);
        assert_eq!(LinkPattern::enumerate(0), vec![LinkPattern::empty()]);
    }

    #[test]
    fn loops_and_cycles() {
        let a = lp("(12)");
        assert_eq!(a.composition_cycles(&a).unwrap(), 2);
        assert_eq!(a.loops_with(&a).unwrap(), 1);
        let b = lp("(12)(34)");
        assert_eq!(b.composition_cycles(&b).unwrap(), 4);
        let c = lp("(13)(24)");
        assert_eq!(b.composition_cycles(&c).unwrap(), 2);
        assert_eq!(b.coset_type(&c).unwrap(), Partition(vec![2]));
        assert!(a.loops_with(&b).is_err());
    }

    #[test]
    fn canonical_is_dihedral_invariant() {
        let p = lp("(14)(26)(35)");
        let c = p.canonical();
        for s in 0..6 {
            assert_eq!(p.rotated(s).canonical(), c);
            assert_eq!(p.rotated(s).reflected().canonical(), c);
        }
        assert_eq!(lp("(12)(34)").canonical(), lp("(14)(23)").canonical());
        assert_ne!(lp("(12)(34)").canonical(), lp("(13)(24)").canonical());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(lp("(1,4)(2,6)(3,5)"), lp("(14)(26)(35)"));
        assert_eq!(lp("(12)(34)").one_based(), vec![2, 1, 4, 3]);
        assert!(LinkPattern::parse("(11)").is_err());
        assert!(LinkPattern::new(vec![0, 1]).is_err());
    }

    #[test]
    fn noncrossing_detection() {
        assert!(lp("(14)(23)").is_noncrossing());
        assert!(!lp("(13)(24)").is_noncrossing());
        let nc = LinkPattern::enumerate(4).iter().filter(|p| p.is_noncrossing()).count();
        assert_eq!(nc, 14);
    }
}
