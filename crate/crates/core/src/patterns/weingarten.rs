//! Weingarten tables: the (pseudo-)inverse of the Gram matrix of link patterns.
//!
//! The Gram matrix `G_{π,π'} = τ^{loops(π,π')}` depends only on the coset type of
//! the pair, so it lives in the commutative algebra of functions of coset type.
//! Products in that algebra are computed from structure counts
//! `N(ν; λ, μ) = #{π'' : type(π_ν, π'') = λ, type(π'', e) = μ}`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::partition::Partition;
use super::pattern::{loop_lengths, LinkPattern};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{Poly, TauPoly};
use crate::rational::{format_q, q, Q};
use crate::ratfunc::RatFunc;

/// How the loop weight τ is treated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TauMode {
    /// τ symbolic; values are rational functions of τ.
    Generic,
    /// τ a fixed rational; the pseudo-inverse is used where `G` is singular.
    Fixed(Q),
    /// Leading behaviour as τ → 0 after dividing each entry by τ.
    Zero,
}

impl fmt::Display for TauMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauMode::Generic => write!(f, "generic"),
            TauMode::Fixed(t) => write!(f, "fixed({})", format_q(t)),
            TauMode::Zero => write!(f, "zero"),
        }
    }
}

/// Pairings of one block of `2m` points forming a single loop with `e` on that block.
fn representative(nu: &Partition) -> LinkPattern {
    let mut pairing = Vec::with_capacity(2 * nu.size());
    let mut base = 0usize;
    for &m in nu.parts() {
        for i in 0..2 * m {
            let partner = if i == 0 {
                2 * m - 1
            } else if i == 2 * m - 1 {
                0
            } else if i % 2 == 1 {
                i + 1
            } else {
                i - 1
            };
            pairing.push((base + partner) as u8);
        }
        base += 2 * m;
    }
    LinkPattern::from_raw(pairing)
}

/// Structure counts of the coset-type algebra for `2k` points.
pub struct CosetAlgebra {
    k: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `structure[ν]` lists `(λ, μ, N(ν; λ, μ))` with nonzero count.
    structure: Vec<Vec<(usize, usize, u64)>>,
}

impl CosetAlgebra {
    pub fn new(k: usize) -> Result<Self> {
        if k > 9 {
            return Err(Error::Infeasible { order: k, bound: 9 });
        }
        let partitions = Partition::all(k);
        let index: HashMap<Partition, usize> = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let all = LinkPattern::enumerate(k);
        let e = LinkPattern::identity(k);
        let types_e: Vec<usize> = all
            .iter()
            .map(|p| index[&Partition::new(loop_lengths(p.raw(), e.raw()))])
            .collect();
        let structure = partitions
            .par_iter()
            .map(|nu| {
                let rep = representative(nu);
                let mut counts: HashMap<(usize, usize), u64> = HashMap::new();
                for (p, &mu) in all.iter().zip(&types_e) {
                    let lambda = index[&Partition::new(loop_lengths(rep.raw(), p.raw()))];
                    *counts.entry((lambda, mu)).or_insert(0) += 1;
                }
                let mut v: Vec<_> = counts.into_iter().map(|((l, m), c)| (l, m, c)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        Ok(CosetAlgebra { k, partitions, index, structure })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `(1^k)`, the coset type of a pattern with itself.
    pub fn identity_index(&self) -> usize {
        self.index[&Partition(vec![1; self.k])]
    }

    pub fn unit<F: Coeff>(&self) -> Vec<F> {
        let mut v = vec![F::zero(); self.partitions.len()];
        v[self.identity_index()] = F::one();
        v
    }

    pub fn mul<F: Coeff>(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.structure
            .iter()
            .map(|entries| {
                let mut acc = F::zero();
                for &(l, m, c) in entries {
                    if !x[l].is_zero() && !y[m].is_zero() {
                        acc = acc.plus(&x[l].times(&y[m]).scaled(&q(c as i64)));
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix of multiplication by `x`: `(x * w)(ν) = Σ_μ L[ν][μ] w(μ)`.
    fn left_matrix<F: Coeff>(&self, x: &[F]) -> Matrix<F> {
        let n = self.partitions.len();
        self.structure
            .iter()
            .map(|entries| {
                let mut row = vec![F::zero(); n];
                for &(l, m, c) in entries {
                    if !x[l].is_zero() {
                        row[m] = row[m].plus(&x[l].scaled(&q(c as i64)));
                    }
                }
                row
            })
            .collect()
    }

    /// Strict inverse; errors if `x` is singular.
    pub fn inverse<F: Coeff>(&self, x: &[F]) -> Result<Vec<F>> {
        linalg::solve(self.left_matrix(x), self.unit())
    }

    /// Minimal polynomial of `x` as coefficients `m_0 … m_d` with `m_d = 1`.
    pub fn minimal_polynomial<F: Coeff>(&self, x: &[F]) -> Vec<F> {
        let n = self.partitions.len();
        let mut powers: Vec<Vec<F>> = vec![self.unit()];
        loop {
            let d = powers.len();
            // Columns are the powers; try to express x^d in terms of lower ones.
            let next = self.mul(powers.last().expect("nonempty"), x);
            let mut aug: Matrix<F> = (0..n)
                .map(|r| {
                    let mut row: Vec<F> = powers.iter().map(|p| p[r].clone()).collect();
                    row.push(next[r].clone());
                    row
                })
                .collect();
            let (red, pivots) = linalg::rref(std::mem::take(&mut aug));
            if pivots.last() == Some(&d) {
                powers.push(next);
                continue;
            }
            // x^d = Σ c_j x^j with c_j read off the reduced last column.
            let mut m = vec![F::zero(); d + 1];
            for (row, &p) in red.iter().zip(&pivots) {
                m[p] = row[d].negated();
            }
            m[d] = F::one();
            return m;
        }
    }

    /// Moore-Penrose pseudo-inverse of a diagonalisable element with simple zero eigenvalue
    /// (any symmetric real Gram element), as a polynomial in `x`.
    pub fn pseudo_inverse<F: Coeff>(&self, x: &[F]) -> Result<Vec<F>> {
        let m = self.minimal_polynomial(x);
        let eval = |coeffs: &[F]| -> Vec<F> {
            let mut acc: Vec<F> = vec![F::zero(); x.len()];
            for c in coeffs.iter().rev() {
                acc = self.mul(&acc, x);
                let mut u: Vec<F> = self.unit();
                for v in u.iter_mut() {
                    *v = v.times(c);
                }
                acc = acc.iter().zip(&u).map(|(a, b)| a.plus(b)).collect();
            }
            acc
        };
        if !m[0].is_zero() {
            // x^{-1} = -(m_1 + m_2 x + …)/m_0
            let inv0 = m[0].try_inv().ok_or_else(|| Error::NotInvertible("minimal polynomial".into()))?;
            return Ok(eval(&m[1..]).into_iter().map(|v| v.times(&inv0).negated()).collect());
        }
        // m = z r(z), r = r0 + z r1(z); x⁺ = x r1(x)² / r0²
        let r = &m[1..];
        if r[0].is_zero() {
            return Err(Error::NotInvertible("zero is a repeated root of the minimal polynomial".into()));
        }
        let r1 = eval(&r[1..]);
        let num = self.mul(x, &self.mul(&r1, &r1));
        let inv = r[0].times(&r[0]).try_inv().expect("nonzero");
        Ok(num.into_iter().map(|v| v.times(&inv)).collect())
    }
}

/// Gram values `τ^{ℓ(λ)}` as polynomials in τ.
pub fn gram_poly(alg: &CosetAlgebra) -> Vec<TauPoly> {
    alg.partitions().iter().map(|p| Poly::monomial(q(1), p.len())).collect()
}

/// Gram entry `τ^{loops(π,π')}` of two patterns.
pub fn gram_entry(a: &LinkPattern, b: &LinkPattern) -> Result<TauPoly> {
    Ok(Poly::monomial(q(1), a.loops_with(b)?))
}

/// Eigenvalue `c_μ(τ) = Π_{(i,j)∈μ} (τ + 2j − i − 1)` of the Gram matrix.
pub fn c_mu(mu: &Partition) -> TauPoly {
    mu.boxes().fold(Poly::one(), |acc, (i, j)| {
        acc.times(&Poly::new(vec![q(2 * j as i64 - i as i64 - 1), q(1)]))
    })
}

/// `lim_{τ→0} c_μ(τ)/τ`.
pub fn c_mu_hat(mu: &Partition) -> Q {
    mu.boxes().filter(|&b| b != (1, 1)).map(|(i, j)| q(2 * j as i64 - i as i64 - 1)).product()
}

/// A Weingarten function tabulated by coset type.
#[derive(Clone, Debug, PartialEq)]
pub struct WeingartenTable<V> {
    pub k: usize,
    pub mode: TauMode,
    /// True when the Gram element was singular and the pseudo-inverse was taken.
    pub pseudo: bool,
    pub partitions: Vec<Partition>,
    pub values: Vec<V>,
}

impl<V: Coeff> WeingartenTable<V> {
    pub fn value(&self, p: &Partition) -> Option<&V> {
        self.partitions.iter().position(|x| x == p).map(|i| &self.values[i])
    }

    /// `W_{π,π'}`.
    pub fn entry(&self, a: &LinkPattern, b: &LinkPattern) -> Result<&V> {
        let t = a.coset_type(b)?;
        self.value(&t).ok_or(Error::MissingTable(a.k()))
    }

    /// Lookup indexed like `partitions`, for hot loops.
    pub fn lookup(&self) -> HashMap<Partition, V> {
        self.partitions.iter().cloned().zip(self.values.iter().cloned()).collect()
    }

    pub fn full_matrix(&self, patterns: &[LinkPattern]) -> Result<Matrix<V>> {
        let map = self.lookup();
        patterns
            .iter()
            .map(|a| patterns.iter().map(|b| Ok(map[&a.coset_type(b)?].clone())).collect())
            .collect()
    }
}

/// Symbolic table over Q(τ).
pub fn generic_table(alg: &CosetAlgebra) -> Result<WeingartenTable<RatFunc>> {
    let g: Vec<RatFunc> = gram_poly(alg).into_iter().map(RatFunc::from_poly).collect();
    let values = alg.inverse(&g)?;
    Ok(WeingartenTable { k: alg.k(), mode: TauMode::Generic, pseudo: false, partitions: alg.partitions().to_vec(), values })
}

pub fn gram_at(alg: &CosetAlgebra, tau: &Q) -> Vec<Q> {
    alg.partitions().iter().map(|p| num_traits::pow(tau.clone(), p.len())).collect()
}

/// Table at a fixed τ, falling back to the pseudo-inverse where singular.
pub fn fixed_table(alg: &CosetAlgebra, tau: &Q) -> Result<WeingartenTable<Q>> {
    let g = gram_at(alg, tau);
    let (values, pseudo) = match alg.inverse(&g) {
        Ok(v) => (v, false),
        Err(Error::NotInvertible(_)) => (alg.pseudo_inverse(&g)?, true),
        Err(e) => return Err(e),
    };
    Ok(WeingartenTable { k: alg.k(), mode: TauMode::Fixed(tau.clone()), pseudo, partitions: alg.partitions().to_vec(), values })
}

/// Table at a fixed τ that refuses singular Gram matrices.
pub fn strict_table(alg: &CosetAlgebra, tau: &Q) -> Result<WeingartenTable<Q>> {
    let values = alg.inverse(&gram_at(alg, tau))?;
    Ok(WeingartenTable { k: alg.k(), mode: TauMode::Fixed(tau.clone()), pseudo: false, partitions: alg.partitions().to_vec(), values })
}

/// Pseudo-inverse of `Ĝ`, the τ → 0 limit of `G/τ`: `Ĝ_{π,π'} = 1` when the
/// two patterns close into a single loop.
pub fn tau_zero_table(alg: &CosetAlgebra) -> Result<WeingartenTable<Q>> {
    let g: Vec<Q> = alg.partitions().iter().map(|p| if p.len() == 1 { Q::one() } else { Q::zero() }).collect();
    let (values, pseudo) = match alg.inverse(&g) {
        Ok(v) => (v, false),
        Err(Error::NotInvertible(_)) => (alg.pseudo_inverse(&g)?, true),
        Err(e) => return Err(e),
    };
    Ok(WeingartenTable { k: alg.k(), mode: TauMode::Zero, pseudo, partitions: alg.partitions().to_vec(), values })
}

/// Full Gram matrix of the given patterns with entries from `value(loops)`.
pub fn gram_matrix<F: Coeff>(patterns: &[LinkPattern], value: impl Fn(usize) -> F) -> Matrix<F> {
    patterns
        .iter()
        .map(|a| patterns.iter().map(|b| value(a.loops_with(b).expect("same size"))).collect())
        .collect()
}
