//! Spectral description of the Gram matrix for small sizes.
//!
//! The permutation module on pairings of `2k` points decomposes into the
//! irreducibles `2μ`, `μ ⊢ k`, each once. The central idempotents act as
//! `P^λ_{π,π'} = χ^λ(1)/(2k)! Σ_{σ·π' = π} χ^λ(σ)` and the Gram matrix is
//! `Σ_μ c_μ(τ) P^{2μ}`. This gives an inverse that shares no code with the
//! coset-algebra solve.

use std::collections::HashMap;

use num_traits::Zero;

use super::characters::{character, cycle_type, permutations};
use super::partition::Partition;
use super::pattern::LinkPattern;
use super::weingarten::{c_mu, c_mu_hat};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::rational::{factorial, Q};
use crate::ratfunc::RatFunc;

pub struct Projectors {
    pub patterns: Vec<LinkPattern>,
    /// One projector per `μ ⊢ k`, in `Partition::all(k)` order.
    pub mus: Vec<Partition>,
    pub projectors: Vec<Matrix<Q>>,
}

impl Projectors {
    pub fn new(k: usize) -> Result<Self> {
        if k > 4 {
            return Err(Error::Infeasible { order: k, bound: 4 });
        }
        let n = 2 * k;
        let patterns = LinkPattern::enumerate(k);
        let index: HashMap<LinkPattern, usize> = patterns.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mus = Partition::all(k);
        let np = patterns.len();
        let mut sums: Vec<Vec<Vec<i64>>> = vec![vec![vec![0; np]; np]; mus.len()];
        let mut char_cache: HashMap<Vec<usize>, Vec<i64>> = HashMap::new();
        for sigma in permutations(n) {
            let ct = cycle_type(&sigma);
            let chars = char_cache
                .entry(ct.clone())
                .or_insert_with(|| mus.iter().map(|mu| character(&mu.doubled(), &ct)).collect());
            for (j, p) in patterns.iter().enumerate() {
                let i = index[&p.conjugate(&sigma)];
                for (m, &c) in chars.iter().enumerate() {
                    sums[m][i][j] += c;
                }
            }
        }
        let nfact = Q::from_integer(factorial(n as u64));
        let projectors = mus
            .iter()
            .zip(sums)
            .map(|(mu, s)| {
                let dim = Q::from_integer(character(&mu.doubled(), &vec![1; n]).into());
                let scale = dim / &nfact;
                s.into_iter().map(|row| row.into_iter().map(|x| Q::from_integer(x.into()) * &scale).collect()).collect()
            })
            .collect();
        Ok(Projectors { patterns, mus, projectors })
    }

    fn combine<F: Coeff>(&self, weights: &[Option<F>]) -> Matrix<F> {
        let np = self.patterns.len();
        let mut out = vec![vec![F::zero(); np]; np];
        for (p, w) in self.projectors.iter().zip(weights) {
            let Some(w) = w else { continue };
            for i in 0..np {
                for j in 0..np {
                    if !p[i][j].is_zero() {
                        out[i][j] = out[i][j].plus(&w.scaled(&p[i][j]));
                    }
                }
            }
        }
        out
    }

    /// `Σ c_μ(τ) P^{2μ}`, which should equal the Gram matrix.
    pub fn gram(&self) -> Matrix<Poly> {
        self.combine(&self.mus.iter().map(|m| Some(c_mu(m))).collect::<Vec<_>>())
    }

    /// `Σ c_μ(τ)⁻¹ P^{2μ}`.
    pub fn weingarten_generic(&self) -> Matrix<RatFunc> {
        let w: Vec<_> = self.mus.iter().map(|m| RatFunc::from_poly(c_mu(m)).try_inv()).collect();
        self.combine(&w)
    }

    /// Pseudo-inverse at fixed τ: invert the nonzero eigenvalues only.
    pub fn weingarten_fixed(&self, tau: &Q) -> Matrix<Q> {
        let w: Vec<_> = self.mus.iter().map(|m| c_mu(m).eval(tau).try_inv()).collect();
        self.combine(&w)
    }

    /// Pseudo-inverse of the τ → 0 Gram matrix, eigenvalues `ĉ_μ`.
    pub fn weingarten_tau_zero(&self) -> Matrix<Q> {
        let w: Vec<_> = self.mus.iter().map(|m| c_mu_hat(m).try_inv()).collect();
        self.combine(&w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matmul;
    use crate::patterns::weingarten::gram_matrix;

    #[test]
    fn projectors_are_orthogonal_idempotents() {
        let pr = Projectors::new(2).unwrap();
        for (a, pa) in pr.projectors.iter().enumerate() {
            for (b, pb) in pr.projectors.iter().enumerate() {
                let prod = matmul(pa, pb);
                if a == b {
                    assert_eq!(&prod, pa);
                } else {
                    assert!(prod.iter().flatten().all(|x| x.is_zero()));
                }
            }
        }
    }

    #[test]
    fn gram_spectral_decomposition() {
        for k in 1..=3 {
            let pr = Projectors::new(k).unwrap();
            let g = gram_matrix(&pr.patterns, |l| Poly::monomial(crate::rational::q(1), l));
            assert_eq!(pr.gram(), g, "k = {k}");
        }
    }
}
