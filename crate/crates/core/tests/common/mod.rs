//! Checks shared by the integration tests and the acceptance runner.

#![allow(dead_code)]

use num_traits::{One, Zero};
use tangle_core::linalg::{matmul, pseudo_inverse, transpose, Matrix};
use tangle_core::patterns::projectors::Projectors;
use tangle_core::patterns::weingarten::{fixed_table, generic_table, gram_matrix, tau_zero_table};
use tangle_core::patterns::{CosetAlgebra, LinkPattern};
use tangle_core::rational::{q, qr};
use tangle_core::{Coeff, RatFunc, Series, Q};

pub fn ints(s: &Series) -> Vec<i64> {
    s.coeffs().iter().map(|c| i64::try_from(c.to_integer()).expect("small integer")).collect()
}

pub fn expect_ints(what: &str, s: &Series, want: &[i64]) -> Result<(), String> {
    let got: Vec<Q> = s.coeffs().iter().take(want.len()).cloned().collect();
    let want_q: Vec<Q> = want.iter().map(|&x| q(x)).collect();
    if got == want_q {
        Ok(())
    } else {
        Err(format!("{what}: got {:?}, want {want:?}", got.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
    }
}

/// Fixed loop weights covering regular and singular Gram matrices.
pub fn sample_taus() -> Vec<Q> {
    vec![q(1), q(2), q(3), q(-1), q(-2), qr(1, 2), qr(-3, 2)]
}

/// The four Penrose conditions for symmetric `G`; together they pin `W` down
/// as the Moore-Penrose inverse.
fn penrose<F: Coeff>(what: &str, g: &Matrix<F>, w: &Matrix<F>) -> Result<(), String> {
    let gw = matmul(g, w);
    if &matmul(&gw, g) != g {
        return Err(format!("{what}: GWG != G"));
    }
    if &matmul(w, &gw) != w {
        return Err(format!("{what}: WGW != W"));
    }
    if transpose(&gw) != matmul(w, g) {
        return Err(format!("{what}: (GW)ᵀ != WG"));
    }
    if transpose(&gw) != gw {
        return Err(format!("{what}: GW is not symmetric"));
    }
    Ok(())
}

/// Size up to which the coset tables are also compared with an independent
/// full-matrix pseudo-inverse.
const FULL_PSEUDO_INVERSE_K: usize = 3;

/// `GWG = G`, `WGW = W` and symmetry of `GW` and `WG` on full matrices, at
/// fixed τ and at τ → 0. Up to `FULL_PSEUDO_INVERSE_K` the coset-basis table
/// must also equal a directly computed pseudo-inverse.
pub fn weingarten_fixed_and_zero(k: usize) -> Result<(), String> {
    let alg = CosetAlgebra::new(k).map_err(|e| e.to_string())?;
    let pats = LinkPattern::enumerate(k);
    let direct = |g: &Matrix<Q>, w: &Matrix<Q>, what: &str| -> Result<(), String> {
        if k <= FULL_PSEUDO_INVERSE_K && w != &pseudo_inverse(g).map_err(|e| e.to_string())? {
            return Err(format!("{what}: coset table differs from the full pseudo-inverse"));
        }
        Ok(())
    };
    for tau in sample_taus() {
        let what = format!("k={k} tau={tau}");
        let g = gram_matrix(&pats, |l| num_traits::pow(tau.clone(), l));
        let w = fixed_table(&alg, &tau).and_then(|t| t.full_matrix(&pats)).map_err(|e| e.to_string())?;
        penrose(&what, &g, &w)?;
        direct(&g, &w, &what)?;
    }
    let g = gram_matrix(&pats, |l| if l == 1 { Q::one() } else { Q::zero() });
    let w = tau_zero_table(&alg).and_then(|t| t.full_matrix(&pats)).map_err(|e| e.to_string())?;
    penrose(&format!("k={k} tau->0"), &g, &w)?;
    direct(&g, &w, &format!("k={k} tau->0"))
}

/// Generic τ: the symbolic table against the projector decomposition, and
/// the Penrose identities on full matrices over Q(τ) up to `full_k`.
pub fn weingarten_generic(k: usize, full_k: usize) -> Result<(), String> {
    let alg = CosetAlgebra::new(k).map_err(|e| e.to_string())?;
    let pats = LinkPattern::enumerate(k);
    let table = generic_table(&alg).map_err(|e| e.to_string())?;
    let gelem: Vec<RatFunc> = alg.partitions().iter().map(|p| RatFunc::from_poly(tangle_core::Poly::monomial(Q::one(), p.len()))).collect();
    if alg.mul(&gelem, &table.values) != alg.unit::<RatFunc>() {
        return Err(format!("k={k}: G·W is not the unit of the coset algebra"));
    }
    let w = table.full_matrix(&pats).map_err(|e| e.to_string())?;
    let proj = Projectors::new(k).map_err(|e| e.to_string())?;
    if proj.patterns != pats || w != proj.weingarten_generic() {
        return Err(format!("k={k}: generic table differs from the projector decomposition"));
    }
    if k <= full_k {
        let g = gram_matrix(&pats, |l| RatFunc::from_poly(tangle_core::Poly::monomial(Q::one(), l)));
        penrose(&format!("k={k} generic"), &g, &w)?;
    }
    Ok(())
}
