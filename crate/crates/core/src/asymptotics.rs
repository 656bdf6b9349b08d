//! Growth constants and critical exponents from exact coefficients.
//!
//! For `cₚ ~ C λᵖ p^α` the ratios obey `cₚ/cₚ₋₁ = λ + λα/p + O(1/p²)`. A least
//! squares fit of the ratios against `1, 1/p, 1/p²` over a window of the
//! deepest terms recovers `λ` and `α`. Floating point lives only here.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{to_f64, Q};

pub const MIN_TERMS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticFit {
    pub growth: f64,
    pub exponent: f64,
    /// Inclusive range of orders whose ratios entered the fit.
    pub window: (usize, usize),
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Largest absolute deviation of a fitted ratio from the data.
    pub max_residual: f64,
    /// The same fit on the window shifted two orders down.
    pub shifted_growth: f64,
    pub shifted_exponent: f64,
}

/// Fit the orders `window.0 ..= window.1` (each ratio uses the previous term too).
pub fn fit_growth_exponent(coeffs: &[Q], window: (usize, usize)) -> Result<AsymptoticFit> {
    let (lo, hi) = window;
    if coeffs.len() < MIN_TERMS {
        return Err(Error::InvalidArgument(format!("need at least {MIN_TERMS} coefficients, got {}", coeffs.len())));
    }
    if lo < 3 || hi >= coeffs.len() || hi < lo + 3 {
        return Err(Error::InvalidArgument(format!("bad window {lo}..={hi} for {} coefficients", coeffs.len())));
    }
    if let Some(p) = (lo - 3..=hi).find(|&p| coeffs[p] <= Q::zero()) {
        return Err(Error::InvalidArgument(format!("coefficient {p} is not positive")));
    }
    let (growth, exponent, max_residual) = ratio_fit(coeffs, lo, hi);
    let (shifted_growth, shifted_exponent, _) = ratio_fit(coeffs, lo - 2, hi - 2);
    Ok(AsymptoticFit {
        growth,
        exponent,
        window,
        diagnostics: Diagnostics { max_residual, shifted_growth, shifted_exponent },
    })
}

/// Fit the last `width` ratios of the series.
pub fn fit_tail(coeffs: &[Q], width: usize) -> Result<AsymptoticFit> {
    let hi = coeffs.len().saturating_sub(1);
    fit_growth_exponent(coeffs, (hi.saturating_sub(width.saturating_sub(1)), hi))
}

fn ratio_fit(coeffs: &[Q], lo: usize, hi: usize) -> (f64, f64, f64) {
    let rows: Vec<([f64; 3], f64)> = (lo..=hi)
        .map(|p| {
            let x = 1.0 / p as f64;
            ([1.0, x, x * x], to_f64(&(&coeffs[p] / &coeffs[p - 1])))
        })
        .collect();
    let mut ata = [[0.0; 3]; 3];
    let mut atb = [0.0; 3];
    for (a, b) in &rows {
        for i in 0..3 {
            atb[i] += a[i] * b;
            for j in 0..3 {
                ata[i][j] += a[i] * a[j];
            }
        }
    }
    let sol = solve3(ata, atb);
    let max_residual = rows
        .iter()
        .map(|(a, b)| (a[0] * sol[0] + a[1] * sol[1] + a[2] * sol[2] - b).abs())
        .fold(0.0, f64::max);
    (sol[0], sol[1] / sol[0], max_residual)
}

fn solve3(mut m: [[f64; 3]; 3], mut v: [f64; 3]) -> [f64; 3] {
    for c in 0..3 {
        let piv = (c..3).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        m.swap(c, piv);
        v.swap(c, piv);
        for r in c + 1..3 {
            let f = m[r][c] / m[c][c];
            for k in c..3 {
                m[r][k] -= f * m[c][k];
            }
            v[r] -= f * v[c];
        }
    }
    let mut x = [0.0; 3];
    for r in (0..3).rev() {
        let s: f64 = (r + 1..3).map(|k| m[r][k] * x[k]).sum();
        x[r] = (v[r] - s) / m[r][r];
    }
    x
}

/// The conjectured string susceptibility of the O(τ) model and the tangle
/// exponent derived from it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjecturedExponent {
    pub tau: f64,
    pub gamma: f64,
    pub tangle_exponent: f64,
    /// Exponent of the count of prime alternating knots, `−(19 + √13)/6`.
    pub knot_exponent: f64,
}

/// `γ(τ) = (τ − 2 − √((2 − τ)(26 − τ)))/12`, defined for `−2 ≤ τ ≤ 2`.
pub fn conjectured_exponent(tau: &Q) -> Result<ConjecturedExponent> {
    let t = to_f64(tau);
    if !(-2.0..=2.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("τ = {tau} is outside the conjecture's range [-2, 2]")));
    }
    let gamma = (t - 2.0 - ((2.0 - t) * (26.0 - t)).sqrt()) / 12.0;
    Ok(ConjecturedExponent { tau: t, gamma, tangle_exponent: gamma - 2.0, knot_exponent: -(19.0 + 13f64.sqrt()) / 6.0 })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceConstant {
    pub name: &'static str,
    pub exact: &'static str,
    pub value: f64,
}

/// Published constants, for annotating reports. Nothing here is computed.
pub fn reference_constants() -> Vec<ReferenceConstant> {
    vec![
        ReferenceConstant { name: "bare free energy growth", exact: "12", value: 12.0 },
        ReferenceConstant { name: "prime link growth", exact: "27/4", value: 6.75 },
        ReferenceConstant {
            name: "flype class growth",
            exact: "(101+sqrt(21001))/40",
            value: (101.0 + 21001f64.sqrt()) / 40.0,
        },
        ReferenceConstant { name: "oriented tangle growth (tau=2)", exact: "1/g_c", value: 6.28329764 },
        ReferenceConstant { name: "free energy exponent", exact: "-7/2", value: -3.5 },
        ReferenceConstant { name: "two-tangle exponent", exact: "-5/2", value: -2.5 },
        ReferenceConstant { name: "knot exponent", exact: "-(19+sqrt(13))/6", value: -(19.0 + 13f64.sqrt()) / 6.0 },
    ]
}
