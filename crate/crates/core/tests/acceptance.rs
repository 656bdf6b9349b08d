//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use common::{expect_ints, weingarten_fixed_and_zero, weingarten_generic};
use tangle_core::asymptotics::fit_tail;
use tangle_core::coloured::{renormalize_with, tau_one_crosschecks, BareCorrelators, ColouredRenormState, TauSeries};
use tangle_core::loops::{knot_series, solve_generic, LoopSolver, LoopWeight};
use tangle_core::oracle::enumerate_internal;
use tangle_core::patterns::LinkPattern;
use tangle_core::rational::{q, qr};
use tangle_core::virtual_genus::VirtualGenus;
use tangle_core::{flype, planar, Poly, Series, TauPoly};

type Check = Result<(), String>;

fn within(what: &str, start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {t:.1?}, limit {limit:?}"))
    }
}

fn flype_classes() -> Check {
    let start = Instant::now();
    let g = flype::gamma_tilde(9).map_err(|e| e.to_string())?;
    expect_ints("gamma tilde", &g, &[0, 1, 2, 4, 10, 29, 98, 372, 1538, 6755])?;
    within("gamma tilde", start, Duration::from_secs(1))
}

fn a_series() -> Check {
    let start = Instant::now();
    let a = flype::solve_a(9).map_err(|e| e.to_string())?;
    expect_ints("A", &a, &[2, 2, 6, 20, 78, 334, 1532, 7372, 36734, 187902])?;
    within("A", start, Duration::from_secs(1))
}

fn renormalized_free_energy() -> Check {
    let start = Instant::now();
    let f = planar::renormalize_t(6).and_then(|r| r.free_energy()).map_err(|e| e.to_string())?;
    let want = Series::new(vec![q(0), q(0), qr(1, 4), qr(1, 3), qr(3, 4), qr(11, 5), qr(91, 12)], 6);
    if f != want {
        return Err(format!("F = {f:?}"));
    }
    within("F", start, Duration::from_secs(1))
}

fn multi_point_functions() -> Check {
    let start = Instant::now();
    let a = flype::solve_a(9).map_err(|e| e.to_string())?;
    let g6 = planar::gamma_2l(3, &a).map_err(|e| e.to_string())?;
    let g8 = planar::gamma_2l(4, &a).map_err(|e| e.to_string())?;
    expect_ints("gamma_6", &g6, &[0, 0, 3, 14, 51, 186, 708, 2850, 12099, 53756])?;
    expect_ints("gamma_8", &g8, &[0, 0, 0, 12, 90, 468, 2196, 10044, 46170, 215832])?;
    within("gamma_6/8", start, Duration::from_secs(1))
}

fn virtual_data() -> Result<&'static VirtualGenus, String> {
    static DATA: std::sync::OnceLock<Result<VirtualGenus, String>> = std::sync::OnceLock::new();
    DATA.get_or_init(|| VirtualGenus::compute(5, 3).map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
}

fn virtual_tangles() -> Check {
    let start = Instant::now();
    let v = virtual_data()?;
    let want: [&[i64]; 4] = [&[0, 1, 2, 6, 22, 91], &[0, 1, 8, 59, 420, 2940], &[0, 0, 0, 17, 456, 7728], &[0, 0, 0, 0, 0, 1259]];
    for (h, w) in want.iter().enumerate() {
        expect_ints(&format!("gamma^({h})"), &v.gamma_h(h).map_err(|e| e.to_string())?, w)?;
    }
    within("virtual", start, Duration::from_secs(30 * 60))
}

fn generalized_flypes() -> Check {
    let start = Instant::now();
    let v = virtual_data()?;
    let want: [&[i64]; 4] = [&[0, 1, 2, 4, 10, 29], &[0, 1, 8, 57, 384, 2512], &[0, 0, 0, 17, 456, 7626], &[0, 0, 0, 0, 0, 1259]];
    for (h, w) in want.iter().enumerate() {
        expect_ints(&format!("gamma tilde^({h})"), &v.flype_quotient_h(h).map_err(|e| e.to_string())?, w)?;
    }
    within("generalized flype", start, Duration::from_secs(30 * 60))
}

fn tau_poly_series(what: &str, s: &TauSeries, want: &[&[i64]]) -> Check {
    for (n, w) in want.iter().enumerate() {
        let got = s.coeff(n);
        if got != Poly::from_ints(w) {
            return Err(format!("{what} at g^{n}: got {got}, want {w:?}"));
        }
    }
    Ok(())
}

/// The six-point state at order 7, shared with the τ = 1 criterion.
fn six_point_state() -> Result<&'static (ColouredRenormState, HashMap<LinkPattern, TauSeries>), String> {
    static DATA: std::sync::OnceLock<Result<(ColouredRenormState, HashMap<LinkPattern, TauSeries>), String>> =
        std::sync::OnceLock::new();
    DATA.get_or_init(|| {
        let st = BareCorrelators::compute(7, 3).and_then(|b| renormalize_with(b, 7)).map_err(|e| e.to_string())?;
        let classes = st.flype_classes(3).map_err(|e| e.to_string())?;
        Ok((st, classes))
    })
    .as_ref()
    .map_err(Clone::clone)
}

fn coloured_renormalization() -> Check {
    let start = Instant::now();
    let st = BareCorrelators::compute(8, 2).and_then(|b| renormalize_with(b, 8)).map_err(|e| e.to_string())?;
    tau_poly_series(
        "g1",
        &st.g1,
        &[&[], &[1], &[], &[], &[-2], &[-2, -2], &[-14, -2], &[-26, -16, -2], &[-134, -56, -2]],
    )?;
    tau_poly_series("g2", &st.g2, &[&[], &[], &[], &[-1], &[-1], &[-3], &[-5, -2], &[-27, -5], &[-89, -32, -1]])?;
    tau_poly_series(
        "t",
        &st.t,
        &[&[1], &[2], &[0, 1], &[0, -2], &[-6], &[-8, -10], &[-38, -16, -3], &[-104, -86, -14], &[-410, -338, -56, -2]],
    )?;
    let (_, classes) = six_point_state()?;
    let listings: [(&str, &[&[i64]]); 7] = [
        ("(12)(34)", &[&[], &[], &[1], &[1], &[3, 1], &[9, 1], &[21, 11, 1], &[101, 32, 1]]),
        ("(13)(24)", &[&[], &[1], &[], &[2], &[2], &[6, 3], &[30, 2], &[62, 40, 2]]),
        ("(14)(25)(36)", &[&[], &[], &[], &[2], &[], &[18], &[18], &[156, 24]]),
        ("(14)(26)(35)", &[&[], &[], &[1], &[], &[7], &[6], &[53, 8], &[154, 6]]),
        ("(12)(35)(46)", &[&[], &[], &[], &[2], &[2], &[16, 2], &[42, 2], &[171, 44, 2]]),
        ("(14)(23)(56)", &[&[], &[], &[], &[], &[4], &[8], &[42, 7], &[156, 14]]),
        ("(12)(34)(56)", &[&[], &[], &[], &[], &[3], &[9], &[41, 7], &[168, 21]]),
    ];
    for (p, want) in &listings {
        let pi = LinkPattern::parse(p).map_err(|e| e.to_string())?;
        let s = classes.get(&pi.canonical()).or_else(|| classes.get(&pi)).ok_or(format!("no class {p}"))?;
        tau_poly_series(&format!("I^c{p}"), s, want)?;
    }
    within("coloured renormalization", start, Duration::from_secs(2 * 3600))
}

fn tau_one_identities() -> Check {
    let (st, classes) = six_point_state()?;
    let r = tau_one_crosschecks(st, classes).map_err(|e| e.to_string())?;
    if r.four_point != r.gamma_tilde {
        return Err(format!("four-point {:?} vs {:?}", r.four_point, r.gamma_tilde));
    }
    if r.six_point != r.gamma_six {
        return Err(format!("six-point {:?} vs {:?}", r.six_point, r.gamma_six));
    }
    if r.four_point.order() < 7 {
        return Err("checked below g^7".into());
    }
    Ok(())
}

fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn knots() -> Check {
    let start = Instant::now();
    let s = knot_series(13).map_err(|e| e.to_string())?;
    let want: [i64; 14] = [
        1,
        2,
        8,
        42,
        260,
        1796,
        13396,
        105706,
        870772,
        7420836,
        65004584,
        582521748,
        5320936416,
        49402687392,
    ];
    expect_ints("knot series", &s, &want)?;
    within("knots", start, Duration::from_secs(3600))?;
    match peak_rss_kb() {
        Some(kb) if kb > 8 * 1024 * 1024 => Err(format!("peak memory {kb} kB")),
        _ => Ok(()),
    }
}

fn oracle_equivalence() -> Check {
    const ORDER: usize = 4;
    let pats: Vec<LinkPattern> = (1..=3).flat_map(LinkPattern::enumerate).collect();
    let generic = solve_generic(&pats, ORDER, true).map_err(|e| e.to_string())?;
    let mut solvers: Vec<(i64, LoopSolver)> = (1..=3).map(|t| (t, LoopSolver::new(LoopWeight::Fixed(q(t))))).collect();
    for k in 1..=3 {
        for n in 0..=ORDER {
            for n1 in 0..=n {
                let n2 = n - n1;
                let counts = enumerate_internal(k, n1, n2).map_err(|e| e.to_string())?;
                for (pi, biv) in pats.iter().zip(&generic).filter(|(p, _)| p.k() == k) {
                    let want: TauPoly = counts.external(pi).map_err(|e| e.to_string())?;
                    if biv.coeff(n1, n2) != &want {
                        return Err(format!("{pi} at ({n1},{n2}): solver {} vs oracle {want}", biv.coeff(n1, n2)));
                    }
                    if n2 > 0 {
                        continue;
                    }
                    for (t, solver) in solvers.iter_mut() {
                        let got = solver.coefficient(pi, n1, 0).map_err(|e| e.to_string())?;
                        if got != want.eval(&q(*t)) {
                            return Err(format!("{pi} order {n1} at tau={t}: {got} vs {}", want.eval(&q(*t))));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn weingarten_identities() -> Check {
    for k in 1..=4 {
        weingarten_fixed_and_zero(k)?;
        weingarten_generic(k, 3)?;
    }
    Ok(())
}

fn asymptotic_fits() -> Check {
    let start = Instant::now();
    let close = |what: &str, got: f64, want: f64, tol: f64| -> Check {
        if (got - want).abs() <= tol {
            Ok(())
        } else {
            Err(format!("{what}: {got} vs {want}"))
        }
    };
    let bare = planar::free_energy(&Series::one(200), 200).map_err(|e| e.to_string())?;
    let f = fit_tail(bare.coeffs(), 60).map_err(|e| e.to_string())?;
    close("bare F growth", f.growth, 12.0, 12.0 * 0.005)?;
    close("bare F exponent", f.exponent, -3.5, 0.05)?;
    let ren = planar::renormalize_t(200).and_then(|r| r.free_energy()).map_err(|e| e.to_string())?;
    let f = fit_tail(ren.coeffs(), 60).map_err(|e| e.to_string())?;
    close("prime link growth", f.growth, 6.75, 6.75 * 0.005)?;
    close("prime link exponent", f.exponent, -3.5, 0.05)?;
    let gt = flype::gamma_tilde(100).map_err(|e| e.to_string())?;
    let f = fit_tail(gt.coeffs(), 40).map_err(|e| e.to_string())?;
    let lambda = (101.0 + 21001f64.sqrt()) / 40.0;
    close("flype class growth", f.growth, lambda, lambda * 0.005)?;
    close("flype class exponent", f.exponent, -2.5, 0.05)?;
    within("fits", start, Duration::from_secs(60))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("flype-class 2-tangles through g^9", flype_classes),
        ("A-series through g^9", a_series),
        ("renormalized free energy through g^6", renormalized_free_energy),
        ("six- and eight-point functions through g^9", multi_point_functions),
        ("virtual tangles by genus through g^5", virtual_tangles),
        ("generalized flype quotient through g^5", generalized_flypes),
        ("coloured couplings through g^8, connected classes through g^7", coloured_renormalization),
        ("tau = 1 identities through g^7", tau_one_identities),
        ("knot series, 14 terms", knots),
        ("loop solver equals diagram oracle", oracle_equivalence),
        ("Weingarten identities for k <= 4", weingarten_identities),
        ("asymptotic growth and exponent fits", asymptotic_fits),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let t = start.elapsed();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({t:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
