use std::collections::HashMap;

use num_traits::Zero;
use tangle_core::loops::{e_to_i, knot_series, solve_generic, tau_degree_bound, LoopSolver, LoopWeight};
use tangle_core::patterns::weingarten::gram_matrix;
use tangle_core::patterns::LinkPattern;
use tangle_core::rational::{q, qr};
use tangle_core::{Series, Q};

fn lp(s: &str) -> LinkPattern {
    LinkPattern::parse(s).unwrap()
}

#[test]
fn generic_coefficients_are_counting_polynomials() {
    let pats: Vec<LinkPattern> = (1..=3).flat_map(LinkPattern::enumerate).collect();
    let order = 4;
    let solved = solve_generic(&pats, order, true).unwrap();
    for (pi, biv) in pats.iter().zip(&solved) {
        for n1 in 0..=order {
            for n2 in 0..=order - n1 {
                let c = biv.coeff(n1, n2);
                assert!(c.has_nonnegative_integer_coeffs(), "{pi} at ({n1},{n2}): {c:?}");
                assert!(c.degree().unwrap_or(0) <= tau_degree_bound(pi.k(), n1, n2), "{pi} at ({n1},{n2})");
            }
        }
    }
}

#[test]
fn linear_tau_term_of_the_two_point_function_counts_knots() {
    let order = 8;
    let e = solve_generic(&[lp("(12)")], order, false).unwrap().remove(0).first_axis();
    assert!(e.coeffs().iter().all(|p| p.coeff(0).is_zero()));
    assert_eq!(e.map_to(|p| p.coeff(1)), knot_series(order).unwrap());
}

#[test]
fn fixed_tau_agrees_with_generic_evaluation() {
    let pats = LinkPattern::enumerate(2);
    let order = 6;
    let generic = solve_generic(&pats, order, false).unwrap();
    for tau in [q(3), q(-2), qr(5, 2)] {
        let mut solver = LoopSolver::new(LoopWeight::Fixed(tau.clone()));
        for (pi, biv) in pats.iter().zip(&generic) {
            let want = biv.first_axis().map_to(|p| p.eval(&tau));
            assert_eq!(solver.series(pi, order).unwrap(), want, "{pi} at tau = {tau}");
        }
    }
}

#[test]
fn two_coupling_axis_reduces_to_one_coupling() {
    let order = 5;
    let mut solver = LoopSolver::new(LoopWeight::Fixed(q(2)));
    for pi in LinkPattern::enumerate(2) {
        let biv = solver.bivariate(&pi, order).unwrap();
        assert_eq!(biv.first_axis(), solver.series(&pi, order).unwrap());
    }
}

#[test]
fn internal_correlators_reproduce_external_ones() {
    let order = 5;
    for (k, tau) in [(1, q(3)), (2, q(3)), (2, qr(1, 2)), (3, q(4))] {
        let pats = LinkPattern::enumerate(k);
        let mut solver = LoopSolver::new(LoopWeight::Fixed(tau.clone()));
        let series: Vec<Series> = pats.iter().map(|p| solver.series(p, order).unwrap()).collect();
        let g = gram_matrix(&pats, |l| num_traits::pow(tau.clone(), l));
        for n in 0..=order {
            let e: HashMap<LinkPattern, Q> = pats.iter().cloned().zip(series.iter().map(|s| s.coeff(n))).collect();
            let i = e_to_i(&e, k, &tau).unwrap();
            if k == 1 {
                assert_eq!(i[&pats[0]], &e[&pats[0]] / &tau);
            }
            for (a, row) in pats.iter().zip(&g) {
                let back: Q = pats.iter().zip(row).map(|(b, x)| x * &i[b]).sum();
                assert_eq!(back, e[a], "k = {k}, tau = {tau}, order {n}, {a}");
            }
        }
    }
}

#[test]
fn internal_correlators_need_an_invertible_gram_matrix() {
    let mut solver = LoopSolver::new(LoopWeight::Fixed(q(1)));
    let pats = LinkPattern::enumerate(2);
    let e: HashMap<LinkPattern, Q> = pats.iter().map(|p| (p.clone(), solver.coefficient(p, 2, 0).unwrap())).collect();
    assert!(e_to_i(&e, 2, &q(1)).is_err());
}
