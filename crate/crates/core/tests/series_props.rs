use proptest::prelude::*;
use tangle_core::rational::{format_q, parse_q, qr};
use tangle_core::series::{residual, solve_algebraic};
use tangle_core::{Poly, Series, Q};

const N: usize = 8;

fn small_rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| qr(n, d))
}

fn series_with(c0: Option<Q>) -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), N + 1).prop_map(move |mut cs| {
        if let Some(c) = &c0 {
            cs[0] = c.clone();
        }
        Series::new(cs, N)
    })
}

fn reversible() -> impl Strategy<Value = Series> {
    (series_with(Some(qr(0, 1))), 1i64..=3).prop_map(|(mut s, lead)| {
        s.set_coeff(1, qr(lead, 1));
        s
    })
}

proptest! {
    #[test]
    fn inverse_is_two_sided(a in series_with(Some(qr(1, 1)))) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.mul(&inv), Series::one(N));
        prop_assert_eq!(inv.inverse().unwrap(), a);
    }

    #[test]
    fn multiplication_commutes_and_distributes(a in series_with(None), b in series_with(None), c in series_with(None)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn reversion_inverts_composition(f in reversible()) {
        let r = f.reversion().unwrap();
        prop_assert_eq!(f.compose(&r).unwrap(), Series::var(N));
        prop_assert_eq!(r.compose(&f).unwrap(), Series::var(N));
    }

    #[test]
    fn composition_is_associative(a in series_with(None), b in reversible(), c in reversible()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn log_and_exp_are_inverse(h in series_with(Some(qr(0, 1)))) {
        let e = h.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), h.clone());
        prop_assert_eq!(e.mul(&h.neg().exp().unwrap()), Series::one(N));
    }

    #[test]
    fn derivative_undoes_integral(a in series_with(None)) {
        prop_assert_eq!(a.integral().derivative(), a);
    }

    #[test]
    fn json_round_trip(a in series_with(None)) {
        prop_assert_eq!(Series::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn rationals_print_and_parse(x in small_rational()) {
        prop_assert_eq!(parse_q(&format_q(&x)).unwrap(), x);
    }

    #[test]
    fn interpolation_recovers_polynomials(cs in prop::collection::vec(-9i64..=9, 1..6)) {
        let p = Poly::from_ints(&cs);
        let points: Vec<(Q, Q)> = (0..cs.len() as i64).map(|x| (qr(2 * x + 1, 2), p.eval(&qr(2 * x + 1, 2)))).collect();
        prop_assert_eq!(Poly::interpolate(&points).unwrap(), p);
    }
}

#[test]
fn newton_solves_the_catalan_equation() {
    // y = 1 + g y², written as (1) + (-1) y + g y² = 0.
    let p = vec![Series::one(N), Series::one(N).neg(), Series::var(N)];
    let y = solve_algebraic(&p, qr(1, 1)).unwrap();
    assert_eq!(y, Series::from_ints(&[1, 1, 2, 5, 14, 42, 132, 429, 1430], N));
    assert!(residual(&p, &y).is_zero());
}

#[test]
fn shifts_and_truncation_keep_precision_honest() {
    let a = Series::from_ints(&[0, 0, 3, 1], 5);
    let down = a.shift_down(2).unwrap();
    assert_eq!(down.order(), 3);
    assert_eq!(down.coeffs(), Series::from_ints(&[3, 1], 3).coeffs());
    assert!(a.shift_down(3).is_err());
    assert_eq!(a.mul(&Series::one(2)).order(), 2);
    assert!(Series::<Q>::var(5).inverse().is_err());
}
