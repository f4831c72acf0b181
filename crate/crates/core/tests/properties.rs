use proptest::prelude::*;

use rchain_core::builders::{build_ech, build_rch, ChainParams};
use rchain_core::lie::{bracket, cartan_h, matrix_unit};
use rchain_core::rational::{frac, zero};
use rchain_core::tensor::{ad_action, cobracket, mixed_schouten, schouten, wedge};
use rchain_core::{BiTensor, LieElement, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

/// Sparse traceless element: a few root vectors plus a few `H_{i,j}`.
fn element(n: usize) -> impl Strategy<Value = LieElement> {
    let unit = (1..=n, 1..=n, small_rational());
    prop::collection::vec(unit, 1..6).prop_map(move |terms| {
        let mut x = LieElement::zero(n);
        for (i, j, c) in terms {
            let piece = if i == j {
                cartan_h(n, i.min(n - 1), i.min(n - 1) + 1).unwrap()
            } else {
                matrix_unit(n, i, j).unwrap()
            };
            x = &x + &piece.scale(&c);
        }
        x
    })
}

fn skew(n: usize) -> impl Strategy<Value = BiTensor> {
    prop::collection::vec((element(n), element(n)), 1..3).prop_map(move |pairs| {
        pairs.iter().fold(BiTensor::zero(n), |acc, (a, b)| {
            &acc + &wedge(a, b).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jacobi_and_trace_in_sl11(x in element(11), y in element(11), z in element(11)) {
        let b = |a: &LieElement, c: &LieElement| bracket(a, c).unwrap();
        let jac = &(&b(&x, &b(&y, &z)) + &b(&y, &b(&z, &x))) + &b(&z, &b(&x, &y));
        prop_assert!(jac.is_zero());
        prop_assert_eq!(b(&x, &y).trace(), zero());
        prop_assert_eq!(b(&x, &y), -&b(&y, &x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn schouten_is_quadratic(r in skew(4), c in small_rational()) {
        let s = schouten(&r).unwrap();
        prop_assert_eq!(schouten(&r.scale(&c)).unwrap(), s.scale(&(&c * &c)));
    }

    #[test]
    fn schouten_polarizes(r1 in skew(4), r2 in skew(4)) {
        let mixed = mixed_schouten(&r1, &r2).unwrap();
        prop_assert_eq!(&mixed, &mixed_schouten(&r2, &r1).unwrap());
        let whole = schouten(&(&r1 + &r2)).unwrap();
        let parts = &(&schouten(&r1).unwrap() + &schouten(&r2).unwrap()) + &mixed;
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn cobracket_is_skew(r in skew(5), x in element(5)) {
        let d = cobracket(&r, &x).unwrap();
        prop_assert!(d.is_skew());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn cobracket_is_a_cocycle(x in element(5), y in element(5), xi in prop::collection::vec(nonzero_rational(), 2)) {
        let r = build_rch(5, &xi).unwrap();
        let lhs = cobracket(&r, &bracket(&x, &y).unwrap()).unwrap();
        let rhs = &ad_action(&x, &cobracket(&r, &y).unwrap()).unwrap()
            - &ad_action(&y, &cobracket(&r, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_ech_solves_cybe(
        xi in prop::collection::vec(nonzero_rational(), 3),
        zeta in prop::collection::vec(small_rational(), 3),
    ) {
        let p = ChainParams::new(7, xi, zeta).unwrap();
        prop_assert!(schouten(&build_ech(&p).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn switch_off_keeps_cybe(
        xi in prop::collection::vec(nonzero_rational(), 2),
        zeta in prop::collection::vec(small_rational(), 2),
    ) {
        let mut off = xi;
        for s in 0..2 {
            off[s] = zero();
            let p = ChainParams::new(5, off.clone(), zeta.clone()).unwrap();
            prop_assert!(schouten(&build_ech(&p).unwrap()).unwrap().is_zero());
        }
    }
}
