use rchain_core::builders::{
    apply_chain_automorphism, build_ech, build_kind, build_rch, solve_enlargement, ChainParams,
    Kind,
};
use rchain_core::dual::{analyze, analyze_with};
use rchain_core::json::{read_tensor_file, tensor_file, to_canonical_string, Provenance};
use rchain_core::lie::{chain_cartan, h_perp, matrix_unit};
use rchain_core::rational::{frac, int, one};
use rchain_core::tensor::{cobracket, is_cybe_solution, is_cybe_solution_with, wedge};
use rchain_core::{BiTensor, Error, Execution};

#[test]
fn every_kind_round_trips_and_solves_cybe() {
    for kind in Kind::ALL {
        for n in [3usize, 5, 7] {
            let r = match build_kind(kind, n, None, None) {
                Ok(r) => r,
                Err(Error::FixedN { .. }) => continue,
                Err(e) => panic!("{kind}({n}): {e}"),
            };
            assert!(is_cybe_solution(&r).unwrap().holds, "{kind}({n})");
            let p = Provenance {
                kind,
                n,
                xi: vec![one(); (n - 1) / 2],
                zeta: None,
                normalization_c: None,
            };
            let text = to_canonical_string(&tensor_file(&r, Some(&p)));
            let (back, prov) = read_tensor_file(&text).unwrap();
            assert_eq!(back, r);
            assert_eq!(prov.unwrap(), p);
        }
    }
}

#[test]
fn kind_errors() {
    assert!(matches!(
        build_kind(Kind::Dj3, 5, None, None),
        Err(Error::FixedN { .. })
    ));
    assert!(matches!(
        build_kind(Kind::Fch, 4, None, None),
        Err(Error::RequiresOddN { n: 4 })
    ));
    assert!(matches!(
        build_kind(Kind::Rch, 5, Some(vec![one()]), None),
        Err(Error::Arity { name: "xi", .. })
    ));
    assert!(matches!("xyz".parse::<Kind>(), Err(Error::UnknownKind(_))));
    assert_eq!("rj".parse::<Kind>().unwrap(), Kind::RJ);
}

#[test]
fn parallel_and_sequential_agree() {
    let r = build_ech(
        &ChainParams::new(
            7,
            vec![int(2), frac(-1, 3), int(5)],
            vec![one(), int(0), frac(7, 2)],
        )
        .unwrap(),
    )
    .unwrap();
    assert_eq!(
        is_cybe_solution_with(&r, Execution::Sequential).unwrap(),
        is_cybe_solution_with(&r, Execution::Parallel).unwrap()
    );
    let a = analyze_with(&r, Execution::Sequential);
    let b = analyze_with(&r, Execution::Parallel);
    assert_eq!(a.carrier, b.carrier);
    assert_eq!(a.primitive, b.primitive);
}

#[test]
fn sl3_cobracket_of_negative_root() {
    // Direct expansion gives the opposite sign to the printed 2 E13 ∧ E21.
    let r = build_rch(3, &[one()]).unwrap();
    let d = cobracket(&r, &matrix_unit(3, 2, 1).unwrap()).unwrap();
    let want = wedge(
        &matrix_unit(3, 1, 3).unwrap(),
        &matrix_unit(3, 2, 1).unwrap(),
    )
    .unwrap()
    .scale(&int(-2));
    assert_eq!(d, want);
}

#[test]
fn sl3_enlargement_matches_worked_example() {
    let sol = solve_enlargement(3).unwrap();
    let want = (&chain_cartan(3, 1, 2).unwrap() + &h_perp(3, 1).unwrap()).scale(&int(2));
    assert_eq!(sol.hat_h, vec![want]);
    assert_eq!(sol.normalization_c, one());
}

#[test]
fn automorphism_reaches_parameterized_chain() {
    let p = ChainParams::new(5, vec![int(3), frac(-2, 5)], vec![frac(1, 2), int(4)]).unwrap();
    let base = build_ech(&ChainParams::ones(5).unwrap()).unwrap();
    assert_eq!(
        apply_chain_automorphism(&base, &p).unwrap(),
        build_ech(&p).unwrap()
    );
}

#[test]
fn enlarged_carrier_contains_borel() {
    for n in [3usize, 5, 7] {
        let a = analyze(&build_ech(&ChainParams::ones(n).unwrap()).unwrap());
        assert!(a.carrier.contains_borel, "n = {n}");
        assert_eq!(a.carrier.negative_intersection_dim, (n - 1) / 2);
        assert_eq!(a.carrier.dim, n * (n + 1) / 2 - 1 + (n - 1) / 2);
        assert!(a.abelian_ideal_ok);
    }
}

#[test]
fn zero_tensor_is_total() {
    let r = BiTensor::zero(5);
    assert!(is_cybe_solution(&r).unwrap().holds);
    let a = analyze(&r);
    assert_eq!(a.carrier.dim, 0);
    assert_eq!(a.primitive.len(), 24);
}
