mod common;

use std::sync::{Arc, OnceLock};

use carpet_jder::classify::*;
use carpet_jder::constructions::{build_a2, build_extremal, build_inner, A2Params, ExtremalParams};
use carpet_jder::matrix::StructuralMatrixRing;
use carpet_jder::table::DerivationTable;
use carpet_jder::Error;
use common::{brute_force_tables, el, element_set, full, ideal, map, nt, product_example, ring, z9, z9x9, zmod};
use num_bigint::BigUint;
use proptest::prelude::*;

fn bounds() -> SolverBounds {
    SolverBounds::default()
}

fn jder_z9(n: usize) -> &'static DerivationGroup {
    static N3: OnceLock<DerivationGroup> = OnceLock::new();
    static N4: OnceLock<DerivationGroup> = OnceLock::new();
    let cell = if n == 3 { &N3 } else { &N4 };
    cell.get_or_init(|| solve_jordan_group(&z9(n), bounds()).unwrap())
}

fn der_z9_4() -> &'static DerivationGroup {
    static CELL: OnceLock<DerivationGroup> = OnceLock::new();
    CELL.get_or_init(|| solve_derivation_group(jder_z9(4).ring(), bounds()).unwrap())
}

/// `Σ c_i t_i` over the canonical basis tables.
fn combination(g: &DerivationGroup, coeffs: &[i64]) -> DerivationTable {
    g.tables()
        .iter()
        .zip(coeffs.iter().cycle())
        .fold(DerivationTable::zero(g.ring().clone()), |acc, (t, &c)| acc.add(&t.scale(c)).unwrap())
}

fn z9_extremal(r: &StructuralMatrixRing, a: i64, b: i64, g: i64) -> ExtremalParams {
    let (j, an) = (r.ideal(), r.coefficient_ring().annihilator(r.ideal()).unwrap());
    ExtremalParams { alpha: map(j, &an, &[&[a]]), beta: map(j, &an, &[&[b]]), gamma: map(j, &an, &[&[g]]) }
}

#[test]
fn solver_matches_brute_force() {
    for r in [nt(2, 3), nt(3, 3), nt(2, 5)] {
        let brute_j = brute_force_tables(&r, |t| t.verify_jordan().is_ok());
        let brute_d = brute_force_tables(&r, |t| t.verify_derivation().is_ok());
        let jder = solve_jordan_group(&r, bounds()).unwrap();
        let der = solve_derivation_group(&r, bounds()).unwrap();
        assert_eq!(element_set(jder.basis().elements()), brute_j);
        assert_eq!(element_set(der.basis().elements()), brute_d);
    }
}

#[test]
fn solver_matches_brute_force_with_mixed_orders() {
    // R_2(Z_4, 2Z_4): generators of orders 2, 2, 4, 2 and a table space of order 2^17
    let k = zmod(4);
    let j = ideal(&k, &[&[2]]);
    let r = ring(2, k, j);
    let brute = brute_force_tables(&r, |t| t.verify_jordan().is_ok());
    let jder = solve_jordan_group(&r, bounds()).unwrap();
    assert_eq!(element_set(jder.basis().elements()), brute);
}

#[test]
fn solver_bases_are_sound() {
    let fixtures: Vec<Arc<StructuralMatrixRing>> = vec![z9(3), z9(4), nt(4, 9), full(3, 3), z9x9(4)];
    for r in fixtures {
        let jder = solve_jordan_group(&r, bounds()).unwrap();
        let der = solve_derivation_group(&r, bounds()).unwrap();
        for t in jder.tables() {
            assert!(t.verify_jordan().is_ok());
        }
        for t in der.tables() {
            assert!(t.verify_derivation().is_ok());
        }
        assert!(der.is_subgroup_of(&jder).unwrap());
    }
}

#[test]
fn full_matrix_ring_has_only_inner_derivations() {
    let r = full(2, 3);
    let jder = solve_jordan_group(&r, bounds()).unwrap();
    let der = solve_derivation_group(&r, bounds()).unwrap();
    assert_eq!(jder.order(), BigUint::from(27u32));
    assert_eq!(der, jder);
    // and they are exactly the inner ones
    let inner: Vec<_> = r
        .generators()
        .iter()
        .enumerate()
        .map(|(i, _)| build_inner(&r, &r.generator_matrix(i)).unwrap().flatten())
        .collect();
    let span = carpet_jder::linalg::SubgroupBasis::from_generators(&DerivationTable::table_space(&r), &inner).unwrap();
    assert_eq!(&span, der.basis());
}

#[test]
fn inner_derivations_of_nt4_are_jordan() {
    let r = nt(4, 9);
    let jder = solve_jordan_group(&r, bounds()).unwrap();
    for (i, _) in r.generators().iter().enumerate() {
        assert!(jder.contains(&build_inner(&r, &r.generator_matrix(i)).unwrap()).unwrap());
    }
}

#[test]
fn proper_jordan_derivations_exist_for_z9() {
    let (jder, der) = (jder_z9(4), der_z9_4());
    let r = jder.ring();
    let t = build_extremal(r, &z9_extremal(r, 3, 0, 0)).unwrap();
    assert!(jder.contains(&t).unwrap());
    assert!(!der.contains(&t).unwrap());
    assert_eq!(jder.order() / der.order(), BigUint::from(27u32));
}

#[test]
fn bounds_are_enforced() {
    let tight = SolverBounds { max_unknowns: 100, max_equations: 1_000_000 };
    assert!(matches!(solve_jordan_group(&z9(4), tight), Err(Error::BoundExceeded(_))));
    let tight = SolverBounds { max_unknowns: 5000, max_equations: 100 };
    assert!(matches!(solve_derivation_group(&z9(4), tight), Err(Error::BoundExceeded(_))));
}

#[test]
fn extremal_subgroups() {
    assert!(extremal_subgroup(&nt(4, 9)).unwrap().basis().is_trivial());
    let e = extremal_subgroup(&z9(4)).unwrap();
    assert_eq!(e.order(), BigUint::from(27u32));
    let r = z9x9(4);
    let e = extremal_subgroup(&r).unwrap();
    assert!(e.contains(&build_extremal(&r, &product_example(&r)).unwrap()).unwrap());
    // each map J → Ann_K J commutes with the idempotents (1,0), (0,1), so it
    // is diagonal: 3² choices for each of α, β, γ
    assert_eq!(e.order(), BigUint::from(3u32).pow(6));
    assert!(matches!(extremal_subgroup(&z9(3)), Err(Error::DimensionTooSmall { n: 3, min: 4 })));
}

#[test]
fn decompose_zero_table() {
    let r = z9(4);
    let rep = decompose(&DerivationTable::zero(r.clone())).unwrap();
    assert!(rep.reconstruction_ok);
    assert!(rep.derivation().is_zero());
    assert!(rep.extremal.is_zero());
    assert!(rep.stages.iter().all(|s| s.ok));
    let rep = decompose_n3(&DerivationTable::zero(z9(3))).unwrap();
    assert!(rep.reconstruction_ok && rep.a2.is_zero() && rep.a3.is_zero());
}

#[test]
fn decompose_inner_plus_extremal() {
    let r = z9(4);
    let inner = build_inner(&r, &el(&r, &[1], 3, 2)).unwrap();
    let ext = build_extremal(&r, &z9_extremal(&r, 3, 0, 0)).unwrap();
    let d = inner.add(&ext).unwrap();
    let rep = decompose(&d).unwrap();
    assert!(rep.reconstruction_ok);
    assert_eq!(rep.extremal, ext);
    assert_eq!(rep.derivation(), inner);
    let y = r.ideal().basis().elements()[0].clone();
    assert_eq!(rep.extremal_params.alpha.apply(&y).unwrap(), y);
    assert!(rep.extremal_params.beta.is_zero() && rep.extremal_params.gamma.is_zero());
}

#[test]
fn decompose_product_example() {
    let r = z9x9(4);
    let p = product_example(&r);
    let d = build_extremal(&r, &p).unwrap();
    let rep = decompose(&d).unwrap();
    assert!(rep.reconstruction_ok);
    assert!(rep.derivation().is_zero());
    assert_eq!(rep.extremal_params, p);
}

#[test]
fn decompose_preconditions() {
    let k = zmod(4);
    let j = ideal(&k, &[&[2]]);
    let r = ring(4, k, j);
    match decompose(&DerivationTable::zero(r)) {
        Err(Error::TwoTorsion { witness }) => assert_eq!(witness.coords(), &[2]),
        other => panic!("expected a torsion error, got {other:?}"),
    }
    assert!(matches!(
        decompose(&DerivationTable::zero(z9(3))),
        Err(Error::DimensionTooSmall { n: 3, min: 4 })
    ));
    assert!(matches!(
        decompose_n3(&DerivationTable::zero(z9(4))),
        Err(Error::DimensionMismatch { n: 4, expected: 3 })
    ));
    let r = z9(4);
    let bad = common::table(&r, &[((2, 1), el(&r, &[1], 2, 1))]);
    assert!(matches!(decompose(&bad), Err(Error::NotJordan(_))));
}

#[test]
fn decompose_n3_a2_round_trip() {
    let r = z9(3);
    let (j, an) = (r.ideal(), r.coefficient_ring().annihilator(r.ideal()).unwrap());
    let p = A2Params { alpha1: map(j, &an, &[&[3]]), alpha2: map(j, &an, &[&[0]]) };
    let d = build_a2(&r, &p).unwrap();
    let rep = decompose_n3(&d).unwrap();
    assert!(rep.reconstruction_ok);
    let y = j.basis().elements()[0].clone();
    assert_eq!(rep.a2_params.alpha1.apply(&y).unwrap(), y);
    assert!(rep.a3_violation.is_none());
}

#[test]
fn theorem_on_nt4_and_z9() {
    let rep = theorem_check(&nt(4, 9), bounds()).unwrap();
    assert!(rep.verdict);
    assert!(rep.extremal.basis().is_trivial());
    assert_eq!(rep.jder, rep.der);
    let rep = theorem_check(&z9(4), bounds()).unwrap();
    assert!(rep.verdict);
    assert_eq!(rep.ratio, BigUint::from(1u32));
    assert_eq!(rep.der_plus_extremal, rep.jder);
    assert!(matches!(theorem_check(&z9(3), bounds()), Err(Error::DimensionTooSmall { .. })));
}

#[test]
fn theorem_on_noncommutative_coefficients() {
    // T_2(Z_3) with J = (e12)
    let u = common::upper(3);
    let j = ideal(&u, &[&[0, 1, 0]]);
    let rep = theorem_check(&ring(4, u, j), bounds()).unwrap();
    assert!(rep.verdict, "{:?}", rep.stages);
    // Z_3[ε] with J = (ε)
    let d = common::dual(3);
    let j = ideal(&d, &[&[0, 1]]);
    let rep = theorem_check(&ring(4, d, j), bounds()).unwrap();
    assert!(rep.verdict, "{:?}", rep.stages);
    assert_eq!(rep.extremal.order(), BigUint::from(27u32));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_jordan_derivations_decompose(coeffs in prop::collection::vec(0i64..9, 29)) {
        let jder = jder_z9(4);
        let d = combination(jder, &coeffs);
        let rep = decompose(&d).unwrap();
        prop_assert!(rep.reconstruction_ok);
        prop_assert!(rep.derivation().verify_derivation().is_ok());
        prop_assert!(rep.extremal.verify_jordan().is_ok());
        // decomposing the reassembled sum gives the same residual
        let again = decompose(&rep.derivation().add(&rep.extremal).unwrap()).unwrap();
        prop_assert_eq!(&again.extremal_params, &rep.extremal_params);
    }

    #[test]
    fn residual_depends_only_on_the_class_mod_der(
        coeffs in prop::collection::vec(0i64..9, 29),
        shift in prop::collection::vec(0i64..9, 29),
    ) {
        let d = combination(jder_z9(4), &coeffs);
        let t = combination(der_z9_4(), &shift);
        let a = decompose(&d).unwrap();
        let b = decompose(&d.add(&t).unwrap()).unwrap();
        let diff = b.extremal.sub(&a.extremal).unwrap();
        prop_assert!(diff.verify_derivation().is_ok());
        // Extremal ∩ Der = 0 here, so the residuals agree
        prop_assert!(diff.is_zero());
    }

    #[test]
    fn random_n3_jordan_derivations_decompose(coeffs in prop::collection::vec(0i64..9, 17)) {
        let d = combination(jder_z9(3), &coeffs);
        let rep = decompose_n3(&d).unwrap();
        prop_assert!(rep.reconstruction_ok);
        prop_assert!(rep.a3_violation.is_none());
        prop_assert!(rep.parts.total().verify_derivation().is_ok());
    }
}
