mod common;

use std::sync::Arc;

use carpet_jder::constructions::*;
use carpet_jder::matrix::StructuralMatrixRing;
use carpet_jder::ring::{enumerate_additive_maps, AdditiveMap, FiniteRing};
use carpet_jder::Error;
use common::{dual, el, full, ideal, map, nt, product_example, ring, z9, z9x9, zmod};
use proptest::prelude::*;

fn ann(r: &StructuralMatrixRing) -> carpet_jder::ring::Ideal {
    r.coefficient_ring().annihilator(r.ideal()).unwrap()
}

/// Extremal parameters over `R_n(Z_9, 3Z_9)` from the images of `3`.
fn z9_extremal(r: &StructuralMatrixRing, a: i64, b: i64, g: i64) -> ExtremalParams {
    let (j, an) = (r.ideal(), ann(r));
    assert_eq!(j.basis().elements()[0].coords(), &[3]);
    ExtremalParams {
        alpha: map(j, &an, &[&[a]]),
        beta: map(j, &an, &[&[b]]),
        gamma: map(j, &an, &[&[g]]),
    }
}

fn invalid_relation(e: Error) -> Violation {
    match e {
        Error::InvalidParams(v) => v,
        other => panic!("expected a parameter violation, got {other}"),
    }
}

#[test]
fn zero_parameters_build_zero_tables() {
    let r4 = z9(4);
    let r3 = z9(3);
    assert!(build_extremal(&r4, &ExtremalParams::zero(&r4).unwrap()).unwrap().is_zero());
    assert!(build_annihilator(&r4, &AnnihilatorParams::zero(&r4).unwrap()).unwrap().is_zero());
    assert!(build_ring(&r4, &RingDerivParams::zero(&r4)).unwrap().is_zero());
    assert!(build_almost_annihilator(&r4, &AlmostAnnihilatorParams::zero(&r4)).unwrap().is_zero());
    assert!(build_a2(&r3, &A2Params::zero(&r3).unwrap()).unwrap().is_zero());
    assert!(build_a3(&r3, &A3Params::zero(&r3)).unwrap().is_zero());
    assert!(build_inner(&r4, &r4.zero()).unwrap().is_zero());
    let k = r4.coefficient_ring();
    let c = k.element(&[5]).unwrap();
    assert!(build_diagonal(&r4, &vec![c; 4]).unwrap().is_zero());
}

#[test]
fn inner_examples() {
    let r = nt(3, 3);
    let t = build_inner(&r, &el(&r, &[1], 2, 1)).unwrap();
    assert_eq!(t.evaluate(&el(&r, &[1], 3, 2)).unwrap(), el(&r, &[-1], 3, 1));
    let t = build_inner(&r, &el(&r, &[1], 3, 2)).unwrap();
    assert_eq!(t.evaluate(&el(&r, &[1], 2, 1)).unwrap(), el(&r, &[1], 3, 1));
    assert!(t.verify_derivation().is_ok());
}

#[test]
fn diagonal_examples() {
    let r = z9(4);
    let k = r.coefficient_ring();
    let d: Vec<_> = [0, 1, 0, 0].iter().map(|&x| k.element(&[x]).unwrap()).collect();
    let t = build_diagonal(&r, &d).unwrap();
    assert_eq!(t.evaluate(&el(&r, &[1], 2, 1)).unwrap(), el(&r, &[1], 2, 1));
    assert_eq!(t.evaluate(&el(&r, &[1], 3, 2)).unwrap(), el(&r, &[-1], 3, 2));
    let d: Vec<_> = [4, 0, 0, 2].iter().map(|&x| k.element(&[x]).unwrap()).collect();
    let t = build_diagonal(&r, &d).unwrap();
    // (d_1 − d_4)·3 = 6
    assert_eq!(t.evaluate(&el(&r, &[3], 1, 4)).unwrap(), el(&r, &[6], 1, 4));
    assert!(t.verify_derivation().is_ok());
    assert!(matches!(build_diagonal(&r, &d[..3]), Err(Error::Arity { expected: 4, got: 3 })));
}

#[test]
fn annihilator_examples() {
    let r = z9(4);
    let k = r.coefficient_ring();
    let (an, whole) = (ann(&r), k.whole());
    let mut p = AnnihilatorParams::zero(&r).unwrap();
    p.sigmas[0] = map(&whole, &an, &[&[3]]);
    let t = build_annihilator(&r, &p).unwrap();
    assert_eq!(t.evaluate(&el(&r, &[1], 2, 1)).unwrap(), el(&r, &[3], 4, 1));
    assert!(t.verify_derivation().is_ok());

    let mut p = AnnihilatorParams::zero(&r).unwrap();
    p.sigma_n = map(r.ideal(), &an, &[&[3]]);
    let t = build_annihilator(&r, &p).unwrap();
    assert_eq!(t.evaluate(&el(&r, &[3], 1, 4)).unwrap(), el(&r, &[3], 4, 1));
    assert!(t.verify_derivation().is_ok());
}

#[test]
fn annihilator_rejects_sigma_nonzero_on_j() {
    // K = Z_3 × Z_3, J = Z_3 × 0, Ann_K J = 0 × Z_3
    let k = FiniteRing::product(&zmod(3), &zmod(3)).unwrap();
    let j = ideal(&k, &[&[1, 0]]);
    let r = ring(4, k.clone(), j);
    let an = ann(&r);
    let mut p = AnnihilatorParams::zero(&r).unwrap();
    p.sigmas[1] = map(&k.whole(), &an, &[&[0, 0], &[0, 1]]);
    assert!(build_annihilator(&r, &p).unwrap().verify_derivation().is_ok());
    p.sigmas[1] = map(&k.whole(), &an, &[&[0, 1], &[0, 0]]);
    let v = invalid_relation(build_annihilator(&r, &p).unwrap_err());
    assert!(v.map.contains('2'), "{v}");
}

#[test]
fn ring_derivations() {
    // Z_9 has no nonzero derivations
    let r = z9(4);
    let k = r.coefficient_ring();
    let valid = enumerate_additive_maps(&k.whole(), &k.whole(), 1000)
        .unwrap()
        .filter(|f| validate_ring(&r, &RingDerivParams { pi: f.clone() }).unwrap().is_ok())
        .count();
    assert_eq!(valid, 1);
    // neither does Z_3 × Z_3
    let k = FiniteRing::product(&zmod(3), &zmod(3)).unwrap();
    let r = ring(3, k.clone(), k.whole());
    let valid = enumerate_additive_maps(&k.whole(), &k.whole(), 1000)
        .unwrap()
        .filter(|f| validate_ring(&r, &RingDerivParams { pi: f.clone() }).unwrap().is_ok())
        .count();
    assert_eq!(valid, 1);
    // Z_3[ε] has π(ε) = ε, preserving J = (ε)
    let d = dual(3);
    let j = ideal(&d, &[&[0, 1]]);
    let r = ring(3, d.clone(), j);
    let pi = map(&d.whole(), &d.whole(), &[&[0, 0], &[0, 1]]);
    let t = build_ring(&r, &RingDerivParams { pi }).unwrap();
    assert_eq!(t.evaluate(&el(&r, &[2, 1], 2, 1)).unwrap(), el(&r, &[0, 1], 2, 1));
    assert!(t.verify_derivation().is_ok());
    // π(1) = ε breaks the Leibniz rule
    let pi = map(&d.whole(), &d.whole(), &[&[0, 1], &[0, 0]]);
    assert!(build_ring(&r, &RingDerivParams { pi }).is_err());
}

#[test]
fn almost_annihilator_examples() {
    let r = z9(4);
    let (j, k) = (r.ideal(), r.coefficient_ring());
    let p = AlmostAnnihilatorParams {
        alpha: map(j, j, &[&[3]]),
        beta: map(j, j, &[&[6]]),
        gamma: AdditiveMap::zero(j, &k.whole()),
    };
    let t = build_almost_annihilator(&r, &p).unwrap();
    assert!(t.verify_derivation().is_ok());
    assert_eq!(
        t.evaluate(&el(&r, &[3], 1, 4)).unwrap(),
        r.add(&el(&r, &[3], 1, 1), &el(&r, &[6], 4, 4))
    );
    assert_eq!(t.evaluate(&el(&r, &[3], 3, 4)).unwrap(), el(&r, &[3], 3, 1));
    assert_eq!(t.evaluate(&el(&r, &[3], 1, 2)).unwrap(), el(&r, &[6], 4, 2));

    // J = K = Z_3: α(1) = β(1) = 1 gives α(y)z + yβ(z) = 2
    let r = full(4, 3);
    let j = r.ideal();
    let p = AlmostAnnihilatorParams {
        alpha: map(j, j, &[&[1]]),
        beta: map(j, j, &[&[1]]),
        gamma: AdditiveMap::zero(j, j),
    };
    let v = invalid_relation(build_almost_annihilator(&r, &p).unwrap_err());
    assert_eq!(v.relation, "alpha(y) z + y beta(z) = 0");
}

#[test]
fn product_example_is_proper() {
    let r = z9x9(4);
    let p = product_example(&r);
    assert!(validate_extremal(&r, &p).unwrap().is_ok());
    let t = build_extremal(&r, &p).unwrap();
    assert!(t.verify_jordan().is_ok());
    let c = t.verify_derivation().unwrap_err();
    assert!(!c.lhs.is_zero() || !c.rhs.is_zero());
    assert_ne!(c.lhs, c.rhs);
}

#[test]
fn z9_extremal_triples() {
    let r = z9(4);
    let mut derivations = 0;
    for code in 0..27 {
        let (a, b, g) = (3 * (code % 3), 3 * (code / 3 % 3), 3 * (code / 9));
        let p = z9_extremal(&r, a, b, g);
        assert!(validate_extremal(&r, &p).unwrap().is_ok());
        let t = build_extremal(&r, &p).unwrap();
        assert!(t.verify_jordan().is_ok());
        if t.verify_derivation().is_ok() {
            derivations += 1;
            assert!(p.is_zero());
        }
    }
    assert_eq!(derivations, 1);
    let t = build_extremal(&r, &z9_extremal(&r, 3, 0, 0)).unwrap();
    let c = t.verify_derivation().unwrap_err();
    assert_eq!((c.u_matrix.clone(), c.v_matrix.clone()), (el(&r, &[3], 1, 4), el(&r, &[1], 4, 3)));
}

#[test]
fn extremal_requires_n4() {
    let r = z9(3);
    let p = ExtremalParams::zero(&r).unwrap();
    assert!(matches!(build_extremal(&r, &p), Err(Error::DimensionTooSmall { n: 3, min: 4 })));
}

#[test]
fn extremal_codomain_violation() {
    // K = J = Z_3 has Ann_K J = 0, so α(1) = 1 leaves the codomain
    let r = full(4, 3);
    let j = r.ideal();
    let p = ExtremalParams {
        alpha: map(j, j, &[&[1]]),
        beta: AdditiveMap::zero(j, &ann(&r)),
        gamma: AdditiveMap::zero(j, &ann(&r)),
    };
    let v = validate_extremal(&r, &p).unwrap().unwrap_err();
    assert_eq!((v.map.as_str(), v.relation.as_str()), ("alpha", "codomain"));
}

#[test]
fn closed_form_criterion_for_square_zero_ideals() {
    // commutative K, J² = 0 and J ⊆ Ann_K J: every triple of maps J → Ann_K J is valid
    let d = dual(3);
    let dj = ideal(&d, &[&[0, 1]]);
    for r in [z9(4), ring(4, d, dj)] {
        let an = ann(&r);
        let maps: Vec<AdditiveMap> = enumerate_additive_maps(r.ideal(), &an, 1000).unwrap().collect();
        assert_eq!(maps.len(), 3);
        for a in &maps {
            for b in &maps {
                for g in &maps {
                    let p = ExtremalParams { alpha: a.clone(), beta: b.clone(), gamma: g.clone() };
                    assert!(validate_extremal(&r, &p).unwrap().is_ok());
                }
            }
        }
    }
}

fn a2(r: &Arc<StructuralMatrixRing>, a1: i64, a2: i64) -> A2Params {
    let (j, an) = (r.ideal(), ann(r));
    A2Params { alpha1: map(j, &an, &[&[a1]]), alpha2: map(j, &an, &[&[a2]]) }
}

#[test]
fn a2_examples() {
    let r = z9(3);
    let t = build_a2(&r, &a2(&r, 3, 0)).unwrap();
    assert!(t.verify_jordan().is_ok());
    assert_eq!(t.evaluate(&el(&r, &[3], 1, 3)).unwrap(), el(&r, &[3], 3, 2));
    assert_eq!(t.evaluate(&el(&r, &[3], 2, 3)).unwrap(), el(&r, &[3], 3, 1));
    let t = build_a2(&r, &a2(&r, 0, 3)).unwrap();
    assert!(t.verify_jordan().is_ok());
    assert_eq!(t.evaluate(&el(&r, &[3], 1, 2)).unwrap(), el(&r, &[3], 3, 1));
    let r4 = z9(4);
    assert!(matches!(
        build_a2(&r4, &A2Params::zero(&r4).unwrap()),
        Err(Error::DimensionMismatch { n: 4, expected: 3 })
    ));
}

/// A3 parameters over `R_3(Z_9, 3Z_9)` from the images of `3`:
/// `[δ1, δ2, δ3, β1, β2, β3, θ, γ]`.
fn a3(r: &StructuralMatrixRing, v: [i64; 8]) -> A3Params {
    let (j, k) = (r.ideal(), r.coefficient_ring().whole());
    let m = |x: i64| map(j, &k, &[&[x]]);
    A3Params {
        delta: [m(v[0]), m(v[1]), m(v[2])],
        beta: [m(v[3]), m(v[4]), m(v[5])],
        theta: m(v[6]),
        gamma: m(v[7]),
    }
}

#[test]
fn a3_rejections_name_the_first_failing_relation() {
    let r = z9(3);
    let v = invalid_relation(build_a3(&r, &a3(&r, [0, 3, 0, 0, 0, 0, 0, 0])).unwrap_err());
    assert_eq!(v.index, Some(18));
    assert_eq!(v.relation, A3_RELATIONS[17].text);
    // β₂ fails `γ(y)x = β₁(yx) + β₂(xy)` before it reaches `xθ(y) = β₂(yx) + β₃(xy)`
    let v = invalid_relation(build_a3(&r, &a3(&r, [0, 0, 0, 0, 3, 0, 0, 0])).unwrap_err());
    assert_eq!(v.index, Some(12));
    assert_eq!(A3_RELATIONS.len(), 26);
}

#[test]
fn a3_relation_list_against_the_jordan_identity() {
    let r = z9(3);
    let (mut list_only, mut both) = (0, 0);
    for code in 0..6561u32 {
        let mut c = code;
        let v = [(); 8].map(|_| {
            let x = 3 * (c % 3) as i64;
            c /= 3;
            x
        });
        let p = a3(&r, v);
        let jordan = a3_table(&r, &p).unwrap().verify_jordan();
        let jordan_ok = jordan.is_ok();
        let listed = validate_a3(&r, &p).unwrap();
        // the list never rejects a Jordan derivation
        assert!(!(jordan.is_ok() && listed.is_err()), "{v:?}");
        if let (Err(c), Ok(())) = (&jordan, &listed) {
            list_only += 1;
            assert_eq!((c.u_matrix.support().next().unwrap().0, c.u_matrix.support().next().unwrap().1), (1, 3));
            assert!(matches!(build_a3(&r, &p), Err(Error::NotJordan(_))));
        }
        if jordan_ok {
            both += 1;
            assert_eq!(build_a3(&r, &p).unwrap(), a3_table(&r, &p).unwrap());
        }
    }
    assert_eq!(both, 27);
    // the list allows β₁(y) + β₃(y) ≠ δ₁(y) + δ₃(y), which the pair (y e13, e31) forbids
    assert_eq!(list_only, 54);
}

proptest! {
    #[test]
    fn builders_are_additive(a in prop::array::uniform3(0i64..3), b in prop::array::uniform3(0i64..3)) {
        let r = z9(4);
        let (p, q) = (z9_extremal(&r, 3 * a[0], 3 * a[1], 3 * a[2]), z9_extremal(&r, 3 * b[0], 3 * b[1], 3 * b[2]));
        let sum = build_extremal(&r, &p.add(&q).unwrap()).unwrap();
        prop_assert_eq!(sum, build_extremal(&r, &p).unwrap().add(&build_extremal(&r, &q).unwrap()).unwrap());
    }

    #[test]
    fn inner_derivations_are_additive_derivations(
        a in prop::collection::vec(-9i64..9, 16),
        b in prop::collection::vec(-9i64..9, 16),
    ) {
        let r = z9(4);
        let g = r.coordinate_group();
        let (x, y) = (r.from_coordinates(&g.element(&a).unwrap()), r.from_coordinates(&g.element(&b).unwrap()));
        let tx = build_inner(&r, &x).unwrap();
        prop_assert!(tx.verify_derivation().is_ok());
        prop_assert_eq!(build_inner(&r, &r.add(&x, &y)).unwrap(), tx.add(&build_inner(&r, &y).unwrap()).unwrap());
    }

    #[test]
    fn diagonal_derivations_pass_leibniz(d in prop::collection::vec(-20i64..20, 4)) {
        let r = z9x9(4);
        let k = r.coefficient_ring();
        let d: Vec<_> = d.iter().map(|&x| k.element(&[x, 2 * x]).unwrap()).collect();
        prop_assert!(build_diagonal(&r, &d).unwrap().verify_derivation().is_ok());
    }
}

#[test]
fn violation_display() {
    let r = z9(3);
    let v = invalid_relation(build_a3(&r, &a3(&r, [0, 3, 0, 0, 0, 0, 0, 0])).unwrap_err());
    let s = v.to_string();
    assert!(s.contains("relation 18"), "{s}");
}
