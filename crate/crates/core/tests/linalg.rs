mod common;

use carpet_jder::linalg::{
    howell_form, kernel, subgroup_order, AdditiveBasis, Equation, FiniteAbelianGroup, GroupElement, LinearSystem,
    SubgroupBasis,
};
use common::{element_set, span_oracle};
use num_bigint::BigUint;
use proptest::prelude::*;

fn moduli() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=12, 1..=3)
}

fn group_and_gens() -> impl Strategy<Value = (FiniteAbelianGroup, Vec<GroupElement>)> {
    moduli().prop_flat_map(|m| {
        let g = FiniteAbelianGroup::new(m.clone()).unwrap();
        let rank = m.len();
        (Just(g), prop::collection::vec(prop::collection::vec(-30i64..30, rank), 0..=4))
    })
    .prop_map(|(g, raw)| {
        let gens = raw.iter().map(|c| g.element(c).unwrap()).collect();
        (g, gens)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subgroup_matches_closure((g, gens) in group_and_gens()) {
        let s = SubgroupBasis::from_generators(&g, &gens).unwrap();
        let oracle = span_oracle(&g, &gens);
        prop_assert_eq!(element_set(s.elements()), oracle.clone());
        prop_assert_eq!(s.order(), BigUint::from(oracle.len()));
        for x in g.elements() {
            prop_assert_eq!(s.contains(&x).unwrap(), oracle.contains(x.coords()));
        }
    }

    #[test]
    fn canonical_basis_ignores_presentation((g, gens) in group_and_gens(), shuffle in any::<u64>(), k in -5i64..5) {
        let a = SubgroupBasis::from_generators(&g, &gens).unwrap();
        let mut other = gens.clone();
        if !other.is_empty() {
            let r = (shuffle as usize) % other.len();
            other.rotate_left(r);
            let extra = g.add(&g.scale(&other[0], k), other.last().unwrap());
            other.push(extra);
            other[0] = g.add(&other[0], &g.scale(other.last().unwrap(), k));
        }
        let b = SubgroupBasis::from_generators(&g, &other).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn sum_and_order_identities((g, gens) in group_and_gens(), split in 0usize..5) {
        let cut = split.min(gens.len());
        let a = SubgroupBasis::from_generators(&g, &gens[..cut]).unwrap();
        let b = SubgroupBasis::from_generators(&g, &gens[cut..]).unwrap();
        let sum = a.sum(&b).unwrap();
        prop_assert_eq!(&sum, &SubgroupBasis::from_generators(&g, &gens).unwrap());
        prop_assert!(a.is_subgroup_of(&sum).unwrap());
        prop_assert!(b.is_subgroup_of(&sum).unwrap());
        // |A + B| · |A ∩ B| = |A| · |B|
        let inter = element_set(a.elements()).intersection(&element_set(b.elements())).count();
        prop_assert_eq!(subgroup_order(&sum) * BigUint::from(inter), a.order() * b.order());
        prop_assert!(SubgroupBasis::trivial(&g).is_subgroup_of(&a).unwrap());
        prop_assert!(a.is_subgroup_of(&SubgroupBasis::full(&g)).unwrap());
    }

    #[test]
    fn kernel_matches_enumeration(
        m in moduli(),
        rows in prop::collection::vec((prop::collection::vec(-20i64..20, 3), 2u64..=12), 0..=3),
    ) {
        let g = FiniteAbelianGroup::new(m.clone()).unwrap();
        let mut sys = LinearSystem::new(g.clone());
        for (coeffs, modulus) in &rows {
            // scale coefficients so every equation is well defined on the domain
            let terms = (0..m.len())
                .map(|i| (i, coeffs[i] * (*modulus / gcd(*modulus, m[i])) as i64))
                .collect();
            sys.push(Equation { terms, modulus: *modulus }).unwrap();
        }
        let k = kernel(&sys).unwrap();
        let brute: Vec<GroupElement> = g.elements().filter(|x| sys.is_solution(x)).collect();
        prop_assert_eq!(element_set(k.elements()), element_set(brute));
    }

    #[test]
    fn additive_basis_coordinates_round_trip((g, gens) in group_and_gens()) {
        let s = SubgroupBasis::from_generators(&g, &gens).unwrap();
        let b = AdditiveBasis::of_subgroup(&s).unwrap();
        let product: u64 = b.orders().iter().product();
        prop_assert_eq!(BigUint::from(product), s.order());
        for (x, &o) in b.elements().iter().zip(b.orders()) {
            prop_assert_eq!(g.element_order(x), o);
            prop_assert!(o > 1);
        }
        for x in s.elements() {
            let c = b.coordinates(&x).unwrap();
            prop_assert_eq!(b.combine(&c), x);
        }
    }

    #[test]
    fn howell_form_is_idempotent_and_row_order_free(
        rows in prop::collection::vec(prop::collection::vec(-40i64..40, 3), 0..=4),
        n in 2u64..=36,
    ) {
        let h = howell_form(&rows, n);
        let again: Vec<Vec<i64>> = h.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        prop_assert_eq!(howell_form(&again, n), h.clone());
        let mut rev = rows.clone();
        rev.reverse();
        prop_assert_eq!(howell_form(&rev, n), h);
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn ill_defined_equation_is_rejected() {
    let g = FiniteAbelianGroup::new(vec![4]).unwrap();
    let mut sys = LinearSystem::new(g);
    // x ↦ x mod 3 is not defined on Z_4
    assert!(sys.push(Equation { terms: vec![(0, 1)], modulus: 3 }).is_err());
}

#[test]
fn mixed_moduli_kernel() {
    // 2x + 3y ≡ 0 (mod 6) on Z_3 × Z_2 forces x = y = 0
    let g = FiniteAbelianGroup::new(vec![3, 2]).unwrap();
    let mut sys = LinearSystem::new(g.clone());
    sys.push(Equation { terms: vec![(0, 2), (1, 3)], modulus: 6 }).unwrap();
    assert_eq!(kernel(&sys).unwrap(), SubgroupBasis::trivial(&g));
    // 3y ≡ 0 (mod 6) forces y = 0 and leaves x free
    let mut sys = LinearSystem::new(g.clone());
    sys.push(Equation { terms: vec![(1, 3)], modulus: 6 }).unwrap();
    assert_eq!(kernel(&sys).unwrap(), SubgroupBasis::from_generators(&g, &[g.unit_vector(0)]).unwrap());
}
