#![allow(dead_code)]

use std::sync::Arc;

use carpet_jder::linalg::GroupElement;
use carpet_jder::matrix::{MatrixElement, StructuralMatrixRing};
use carpet_jder::ring::{AdditiveMap, FiniteRing, Ideal};
use carpet_jder::table::DerivationTable;

pub fn zmod(m: u64) -> FiniteRing {
    FiniteRing::zmod(m).unwrap()
}

pub fn ideal(k: &FiniteRing, gens: &[&[i64]]) -> Ideal {
    let gens: Vec<GroupElement> = gens.iter().map(|g| k.element(g).unwrap()).collect();
    k.ideal_closure(&gens).unwrap()
}

pub fn ring(n: usize, k: FiniteRing, j: Ideal) -> Arc<StructuralMatrixRing> {
    Arc::new(StructuralMatrixRing::new(n, k, j).unwrap())
}

/// `R_n(Z_9, 3Z_9)`.
pub fn z9(n: usize) -> Arc<StructuralMatrixRing> {
    let k = zmod(9);
    let j = ideal(&k, &[&[3]]);
    ring(n, k, j)
}

/// `R_n(Z_9 × Z_9, 3Z_9 × 3Z_9)`.
pub fn z9x9(n: usize) -> Arc<StructuralMatrixRing> {
    let k = FiniteRing::product(&zmod(9), &zmod(9)).unwrap();
    let j = ideal(&k, &[&[3, 0], &[0, 3]]);
    ring(n, k, j)
}

/// `NT_n(K)`: `J = 0`.
pub fn nt(n: usize, m: u64) -> Arc<StructuralMatrixRing> {
    let k = zmod(m);
    let j = k.zero_ideal();
    ring(n, k, j)
}

/// `M_n(Z_m)`: `J = K`.
pub fn full(n: usize, m: u64) -> Arc<StructuralMatrixRing> {
    let k = zmod(m);
    let j = k.whole();
    ring(n, k, j)
}

pub fn el(r: &StructuralMatrixRing, v: &[i64], i: usize, j: usize) -> MatrixElement {
    r.elementary(&r.coefficient_ring().element(v).unwrap(), i, j).unwrap()
}

/// Map on a cyclic ideal sending its generator to `image` (coordinates in K).
pub fn map1(domain: &Ideal, codomain: &Ideal, image: &[i64]) -> AdditiveMap {
    let k = domain.ambient().clone();
    let img = k.element(image).unwrap();
    let images = vec![img; domain.basis().len()];
    AdditiveMap::new(domain, codomain, images).unwrap()
}

/// Table sending the listed generators (by position and basis index) to the
/// given images, others to zero.
pub fn table(r: &Arc<StructuralMatrixRing>, entries: &[((usize, usize), MatrixElement)]) -> DerivationTable {
    let mut images = vec![r.zero(); r.generators().len()];
    for ((i, j), m) in entries {
        images[r.generators_at(*i, *j).start] = m.clone();
    }
    DerivationTable::new(r.clone(), images).unwrap()
}

/// Every element of the subgroup generated by `gens`, by closure under
/// addition (the ambient group is finite, so this terminates).
pub fn span_oracle(
    g: &carpet_jder::linalg::FiniteAbelianGroup,
    gens: &[GroupElement],
) -> std::collections::BTreeSet<Vec<u64>> {
    let mut seen = std::collections::BTreeSet::new();
    let zero = g.zero();
    seen.insert(zero.coords().to_vec());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = g.add(&x, s);
            if seen.insert(y.coords().to_vec()) {
                frontier.push(y);
            }
        }
    }
    seen
}

pub fn element_set(xs: impl IntoIterator<Item = GroupElement>) -> std::collections::BTreeSet<Vec<u64>> {
    xs.into_iter().map(|x| x.coords().to_vec()).collect()
}

/// Tables of `r` found by enumerating the whole table space and keeping the
/// well-defined ones that pass `keep`.
pub fn brute_force_tables(
    r: &Arc<StructuralMatrixRing>,
    keep: impl Fn(&DerivationTable) -> bool,
) -> std::collections::BTreeSet<Vec<u64>> {
    let space = DerivationTable::table_space(r);
    space
        .elements()
        .filter_map(|x| DerivationTable::from_flat(r.clone(), &x).ok().map(|t| (x, t)))
        .filter(|(_, t)| keep(t))
        .map(|(x, _)| x.coords().to_vec())
        .collect()
}

/// `Z_m[ε]/(ε²)` on the basis `1, ε`.
pub fn dual(m: u64) -> FiniteRing {
    let g = carpet_jder::linalg::FiniteAbelianGroup::new(vec![m, m]).unwrap();
    let (one, eps) = (g.unit_vector(0), g.unit_vector(1));
    let c = vec![vec![one.clone(), eps.clone()], vec![eps, g.zero()]];
    FiniteRing::from_structure_constants(format!("Z_{m}[e]"), g, c, one).unwrap()
}

/// Upper triangular `2×2` matrices over `Z_m` on the basis `e11, e12, e22`.
pub fn upper(m: u64) -> FiniteRing {
    let g = carpet_jder::linalg::FiniteAbelianGroup::new(vec![m, m, m]).unwrap();
    let (e11, e12, e22) = (g.unit_vector(0), g.unit_vector(1), g.unit_vector(2));
    let z = g.zero();
    let c = vec![
        vec![e11.clone(), e12.clone(), z.clone()],
        vec![z.clone(), z.clone(), e12.clone()],
        vec![z.clone(), z.clone(), e22.clone()],
    ];
    let one = g.add(&e11, &e22);
    FiniteRing::from_structure_constants(format!("T2(Z_{m})"), g, c, one).unwrap()
}

/// Map given by the images of the domain's basis elements.
pub fn map(domain: &Ideal, codomain: &Ideal, images: &[&[i64]]) -> AdditiveMap {
    let g = domain.ambient();
    let images = images.iter().map(|c| g.element(c).unwrap()).collect();
    AdditiveMap::new(domain, codomain, images).unwrap()
}

/// The extremal parameters of the worked example over `Z_9 × Z_9`:
/// `α(a,b) = (a,0)`, `β(a,b) = (0,b)`, `γ(a,b) = (a,b)`.
pub fn product_example(r: &StructuralMatrixRing) -> carpet_jder::constructions::ExtremalParams {
    let j = r.ideal();
    let ann = r.coefficient_ring().annihilator(j).unwrap();
    let basis: Vec<Vec<u64>> = j.basis().elements().iter().map(|e| e.coords().to_vec()).collect();
    assert_eq!(basis, vec![vec![3, 0], vec![0, 3]]);
    carpet_jder::constructions::ExtremalParams {
        alpha: map(j, &ann, &[&[3, 0], &[0, 0]]),
        beta: map(j, &ann, &[&[0, 0], &[0, 3]]),
        gamma: map(j, &ann, &[&[3, 0], &[0, 3]]),
    }
}
