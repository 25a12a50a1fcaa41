use std::sync::Arc;

use super::solver::{DerivationGroup, DerivationKind};
use crate::constructions::ExtremalParams;
use crate::linalg::{kernel, Equation, FiniteAbelianGroup, GroupElement, LinearSystem, SubgroupBasis};
use crate::matrix::StructuralMatrixRing;
use crate::ring::{AdditiveMap, Ideal};
use crate::table::DerivationTable;
use crate::{Error, Result};

/// Coordinates for extremal parameters: `c[m][i][j]` is the coefficient of the
/// `j`-th basis element of `Ann_K J` in the image of the `i`-th basis element
/// of `J` under map `m` (0 = α, 1 = β, 2 = γ).
pub struct ExtremalParamSpace {
    j: Ideal,
    ann: Ideal,
    group: FiniteAbelianGroup,
}

impl ExtremalParamSpace {
    pub fn new(r: &StructuralMatrixRing) -> Result<Self> {
        let j = r.ideal().clone();
        let ann = r.coefficient_ring().annihilator(&j)?;
        let moduli: Vec<u64> = (0..3 * j.basis().len())
            .flat_map(|_| ann.basis().orders().iter().copied())
            .collect();
        let group = FiniteAbelianGroup::with_unbounded_order(moduli)?;
        Ok(ExtremalParamSpace { j, ann, group })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    fn index(&self, m: usize, i: usize, j: usize) -> usize {
        (m * self.j.basis().len() + i) * self.ann.basis().len() + j
    }

    /// The parameters with the given coordinates. Maps need not be
    /// well-defined unless the coordinates satisfy the order constraints.
    pub fn params(&self, c: &GroupElement) -> ExtremalParams {
        let nj = self.j.basis().len();
        let maps: Vec<AdditiveMap> = (0..3)
            .map(|m| {
                let images = (0..nj)
                    .map(|i| {
                        let coeffs: Vec<u64> = (0..self.ann.basis().len())
                            .map(|j| c.coords()[self.index(m, i, j)])
                            .collect();
                        self.ann.basis().combine(&coeffs)
                    })
                    .collect();
                AdditiveMap::new(&self.j, &self.ann, images).expect("images live in K")
            })
            .collect();
        let [alpha, beta, gamma] = <[AdditiveMap; 3]>::try_from(maps).expect("three maps");
        ExtremalParams { alpha, beta, gamma }
    }
}

/// Every `lhs − rhs` of the extremal conditions, over basis elements `y, z`
/// of `J` and generators `x` of `K`. Additive in the parameters.
fn defects(r: &StructuralMatrixRing, p: &ExtremalParams) -> Vec<GroupElement> {
    let k = r.coefficient_ring();
    let at = |m: &AdditiveMap, x: &GroupElement| m.apply(x).expect("argument in J");
    let jb = r.ideal().basis().elements();
    let kb = k.additive_basis().elements().to_vec();
    let mut out = Vec::new();
    for y in jb {
        for z in jb {
            let yz = k.mul(y, z);
            for m in [&p.alpha, &p.beta, &p.gamma] {
                out.push(at(m, &yz));
            }
        }
        for x in &kb {
            let (yx, xy) = (k.mul(y, x), k.mul(x, y));
            out.push(k.sub(&at(&p.alpha, &yx), &k.mul(x, &at(&p.alpha, y))));
            out.push(k.sub(&at(&p.beta, &yx), &k.mul(x, &at(&p.beta, y))));
            out.push(k.sub(&at(&p.beta, &xy), &k.mul(&at(&p.beta, y), x)));
            out.push(k.sub(&at(&p.gamma, &xy), &k.mul(&at(&p.gamma, y), x)));
        }
    }
    out
}

/// The group of valid extremal parameter triples, in [`ExtremalParamSpace`]
/// coordinates: well-definedness plus the linearized conditions.
pub fn extremal_parameter_group(r: &StructuralMatrixRing) -> Result<(ExtremalParamSpace, SubgroupBasis)> {
    let space = ExtremalParamSpace::new(r)?;
    let k = r.coefficient_ring();
    let kmod = k.group().moduli();
    let mut system = LinearSystem::new(space.group.clone());
    let (nj, na) = (space.j.basis().len(), space.ann.basis().len());
    for m in 0..3 {
        for (i, &o) in space.j.basis().orders().iter().enumerate() {
            for (l, &ml) in kmod.iter().enumerate() {
                let terms = (0..na)
                    .map(|j| (space.index(m, i, j), (o as u128 * space.ann.basis().elements()[j].coords()[l] as u128 % ml as u128) as i64))
                    .collect();
                system.push(Equation { terms, modulus: ml })?;
            }
        }
    }
    let units: Vec<Vec<GroupElement>> = (0..3 * nj * na)
        .map(|u| defects(r, &space.params(&space.group.unit_vector(u))))
        .collect();
    let count = units.first().map_or(0, Vec::len);
    for e in 0..count {
        for (l, &ml) in kmod.iter().enumerate() {
            let terms = units
                .iter()
                .enumerate()
                .map(|(u, d)| (u, d[e].coords()[l] as i64))
                .collect();
            system.push(Equation { terms, modulus: ml })?;
        }
    }
    let solutions = kernel(&system)?;
    Ok((space, solutions))
}

/// The subgroup of tables generated by all extremal Jordan derivations.
pub fn extremal_subgroup(r: &Arc<StructuralMatrixRing>) -> Result<DerivationGroup> {
    let n = r.size();
    if n < 4 {
        return Err(Error::DimensionTooSmall { n, min: 4 });
    }
    let (space, params) = extremal_parameter_group(r)?;
    let tables: Vec<GroupElement> = params
        .generators()
        .iter()
        .map(|c| crate::constructions::extremal_table(r, &space.params(c)).flatten())
        .collect();
    let basis = SubgroupBasis::from_generators(&DerivationTable::table_space(r), &tables)?;
    Ok(DerivationGroup::new(r.clone(), basis, DerivationKind::Extremal))
}
