//! Finite rings with identity presented by structure constants, their ideals,
//! annihilators, and additive maps between ideals.

use std::fmt;

use crate::linalg::{kernel, AdditiveBasis, Equation, FiniteAbelianGroup, GroupElement, LinearSystem, SubgroupBasis};
use crate::{Error, Result};

/// A finite associative ring with identity.
///
/// The additive group is `⊕ Z_{m_i}` with coordinate generators `g_i`; the
/// product is the bilinear extension of `g_i · g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    label: String,
    group: FiniteAbelianGroup,
    constants: Vec<Vec<GroupElement>>,
    unit: GroupElement,
}

impl FiniteRing {
    /// Build a ring from structure constants, checking generator-order
    /// consistency, associativity on generator triples and the unit laws.
    pub fn from_structure_constants(
        label: impl Into<String>,
        group: FiniteAbelianGroup,
        constants: Vec<Vec<GroupElement>>,
        unit: GroupElement,
    ) -> Result<Self> {
        let k = group.rank();
        let label = label.into();
        let malformed = |msg: String| Error::MalformedRing { label: label.clone(), msg };
        if constants.len() != k || constants.iter().any(|row| row.len() != k) {
            return Err(malformed(format!("expected a {k}x{k} table of structure constants")));
        }
        group.check(&unit)?;
        for (i, row) in constants.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                group.check(c)?;
                let mi = group.moduli()[i] as i64;
                let mj = group.moduli()[j] as i64;
                if !group.scale(c, mi).is_zero() || !group.scale(c, mj).is_zero() {
                    return Err(malformed(format!(
                        "g{i}*g{j} = {c} is not killed by the generator orders"
                    )));
                }
            }
        }
        let ring = FiniteRing {
            label: label.clone(),
            group,
            constants,
            unit,
        };
        let gens: Vec<_> = (0..k).map(|i| ring.group.unit_vector(i)).collect();
        for (i, a) in gens.iter().enumerate() {
            if ring.mul(&ring.unit, a) != *a || ring.mul(a, &ring.unit) != *a {
                return Err(malformed(format!("unit law fails on g{i}")));
            }
            for (j, b) in gens.iter().enumerate() {
                let ab = ring.mul(a, b);
                for (l, c) in gens.iter().enumerate() {
                    if ring.mul(&ab, c) != ring.mul(a, &ring.mul(b, c)) {
                        return Err(malformed(format!("associativity fails on (g{i}, g{j}, g{l})")));
                    }
                }
            }
        }
        Ok(ring)
    }

    /// `Z_m`, `m ≥ 2`.
    pub fn zmod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus { modulus: m });
        }
        let group = FiniteAbelianGroup::new(vec![m])?;
        let one = group.unit_vector(0);
        Self::from_structure_constants(format!("Z_{m}"), group, vec![vec![one.clone()]], one)
    }

    /// Componentwise product ring `a × b` with unit `(1, 1)`.
    pub fn product(a: &FiniteRing, b: &FiniteRing) -> Result<Self> {
        let ka = a.group.rank();
        let kb = b.group.rank();
        let moduli: Vec<u64> = a.group.moduli().iter().chain(b.group.moduli()).copied().collect();
        let group = FiniteAbelianGroup::new(moduli)?;
        let lift = |x: Option<&GroupElement>, y: Option<&GroupElement>| {
            let mut coords = vec![0u64; ka + kb];
            if let Some(x) = x {
                coords[..ka].copy_from_slice(x.coords());
            }
            if let Some(y) = y {
                coords[ka..].copy_from_slice(y.coords());
            }
            group.element_from_u64(coords)
        };
        let mut constants = vec![vec![group.zero(); ka + kb]; ka + kb];
        for i in 0..ka {
            for j in 0..ka {
                constants[i][j] = lift(Some(&a.constants[i][j]), None);
            }
        }
        for i in 0..kb {
            for j in 0..kb {
                constants[ka + i][ka + j] = lift(None, Some(&b.constants[i][j]));
            }
        }
        let unit = lift(Some(&a.unit), Some(&b.unit));
        Self::from_structure_constants(format!("{}x{}", a.label, b.label), group, constants, unit)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn unit(&self) -> &GroupElement {
        &self.unit
    }

    pub fn zero(&self) -> GroupElement {
        self.group.zero()
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &GroupElement {
        &self.constants[i][j]
    }

    /// The coordinate generators with nontrivial order.
    pub fn additive_basis(&self) -> AdditiveBasis {
        AdditiveBasis::standard(&self.group)
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.group.element(coords)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.group.add(x, y)
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.group.sub(x, y)
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        self.group.neg(x)
    }

    /// Product of two elements of this ring. Inputs are assumed to belong to
    /// the ring; see [`try_mul`](Self::try_mul) for the checked variant.
    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let moduli = self.group.moduli();
        let mut acc = vec![0u128; moduli.len()];
        for (i, &xi) in x.coords().iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coords().iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = &self.constants[i][j];
                for (l, (&cl, &m)) in c.coords().iter().zip(moduli).enumerate() {
                    if cl != 0 {
                        let m = m as u128;
                        let t = (xi as u128 * yj as u128) % m * cl as u128 % m;
                        acc[l] = (acc[l] + t) % m;
                    }
                }
            }
        }
        self.group.element_from_u64(acc.into_iter().map(|v| v as u64).collect())
    }

    pub fn try_mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.group.check(x).map_err(|_| Error::ParentMismatch)?;
        self.group.check(y).map_err(|_| Error::ParentMismatch)?;
        Ok(self.mul(x, y))
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.group.rank();
        (0..k).all(|i| (0..k).all(|j| self.constants[i][j] == self.constants[j][i]))
    }

    /// A nonzero `x` with `2x = 0`, if one exists.
    pub fn two_torsion_witness(&self) -> Option<GroupElement> {
        let idx = self.group.moduli().iter().position(|&m| m % 2 == 0)?;
        let mut coords = vec![0u64; self.group.rank()];
        coords[idx] = self.group.moduli()[idx] / 2;
        Some(self.group.element_from_u64(coords))
    }

    pub fn is_two_torsion_free(&self) -> bool {
        self.two_torsion_witness().is_none()
    }

    /// The whole ring as an ideal of itself.
    pub fn whole(&self) -> Ideal {
        Ideal {
            basis: self.additive_basis(),
        }
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal::from_span(SubgroupBasis::trivial(&self.group)).expect("trivial subgroup has a basis")
    }

    /// Smallest two-sided ideal containing `gens`.
    pub fn ideal_closure(&self, gens: &[GroupElement]) -> Result<Ideal> {
        for g in gens {
            self.group.check(g)?;
        }
        let ring_gens: Vec<_> = self.additive_basis().elements().to_vec();
        let mut span = SubgroupBasis::from_generators(&self.group, gens)?;
        loop {
            let current = span.generators();
            let mut all = current.clone();
            for b in &current {
                for g in &ring_gens {
                    all.push(self.mul(g, b));
                    all.push(self.mul(b, g));
                }
            }
            let next = SubgroupBasis::from_generators(&self.group, &all)?;
            if next == span {
                break;
            }
            span = next;
        }
        Ideal::from_span(span)
    }

    /// Wrap a subgroup as an ideal after checking two-sided closure.
    pub fn ideal_from_subgroup(&self, span: SubgroupBasis) -> Result<Ideal> {
        if span.ambient() != &self.group {
            return Err(Error::AmbientMismatch);
        }
        for b in span.generators() {
            for g in self.additive_basis().elements() {
                for p in [self.mul(g, &b), self.mul(&b, g)] {
                    if !span.contains_unchecked(&p) {
                        return Err(Error::NotAnIdeal { witness: b.clone() });
                    }
                }
            }
        }
        Ideal::from_span(span)
    }

    /// Ideal generated by all products `a_i b_j` of basis elements.
    pub fn ideal_product(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        if a.ambient() != &self.group || b.ambient() != &self.group {
            return Err(Error::AmbientMismatch);
        }
        let prods: Vec<_> = a
            .basis()
            .elements()
            .iter()
            .flat_map(|x| b.basis().elements().iter().map(move |y| self.mul(x, y)))
            .collect();
        self.ideal_closure(&prods)
    }

    /// `Ann_K J = {x : xJ = Jx = 0}` as the kernel of `x ↦ (x b, b x)_b`.
    pub fn annihilator(&self, j: &Ideal) -> Result<Ideal> {
        if j.ambient() != &self.group {
            return Err(Error::AmbientMismatch);
        }
        let mut system = LinearSystem::new(self.group.clone());
        let k = self.group.rank();
        for b in j.basis().elements() {
            let left: Vec<_> = (0..k).map(|i| self.mul(&self.group.unit_vector(i), b)).collect();
            let right: Vec<_> = (0..k).map(|i| self.mul(b, &self.group.unit_vector(i))).collect();
            for side in [&left, &right] {
                for (l, &m) in self.group.moduli().iter().enumerate() {
                    let terms = side.iter().enumerate().map(|(i, p)| (i, p.coords()[l] as i64)).collect();
                    system.push(Equation { terms, modulus: m })?;
                }
            }
        }
        let ann = kernel(&system)?;
        debug_assert!(self.ideal_from_subgroup(ann.clone()).is_ok());
        Ideal::from_span(ann)
    }

    /// Annihilator from the left conditions `x b = 0` only.
    pub fn left_annihilator(&self, j: &Ideal) -> Result<SubgroupBasis> {
        let mut system = LinearSystem::new(self.group.clone());
        let k = self.group.rank();
        for b in j.basis().elements() {
            for (l, &m) in self.group.moduli().iter().enumerate() {
                let terms = (0..k)
                    .map(|i| (i, self.mul(&self.group.unit_vector(i), b).coords()[l] as i64))
                    .collect();
                system.push(Equation { terms, modulus: m })?;
            }
        }
        kernel(&system)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// A two-sided ideal, kept with a direct-sum additive basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    basis: AdditiveBasis,
}

impl Ideal {
    fn from_span(span: SubgroupBasis) -> Result<Self> {
        Ok(Ideal {
            basis: AdditiveBasis::of_subgroup(&span)?,
        })
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        self.basis.ambient()
    }

    pub fn span(&self) -> &SubgroupBasis {
        self.basis.span()
    }

    pub fn basis(&self) -> &AdditiveBasis {
        &self.basis
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.ambient().contains_element(x) && self.span().contains_unchecked(x)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn order(&self) -> num_bigint::BigUint {
        self.span().order()
    }

    /// Elements in the ideal; only for small ideals.
    pub fn elements(&self) -> Vec<GroupElement> {
        self.span().elements()
    }

    pub fn coordinates(&self, x: &GroupElement) -> Option<Vec<u64>> {
        self.basis.coordinates(x)
    }
}

/// Why an [`AdditiveMap`] fails to be a well-defined homomorphism into its
/// codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    /// The image of basis element `basis` lies outside the codomain.
    Codomain { basis: GroupElement, image: GroupElement },
    /// `ord(basis)·image ≠ 0`.
    Order { basis: GroupElement, image: GroupElement },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::Codomain { basis, image } => {
                write!(f, "codomain: image {image} of {basis} is outside the codomain")
            }
            MapViolation::Order { basis, image } => {
                write!(f, "order: ord({basis})·{image} ≠ 0")
            }
        }
    }
}

/// An additive map between two ideals of one ring (either may be the whole
/// ring), stored by its images of the domain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveMap {
    domain: Ideal,
    codomain: Ideal,
    images: Vec<GroupElement>,
}

impl AdditiveMap {
    pub fn new(domain: &Ideal, codomain: &Ideal, images: Vec<GroupElement>) -> Result<Self> {
        if domain.ambient() != codomain.ambient() {
            return Err(Error::AmbientMismatch);
        }
        if images.len() != domain.basis().len() {
            return Err(Error::Arity {
                expected: domain.basis().len(),
                got: images.len(),
            });
        }
        for y in &images {
            codomain.ambient().check(y)?;
        }
        Ok(AdditiveMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
        })
    }

    pub fn zero(domain: &Ideal, codomain: &Ideal) -> Self {
        let images = vec![codomain.ambient().zero(); domain.basis().len()];
        AdditiveMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
        }
    }

    pub fn domain(&self) -> &Ideal {
        &self.domain
    }

    pub fn codomain(&self) -> &Ideal {
        &self.codomain
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(GroupElement::is_zero)
    }

    /// Value at `x`; `None` when `x` is outside the domain.
    pub fn apply(&self, x: &GroupElement) -> Option<GroupElement> {
        let coords = self.domain.coordinates(x)?;
        let g = self.codomain.ambient();
        let mut acc = g.zero();
        for (c, y) in coords.iter().zip(&self.images) {
            if *c != 0 {
                acc = g.add(&acc, &g.scale(y, *c as i64));
            }
        }
        Some(acc)
    }

    /// Same images, different declared codomain.
    pub fn with_codomain(&self, codomain: &Ideal) -> Result<Self> {
        Self::new(&self.domain, codomain, self.images.clone())
    }

    pub fn add(&self, other: &AdditiveMap) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::AmbientMismatch);
        }
        let g = self.codomain.ambient();
        let images = self.images.iter().zip(&other.images).map(|(a, b)| g.add(a, b)).collect();
        Self::new(&self.domain, &self.codomain, images)
    }

    pub fn neg(&self) -> Self {
        let g = self.codomain.ambient();
        AdditiveMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            images: self.images.iter().map(|a| g.neg(a)).collect(),
        }
    }

    /// Check codomain membership and `ord(b)·f(b) = 0` for each basis element.
    pub fn validate(&self) -> std::result::Result<(), MapViolation> {
        let g = self.codomain.ambient();
        for ((b, &o), y) in self
            .domain
            .basis()
            .elements()
            .iter()
            .zip(self.domain.basis().orders())
            .zip(&self.images)
        {
            if !self.codomain.contains(y) {
                return Err(MapViolation::Codomain {
                    basis: b.clone(),
                    image: y.clone(),
                });
            }
            if !g.scale(y, o as i64).is_zero() {
                return Err(MapViolation::Order {
                    basis: b.clone(),
                    image: y.clone(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for AdditiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .domain
            .basis()
            .elements()
            .iter()
            .zip(&self.images)
            .map(|(b, y)| format!("{b}↦{y}"))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Default cap on the number of maps [`enumerate_additive_maps`] will yield.
pub const DEFAULT_MAP_BOUND: u64 = 1_000_000;

/// Every well-defined additive map `domain → codomain`.
///
/// The image of each domain basis element `b` ranges over the codomain
/// elements killed by `ord(b)`. Fails if the count exceeds `bound`.
pub fn enumerate_additive_maps(
    domain: &Ideal,
    codomain: &Ideal,
    bound: u64,
) -> Result<impl Iterator<Item = AdditiveMap>> {
    if domain.ambient() != codomain.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let g = codomain.ambient().clone();
    if codomain.order() > num_bigint::BigUint::from(bound) {
        return Err(Error::BoundExceeded(format!(
            "codomain of order {} exceeds the enumeration bound {bound}",
            codomain.order()
        )));
    }
    let codomain_elems = codomain.elements();
    let choices: Vec<Vec<GroupElement>> = domain
        .basis()
        .orders()
        .iter()
        .map(|&o| {
            codomain_elems
                .iter()
                .filter(|c| g.scale(c, o as i64).is_zero())
                .cloned()
                .collect()
        })
        .collect();
    let mut total: u64 = 1;
    for c in &choices {
        total = total
            .checked_mul(c.len() as u64)
            .filter(|&t| t <= bound)
            .ok_or_else(|| Error::BoundExceeded(format!("more than {bound} additive maps")))?;
    }
    let domain = domain.clone();
    let codomain = codomain.clone();
    let mut index = vec![0usize; choices.len()];
    let mut done = false;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let images = index.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let map = AdditiveMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
        };
        done = true;
        for p in (0..index.len()).rev() {
            index[p] += 1;
            if index[p] < choices[p].len() {
                done = false;
                break;
            }
            index[p] = 0;
        }
        Some(map)
    }))
}
