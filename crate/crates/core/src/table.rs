//! Additive self-maps of `R` stored by their values on the canonical
//! generators, with exact checks of the Jordan and Leibniz identities.

use std::fmt;
use std::sync::Arc;

use crate::linalg::{FiniteAbelianGroup, GroupElement};
use crate::matrix::{MatrixElement, StructuralMatrixRing};
use crate::ring::AdditiveMap;
use crate::{Error, Result};

/// An additive map `R → R` given by one image per canonical generator.
#[derive(Clone, Debug)]
pub struct DerivationTable {
    ring: Arc<StructuralMatrixRing>,
    images: Vec<MatrixElement>,
}

impl PartialEq for DerivationTable {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.images == other.images
    }
}

impl Eq for DerivationTable {}

fn same_ring(a: &Arc<StructuralMatrixRing>, b: &Arc<StructuralMatrixRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A generator pair on which an identity fails.
///
/// `u` and `v` are generator indices; `lhs` is `Δ(u∘v)` (or `Δ(uv)`), `rhs`
/// the expansion `Δ(u)∘v + u∘Δ(v)` (or `Δ(u)v + uΔ(v)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub u: usize,
    pub v: usize,
    pub u_matrix: MatrixElement,
    pub v_matrix: MatrixElement,
    pub lhs: MatrixElement,
    pub rhs: MatrixElement,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u = {}, v = {}: lhs = {}, rhs = {}",
            self.u_matrix, self.v_matrix, self.lhs, self.rhs
        )
    }
}

/// The component `Δ^{i,j}_{s,t}: I_{i,j} → I_{s,t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMap {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub map: AdditiveMap,
}

/// Support patterns established for Jordan derivations at successive stages
/// of the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SupportShape {
    /// Supports forced on `Δ(x e_{i+1,i})` and `Δ(y e_{1,n})` for every Jordan
    /// derivation (`n ≥ 4`).
    Subdiagonal,
    /// Supports after clearing diagonal and inner parts (`n ≥ 4`).
    Reduced,
    /// Supports after also clearing annihilator and ring parts (`n ≥ 3`).
    Residual,
}

impl SupportShape {
    pub fn min_size(self) -> usize {
        match self {
            SupportShape::Subdiagonal | SupportShape::Reduced => 4,
            SupportShape::Residual => 3,
        }
    }
}

impl fmt::Display for SupportShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportShape::Subdiagonal => "subdiagonal",
            SupportShape::Reduced => "reduced",
            SupportShape::Residual => "residual",
        })
    }
}

/// A nonzero entry outside the allowed support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportViolation {
    pub source: (usize, usize),
    /// The ring element placed at `source` (a basis element, or the unit).
    pub input: GroupElement,
    pub target: (usize, usize),
    pub entry: GroupElement,
}

impl fmt::Display for SupportViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "image of {}e({},{}) has entry {} at ({},{})",
            self.input, self.source.0, self.source.1, self.entry, self.target.0, self.target.1
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scope {
    /// Constraint on `Δ(x e_{i,j})` for every `x` in the entry ideal.
    Whole,
    /// Constraint on `Δ(e_{i,j})` only.
    Unit,
}

type Pos = (usize, usize);

fn row(n: usize, r: usize) -> impl Iterator<Item = Pos> {
    (1..=n).map(move |c| (r, c))
}

fn col(n: usize, c: usize) -> impl Iterator<Item = Pos> {
    (1..=n).map(move |r| (r, c))
}

/// Support rules for source position `(i, j)`: each rule lists the positions
/// allowed to be nonzero. Several rules for one source must all hold.
fn support_rules(shape: SupportShape, n: usize, (i, j): Pos) -> Vec<(Scope, Vec<Pos>)> {
    let mut rules = Vec::new();
    match shape {
        SupportShape::Subdiagonal => {
            if i == j + 1 {
                let c = j;
                let mut allowed: Vec<Pos> = row(n, i).chain(col(n, c)).collect();
                if c == 1 {
                    allowed.extend([(n, 2), (n, 3)]);
                } else if c == n - 1 {
                    allowed.extend([(n - 1, 1), (n - 2, 1)]);
                } else {
                    allowed.push((n, 1));
                }
                rules.push((Scope::Whole, allowed));
            }
            if (i, j) == (1, n) {
                let mut allowed: Vec<Pos> = row(n, 1).chain(col(n, n)).collect();
                allowed.extend([(n - 1, 1), (n - 1, 2), (n, 1), (n, 2)]);
                rules.push((Scope::Whole, allowed));
            }
        }
        SupportShape::Reduced => {
            if i > j {
                let allowed = if i == j + 1 && 1 < j && j < n - 1 {
                    vec![(n, 1)]
                } else {
                    vec![]
                };
                rules.push((Scope::Unit, allowed));
            }
            if 1 < i && i < n && j == 1 {
                rules.push((Scope::Whole, vec![(i, 1), (n, 1)]));
            }
            if i == n {
                rules.push((Scope::Whole, vec![(n, 1), (n, j)]));
            }
            if i == 1 && j != 1 && j != n {
                rules.push((Scope::Whole, vec![(1, 1), (1, 2), (1, j), (n, 1), (n, 2), (n, j)]));
            }
            if 1 < i && i < n && j == n {
                rules.push((Scope::Whole, vec![(i, 1), (n - 1, 1), (n, 1), (i, n), (n - 1, n), (n, n)]));
            }
            if (i, j) == (1, n) {
                rules.push((
                    Scope::Whole,
                    vec![(1, 1), (1, 2), (1, n), (n - 1, 1), (n - 1, 2), (n - 1, n), (n, 1), (n, 2), (n, n)],
                ));
            }
            if 1 < i && i < n && 1 < j && j < n {
                rules.push((Scope::Whole, vec![(i, 1), (i, j), (n, 1), (n, j)]));
            }
        }
        SupportShape::Residual => {
            if i > j {
                rules.push((Scope::Whole, vec![]));
            }
            if i == j {
                rules.push((Scope::Whole, vec![(n, 1)]));
            }
            if i == 1 && 1 < j && j + 1 < n {
                rules.push((Scope::Whole, vec![(n, j)]));
            }
            if j == n && i >= 3 {
                rules.push((Scope::Whole, vec![(i, 1)]));
            }
        }
    }
    rules
}

impl DerivationTable {
    /// Table from explicit generator images.
    ///
    /// Each image must lie in `R` and satisfy `ord(g)·image = 0`.
    pub fn new(ring: Arc<StructuralMatrixRing>, images: Vec<MatrixElement>) -> Result<Self> {
        if images.len() != ring.generators().len() {
            return Err(Error::Arity {
                expected: ring.generators().len(),
                got: images.len(),
            });
        }
        for (g, image) in ring.generators().iter().zip(&images) {
            ring.check(image)?;
            if !ring.scale(image, g.order as i64).is_zero() {
                return Err(Error::IllDefinedImage {
                    generator: g.to_string(),
                    image: image.to_string(),
                });
            }
        }
        Ok(DerivationTable { ring, images })
    }

    pub(crate) fn from_images_unchecked(ring: Arc<StructuralMatrixRing>, images: Vec<MatrixElement>) -> Self {
        debug_assert_eq!(images.len(), ring.generators().len());
        DerivationTable { ring, images }
    }

    pub fn zero(ring: Arc<StructuralMatrixRing>) -> Self {
        let images = vec![ring.zero(); ring.generators().len()];
        DerivationTable { ring, images }
    }

    /// The table of an additive map given as a function on `R`; `f` is only
    /// evaluated on generators.
    pub fn from_map(ring: Arc<StructuralMatrixRing>, f: impl Fn(&MatrixElement) -> MatrixElement) -> Result<Self> {
        let images = (0..ring.generators().len()).map(|a| f(&ring.generator_matrix(a))).collect();
        Self::new(ring, images)
    }

    pub fn ring(&self) -> &Arc<StructuralMatrixRing> {
        &self.ring
    }

    pub fn images(&self) -> &[MatrixElement] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &MatrixElement {
        &self.images[generator]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(MatrixElement::is_zero)
    }

    /// `Δ(x) = Σ c_g Δ(g)` with `c` the generator coordinates of `x`.
    pub fn evaluate(&self, x: &MatrixElement) -> Result<MatrixElement> {
        self.ring.check(x)?;
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &MatrixElement) -> MatrixElement {
        let c = self.ring.coordinates(x);
        self.evaluate_coords(c.coords())
    }

    fn evaluate_coords(&self, c: &[u64]) -> MatrixElement {
        let mut acc = self.ring.zero();
        for (&ci, image) in c.iter().zip(&self.images) {
            if ci != 0 {
                acc = self.ring.add(&acc, &self.ring.scale(image, ci as i64));
            }
        }
        acc
    }

    /// `Δ^{i,j}_{s,t}` as an additive map `I_{i,j} → I_{s,t}`.
    pub fn component(&self, source: Pos, target: Pos) -> Result<ComponentMap> {
        let n = self.ring.size();
        for idx in [source.0, source.1, target.0, target.1] {
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, bound: n });
            }
        }
        let images = self
            .ring
            .generators_at(source.0, source.1)
            .map(|a| self.images[a].entry(target.0, target.1).clone())
            .collect();
        let map = AdditiveMap::new(
            self.ring.pattern(source.0, source.1),
            self.ring.pattern(target.0, target.1),
            images,
        )?;
        Ok(ComponentMap { source, target, map })
    }

    /// Check `Δ(u∘v) = Δ(u)∘v + u∘Δ(v)` on every unordered generator pair,
    /// `u = v` included. Bilinearity makes this equivalent to the identity on
    /// all of `R`. Reports the first failing pair in index order.
    pub fn verify_jordan(&self) -> std::result::Result<(), Counterexample> {
        let r = &*self.ring;
        let gens: Vec<MatrixElement> = (0..r.generators().len()).map(|a| r.generator_matrix(a)).collect();
        for (a, u) in gens.iter().enumerate() {
            for (b, v) in gens.iter().enumerate().skip(a) {
                let lhs = self.evaluate_unchecked(&r.jordan_product(u, v));
                let rhs = r.add(
                    &r.jordan_product(&self.images[a], v),
                    &r.jordan_product(u, &self.images[b]),
                );
                if lhs != rhs {
                    return Err(Counterexample {
                        u: a,
                        v: b,
                        u_matrix: u.clone(),
                        v_matrix: v.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(())
    }

    /// Check `Δ(uv) = Δ(u)v + uΔ(v)` on every ordered generator pair.
    pub fn verify_derivation(&self) -> std::result::Result<(), Counterexample> {
        let r = &*self.ring;
        let gens: Vec<MatrixElement> = (0..r.generators().len()).map(|a| r.generator_matrix(a)).collect();
        for (a, u) in gens.iter().enumerate() {
            for (b, v) in gens.iter().enumerate() {
                let lhs = self.evaluate_unchecked(&r.mul(u, v));
                let rhs = r.add(&r.mul(&self.images[a], v), &r.mul(u, &self.images[b]));
                if lhs != rhs {
                    return Err(Counterexample {
                        u: a,
                        v: b,
                        u_matrix: u.clone(),
                        v_matrix: v.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(())
    }

    /// First entry outside the support allowed by `shape`, scanning sources
    /// and targets row-major.
    pub fn support_violation(&self, shape: SupportShape) -> Result<Option<SupportViolation>> {
        let r = &*self.ring;
        let n = r.size();
        if n < shape.min_size() {
            return Err(Error::DimensionTooSmall {
                n,
                min: shape.min_size(),
            });
        }
        for i in 1..=n {
            for j in 1..=n {
                for (scope, allowed) in support_rules(shape, n, (i, j)) {
                    let probes: Vec<(GroupElement, MatrixElement)> = match scope {
                        Scope::Whole => r
                            .generators_at(i, j)
                            .map(|a| (r.generator(a).value.clone(), self.images[a].clone()))
                            .collect(),
                        Scope::Unit => {
                            let one = r.coefficient_ring().unit().clone();
                            let e = r.elementary(&one, i, j)?;
                            vec![(one, self.evaluate_unchecked(&e))]
                        }
                    };
                    for (input, image) in probes {
                        if let Some((s, t, entry)) = image.support().find(|(s, t, _)| !allowed.contains(&(*s, *t))) {
                            return Ok(Some(SupportViolation {
                                source: (i, j),
                                input,
                                target: (s, t),
                                entry: entry.clone(),
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    fn check_parent(&self, other: &DerivationTable) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn add(&self, other: &DerivationTable) -> Result<Self> {
        self.check_parent(other)?;
        let images = self.images.iter().zip(&other.images).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(Self::from_images_unchecked(self.ring.clone(), images))
    }

    pub fn sub(&self, other: &DerivationTable) -> Result<Self> {
        self.check_parent(other)?;
        let images = self.images.iter().zip(&other.images).map(|(a, b)| self.ring.sub(a, b)).collect();
        Ok(Self::from_images_unchecked(self.ring.clone(), images))
    }

    pub fn neg(&self) -> Self {
        let images = self.images.iter().map(|a| self.ring.neg(a)).collect();
        Self::from_images_unchecked(self.ring.clone(), images)
    }

    pub fn scale(&self, c: i64) -> Self {
        let images = self.images.iter().map(|a| self.ring.scale(a, c)).collect();
        Self::from_images_unchecked(self.ring.clone(), images)
    }

    /// The group holding flattened tables: generator `a`'s image coordinates
    /// occupy slots `a·G .. (a+1)·G`.
    pub fn table_space(ring: &StructuralMatrixRing) -> FiniteAbelianGroup {
        let moduli = ring.coordinate_group().moduli();
        let all: Vec<u64> = (0..moduli.len()).flat_map(|_| moduli.iter().copied()).collect();
        FiniteAbelianGroup::with_unbounded_order(all).expect("moduli come from a valid group")
    }

    pub fn flatten(&self) -> GroupElement {
        let coords: Vec<u64> = self
            .images
            .iter()
            .flat_map(|m| self.ring.coordinates(m).coords().to_vec())
            .collect();
        let space = Self::table_space(&self.ring);
        space.element_from_u64(coords)
    }

    /// Inverse of [`flatten`](Self::flatten); checks well-definedness.
    pub fn from_flat(ring: Arc<StructuralMatrixRing>, flat: &GroupElement) -> Result<Self> {
        let g = ring.generators().len();
        Self::table_space(&ring).check(flat)?;
        let coords = ring.coordinate_group();
        let images = (0..g)
            .map(|a| ring.from_coordinates(&coords.element_from_u64(flat.coords()[a * g..(a + 1) * g].to_vec())))
            .collect();
        Self::new(ring, images)
    }
}

impl fmt::Display for DerivationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, image) in self.ring.generators().iter().zip(&self.images) {
            if image.is_zero() {
                continue;
            }
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            write!(f, "{g} -> {image}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
