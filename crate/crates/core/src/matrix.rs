//! The structural matrix ring `R_n(K, J) = NT_n(K) + M_n(J)`.
//!
//! Entries strictly below the diagonal range over `K`, entries on or above it
//! over the ideal `J`. Positions are 1-based `(row, col)` throughout the public
//! API, matching the usual `e_{i,j}` notation.

use std::fmt;

use crate::linalg::{kernel, Equation, FiniteAbelianGroup, GroupElement, LinearSystem, SubgroupBasis};
use crate::ring::{FiniteRing, Ideal};
use crate::{Error, Result};

/// One canonical additive generator `b·e_{row,col}` of `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub row: usize,
    pub col: usize,
    /// Index of `value` in the additive basis of the entry ideal.
    pub basis_index: usize,
    pub value: GroupElement,
    pub order: u64,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e({},{})", self.value, self.row, self.col)
    }
}

/// An `n × n` matrix over `K`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixElement {
    n: usize,
    entries: Vec<GroupElement>,
}

impl MatrixElement {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &GroupElement {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn entries(&self) -> &[GroupElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupElement::is_zero)
    }

    /// Nonzero entries as `(i, j, value)`, row-major.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize, &GroupElement)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(p, x)| (p / self.n + 1, p % self.n + 1, x))
    }
}

impl fmt::Display for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.support().map(|(i, j, x)| format!("{x}e({i},{j})")).collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// First index triple `(i, j, l)` with `I_{i,j}·I_{j,l} ⊄ I_{i,l}`.
///
/// Triples are scanned with the middle index outermost, then `i`, then `l`.
/// `pattern` is row-major with `n²` entries.
pub fn carpet_violation(k: &FiniteRing, n: usize, pattern: &[Ideal]) -> Option<(usize, usize, usize)> {
    let at = |i: usize, j: usize| &pattern[(i - 1) * n + (j - 1)];
    for j in 1..=n {
        for i in 1..=n {
            for l in 1..=n {
                let target = at(i, l);
                for a in at(i, j).basis().elements() {
                    for b in at(j, l).basis().elements() {
                        if !target.contains(&k.mul(a, b)) {
                            return Some((i, j, l));
                        }
                    }
                }
            }
        }
    }
    None
}

/// `R_n(K, J)` with its canonical generator index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralMatrixRing {
    n: usize,
    k: FiniteRing,
    j: Ideal,
    pattern: Vec<Ideal>,
    generators: Vec<Generator>,
    // first generator index of each position, plus a final sentinel
    offsets: Vec<usize>,
    coords: FiniteAbelianGroup,
}

impl StructuralMatrixRing {
    pub fn new(n: usize, k: FiniteRing, j: Ideal) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { n, min: 2 });
        }
        if j.ambient() != k.group() {
            return Err(Error::AmbientMismatch);
        }
        let whole = k.whole();
        let pattern: Vec<Ideal> = (1..=n)
            .flat_map(|r| (1..=n).map(move |c| (r, c)))
            .map(|(r, c)| if r > c { whole.clone() } else { j.clone() })
            .collect();
        if let Some((a, b, c)) = carpet_violation(&k, n, &pattern) {
            return Err(Error::CarpetViolation { i: a, j: b, l: c });
        }
        let mut generators = Vec::new();
        let mut offsets = Vec::with_capacity(n * n + 1);
        for (p, ideal) in pattern.iter().enumerate() {
            offsets.push(generators.len());
            for (b, (value, &order)) in ideal.basis().elements().iter().zip(ideal.basis().orders()).enumerate() {
                generators.push(Generator {
                    row: p / n + 1,
                    col: p % n + 1,
                    basis_index: b,
                    value: value.clone(),
                    order,
                });
            }
        }
        offsets.push(generators.len());
        let coords = FiniteAbelianGroup::with_unbounded_order(generators.iter().map(|g| g.order).collect())?;
        Ok(StructuralMatrixRing {
            n,
            k,
            j,
            pattern,
            generators,
            offsets,
            coords,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn coefficient_ring(&self) -> &FiniteRing {
        &self.k
    }

    pub fn ideal(&self) -> &Ideal {
        &self.j
    }

    /// The entry ideal `I_{i,j}`.
    pub fn pattern(&self, i: usize, j: usize) -> &Ideal {
        &self.pattern[(i - 1) * self.n + (j - 1)]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, index: usize) -> &Generator {
        &self.generators[index]
    }

    /// Generator indices belonging to position `(i, j)`.
    pub fn generators_at(&self, i: usize, j: usize) -> std::ops::Range<usize> {
        let p = (i - 1) * self.n + (j - 1);
        self.offsets[p]..self.offsets[p + 1]
    }

    /// The group `⊕ Z_{ord(g)}` of coordinate vectors over the generators.
    pub fn coordinate_group(&self) -> &FiniteAbelianGroup {
        &self.coords
    }

    /// Additive order of `R` as a decimal-exact integer.
    pub fn order(&self) -> num_bigint::BigUint {
        self.coords.order()
    }

    pub fn carpet_check(&self) -> std::result::Result<(), (usize, usize, usize)> {
        match carpet_violation(&self.k, self.n, &self.pattern) {
            Some(t) => Err(t),
            None => Ok(()),
        }
    }

    pub fn zero(&self) -> MatrixElement {
        MatrixElement {
            n: self.n,
            entries: vec![self.k.zero(); self.n * self.n],
        }
    }

    /// `x·e_{i,j}`.
    pub fn elementary(&self, x: &GroupElement, i: usize, j: usize) -> Result<MatrixElement> {
        for idx in [i, j] {
            if idx == 0 || idx > self.n {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    bound: self.n,
                });
            }
        }
        self.k.group().check(x)?;
        if !self.pattern(i, j).contains(x) {
            return Err(Error::PatternViolation {
                row: i,
                col: j,
                value: x.clone(),
            });
        }
        let mut m = self.zero();
        m.entries[(i - 1) * self.n + (j - 1)] = x.clone();
        Ok(m)
    }

    /// Matrix from rows of entries, checking the carpet pattern.
    pub fn from_rows(&self, rows: Vec<Vec<GroupElement>>) -> Result<MatrixElement> {
        if rows.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                got: rows.len(),
            });
        }
        let mut entries = Vec::with_capacity(self.n * self.n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != self.n {
                return Err(Error::Arity {
                    expected: self.n,
                    got: row.len(),
                });
            }
            for (c, x) in row.into_iter().enumerate() {
                self.k.group().check(&x)?;
                if !self.pattern(r + 1, c + 1).contains(&x) {
                    return Err(Error::PatternViolation {
                        row: r + 1,
                        col: c + 1,
                        value: x,
                    });
                }
                entries.push(x);
            }
        }
        Ok(MatrixElement { n: self.n, entries })
    }

    /// `Σ_{i,j} x_{i,j}·e_{i,j}` from an arbitrary row-major entry list; used
    /// internally where the pattern is known to hold.
    pub(crate) fn from_entries_unchecked(&self, entries: Vec<GroupElement>) -> MatrixElement {
        debug_assert_eq!(entries.len(), self.n * self.n);
        let m = MatrixElement { n: self.n, entries };
        debug_assert!(self.is_member(&m));
        m
    }

    /// True if `x` has the right shape and every entry lies in its `I_{i,j}`.
    pub fn is_member(&self, x: &MatrixElement) -> bool {
        x.n == self.n
            && x.entries.len() == self.n * self.n
            && x.entries
                .iter()
                .zip(&self.pattern)
                .all(|(e, ideal)| self.k.group().contains_element(e) && ideal.contains(e))
    }

    pub fn check(&self, x: &MatrixElement) -> Result<()> {
        if x.n != self.n || x.entries.len() != self.n * self.n {
            return Err(Error::ParentMismatch);
        }
        for (p, (e, ideal)) in x.entries.iter().zip(&self.pattern).enumerate() {
            if !self.k.group().contains_element(e) {
                return Err(Error::ParentMismatch);
            }
            if !ideal.contains(e) {
                return Err(Error::PatternViolation {
                    row: p / self.n + 1,
                    col: p % self.n + 1,
                    value: e.clone(),
                });
            }
        }
        Ok(())
    }

    fn zip_with(&self, x: &MatrixElement, y: &MatrixElement, f: impl Fn(&GroupElement, &GroupElement) -> GroupElement) -> MatrixElement {
        MatrixElement {
            n: self.n,
            entries: x.entries.iter().zip(&y.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, x: &MatrixElement, y: &MatrixElement) -> MatrixElement {
        self.zip_with(x, y, |a, b| self.k.add(a, b))
    }

    pub fn sub(&self, x: &MatrixElement, y: &MatrixElement) -> MatrixElement {
        self.zip_with(x, y, |a, b| self.k.sub(a, b))
    }

    pub fn neg(&self, x: &MatrixElement) -> MatrixElement {
        MatrixElement {
            n: self.n,
            entries: x.entries.iter().map(|a| self.k.neg(a)).collect(),
        }
    }

    pub fn scale(&self, x: &MatrixElement, c: i64) -> MatrixElement {
        MatrixElement {
            n: self.n,
            entries: x.entries.iter().map(|a| self.k.group().scale(a, c)).collect(),
        }
    }

    pub fn mul(&self, x: &MatrixElement, y: &MatrixElement) -> MatrixElement {
        let n = self.n;
        let mut entries = vec![self.k.zero(); n * n];
        for i in 0..n {
            for t in 0..n {
                let a = &x.entries[i * n + t];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &y.entries[t * n + j];
                    if !b.is_zero() {
                        let p = self.k.mul(a, b);
                        entries[i * n + j] = self.k.add(&entries[i * n + j], &p);
                    }
                }
            }
        }
        self.from_entries_unchecked(entries)
    }

    pub fn try_mul(&self, x: &MatrixElement, y: &MatrixElement) -> Result<MatrixElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// `x∘y = xy + yx`.
    pub fn jordan_product(&self, x: &MatrixElement, y: &MatrixElement) -> MatrixElement {
        self.add(&self.mul(x, y), &self.mul(y, x))
    }

    pub fn try_jordan_product(&self, x: &MatrixElement, y: &MatrixElement) -> Result<MatrixElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.jordan_product(x, y))
    }

    /// The generator as a matrix.
    pub fn generator_matrix(&self, index: usize) -> MatrixElement {
        let g = &self.generators[index];
        let mut m = self.zero();
        m.entries[(g.row - 1) * self.n + (g.col - 1)] = g.value.clone();
        m
    }

    /// Coordinates of `x` over the generator index.
    ///
    /// Panics if `x` violates the pattern; use [`check`](Self::check) first
    /// for untrusted input.
    pub fn coordinates(&self, x: &MatrixElement) -> GroupElement {
        let mut coords = vec![0u64; self.generators.len()];
        for (p, (e, ideal)) in x.entries.iter().zip(&self.pattern).enumerate() {
            if e.is_zero() {
                continue;
            }
            let c = ideal
                .coordinates(e)
                .unwrap_or_else(|| panic!("entry {e} at position {p} is outside the pattern"));
            coords[self.offsets[p]..self.offsets[p + 1]].copy_from_slice(&c);
        }
        self.coords.element_from_u64(coords)
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn from_coordinates(&self, c: &GroupElement) -> MatrixElement {
        let mut m = self.zero();
        for (g, &ci) in self.generators.iter().zip(c.coords()) {
            if ci != 0 {
                let p = (g.row - 1) * self.n + (g.col - 1);
                let term = self.k.group().scale(&g.value, ci as i64);
                m.entries[p] = self.k.add(&m.entries[p], &term);
            }
        }
        m
    }

    /// Two-sided annihilator of `R`, computed as the kernel of
    /// `x ↦ (x·g, g·x)` over all generators `g`, in generator coordinates.
    pub fn ann_r(&self) -> Result<SubgroupBasis> {
        let gens: Vec<MatrixElement> = (0..self.generators.len()).map(|a| self.generator_matrix(a)).collect();
        let mut system = LinearSystem::new(self.coords.clone());
        for g in &gens {
            let left: Vec<GroupElement> = gens.iter().map(|a| self.coordinates(&self.mul(a, g))).collect();
            let right: Vec<GroupElement> = gens.iter().map(|a| self.coordinates(&self.mul(g, a))).collect();
            for side in [&left, &right] {
                for (c, &m) in self.coords.moduli().iter().enumerate() {
                    let terms = side
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| v.coords()[c] != 0)
                        .map(|(a, v)| (a, v.coords()[c] as i64))
                        .collect();
                    system.push(Equation { terms, modulus: m })?;
                }
            }
        }
        kernel(&system)
    }

    /// `(Ann_K J)·e_{n,1}` in generator coordinates.
    pub fn ann_formula(&self) -> Result<SubgroupBasis> {
        let ann = self.k.annihilator(&self.j)?;
        let gens: Vec<GroupElement> = ann
            .basis()
            .elements()
            .iter()
            .map(|x| self.elementary(x, self.n, 1).map(|m| self.coordinates(&m)))
            .collect::<Result<_>>()?;
        SubgroupBasis::from_generators(&self.coords, &gens)
    }
}

impl fmt::Display for StructuralMatrixRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}({}, J)", self.n, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn r4() -> StructuralMatrixRing {
        let k = FiniteRing::zmod(9).unwrap();
        let j = k.ideal_closure(&[k.element(&[3]).unwrap()]).unwrap();
        StructuralMatrixRing::new(4, k, j).unwrap()
    }

    fn el(r: &StructuralMatrixRing, v: i64, i: usize, j: usize) -> MatrixElement {
        r.elementary(&r.coefficient_ring().element(&[v]).unwrap(), i, j).unwrap()
    }

    #[test]
    fn elementary_matrices() {
        let r = r4();
        let e21 = el(&r, 1, 2, 1);
        assert_eq!(e21.entry(2, 1).coords(), &[1]);
        assert_eq!(e21.support().count(), 1);
        assert_eq!(el(&r, 3, 1, 4).entry(1, 4).coords(), &[3]);
        let one = r.coefficient_ring().element(&[1]).unwrap();
        assert!(matches!(r.elementary(&one, 1, 4), Err(Error::PatternViolation { row: 1, col: 4, .. })));
        assert!(matches!(r.elementary(&one, 5, 1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn products() {
        let r = r4();
        assert_eq!(r.mul(&el(&r, 1, 2, 1), &el(&r, 3, 1, 3)), el(&r, 3, 2, 3));
        assert_eq!(r.mul(&el(&r, 3, 1, 4), &el(&r, 1, 4, 3)), el(&r, 3, 1, 3));
        assert_eq!(r.mul(&el(&r, 1, 3, 2), &el(&r, 1, 2, 1)), el(&r, 1, 3, 1));
        assert_eq!(r.jordan_product(&el(&r, 3, 1, 4), &el(&r, 1, 4, 3)), el(&r, 3, 1, 3));
        assert!(r.jordan_product(&el(&r, 1, 2, 1), &el(&r, 1, 2, 1)).is_zero());
        assert!(r.jordan_product(&el(&r, 3, 1, 4), &el(&r, 3, 4, 1)).is_zero());
    }

    #[test]
    fn coordinates_of_small_elements() {
        let r = r4();
        assert!(r.coordinates(&r.zero()).is_zero());
        let c = r.coordinates(&el(&r, 1, 2, 1));
        let slot = r.generators_at(2, 1).start;
        assert_eq!(c, r.coordinate_group().unit_vector(slot));
        let c = r.coordinates(&el(&r, 6, 1, 4));
        assert_eq!(c.coords()[r.generators_at(1, 4).start], 2);
        assert_eq!(r.from_coordinates(&c), el(&r, 6, 1, 4));
    }

    #[test]
    fn generator_counts() {
        let r = r4();
        // 6 positions of K (rank 1) and 10 of J (rank 1)
        assert_eq!(r.generators().len(), 16);
        assert_eq!(r.order(), BigUint::from(9u64.pow(6) * 3u64.pow(10)));
        let k = FiniteRing::product(&FiniteRing::zmod(9).unwrap(), &FiniteRing::zmod(9).unwrap()).unwrap();
        let j = k
            .ideal_closure(&[k.element(&[3, 0]).unwrap(), k.element(&[0, 3]).unwrap()])
            .unwrap();
        let r = StructuralMatrixRing::new(3, k, j).unwrap();
        assert_eq!(r.generators().len(), 3 * 2 + 6 * 2);
    }

    #[test]
    fn annihilators() {
        let r = r4();
        let ann = r.ann_r().unwrap();
        assert_eq!(ann.order(), BigUint::from(3u32));
        assert_eq!(ann, r.ann_formula().unwrap());
        let x = r.coordinates(&el(&r, 3, 4, 1));
        assert!(ann.contains(&x).unwrap());

        let z3 = FiniteRing::zmod(3).unwrap();
        let m3 = StructuralMatrixRing::new(3, z3.clone(), z3.whole()).unwrap();
        assert!(m3.ann_r().unwrap().is_trivial());
        assert_eq!(m3.ann_r().unwrap(), m3.ann_formula().unwrap());

        let z9 = FiniteRing::zmod(9).unwrap();
        let nt = StructuralMatrixRing::new(4, z9.clone(), z9.zero_ideal()).unwrap();
        assert_eq!(nt.ann_r().unwrap().order(), BigUint::from(9u32));
        assert_eq!(nt.ann_r().unwrap(), nt.ann_formula().unwrap());
    }

    #[test]
    fn carpet_scan_reports_first_triple() {
        let r = r4();
        assert!(r.carpet_check().is_ok());
        let z3 = FiniteRing::zmod(3).unwrap();
        let m3 = StructuralMatrixRing::new(3, z3.clone(), z3.whole()).unwrap();
        assert!(m3.carpet_check().is_ok());

        let k = r.coefficient_ring();
        let mut pattern: Vec<Ideal> = (1..=4)
            .flat_map(|i| (1..=4).map(move |j| (i, j)))
            .map(|(i, j)| r.pattern(i, j).clone())
            .collect();
        pattern[1] = k.whole();
        assert_eq!(carpet_violation(k, 4, &pattern), Some((2, 1, 2)));
    }

    #[test]
    fn dimension_one_is_rejected() {
        let k = FiniteRing::zmod(3).unwrap();
        assert!(matches!(
            StructuralMatrixRing::new(1, k.clone(), k.whole()),
            Err(Error::DimensionTooSmall { .. })
        ));
    }
}
