use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::howell::{howell_rows, reduce_prefix};
use super::modular::{gcd, lcm, Zn};
use crate::{Error, Result};

const ORDER_CAP: u128 = 1 << 63;

/// `Z_{m_1} ⊕ … ⊕ Z_{m_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u64>,
    exponent: u64,
}

/// Coordinates of an element of a [`FiniteAbelianGroup`], each reduced into
/// `[0, m_i)` by the group that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FiniteAbelianGroup {
    /// Group with order below `2^63`. Moduli must be at least 1.
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        let mut order: u128 = 1;
        for &m in &moduli {
            if m == 0 {
                return Err(Error::InvalidModulus { modulus: 0 });
            }
            order = order.saturating_mul(m as u128);
            if order >= ORDER_CAP {
                return Err(Error::OrderOverflow);
            }
        }
        Self::with_unbounded_order(moduli)
    }

    /// Group whose order may be large; only the exponent (lcm of the moduli)
    /// is capped at `2^63`. Used for derivation table spaces.
    pub fn with_unbounded_order(moduli: Vec<u64>) -> Result<Self> {
        let mut exponent = 1u64;
        for &m in &moduli {
            if m == 0 {
                return Err(Error::InvalidModulus { modulus: 0 });
            }
            exponent = lcm(exponent, m)
                .filter(|&e| (e as u128) < ORDER_CAP)
                .ok_or(Error::OrderOverflow)?;
        }
        Ok(FiniteAbelianGroup { moduli, exponent })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Least common multiple of the moduli.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> BigUint {
        self.moduli
            .iter()
            .fold(BigUint::one(), |acc, &m| acc * BigUint::from(m))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    pub fn unit_vector(&self, i: usize) -> GroupElement {
        let mut e = self.zero();
        e.coords[i] = 1 % self.moduli[i];
        e
    }

    /// Reduce integer coordinates into the group.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_len(coords.len())?;
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &m)| (c as i128).rem_euclid(m as i128) as u64)
                .collect(),
        })
    }

    pub(crate) fn element_from_u64(&self, coords: Vec<u64>) -> GroupElement {
        debug_assert_eq!(coords.len(), self.rank());
        GroupElement {
            coords: coords
                .into_iter()
                .zip(&self.moduli)
                .map(|(c, &m)| c % m)
                .collect(),
        }
    }

    pub fn contains_element(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.rank() && x.coords.iter().zip(&self.moduli).all(|(&c, &m)| c < m)
    }

    pub(crate) fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains_element(x) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.rank() {
            Ok(())
        } else {
            Err(Error::Arity {
                expected: self.rank(),
                got: len,
            })
        }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.moduli)
                .map(|((&a, &b), &m)| {
                    let s = a + b;
                    if s >= m {
                        s - m
                    } else {
                        s
                    }
                })
                .collect(),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&a, &m)| if a == 0 { 0 } else { m - a })
                .collect(),
        }
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &GroupElement, k: i64) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&a, &m)| ((a as i128 * k as i128).rem_euclid(m as i128)) as u64)
                .collect(),
        }
    }

    /// Additive order of `x`.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        x.coords
            .iter()
            .zip(&self.moduli)
            .fold(1u64, |acc, (&c, &m)| {
                let o = m / gcd(c, m);
                lcm(acc, o).expect("element order divides the exponent")
            })
    }

    /// Injection into `Z_N^k`, `N` the exponent: `x_i ↦ (N/m_i)·x_i`.
    pub(crate) fn embed(&self, x: &GroupElement) -> Vec<u64> {
        x.coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| (self.exponent / m) * c)
            .collect()
    }

    /// Inverse of [`embed`](Self::embed) on its image.
    pub(crate) fn unembed(&self, row: &[u64]) -> GroupElement {
        GroupElement {
            coords: row
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &m)| {
                    let s = self.exponent / m;
                    debug_assert_eq!(c % s, 0, "row is not in the embedded image");
                    c / s
                })
                .collect(),
        }
    }

    pub(crate) fn zn(&self) -> Zn {
        Zn::new(self.exponent)
    }

    /// All elements in lexicographic coordinate order. Intended for
    /// exhaustive checks on small groups.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let mut cur = Some(self.zero());
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            let mut next = out.clone();
            let mut i = self.rank();
            loop {
                if i == 0 {
                    cur = None;
                    break;
                }
                i -= 1;
                next.coords[i] += 1;
                if next.coords[i] < self.moduli[i] {
                    cur = Some(next);
                    break;
                }
                next.coords[i] = 0;
            }
            Some(out)
        })
    }
}

/// A subgroup stored by the Howell form of its embedded generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupBasis {
    ambient: FiniteAbelianGroup,
    rows: Vec<Vec<u64>>,
}

impl SubgroupBasis {
    pub fn trivial(ambient: &FiniteAbelianGroup) -> Self {
        SubgroupBasis {
            ambient: ambient.clone(),
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: &FiniteAbelianGroup) -> Self {
        let gens: Vec<_> = (0..ambient.rank()).map(|i| ambient.unit_vector(i)).collect();
        Self::generated_by(ambient, &gens)
    }

    pub fn from_generators(ambient: &FiniteAbelianGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            ambient.check(g)?;
        }
        Ok(Self::generated_by(ambient, gens))
    }

    pub(crate) fn generated_by(ambient: &FiniteAbelianGroup, gens: &[GroupElement]) -> Self {
        let rows = gens.iter().map(|g| ambient.embed(g)).collect();
        Self::from_embedded_rows(ambient, rows)
    }

    pub(crate) fn from_embedded_rows(ambient: &FiniteAbelianGroup, rows: Vec<Vec<u64>>) -> Self {
        SubgroupBasis {
            ambient: ambient.clone(),
            rows: howell_rows(rows, ambient.zn(), ambient.rank()),
        }
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    /// Canonical rows over `Z_N`, `N` the ambient exponent, in embedded
    /// coordinates.
    pub fn howell_rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// The canonical rows read back as group elements.
    pub fn generators(&self) -> Vec<GroupElement> {
        self.rows.iter().map(|r| self.ambient.unembed(r)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn order(&self) -> BigUint {
        let n = self.ambient.exponent();
        self.rows.iter().fold(BigUint::one(), |acc, row| {
            let c = row.iter().position(|&x| x != 0).expect("howell rows are nonzero");
            acc * BigUint::from(n / row[c])
        })
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        self.ambient.check(x)?;
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &GroupElement) -> bool {
        let mut v = self.ambient.embed(x);
        let k = self.ambient.rank();
        reduce_prefix(&self.ambient.zn(), &self.rows, &mut v, k)
    }

    pub fn sum(&self, other: &SubgroupBasis) -> Result<SubgroupBasis> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::from_embedded_rows(&self.ambient, rows))
    }

    pub fn is_subgroup_of(&self, other: &SubgroupBasis) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.generators().iter().all(|g| other.contains_unchecked(g)))
    }

    /// All elements; only sensible for small subgroups.
    pub fn elements(&self) -> Vec<GroupElement> {
        let gens = self.generators();
        let mut out = vec![self.ambient.zero()];
        for g in &gens {
            let o = self.ambient.element_order(g);
            let mut next = Vec::with_capacity(out.len() * o as usize);
            for x in &out {
                let mut y = x.clone();
                for _ in 0..o {
                    next.push(y.clone());
                    y = self.ambient.add(&y, g);
                }
            }
            next.sort();
            next.dedup();
            out = next;
        }
        out
    }
}
