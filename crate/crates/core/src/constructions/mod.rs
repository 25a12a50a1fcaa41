//! Parameter types, validators and table builders for the standard families
//! of (Jordan) derivations of `R_n(K, J)`.
//!
//! Derivations: inner, diagonal, annihilator, ring and almost-annihilator.
//! Proper Jordan derivations: the extremal family for `n ≥ 4` and the two
//! `n = 3` families [`A2Params`] and [`A3Params`].

mod a3;
mod build;
mod params;

use std::fmt;

use crate::linalg::GroupElement;
use crate::ring::{AdditiveMap, FiniteRing, Ideal, MapViolation};

pub use a3::{A3Relation, Quantifier, A3_RELATIONS};
pub use build::{
    build_a2, build_a3, build_almost_annihilator, build_annihilator, build_diagonal, build_extremal,
    build_inner, build_ring, a3_table,
};
pub(crate) use build::extremal_table;
pub use params::{
    validate_a2, validate_a3, validate_almost_annihilator, validate_annihilator, validate_extremal,
    validate_ring, A2Params, A3Params, AlmostAnnihilatorParams, AnnihilatorParams, ExtremalParams,
    RingDerivParams,
};

/// A failed parameter condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// The map (or maps) the condition is about.
    pub map: String,
    /// The condition, written out.
    pub relation: String,
    /// Position of the relation in its family's list, 1-based, when the family
    /// numbers its relations.
    pub index: Option<usize>,
    /// Named arguments at which the condition fails.
    pub witnesses: Vec<(String, GroupElement)>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.map)?;
        if let Some(i) = self.index {
            write!(f, "relation {i} ")?;
        }
        write!(f, "`{}` fails", self.relation)?;
        if !self.witnesses.is_empty() {
            let w: Vec<String> = self.witnesses.iter().map(|(n, v)| format!("{n} = {v}")).collect();
            write!(f, " at {}", w.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for Violation {}

type Check = std::result::Result<(), Violation>;

fn violation(map: &str, relation: &str, witnesses: Vec<(&str, &GroupElement)>) -> Violation {
    Violation {
        map: map.to_string(),
        relation: relation.to_string(),
        index: None,
        witnesses: witnesses.into_iter().map(|(n, v)| (n.to_string(), v.clone())).collect(),
    }
}

/// Check a map's domain and its codomain against the expected ideals.
fn check_map(name: &str, map: &AdditiveMap, domain: &Ideal, codomain: &Ideal) -> Check {
    if map.domain() != domain {
        return Err(violation(name, "domain", vec![]));
    }
    let retyped = map
        .with_codomain(codomain)
        .map_err(|_| violation(name, "codomain", vec![]))?;
    match retyped.validate() {
        Ok(()) => Ok(()),
        Err(MapViolation::Codomain { basis, image }) => {
            Err(violation(name, "codomain", vec![("y", &basis), ("image", &image)]))
        }
        Err(MapViolation::Order { basis, image }) => {
            Err(violation(name, "order", vec![("y", &basis), ("image", &image)]))
        }
    }
}

/// Value of a map at a point of its domain.
fn at(map: &AdditiveMap, x: &GroupElement) -> GroupElement {
    map.apply(x).expect("argument lies in the map's domain")
}

/// Quantifier helper over basis elements of `J` and additive generators of `K`.
struct Scope<'a> {
    k: &'a FiniteRing,
    j_basis: Vec<GroupElement>,
    k_basis: Vec<GroupElement>,
}

impl<'a> Scope<'a> {
    fn new(k: &'a FiniteRing, j: &Ideal) -> Self {
        Scope {
            k,
            j_basis: j.basis().elements().to_vec(),
            k_basis: k.additive_basis().elements().to_vec(),
        }
    }

    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.k.mul(a, b)
    }

    fn sum(&self, terms: &[GroupElement]) -> GroupElement {
        terms.iter().fold(self.k.zero(), |acc, t| self.k.add(&acc, t))
    }

    /// `lhs(y) = rhs(y)` for every basis `y` of `J`.
    fn for_y(&self, map: &str, rel: &str, f: impl Fn(&GroupElement) -> (GroupElement, GroupElement)) -> Check {
        for y in &self.j_basis {
            let (l, r) = f(y);
            if l != r {
                return Err(violation(map, rel, vec![("y", y)]));
            }
        }
        Ok(())
    }

    /// Over basis pairs `(y, z)` of `J`.
    fn for_yz(
        &self,
        map: &str,
        rel: &str,
        f: impl Fn(&GroupElement, &GroupElement) -> (GroupElement, GroupElement),
    ) -> Check {
        for y in &self.j_basis {
            for z in &self.j_basis {
                let (l, r) = f(y, z);
                if l != r {
                    return Err(violation(map, rel, vec![("y", y), ("z", z)]));
                }
            }
        }
        Ok(())
    }

    /// Over basis `y` of `J` and additive generators `x` of `K`.
    fn for_yx(
        &self,
        map: &str,
        rel: &str,
        f: impl Fn(&GroupElement, &GroupElement) -> (GroupElement, GroupElement),
    ) -> Check {
        for y in &self.j_basis {
            for x in &self.k_basis {
                let (l, r) = f(y, x);
                if l != r {
                    return Err(violation(map, rel, vec![("y", y), ("x", x)]));
                }
            }
        }
        Ok(())
    }
}
