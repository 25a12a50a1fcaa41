use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::linalg::{kernel, Equation, LinearSystem, SubgroupBasis};
use crate::matrix::StructuralMatrixRing;
use crate::table::DerivationTable;
use crate::{Error, Result};

/// Size limits for the linear systems built by the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverBounds {
    pub max_unknowns: usize,
    pub max_equations: usize,
}

impl Default for SolverBounds {
    fn default() -> Self {
        SolverBounds {
            max_unknowns: 5000,
            max_equations: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivationKind {
    Jordan,
    Leibniz,
    Extremal,
    /// Sum of other groups.
    Sum,
}

impl fmt::Display for DerivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivationKind::Jordan => "jordan",
            DerivationKind::Leibniz => "leibniz",
            DerivationKind::Extremal => "extremal",
            DerivationKind::Sum => "sum",
        })
    }
}

/// A subgroup of the flattened table space of `R`.
#[derive(Clone, Debug)]
pub struct DerivationGroup {
    ring: Arc<StructuralMatrixRing>,
    basis: SubgroupBasis,
    kind: DerivationKind,
}

impl PartialEq for DerivationGroup {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl DerivationGroup {
    pub(crate) fn new(ring: Arc<StructuralMatrixRing>, basis: SubgroupBasis, kind: DerivationKind) -> Self {
        DerivationGroup { ring, basis, kind }
    }

    pub fn ring(&self) -> &Arc<StructuralMatrixRing> {
        &self.ring
    }

    pub fn basis(&self) -> &SubgroupBasis {
        &self.basis
    }

    pub fn kind(&self) -> DerivationKind {
        self.kind
    }

    pub fn order(&self) -> BigUint {
        self.basis.order()
    }

    /// Generating tables (the canonical basis, unflattened).
    pub fn tables(&self) -> Vec<DerivationTable> {
        self.basis
            .generators()
            .iter()
            .map(|g| DerivationTable::from_flat(self.ring.clone(), g).expect("group elements are well-defined tables"))
            .collect()
    }

    pub fn contains(&self, d: &DerivationTable) -> Result<bool> {
        self.basis.contains(&d.flatten())
    }

    pub fn sum(&self, other: &DerivationGroup) -> Result<DerivationGroup> {
        Ok(DerivationGroup {
            ring: self.ring.clone(),
            basis: self.basis.sum(&other.basis)?,
            kind: DerivationKind::Sum,
        })
    }

    pub fn is_subgroup_of(&self, other: &DerivationGroup) -> Result<bool> {
        self.basis.is_subgroup_of(&other.basis)
    }
}

/// Sparse coordinates of generator products `g_a·g_b` (or `g_a∘g_b`).
fn product_table(r: &StructuralMatrixRing, jordan: bool) -> Vec<Vec<Vec<(usize, u64)>>> {
    let g = r.generators().len();
    let mats: Vec<_> = (0..g).map(|a| r.generator_matrix(a)).collect();
    mats.iter()
        .map(|u| {
            mats.iter()
                .map(|v| {
                    let p = if jordan { r.jordan_product(u, v) } else { r.mul(u, v) };
                    r.coordinates(&p)
                        .coords()
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i, c))
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn solve(r: &Arc<StructuralMatrixRing>, jordan: bool, bounds: SolverBounds) -> Result<SubgroupBasis> {
    let g = r.generators().len();
    let unknowns = g * g;
    if unknowns > bounds.max_unknowns {
        return Err(Error::BoundExceeded(format!(
            "{unknowns} unknowns exceed the limit {}",
            bounds.max_unknowns
        )));
    }
    let pairs = if jordan { g * (g + 1) / 2 } else { g * g };
    let equations = unknowns + pairs * g;
    if equations > bounds.max_equations {
        return Err(Error::BoundExceeded(format!(
            "{equations} equations exceed the limit {}",
            bounds.max_equations
        )));
    }
    let ords: Vec<u64> = r.generators().iter().map(|x| x.order).collect();
    let var = |a: usize, b: usize| a * g + b;
    let mut system = LinearSystem::new(DerivationTable::table_space(r));
    for a in 0..g {
        for (b, &m) in ords.iter().enumerate() {
            system.push(Equation {
                terms: vec![(var(a, b), ords[a] as i64)],
                modulus: m,
            })?;
        }
    }
    let prod = product_table(r, jordan);
    // Δ(g_a * g_c) − Δ(g_a) * g_c − g_a * Δ(g_c), coordinate f
    for a in 0..g {
        let start = if jordan { a } else { 0 };
        for c in start..g {
            let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); g];
            for &(b, w) in &prod[a][c] {
                for (f, row) in rows.iter_mut().enumerate() {
                    row.push((var(b, f), w as i64));
                }
            }
            for e in 0..g {
                for &(f, p) in &prod[e][c] {
                    rows[f].push((var(a, e), -(p as i64)));
                }
                for &(f, p) in &prod[a][e] {
                    rows[f].push((var(c, e), -(p as i64)));
                }
            }
            for (f, terms) in rows.into_iter().enumerate() {
                if !terms.is_empty() {
                    system.push(Equation { terms, modulus: ords[f] })?;
                }
            }
        }
    }
    kernel(&system)
}

/// All Jordan derivations of `R`, as the kernel of the linearized identity
/// over unordered generator pairs plus well-definedness of each image.
pub fn solve_jordan_group(r: &Arc<StructuralMatrixRing>, bounds: SolverBounds) -> Result<DerivationGroup> {
    Ok(DerivationGroup::new(r.clone(), solve(r, true, bounds)?, DerivationKind::Jordan))
}

/// All derivations of `R`, from the Leibniz identity over ordered pairs.
pub fn solve_derivation_group(r: &Arc<StructuralMatrixRing>, bounds: SolverBounds) -> Result<DerivationGroup> {
    Ok(DerivationGroup::new(r.clone(), solve(r, false, bounds)?, DerivationKind::Leibniz))
}
