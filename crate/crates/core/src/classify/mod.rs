//! Exact computation of derivation groups, decomposition of individual Jordan
//! derivations, and the end-to-end check that every Jordan derivation is a
//! derivation plus an extremal one.

mod decompose;
mod extremal;
mod solver;
mod theorem;

pub use decompose::{
    decompose, decompose_n3, DecompositionReport, DerivationParts, N3DecompositionReport, StageOutcome,
};
pub use extremal::{extremal_parameter_group, extremal_subgroup, ExtremalParamSpace};
pub use solver::{solve_derivation_group, solve_jordan_group, DerivationGroup, DerivationKind, SolverBounds};
pub use theorem::{theorem_check, TheoremReport};
