//! Exact linear algebra over finite abelian groups.
//!
//! Subgroups are kept as Howell forms over `Z_N` (`N` the group exponent),
//! which gives canonical equality, membership by greedy reduction, and exact
//! orders. Mixed moduli are handled by the injection `x_i ↦ (N/m_i)·x_i`.

mod basis;
mod group;
mod howell;
pub(crate) mod modular;
mod system;

pub use basis::AdditiveBasis;
pub use group::{FiniteAbelianGroup, GroupElement, SubgroupBasis};
pub use howell::howell_form;
pub use system::{kernel, Equation, LinearSystem};

/// Subgroup generated by `a ∪ b`.
pub fn subgroup_sum(a: &SubgroupBasis, b: &SubgroupBasis) -> crate::Result<SubgroupBasis> {
    a.sum(b)
}

/// Exact order of a subgroup.
pub fn subgroup_order(s: &SubgroupBasis) -> num_bigint::BigUint {
    s.order()
}

/// Membership test against the canonical basis.
pub fn contains(s: &SubgroupBasis, x: &GroupElement) -> crate::Result<bool> {
    s.contains(x)
}
