use std::sync::Arc;

use num_bigint::BigUint;

use super::decompose::{decompose, StageOutcome};
use super::extremal::extremal_subgroup;
use super::solver::{solve_derivation_group, solve_jordan_group, DerivationGroup, SolverBounds};
use crate::matrix::StructuralMatrixRing;
use crate::{Error, Result};

/// Orders and outcome of [`theorem_check`].
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub jder: DerivationGroup,
    pub der: DerivationGroup,
    pub extremal: DerivationGroup,
    pub der_plus_extremal: DerivationGroup,
    /// `|JDer| / |Der + Extremal|`; the subgroups are nested so this is exact.
    pub ratio: BigUint,
    pub stages: Vec<StageOutcome>,
    pub verdict: bool,
}

/// Check that every Jordan derivation of `R` is a derivation plus an extremal
/// Jordan derivation, both by subgroup equality `Der + Extremal = JDer` and by
/// decomposing each basis table of `JDer`.
pub fn theorem_check(r: &Arc<StructuralMatrixRing>, bounds: SolverBounds) -> Result<TheoremReport> {
    let n = r.size();
    if n < 4 {
        return Err(Error::DimensionTooSmall { n, min: 4 });
    }
    if let Some(witness) = r.coefficient_ring().two_torsion_witness() {
        return Err(Error::TwoTorsion { witness });
    }
    let jder = solve_jordan_group(r, bounds)?;
    let der = solve_derivation_group(r, bounds)?;
    let extremal = extremal_subgroup(r)?;
    let sum = der.sum(&extremal)?;
    let mut stages = Vec::new();
    let mut stage = |name, ok: bool, detail: String| {
        stages.push(StageOutcome { name, ok, detail });
        ok
    };

    let contained = sum.is_subgroup_of(&jder)?;
    let ratio = if contained {
        jder.order() / sum.order()
    } else {
        BigUint::from(0u32)
    };
    let mut verdict = stage(
        "containment",
        contained,
        if contained { String::new() } else { "Der + Extremal is not inside JDer".into() },
    );
    let equal = contained && sum == jder;
    verdict &= stage("subgroup equality", equal, format!("index {ratio}"));

    let tables = jder.tables();
    let mut failures = Vec::new();
    for (idx, t) in tables.iter().enumerate() {
        match decompose(t) {
            Ok(rep) if rep.reconstruction_ok => {}
            Ok(_) => failures.push(format!("basis table {idx}: reconstruction mismatch")),
            Err(e) => failures.push(format!("basis table {idx}: {e}")),
        }
    }
    verdict &= stage(
        "decomposition",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} basis tables", tables.len())
        } else {
            failures.join("; ")
        },
    );
    Ok(TheoremReport {
        jder,
        der,
        extremal,
        der_plus_extremal: sum,
        ratio,
        stages,
        verdict,
    })
}
