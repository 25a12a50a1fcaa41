use std::sync::Arc;

use super::params::*;
use super::{at, Check};
use crate::linalg::GroupElement;
use crate::matrix::{MatrixElement, StructuralMatrixRing};
use crate::table::DerivationTable;
use crate::{Error, Result};

fn require(check: Check) -> Result<()> {
    check.map_err(Error::InvalidParams)
}

/// Table from per-generator images `f(row, col, value)` given as lists of
/// `(value, row, col)` terms.
fn from_terms(
    r: &Arc<StructuralMatrixRing>,
    f: impl Fn(usize, usize, &GroupElement) -> Vec<(GroupElement, usize, usize)>,
) -> Result<DerivationTable> {
    let images = r
        .generators()
        .iter()
        .map(|g| {
            let mut m = r.zero();
            for (v, i, j) in f(g.row, g.col, &g.value) {
                if !v.is_zero() {
                    m = r.add(&m, &r.elementary(&v, i, j)?);
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<MatrixElement>>>()?;
    DerivationTable::new(r.clone(), images)
}

/// `X ↦ AX − XA`.
pub fn build_inner(r: &Arc<StructuralMatrixRing>, a: &MatrixElement) -> Result<DerivationTable> {
    r.check(a)?;
    DerivationTable::from_map(r.clone(), |x| r.sub(&r.mul(a, x), &r.mul(x, a)))
}

/// `X ↦ DX − XD` for `D = Σ d_i e_{i,i}`, `d_i ∈ K` arbitrary; on generators
/// `x e_{i,j} ↦ (d_i x − x d_j) e_{i,j}`.
pub fn build_diagonal(r: &Arc<StructuralMatrixRing>, d: &[GroupElement]) -> Result<DerivationTable> {
    if d.len() != r.size() {
        return Err(Error::Arity {
            expected: r.size(),
            got: d.len(),
        });
    }
    let k = r.coefficient_ring();
    for di in d {
        k.group().check(di)?;
    }
    from_terms(r, |i, j, x| vec![(k.sub(&k.mul(&d[i - 1], x), &k.mul(x, &d[j - 1])), i, j)])
}

/// `[a_{i,j}] ↦ (σ_n(a_{1,n}) + Σ σ_i(a_{i+1,i}))·e_{n,1}`.
pub fn build_annihilator(r: &Arc<StructuralMatrixRing>, p: &AnnihilatorParams) -> Result<DerivationTable> {
    require(validate_annihilator(r, p)?)?;
    let n = r.size();
    from_terms(r, |i, j, x| {
        let mut terms = Vec::new();
        if i == j + 1 {
            terms.push((at(&p.sigmas[j - 1], x), n, 1));
        }
        if (i, j) == (1, n) {
            terms.push((at(&p.sigma_n, x), n, 1));
        }
        terms
    })
}

/// Entrywise application of `π`.
pub fn build_ring(r: &Arc<StructuralMatrixRing>, p: &RingDerivParams) -> Result<DerivationTable> {
    require(validate_ring(r, p)?)?;
    from_terms(r, |i, j, x| vec![(at(&p.pi, x), i, j)])
}

/// `y e_{1,n} ↦ α(y)e_{1,1} + β(y)e_{n,n} + γ(y)e_{n,1}`,
/// `y e_{i,n} ↦ α(y)e_{i,1}` for `1 < i ≤ n`, `y e_{1,j} ↦ β(y)e_{n,j}` for
/// `1 ≤ j < n`, other generators to zero.
pub fn build_almost_annihilator(
    r: &Arc<StructuralMatrixRing>,
    p: &AlmostAnnihilatorParams,
) -> Result<DerivationTable> {
    require(validate_almost_annihilator(r, p)?)?;
    let n = r.size();
    from_terms(r, |i, j, y| match (i, j) {
        (1, c) if c == n => vec![(at(&p.alpha, y), 1, 1), (at(&p.beta, y), n, n), (at(&p.gamma, y), n, 1)],
        (i, c) if c == n => vec![(at(&p.alpha, y), i, 1)],
        (1, j) => vec![(at(&p.beta, y), n, j)],
        _ => vec![],
    })
}

/// The extremal Jordan derivation (`n ≥ 4`):
/// `y e_{1,n} ↦ α(y)e_{n−1,1} + β(y)e_{n−1,2} + γ(y)e_{n,2}`,
/// `y e_{1,n−1} ↦ α(y)e_{n,1} + β(y)e_{n,2}`, `y e_{2,n−1} ↦ β(y)e_{n,1}`,
/// `y e_{2,n} ↦ β(y)e_{n−1,1} + γ(y)e_{n,1}`, other generators to zero.
pub fn build_extremal(r: &Arc<StructuralMatrixRing>, p: &ExtremalParams) -> Result<DerivationTable> {
    let n = r.size();
    if n < 4 {
        return Err(Error::DimensionTooSmall { n, min: 4 });
    }
    require(validate_extremal(r, p)?)?;
    Ok(extremal_table(r, p))
}

/// [`build_extremal`] without parameter validation; the result is still a
/// well-defined table when the maps have codomain `Ann_K J`.
pub(crate) fn extremal_table(r: &Arc<StructuralMatrixRing>, p: &ExtremalParams) -> DerivationTable {
    let n = r.size();
    from_terms(r, |i, j, y| {
        let (a, b, g) = (|| at(&p.alpha, y), || at(&p.beta, y), || at(&p.gamma, y));
        match (i, j) {
            (1, c) if c == n => vec![(a(), n - 1, 1), (b(), n - 1, 2), (g(), n, 2)],
            (1, c) if c == n - 1 => vec![(a(), n, 1), (b(), n, 2)],
            (2, c) if c == n - 1 => vec![(b(), n, 1)],
            (2, c) if c == n => vec![(b(), n - 1, 1), (g(), n, 1)],
            _ => vec![],
        }
    })
    .expect("extremal images lie in the pattern")
}

fn require_n3(r: &StructuralMatrixRing) -> Result<()> {
    match r.size() {
        3 => Ok(()),
        n if n < 3 => Err(Error::DimensionTooSmall { n, min: 3 }),
        n => Err(Error::DimensionMismatch { n, expected: 3 }),
    }
}

/// `y e_{1,3} ↦ α₁(y)e_{3,2} + α₂(y)e_{2,1}`, `y e_{1,2} ↦ α₂(y)e_{3,1}`,
/// `y e_{2,3} ↦ α₁(y)e_{3,1}`, other generators to zero (`n = 3`).
pub fn build_a2(r: &Arc<StructuralMatrixRing>, p: &A2Params) -> Result<DerivationTable> {
    require_n3(r)?;
    require(validate_a2(r, p)?)?;
    from_terms(r, |i, j, y| match (i, j) {
        (1, 3) => vec![(at(&p.alpha1, y), 3, 2), (at(&p.alpha2, y), 2, 1)],
        (1, 2) => vec![(at(&p.alpha2, y), 3, 1)],
        (2, 3) => vec![(at(&p.alpha1, y), 3, 1)],
        _ => vec![],
    })
}

/// `y e_{1,3} ↦ Σ δ_i(y)e_{i,i}`, `y e_{i,i} ↦ β_i(y)e_{3,1}`,
/// `y e_{2,3} ↦ θ(y)e_{2,1}`, `y e_{1,2} ↦ γ(y)e_{3,2}`, other generators to
/// zero (`n = 3`).
///
/// The relation list alone does not force the Jordan identity at pairs
/// `(y e_{1,3}, x e_{3,1})` with `x ∉ J`, so the built table is also checked
/// directly and rejected with [`Error::NotJordan`] when it fails.
pub fn build_a3(r: &Arc<StructuralMatrixRing>, p: &A3Params) -> Result<DerivationTable> {
    require_n3(r)?;
    require(validate_a3(r, p)?)?;
    let t = a3_table(r, p)?;
    t.verify_jordan().map_err(|c| Error::NotJordan(Box::new(c)))?;
    Ok(t)
}

/// [`build_a3`] without the relation list; used to compare the list against
/// the Jordan identity directly.
pub fn a3_table(r: &Arc<StructuralMatrixRing>, p: &A3Params) -> Result<DerivationTable> {
    require_n3(r)?;
    from_terms(r, |i, j, y| match (i, j) {
        (1, 3) => (1..=3).map(|t| (at(&p.delta[t - 1], y), t, t)).collect(),
        (t, u) if t == u => vec![(at(&p.beta[t - 1], y), 3, 1)],
        (2, 3) => vec![(at(&p.theta, y), 2, 1)],
        (1, 2) => vec![(at(&p.gamma, y), 3, 2)],
        _ => vec![],
    })
}
