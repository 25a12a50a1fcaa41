//! Constructive splitting of a Jordan derivation into standard families.

use std::fmt;
use std::sync::Arc;

use crate::constructions::{
    a3_table, build_a2, build_almost_annihilator, build_annihilator, build_diagonal, build_inner, build_ring,
    extremal_table, validate_a2, validate_a3, validate_extremal, A2Params, A3Params, AlmostAnnihilatorParams,
    AnnihilatorParams, ExtremalParams, RingDerivParams, Violation,
};
use crate::linalg::GroupElement;
use crate::matrix::{MatrixElement, StructuralMatrixRing};
use crate::ring::AdditiveMap;
use crate::table::{DerivationTable, SupportShape};
use crate::{Error, Result};

/// Outcome of one pipeline stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageOutcome {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

impl fmt::Display for StageOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, if self.ok { "ok" } else { "failed" })?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

/// The derivation part common to every size: diagonal, inner, annihilator
/// and ring components.
#[derive(Clone, Debug)]
pub struct DerivationParts {
    pub diagonal: DerivationTable,
    pub d: Vec<GroupElement>,
    pub inner: DerivationTable,
    pub a: MatrixElement,
    pub b: MatrixElement,
    pub annihilator: DerivationTable,
    pub sigma: AnnihilatorParams,
    pub ring: DerivationTable,
    pub pi: RingDerivParams,
}

impl DerivationParts {
    pub fn total(&self) -> DerivationTable {
        [&self.inner, &self.annihilator, &self.ring]
            .into_iter()
            .try_fold(self.diagonal.clone(), |acc, t| acc.add(t))
            .expect("parts share a ring")
    }
}

/// Result of [`decompose`] (`n ≥ 4`).
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub input: DerivationTable,
    pub parts: DerivationParts,
    pub almost: DerivationTable,
    pub almost_params: AlmostAnnihilatorParams,
    pub extremal: DerivationTable,
    pub extremal_params: ExtremalParams,
    pub reconstruction_ok: bool,
    pub stages: Vec<StageOutcome>,
}

impl DecompositionReport {
    /// The derivation `D` with `input = D + extremal`.
    pub fn derivation(&self) -> DerivationTable {
        self.parts.total().add(&self.almost).expect("same ring")
    }
}

/// Result of [`decompose_n3`].
#[derive(Clone, Debug)]
pub struct N3DecompositionReport {
    pub input: DerivationTable,
    pub parts: DerivationParts,
    pub a2: DerivationTable,
    pub a2_params: A2Params,
    pub a3: DerivationTable,
    pub a3_params: A3Params,
    /// First relation of the `A3Params` list that the extracted parameters
    /// violate, if any. The table itself is still checked exactly.
    pub a3_violation: Option<Violation>,
    pub reconstruction_ok: bool,
    pub stages: Vec<StageOutcome>,
}

fn fail(stage: &'static str, detail: impl Into<String>) -> Error {
    Error::StageFailure {
        stage: stage.to_string(),
        detail: detail.into(),
    }
}

fn preconditions(d: &DerivationTable, min: usize) -> Result<()> {
    let r = d.ring();
    if r.size() < min {
        return Err(Error::DimensionTooSmall { n: r.size(), min });
    }
    if let Some(witness) = r.coefficient_ring().two_torsion_witness() {
        return Err(Error::TwoTorsion { witness });
    }
    d.verify_jordan().map_err(|c| Error::NotJordan(Box::new(c)))
}

fn component(t: &DerivationTable, src: (usize, usize), dst: (usize, usize)) -> AdditiveMap {
    t.component(src, dst).expect("positions in range").map
}

struct Pipeline {
    r: Arc<StructuralMatrixRing>,
    stages: Vec<StageOutcome>,
}

impl Pipeline {
    fn record(&mut self, name: &'static str, detail: impl Into<String>) {
        self.stages.push(StageOutcome {
            name,
            ok: true,
            detail: detail.into(),
        });
    }

    fn support(&mut self, name: &'static str, t: &DerivationTable, shape: SupportShape) -> Result<()> {
        match t.support_violation(shape)? {
            None => {
                self.record(name, format!("{shape} support holds"));
                Ok(())
            }
            Some(v) => Err(fail(name, v.to_string())),
        }
    }

    fn unit_image(&self, t: &DerivationTable, i: usize, j: usize) -> MatrixElement {
        let one = self.r.coefficient_ring().unit();
        let e = self.r.elementary(one, i, j).expect("K position");
        t.evaluate(&e).expect("member of R")
    }

    /// Subtract a diagonal derivation clearing the `(i+1, i)` entries of
    /// `Δ(e_{i+1,i})`.
    fn diagonal(&mut self, t: &DerivationTable) -> Result<(DerivationTable, Vec<GroupElement>, DerivationTable)> {
        let r = self.r.clone();
        let k = r.coefficient_ring();
        let n = r.size();
        let mut d = vec![k.zero()];
        for i in 1..n {
            let a = self.unit_image(t, i + 1, i).entry(i + 1, i).clone();
            let next = k.add(&d[i - 1], &a);
            d.push(next);
        }
        let diag = build_diagonal(&r, &d)?;
        let rest = t.sub(&diag)?;
        for i in 1..n {
            if !self.unit_image(&rest, i + 1, i).entry(i + 1, i).is_zero() {
                return Err(fail("diagonal", format!("entry ({},{}) of the image of e({},{}) survives", i + 1, i, i + 1, i)));
            }
        }
        self.record("diagonal", "");
        Ok((diag, d, rest))
    }

    /// Subtract inner derivations by `A` and `B` clearing column `i` and entry
    /// `(i+1, 1)` of `Δ(e_{i+1,i})`.
    fn inner(
        &mut self,
        t: &DerivationTable,
    ) -> Result<(DerivationTable, MatrixElement, MatrixElement, DerivationTable)> {
        let r = self.r.clone();
        let k = r.coefficient_ring();
        let n = r.size();
        let mut a_rows = vec![vec![k.zero(); n]; n];
        for i in 1..n {
            let img = self.unit_image(t, i + 1, i);
            for (u, row) in a_rows.iter_mut().enumerate().map(|(u, row)| (u + 1, row)) {
                if u != i + 1 {
                    row[i] = img.entry(u, i).clone();
                }
            }
        }
        let a = r.from_rows(a_rows).map_err(|e| fail("inner", e.to_string()))?;
        let ia = build_inner(&r, &a)?;
        let after_a = t.sub(&ia)?;
        let mut b_rows = vec![vec![k.zero(); n]; n];
        for i in 2..n {
            let img = self.unit_image(&after_a, i + 1, i);
            b_rows[i - 1][0] = k.neg(img.entry(i + 1, 1));
        }
        let b = r.from_rows(b_rows).map_err(|e| fail("inner", e.to_string()))?;
        let ib = build_inner(&r, &b)?;
        let inner = ia.add(&ib)?;
        let rest = after_a.sub(&ib)?;
        for i in 1..n {
            let img = self.unit_image(&rest, i + 1, i);
            if let Some(u) = (1..=n).find(|&u| !img.entry(u, i).is_zero()) {
                return Err(fail("inner", format!("entry ({u},{i}) of the image of e({},{i}) survives", i + 1)));
            }
            if !img.entry(i + 1, 1).is_zero() {
                return Err(fail("inner", format!("entry ({},1) of the image of e({},{i}) survives", i + 1, i + 1)));
            }
        }
        self.record("inner", "");
        Ok((inner, a, b, rest))
    }

    /// Subtract the annihilator derivation read off the `(n, 1)` entries of
    /// the images of `e_{i+1,i}` and `J e_{1,n}`.
    fn annihilator(&mut self, t: &DerivationTable) -> Result<(DerivationTable, AnnihilatorParams, DerivationTable)> {
        let r = self.r.clone();
        let n = r.size();
        let ann = r.coefficient_ring().annihilator(r.ideal())?;
        let retype = |m: AdditiveMap, name: String| {
            m.with_codomain(&ann)
                .map_err(|e| fail("annihilator", format!("{name}: {e}")))
        };
        let sigmas = (1..n)
            .map(|i| retype(component(t, (i + 1, i), (n, 1)), format!("sigma_{i}")))
            .collect::<Result<Vec<_>>>()?;
        let sigma_n = retype(component(t, (1, n), (n, 1)), "sigma_n".to_string())?;
        let params = AnnihilatorParams { sigma_n, sigmas };
        let table = build_annihilator(&r, &params).map_err(|e| fail("annihilator", e.to_string()))?;
        let rest = t.sub(&table)?;
        for i in 1..n {
            let img = self.unit_image(&rest, i + 1, i);
            if !img.is_zero() {
                return Err(fail("annihilator", format!("image of e({},{i}) is {img}", i + 1)));
            }
        }
        self.record("annihilator", "");
        Ok((table, params, rest))
    }

    /// Subtract the ring derivation induced by the common diagonal component
    /// `Θ^{i,j}_{i,j}`.
    fn ring(&mut self, t: &DerivationTable) -> Result<(DerivationTable, RingDerivParams, DerivationTable)> {
        let r = self.r.clone();
        let n = r.size();
        let k = r.coefficient_ring();
        let theta = component(t, (2, 1), (2, 1));
        for i in 1..=n {
            for j in 1..=n {
                let c = component(t, (i, j), (i, j));
                for (y, img) in c.domain().basis().elements().iter().zip(c.images()) {
                    if theta.apply(y).as_ref() != Some(img) {
                        return Err(fail(
                            "ring",
                            format!("component at ({i},{j}) sends {y} to {img}, not to its image under theta"),
                        ));
                    }
                }
            }
        }
        let params = RingDerivParams {
            pi: theta.with_codomain(&k.whole())?,
        };
        let table = build_ring(&r, &params).map_err(|e| fail("ring", e.to_string()))?;
        let rest = t.sub(&table)?;
        self.record("ring", "");
        Ok((table, params, rest))
    }

    fn parts(&mut self, d: &DerivationTable, check_reduced: bool) -> Result<(DerivationParts, DerivationTable)> {
        let (diagonal, dvec, t) = self.diagonal(d)?;
        let (inner, a, b, t) = self.inner(&t)?;
        if check_reduced {
            self.support("reduced support", &t, SupportShape::Reduced)?;
        }
        let (annihilator, sigma, t) = self.annihilator(&t)?;
        let (ring, pi, t) = self.ring(&t)?;
        let parts = DerivationParts {
            diagonal,
            d: dvec,
            inner,
            a,
            b,
            annihilator,
            sigma,
            ring,
            pi,
        };
        Ok((parts, t))
    }
}

/// Split a Jordan derivation of `R_n(K, J)`, `n ≥ 4`, `K` 2-torsion free, into
/// diagonal, inner, annihilator, ring and almost-annihilator derivations plus
/// an extremal Jordan derivation. Every intermediate claim is checked; a
/// failed check aborts with [`Error::StageFailure`].
pub fn decompose(d: &DerivationTable) -> Result<DecompositionReport> {
    preconditions(d, 4)?;
    let r = d.ring().clone();
    let n = r.size();
    let mut p = Pipeline {
        r: r.clone(),
        stages: Vec::new(),
    };
    p.support("subdiagonal support", d, SupportShape::Subdiagonal)?;
    let (parts, xi) = p.parts(d, true)?;
    p.support("residual support", &xi, SupportShape::Residual)?;

    let k = r.coefficient_ring();
    let j = r.ideal();
    let almost_params = AlmostAnnihilatorParams {
        alpha: component(&xi, (1, n), (1, 1)),
        beta: component(&xi, (1, n), (n, n)),
        gamma: AdditiveMap::zero(j, &k.whole()),
    };
    let almost = build_almost_annihilator(&r, &almost_params).map_err(|e| fail("almost annihilator", e.to_string()))?;
    let pi = xi.sub(&almost)?;
    p.record("almost annihilator", "");

    let ann = k.annihilator(j)?;
    let read = |src, dst, name: &str| {
        component(&pi, src, dst)
            .with_codomain(&ann)
            .map_err(|e| fail("extremal", format!("{name}: {e}")))
    };
    let alpha = read((1, n), (n - 1, 1), "alpha")?;
    let beta = read((1, n), (n - 1, 2), "beta")?;
    let gamma = read((1, n), (n, 2), "gamma")?;
    let copies = [
        ("alpha", &alpha, (1, n - 1), (n, 1)),
        ("beta", &beta, (1, n - 1), (n, 2)),
        ("beta", &beta, (2, n - 1), (n, 1)),
        ("beta", &beta, (2, n), (n - 1, 1)),
        ("gamma", &gamma, (2, n), (n, 1)),
    ];
    for (name, map, src, dst) in copies {
        if component(&pi, src, dst).images() != map.images() {
            return Err(fail(
                "extremal",
                format!("{name} read at ({},{})->({},{}) disagrees", src.0, src.1, dst.0, dst.1),
            ));
        }
    }
    let extremal_params = ExtremalParams { alpha, beta, gamma };
    if let Err(v) = validate_extremal(&r, &extremal_params)? {
        return Err(fail("extremal", v.to_string()));
    }
    let extremal = extremal_table(&r, &extremal_params);
    if extremal != pi {
        return Err(fail("extremal", format!("residual {pi} is not the extremal table {extremal}")));
    }
    p.record("extremal", "");

    let total = parts.total().add(&almost)?.add(&extremal)?;
    let reconstruction_ok = total == *d;
    p.stages.push(StageOutcome {
        name: "reconstruction",
        ok: reconstruction_ok,
        detail: String::new(),
    });
    Ok(DecompositionReport {
        input: d.clone(),
        parts,
        almost,
        almost_params,
        extremal,
        extremal_params,
        reconstruction_ok,
        stages: p.stages,
    })
}

/// Positions `(source, target)` that the two `n = 3` proper families write.
const N3_POSITIONS: [((usize, usize), (usize, usize)); 10] = [
    ((1, 3), (3, 2)),
    ((1, 3), (2, 1)),
    ((1, 2), (3, 1)),
    ((2, 3), (3, 1)),
    ((1, 3), (1, 1)),
    ((1, 3), (2, 2)),
    ((1, 3), (3, 3)),
    ((2, 3), (2, 1)),
    ((1, 2), (3, 2)),
    ((0, 0), (3, 1)),
];

fn explained_n3(src: (usize, usize), dst: (usize, usize)) -> bool {
    N3_POSITIONS
        .iter()
        .any(|&(s, t)| t == dst && (s == src || (s == (0, 0) && src.0 == src.1)))
}

/// Split a Jordan derivation of `R_3(K, J)`, `K` 2-torsion free, into its
/// derivation part and the two proper `n = 3` families.
pub fn decompose_n3(d: &DerivationTable) -> Result<N3DecompositionReport> {
    let r = d.ring().clone();
    if r.size() != 3 {
        return Err(Error::DimensionMismatch { n: r.size(), expected: 3 });
    }
    preconditions(d, 3)?;
    let mut p = Pipeline {
        r: r.clone(),
        stages: Vec::new(),
    };
    let (parts, xi) = p.parts(d, false)?;

    for (g, image) in r.generators().iter().zip(xi.images()) {
        if let Some((s, t, x)) = image.support().find(|&(s, t, _)| !explained_n3((g.row, g.col), (s, t))) {
            return Err(fail(
                "unexplained residual support",
                format!("image of {g} has entry {x} at ({s},{t})"),
            ));
        }
    }

    let k = r.coefficient_ring();
    let ann = k.annihilator(r.ideal())?;
    let to_ann = |m: AdditiveMap, name: &str| {
        m.with_codomain(&ann)
            .map_err(|e| fail("split", format!("{name}: {e}")))
    };
    let a2_params = A2Params {
        alpha1: to_ann(component(&xi, (1, 3), (3, 2)), "alpha1")?,
        alpha2: to_ann(component(&xi, (1, 3), (2, 1)), "alpha2")?,
    };
    if let Err(v) = validate_a2(&r, &a2_params)? {
        return Err(fail("split", v.to_string()));
    }
    let whole = k.whole();
    let to_k = |m: AdditiveMap| m.with_codomain(&whole).expect("codomain K");
    let a3_params = A3Params {
        delta: [1, 2, 3].map(|t| component(&xi, (1, 3), (t, t))),
        beta: [1, 2, 3].map(|t| to_k(component(&xi, (t, t), (3, 1)))),
        theta: to_k(component(&xi, (2, 3), (2, 1))),
        gamma: to_k(component(&xi, (1, 2), (3, 2))),
    };
    let a2 = build_a2(&r, &a2_params)?;
    let a3 = a3_table(&r, &a3_params)?;
    let a3_violation = validate_a3(&r, &a3_params)?.err();
    let split_ok = a2.add(&a3)? == xi;
    if !split_ok {
        return Err(fail("split", format!("residual {xi} is not the sum of the two proper families")));
    }
    p.stages.push(StageOutcome {
        name: "split",
        ok: a3_violation.is_none(),
        detail: a3_violation
            .as_ref()
            .map(|v| format!("extracted parameters violate {v}"))
            .unwrap_or_default(),
    });

    let total = parts.total().add(&a2)?.add(&a3)?;
    let reconstruction_ok = total == *d;
    p.stages.push(StageOutcome {
        name: "reconstruction",
        ok: reconstruction_ok,
        detail: String::new(),
    });
    Ok(N3DecompositionReport {
        input: d.clone(),
        parts,
        a2,
        a2_params,
        a3,
        a3_params,
        a3_violation,
        reconstruction_ok,
        stages: p.stages,
    })
}
