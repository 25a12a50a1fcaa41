use super::a3::A3_RELATIONS;
use super::{at, check_map, violation, Check, Scope};
use crate::matrix::StructuralMatrixRing;
use crate::ring::{AdditiveMap, Ideal};
use crate::Result;

fn ann(r: &StructuralMatrixRing) -> Result<Ideal> {
    r.coefficient_ring().annihilator(r.ideal())
}

/// Maps `α, β, γ: J → Ann_K J` of an extremal Jordan derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalParams {
    pub alpha: AdditiveMap,
    pub beta: AdditiveMap,
    pub gamma: AdditiveMap,
}

impl ExtremalParams {
    pub fn zero(r: &StructuralMatrixRing) -> Result<Self> {
        let z = AdditiveMap::zero(r.ideal(), &ann(r)?);
        Ok(ExtremalParams {
            alpha: z.clone(),
            beta: z.clone(),
            gamma: z,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero() && self.gamma.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(ExtremalParams {
            alpha: self.alpha.add(&other.alpha)?,
            beta: self.beta.add(&other.beta)?,
            gamma: self.gamma.add(&other.gamma)?,
        })
    }
}

/// Maps `α₁, α₂: J → Ann_K J` of the first `n = 3` family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A2Params {
    pub alpha1: AdditiveMap,
    pub alpha2: AdditiveMap,
}

impl A2Params {
    pub fn zero(r: &StructuralMatrixRing) -> Result<Self> {
        let z = AdditiveMap::zero(r.ideal(), &ann(r)?);
        Ok(A2Params {
            alpha1: z.clone(),
            alpha2: z,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.alpha1.is_zero() && self.alpha2.is_zero()
    }
}

/// Maps of the second `n = 3` family: `δ₁, δ₂, δ₃: J → J` and
/// `β₁, β₂, β₃, θ, γ: J → K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A3Params {
    pub delta: [AdditiveMap; 3],
    pub beta: [AdditiveMap; 3],
    pub theta: AdditiveMap,
    pub gamma: AdditiveMap,
}

impl A3Params {
    pub fn zero(r: &StructuralMatrixRing) -> Self {
        let j = r.ideal();
        let jj = AdditiveMap::zero(j, j);
        let jk = AdditiveMap::zero(j, &r.coefficient_ring().whole());
        A3Params {
            delta: [jj.clone(), jj.clone(), jj],
            beta: [jk.clone(), jk.clone(), jk.clone()],
            theta: jk.clone(),
            gamma: jk,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.delta.iter().chain(&self.beta).all(AdditiveMap::is_zero) && self.theta.is_zero() && self.gamma.is_zero()
    }
}

/// `σ_n: J → Ann_K J` and `σ_1, …, σ_{n−1}: K → Ann_K J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorParams {
    pub sigma_n: AdditiveMap,
    /// `sigmas[i - 1]` is `σ_i`, applied to the `(i+1, i)` entry.
    pub sigmas: Vec<AdditiveMap>,
}

impl AnnihilatorParams {
    pub fn zero(r: &StructuralMatrixRing) -> Result<Self> {
        let a = ann(r)?;
        Ok(AnnihilatorParams {
            sigma_n: AdditiveMap::zero(r.ideal(), &a),
            sigmas: vec![AdditiveMap::zero(&r.coefficient_ring().whole(), &a); r.size() - 1],
        })
    }

    pub fn is_zero(&self) -> bool {
        self.sigma_n.is_zero() && self.sigmas.iter().all(AdditiveMap::is_zero)
    }
}

/// A derivation `π` of `K` that restricts to a derivation of `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDerivParams {
    pub pi: AdditiveMap,
}

impl RingDerivParams {
    pub fn zero(r: &StructuralMatrixRing) -> Self {
        let w = r.coefficient_ring().whole();
        RingDerivParams {
            pi: AdditiveMap::zero(&w, &w),
        }
    }
}

/// `α, β: J → J` and `γ: J → K` of an almost-annihilator derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostAnnihilatorParams {
    pub alpha: AdditiveMap,
    pub beta: AdditiveMap,
    pub gamma: AdditiveMap,
}

impl AlmostAnnihilatorParams {
    pub fn zero(r: &StructuralMatrixRing) -> Self {
        let j = r.ideal();
        AlmostAnnihilatorParams {
            alpha: AdditiveMap::zero(j, j),
            beta: AdditiveMap::zero(j, j),
            gamma: AdditiveMap::zero(j, &r.coefficient_ring().whole()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero() && self.gamma.is_zero()
    }
}

/// Extremal parameters: codomain `Ann_K J`, vanishing on `J²`, and
/// `α(yx) = xα(y)`, `β(yx) = xβ(y)`, `β(xy) = β(y)x`, `γ(xy) = γ(y)x`.
pub fn validate_extremal(r: &StructuralMatrixRing, p: &ExtremalParams) -> Result<Check> {
    let a = ann(r)?;
    let s = Scope::new(r.coefficient_ring(), r.ideal());
    let maps = [("alpha", &p.alpha), ("beta", &p.beta), ("gamma", &p.gamma)];
    Ok((|| {
        for (name, m) in maps {
            check_map(name, m, r.ideal(), &a)?;
        }
        for (name, m) in maps {
            s.for_yz(name, &format!("{name}(yz) = 0"), |y, z| (at(m, &s.mul(y, z)), s.k.zero()))?;
        }
        s.for_yx("alpha", "alpha(yx) = x alpha(y)", |y, x| {
            (at(&p.alpha, &s.mul(y, x)), s.mul(x, &at(&p.alpha, y)))
        })?;
        s.for_yx("beta", "beta(yx) = x beta(y)", |y, x| {
            (at(&p.beta, &s.mul(y, x)), s.mul(x, &at(&p.beta, y)))
        })?;
        s.for_yx("beta", "beta(xy) = beta(y) x", |y, x| {
            (at(&p.beta, &s.mul(x, y)), s.mul(&at(&p.beta, y), x))
        })?;
        s.for_yx("gamma", "gamma(xy) = gamma(y) x", |y, x| {
            (at(&p.gamma, &s.mul(x, y)), s.mul(&at(&p.gamma, y), x))
        })
    })())
}

/// Codomain `Ann_K J`, vanishing on `J²`, `α₁(xy) = α₁(y)x`, `α₂(yx) = xα₂(y)`.
pub fn validate_a2(r: &StructuralMatrixRing, p: &A2Params) -> Result<Check> {
    let a = ann(r)?;
    let s = Scope::new(r.coefficient_ring(), r.ideal());
    Ok((|| {
        check_map("alpha1", &p.alpha1, r.ideal(), &a)?;
        check_map("alpha2", &p.alpha2, r.ideal(), &a)?;
        s.for_yz("alpha1", "alpha1(yz) = 0", |y, z| (at(&p.alpha1, &s.mul(y, z)), s.k.zero()))?;
        s.for_yz("alpha2", "alpha2(yz) = 0", |y, z| (at(&p.alpha2, &s.mul(y, z)), s.k.zero()))?;
        s.for_yx("alpha1", "alpha1(xy) = alpha1(y) x", |y, x| {
            (at(&p.alpha1, &s.mul(x, y)), s.mul(&at(&p.alpha1, y), x))
        })?;
        s.for_yx("alpha2", "alpha2(yx) = x alpha2(y)", |y, x| {
            (at(&p.alpha2, &s.mul(y, x)), s.mul(x, &at(&p.alpha2, y)))
        })
    })())
}

/// Domains and codomains, then the full relation list in its listed order;
/// the violation carries the 1-based relation number.
pub fn validate_a3(r: &StructuralMatrixRing, p: &A3Params) -> Result<Check> {
    let k = r.coefficient_ring();
    let j = r.ideal();
    let whole = k.whole();
    let s = Scope::new(k, j);
    Ok((|| {
        for (i, d) in p.delta.iter().enumerate() {
            check_map(&format!("delta{}", i + 1), d, j, j)?;
        }
        for (i, b) in p.beta.iter().enumerate() {
            check_map(&format!("beta{}", i + 1), b, j, &whole)?;
        }
        check_map("theta", &p.theta, j, &whole)?;
        check_map("gamma", &p.gamma, j, &whole)?;
        for (idx, rel) in A3_RELATIONS.iter().enumerate() {
            rel.check(&s, p).map_err(|mut v| {
                v.index = Some(idx + 1);
                v
            })?;
        }
        Ok(())
    })())
}

/// `σ_n: J → Ann_K J` with `σ_n(J²) = 0`; `σ_i: K → Ann_K J` with `σ_i(J) = 0`.
pub fn validate_annihilator(r: &StructuralMatrixRing, p: &AnnihilatorParams) -> Result<Check> {
    let a = ann(r)?;
    let k = r.coefficient_ring();
    let s = Scope::new(k, r.ideal());
    Ok((|| {
        if p.sigmas.len() != r.size() - 1 {
            return Err(violation("sigma", &format!("expected {} maps sigma_i", r.size() - 1), vec![]));
        }
        check_map("sigma_n", &p.sigma_n, r.ideal(), &a)?;
        s.for_yz("sigma_n", "sigma_n(yz) = 0", |y, z| (at(&p.sigma_n, &s.mul(y, z)), k.zero()))?;
        for (i, m) in p.sigmas.iter().enumerate() {
            let name = format!("sigma_{}", i + 1);
            check_map(&name, m, &k.whole(), &a)?;
            s.for_y(&name, &format!("{name}(y) = 0"), |y| (at(m, y), k.zero()))?;
        }
        Ok(())
    })())
}

/// `π(xy) = π(x)y + xπ(y)` on generator pairs of `K`, and `π(J) ⊆ J`.
pub fn validate_ring(r: &StructuralMatrixRing, p: &RingDerivParams) -> Result<Check> {
    let k = r.coefficient_ring();
    let whole = k.whole();
    let s = Scope::new(k, r.ideal());
    Ok((|| {
        check_map("pi", &p.pi, &whole, &whole)?;
        for x1 in &s.k_basis {
            for x2 in &s.k_basis {
                let l = at(&p.pi, &k.mul(x1, x2));
                let rhs = k.add(&k.mul(&at(&p.pi, x1), x2), &k.mul(x1, &at(&p.pi, x2)));
                if l != rhs {
                    return Err(violation("pi", "pi(xy) = pi(x) y + x pi(y)", vec![("x", x1), ("y", x2)]));
                }
            }
        }
        for y in &s.j_basis {
            if !r.ideal().contains(&at(&p.pi, y)) {
                return Err(violation("pi", "pi(J) in J", vec![("y", y)]));
            }
        }
        Ok(())
    })())
}

/// `α(xy) = xα(y)`, `β(yx) = β(y)x`, `γ(y)z = yγ(z) = γ(yz) = 0`,
/// `α(y)z + yβ(z) = 0`.
pub fn validate_almost_annihilator(r: &StructuralMatrixRing, p: &AlmostAnnihilatorParams) -> Result<Check> {
    let k = r.coefficient_ring();
    let j = r.ideal();
    let s = Scope::new(k, j);
    Ok((|| {
        check_map("alpha", &p.alpha, j, j)?;
        check_map("beta", &p.beta, j, j)?;
        check_map("gamma", &p.gamma, j, &k.whole())?;
        s.for_yx("alpha", "alpha(xy) = x alpha(y)", |y, x| {
            (at(&p.alpha, &s.mul(x, y)), s.mul(x, &at(&p.alpha, y)))
        })?;
        s.for_yx("beta", "beta(yx) = beta(y) x", |y, x| {
            (at(&p.beta, &s.mul(y, x)), s.mul(&at(&p.beta, y), x))
        })?;
        s.for_yz("gamma", "gamma(y) z = 0", |y, z| (s.mul(&at(&p.gamma, y), z), k.zero()))?;
        s.for_yz("gamma", "y gamma(z) = 0", |y, z| (s.mul(y, &at(&p.gamma, z)), k.zero()))?;
        s.for_yz("gamma", "gamma(yz) = 0", |y, z| (at(&p.gamma, &s.mul(y, z)), k.zero()))?;
        s.for_yz("alpha, beta", "alpha(y) z + y beta(z) = 0", |y, z| {
            (s.sum(&[s.mul(&at(&p.alpha, y), z), s.mul(y, &at(&p.beta, z))]), k.zero())
        })
    })())
}
