use super::group::{FiniteAbelianGroup, SubgroupBasis};
use super::howell::{howell_rows, EchelonBuilder};
use super::modular::{lcm, Zn};
use crate::{Error, Result};

/// One homogeneous congruence `Σ a_i x_i ≡ 0 (mod modulus)`, stored sparsely
/// with unreduced integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub terms: Vec<(usize, i64)>,
    pub modulus: u64,
}

/// A homogeneous system over the unknown vector `x ∈ domain`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    domain: FiniteAbelianGroup,
    equations: Vec<Equation>,
}

impl LinearSystem {
    pub fn new(domain: FiniteAbelianGroup) -> Self {
        LinearSystem {
            domain,
            equations: Vec::new(),
        }
    }

    pub fn domain(&self) -> &FiniteAbelianGroup {
        &self.domain
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Add a dense equation row; its length must equal the domain rank.
    pub fn push_dense(&mut self, coeffs: &[i64], modulus: u64) -> Result<()> {
        if coeffs.len() != self.domain.rank() {
            return Err(Error::Arity {
                expected: self.domain.rank(),
                got: coeffs.len(),
            });
        }
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| (i, a))
            .collect();
        self.push(Equation { terms, modulus })
    }

    /// Add a sparse equation. Repeated indices are summed.
    ///
    /// The congruence must be well defined on the domain: for every term,
    /// `a_i · m_i ≡ 0 (mod modulus)`.
    pub fn push(&mut self, eq: Equation) -> Result<()> {
        if eq.modulus == 0 {
            return Err(Error::InvalidModulus { modulus: 0 });
        }
        let mut terms = eq.terms;
        terms.sort_by_key(|&(i, _)| i);
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
        for (i, a) in terms {
            if i >= self.domain.rank() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: self.domain.rank(),
                });
            }
            let a = (a as i128).rem_euclid(eq.modulus as i128) as i64;
            match merged.last_mut() {
                Some((j, b)) if *j == i => *b = ((*b as i128 + a as i128) % eq.modulus as i128) as i64,
                _ => merged.push((i, a)),
            }
        }
        merged.retain(|&(_, a)| a != 0);
        for &(i, a) in &merged {
            let m = self.domain.moduli()[i];
            if (a as u128 * m as u128) % eq.modulus as u128 != 0 {
                return Err(Error::IllDefinedEquation {
                    index: i,
                    coefficient: a,
                    modulus: eq.modulus,
                });
            }
        }
        if !merged.is_empty() {
            self.equations.push(Equation {
                terms: merged,
                modulus: eq.modulus,
            });
        }
        Ok(())
    }

    /// True if `x` satisfies every equation.
    pub fn is_solution(&self, x: &super::GroupElement) -> bool {
        self.equations.iter().all(|eq| {
            let s: i128 = eq
                .terms
                .iter()
                .map(|&(i, a)| a as i128 * x.coords()[i] as i128)
                .sum();
            s.rem_euclid(eq.modulus as i128) == 0
        })
    }
}

/// The solution subgroup `{x ∈ domain : every equation holds}`.
///
/// All congruences are lifted to `Z_N` with `N` the lcm of every modulus in
/// play; the row span is compressed by incremental echelon insertion, and the
/// kernel is read from the Howell form of `[Mᵀ | I]`: its rows with a zero
/// left block span exactly the solutions in `Z_N^k`, which project onto the
/// domain.
pub fn kernel(system: &LinearSystem) -> Result<SubgroupBasis> {
    let domain = &system.domain;
    let k = domain.rank();
    let mut n = domain.exponent();
    for eq in &system.equations {
        n = lcm(n, eq.modulus)
            .filter(|&v| v < (1u64 << 63))
            .ok_or(Error::OrderOverflow)?;
    }
    let zn = Zn::new(n);
    let mut echelon = EchelonBuilder::new(zn, k);
    for eq in &system.equations {
        let scale = (n / eq.modulus) as i128;
        let mut row = vec![0u64; k];
        for &(i, a) in &eq.terms {
            row[i] = zn.from_i128(a as i128 * scale);
        }
        echelon.insert(row);
    }
    let constraints = echelon.into_rows();
    let r = constraints.len();
    let mut aug: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut row = vec![0u64; r + k];
            for (j, c) in constraints.iter().enumerate() {
                row[j] = c[i];
            }
            row[r + i] = 1 % n;
            row
        })
        .collect();
    aug = howell_rows(aug, zn, r + k);
    let solutions: Vec<_> = aug
        .into_iter()
        .filter(|row| row[..r].iter().all(|&x| x == 0))
        .map(|row| domain.element_from_u64(row[r..].to_vec()))
        .collect();
    Ok(SubgroupBasis::generated_by(domain, &solutions))
}
