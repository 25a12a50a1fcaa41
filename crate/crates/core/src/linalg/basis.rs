//! Independent generating sets of subgroups and coordinates against them.

use super::group::{FiniteAbelianGroup, GroupElement, SubgroupBasis};
use super::howell::{howell_rows, reduce_prefix};
use super::modular::Zn;
use super::system::{kernel, Equation, LinearSystem};
use crate::Result;

/// A direct-sum basis `b_1, …, b_r` of a subgroup: every element is
/// `Σ c_j b_j` for unique `c_j ∈ [0, ord(b_j))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveBasis {
    ambient: FiniteAbelianGroup,
    elems: Vec<GroupElement>,
    orders: Vec<u64>,
    span: SubgroupBasis,
    // Howell form of the graph rows [embed(b_j) | (N/o_j) e_j]
    graph: Vec<Vec<u64>>,
}

impl AdditiveBasis {
    /// The coordinate basis of the ambient group, skipping trivial factors.
    pub fn standard(ambient: &FiniteAbelianGroup) -> Self {
        let (elems, orders) = (0..ambient.rank())
            .filter(|&i| ambient.moduli()[i] > 1)
            .map(|i| (ambient.unit_vector(i), ambient.moduli()[i]))
            .unzip();
        Self::assemble(ambient, elems, orders)
    }

    /// A direct-sum basis of `span`, obtained by diagonalizing the relation
    /// lattice of its canonical generators.
    pub fn of_subgroup(span: &SubgroupBasis) -> Result<Self> {
        let ambient = span.ambient();
        let gens = span.generators();
        if gens.is_empty() {
            return Ok(Self::assemble(ambient, Vec::new(), Vec::new()));
        }
        let orders: Vec<u64> = gens.iter().map(|g| ambient.element_order(g)).collect();
        let rel_domain = FiniteAbelianGroup::with_unbounded_order(orders.clone())?;
        let mut system = LinearSystem::new(rel_domain);
        for (l, &m) in ambient.moduli().iter().enumerate() {
            let terms = gens
                .iter()
                .enumerate()
                .map(|(j, g)| (j, g.coords()[l] as i64))
                .collect();
            system.push(Equation { terms, modulus: m })?;
        }
        let relations = kernel(&system)?;
        let s = gens.len();
        let mut rel: Vec<Vec<i128>> = relations
            .generators()
            .iter()
            .map(|r| r.coords().iter().map(|&c| c as i128).collect())
            .collect();
        for (j, &o) in orders.iter().enumerate() {
            let mut row = vec![0i128; s];
            row[j] = o as i128;
            rel.push(row);
        }
        let (diag, vinv) = diagonalize(rel, s, &orders);
        let mut elems = Vec::new();
        let mut elem_orders = Vec::new();
        for (i, &d) in diag.iter().enumerate() {
            if d == 1 {
                continue;
            }
            let mut x = ambient.zero();
            for (j, g) in gens.iter().enumerate() {
                x = ambient.add(&x, &ambient.scale(g, vinv[i][j] as i64));
            }
            debug_assert_eq!(ambient.element_order(&x), d as u64);
            elems.push(x);
            elem_orders.push(d as u64);
        }
        Ok(Self::assemble(ambient, elems, elem_orders))
    }

    fn assemble(ambient: &FiniteAbelianGroup, elems: Vec<GroupElement>, orders: Vec<u64>) -> Self {
        let n = ambient.exponent();
        let k = ambient.rank();
        let r = elems.len();
        let rows = elems
            .iter()
            .zip(&orders)
            .enumerate()
            .map(|(j, (b, &o))| {
                let mut row = ambient.embed(b);
                row.resize(k + r, 0);
                row[k + j] = (n / o) % n;
                row
            })
            .collect();
        let graph = howell_rows(rows, Zn::new(n), k + r);
        let span = SubgroupBasis::generated_by(ambient, &elems);
        AdditiveBasis {
            ambient: ambient.clone(),
            elems,
            orders,
            span,
            graph,
        }
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elems
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn span(&self) -> &SubgroupBasis {
        &self.span
    }

    /// Coordinates of `x` in this basis, or `None` if `x` is outside the span.
    pub fn coordinates(&self, x: &GroupElement) -> Option<Vec<u64>> {
        if !self.ambient.contains_element(x) {
            return None;
        }
        let n = self.ambient.exponent();
        let zn = Zn::new(n);
        let k = self.ambient.rank();
        let mut v = self.ambient.embed(x);
        v.resize(k + self.elems.len(), 0);
        if !reduce_prefix(&zn, &self.graph, &mut v, k) {
            return None;
        }
        Some(
            self.orders
                .iter()
                .enumerate()
                .map(|(j, &o)| zn.neg(v[k + j]) / (n / o))
                .collect(),
        )
    }

    /// `Σ c_j b_j`.
    pub fn combine(&self, coeffs: &[u64]) -> GroupElement {
        let mut x = self.ambient.zero();
        for (b, &c) in self.elems.iter().zip(coeffs) {
            if c != 0 {
                x = self.ambient.add(&x, &self.ambient.scale(b, c as i64));
            }
        }
        x
    }
}

/// Diagonalize an integer relation matrix by unimodular row and column
/// operations. Returns the diagonal (length `cols`) and the inverse of the
/// accumulated column transform; column `j` of the latter is only meaningful
/// modulo `orders[j]`.
fn diagonalize(mut m: Vec<Vec<i128>>, cols: usize, orders: &[u64]) -> (Vec<i128>, Vec<Vec<i128>>) {
    let mut vinv: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| (i == j) as i128).collect())
        .collect();
    let reduce_vinv = |vinv: &mut Vec<Vec<i128>>| {
        for row in vinv.iter_mut() {
            for (x, &o) in row.iter_mut().zip(orders) {
                *x = x.rem_euclid(o as i128);
            }
        }
    };
    let rows = m.len();
    let mut diag = vec![0i128; cols];
    for t in 0..cols {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            m.swap(t, pi);
            if pj != t {
                for row in m.iter_mut() {
                    row.swap(t, pj);
                }
                vinv.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    // column j -= q column t
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    // vinv: row t += q row j
                    let (src, dst) = if t < j {
                        let (a, b) = vinv.split_at_mut(j);
                        (&b[0], &mut a[t])
                    } else {
                        let (a, b) = vinv.split_at_mut(t);
                        (&a[j], &mut b[0])
                    };
                    for (d, &s) in dst.iter_mut().zip(src.iter()) {
                        *d += q * s;
                    }
                }
                clean &= m[t][j] == 0;
            }
            reduce_vinv(&mut vinv);
            if clean {
                break;
            }
        }
        diag[t] = m.get(t).map_or(0, |row| row[t].abs());
    }
    (diag, vinv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(moduli: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(moduli.to_vec()).unwrap()
    }

    #[test]
    fn ideal_of_z9() {
        let g = z(&[9]);
        let s = SubgroupBasis::from_generators(&g, &[g.element(&[3]).unwrap()]).unwrap();
        let b = AdditiveBasis::of_subgroup(&s).unwrap();
        assert_eq!(b.orders(), &[3]);
        assert_eq!(b.elements()[0].coords(), &[3]);
        assert_eq!(b.coordinates(&g.element(&[6]).unwrap()), Some(vec![2]));
        assert_eq!(b.coordinates(&g.element(&[1]).unwrap()), None);
    }

    #[test]
    fn dependent_howell_rows_become_independent() {
        // span of (2,1) in Z_4^2 is cyclic of order 4
        let g = z(&[4, 4]);
        let s = SubgroupBasis::from_generators(&g, &[g.element(&[2, 1]).unwrap()]).unwrap();
        let b = AdditiveBasis::of_subgroup(&s).unwrap();
        assert_eq!(b.orders(), &[4]);
        for x in s.elements() {
            let c = b.coordinates(&x).unwrap();
            assert_eq!(b.combine(&c), x);
        }
    }

    #[test]
    fn coordinates_round_trip_everywhere() {
        let g = z(&[9, 3, 6]);
        let gens = [g.element(&[3, 1, 2]).unwrap(), g.element(&[0, 2, 3]).unwrap()];
        let s = SubgroupBasis::from_generators(&g, &gens).unwrap();
        let b = AdditiveBasis::of_subgroup(&s).unwrap();
        let product: u64 = b.orders().iter().product();
        assert_eq!(num_bigint::BigUint::from(product), s.order());
        for x in g.elements() {
            match b.coordinates(&x) {
                Some(c) => {
                    assert!(s.contains(&x).unwrap());
                    assert_eq!(b.combine(&c), x);
                    assert!(c.iter().zip(b.orders()).all(|(&c, &o)| c < o));
                }
                None => assert!(!s.contains(&x).unwrap()),
            }
        }
    }
}
