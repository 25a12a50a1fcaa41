//! Howell normal form of row spans over `Z/NZ`.
//!
//! A Howell form is an echelon basis with pivots dividing `N`, entries above
//! each pivot reduced into `[0, pivot)`, and the Howell property: for every
//! column `c`, the span elements vanishing on columns `0..=c` are generated by
//! the rows whose pivot lies right of `c`. The last condition is what makes
//! the form canonical and makes greedy reduction a complete membership test.

use super::modular::{ext_gcd, Zn};

/// Canonical Howell form of the row span of `rows` over `Z/modulus Z`.
///
/// Entries may be arbitrary integers; they are reduced first. Rows shorter
/// than the longest row are zero-padded.
pub fn howell_form(rows: &[Vec<i64>], modulus: u64) -> Vec<Vec<u64>> {
    let zn = Zn::new(modulus.max(1));
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let reduced = rows
        .iter()
        .map(|r| {
            let mut v: Vec<u64> = r.iter().map(|&x| zn.from_i64(x)).collect();
            v.resize(width, 0);
            v
        })
        .collect();
    howell_rows(reduced, zn, width)
}

/// Combine rows `r` and `i` so that row `r` holds gcd of their column-`c`
/// entries and row `i` has zero there. Unimodular.
fn gcd_combine(zn: &Zn, rows: &mut [Vec<u64>], r: usize, i: usize, c: usize) {
    let a = rows[r][c] as i128;
    let b = rows[i][c] as i128;
    let (g, s, t) = ext_gcd(a, b);
    let (u, v) = (b / g, a / g);
    let (s, t) = (zn.from_i128(s), zn.from_i128(t));
    let (mu, v) = (zn.from_i128(-u), zn.from_i128(v));
    let width = rows[r].len();
    for col in c..width {
        let x = rows[r][col];
        let y = rows[i][col];
        if x == 0 && y == 0 {
            continue;
        }
        rows[r][col] = zn.add(zn.mul(s, x), zn.mul(t, y));
        rows[i][col] = zn.add(zn.mul(mu, x), zn.mul(v, y));
    }
}

fn normalize_pivot(zn: &Zn, row: &mut [u64], c: usize) {
    let u = zn.normalizing_unit(row[c]);
    if u != 1 {
        zn.scale(row, u, c);
    }
}

pub(crate) fn howell_rows(mut rows: Vec<Vec<u64>>, zn: Zn, width: usize) -> Vec<Vec<u64>> {
    let n = zn.modulus();
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let mut r = 0;
    for c in 0..width {
        if r >= rows.len() {
            break;
        }
        if rows[r][c] != 0 {
            normalize_pivot(&zn, &mut rows[r], c);
        }
        for i in r + 1..rows.len() {
            let b = rows[i][c];
            if b == 0 {
                continue;
            }
            let a = rows[r][c];
            if a == 0 {
                rows.swap(r, i);
                normalize_pivot(&zn, &mut rows[r], c);
                continue;
            }
            if b % a == 0 {
                let (head, tail) = rows.split_at_mut(i);
                zn.axpy_neg(&mut tail[0], &head[r], b / a, c);
            } else {
                gcd_combine(&zn, &mut rows, r, i, c);
                normalize_pivot(&zn, &mut rows[r], c);
            }
        }
        let d = rows[r][c];
        if d == 0 {
            continue;
        }
        for i in 0..r {
            let q = rows[i][c] / d;
            if q != 0 {
                let (head, tail) = rows.split_at_mut(r);
                zn.axpy_neg(&mut head[i], &tail[0], q, c);
            }
        }
        let ann = n / d;
        let mut extra = rows[r].clone();
        zn.scale(&mut extra, ann % n, c);
        if extra.iter().any(|&x| x != 0) {
            rows.push(extra);
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Pivot column of a nonzero row.
pub(crate) fn pivot_col(row: &[u64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Reduce `v` against a Howell basis on columns `0..upto`.
///
/// Returns `false` as soon as some column in range cannot be cleared, i.e.
/// `v` restricted to those columns is not in the span.
pub(crate) fn reduce_prefix(zn: &Zn, howell: &[Vec<u64>], v: &mut [u64], upto: usize) -> bool {
    for row in howell {
        let c = match pivot_col(row) {
            Some(c) if c < upto => c,
            _ => break,
        };
        if v[..c].iter().any(|&x| x != 0) {
            return false;
        }
        let d = row[c];
        if v[c] % d != 0 {
            return false;
        }
        zn.axpy_neg(v, row, v[c] / d, c);
    }
    v[..upto].iter().all(|&x| x == 0)
}

/// Incremental row-echelon accumulator over `Z/NZ`.
///
/// Keeps at most one row per pivot column; inserting preserves the row span.
/// Not canonical; used to compress long equation lists before the kernel step.
pub(crate) struct EchelonBuilder {
    zn: Zn,
    width: usize,
    pivots: Vec<Option<Vec<u64>>>,
}

impl EchelonBuilder {
    pub fn new(zn: Zn, width: usize) -> Self {
        EchelonBuilder {
            zn,
            width,
            pivots: vec![None; width],
        }
    }

    pub fn insert(&mut self, mut v: Vec<u64>) {
        debug_assert_eq!(v.len(), self.width);
        let zn = self.zn;
        let mut c = 0;
        loop {
            while c < self.width && v[c] == 0 {
                c += 1;
            }
            if c == self.width {
                return;
            }
            match &mut self.pivots[c] {
                None => {
                    normalize_pivot(&zn, &mut v, c);
                    self.pivots[c] = Some(v);
                    return;
                }
                Some(p) => {
                    let (a, b) = (p[c], v[c]);
                    if b % a == 0 {
                        zn.axpy_neg(&mut v, p, b / a, c);
                    } else {
                        let mut pair = [std::mem::take(p), v];
                        gcd_combine(&zn, &mut pair, 0, 1, c);
                        let [mut np, nv] = pair;
                        normalize_pivot(&zn, &mut np, c);
                        *p = np;
                        v = nv;
                    }
                }
            }
        }
    }

    pub fn into_rows(self) -> Vec<Vec<u64>> {
        self.pivots.into_iter().flatten().collect()
    }
}
