//! Exact sparse matrices over Q(c, h): nullspace, determinant, linear solve,
//! and an incremental row-space (`Subspace`) used for span and membership
//! computations throughout the workbench.
//!
//! Elimination strategy: purely rational matrices are cleared to integers and
//! reduced with fraction-free Bareiss; symbolic matrices go through classical
//! fraction-field elimination with canonical gcd reduction at every step.
//! Dense elimination is used below 64 columns, sparse row maps above.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ratfunc::RatFunc;
use super::Rat;
use crate::error::{Error, Result};

const DENSE_LIMIT: usize = 64;

/// Sparse exact matrix. Absent entries are zero; stored entries are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), RatFunc>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one()).unwrap();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::new(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v).unwrap();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: RatFunc) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::IndexOutOfBounds {
                row: r,
                col: c,
                rows: self.rows,
                cols: self.cols,
            });
        }
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> RatFunc {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &RatFunc)> {
        self.entries.iter()
    }

    pub fn is_all_rational(&self) -> bool {
        self.entries.values().all(|v| v.is_constant())
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ExactMatrix::new(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for j in 0..other.cols {
                if let Some(b) = other.entries.get(&(k, j)) {
                    let cur = out.get(i, j);
                    out.set(i, j, &cur + &(a * b)).unwrap();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![RatFunc::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] = &out[i] + &(a * &v[j]);
            }
        }
        out
    }

    fn to_dense(&self) -> Vec<Vec<RatFunc>> {
        let mut d = vec![vec![RatFunc::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    /// Reduced row echelon form; returns (rref rows, pivot columns).
    pub fn rref(&self) -> (Vec<Vec<RatFunc>>, Vec<usize>) {
        if self.cols <= DENSE_LIMIT {
            rref_dense(self.to_dense(), self.cols)
        } else {
            rref_sparse(self)
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace: all v with self * v = 0.
    pub fn nullspace(&self) -> Vec<Vec<RatFunc>> {
        let (rref, pivots) = self.rref();
        let pivot_of_col: BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            let mut v = vec![RatFunc::zero(); self.cols];
            v[free] = RatFunc::one();
            for (&pc, &pr) in &pivot_of_col {
                let coeff = &rref[pr][free];
                if !coeff.is_zero() {
                    v[pc] = -coeff;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Exact determinant. Bareiss over cleared integers when the matrix is
    /// rational, fraction-field elimination otherwise.
    pub fn determinant(&self) -> Result<RatFunc> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RatFunc::one());
        }
        if self.is_all_rational() {
            return Ok(RatFunc::from_rat(self.determinant_bareiss()));
        }
        if self
            .entries
            .values()
            .all(|v| v.denominator().is_one())
        {
            return self.determinant_bareiss_poly();
        }
        // Classical elimination tracking the product of pivots.
        let mut m = self.to_dense();
        let mut det = RatFunc::one();
        let mut sign = false;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else {
                return Ok(RatFunc::zero());
            };
            if p != col {
                m.swap(p, col);
                sign = !sign;
            }
            let pv = m[col][col].clone();
            det = &det * &pv;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].checked_div(&pv)?;
                for c in col..n {
                    let sub = &factor * &m[col][c];
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
        Ok(if sign { -&det } else { det })
    }

    fn determinant_bareiss(&self) -> Rat {
        let n = self.rows;
        // Clear each row to integers, tracking the denominators.
        let mut scale = Rat::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                if let Some(v) = self.entries.get(&(i, j)) {
                    let r = v.as_rat().expect("rational entry");
                    lcm = lcm.lcm(r.denom());
                }
            }
            scale *= Rat::new(BigInt::one(), lcm.clone());
            let row: Vec<BigInt> = (0..n)
                .map(|j| {
                    self.entries
                        .get(&(i, j))
                        .map(|v| {
                            let r = v.as_rat().unwrap();
                            r.numer() * (&lcm / r.denom())
                        })
                        .unwrap_or_else(BigInt::zero)
                })
                .collect();
            m.push(row);
        }
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Rat::zero();
                };
                m.swap(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = Rat::from_integer(m[n - 1][n - 1].clone()) * scale;
        if sign {
            -det
        } else {
            det
        }
    }

    /// One solution of self * x = b with free variables set to zero, or None
    /// if inconsistent.
    pub fn solve(&self, b: &[RatFunc]) -> Option<Vec<RatFunc>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.to_dense();
        for (i, row) in aug.iter_mut().enumerate() {
            row.push(b[i].clone());
        }
        let (rref, pivots) = rref_dense(aug, self.cols + 1);
        // Inconsistent iff a pivot lands in the augmented column.
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![RatFunc::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rref[r][self.cols].clone();
        }
        Some(x)
    }
}

fn rref_dense(mut m: Vec<Vec<RatFunc>>, width: usize) -> (Vec<Vec<RatFunc>>, Vec<usize>) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut pr = 0usize;
    for col in 0..width {
        if pr >= rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pr, found);
        let inv = m[pr][col].inv().expect("nonzero pivot");
        for j in col..width {
            m[pr][j] = &m[pr][j] * &inv;
        }
        for r in 0..rows {
            if r == pr || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in col..width {
                let sub = &f * &m[pr][j];
                m[r][j] = &m[r][j] - &sub;
            }
        }
        pivots.push(col);
        pr += 1;
    }
    m.truncate(pr);
    (m, pivots)
}

fn rref_sparse(m: &ExactMatrix) -> (Vec<Vec<RatFunc>>, Vec<usize>) {
    // Row maps col -> value; echelon kept reduced as rows are absorbed.
    let mut sparse_rows: Vec<BTreeMap<usize, RatFunc>> = Vec::new();
    {
        let mut cur: BTreeMap<usize, BTreeMap<usize, RatFunc>> = BTreeMap::new();
        for (&(i, j), v) in &m.entries {
            cur.entry(i).or_default().insert(j, v.clone());
        }
        for (_, row) in cur {
            sparse_rows.push(row);
        }
    }
    let mut echelon: BTreeMap<usize, BTreeMap<usize, RatFunc>> = BTreeMap::new();
    for mut row in sparse_rows {
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                break;
            };
            if let Some(er) = echelon.get(&lead) {
                let f = row[&lead].clone();
                for (j, v) in er {
                    let sub = &f * v;
                    let cur = row.remove(j).unwrap_or_else(RatFunc::zero);
                    let nv = &cur - &sub;
                    if !nv.is_zero() {
                        row.insert(*j, nv);
                    }
                }
            } else {
                let inv = row[&lead].inv().expect("nonzero lead");
                let norm: BTreeMap<usize, RatFunc> =
                    row.iter().map(|(j, v)| (*j, v * &inv)).collect();
                echelon.insert(lead, norm);
                break;
            }
        }
    }
    // Back-substitute to full reduction.
    let leads: Vec<usize> = echelon.keys().copied().collect();
    for &l in leads.iter().rev() {
        let row = echelon[&l].clone();
        for &l2 in leads.iter() {
            if l2 >= l {
                break;
            }
            let mut upper = echelon[&l2].clone();
            if let Some(f) = upper.get(&l).cloned() {
                for (j, v) in &row {
                    let sub = &f * v;
                    let cur = upper.remove(j).unwrap_or_else(RatFunc::zero);
                    let nv = &cur - &sub;
                    if !nv.is_zero() {
                        upper.insert(*j, nv);
                    }
                }
                echelon.insert(l2, upper);
            }
        }
    }
    let pivots: Vec<usize> = echelon.keys().copied().collect();
    let rows = pivots
        .iter()
        .map(|l| {
            let mut dense = vec![RatFunc::zero(); m.cols];
            for (j, v) in &echelon[l] {
                dense[*j] = v.clone();
            }
            dense
        })
        .collect();
    (rows, pivots)
}

/// Incrementally built row space in a fixed-dimension coordinate space.
/// Supports membership tests, residual reduction, and dimension queries.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim_ambient: usize,
    // Reduced rows keyed by pivot column; each row is normalized to pivot 1.
    rows: BTreeMap<usize, Vec<RatFunc>>,
}

impl Subspace {
    pub fn new(dim_ambient: usize) -> Self {
        Subspace {
            dim_ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim_ambient
    }

    /// Reduce `v` against the stored rows; the result has zeros in all pivot
    /// columns.
    pub fn reduce(&self, mut v: Vec<RatFunc>) -> Vec<RatFunc> {
        assert_eq!(v.len(), self.dim_ambient);
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for j in p..self.dim_ambient {
                if !row[j].is_zero() {
                    let sub = &f * &row[j];
                    v[j] = &v[j] - &sub;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[RatFunc]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Insert a vector; returns true if it enlarged the space.
    pub fn insert(&mut self, v: Vec<RatFunc>) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        let mut norm: Vec<RatFunc> = r.iter().map(|x| x * &inv).collect();
        // Keep earlier rows reduced against the new pivot.
        let keys: Vec<usize> = self.rows.keys().copied().collect();
        for k in keys {
            let row = self.rows.get_mut(&k).unwrap();
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in 0..self.dim_ambient {
                    if !norm[j].is_zero() {
                        let sub = &f * &norm[j];
                        row[j] = &row[j] - &sub;
                    }
                }
            }
        }
        // Normalize trailing entries lazily; pivot stays 1.
        if norm[p].is_one() {
            self.rows.insert(p, norm);
        } else {
            let inv2 = norm[p].inv().unwrap();
            norm = norm.iter().map(|x| x * &inv2).collect();
            self.rows.insert(p, norm);
        }
        true
    }

    pub fn basis(&self) -> Vec<Vec<RatFunc>> {
        self.rows.values().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: i64) -> RatFunc {
        RatFunc::int(n)
    }

    #[test]
    fn nullspace_identity_empty() {
        let m = ExactMatrix::identity(2);
        assert!(m.nullspace().is_empty());
    }

    #[test]
    fn nullspace_single_row() {
        let m = ExactMatrix::from_rows(vec![vec![rf(1), rf(1)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        // Basis vector (−1, 1) up to the free-variable convention; check m·v = 0.
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn nullspace_symbolic_nonzero_entry_full_rank() {
        // [[7 + c/4]] over Q(c): rank 1, empty nullspace.
        let entry = &RatFunc::int(7) + &RatFunc::c().checked_div(&rf(4)).unwrap();
        let m = ExactMatrix::from_rows(vec![vec![entry]]);
        assert!(m.nullspace().is_empty());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn determinant_2x2_symbolic() {
        // [[15, −9], [−6, 34−c]] -> 456 − 15c
        let c = RatFunc::c();
        let m = ExactMatrix::from_rows(vec![
            vec![rf(15), rf(-9)],
            vec![rf(-6), &rf(34) - &c],
        ]);
        let det = m.determinant().unwrap();
        let expected = &rf(456) - &(&rf(15) * &c);
        assert_eq!(det, expected);
        assert_eq!(det.to_string_with(&["c", "h"]), "-15*c + 456");
    }

    #[test]
    fn determinant_identity_and_nonsquare() {
        assert!(ExactMatrix::identity(4).determinant().unwrap().is_one());
        assert!(ExactMatrix::new(2, 3).determinant().is_err());
    }

    #[test]
    fn determinant_grade_one_gram() {
        // [[2h]] -> 2h
        let m = ExactMatrix::from_rows(vec![vec![&rf(2) * &RatFunc::h()]]);
        assert_eq!(
            m.determinant().unwrap().to_string_with(&["c", "h"]),
            "2*h"
        );
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = ExactMatrix::from_rows(vec![vec![rf(1), rf(2)], vec![rf(2), rf(4)]]);
        let sol = m.solve(&[rf(3), rf(6)]).unwrap();
        let out = m.mul_vec(&sol);
        assert_eq!(out, vec![rf(3), rf(6)]);
        assert!(m.solve(&[rf(3), rf(7)]).is_none());
    }

    #[test]
    fn subspace_membership() {
        let mut s = Subspace::new(3);
        assert!(s.insert(vec![rf(1), rf(1), rf(0)]));
        assert!(s.insert(vec![rf(0), rf(1), rf(1)]));
        assert!(!s.insert(vec![rf(1), rf(2), rf(1)]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[rf(2), rf(3), rf(1)]));
        assert!(!s.contains(&[rf(0), rf(0), rf(1)]));
    }
}
