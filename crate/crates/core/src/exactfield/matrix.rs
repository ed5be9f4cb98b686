//! Exact dense and sparse linear algebra over a fixed tower.

use std::collections::BTreeMap;

use super::{FieldElement, Tower};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    tower: Tower,
    nrows: usize,
    ncols: usize,
    data: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn zero(tower: &Tower, nrows: usize, ncols: usize) -> ExactMatrix {
        ExactMatrix {
            tower: tower.clone(),
            nrows,
            ncols,
            data: vec![tower.zero(); nrows * ncols],
        }
    }

    pub fn identity(tower: &Tower, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(tower, n, n);
        for i in 0..n {
            m.set(i, i, tower.one());
        }
        m
    }

    pub fn from_rows(tower: &Tower, rows: &[Vec<FieldElement>]) -> Result<ExactMatrix> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::InvalidArgument("ragged matrix rows".into()));
            }
            for e in r {
                data.push(e.lift_to(tower)?);
            }
        }
        Ok(ExactMatrix {
            tower: tower.clone(),
            nrows: rows.len(),
            ncols,
            data,
        })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.nrows && j < self.ncols);
        i * self.ncols + j
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        let k = self.idx(i, j);
        self.data[k] = v.lift_to(&self.tower).expect("entry from unrelated tower");
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<FieldElement>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zero(&self.tower, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m.set(j, i, self.at(i, j).clone());
            }
        }
        m
    }

    pub fn matmul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.ncols != rhs.nrows {
            return Err(Error::InvalidArgument("matmul dimension mismatch".into()));
        }
        if self.tower != rhs.tower {
            return Err(Error::TowerMismatch);
        }
        let mut out = ExactMatrix::zero(&self.tower, self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> ExactMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = &*v * c;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            let (ia, ib) = (self.idx(a, j), self.idx(b, j));
            self.data.swap(ia, ib);
        }
    }

    /// Reduced row echelon form together with the pivot column per pivot row.
    pub fn rref(&self) -> Result<(ExactMatrix, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.ncols {
            if r == m.nrows {
                break;
            }
            let Some(pr) = (r..m.nrows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.at(r, c).inv()?;
            for j in c..m.ncols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.nrows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone();
                for j in c..m.ncols {
                    let v = m.at(i, j) - &(&f * m.at(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Canonical (reduced echelon) basis of the right kernel.
    pub fn nullspace(&self) -> Result<Vec<Vec<FieldElement>>> {
        let (m, pivots) = self.rref()?;
        let pivot_set: Vec<usize> = pivots.clone();
        let mut basis = Vec::new();
        for f in 0..self.ncols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = vec![self.tower.zero(); self.ncols];
            v[f] = self.tower.one();
            for (k, &pc) in pivot_set.iter().enumerate() {
                v[pc] = -m.at(k, f);
            }
            basis.push(v);
        }
        echelonize_rows(&self.tower, basis)
    }

    /// The inverse of a square matrix, or `None` when it is singular.
    pub fn inverse(&self) -> Result<Option<ExactMatrix>> {
        if self.nrows != self.ncols {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        let n = self.nrows;
        let mut aug = ExactMatrix::zero(&self.tower, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, self.tower.one());
        }
        let (m, pivots) = aug.rref()?;
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return Ok(None);
        }
        let mut out = ExactMatrix::zero(&self.tower, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, m.at(i, n + j).clone());
            }
        }
        Ok(Some(out))
    }

    /// One solution of `self * x = b` with free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        if b.len() != self.nrows {
            return Err(Error::InvalidArgument("solve dimension mismatch".into()));
        }
        let mut aug = ExactMatrix::zero(&self.tower, self.nrows, self.ncols + 1);
        for (i, rhs) in b.iter().enumerate() {
            for j in 0..self.ncols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.ncols, rhs.lift_to(&self.tower)?);
        }
        let (m, pivots) = aug.rref()?;
        if pivots.contains(&self.ncols) {
            return Ok(None);
        }
        let mut x = vec![self.tower.zero(); self.ncols];
        for (k, &pc) in pivots.iter().enumerate() {
            x[pc] = m.at(k, self.ncols).clone();
        }
        Ok(Some(x))
    }
}

/// Reduced echelon basis of the row space of `rows`.
pub fn echelonize_rows(tower: &Tower, rows: Vec<Vec<FieldElement>>) -> Result<Vec<Vec<FieldElement>>> {
    if rows.is_empty() {
        return Ok(vec![]);
    }
    let m = ExactMatrix::from_rows(tower, &rows)?;
    let (r, pivots) = m.rref()?;
    Ok((0..pivots.len()).map(|i| r.row(i).to_vec()).collect())
}

/// Canonical basis of the intersection of two row spaces inside k^ncols.
pub fn intersect_rowspaces(
    tower: &Tower,
    a: &[Vec<FieldElement>],
    b: &[Vec<FieldElement>],
    ncols: usize,
) -> Result<Vec<Vec<FieldElement>>> {
    if a.is_empty() || b.is_empty() {
        return Ok(vec![]);
    }
    // coefficient vectors (alpha, beta) with alpha*A = beta*B form the left
    // kernel of the stacked matrix [A; -B]
    let mut stacked = Vec::with_capacity(a.len() + b.len());
    for r in a {
        if r.len() != ncols {
            return Err(Error::InvalidArgument("row width mismatch".into()));
        }
        stacked.push(r.clone());
    }
    for r in b {
        if r.len() != ncols {
            return Err(Error::InvalidArgument("row width mismatch".into()));
        }
        stacked.push(r.iter().map(|e| -e).collect());
    }
    let m = ExactMatrix::from_rows(tower, &stacked)?;
    let kernel = m.transpose().nullspace()?;
    let mut vectors = Vec::new();
    for c in kernel {
        let mut v = vec![tower.zero(); ncols];
        for (i, row) in a.iter().enumerate() {
            if c[i].is_zero() {
                continue;
            }
            for (j, e) in row.iter().enumerate() {
                v[j] = &v[j] + &(&c[i] * e);
            }
        }
        vectors.push(v);
    }
    echelonize_rows(tower, vectors)
}

/// Rank of a sparse 0-indexed row collection, entries given as (column, value).
pub fn sparse_rank<I>(rows: I) -> Result<usize>
where
    I: IntoIterator<Item = Vec<(usize, FieldElement)>>,
{
    let mut pivots: BTreeMap<usize, BTreeMap<usize, FieldElement>> = BTreeMap::new();
    for raw in rows {
        let mut row: BTreeMap<usize, FieldElement> = BTreeMap::new();
        for (c, v) in raw {
            if v.is_zero() {
                continue;
            }
            match row.remove(&c) {
                Some(old) => {
                    let s = &old + &v;
                    if !s.is_zero() {
                        row.insert(c, s);
                    }
                }
                None => {
                    row.insert(c, v);
                }
            }
        }
        while let Some((&lead, _)) = row.iter().next() {
            match pivots.get(&lead) {
                Some(p) => {
                    let f = row.remove(&lead).expect("leading entry present");
                    for (c, v) in p.iter().skip(1) {
                        let delta = &f * v;
                        match row.remove(c) {
                            Some(old) => {
                                let s = &old - &delta;
                                if !s.is_zero() {
                                    row.insert(*c, s);
                                }
                            }
                            None => {
                                row.insert(*c, -delta);
                            }
                        }
                    }
                }
                None => {
                    let inv = row.get(&lead).expect("leading entry present").inv()?;
                    let norm: BTreeMap<usize, FieldElement> =
                        row.iter().map(|(c, v)| (*c, v * &inv)).collect();
                    pivots.insert(lead, norm);
                    break;
                }
            }
        }
    }
    Ok(pivots.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Tower {
        Tower::rationals()
    }

    fn qm(rows: &[&[i64]]) -> ExactMatrix {
        let t = q();
        let rows: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|r| r.iter().map(|&n| t.int(n)).collect())
            .collect();
        ExactMatrix::from_rows(&t, &rows).unwrap()
    }

    #[test]
    fn identity_has_full_rank_and_no_kernel() {
        let t = q();
        let id = ExactMatrix::identity(&t, 4);
        assert_eq!(id.rank().unwrap(), 4);
        assert!(id.nullspace().unwrap().is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let t = q();
        let z = ExactMatrix::zero(&t, 2, 3);
        let ns = z.nullspace().unwrap();
        assert_eq!(ns.len(), 3);
        for (i, v) in ns.iter().enumerate() {
            for (j, e) in v.iter().enumerate() {
                assert_eq!(*e, if i == j { t.one() } else { t.zero() });
            }
        }
    }

    #[test]
    fn rank_one_kernel() {
        let m = qm(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank().unwrap(), 1);
        let ns = m.nullspace().unwrap();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!(!v.iter().all(|e| e.is_zero()));
        // check m * v = 0
        for i in 0..2 {
            let dot = (0..2).fold(q().zero(), |acc, j| &acc + &(m.at(i, j) * &v[j]));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let t = q();
        let m = qm(&[&[1, 1], &[0, 1]]);
        let x = m.solve(&[t.int(3), t.int(1)]).unwrap().unwrap();
        assert_eq!(x, vec![t.int(2), t.int(1)]);
        let m2 = qm(&[&[1, 1], &[1, 1]]);
        assert!(m2.solve(&[t.int(0), t.int(1)]).unwrap().is_none());
    }

    #[test]
    fn rowspace_intersection() {
        let t = q();
        let a = vec![
            vec![t.int(1), t.int(0), t.int(0)],
            vec![t.int(0), t.int(1), t.int(0)],
        ];
        let b = vec![
            vec![t.int(0), t.int(1), t.int(0)],
            vec![t.int(0), t.int(0), t.int(1)],
        ];
        let inter = intersect_rowspaces(&t, &a, &b, 3).unwrap();
        assert_eq!(inter, vec![vec![t.int(0), t.int(1), t.int(0)]]);
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let t = q();
        let rows = vec![
            vec![(0, t.int(1))],
            vec![(0, t.int(1)), (1, t.int(1))],
            vec![(1, t.int(1))],
            vec![(0, t.int(2)), (1, t.int(2))],
        ];
        assert_eq!(sparse_rank(rows).unwrap(), 2);
        let dense = qm(&[&[1, 0], &[1, 1], &[0, 1], &[2, 2]]);
        assert_eq!(dense.rank().unwrap(), 2);
    }

    #[test]
    fn matmul_with_identity() {
        let m = qm(&[&[1, 2, 3], &[4, 5, 6]]);
        let id = ExactMatrix::identity(&q(), 3);
        assert_eq!(m.matmul(&id).unwrap(), m);
        let mt = m.transpose();
        assert_eq!(mt.nrows(), 3);
        assert_eq!(mt.at(2, 1), &q().int(6));
    }

    #[test]
    fn rref_over_extension_field() {
        let qt = q();
        let t = qt.adjoin("s", &[qt.int(-2), qt.int(0)]).unwrap();
        let s = t.generator("s").unwrap();
        // rows (1, s), (s, 2) are proportional since s*(1, s) = (s, 2)
        let m = ExactMatrix::from_rows(
            &t,
            &[vec![t.one(), s.clone()], vec![s.clone(), t.int(2)]],
        )
        .unwrap();
        assert_eq!(m.rank().unwrap(), 1);
    }
}
