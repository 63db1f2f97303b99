//! Sparse row reduction for the large, very sparse systems that come out of
//! derivation and cochain computations (thousands of rows, a few nonzeros
//! each). Results are returned in the same canonical forms as the dense
//! routines.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::matrix::{canonical_basis, RatMatrix};
use super::rational::{rat, Rational};

pub type SparseRow = BTreeMap<usize, Rational>;

/// An incrementally reduced row-echelon system. Every stored row is scaled
/// so that its pivot (smallest column) equals one.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        SparseEchelon {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots and inserts it if it is
    /// independent. Returns whether the rank grew.
    pub fn push(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(prow) => {
                    let f = row[&lead].clone();
                    for (c, v) in prow {
                        let e = row.entry(*c).or_insert_with(Rational::zero);
                        *e -= &f * v;
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = rat(1) / &row[&lead];
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn push_dense(&mut self, row: &[Rational]) -> bool {
        self.push(
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
        )
    }

    /// Canonical basis (reduced column echelon) of the solution space of the
    /// homogeneous system formed by the pushed rows.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        // back substitution to reduced form, largest pivot first
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let targets: Vec<usize> = r
                .keys()
                .copied()
                .filter(|c| *c != p && reduced.contains_key(c))
                .collect();
            for c in targets {
                let f = match r.get(&c) {
                    Some(f) => f.clone(),
                    None => continue,
                };
                for (cc, v) in &reduced[&c] {
                    let e = r.entry(*cc).or_insert_with(Rational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        r.remove(cc);
                    }
                }
            }
            reduced.insert(p, r);
        }
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !reduced.contains_key(c))
            .collect();
        // column f of the reduced rows gives the pivot values for free var f
        let mut by_free: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (&p, row) in &reduced {
            for (c, v) in row {
                if *c != p {
                    by_free.entry(*c).or_default().push((p, v.clone()));
                }
            }
        }
        let raw: Vec<Vec<Rational>> = free
            .iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[*f] = rat(1);
                if let Some(entries) = by_free.get(f) {
                    for (p, x) in entries {
                        v[*p] = -x.clone();
                    }
                }
                v
            })
            .collect();
        canonical_basis(self.cols, &raw)
    }
}

/// Share of nonzero entries above which rows are handed to the dense
/// fraction-free routines. Incremental rational elimination on dense rows
/// suffers badly from coefficient growth.
const DENSE_SHARE: usize = 20;

fn is_dense(cols: usize, rows: &[SparseRow]) -> bool {
    let nnz: usize = rows.iter().map(BTreeMap::len).sum();
    nnz * DENSE_SHARE > rows.len() * cols
}

fn to_dense(cols: usize, rows: &[SparseRow]) -> RatMatrix {
    if rows.is_empty() {
        return RatMatrix::zeros(0, cols);
    }
    RatMatrix::from_rows(
        rows.iter()
            .map(|r| {
                let mut v = vec![Rational::zero(); cols];
                for (c, x) in r {
                    v[*c] = x.clone();
                }
                v
            })
            .collect(),
    )
}

/// Rank of the matrix given by sparse rows.
pub fn sparse_rank(cols: usize, rows: Vec<SparseRow>) -> usize {
    if is_dense(cols, &rows) {
        return to_dense(cols, &rows).rank();
    }
    let mut ech = SparseEchelon::new(cols);
    for r in rows {
        ech.push(r);
    }
    ech.rank()
}

/// Canonical nullspace basis of the matrix given by sparse rows.
pub fn sparse_nullspace(cols: usize, rows: Vec<SparseRow>) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return RatMatrix::zeros(0, cols).nullspace();
    }
    if is_dense(cols, &rows) {
        return to_dense(cols, &rows).nullspace();
    }
    let mut ech = SparseEchelon::new(cols);
    for r in rows {
        ech.push(r);
    }
    ech.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_dense_routines() {
        let a = RatMatrix::from_i64_rows(&[
            &[0, 2, 1, 3, 0],
            &[0, 4, 2, 7, 1],
            &[1, 1, 1, 1, 1],
            &[0, 0, 0, 5, 0],
            &[1, 3, 2, 4, 1],
        ]);
        let mut ech = SparseEchelon::new(5);
        for r in a.to_rows() {
            ech.push_dense(&r);
        }
        assert_eq!(ech.rank(), a.rank());
        assert_eq!(ech.nullspace(), a.nullspace());
        let rows: Vec<SparseRow> = a
            .to_rows()
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        assert_eq!(sparse_nullspace(5, rows.clone()), a.nullspace());
        assert_eq!(sparse_rank(5, rows), a.rank());
    }
}
