use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{common_denominator, rat, Rational};
use crate::error::{Error, Result};

/// Dense matrix of exact rationals, row-major.
///
/// When a matrix represents a linear map on an algebra, column `j` holds the
/// image of basis vector `j`; `E_{i,j}` therefore sends `e_j` to `e_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, rat(1));
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, q) in entries.iter().enumerate() {
            m.set(i, i, q.clone());
        }
        m
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, q) in col.iter().enumerate() {
                m.set(i, j, q.clone());
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// Zero strictly above the diagonal: `e_j` maps into `span{e_j, e_{j+1}, ...}`.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c).is_zero()))
    }

    /// Zero strictly below the diagonal: `e_j` maps into `span{e_1, ..., e_j}`.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self.get(r, c).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Keeps only the diagonal.
    pub fn diagonal_part(&self) -> RatMatrix {
        RatMatrix::diagonal(&self.diagonal_entries())
    }

    pub fn trace(&self) -> Rational {
        self.diagonal_entries().into_iter().sum()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, k: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| q * k).collect(),
        }
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &RatMatrix) -> RatMatrix {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: u32) -> RatMatrix {
        assert!(self.is_square());
        let mut acc = RatMatrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Submatrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut m = RatMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[RatMatrix]) -> RatMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        RatMatrix { rows, cols, data }
    }

    /// Row echelon form by fraction-free (Bareiss) elimination on the
    /// integer-scaled rows. Returns the echelon rows (as integers) and the
    /// pivot columns.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let den = common_denominator(row);
                row.iter()
                    .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..self.rows {
                if m[i][c].is_zero() {
                    // still needs the division by `prev` to stay consistent
                    for j in c + 1..self.cols {
                        if !m[i][j].is_zero() {
                            m[i][j] = &m[r][c] * &m[i][j] / &prev;
                        }
                    }
                    continue;
                }
                for j in c + 1..self.cols {
                    let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = v / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Reduced row echelon form (zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let (ech, pivots) = self.bareiss_echelon();
        let mut rows: Vec<Vec<Rational>> = ech
            .into_iter()
            .zip(&pivots)
            .map(|(row, &p)| {
                let lead = Rational::from_integer(row[p].clone());
                row.into_iter()
                    .map(|x| Rational::from_integer(x) / &lead)
                    .collect()
            })
            .collect();
        for i in (0..rows.len()).rev() {
            let p = pivots[i];
            let (above, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let f = row[p].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(pivot_row).skip(p) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let m = if rows.is_empty() {
            RatMatrix::zeros(0, self.cols)
        } else {
            RatMatrix::from_rows(rows)
        };
        (m, pivots)
    }

    /// Basis of `{v : self * v = 0}` in reduced column echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vec<Rational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = rat(1);
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect();
        canonical_basis(self.cols, &raw)
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, rat(1));
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(red.select(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    /// Some solution of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(x I - M)` (Faddeev–LeVerrier).
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = rat(1);
        let mut mk = RatMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &mk;
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            mk = next;
            coeffs[n - k] = -(self * &mk).trace() / rat(k as i64);
        }
        Poly::new(coeffs)
    }

    /// Whether `M^n = 0`.
    pub fn is_nilpotent(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut acc = self.clone();
        for _ in 1..self.rows.max(1) {
            if acc.is_zero() {
                return true;
            }
            acc = &acc * self;
        }
        acc.is_zero()
    }

    /// Jordan–Chevalley decomposition `M = S + N` with `S` diagonalizable over
    /// the rationals, `N` nilpotent and `SN = NS`.
    pub fn jordan_chevalley(&self) -> Result<(RatMatrix, RatMatrix)> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let p = self.charpoly().squarefree_part();
        if p.rational_roots().len() != p.degree().unwrap_or(0) {
            return Err(Error::IrrationalSpectrum);
        }
        let dp = p.derivative();
        let mut s = self.clone();
        // Newton iteration on p(S) = 0 converges quadratically in the nilpotent part.
        for _ in 0..=n {
            let ps = p.eval_matrix(&s);
            if ps.is_zero() {
                let nil = self - &s;
                return Ok((s, nil));
            }
            let inv = dp.eval_matrix(&s).inverse()?;
            s = &s - &(&ps * &inv);
        }
        unreachable!("Newton iteration for the semisimple part did not terminate")
    }

    /// `exp(D) = sum D^k / k!` for nilpotent `D`.
    pub fn exp_nilpotent(&self) -> Result<RatMatrix> {
        if !self.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let n = self.rows;
        let mut acc = RatMatrix::identity(n);
        let mut term = RatMatrix::identity(n);
        for k in 1..=n {
            term = (&term * self).scale(&(rat(1) / rat(k as i64)));
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

/// Reduced column echelon basis of the span of `vectors` (each of length `n`):
/// leading entries are 1, appear at strictly increasing positions and are the
/// only nonzero entry in their position across the basis.
pub fn canonical_basis(n: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RatMatrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), n);
    let (r, _) = m.rref();
    r.to_rows()
}

impl<'a> Mul<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| -q).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::ratio;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64_rows(rows)
    }

    /// Nilpotent derivation of n9: d(e2)=2e3-e4, d(e3)=2e4-e5, d(e4)=2e5.
    fn n9_d() -> RatMatrix {
        let mut d = RatMatrix::zeros(9, 9);
        d.set(2, 1, rat(2));
        d.set(3, 1, rat(-1));
        d.set(3, 2, rat(2));
        d.set(4, 2, rat(-1));
        d.set(4, 3, rat(2));
        d
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(m(&[&[0]]).nullspace(), vec![vec![rat(1)]]);
        assert!(RatMatrix::identity(3).nullspace().is_empty());
        let ns = m(&[&[1, 1, -1]]).nullspace();
        assert_eq!(
            ns,
            vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]]
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(RatMatrix::identity(5).rank(), 5);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        let q = RatMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 4), ratio(1, 6)],
        ]);
        assert_eq!(q.rank(), 1);
    }

    #[test]
    fn bareiss_with_skipped_columns() {
        let a = m(&[&[0, 2, 1, 3], &[0, 4, 2, 7], &[1, 1, 1, 1], &[0, 0, 0, 5]]);
        assert_eq!(a.rank(), 3);
        let (r, piv) = a.rref();
        assert_eq!(piv, vec![0, 1, 3]);
        for v in a.nullspace() {
            assert!(a.apply(&v).iter().all(Zero::is_zero));
        }
        assert_eq!(r.rows(), 3);
    }

    #[test]
    fn nilpotency_examples() {
        assert!(m(&[&[0, 1, 5], &[0, 0, 2], &[0, 0, 0]]).is_nilpotent());
        assert!(!RatMatrix::identity(3).is_nilpotent());
        assert!(n9_d().is_nilpotent());
    }

    #[test]
    fn jordan_chevalley_examples() {
        let d = RatMatrix::diagonal(&[rat(1), rat(2), rat(2)]);
        assert_eq!(
            d.jordan_chevalley().unwrap(),
            (d.clone(), RatMatrix::zeros(3, 3))
        );
        let j = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(
            j.jordan_chevalley().unwrap(),
            (RatMatrix::zeros(3, 3), j.clone())
        );
        let t_alpha = RatMatrix::diagonal(&[0, 1, 1, 1, 1, 0, 0, 2, 2].map(rat));
        let (s, n) = (&t_alpha + &n9_d()).jordan_chevalley().unwrap();
        assert_eq!(s, t_alpha);
        assert_eq!(n, n9_d());
    }

    #[test]
    fn jordan_chevalley_rejects_irrational_spectrum() {
        let rot = m(&[&[0, -1], &[1, 0]]);
        assert_eq!(rot.jordan_chevalley(), Err(Error::IrrationalSpectrum));
        let sqrt2 = m(&[&[0, 2], &[1, 0]]);
        assert_eq!(sqrt2.jordan_chevalley(), Err(Error::IrrationalSpectrum));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(
            RatMatrix::zeros(3, 3).exp_nilpotent().unwrap(),
            RatMatrix::identity(3)
        );
        let e12 = m(&[&[0, 1], &[0, 0]]);
        assert_eq!(e12.exp_nilpotent().unwrap(), m(&[&[1, 1], &[0, 1]]));
        let d = n9_d();
        let prod = &d.exp_nilpotent().unwrap() * &(-&d).exp_nilpotent().unwrap();
        assert_eq!(prod, RatMatrix::identity(9));
        assert_eq!(
            RatMatrix::identity(2).exp_nilpotent(),
            Err(Error::NotNilpotent)
        );
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, RatMatrix::identity(2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
        let x = a.solve(&[rat(1), rat(0)]).unwrap();
        assert_eq!(a.apply(&x), vec![rat(1), rat(0)]);
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of x^3 - 2x + 5
        let c = m(&[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(c.charpoly().coeffs(), &[rat(5), rat(-2), rat(0), rat(1)]);
    }
}
