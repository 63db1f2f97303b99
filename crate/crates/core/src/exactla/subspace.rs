use num_traits::Zero;

use super::matrix::RatMatrix;
use super::rational::Rational;

/// A subspace of `Q^n` held by its reduced echelon basis, so equal subspaces
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &RatMatrix::identity(ambient).to_rows())
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let vs: Vec<Vec<Rational>> = vectors
            .iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        if vs.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = RatMatrix::from_rows(vs).rref();
        debug_assert_eq!(r.cols(), ambient);
        Subspace {
            ambient,
            basis: r.to_rows(),
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the pivot coordinates; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` is in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    pub fn with(&self, extra: &[Vec<Rational>]) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(extra.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::rat;

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(
            3,
            &[vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(1), rat(1)]],
        );
        let b = Subspace::span(
            3,
            &[vec![rat(1), rat(2), rat(1)], vec![rat(1), rat(0), rat(-1)]],
        );
        assert_eq!(a, b);
        assert!(a.contains(&[rat(2), rat(3), rat(1)]));
        assert!(!a.contains(&[rat(0), rat(0), rat(1)]));
        assert_eq!(a.join(&Subspace::full(3)).dim(), 3);
    }
}
