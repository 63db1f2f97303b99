//! Diagonal weight systems, maximal diagonal tori and root decompositions.
//!
//! A diagonal map `diag(w)` is a derivation iff `w_i + w_j = w_k` whenever
//! `[e_i, e_j]` has a nonzero `e_k` component. Collecting these equations
//! gives an integer system whose solutions are exactly the diagonal
//! derivations; its solution space is the torus attached to the basis.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::Algebra;
use crate::deriv::is_derivation;
use crate::error::{Error, Result};
use crate::exactla::{primitive_integer_vector, RatMatrix, Rational, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SSystem {
    /// `alpha1..` for even basis elements, then `beta1..` for odd ones.
    pub variables: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

impl SSystem {
    pub fn matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows.len(), self.variables.len());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, Rational::from_integer((*x).into()));
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    /// Rows as readable equations, e.g. `alpha1+alpha2-alpha3=0`.
    pub fn equations(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|row| {
                let mut s = String::new();
                for (c, x) in row.iter().enumerate() {
                    if *x == 0 {
                        continue;
                    }
                    let sign = if *x < 0 {
                        "-"
                    } else if s.is_empty() {
                        ""
                    } else {
                        "+"
                    };
                    let mag = if x.abs() == 1 {
                        String::new()
                    } else {
                        x.abs().to_string()
                    };
                    s.push_str(&format!("{sign}{mag}{}", self.variables[c]));
                }
                s.push_str("=0");
                s
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Torus {
    /// Diagonal derivations, one per fundamental solution.
    pub basis: Vec<RatMatrix>,
    /// The same solutions as primitive integer vectors.
    pub vectors: Vec<Vec<BigInt>>,
}

impl Torus {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Builds a torus from given diagonal matrices (no normalization).
    pub fn from_diagonals(basis: Vec<RatMatrix>) -> Self {
        let vectors = basis
            .iter()
            .map(|t| primitive_integer_vector(&t.diagonal_entries()))
            .collect();
        Torus { basis, vectors }
    }

    pub fn span(&self, n: usize) -> Subspace {
        let vs: Vec<Vec<Rational>> = self.basis.iter().map(RatMatrix::diagonal_entries).collect();
        Subspace::span(n, &vs)
    }
}

pub fn build_s_system(a: &Algebra) -> SSystem {
    let n = a.dim();
    let mut variables = Vec::with_capacity(n);
    for i in 0..a.n_even() {
        variables.push(format!("alpha{}", i + 1));
    }
    for i in 0..a.n_odd() {
        variables.push(format!("beta{}", i + 1));
    }
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for (i, j, v) in a.entries() {
        for (k, _) in v {
            let mut row = vec![0i64; n];
            row[i] += 1;
            row[j] += 1;
            row[*k] -= 1;
            if row.iter().any(|x| *x != 0) && seen.insert(row.clone()) {
                rows.push(row);
            }
        }
    }
    SSystem { variables, rows }
}

/// Torus spanned by the fundamental solutions of the weight system, each
/// scaled to a primitive integer vector with positive leading entry.
pub fn diagonal_torus(a: &Algebra) -> Torus {
    let n = a.dim();
    let s = build_s_system(a);
    let sols = if s.rows.is_empty() {
        RatMatrix::identity(n).to_rows()
    } else {
        s.matrix().nullspace()
    };
    let vectors: Vec<Vec<BigInt>> = sols.iter().map(|v| primitive_integer_vector(v)).collect();
    let basis = vectors
        .iter()
        .map(|v| {
            let d: Vec<Rational> = v
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            RatMatrix::diagonal(&d)
        })
        .collect();
    Torus { basis, vectors }
}

/// Dimension of the diagonal torus of a nilpotent algebra in its given
/// basis.
pub fn rank_of(a: &Algebra) -> Result<usize> {
    if !a.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    Ok(diagonal_torus(a).dim())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDecomposition {
    /// Root of every basis element.
    pub root_of: Vec<Vec<Rational>>,
    /// Distinct roots in graded-lexicographic order.
    pub roots: Vec<Vec<Rational>>,
    /// Basis indices of each root space, aligned with `roots`.
    pub spaces: Vec<Vec<usize>>,
    pub simple: Vec<Vec<Rational>>,
    pub primitive: Vec<Vec<Rational>>,
    /// Whether every root is an integer combination of `primitive`.
    pub integer_spanning: bool,
}

impl RootDecomposition {
    pub fn contains_zero(&self) -> bool {
        self.roots.iter().any(|r| r.iter().all(Zero::is_zero))
    }

    pub fn zero_root_indices(&self) -> Vec<usize> {
        (0..self.root_of.len())
            .filter(|&i| self.root_of[i].iter().all(Zero::is_zero))
            .collect()
    }

    pub fn space_of(&self, root: &[Rational]) -> Option<&[usize]> {
        self.roots
            .iter()
            .position(|r| r == root)
            .map(|p| self.spaces[p].as_slice())
    }
}

/// Total degree first, then lexicographic.
pub fn graded_lex(a: &[Rational], b: &[Rational]) -> Ordering {
    let sa: Rational = a.iter().sum();
    let sb: Rational = b.iter().sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

/// Whether `target` is an integer combination of the linearly independent
/// vectors `gens`.
fn integer_combination(gens: &[Vec<Rational>], target: &[Rational]) -> bool {
    if gens.is_empty() {
        return target.iter().all(Zero::is_zero);
    }
    let m = RatMatrix::from_columns(target.len(), gens);
    match m.solve(target) {
        Some(c) => c.iter().all(|x| x.denom().is_one()),
        None => false,
    }
}

pub fn root_decomposition(a: &Algebra, torus: &Torus) -> Result<RootDecomposition> {
    for (i, t) in torus.basis.iter().enumerate() {
        if !t.is_diagonal() || !is_derivation(a, t, 0).holds {
            return Err(Error::NotDerivation(i));
        }
    }
    let n = a.dim();
    let root_of: Vec<Vec<Rational>> = (0..n)
        .map(|i| torus.basis.iter().map(|t| t.get(i, i).clone()).collect())
        .collect();
    let mut roots: Vec<Vec<Rational>> = root_of.clone();
    roots.sort_by(|x, y| graded_lex(x, y));
    roots.dedup();
    let spaces = roots
        .iter()
        .map(|r| (0..n).filter(|&i| &root_of[i] == r).collect())
        .collect();
    let gens = a.square_complement();
    let mut simple: Vec<Vec<Rational>> = gens.iter().map(|&i| root_of[i].clone()).collect();
    simple.sort_by(|x, y| graded_lex(x, y));
    simple.dedup();
    let s = torus.dim();
    let mut primitive: Vec<Vec<Rational>> = Vec::new();
    for r in &simple {
        if r.iter().all(Zero::is_zero) {
            continue;
        }
        let mut trial = primitive.clone();
        trial.push(r.clone());
        if Subspace::span(s, &trial).dim() == trial.len() {
            primitive = trial;
        }
    }
    let integer_spanning = roots.iter().all(|r| integer_combination(&primitive, r));
    Ok(RootDecomposition {
        root_of,
        roots,
        spaces,
        simple,
        primitive,
        integer_spanning,
    })
}

/// `root(i) + root(j) = root(k)` for every nonzero structure constant.
pub fn grading_holds(a: &Algebra, rd: &RootDecomposition) -> bool {
    a.entries().all(|(i, j, v)| {
        v.iter().all(|(k, _)| {
            rd.root_of[i]
                .iter()
                .zip(&rd.root_of[j])
                .zip(&rd.root_of[*k])
                .all(|((x, y), z)| x + y == *z)
        })
    })
}

/// Integer vector to a diagonal matrix.
pub fn diagonal_from_ints(v: &[i64]) -> RatMatrix {
    let d: Vec<Rational> = v
        .iter()
        .map(|x| Rational::from_integer((*x).into()))
        .collect();
    RatMatrix::diagonal(&d)
}
