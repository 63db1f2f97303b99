//! Derivations and superderivations.
//!
//! A homogeneous map `d` of parity `|d|` is a derivation when
//! `d([x,y]) = [d(x),y] + (-1)^{|x||d|} [x,d(y)]` on all basis pairs. The
//! solution space is found from the sparse linear system in the matrix
//! entries of `d`; only entries compatible with the parity are unknowns.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::sparse::{sparse_nullspace, SparseRow};
use crate::exactla::{canonical_basis, rat, RatMatrix, Rational, Subspace};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationSpace {
    pub even: Vec<RatMatrix>,
    pub odd: Vec<RatMatrix>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.even.len() + self.odd.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationCheck {
    pub holds: bool,
    /// A basis pair `(i, j)` on which the rule fails, with the defect
    /// vector. `None` with `holds == false` means the matrix mixes parities.
    pub witness: Option<(usize, usize, Vec<Rational>)>,
}

/// Positions `(row, col)` allowed for a homogeneous map of the given parity.
fn unknowns(a: &Algebra, parity: usize) -> Vec<(usize, usize)> {
    let n = a.dim();
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if (a.parity(c) + parity) % 2 == a.parity(r) {
                out.push((r, c));
            }
        }
    }
    out
}

/// Leibniz system for one parity, one sparse row per (pair, output index).
fn leibniz_rows(
    a: &Algebra,
    parity: usize,
    var: &BTreeMap<(usize, usize), usize>,
) -> Vec<SparseRow> {
    let n = a.dim();
    let mut rows = Vec::new();
    let add = |row: &mut SparseRow, rc: (usize, usize), c: &Rational| {
        if let Some(&x) = var.get(&rc) {
            let e = row.entry(x).or_insert_with(Rational::zero);
            *e += c;
        }
    };
    for i in 0..n {
        for j in i..n {
            let s = if a.parity(i) * parity == 1 {
                rat(-1)
            } else {
                rat(1)
            };
            let mut by_r: BTreeMap<usize, SparseRow> = BTreeMap::new();
            // d([e_i, e_j]) : sum_l c^l_{ij} M[r][l]
            for (l, c) in a.bracket_basis(i, j) {
                for r in 0..n {
                    add(by_r.entry(r).or_default(), (r, *l), c);
                }
            }
            // - [d e_i, e_j] : - sum_k M[k][i] c^r_{kj}
            for k in 0..n {
                for (r, c) in a.bracket_basis(k, j) {
                    add(by_r.entry(*r).or_default(), (k, i), &-c);
                }
            }
            // - s [e_i, d e_j] : - s sum_k M[k][j] c^r_{ik}
            for k in 0..n {
                for (r, c) in a.bracket_basis(i, k) {
                    add(by_r.entry(*r).or_default(), (k, j), &-(c * &s));
                }
            }
            for (_, mut row) in by_r {
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn solve_parity(
    a: &Algebra,
    parity: usize,
    extra_zero: &dyn Fn(usize, usize) -> bool,
) -> Vec<RatMatrix> {
    let n = a.dim();
    let vars = unknowns(a, parity);
    let var: BTreeMap<(usize, usize), usize> =
        vars.iter().enumerate().map(|(x, &rc)| (rc, x)).collect();
    let mut rows = leibniz_rows(a, parity, &var);
    for (x, &(r, c)) in vars.iter().enumerate() {
        if extra_zero(r, c) {
            rows.push(SparseRow::from([(x, rat(1))]));
        }
    }
    sparse_nullspace(vars.len(), rows)
        .into_iter()
        .map(|sol| {
            let mut m = RatMatrix::zeros(n, n);
            for (x, &(r, c)) in vars.iter().enumerate() {
                if !sol[x].is_zero() {
                    m.set(r, c, sol[x].clone());
                }
            }
            m
        })
        .collect()
}

/// Basis of Der(A) split by parity, in canonical echelon form over the
/// row-major matrix entries.
pub fn derivation_space(a: &Algebra) -> DerivationSpace {
    let even = solve_parity(a, 0, &|_, _| false);
    let odd = if a.n_odd() > 0 {
        solve_parity(a, 1, &|_, _| false)
    } else {
        Vec::new()
    };
    DerivationSpace { even, odd }
}

fn is_homogeneous(a: &Algebra, m: &RatMatrix, parity: usize) -> bool {
    let n = a.dim();
    (0..n)
        .all(|r| (0..n).all(|c| m.get(r, c).is_zero() || (a.parity(c) + parity) % 2 == a.parity(r)))
}

/// Checks the signed Leibniz rule for `m` of the given parity.
pub fn is_derivation(a: &Algebra, m: &RatMatrix, parity: usize) -> DerivationCheck {
    let n = a.dim();
    if m.rows() != n || m.cols() != n || !is_homogeneous(a, m, parity % 2) {
        return DerivationCheck {
            holds: false,
            witness: None,
        };
    }
    let images: Vec<Vec<Rational>> = m.columns();
    for i in 0..n {
        for j in i..n {
            let s = if a.parity(i) * (parity % 2) == 1 {
                rat(-1)
            } else {
                rat(1)
            };
            let br = crate::algebra::dense_from_sparse(n, a.bracket_basis(i, j));
            let lhs = m.apply(&br);
            let t1 = a.bracket(&images[i], &a.unit(j)).expect("dims checked");
            let t2 = a.bracket(&a.unit(i), &images[j]).expect("dims checked");
            let defect: Vec<Rational> = (0..n).map(|r| &lhs[r] - &t1[r] - &s * &t2[r]).collect();
            if defect.iter().any(|x| !x.is_zero()) {
                return DerivationCheck {
                    holds: false,
                    witness: Some((i, j, defect)),
                };
            }
        }
    }
    DerivationCheck {
        holds: true,
        witness: None,
    }
}

fn flatten(m: &RatMatrix) -> Vec<Rational> {
    m.entries().to_vec()
}

fn unflatten(n: usize, v: &[Rational]) -> RatMatrix {
    RatMatrix::from_rows(v.chunks(n).map(<[Rational]>::to_vec).collect())
}

/// Canonical basis of the span of a family of `n x n` matrices.
pub fn matrix_span(n: usize, ms: &[RatMatrix]) -> Vec<RatMatrix> {
    let flat: Vec<Vec<Rational>> = ms.iter().map(flatten).collect();
    canonical_basis(n * n, &flat)
        .iter()
        .map(|v| unflatten(n, v))
        .collect()
}

/// Span of the left multiplications `y -> [x, y]`; for plain Lie algebras
/// this is the span of all adjoint operators.
pub fn inner_derivations(a: &Algebra) -> Vec<RatMatrix> {
    let ls: Vec<RatMatrix> = (0..a.dim()).map(|i| a.left_mult(&a.unit(i))).collect();
    matrix_span(a.dim(), &ls)
}

fn check_diagonal_derivations(a: &Algebra, ts: &[RatMatrix]) -> Result<()> {
    for (i, t) in ts.iter().enumerate() {
        if !t.is_diagonal() || !is_derivation(a, t, 0).holds {
            return Err(Error::NotDerivation(i));
        }
    }
    Ok(())
}

/// `{d in Der(A) : [d, t] = 0 for t in T}` for diagonal derivations `T`,
/// computed as the derivations preserving every joint eigenspace of `T`.
pub fn torus_centralizer(a: &Algebra, ts: &[RatMatrix]) -> Result<DerivationSpace> {
    check_diagonal_derivations(a, ts)?;
    let differs = |r: usize, c: usize| ts.iter().any(|t| t.get(r, r) != t.get(c, c));
    let even = solve_parity(a, 0, &differs);
    let odd = if a.n_odd() > 0 {
        solve_parity(a, 1, &differs)
    } else {
        Vec::new()
    };
    Ok(DerivationSpace { even, odd })
}

/// The same centralizer computed from a basis of Der(A) by solving
/// `sum c_i [d_i, t] = 0`.
pub fn torus_centralizer_by_commutators(a: &Algebra, ts: &[RatMatrix]) -> Result<DerivationSpace> {
    check_diagonal_derivations(a, ts)?;
    let n = a.dim();
    let der = derivation_space(a);
    let restrict = |basis: &[RatMatrix]| -> Vec<RatMatrix> {
        if basis.is_empty() {
            return Vec::new();
        }
        // columns: flattened [d_i, t] stacked over all t
        let cols: Vec<Vec<Rational>> = basis
            .iter()
            .map(|d| ts.iter().flat_map(|t| flatten(&d.commutator(t))).collect())
            .collect();
        if ts.is_empty() {
            return matrix_span(n, basis);
        }
        let sys = RatMatrix::from_columns(n * n * ts.len(), &cols);
        let combos: Vec<RatMatrix> = sys
            .nullspace()
            .iter()
            .map(|c| {
                let mut m = RatMatrix::zeros(n, n);
                for (ci, d) in c.iter().zip(basis) {
                    if !ci.is_zero() {
                        m = &m + &d.scale(ci);
                    }
                }
                m
            })
            .collect();
        matrix_span(n, &combos)
    };
    Ok(DerivationSpace {
        even: restrict(&der.even),
        odd: restrict(&der.odd),
    })
}

/// Whether no nonzero combination of `ds` is nilpotent, decided through
/// the diagonals. All maps must be triangular for one common orientation of
/// the basis flag (either `e_j -> span{e_k : k >= j}` for all, or
/// `e_j -> span{e_k : k <= j}` for all).
pub fn nil_independent(a: &Algebra, ds: &[RatMatrix]) -> Result<bool> {
    for (i, d) in ds.iter().enumerate() {
        if !is_derivation(a, d, 0).holds {
            return Err(Error::NotDerivation(i));
        }
    }
    let later = ds.iter().position(|d| !d.is_lower_triangular());
    let earlier = ds.iter().position(|d| !d.is_upper_triangular());
    if let (Some(x), Some(y)) = (later, earlier) {
        return Err(Error::NotTriangular(x.max(y)));
    }
    let diagonals: Vec<Vec<Rational>> = ds.iter().map(RatMatrix::diagonal_entries).collect();
    Ok(Subspace::span(a.dim(), &diagonals).dim() == ds.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn abelian_derivations_are_all_maps() {
        assert_eq!(derivation_space(&Algebra::abelian(3)).even.len(), 9);
        assert!(inner_derivations(&Algebra::abelian(3)).is_empty());
    }

    #[test]
    fn heisenberg_derivations() {
        let h = corpus::heisenberg3();
        let der = derivation_space(&h);
        assert_eq!(der.even.len(), 6);
        assert_eq!(inner_derivations(&h).len(), 2);
        for d in &der.even {
            assert!(is_derivation(&h, d, 0).holds);
        }
        let check = is_derivation(&h, &RatMatrix::identity(3), 0);
        assert!(!check.holds);
        let (i, j, defect) = check.witness.unwrap();
        assert_eq!((i, j), (0, 1));
        assert_eq!(defect, h.unit(2).iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn n9_derivations() {
        let n9 = corpus::n9();
        assert!(is_derivation(&n9, &corpus::n9_d(), 0).holds);
        assert!(is_derivation(&n9, &corpus::n9_t_alpha(), 0).holds);
        assert!(is_derivation(&n9, &corpus::n9_t_beta(), 0).holds);
        let der = derivation_space(&n9);
        assert!(der.even.iter().all(RatMatrix::is_lower_triangular));
    }

    #[test]
    fn nil_independence() {
        let n9 = corpus::n9();
        let (ta, tb, d) = (corpus::n9_t_alpha(), corpus::n9_t_beta(), corpus::n9_d());
        assert_eq!(nil_independent(&n9, &[ta.clone(), tb]), Ok(true));
        assert_eq!(nil_independent(&n9, std::slice::from_ref(&d)), Ok(false));
        assert_eq!(nil_independent(&n9, &[ta.clone(), &ta + &d]), Ok(false));
        // a triangular derivation in the other orientation mixed with d
        let h = corpus::heisenberg3();
        let up = RatMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let down = RatMatrix::from_i64_rows(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert!(is_derivation(&h, &up, 0).holds && is_derivation(&h, &down, 0).holds);
        assert_eq!(
            nil_independent(&h, &[up, down]),
            Err(Error::NotTriangular(1))
        );
    }

    #[test]
    fn centralizer_routes_agree() {
        for n in 6..=8 {
            let l = corpus::filiform_model(n);
            let t = crate::torus::diagonal_torus(&l);
            let c1 = torus_centralizer(&l, &t.basis).unwrap();
            let c2 = torus_centralizer_by_commutators(&l, &t.basis).unwrap();
            assert_eq!(c1, c2);
            assert_eq!(c1.dim(), 2);
        }
        let n9 = corpus::n9();
        let ts = [corpus::n9_t_alpha(), corpus::n9_t_beta()];
        let c = torus_centralizer(&n9, &ts).unwrap();
        assert_eq!(c, torus_centralizer_by_commutators(&n9, &ts).unwrap());
        let span = matrix_span(9, &c.even);
        let with_d = matrix_span(9, &[span.clone(), vec![corpus::n9_d()]].concat());
        assert_eq!(span.len(), with_d.len());
        assert!(c.dim() > 2);
        assert_eq!(torus_centralizer(&n9, &[]).unwrap(), derivation_space(&n9));
    }

    #[test]
    fn super_derivations_close() {
        let s = corpus::super_small();
        let der = derivation_space(&s);
        assert!(!der.odd.is_empty());
        for d in &der.odd {
            assert!(is_derivation(&s, d, 1).holds);
        }
        // odd inner maps are odd derivations
        for i in s.n_even()..s.dim() {
            assert!(is_derivation(&s, &s.left_mult(&s.unit(i)), 1).holds);
        }
        for i in 0..s.n_even() {
            assert!(is_derivation(&s, &s.left_mult(&s.unit(i)), 0).holds);
        }
    }
}
