//! Constructors: current algebras `L ⊗ C`, ideals and quotients, block
//! assembly of a semidirect sum, and extensions of an algebra by commuting
//! derivations.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{normalize_sparse, sparse_from_dense, Algebra, Kind, SparseVec, Violation};
use crate::deriv::is_derivation;
use crate::error::{Error, Result};
use crate::exactla::{RatMatrix, Rational, Subspace};

/// A commutative associative algebra given by its products on a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommAssocAlgebra {
    name: String,
    basis: Vec<String>,
    products: BTreeMap<(usize, usize), SparseVec>,
}

impl CommAssocAlgebra {
    /// Products may be given in either or both orders; both orders must
    /// then agree.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        products: impl IntoIterator<Item = (usize, usize, SparseVec)>,
    ) -> Result<Self> {
        let n = basis.len();
        let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (i, j, v) in products {
            if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(Error::Parse(format!(
                    "product index out of range in ({i}, {j})"
                )));
            }
            let v = normalize_sparse(v);
            let key = (i.min(j), i.max(j));
            match table.get(&key) {
                Some(old) if *old != v => {
                    return Err(Error::Validation(format!(
                        "product of ({i}, {j}) is not commutative"
                    )))
                }
                _ => {
                    if !v.is_empty() {
                        table.insert(key, v);
                    }
                }
            }
        }
        let alg = CommAssocAlgebra {
            name: name.into(),
            basis,
            products: table,
        };
        alg.check_associative()?;
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn product(&self, i: usize, j: usize) -> SparseVec {
        self.products
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> {
        self.products.iter().map(|(&(i, j), v)| (i, j, v))
    }

    fn times(&self, v: &SparseVec, j: usize) -> SparseVec {
        normalize_sparse(v.iter().flat_map(|(k, c)| {
            self.product(*k, j)
                .into_iter()
                .map(move |(l, d)| (l, c * d))
        }))
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.times(&self.product(a, b), c);
                    let right = self.times(&self.product(b, c), a);
                    if left != right {
                        return Err(Error::Validation(format!(
                            "product is not associative on ({}, {}, {})",
                            self.basis[a], self.basis[b], self.basis[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Action of one algebra on another: the entry `(a, b) -> v` means
/// `[b, a] = v` with `a` from the acting algebra and `b`, `v` in the acted
/// one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossAction {
    pub entries: Vec<(usize, usize, SparseVec)>,
}

impl CrossAction {
    pub fn new(entries: Vec<(usize, usize, SparseVec)>) -> Self {
        CrossAction { entries }
    }
}

/// The current algebra `L ⊗ C` with `[x⊗a, y⊗b] = [x,y] ⊗ ab`, basis
/// ordered `x_i ⊗ y_j` with `i` major and named `"x*y"`.
pub fn tensor_current(l: &Algebra, c: &CommAssocAlgebra) -> Result<Algebra> {
    if l.kind() != Kind::Lie {
        return Err(Error::WrongKind(
            "tensor_current needs a plain Lie algebra".into(),
        ));
    }
    let (nl, nc) = (l.dim(), c.dim());
    let idx = |i: usize, a: usize| i * nc + a;
    let names: Vec<String> = (0..nl)
        .flat_map(|i| (0..nc).map(move |a| (i, a)))
        .map(|(i, a)| format!("{}*{}", l.basis_name(i), c.basis()[a]))
        .collect();
    let mut brackets = Vec::new();
    for (i, j, v) in l.entries() {
        for a in 0..nc {
            for b in 0..nc {
                let p = c.product(a, b);
                if p.is_empty() {
                    continue;
                }
                let (left, right) = (idx(i, a), idx(j, b));
                let value: SparseVec = v
                    .iter()
                    .flat_map(|(k, x)| p.iter().map(move |(m, y)| (idx(*k, *m), x * y)))
                    .collect();
                brackets.push((left, right, value));
            }
        }
    }
    let out = Algebra::new(
        format!("{}*{}", l.name(), c.name()),
        Kind::Lie,
        names,
        Vec::new(),
        brackets,
    )?;
    out.ensure_valid()?;
    Ok(out)
}

/// Smallest subspace containing `seeds` and closed under bracketing with
/// the whole algebra.
pub fn ideal_closure(a: &Algebra, seeds: &[Vec<Rational>]) -> Subspace {
    let mut current = Subspace::span(a.dim(), seeds);
    loop {
        let mut new = Vec::new();
        for v in current.basis() {
            for i in 0..a.dim() {
                let w = a.bracket_basis_vec(i, v);
                if !current.contains(&w) {
                    new.push(w);
                }
            }
        }
        if new.is_empty() {
            return current;
        }
        current = current.with(&new);
    }
}

pub fn is_ideal(a: &Algebra, sub: &Subspace) -> bool {
    sub.basis()
        .iter()
        .all(|v| (0..a.dim()).all(|i| sub.contains(&a.bracket_basis_vec(i, v))))
}

/// `A / I` on the basis vectors that are not pivots of `I`'s echelon basis.
pub fn quotient(a: &Algebra, ideal: &Subspace) -> Result<Algebra> {
    if ideal.ambient() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: ideal.ambient(),
        });
    }
    if !is_ideal(a, ideal) {
        return Err(Error::NotAnIdeal);
    }
    if ideal.dim() == 0 {
        return Ok(a.clone());
    }
    let keep: Vec<usize> = (0..a.dim())
        .filter(|i| !ideal.pivots().contains(i))
        .collect();
    let position: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for &i in &keep {
        if a.parity(i) == 0 {
            even.push(a.basis_name(i).to_string());
        } else {
            odd.push(a.basis_name(i).to_string());
        }
    }
    let mut brackets = Vec::new();
    for (x, &i) in keep.iter().enumerate() {
        for &j in &keep[x..] {
            if i == j && a.parity(i) == 0 {
                continue;
            }
            let w = a.bracket_basis_vec(i, &a.unit(j));
            let r = ideal.reduce(&w);
            let v: SparseVec = sparse_from_dense(&r)
                .into_iter()
                .map(|(k, c)| (position[&k], c))
                .collect();
            if !v.is_empty() {
                brackets.push((position[&i], position[&j], v));
            }
        }
    }
    let out = Algebra::new(format!("{}/J", a.name()), a.kind(), even, odd, brackets)?;
    out.ensure_valid()?;
    Ok(out)
}

/// Block sum of `a` and `b` with `a` acting on `b`. Basis: `a` then `b`,
/// even elements before odd ones. `extra` adds brackets inside `b`.
pub fn assemble(
    a: &Algebra,
    b: &Algebra,
    action: &CrossAction,
    extra: &[(usize, usize, SparseVec)],
) -> Result<Algebra> {
    let kind = if a.is_super() || b.is_super() {
        Kind::LieSuper
    } else {
        Kind::Lie
    };
    let (ae, be) = (a.n_even(), b.n_even());
    let map_a = |i: usize| if i < ae { i } else { ae + be + (i - ae) };
    let map_b = |i: usize| if i < be { ae + i } else { a.dim() + i };
    let mut even: Vec<String> = a.even_names().to_vec();
    even.extend(b.even_names().iter().cloned());
    let mut odd: Vec<String> = a.odd_names().to_vec();
    odd.extend(b.odd_names().iter().cloned());
    let remap = |v: &SparseVec, f: &dyn Fn(usize) -> usize| -> SparseVec {
        v.iter().map(|(k, c)| (f(*k), c.clone())).collect()
    };
    let mut brackets = Vec::new();
    for (i, j, v) in a.entries() {
        brackets.push((map_a(i), map_a(j), remap(v, &map_a)));
    }
    let mut inner: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (i, j, v) in b.entries() {
        inner.insert((i, j), v.clone());
    }
    for (i, j, v) in extra {
        if *i >= b.dim() || *j >= b.dim() {
            return Err(Error::Parse(format!(
                "extra bracket ({i}, {j}) out of range"
            )));
        }
        let key = (*i.min(j), *i.max(j));
        let v = if i <= j {
            v.clone()
        } else {
            let s = if b.parity(*i) * b.parity(*j) == 1 {
                1
            } else {
                -1
            };
            v.iter()
                .map(|(k, c)| (*k, c * Rational::from_integer(s.into())))
                .collect()
        };
        let e = inner.entry(key).or_default();
        *e = normalize_sparse(e.iter().cloned().chain(v));
    }
    for ((i, j), v) in inner {
        brackets.push((map_b(i), map_b(j), remap(&v, &map_b)));
    }
    for (x, y, v) in &action.entries {
        if *x >= a.dim() || *y >= b.dim() {
            return Err(Error::Parse(format!(
                "action entry ({x}, {y}) out of range"
            )));
        }
        brackets.push((map_b(*y), map_a(*x), remap(v, &map_b)));
    }
    let out = Algebra::new(
        format!("{}+{}", a.name(), b.name()),
        kind,
        even,
        odd,
        brackets,
    )?;
    match out.validate().violations.first() {
        None => Ok(out),
        Some(Violation::Jacobi {
            triple: (i, j, k), ..
        }) => Err(Error::JacobiFailure(*i, *j, *k)),
        Some(Violation::Antisymmetry { index }) => {
            Err(Error::JacobiFailure(*index, *index, *index))
        }
    }
}

/// `N ⋊ span{x_1..x_s}` with `[n, x_i] = D_i(n)` and `[x_i, x_j] = 0`. The
/// new elements are even and are placed after the even basis of `N`.
pub fn semidirect_by_derivations(
    n: &Algebra,
    ds: &[RatMatrix],
    names: &[String],
) -> Result<Algebra> {
    if ds.len() != names.len() {
        return Err(Error::DimensionMismatch {
            expected: ds.len(),
            got: names.len(),
        });
    }
    for (i, d) in ds.iter().enumerate() {
        if d.rows() != n.dim() || d.cols() != n.dim() {
            return Err(Error::DimensionMismatch {
                expected: n.dim(),
                got: d.rows(),
            });
        }
        if !is_derivation(n, d, 0).holds {
            return Err(Error::NotDerivation(i));
        }
    }
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            if !ds[i].commutator(&ds[j]).is_zero() {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }
    let s = ds.len();
    let ne = n.n_even();
    let map = |i: usize| if i < ne { i } else { i + s };
    let mut even = n.even_names().to_vec();
    even.extend(names.iter().cloned());
    let mut brackets: Vec<(usize, usize, SparseVec)> = n
        .entries()
        .map(|(i, j, v)| {
            (
                map(i),
                map(j),
                v.iter().map(|(k, c)| (map(*k), c.clone())).collect(),
            )
        })
        .collect();
    for (x, d) in ds.iter().enumerate() {
        for k in 0..n.dim() {
            let col: SparseVec = (0..n.dim())
                .filter(|r| !d.get(*r, k).is_zero())
                .map(|r| (map(r), d.get(r, k).clone()))
                .collect();
            if !col.is_empty() {
                brackets.push((map(k), ne + x, col));
            }
        }
    }
    let out = Algebra::new(
        n.name().to_string(),
        n.kind(),
        even,
        n.odd_names().to_vec(),
        brackets,
    )?;
    out.ensure_valid()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactla::rat;

    #[test]
    fn tensor_with_zero_product_is_abelian() {
        let c = CommAssocAlgebra::new("c", vec!["y".into()], Vec::new()).unwrap();
        let t = tensor_current(&corpus::heisenberg3(), &c).unwrap();
        assert_eq!(t.dim(), 3);
        assert_eq!(t.num_entries(), 0);
    }

    #[test]
    fn ideal_closure_examples() {
        let h = corpus::heisenberg3();
        assert_eq!(
            ideal_closure(&h, &[h.unit(2)]),
            Subspace::span(3, &[h.unit(2)])
        );
        assert_eq!(
            ideal_closure(&h, &[h.unit(0)]),
            Subspace::span(3, &[h.unit(0), h.unit(2)])
        );
    }

    #[test]
    fn quotient_examples() {
        let h = corpus::heisenberg3();
        assert_eq!(quotient(&h, &Subspace::zero(3)).unwrap(), h);
        let q = quotient(&h, &h.center()).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.num_entries(), 0);
        let not_ideal = Subspace::span(3, &[h.unit(0)]);
        assert_eq!(quotient(&h, &not_ideal), Err(Error::NotAnIdeal));
    }

    #[test]
    fn non_associative_rejected() {
        // y*y = y is associative, y*y = z with z*y = z is not
        let r = CommAssocAlgebra::new(
            "c",
            vec!["y".into(), "z".into()],
            vec![(0, 0, vec![(1, rat(1))]), (1, 0, vec![(1, rat(1))])],
        );
        assert!(r.is_err());
    }

    #[test]
    fn zero_action_is_direct_sum() {
        let h = corpus::heisenberg3();
        let b = Algebra::lie_from_ints("h'", "f", 3, &[(1, 2, &[(1, 3)])]).unwrap();
        let s = assemble(&h, &b, &CrossAction::default(), &[]).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.center().dim(), 2);
    }

    #[test]
    fn bad_action_fails_jacobi() {
        let h = corpus::heisenberg3();
        let b = Algebra::lie_from_ints("b", "z", 1, &[]).unwrap();
        // e3 = [e1, e2] must act by the commutator of the zero actions of e1, e2
        let action = CrossAction::new(vec![(2, 0, vec![(0, rat(1))])]);
        assert!(matches!(
            assemble(&h, &b, &action, &[]),
            Err(Error::JacobiFailure(..))
        ));
    }

    #[test]
    fn empty_semidirect_is_identity() {
        let n9 = corpus::n9();
        assert_eq!(semidirect_by_derivations(&n9, &[], &[]).unwrap(), n9);
    }

    #[test]
    fn semidirect_rejects_bad_input() {
        let h = corpus::heisenberg3();
        let id = RatMatrix::identity(3);
        assert_eq!(
            semidirect_by_derivations(&h, &[id], &["x".into()]),
            Err(Error::NotDerivation(0))
        );
        let a = Algebra::abelian(2);
        let p = RatMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let q = RatMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            semidirect_by_derivations(&a, &[p, q], &["x".into(), "y".into()]),
            Err(Error::NotCommuting(0, 1))
        );
    }
}
