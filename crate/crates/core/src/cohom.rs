//! Chevalley–Eilenberg cohomology with coefficients in the adjoint module,
//! and invariant fingerprints built on top of it.
//!
//! `C^k = Hom(Λ^k A, A)`; a basis cochain is a pair (sorted index tuple of
//! length `k`, output index), numbered `tuple_rank * n + output` with tuples
//! in lexicographic order.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Algebra, Kind};
use crate::deriv::{derivation_space, inner_derivations};
use crate::error::{Error, Result};
use crate::exactla::sparse::{sparse_rank, SparseRow};
use crate::exactla::{rat, Rational};
use crate::torus::rank_of;

/// Largest dimension admitted for `H^2` and `H^3` by default.
pub const DEFAULT_GUARDS: [(usize, usize); 2] = [(2, 24), (3, 14)];

fn guard(k: usize) -> Option<usize> {
    DEFAULT_GUARDS
        .iter()
        .find(|(d, _)| *d == k)
        .map(|(_, l)| *l)
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn sign(parity: usize) -> Rational {
    if parity.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

/// The differential `d_k : C^k -> C^{k+1}` as sparse columns, one per basis
/// cochain of `C^k`.
pub struct Differential {
    pub degree: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub columns: Vec<SparseRow>,
}

pub fn differential(a: &Algebra, k: usize) -> Result<Differential> {
    if a.kind() != Kind::Lie {
        return Err(Error::WrongKind(
            "cohomology is implemented for Lie algebras".into(),
        ));
    }
    let n = a.dim();
    let src = subsets(n, k);
    let dst = subsets(n, k + 1);
    let dst_index: BTreeMap<&[usize], usize> = dst
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut columns = Vec::with_capacity(src.len() * n);
    for s in &src {
        for r in 0..n {
            let mut col = SparseRow::new();
            let mut add = |u: &[usize], out: usize, c: Rational| {
                let e = col
                    .entry(dst_index[u] * n + out)
                    .or_insert_with(Rational::zero);
                *e += c;
            };
            // sum_i (-1)^i [x_i, c(.. x_i omitted ..)]
            for u in 0..n {
                if s.contains(&u) {
                    continue;
                }
                let mut big = s.clone();
                let pos = big.partition_point(|&x| x < u);
                big.insert(pos, u);
                for (out, c) in a.bracket_basis(u, r) {
                    add(&big, *out, sign(pos) * c);
                }
            }
            // sum_{i<j} (-1)^{i+j} c([x_i, x_j], rest)
            for (lpos, &l) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(lpos);
                let sl = sign(lpos);
                for x in 0..n {
                    if rest.contains(&x) {
                        continue;
                    }
                    for y in x + 1..n {
                        if rest.contains(&y) {
                            continue;
                        }
                        let coeff = a.structure_constant(x, y, l);
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut big = rest.clone();
                        let px = big.partition_point(|&z| z < x);
                        big.insert(px, x);
                        let py = big.partition_point(|&z| z < y);
                        big.insert(py, y);
                        add(&big, r, sign(px + py) * &sl * coeff);
                    }
                }
            }
            col.retain(|_, v| !v.is_zero());
            columns.push(col);
        }
    }
    Ok(Differential {
        degree: k,
        domain_dim: src.len() * n,
        codomain_dim: dst.len() * n,
        columns,
    })
}

impl Differential {
    pub fn rank(&self) -> usize {
        sparse_rank(self.codomain_dim, self.columns.clone())
    }

    /// `self ∘ prev`, as sparse columns.
    pub fn compose(&self, prev: &Differential) -> Vec<SparseRow> {
        prev.columns
            .iter()
            .map(|col| {
                let mut out = SparseRow::new();
                for (i, c) in col {
                    for (j, v) in &self.columns[*i] {
                        let e = out.entry(*j).or_insert_with(Rational::zero);
                        *e += c * v;
                    }
                }
                out.retain(|_, v| !v.is_zero());
                out
            })
            .collect()
    }
}

/// Whether `d_k ∘ d_{k-1} = 0`.
pub fn square_vanishes(a: &Algebra, k: usize) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    let d = differential(a, k)?;
    let prev = differential(a, k - 1)?;
    Ok(d.compose(&prev).iter().all(SparseRow::is_empty))
}

/// `dim H^k(A, A)` with the default size guards.
pub fn cohomology_dim(a: &Algebra, k: usize) -> Result<usize> {
    cohomology_dim_with_limit(a, k, None)
}

/// As [`cohomology_dim`]; `limit` replaces the default dimension guard.
pub fn cohomology_dim_with_limit(a: &Algebra, k: usize, limit: Option<usize>) -> Result<usize> {
    if a.kind() != Kind::Lie {
        return Err(Error::WrongKind(
            "cohomology is implemented for Lie algebras".into(),
        ));
    }
    if k > 3 {
        return Err(Error::Validation(format!(
            "degree {k} is not supported (0 to 3)"
        )));
    }
    if let Some(l) = limit.or_else(|| guard(k)) {
        if a.dim() > l {
            return Err(Error::DimensionGuard {
                dim: a.dim(),
                limit: l,
            });
        }
    }
    let dk = differential(a, k)?;
    let nullity = dk.domain_dim - dk.rank();
    let prev = if k == 0 {
        0
    } else {
        differential(a, k - 1)?.rank()
    };
    Ok(nullity - prev)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub derived: Vec<usize>,
    pub lower_central: Vec<usize>,
    pub center: usize,
    pub der_even: usize,
    pub der_odd: usize,
    pub inner: usize,
    pub h1: Option<usize>,
    pub h2: Option<usize>,
    pub nilradical_rank: Option<usize>,
}

impl Fingerprint {
    /// Field names paired with a comparable rendering, in comparison order.
    fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("dim", self.dim.to_string()),
            ("derived", format!("{:?}", self.derived)),
            ("lower_central", format!("{:?}", self.lower_central)),
            ("center", self.center.to_string()),
            ("der_even", self.der_even.to_string()),
            ("der_odd", self.der_odd.to_string()),
            ("inner", self.inner.to_string()),
            ("h1", format!("{:?}", self.h1)),
            ("h2", format!("{:?}", self.h2)),
            ("nilradical_rank", format!("{:?}", self.nilradical_rank)),
        ]
    }
}

/// Invariants of `a`; `nilradical` names the dimension of a leading-block
/// nilradical whose rank should be recorded.
pub fn fingerprint(a: &Algebra, nilradical: Option<usize>) -> Fingerprint {
    fingerprint_with_limit(a, nilradical, None)
}

/// As [`fingerprint`]; `h2_limit` replaces the default guard for `H^2`.
pub fn fingerprint_with_limit(
    a: &Algebra,
    nilradical: Option<usize>,
    h2_limit: Option<usize>,
) -> Fingerprint {
    let series = a.series();
    let der = derivation_space(a);
    let inner = inner_derivations(a).len();
    let is_lie = a.kind() == Kind::Lie;
    let h1 = is_lie.then(|| der.dim() - inner);
    let h2 = if is_lie {
        cohomology_dim_with_limit(a, 2, h2_limit).ok()
    } else {
        None
    };
    let nilradical_rank = nilradical
        .and_then(|m| a.leading_block(m).ok())
        .and_then(|n| rank_of(&n).ok());
    Fingerprint {
        dim: a.dim(),
        derived: series.derived,
        lower_central: series.lower_central,
        center: a.center().dim(),
        der_even: der.even.len(),
        der_odd: der.odd.len(),
        inner,
        h1,
        h2,
        nilradical_rank,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "field")]
pub enum Verdict {
    Distinguished(String),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub verdict: Verdict,
    pub all_differing: Vec<String>,
}

/// First differing fingerprint field in the order dim, derived,
/// lower_central, center, der_even, der_odd, inner, h1, h2,
/// nilradical_rank. Inconclusive never means isomorphic.
pub fn compare_fingerprints(fa: &Fingerprint, fb: &Fingerprint) -> Comparison {
    let all_differing: Vec<String> = fa
        .fields()
        .into_iter()
        .zip(fb.fields())
        .filter(|(x, y)| x.1 != y.1)
        .map(|(x, _)| x.0.to_string())
        .collect();
    let verdict = match all_differing.first() {
        Some(f) => Verdict::Distinguished(f.clone()),
        None => Verdict::Inconclusive,
    };
    Comparison {
        verdict,
        all_differing,
    }
}

pub fn compare(a: &Algebra, b: &Algebra) -> Comparison {
    compare_fingerprints(&fingerprint(a, None), &fingerprint(b, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn heisenberg_cohomology() {
        let h = corpus::heisenberg3();
        assert_eq!(cohomology_dim(&h, 0), Ok(1));
        // Der has dimension 6, inner 2
        assert_eq!(cohomology_dim(&h, 1), Ok(4));
        for k in 1..=3 {
            assert!(square_vanishes(&h, k).unwrap());
        }
    }

    #[test]
    fn abelian_fingerprint() {
        let f = fingerprint(&corpus::abelian(2), None);
        assert_eq!(f.dim, 2);
        assert_eq!(f.lower_central, vec![2, 0]);
        assert_eq!(f.center, 2);
        assert_eq!(f.der_even, 4);
        assert_eq!(f.inner, 0);
        assert_eq!(f.h1, Some(4));
    }

    #[test]
    fn guards() {
        let big = corpus::filiform_model(15);
        assert_eq!(
            cohomology_dim(&big, 3),
            Err(Error::DimensionGuard { dim: 15, limit: 14 })
        );
        assert!(matches!(
            cohomology_dim(&corpus::super_small(), 1),
            Err(Error::WrongKind(_))
        ));
    }

    #[test]
    fn compare_examples() {
        let h = corpus::heisenberg3();
        assert_eq!(compare(&h, &h).verdict, Verdict::Inconclusive);
        let c = compare(&h, &corpus::abelian(3));
        assert_eq!(c.verdict, Verdict::Distinguished("derived".into()));
        assert!(c.all_differing.contains(&"lower_central".to_string()));
    }
}
