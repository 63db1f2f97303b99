//! d-local diagonalizability, maximal solvable extensions `N ⋊ T`, and the
//! normal form of an extension of a d-locally diagonalizable nilradical.
//!
//! A nilpotent algebra is d-locally diagonalizable when (i) the diagonal
//! parts of its derivations are themselves derivations, so they span the
//! diagonal torus, (ii) every derivation is diagonal on each root space of
//! that torus, and (iii) no basis element has root zero.

use std::sync::atomic::{AtomicBool, Ordering};

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::construct::{is_ideal, semidirect_by_derivations};
use crate::deriv::{derivation_space, inner_derivations, is_derivation, nil_independent};
use crate::error::{Error, Result};
use crate::exactla::{RatMatrix, Rational, Subspace};
use crate::torus::{diagonal_torus, root_decomposition, RootDecomposition, Torus};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalWitness {
    /// Index into the canonical derivation basis.
    pub derivation: usize,
    pub diagonal: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockWitness {
    pub derivation: usize,
    pub root: Vec<String>,
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DldReport {
    pub condition_i: bool,
    pub condition_i_witness: Option<DiagonalWitness>,
    pub condition_ii: bool,
    pub condition_ii_witness: Option<BlockWitness>,
    pub condition_iii: bool,
    /// Basis indices whose root is zero.
    pub zero_root_indices: Vec<usize>,
    pub overall: bool,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(crate::exactla::format_rational).collect()
}

pub fn dld_check(a: &Algebra) -> DldReport {
    let torus = diagonal_torus(a);
    let rd = root_decomposition(a, &torus).expect("torus elements are diagonal derivations");
    let der = derivation_space(a).even;
    let n = a.dim();

    let torus_span = torus.span(n);
    let mut condition_i_witness = None;
    for (k, d) in der.iter().enumerate() {
        let diag = d.diagonal_entries();
        let as_map = RatMatrix::diagonal(&diag);
        if !torus_span.contains(&diag) || !is_derivation(a, &as_map, 0).holds {
            condition_i_witness = Some(DiagonalWitness {
                derivation: k,
                diagonal: strings(&diag),
            });
            break;
        }
    }
    let diag_span = Subspace::span(
        n,
        &der.iter()
            .map(RatMatrix::diagonal_entries)
            .collect::<Vec<_>>(),
    );
    let condition_i = condition_i_witness.is_none() && diag_span == torus_span;

    let condition_ii_witness = block_witness(&der, &rd);
    let zero_root_indices = rd.zero_root_indices();
    let condition_ii = condition_ii_witness.is_none();
    let condition_iii = zero_root_indices.is_empty();
    DldReport {
        condition_i,
        condition_i_witness,
        condition_ii,
        condition_ii_witness,
        condition_iii,
        zero_root_indices,
        overall: condition_i && condition_ii && condition_iii,
    }
}

/// First off-diagonal entry of a derivation inside a root space.
fn block_witness(der: &[RatMatrix], rd: &RootDecomposition) -> Option<BlockWitness> {
    for (k, d) in der.iter().enumerate() {
        for (root, space) in rd.roots.iter().zip(&rd.spaces) {
            if space.len() < 2 {
                continue;
            }
            for &r in space {
                for &c in space {
                    if r != c && !d.get(r, c).is_zero() {
                        return Some(BlockWitness {
                            derivation: k,
                            root: strings(root),
                            row: r,
                            col: c,
                            value: crate::exactla::format_rational(d.get(r, c)),
                        });
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub algebra: Algebra,
    /// Basis indices of the nilradical inside `algebra`.
    pub nilradical: Vec<usize>,
    pub complement_names: Vec<String>,
    pub torus: Torus,
}

/// Names `x1..xs` not clashing with the existing basis.
fn fresh_names(a: &Algebra, s: usize) -> Vec<String> {
    for prefix in ["x", "t", "q", "h"] {
        let names: Vec<String> = (1..=s).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|x| a.index_of(x).is_none()) {
            return names;
        }
    }
    (1..=s).map(|i| format!("torus_{i}")).collect()
}

/// `N ⋊ T` for the diagonal torus `T` of `N`.
pub fn build_maximal_extension(a: &Algebra) -> Result<ExtensionWitness> {
    let torus = diagonal_torus(a);
    if torus.dim() == 0 {
        return Err(Error::ZeroTorus);
    }
    extension_by(a, torus)
}

/// `N ⋊ T'` for a given family of commuting diagonal derivations.
pub fn extension_by(a: &Algebra, torus: Torus) -> Result<ExtensionWitness> {
    let names = fresh_names(a, torus.dim());
    let algebra =
        semidirect_by_derivations(a, &torus.basis, &names)?.with_name(format!("{}_ext", a.name()));
    let s = torus.dim();
    let nilradical = (0..a.dim())
        .map(|i| if i < a.n_even() { i } else { i + s })
        .collect();
    Ok(ExtensionWitness {
        algebra,
        nilradical,
        complement_names: names,
        torus,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilradicalDiagnosis {
    pub is_ideal: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub nil_independent: bool,
    pub holds: bool,
}

/// Restriction of `y -> [y, x_i]` to the leading block, for each basis
/// element `x_i` after it.
pub fn complement_actions(r: &Algebra, m: usize) -> Vec<RatMatrix> {
    let block: Vec<usize> = (0..m).collect();
    (m..r.dim())
        .map(|i| r.right_mult(&r.unit(i)).select(&block, &block))
        .collect()
}

/// Whether the first `m` basis vectors span the nilradical of a solvable
/// algebra whose complement acts nil-independently.
pub fn verify_nilradical(r: &Algebra, m: usize) -> Result<NilradicalDiagnosis> {
    if m > r.dim() {
        return Err(Error::DimensionMismatch {
            expected: r.dim(),
            got: m,
        });
    }
    let ideal_span = Subspace::span(r.dim(), &(0..m).map(|i| r.unit(i)).collect::<Vec<_>>());
    let is_ideal = is_ideal(r, &ideal_span);
    let n = if is_ideal {
        r.leading_block(m).ok()
    } else {
        None
    };
    let nilpotent = n.as_ref().is_some_and(Algebra::is_nilpotent);
    let solvable = r.is_solvable();
    let nil_independent = match &n {
        Some(n) if nilpotent => nil_independent(n, &complement_actions(r, m))?,
        _ => false,
    };
    Ok(NilradicalDiagnosis {
        is_ideal,
        nilpotent,
        solvable,
        nil_independent,
        holds: is_ideal && nilpotent && solvable && nil_independent,
    })
}

/// Matrix of the structure of `r` in the basis given by the columns of `p`.
pub fn transport(r: &Algebra, p: &RatMatrix) -> Result<Algebra> {
    let n = r.dim();
    if p.rows() != n || p.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.rows(),
        });
    }
    for i in 0..n {
        for j in 0..n {
            if r.parity(i) != r.parity(j) && !p.get(i, j).is_zero() {
                return Err(Error::Grading("basis change mixes parities".into()));
            }
        }
    }
    let inv = p.inverse()?;
    let cols = p.columns();
    Algebra::from_fn(
        r.name().to_string(),
        r.kind(),
        r.even_names().to_vec(),
        r.odd_names().to_vec(),
        |i, j| inv.apply(&r.bracket(&cols[i], &cols[j]).expect("dimensions agree")),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub algebra: Algebra,
    /// Columns are the new basis vectors in the old coordinates.
    pub isomorphism: RatMatrix,
}

fn check_cancel(cancel: Option<&AtomicBool>) -> Result<()> {
    match cancel {
        Some(flag) if flag.load(Ordering::Relaxed) => Err(Error::Cancelled),
        _ => Ok(()),
    }
}

fn inconsistent(msg: &str) -> Error {
    Error::InconsistentCorrection(msg.into())
}

/// Brings a maximal solvable extension of a d-locally diagonalizable
/// nilradical (spanned by the first `m` basis vectors) to the form
/// `[n, x_j] = t_j(n)`, `[x_i, x_j] = 0` with `t_j` the diagonal torus of
/// the nilradical and the nilradical's table unchanged.
pub fn normalize_extension(r: &Algebra, m: usize) -> Result<Normalized> {
    normalize_extension_with_cancel(r, m, None)
}

pub fn normalize_extension_with_cancel(
    r: &Algebra,
    m: usize,
    cancel: Option<&AtomicBool>,
) -> Result<Normalized> {
    if r.is_super() {
        return Err(Error::WrongKind(
            "normalization is implemented for Lie algebras".into(),
        ));
    }
    let diag = verify_nilradical(r, m)?;
    if !diag.holds {
        return Err(Error::NotMaximalExtension(format!(
            "first {m} basis vectors are not a nilradical with nil-independent complement"
        )));
    }
    let nil = r.leading_block(m)?;
    if !dld_check(&nil).overall {
        return Err(Error::NotMaximalExtension(
            "nilradical is not d-locally diagonalizable".into(),
        ));
    }
    let torus = diagonal_torus(&nil);
    let s = r.dim() - m;
    if torus.dim() != s {
        return Err(Error::NotMaximalExtension(format!(
            "complement has dimension {s}, the torus {}",
            torus.dim()
        )));
    }
    let rd = root_decomposition(&nil, &torus)?;
    let n = r.dim();
    let block: Vec<usize> = (0..m).collect();

    // A Cartan subalgebra: the generalized null space of a regular element.
    check_cancel(cancel)?;
    let mut regular = None;
    for p in 1..=(4 * n as i64 + 4) {
        let mut x = vec![Rational::zero(); n];
        let mut c = Rational::from_integer(1.into());
        for j in 0..s {
            x[m + j] = c.clone();
            c *= Rational::from_integer(p.into());
        }
        let ad = r.right_mult(&x);
        if ad.select(&block, &block).rank() == m {
            regular = Some(ad);
            break;
        }
    }
    let ad = regular.ok_or_else(|| inconsistent("no regular element found in the complement"))?;
    let cartan = ad.pow(n as u32).nullspace();
    if cartan.len() != s {
        return Err(inconsistent("Cartan subalgebra has the wrong dimension"));
    }
    let comp: Vec<usize> = (m..n).collect();
    let proj = RatMatrix::from_columns(n, &cartan).select(&comp, &(0..s).collect::<Vec<_>>());
    let proj_inv = proj
        .inverse()
        .map_err(|_| inconsistent("Cartan subalgebra meets the nilradical"))?;
    let hs: Vec<Vec<Rational>> = (0..s)
        .map(|j| {
            let mut h = vec![Rational::zero(); n];
            for (k, v) in cartan.iter().enumerate() {
                let c = proj_inv.get(k, j);
                if !c.is_zero() {
                    for (a, b) in h.iter_mut().zip(v) {
                        *a += c * b;
                    }
                }
            }
            h
        })
        .collect();
    for i in 0..s {
        for j in i + 1..s {
            if r.bracket(&hs[i], &hs[j])?.iter().any(|x| !x.is_zero()) {
                return Err(inconsistent("Cartan subalgebra is not abelian"));
            }
        }
    }

    // Simultaneous diagonalization by exponentials of derivations.
    let ms: Vec<RatMatrix> = hs
        .iter()
        .map(|h| r.right_mult(h).select(&block, &block))
        .collect();
    let same_root = |a: usize, b: usize| rd.root_of[a] == rd.root_of[b];
    let mut basis = RatMatrix::identity(m);
    let mut gs: Vec<Vec<Rational>>;
    let mut iterations = 0;
    loop {
        check_cancel(cancel)?;
        let inv = basis.inverse()?;
        let conj: Vec<RatMatrix> = ms.iter().map(|mj| &(&inv * mj) * &basis).collect();
        gs = Vec::with_capacity(s);
        for cm in &conj {
            for a in 0..m {
                for b in 0..m {
                    if a != b && same_root(a, b) && !cm.get(a, b).is_zero() {
                        return Err(inconsistent(
                            "complement acts non-diagonally on a root space",
                        ));
                    }
                }
            }
            gs.push(cm.diagonal_entries());
        }
        let mut step = RatMatrix::zeros(m, m);
        let mut clean = true;
        for a in 0..m {
            for b in 0..m {
                if same_root(a, b) {
                    continue;
                }
                let Some(j) = (0..s).find(|&j| gs[j][a] != gs[j][b]) else {
                    if conj.iter().any(|cm| !cm.get(a, b).is_zero()) {
                        return Err(inconsistent("weights do not separate two root spaces"));
                    }
                    continue;
                };
                let e = conj[j].get(a, b);
                if !e.is_zero() {
                    clean = false;
                    step.set(a, b, e / (&gs[j][b] - &gs[j][a]));
                }
            }
        }
        if clean {
            break;
        }
        iterations += 1;
        if iterations > m + 1 {
            return Err(inconsistent("correction did not terminate"));
        }
        if !is_derivation(&nil, &step, 0).holds {
            return Err(inconsistent("correction step is not a derivation"));
        }
        basis = &basis * &step.exp_nilpotent()?;
    }

    // Express the weights through the torus basis and recombine complement.
    let tvecs: Vec<Vec<Rational>> = torus
        .basis
        .iter()
        .map(RatMatrix::diagonal_entries)
        .collect();
    let tmat = RatMatrix::from_columns(m, &tvecs);
    let mut coeff = RatMatrix::zeros(s, s);
    for (j, g) in gs.iter().enumerate() {
        let c = tmat
            .solve(g)
            .ok_or_else(|| inconsistent("complement weights are not torus weights"))?;
        for (k, v) in c.into_iter().enumerate() {
            coeff.set(j, k, v);
        }
    }
    let coeff_inv = coeff
        .inverse()
        .map_err(|_| inconsistent("complement does not span the torus"))?;
    let mut phi = RatMatrix::zeros(n, n);
    for a in 0..m {
        for b in 0..m {
            phi.set(a, b, basis.get(a, b).clone());
        }
    }
    for k in 0..s {
        for j in 0..s {
            let c = coeff_inv.get(k, j);
            if c.is_zero() {
                continue;
            }
            for (row, v) in hs[j].iter().enumerate() {
                let cur = phi.get(row, m + k).clone();
                phi.set(row, m + k, cur + c * v);
            }
        }
    }
    check_cancel(cancel)?;
    let transported = transport(r, &phi)?;
    let complement: Vec<String> = (m..n).map(|i| r.basis_name(i).to_string()).collect();
    let expected = semidirect_by_derivations(&nil, &torus.basis, &complement)?.with_name(r.name());
    if transported != expected {
        return Err(inconsistent(
            "transported table differs from the normal form",
        ));
    }
    Ok(Normalized {
        algebra: transported,
        isomorphism: phi,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OuterDerivations {
    pub exists: bool,
    pub count: usize,
    pub der_dim: usize,
    pub inner_dim: usize,
}

pub fn has_outer_derivations(r: &Algebra) -> OuterDerivations {
    let der_dim = derivation_space(r).dim();
    let inner_dim = inner_derivations(r).len();
    let count = der_dim - inner_dim;
    OuterDerivations {
        exists: count > 0,
        count,
        der_dim,
        inner_dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactla::rat;

    #[test]
    fn n9_fails_ii_and_iii() {
        let rep = dld_check(&corpus::n9());
        assert!(rep.condition_i);
        assert!(!rep.condition_ii);
        assert!(!rep.condition_iii);
        assert_eq!(rep.zero_root_indices, vec![0]);
        let w = rep.condition_ii_witness.unwrap();
        assert_eq!(w.root, vec!["1", "0"]);
        assert!((1..=4).contains(&w.row) && (1..=4).contains(&w.col));
    }

    #[test]
    fn filiform_passes() {
        for n in 5..=10 {
            assert!(dld_check(&corpus::filiform_model(n)).overall, "n = {n}");
        }
    }

    #[test]
    fn extensions() {
        let ext = build_maximal_extension(&corpus::filiform_model(8)).unwrap();
        assert_eq!(ext.algebra.dim(), 10);
        assert_eq!(ext.algebra.center().dim(), 0);
        assert!(verify_nilradical(&ext.algebra, 8).unwrap().holds);
        let ab = build_maximal_extension(&corpus::abelian(3)).unwrap();
        assert_eq!(ab.algebra.dim(), 6);
        assert!(verify_nilradical(&ab.algebra, 3).unwrap().holds);
    }

    #[test]
    fn zero_torus() {
        // every diagonal weight is forced to zero by [e1,e2]=e1-like relations
        let a = Algebra::lie_from_ints("z", "e", 2, &[(1, 2, &[(1, 1), (1, 2)])]).unwrap();
        assert_eq!(build_maximal_extension(&a), Err(Error::ZeroTorus));
    }

    #[test]
    fn direct_sum_is_not_an_extension() {
        let n = corpus::heisenberg3();
        let b = Algebra::lie_from_ints("b", "f", 3, &[(1, 2, &[(1, 3)])]).unwrap();
        let sum = crate::construct::assemble(&n, &b, &Default::default(), &[]).unwrap();
        assert!(!verify_nilradical(&sum, 3).unwrap().holds);
    }

    #[test]
    fn normal_form_is_fixed() {
        let ext = build_maximal_extension(&corpus::filiform_model(8)).unwrap();
        let out = normalize_extension(&ext.algebra, 8).unwrap();
        assert_eq!(out.algebra, ext.algebra);
        assert_eq!(out.isomorphism, RatMatrix::identity(10));
    }

    #[test]
    fn normalizes_scrambled_extension() {
        let l = corpus::filiform_model(6);
        let ext = build_maximal_extension(&l).unwrap();
        let r = &ext.algebra;
        // exp(ad_u) on the nilradical, u = e1 + 2 e3, plus a shift of x1
        let mut u = vec![rat(0); 8];
        u[0] = rat(1);
        u[2] = rat(2);
        let block: Vec<usize> = (0..6).collect();
        let ad = r.right_mult(&u).select(&block, &block);
        let g = ad.exp_nilpotent().unwrap();
        let mut p = RatMatrix::identity(8);
        for a in 0..6 {
            for b in 0..6 {
                p.set(a, b, g.get(a, b).clone());
            }
        }
        p.set(3, 6, rat(5));
        let scrambled = transport(r, &p).unwrap();
        assert_ne!(&scrambled, r);
        let out = normalize_extension(&scrambled, 6).unwrap();
        assert_eq!(&out.algebra, r);
        let again = normalize_extension(&out.algebra, 6).unwrap();
        assert_eq!(again.isomorphism, RatMatrix::identity(8));
    }

    #[test]
    fn cancellation() {
        let ext = build_maximal_extension(&corpus::filiform_model(6)).unwrap();
        let flag = AtomicBool::new(true);
        assert_eq!(
            normalize_extension_with_cancel(&ext.algebra, 6, Some(&flag)),
            Err(Error::Cancelled)
        );
    }

    #[test]
    fn outer_derivations() {
        let ext = build_maximal_extension(&corpus::filiform_model(8)).unwrap();
        assert!(!has_outer_derivations(&ext.algebra).exists);
        let ab = has_outer_derivations(&corpus::abelian(2));
        assert!(ab.exists);
        assert_eq!(ab.count, 4);
    }
}
