//! JSON file formats: algebras, commutative associative algebras, named
//! matrix sets and vector lists.
//!
//! Every coefficient is a canonical rational string. Parsing is strict: a
//! file that parses is written back byte for byte by the matching `to_string`
//! function when its entries are already in canonical order.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Kind, SparseVec, Violation};
use crate::construct::CommAssocAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{format_rational, matrix_from_json, matrix_to_json, parse_rational};
use crate::exactla::{RatMatrix, Rational};

/// The on-disk shape of an algebra, usable for embedding an algebra in a
/// larger JSON document.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgFile {
    name: String,
    kind: Kind,
    even_basis: Vec<String>,
    odd_basis: Vec<String>,
    brackets: Vec<Entry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    left: String,
    right: String,
    value: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CommAssocFile {
    name: String,
    kind: String,
    basis: Vec<String>,
    products: Vec<Entry>,
}

const COMM_ASSOC_KIND: &str = "comm-assoc";

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

fn finish(mut s: String) -> String {
    s.push('\n');
    s
}

fn render_value(names: &[String], v: &SparseVec) -> Vec<(String, String)> {
    v.iter()
        .map(|(k, c)| (format_rational(c), names[*k].clone()))
        .collect()
}

/// Resolves `[coef, name]` pairs, rejecting unknown names, repeated names and
/// zero or non-canonical coefficients.
fn parse_value(
    index: &HashMap<&str, usize>,
    value: &[(String, String)],
    key: &str,
) -> Result<SparseVec> {
    if value.is_empty() {
        return Err(Error::Parse(format!("{key}: empty value")));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(value.len());
    for (coef, name) in value {
        let k = *index
            .get(name.as_str())
            .ok_or_else(|| Error::Parse(format!("{key}: unknown basis name {name:?}")))?;
        if !seen.insert(k) {
            return Err(Error::Parse(format!("{key}: {name:?} listed twice")));
        }
        let c = parse_rational(coef).map_err(|e| Error::Parse(format!("{key}: {e}")))?;
        if num_traits::Zero::is_zero(&c) {
            return Err(Error::Parse(format!("{key}: zero coefficient")));
        }
        out.push((k, c));
    }
    out.sort_by_key(|(k, _)| *k);
    Ok(out)
}

fn name_index(names: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(Error::Parse(format!("duplicate basis name {n:?}")));
        }
    }
    Ok(index)
}

/// Resolves bracket or product entries. Each unordered pair may appear once.
fn parse_entries(
    index: &HashMap<&str, usize>,
    entries: &[Entry],
) -> Result<Vec<(usize, usize, SparseVec)>> {
    let mut pairs: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let key = format!("[{}, {}]", e.left, e.right);
        let lookup = |n: &str| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| Error::Parse(format!("{key}: unknown basis name {n:?}")))
        };
        let (i, j) = (lookup(&e.left)?, lookup(&e.right)?);
        if let Some(first) = pairs.insert((i.min(j), i.max(j)), (i, j)) {
            let msg = if first == (i, j) {
                "given more than once"
            } else {
                "both orientations given"
            };
            return Err(Error::Parse(format!("{key}: {msg}")));
        }
        out.push((i, j, parse_value(index, &e.value, &key)?));
    }
    Ok(out)
}

/// Human-readable form of a validation failure.
pub fn describe_violation(a: &Algebra, v: &Violation) -> String {
    match v {
        Violation::Antisymmetry { index } => {
            format!(
                "[{0}, {0}] must vanish for an even element",
                a.basis_name(*index)
            )
        }
        Violation::Jacobi { triple, defect } => {
            let terms: Vec<String> = defect
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| format!("{} {}", format_rational(c), a.basis_name(k)))
                .collect();
            format!(
                "Jacobi identity fails on ({}, {}, {}) with defect {}",
                a.basis_name(triple.0),
                a.basis_name(triple.1),
                a.basis_name(triple.2),
                terms.join(" + ")
            )
        }
    }
}

/// Parses an algebra file and checks its structure (names, coefficients,
/// orientation, grading) without checking the Jacobi identity.
pub fn parse_table(text: &str) -> Result<Algebra> {
    let file: AlgFile = serde_json::from_str(text).map_err(json_error)?;
    if file.kind == Kind::Lie && !file.odd_basis.is_empty() {
        return Err(Error::Grading(
            "kind \"lie\" requires an empty odd_basis".into(),
        ));
    }
    let names: Vec<String> = file
        .even_basis
        .iter()
        .chain(&file.odd_basis)
        .cloned()
        .collect();
    let index = name_index(&names)?;
    let brackets = parse_entries(&index, &file.brackets)?;
    Algebra::new(
        file.name,
        file.kind,
        file.even_basis,
        file.odd_basis,
        brackets,
    )
}

/// Parses and validates an algebra file.
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let a = parse_table(text)?;
    let report = a.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::Validation(describe_violation(&a, v)));
    }
    Ok(a)
}

pub fn read_algebra(path: impl AsRef<Path>) -> Result<Algebra> {
    parse_algebra(&read(path.as_ref())?)
}

impl AlgFile {
    pub fn from_algebra(a: &Algebra) -> Self {
        let names = a.names();
        AlgFile {
            name: a.name().to_string(),
            kind: a.kind(),
            even_basis: a.even_names().to_vec(),
            odd_basis: a.odd_names().to_vec(),
            brackets: a
                .entries()
                .map(|(i, j, v)| Entry {
                    left: names[i].clone(),
                    right: names[j].clone(),
                    value: render_value(&names, v),
                })
                .collect(),
        }
    }
}

pub fn algebra_to_string(a: &Algebra) -> String {
    finish(serde_json::to_string_pretty(&AlgFile::from_algebra(a)).expect("serializable"))
}

pub fn parse_comm_assoc(text: &str) -> Result<CommAssocAlgebra> {
    let file: CommAssocFile = serde_json::from_str(text).map_err(json_error)?;
    if file.kind != COMM_ASSOC_KIND {
        return Err(Error::Parse(format!(
            "kind must be {COMM_ASSOC_KIND:?}, found {:?}",
            file.kind
        )));
    }
    let index = name_index(&file.basis)?;
    let products = parse_entries(&index, &file.products)?;
    CommAssocAlgebra::new(file.name, file.basis.clone(), products)
}

pub fn read_comm_assoc(path: impl AsRef<Path>) -> Result<CommAssocAlgebra> {
    parse_comm_assoc(&read(path.as_ref())?)
}

pub fn comm_assoc_to_string(c: &CommAssocAlgebra) -> String {
    let names = c.basis();
    let file = CommAssocFile {
        name: c.name().to_string(),
        kind: COMM_ASSOC_KIND.into(),
        basis: names.to_vec(),
        products: c
            .entries()
            .map(|(i, j, v)| Entry {
                left: names[i].clone(),
                right: names[j].clone(),
                value: render_value(names, v),
            })
            .collect(),
    };
    finish(serde_json::to_string_pretty(&file).expect("serializable"))
}

/// Named matrices written over an explicit basis order, which may be any
/// permutation of the algebra's own basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSet {
    pub algebra: String,
    pub basis: Vec<String>,
    pub matrices: Vec<(String, RatMatrix)>,
}

impl MatrixSet {
    /// Matrices given over `a`'s own basis.
    pub fn over(a: &Algebra, matrices: Vec<(String, RatMatrix)>) -> Self {
        MatrixSet {
            algebra: a.name().to_string(),
            basis: a.names(),
            matrices,
        }
    }

    /// The same maps written over the basis order `basis`.
    pub fn reorder(&self, basis: Vec<String>) -> Result<Self> {
        let perm = permutation(&self.basis, &basis)?;
        Ok(MatrixSet {
            algebra: self.algebra.clone(),
            matrices: self
                .matrices
                .iter()
                .map(|(n, m)| (n.clone(), m.select(&perm, &perm)))
                .collect(),
            basis,
        })
    }

    /// The matrices as maps on `a`'s own basis.
    pub fn on(&self, a: &Algebra) -> Result<Vec<RatMatrix>> {
        Ok(self
            .reorder(a.names())?
            .matrices
            .into_iter()
            .map(|(_, m)| m)
            .collect())
    }

    pub fn names(&self) -> Vec<String> {
        self.matrices.iter().map(|(n, _)| n.clone()).collect()
    }
}

/// `perm[i]` is the position in `from` of `to[i]`.
fn permutation(from: &[String], to: &[String]) -> Result<Vec<usize>> {
    let index = name_index(from)?;
    if to.len() != from.len() {
        return Err(Error::DimensionMismatch {
            expected: from.len(),
            got: to.len(),
        });
    }
    let mut seen = BTreeSet::new();
    to.iter()
        .map(|n| {
            let p = *index
                .get(n.as_str())
                .ok_or_else(|| Error::Parse(format!("basis name {n:?} not in the algebra")))?;
            if !seen.insert(p) {
                return Err(Error::Parse(format!("basis name {n:?} listed twice")));
            }
            Ok(p)
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    algebra: String,
    basis: Vec<String>,
    matrices: Vec<NamedMatrix>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedMatrix {
    name: String,
    rows: serde_json::Value,
}

pub fn parse_matrix_set(text: &str) -> Result<MatrixSet> {
    let file: MatrixFile = serde_json::from_str(text).map_err(json_error)?;
    name_index(&file.basis)?;
    let n = file.basis.len();
    let mut matrices = Vec::with_capacity(file.matrices.len());
    for m in file.matrices {
        let mat = matrix_from_json(&m.rows)
            .map_err(|e| Error::Parse(format!("matrix {:?}: {e}", m.name)))?;
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: mat.rows().max(mat.cols()),
            });
        }
        matrices.push((m.name, mat));
    }
    Ok(MatrixSet {
        algebra: file.algebra,
        basis: file.basis,
        matrices,
    })
}

pub fn read_matrix_set(path: impl AsRef<Path>) -> Result<MatrixSet> {
    parse_matrix_set(&read(path.as_ref())?)
}

pub fn matrix_set_to_string(set: &MatrixSet) -> String {
    let file = MatrixFile {
        algebra: set.algebra.clone(),
        basis: set.basis.clone(),
        matrices: set
            .matrices
            .iter()
            .map(|(name, m)| NamedMatrix {
                name: name.clone(),
                rows: matrix_to_json(m),
            })
            .collect(),
    };
    finish(serde_json::to_string_pretty(&file).expect("serializable"))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorFile {
    vectors: Vec<Vec<(String, String)>>,
}

/// A list of vectors of `a`, each written as `[coef, name]` pairs.
pub fn parse_vectors(a: &Algebra, text: &str) -> Result<Vec<Vec<Rational>>> {
    let file: VectorFile = serde_json::from_str(text).map_err(json_error)?;
    let names = a.names();
    let index = name_index(&names)?;
    file.vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let sparse = parse_value(&index, v, &format!("vector {i}"))?;
            let mut dense = vec![Rational::from_integer(0.into()); a.dim()];
            for (k, c) in sparse {
                dense[k] = c;
            }
            Ok(dense)
        })
        .collect()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn round_trip() {
        for a in [corpus::n9(), corpus::super_small(), corpus::heisenberg3()] {
            let s = algebra_to_string(&a);
            let b = parse_algebra(&s).unwrap();
            assert_eq!(a, b);
            assert_eq!(b.name(), a.name());
            assert_eq!(algebra_to_string(&b), s);
        }
    }

    fn h3_with(brackets: &str) -> String {
        format!(
            r#"{{"name": "h", "kind": "lie", "even_basis": ["e1", "e2", "e3"], "odd_basis": [], "brackets": [{brackets}]}}"#
        )
    }

    #[test]
    fn strictness() {
        let ok = h3_with(r#"{"left": "e1", "right": "e2", "value": [["1", "e3"]]}"#);
        assert_eq!(parse_algebra(&ok).unwrap(), corpus::heisenberg3());
        let bad = [
            r#"{"left": "e1", "right": "e2", "value": [["2/4", "e3"]]}"#,
            r#"{"left": "e1", "right": "e2", "value": [["0", "e3"]]}"#,
            r#"{"left": "e1", "right": "e2", "value": []}"#,
            r#"{"left": "e1", "right": "e4", "value": [["1", "e3"]]}"#,
            r#"{"left": "e1", "right": "e2", "value": [["1", "e3"], ["2", "e3"]]}"#,
            r#"{"left": "e1", "right": "e2", "value": [["1", "e3"]]}, {"left": "e2", "right": "e1", "value": [["-1", "e3"]]}"#,
            r#"{"left": "e1", "right": "e2", "value": [["1", "e3"]]}, {"left": "e1", "right": "e2", "value": [["1", "e3"]]}"#,
        ];
        for b in bad {
            assert!(
                matches!(parse_algebra(&h3_with(b)), Err(Error::Parse(_))),
                "{b}"
            );
        }
        let double = h3_with(
            r#"{"left": "e1", "right": "e2", "value": [["1", "e3"]]}, {"left": "e2", "right": "e1", "value": [["-1", "e3"]]}"#,
        );
        let msg = parse_algebra(&double).unwrap_err().to_string();
        assert!(msg.contains("both orientations"), "{msg}");
    }

    #[test]
    fn jacobi_failure_is_reported() {
        let text = h3_with(
            r#"{"left": "e1", "right": "e2", "value": [["1", "e3"]]}, {"left": "e1", "right": "e3", "value": [["1", "e1"]]}"#,
        );
        match parse_algebra(&text) {
            Err(Error::Validation(m)) => assert!(m.contains("Jacobi"), "{m}"),
            other => panic!("{other:?}"),
        }
        let square = h3_with(r#"{"left": "e1", "right": "e1", "value": [["1", "e3"]]}"#);
        assert!(matches!(parse_algebra(&square), Err(Error::Validation(_))));
    }

    #[test]
    fn matrix_sets_follow_their_basis() {
        let a = corpus::heisenberg3();
        let mut m = RatMatrix::zeros(3, 3);
        m.set(2, 0, crate::exactla::rat(1));
        let set = MatrixSet::over(&a, vec![("d".into(), m.clone())]);
        let moved = set
            .reorder(vec!["e3".into(), "e1".into(), "e2".into()])
            .unwrap();
        assert_eq!(moved.matrices[0].1.get(0, 1), &crate::exactla::rat(1));
        let text = matrix_set_to_string(&moved);
        let back = parse_matrix_set(&text).unwrap();
        assert_eq!(back, moved);
        assert_eq!(back.on(&a).unwrap(), vec![m]);
    }

    #[test]
    fn comm_assoc_round_trip() {
        let c = corpus::n2();
        let s = comm_assoc_to_string(&c);
        assert_eq!(parse_comm_assoc(&s).unwrap(), c);
    }
}
