//! Exact rational linear algebra.
//!
//! Everything downstream (derivation systems, weight systems, cocycle
//! equations) reduces to rank and nullspace computations here. Dense
//! routines use fraction-free elimination; [`sparse`] handles the tall sparse
//! systems produced by the cochain and derivation builders.

mod matrix;
mod poly;
mod rational;
pub mod sparse;
mod subspace;

pub use matrix::{canonical_basis, RatMatrix};
pub use poly::Poly;
pub use rational::{
    common_denominator, format_rational, parse_rational, primitive_integer_vector, rat, ratio,
    Rational,
};
pub use subspace::Subspace;

use crate::error::{Error, Result};

/// Basis of the kernel in reduced column echelon form.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    m.nullspace()
}

pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}

pub fn is_nilpotent_matrix(m: &RatMatrix) -> bool {
    m.is_nilpotent()
}

pub fn jordan_chevalley(m: &RatMatrix) -> Result<(RatMatrix, RatMatrix)> {
    m.jordan_chevalley()
}

pub fn exp_nilpotent(d: &RatMatrix) -> Result<RatMatrix> {
    d.exp_nilpotent()
}

/// JSON array of rows, each entry a canonical rational string.
pub fn matrix_to_json(m: &RatMatrix) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.rows())
            .map(|r| {
                serde_json::Value::Array(
                    m.row(r)
                        .iter()
                        .map(|q| serde_json::Value::String(format_rational(q)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn matrix_from_json(v: &serde_json::Value) -> Result<RatMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        let parsed: Result<Vec<Rational>> = entries
            .iter()
            .map(|e| {
                e.as_str()
                    .ok_or_else(|| Error::Parse("matrix entry must be a string".into()))
                    .and_then(parse_rational)
            })
            .collect();
        out.push(parsed?);
    }
    if let Some(first) = out.first() {
        if out.iter().any(|r| r.len() != first.len()) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
    }
    Ok(RatMatrix::from_rows(out))
}

pub fn vector_to_json(v: &[Rational]) -> serde_json::Value {
    serde_json::Value::Array(
        v.iter()
            .map(|q| serde_json::Value::String(format_rational(q)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_round_trip() {
        let m = RatMatrix::from_rows(vec![vec![ratio(1, 2), rat(-3)], vec![rat(0), ratio(-7, 9)]]);
        let j = matrix_to_json(&m);
        assert_eq!(j.to_string(), r#"[["1/2","-3"],["0","-7/9"]]"#);
        assert_eq!(matrix_from_json(&j).unwrap(), m);
        assert!(matrix_from_json(&serde_json::json!([["2/4"]])).is_err());
    }
}
