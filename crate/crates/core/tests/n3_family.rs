//! The five nil-independent derivations of the 20-dimensional quotient `n3`,
//! read from the corpus in their own basis order.

use std::path::PathBuf;

use torusforge::algfile;
use torusforge::deriv::{is_derivation, nil_independent};
use torusforge::torus::{diagonal_torus, rank_of};
use torusforge::{Algebra, RatMatrix, Subspace};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn load() -> (Algebra, Vec<RatMatrix>) {
    let n3 = algfile::read_algebra(corpus("n3.alg")).unwrap();
    let set = algfile::read_matrix_set(corpus("n3_triangular.json")).unwrap();
    assert_eq!(set.names(), ["d1", "d2", "d3", "d4", "d5"]);
    let ds = set.on(&n3).unwrap();
    (n3, ds)
}

fn diagonals(ms: &[RatMatrix]) -> Vec<Vec<torusforge::Rational>> {
    ms.iter().map(RatMatrix::diagonal_entries).collect()
}

#[test]
fn family_members_are_derivations() {
    let (n3, ds) = load();
    for (i, d) in ds.iter().enumerate() {
        assert!(is_derivation(&n3, d, 0).holds, "d{}", i + 1);
    }
    // d1 and d2 are not diagonalizable
    assert!(!ds[0].is_diagonal() && !ds[1].is_diagonal());
}

#[test]
fn family_is_nil_independent_and_exceeds_the_rank() {
    let (n3, ds) = load();
    assert_eq!(nil_independent(&n3, &ds), Ok(true));
    let rank = rank_of(&n3).unwrap();
    assert_eq!(rank, 4);
    assert!(ds.len() > rank);
}

#[test]
fn diagonal_parts_of_the_first_two_are_not_derivations() {
    let (n3, ds) = load();
    assert!(!is_derivation(&n3, &ds[0].diagonal_part(), 0).holds);
    assert!(!is_derivation(&n3, &ds[1].diagonal_part(), 0).holds);
}

#[test]
fn combined_family_spans_the_diagonal_torus() {
    let (n3, ds) = load();
    let sum = &ds[0] + &ds[1];
    assert!(sum.is_diagonal());
    let family = [sum, ds[2].clone(), ds[3].clone(), ds[4].clone()];
    let span = Subspace::span(n3.dim(), &diagonals(&family));
    assert_eq!(span, diagonal_torus(&n3).span(n3.dim()));
    assert_eq!(span.dim(), 4);
}
