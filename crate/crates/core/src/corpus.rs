//! Builders for the bundled example algebras. The files under `corpus/` are
//! generated from these and checked against them in the test suite.

use crate::algebra::{Algebra, Kind, SparseVec};
use crate::algfile::{self, MatrixSet};
use crate::construct::{
    assemble, ideal_closure, quotient, tensor_current, CommAssocAlgebra, CrossAction,
};
use crate::exactla::{rat, RatMatrix};
use crate::torus::diagonal_from_ints;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn unit(k: usize) -> SparseVec {
    vec![(k, rat(1))]
}

pub fn heisenberg3() -> Algebra {
    Algebra::lie_from_ints("heisenberg3", "e", 3, &[(1, 2, &[(1, 3)])]).expect("heisenberg")
}

pub fn abelian(n: usize) -> Algebra {
    Algebra::abelian(n).with_name(format!("abelian_{n}"))
}

/// `[e1, ei] = e(i+1)` for `2 <= i <= n-1`.
pub fn filiform_model(n: usize) -> Algebra {
    let brackets = (1..n - 1).map(|i| (0, i, unit(i + 1)));
    Algebra::new(
        format!("filiform_model_{n}"),
        Kind::Lie,
        names("e", n),
        Vec::new(),
        brackets,
    )
    .expect("model filiform")
}

/// Nine-dimensional algebra with a zero root and a four-dimensional root
/// space on which a nilpotent derivation acts non-diagonally.
pub fn n9() -> Algebra {
    Algebra::lie_from_ints(
        "n9",
        "e",
        9,
        &[
            (1, 2, &[(1, 3)]),
            (1, 3, &[(1, 4)]),
            (1, 4, &[(1, 5)]),
            (1, 6, &[(1, 7)]),
            (1, 8, &[(1, 9)]),
            (2, 3, &[(1, 8)]),
            (2, 4, &[(1, 9)]),
            (2, 5, &[(1, 9)]),
            (4, 3, &[(1, 9)]),
        ],
    )
    .expect("n9")
}

/// Nilpotent derivation of [`n9`]: `e2 -> 2e3 - e4`, `e3 -> 2e4 - e5`,
/// `e4 -> 2e5`.
pub fn n9_d() -> RatMatrix {
    let mut d = RatMatrix::zeros(9, 9);
    for (col, row, v) in [(1, 2, 2), (1, 3, -1), (2, 3, 2), (2, 4, -1), (3, 4, 2)] {
        d.set(row, col, rat(v));
    }
    d
}

pub fn n9_t_alpha() -> RatMatrix {
    diagonal_from_ints(&[0, 1, 1, 1, 1, 0, 0, 2, 2])
}

pub fn n9_t_beta() -> RatMatrix {
    diagonal_from_ints(&[0, 0, 0, 0, 0, 1, 1, 0, 0])
}

/// Eight-dimensional filiform algebra used as the Lie factor of the
/// current algebra below.
pub fn n1() -> Algebra {
    let mut brackets: Vec<(usize, usize, SparseVec)> =
        (1..7).map(|i| (0, i, unit(i + 1))).collect();
    brackets.extend([
        (1, 2, unit(6)),
        (1, 3, unit(7)),
        (1, 4, unit(7)),
        (3, 2, unit(7)),
    ]);
    Algebra::new("n1", Kind::Lie, names("x", 8), Vec::new(), brackets).expect("n1")
}

/// `y1 y2 = y3`.
pub fn n2() -> CommAssocAlgebra {
    CommAssocAlgebra::new("n2", names("y", 3), vec![(0, 1, unit(2))]).expect("n2")
}

pub fn n1_tensor_n2() -> Algebra {
    tensor_current(&n1(), &n2()).expect("n1 * n2")
}

/// Seeds of the ideal factored out of `n1 * n2`.
pub fn n3_ideal_seeds(t: &Algebra) -> Vec<Vec<crate::exactla::Rational>> {
    ["x1*y3", "x2*y3", "x8*y1", "x8*y2"]
        .iter()
        .map(|n| t.unit(t.index_of(n).expect("tensor basis name")))
        .collect()
}

/// The 20-dimensional quotient of `n1 * n2`.
pub fn n3() -> Algebra {
    let t = n1_tensor_n2();
    let j = ideal_closure(&t, &n3_ideal_seeds(&t));
    quotient(&t, &j).expect("n3").with_name("n3")
}

/// `[z2, z1] = z6`, `[z3, z2] = z7`.
pub fn n4() -> Algebra {
    Algebra::lie_from_ints("n4", "z", 8, &[(2, 1, &[(1, 6)]), (3, 2, &[(1, 7)])]).expect("n4")
}

/// Action of [`n3`] on [`n4`], every acting map sending `z1..z4` into the
/// centre.
pub fn n3_on_n4(n3: &Algebra) -> CrossAction {
    let table: [(&str, usize, i64, usize); 9] = [
        ("x2*y1", 1, 1, 5),
        ("x3*y1", 1, 1, 5),
        ("x1*y1", 2, 1, 6),
        ("x1*y2", 2, 1, 6),
        ("x3*y1", 2, 1, 6),
        ("x2*y2", 3, -1, 7),
        ("x3*y2", 3, 1, 7),
        ("x4*y2", 4, 1, 8),
        ("x7*y1", 4, 1, 8),
    ];
    CrossAction::new(
        table
            .iter()
            .map(|(a, z, c, v)| {
                (
                    n3.index_of(a).expect("n3 basis name"),
                    z - 1,
                    vec![(v - 1, rat(*c))],
                )
            })
            .collect(),
    )
}

/// The 28-dimensional semidirect sum of [`n3`] and [`n4`].
pub fn n3_n4() -> Algebra {
    let n3 = n3();
    assemble(&n3, &n4(), &n3_on_n4(&n3), &[])
        .expect("n3 + n4")
        .with_name("n3_n4")
}

/// Filiform `[e1, ei] = e(i+1)`, `[e2, ei] = e(i+2)` extended by `x`
/// acting with weight `i` on `ei`.
pub fn r46(n: usize) -> Algebra {
    let mut brackets: Vec<(usize, usize, SparseVec)> =
        (1..n - 1).map(|i| (0, i, unit(i + 1))).collect();
    brackets.extend((2..n - 2).map(|i| (1, i, unit(i + 2))));
    brackets.extend((0..n).map(|i| (i, n, vec![(i, rat(i as i64 + 1))])));
    let mut basis = names("e", n);
    basis.push("x".into());
    Algebra::new(format!("r46_n{n}"), Kind::Lie, basis, Vec::new(), brackets).expect("r46")
}

/// Even `e1, e2, e3`, odd `f1, f2, f3`:
/// `[e1, e2] = e3`, `[f1, f2] = e3`, `[e1, f1] = f3`.
pub fn super_small() -> Algebra {
    Algebra::new(
        "s33",
        Kind::LieSuper,
        names("e", 3),
        names("f", 3),
        vec![(0, 1, unit(2)), (3, 4, unit(2)), (0, 3, unit(5))],
    )
    .expect("s33")
}

/// Even `e1`, odd `f1`, `[f1, f1] = e1`.
pub fn super_false() -> Algebra {
    Algebra::new(
        "super_false",
        Kind::LieSuper,
        names("e", 1),
        names("f", 1),
        vec![(1, 1, unit(0))],
    )
    .expect("super_false")
}

/// Basis of [`n3`] in the order under which [`n3_triangular_family`] is
/// written: the `y1`, `y2` parts of `x1..x7` first, then the `y3` part.
pub fn n3_triangular_order() -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=7 {
        out.push(format!("x{i}*y1"));
        out.push(format!("x{i}*y2"));
    }
    for i in 3..=8 {
        out.push(format!("x{i}*y3"));
    }
    out
}

/// Five nil-independent derivations of [`n3`], two of them not
/// diagonalizable, whose diagonals span more than the diagonal torus. Given
/// as diagonal entries plus elementary terms `E_{i,j}: e_i -> e_j` over
/// [`n3_triangular_order`] (1-based), returned as matrices on [`n3`]'s own
/// basis.
pub fn n3_triangular_family(n3: &Algebra) -> Vec<RatMatrix> {
    let order = n3_triangular_order();
    let pos: Vec<usize> = order
        .iter()
        .map(|x| n3.index_of(x).expect("n3 basis name"))
        .collect();
    let set = |idx: &[usize], v: i64| idx.iter().map(move |&i| (i, v)).collect::<Vec<_>>();
    let j1 = [9, 10, 18];
    let j2 = [4, 6, 8, 10, 12, 14, 19, 20];
    let diag: [Vec<(usize, i64)>; 5] = [
        [set(&[3, 4, 11, 12, 15, 19], 1), set(&j1, -1)].concat(),
        [set(&j1, 1), set(&[5, 6, 11, 12, 13, 14, 16, 19, 20], 1)].concat(),
        [set(&[1], 1), set(&[11, 12, 13, 14], -1), set(&j2, -1)].concat(),
        [set(&j1, 1), set(&[7, 8, 13, 14, 17, 20], 1)].concat(),
        [set(&j2, 1), set(&[2, 15, 16, 17, 18], 1)].concat(),
    ];
    let off: [&[(usize, usize, i64)]; 5] = [
        &[(17, 18, -1), (7, 9, -1), (8, 10, -1)],
        &[(7, 9, 1), (8, 10, 1), (17, 18, 1)],
        &[],
        &[],
        &[],
    ];
    diag.iter()
        .zip(off)
        .map(|(d, o)| {
            let mut m = RatMatrix::zeros(20, 20);
            for &(i, v) in d {
                let p = pos[i - 1];
                let cur = m.get(p, p).clone();
                m.set(p, p, cur + rat(v));
            }
            for &(i, j, v) in o {
                // e_i -> e_j: column of e_i, row of e_j
                m.set(pos[j - 1], pos[i - 1], rat(v));
            }
            m
        })
        .collect()
}

/// Every bundled algebra, keyed by its file stem.
pub fn algebras() -> Vec<Algebra> {
    let mut out = vec![heisenberg3(), abelian(2), abelian(3)];
    out.extend((6..=10).map(filiform_model));
    out.extend([
        n9(),
        n1(),
        n3(),
        n4(),
        n3_n4(),
        r46(8),
        super_small(),
        super_false(),
    ]);
    out
}

/// The contents of the `corpus/` directory as `(file name, text)` pairs.
pub fn files() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = algebras()
        .iter()
        .map(|a| (format!("{}.alg", a.name()), algfile::algebra_to_string(a)))
        .collect();
    out.push(("n2.ca".into(), algfile::comm_assoc_to_string(&n2())));
    let n9 = n9();
    out.push((
        "n9_d.json".into(),
        algfile::matrix_set_to_string(&MatrixSet::over(&n9, vec![("d".into(), n9_d())])),
    ));
    out.push((
        "n9_torus.json".into(),
        algfile::matrix_set_to_string(&MatrixSet::over(
            &n9,
            vec![
                ("t_alpha".into(), n9_t_alpha()),
                ("t_beta".into(), n9_t_beta()),
            ],
        )),
    ));
    let n3 = n3();
    let family = n3_triangular_family(&n3)
        .into_iter()
        .enumerate()
        .map(|(i, d)| (format!("d{}", i + 1), d))
        .collect();
    let family = MatrixSet::over(&n3, family)
        .reorder(n3_triangular_order())
        .expect("order is a permutation of the n3 basis");
    out.push((
        "n3_triangular.json".into(),
        algfile::matrix_set_to_string(&family),
    ));
    out.sort();
    out
}
