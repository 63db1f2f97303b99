//! One function per subcommand. Each takes parsed inputs and returns the
//! report body, an exit code and a one-line log message.

use serde::Serialize;
use serde_json::{json, Value};

use torusforge::algfile::{self, AlgFile, MatrixSet};
use torusforge::cohom::{self, fingerprint_with_limit, Fingerprint};
use torusforge::construct::{
    ideal_closure, quotient, semidirect_by_derivations, tensor_current, CommAssocAlgebra,
};
use torusforge::deriv::{derivation_space, inner_derivations};
use torusforge::dld::{self, build_maximal_extension, extension_by, normalize_extension};
use torusforge::exactla::{format_rational, matrix_to_json, vector_to_json};
use torusforge::torus::{build_s_system, diagonal_torus, grading_holds, root_decomposition, Torus};
use torusforge::{Algebra, Error, RatMatrix, Rational, Result};

pub const PASS: i32 = 0;
pub const CHECK_FAILED: i32 = 1;

/// What a subcommand produced. `algebra` is set by commands whose main
/// output is an algebra file.
pub struct Outcome {
    pub body: Value,
    pub code: i32,
    pub log: String,
    pub algebra: Option<Algebra>,
}

impl Outcome {
    fn report(body: impl Serialize, code: i32, log: String) -> Self {
        Outcome {
            body: serde_json::to_value(body).expect("report serializes"),
            code,
            log,
            algebra: None,
        }
    }

    fn algebra(a: Algebra, log: String) -> Self {
        Outcome {
            body: serde_json::to_value(AlgFile::from_algebra(&a)).expect("algebra serializes"),
            code: PASS,
            log,
            algebra: Some(a),
        }
    }
}

fn vectors(vs: &[Vec<Rational>]) -> Vec<Value> {
    vs.iter().map(|v| vector_to_json(v)).collect()
}

fn matrices(ms: &[RatMatrix]) -> Vec<Value> {
    ms.iter().map(matrix_to_json).collect()
}

fn root_strings(r: &[Rational]) -> Vec<String> {
    r.iter().map(format_rational).collect()
}

pub fn validate(a: &Algebra) -> Outcome {
    let report = a.validate();
    let violations: Vec<String> = report
        .violations
        .iter()
        .map(|v| algfile::describe_violation(a, v))
        .collect();
    let valid = violations.is_empty();
    let log = if valid {
        format!("{}: valid", a.name())
    } else {
        format!("{}: {} violated identities", a.name(), violations.len())
    };
    Outcome::report(
        json!({
            "name": a.name(),
            "kind": a.kind().as_str(),
            "dim": a.dim(),
            "valid": valid,
            "violations": violations,
        }),
        if valid { PASS } else { CHECK_FAILED },
        log,
    )
}

pub fn analyze(a: &Algebra, h2_limit: Option<usize>) -> Outcome {
    let series = a.series();
    let center = a.center();
    let generators = a.generators().ok().map(|g| {
        g.iter()
            .map(|&i| a.basis_name(i).to_string())
            .collect::<Vec<_>>()
    });
    let super_condition = a.super_lie_condition().ok();
    let torus = diagonal_torus(a);
    let fp: Fingerprint = fingerprint_with_limit(a, None, h2_limit);
    let log = format!(
        "{}: dim {}, {}",
        a.name(),
        a.dim(),
        if series.nilpotent {
            "nilpotent"
        } else if series.solvable {
            "solvable"
        } else {
            "not solvable"
        }
    );
    Outcome::report(
        json!({
            "name": a.name(),
            "kind": a.kind().as_str(),
            "dim": a.dim(),
            "even_dim": a.n_even(),
            "odd_dim": a.n_odd(),
            "series": series,
            "center": { "dim": center.dim(), "basis": vectors(center.basis()) },
            "generators": generators,
            "super_lie_condition": super_condition,
            "torus_dim": torus.dim(),
            "fingerprint": fp,
        }),
        PASS,
        log,
    )
}

pub fn der(a: &Algebra) -> Outcome {
    let der = derivation_space(a);
    let inner = inner_derivations(a);
    let log = format!(
        "{}: Der {} (even {}, odd {}), inner {}",
        a.name(),
        der.dim(),
        der.even.len(),
        der.odd.len(),
        inner.len()
    );
    Outcome::report(
        json!({
            "name": a.name(),
            "dim_even": der.even.len(),
            "dim_odd": der.odd.len(),
            "dim_inner": inner.len(),
            "even_basis": matrices(&der.even),
            "odd_basis": matrices(&der.odd),
        }),
        PASS,
        log,
    )
}

fn torus_vectors(t: &Torus) -> Vec<Value> {
    t.basis
        .iter()
        .map(|m| vector_to_json(&m.diagonal_entries()))
        .collect()
}

pub fn torus(a: &Algebra) -> Outcome {
    let sys = build_s_system(a);
    let rank = sys.rank();
    let t = diagonal_torus(a);
    let log = format!("{}: torus of dimension {}", a.name(), t.dim());
    Outcome::report(
        json!({
            "name": a.name(),
            "variables": sys.variables,
            "equations": sys.equations(),
            "s_rank": rank,
            "torus_dim": t.dim(),
            "torus_basis": torus_vectors(&t),
            "rank_formula_holds": t.dim() + rank == a.dim(),
        }),
        PASS,
        log,
    )
}

/// Torus given by a matrix file, or the diagonal torus.
pub fn chosen_torus(a: &Algebra, given: Option<&MatrixSet>) -> Result<Torus> {
    match given {
        None => Ok(diagonal_torus(a)),
        Some(set) => {
            let ms = set.on(a)?;
            if let Some(i) = ms.iter().position(|m| !m.is_diagonal()) {
                return Err(Error::Validation(format!(
                    "torus element {:?} is not diagonal",
                    set.matrices[i].0
                )));
            }
            Ok(Torus::from_diagonals(ms))
        }
    }
}

pub fn roots(a: &Algebra, given: Option<&MatrixSet>) -> Result<Outcome> {
    let t = chosen_torus(a, given)?;
    let rd = root_decomposition(a, &t)?;
    let root_of: Vec<Value> = rd
        .root_of
        .iter()
        .enumerate()
        .map(|(i, r)| json!({ "basis": a.basis_name(i), "root": root_strings(r) }))
        .collect();
    let spaces: Vec<Value> = rd
        .roots
        .iter()
        .zip(&rd.spaces)
        .map(|(r, s)| {
            json!({
                "root": root_strings(r),
                "basis": s.iter().map(|&i| a.basis_name(i)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let log = format!(
        "{}: {} roots over a torus of dimension {}",
        a.name(),
        rd.roots.len(),
        t.dim()
    );
    Ok(Outcome::report(
        json!({
            "name": a.name(),
            "torus_dim": t.dim(),
            "torus_basis": torus_vectors(&t),
            "root_of": root_of,
            "roots": spaces,
            "simple_roots": rd.simple.iter().map(|r| root_strings(r)).collect::<Vec<_>>(),
            "primitive_roots": rd.primitive.iter().map(|r| root_strings(r)).collect::<Vec<_>>(),
            "integer_spanning": rd.integer_spanning,
            "contains_zero": rd.contains_zero(),
            "grading_holds": grading_holds(a, &rd),
        }),
        PASS,
        log,
    ))
}

pub fn dld(a: &Algebra) -> Result<Outcome> {
    if !a.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let rep = dld::dld_check(a);
    let failed: Vec<&str> = [
        (rep.condition_i, "(i)"),
        (rep.condition_ii, "(ii)"),
        (rep.condition_iii, "(iii)"),
    ]
    .iter()
    .filter(|(ok, _)| !ok)
    .map(|(_, l)| *l)
    .collect();
    let log = if rep.overall {
        format!("{}: d-locally diagonalizable", a.name())
    } else {
        format!("{}: fails {}", a.name(), failed.join(", "))
    };
    let zero_names: Vec<&str> = rep
        .zero_root_indices
        .iter()
        .map(|&i| a.basis_name(i))
        .collect();
    let block = rep.condition_ii_witness.as_ref().map(|w| {
        json!({
            "derivation": w.derivation,
            "root": w.root,
            "row": a.basis_name(w.row),
            "col": a.basis_name(w.col),
            "value": w.value,
        })
    });
    Ok(Outcome::report(
        json!({
            "name": a.name(),
            "condition_i": rep.condition_i,
            "condition_i_witness": rep.condition_i_witness,
            "condition_ii": rep.condition_ii,
            "condition_ii_witness": block,
            "condition_iii": rep.condition_iii,
            "zero_root_basis": zero_names,
            "overall": rep.overall,
        }),
        if rep.overall { PASS } else { CHECK_FAILED },
        log,
    ))
}

pub fn extend(a: &Algebra, given: Option<&MatrixSet>) -> Result<Outcome> {
    let ext = match given {
        None => build_maximal_extension(a)?,
        Some(_) => extension_by(a, chosen_torus(a, given)?)?,
    };
    let log = format!(
        "{}: extension of dimension {} by {}",
        a.name(),
        ext.algebra.dim(),
        ext.complement_names.join(", ")
    );
    Ok(Outcome::algebra(ext.algebra, log))
}

pub fn normalize(r: &Algebra, m: usize) -> Result<Outcome> {
    let out = normalize_extension(r, m)?;
    let identity = out.isomorphism == RatMatrix::identity(r.dim());
    let log = format!(
        "{}: normalized{}",
        r.name(),
        if identity {
            " (already in normal form)"
        } else {
            ""
        }
    );
    Ok(Outcome::report(
        json!({
            "name": r.name(),
            "nilradical_dim": m,
            "already_normal": identity,
            "isomorphism": matrix_to_json(&out.isomorphism),
            "algebra": AlgFile::from_algebra(&out.algebra),
        }),
        PASS,
        log,
    ))
}

pub fn cohomology(a: &Algebra, degree: usize, limit: Option<usize>) -> Result<Outcome> {
    let dim = cohom::cohomology_dim_with_limit(a, degree, limit)?;
    let log = format!("{}: dim H^{degree} = {dim}", a.name());
    Ok(Outcome::report(
        json!({ "name": a.name(), "degree": degree, "dim": dim }),
        PASS,
        log,
    ))
}

pub fn compare(
    a: &Algebra,
    a_digest: &str,
    b: &Algebra,
    b_digest: &str,
    limit: Option<usize>,
) -> Outcome {
    let fa = fingerprint_with_limit(a, None, limit);
    let fb = fingerprint_with_limit(b, None, limit);
    let c = cohom::compare_fingerprints(&fa, &fb);
    let log = match &c.verdict {
        cohom::Verdict::Distinguished(f) => format!("{} and {} differ in {f}", a.name(), b.name()),
        cohom::Verdict::Inconclusive => format!("{} and {}: inconclusive", a.name(), b.name()),
    };
    Outcome::report(
        json!({
            "left": { "name": a.name(), "input_digest": a_digest, "fingerprint": fa },
            "right": { "name": b.name(), "input_digest": b_digest, "fingerprint": fb },
            "verdict": c.verdict,
            "all_differing": c.all_differing,
        }),
        PASS,
        log,
    )
}

pub fn construct_tensor(l: &Algebra, c: &CommAssocAlgebra) -> Result<Outcome> {
    let t = tensor_current(l, c)?;
    let log = format!("{} * {}: dimension {}", l.name(), c.name(), t.dim());
    Ok(Outcome::algebra(t, log))
}

pub fn construct_quotient(a: &Algebra, seeds: &[Vec<Rational>]) -> Result<Outcome> {
    let ideal = ideal_closure(a, seeds);
    let q = quotient(a, &ideal)?;
    let log = format!(
        "{}: ideal of dimension {}, quotient of dimension {}",
        a.name(),
        ideal.dim(),
        q.dim()
    );
    Ok(Outcome::algebra(q, log))
}

pub fn construct_semidirect(n: &Algebra, set: &MatrixSet) -> Result<Outcome> {
    let ms = set.on(n)?;
    let r = semidirect_by_derivations(n, &ms, &set.names())?.with_name(format!("{}_ext", n.name()));
    let log = format!("{}: semidirect sum of dimension {}", n.name(), r.dim());
    Ok(Outcome::algebra(r, log))
}
