//! Command implementations. Each returns a JSON report plus whether the
//! answer is an acceptance (exit 0) or a clean rejection (exit 1); input
//! problems come back as `Err` (exit 2).

use std::fs;
use std::path::Path;

use coincidence::census::{growth_run, PrimeBudget, WitnessStrategy};
use coincidence::decompose::{decompose_traced, verify};
use coincidence::format::{int_rows_to_strings, parse_matrix, MatrixDocument};
use coincidence::planar::{classify, spot_check, PlanarFamilyParams};
use coincidence::{
    csg_member, Error, ExactMatrix, ExactVector, Execution, FieldContext, FieldElement, Lattice, Membership,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::{Pair, Strategy};

pub struct Report {
    pub document: Value,
    pub accepted: bool,
}

type Outcome = std::result::Result<Report, String>;

fn read_matrix(path: &Path) -> std::result::Result<ExactMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_matrix(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(p: &Pair) -> std::result::Result<(Lattice, ExactMatrix), String> {
    let a = read_matrix(&p.lattice)?;
    let lattice = Lattice::new(a).map_err(|e| format!("{}: {e}", p.lattice.display()))?;
    let t = read_matrix(&p.matrix)?;
    Ok((lattice, t))
}

fn matrix(m: &ExactMatrix) -> Value {
    serde_json::to_value(MatrixDocument::from_matrix(m)).expect("serializable")
}

fn vector(v: &ExactVector) -> Value {
    v.iter().map(|e| Value::String(e.to_string())).collect()
}

fn primes(b: &PrimeBudget) -> Value {
    b.primes().iter().map(|p| Value::String(p.to_string())).collect()
}

fn num(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

/// `check`, or with `index_only` the reduced `index` report.
pub fn check(p: &Pair, index_only: bool) -> Outcome {
    let (lattice, t) = load(p)?;
    let membership = csg_member(&lattice, &t).map_err(|e| e.to_string())?;
    let orthogonal = t.is_orthogonal();
    if index_only {
        let sigma = membership.certificate().map(|c| num(&c.sigma)).unwrap_or(Value::Null);
        return Ok(Report {
            accepted: membership.is_member(),
            document: json!({
                "command": "index",
                "csg_member": membership.is_member(),
                "sigma": sigma,
            }),
        });
    }
    let mut doc = json!({
        "command": "check",
        "dimension": num(lattice.dim()),
        "commensurate": membership.is_member(),
        "csg_member": membership.is_member(),
        "orthogonal": orthogonal,
        "oc_member": membership.is_member() && orthogonal,
    });
    let fields = doc.as_object_mut().expect("object");
    match &membership {
        Membership::Member(cert) => {
            fields.insert("M".into(), matrix(&cert.conjugate));
            fields.insert("sigma".into(), num(&cert.sigma));
            fields.insert(
                "intersection_basis".into(),
                json!(int_rows_to_strings(&cert.intersection_basis.basis.to_rows())),
            );
        }
        Membership::NotCoincidence {
            row,
            col,
            entry,
            conjugate,
        } => {
            fields.insert("M".into(), matrix(conjugate));
            fields.insert("sigma".into(), Value::Null);
            fields.insert(
                "irrational_entry".into(),
                json!({ "row": num(row + 1), "col": num(col + 1), "value": num(entry) }),
            );
        }
        Membership::NotOrthogonal => unreachable!("csg_member does not test orthogonality"),
    }
    Ok(Report {
        accepted: membership.is_member() && orthogonal,
        document: doc,
    })
}

pub fn decompose(p: &Pair) -> Outcome {
    let (lattice, t) = load(p)?;
    let (seq, steps) = match decompose_traced(&lattice, &t) {
        Ok(found) => found,
        Err(Error::NotReflectiveLattice { i, j, k, ratio }) => {
            return Ok(Report {
                accepted: false,
                document: json!({
                    "command": "decompose",
                    "reflective": false,
                    "witness": {
                        "i": num(i),
                        "j": num(j),
                        "k": num(k),
                        "ratio": ratio,
                        "meaning": format!("(a{j}, a{i}) / (a{k}, a{k}) is irrational"),
                    },
                }),
            })
        }
        Err(Error::NotCoincidenceIsometry(why)) => {
            return Ok(Report {
                accepted: false,
                document: json!({
                    "command": "decompose",
                    "reflective": true,
                    "coincidence_isometry": false,
                    "reason": why,
                }),
            })
        }
        Err(e) => return Err(e.to_string()),
    };
    let verified = verify(&seq, &lattice);
    let coords = |c: &[BigInt]| c.iter().map(num).collect::<Value>();
    let steps: Vec<Value> = steps
        .iter()
        .map(|s| {
            json!({
                "basis_index": num(s.basis_index + 1),
                "vector": s.vector.as_ref().map(|v| coords(&v.coords)),
                "ambient": s.vector.as_ref().map(|v| vector(&v.ambient)),
                "reflection": s.reflection.as_ref().map(matrix),
                "residual": matrix(&s.residual),
            })
        })
        .collect();
    let reflections: Vec<Value> = seq
        .reflections()
        .map_err(|e| e.to_string())?
        .iter()
        .map(matrix)
        .collect();
    Ok(Report {
        accepted: verified,
        document: json!({
            "command": "decompose",
            "reflective": true,
            "coincidence_isometry": true,
            "count": num(seq.len()),
            "vectors": seq.vectors.iter().map(|v| coords(&v.coords)).collect::<Vec<_>>(),
            "reflections": reflections,
            "steps": steps,
            "product": matrix(&seq.product().map_err(|e| e.to_string())?),
            "verified": verified,
        }),
    })
}

pub fn classify2d(a: &str, b2: &str, d: u64, trials: Option<usize>, seed: u64, exec: Execution) -> Outcome {
    let ctx = FieldContext::from_radicand(d).map_err(|e| format!("--d: {e}"))?;
    let a = FieldElement::parse_in(a, ctx).map_err(|e| format!("--a: {e}"))?;
    let b2 = FieldElement::parse_in(b2, ctx).map_err(|e| format!("--b2: {e}"))?;
    let params = PlanarFamilyParams::new(a, b2).map_err(|e| e.to_string())?;
    let class = classify(&params);
    let shear = params.shear_ratio();
    let mut doc = json!({
        "command": "classify2d",
        "a": num(params.a()),
        "b2": num(params.b_squared()),
        "d": num(d),
        "a_rational": params.a().is_rational(),
        "b2_rational": params.b_squared().is_rational(),
        "shear_ratio": num(&shear),
        "shear_ratio_rational": shear.is_rational(),
        "case": num(class.case.number()),
        "case_name": class.case.name(),
        "group": class.case.group_description(),
        "generators": class.generators.iter().map(matrix).collect::<Vec<_>>(),
    });
    let mut accepted = true;
    if let Some(trials) = trials {
        let section = match spot_check(&params, trials, seed, exec) {
            Ok(r) => {
                accepted = r.consistent();
                json!({
                    "trials": num(trials),
                    "seed": num(seed),
                    "coincidence_reflections": num(r.coincidence_reflections),
                    "isometries_sampled": num(r.isometries_sampled),
                    "isometries_accepted": num(r.isometries_accepted),
                    "consistent": r.consistent(),
                    "violations": r.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            }
            Err(e @ Error::UnrepresentableB(_)) => json!({ "skipped": e.to_string() }),
            Err(e) => return Err(e.to_string()),
        };
        doc.as_object_mut()
            .expect("object")
            .insert("spot_check".into(), section);
    }
    Ok(Report {
        accepted,
        document: doc,
    })
}

pub fn census(rounds: usize, strategy: Strategy, exec: Execution) -> Outcome {
    let (core_strategy, name) = match strategy {
        Strategy::Exhaustive => (WitnessStrategy::Exhaustive(exec), "exhaustive"),
        Strategy::PrimeProduct => (WitnessStrategy::PrimeProduct, "prime-product"),
    };
    let run = growth_run(rounds, core_strategy).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = run
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let w = &r.witness;
            let one_plus: BigInt = &w.y * &w.y + 1u32;
            json!({
                "round": num(k + 1),
                "budget": primes(&r.budget),
                "y": num(&w.y),
                "one_plus_y_squared": num(one_plus),
                "new_prime": num(&w.new_prime),
                "support": w.support.iter().map(num).collect::<Vec<_>>(),
                "reflection": matrix(&w.reflection),
            })
        })
        .collect();
    Ok(Report {
        accepted: true,
        document: json!({
            "command": "census",
            "strategy": name,
            "rounds": rows,
        }),
    })
}
