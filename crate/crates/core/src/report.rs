//! Canonical JSON for the computed objects. Object keys are sorted,
//! integers that fit in 64 bits are numbers and larger ones are decimal
//! strings, rationals are `[num, den]` pairs.

use crate::degeneration::LimitData;
use crate::exact::{Int, IntVec, Rat};
use crate::git::{ChamberDecomposition, RealFiberFan};
use crate::hilbert::{FiberClass, RepresentativeSet};
use crate::oracle::OracleReport;
use crate::polyhedral::{Cone, Fan, MinFace, Polyhedron};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub fn int(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn rat(x: &Rat) -> Value {
    json!([int(x.numer()), int(x.denom())])
}

pub fn int_vec(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn int_vecs(vs: &[IntVec]) -> Value {
    Value::Array(vs.iter().map(|v| int_vec(v)).collect())
}

pub fn rat_vec(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn cone(c: &Cone) -> Value {
    json!({
        "dim": c.dim(),
        "rays": int_vecs(c.rays()),
        "lineality": int_vecs(c.lineality()),
        "facets": int_vecs(c.facets()),
        "equations": int_vecs(c.equations()),
    })
}

pub fn fan(f: &Fan) -> Value {
    json!({
        "ambient_dim": f.ambient_dim(),
        "lineality": int_vecs(f.lineality()),
        "rays": int_vecs(f.rays()),
        "maximal_cones": f.cone_indices(),
        "maximal_cone_count": f.len(),
        "support": cone(f.support()),
    })
}

pub fn polyhedron(p: &Polyhedron) -> Value {
    if p.is_empty() {
        return json!({"empty": true, "ambient_dim": p.ambient_dim()});
    }
    json!({
        "empty": false,
        "ambient_dim": p.ambient_dim(),
        "dim": p.affine_dim(),
        "vertices": Value::Array(p.vertices().iter().map(|v| rat_vec(v)).collect()),
        "rays": int_vecs(p.rays()),
        "lineality": int_vecs(p.lineality()),
        "bounded": p.is_bounded(),
        "lattice": p.is_lattice(),
    })
}

pub fn min_face(m: &MinFace) -> Value {
    json!({"value": rat(&m.value), "vertices": m.vertices, "rays": m.rays})
}

pub fn chambers(d: &ChamberDecomposition) -> Value {
    Value::Array(
        d.chambers
            .iter()
            .enumerate()
            .map(|(i, c)| {
                json!({
                    "index": i,
                    "cone": cone(&c.cone),
                    "witness": int_vec(&c.witness),
                    "vertex_count": c.vertex_count,
                    "signature": c.signature,
                })
            })
            .collect(),
    )
}

pub fn real_fiber_fan(r: &RealFiberFan) -> Value {
    json!({"fan": fan(&r.fan), "polyhedron": polyhedron(&r.polyhedron)})
}

pub fn representatives(r: &RepresentativeSet) -> Value {
    json!({
        "chambers": Value::Array(
            r.chambers
                .iter()
                .map(|c| json!({
                    "chamber": c.chamber,
                    "generators": int_vecs(&c.generators),
                    "multipliers": Value::Array(c.multipliers.iter().map(int).collect()),
                    "vertex_count": c.vertex_count,
                    "representatives": int_vecs(&c.representatives),
                }))
                .collect(),
        ),
        "all": int_vecs(&r.all()),
    })
}

pub fn classes(cs: &[FiberClass]) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| {
                json!({
                    "members": int_vecs(&c.members),
                    "maximal_cone_count": c.fan.len(),
                })
            })
            .collect(),
    )
}

pub fn limit_data(d: &LimitData) -> Value {
    json!({
        "lambda": int_vec(&d.lambda),
        "degrees": int_vecs(&d.degrees),
        "n_values": Value::Array(d.n_values.iter().map(int).collect()),
        "min_faces": Value::Array(d.min_faces.iter().map(min_face).collect()),
        "vanishing_pairs": Value::Array(
            d.vanishing_pairs
                .iter()
                .map(|&(i, j)| json!([int_vec(&d.degrees[i]), int_vec(&d.degrees[j])]))
                .collect(),
        ),
    })
}

pub fn oracle(r: &OracleReport) -> Value {
    json!({
        "bound": r.bound,
        "tested": r.tested,
        "maximal_cones_hit": r.maximal_cones_hit,
        "cones_hit": r.cones_hit,
        "misclassified": int_vecs(&r.misclassified),
        "passed": r.passed(),
    })
}

/// Pretty-printed with a trailing newline. Keys come out sorted because
/// `serde_json` maps are ordered.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
