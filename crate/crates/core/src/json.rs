//! JSON encodings of polyhedra, fans, projections and reports.
//!
//! Rationals are strings `"p/q"` (or `"p"`); integer entries are JSON
//! numbers, falling back to strings beyond 64 bits. On input, rationals may
//! be given as numbers or strings.
//!
//! A polyhedron is either `{"vertices", "rays"?, "lines"?}` or
//! `{"inequalities": [{"normal", "rhs"}], "equalities"?}` meaning
//! `normal·x ≤ rhs` (resp. `=`), with an optional `"dim"`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::arith::{format_rat, parse_rat, IVec, QVec, Rat};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::gitfan::{GitFan, GradedProjection, RealizedPair, SearchReport};
use crate::lattice::{Checked, LocationReport};
use crate::polyhedron::{HRep, Halfspace, Polyhedron, VRep};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn ivec_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

pub fn qvec_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rat(x))).collect())
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad(format!("expected an integer, got {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| bad(format!("expected an integer, got {s:?}"))),
        other => Err(bad(format!("expected an integer, got {other}"))),
    }
}

fn parse_rat_value(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            n.as_i64().map(|x| Rat::from_integer(x.into())).ok_or_else(|| bad(format!("use a \"p/q\" string for {n}")))
        }
        Value::String(s) => parse_rat(s),
        other => Err(bad(format!("expected a rational, got {other}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn parse_ivec(v: &Value) -> Result<IVec> {
    array(v, "integer vector")?.iter().map(parse_int).collect()
}

fn parse_qvec(v: &Value) -> Result<QVec> {
    array(v, "rational vector")?.iter().map(parse_rat_value).collect()
}

fn parse_rows<T>(obj: &Map<String, Value>, key: &str, f: fn(&Value) -> Result<T>) -> Result<Vec<T>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(Vec::new()),
        Some(v) => array(v, key)?.iter().map(f).collect(),
    }
}

fn parse_halfspace(v: &Value) -> Result<Halfspace> {
    let o = v.as_object().ok_or_else(|| bad("constraint must be an object {\"normal\", \"rhs\"}"))?;
    let normal = parse_ivec(o.get("normal").ok_or_else(|| bad("constraint without \"normal\""))?)?;
    let rhs = parse_rat_value(o.get("rhs").ok_or_else(|| bad("constraint without \"rhs\""))?)?;
    Ok(Halfspace::new(normal, rhs))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| bad("expected a JSON object"))
}

pub fn parse_polyhedron(v: &Value) -> Result<Polyhedron> {
    let o = object(v)?;
    let dim_hint = match o.get("dim") {
        Some(d) => Some(d.as_u64().ok_or_else(|| bad("\"dim\" must be a positive integer"))? as usize),
        None => None,
    };
    if o.contains_key("vertices") {
        let vertices = parse_rows(o, "vertices", parse_qvec)?;
        let rays = parse_rows(o, "rays", parse_ivec)?;
        let lines = parse_rows(o, "lines", parse_ivec)?;
        let dim = dim_hint.or_else(|| vertices.first().map(Vec::len)).ok_or_else(|| bad("no vertices"))?;
        Polyhedron::from_v(dim, &VRep { vertices, rays, lines })
    } else if o.contains_key("inequalities") || o.contains_key("equalities") {
        let inequalities = parse_rows(o, "inequalities", parse_halfspace)?;
        let equalities = parse_rows(o, "equalities", parse_halfspace)?;
        let dim = dim_hint
            .or_else(|| inequalities.iter().chain(&equalities).next().map(|h| h.normal.len()))
            .ok_or_else(|| bad("no constraints"))?;
        Polyhedron::from_h(dim, &HRep::new(inequalities, equalities))
    } else {
        Err(bad("polyhedron needs \"vertices\" or \"inequalities\""))
    }
}

fn halfspaces_value(hs: &[Halfspace]) -> Value {
    Value::Array(hs.iter().map(|h| json!({"normal": ivec_value(&h.normal), "rhs": format_rat(&h.rhs)})).collect())
}

fn ivecs_value(vs: &[IVec]) -> Value {
    Value::Array(vs.iter().map(|v| ivec_value(v)).collect())
}

pub fn polyhedron_value(p: &Polyhedron) -> Value {
    json!({
        "dim": p.ambient_dim(),
        "vertices": Value::Array(p.vertices().iter().map(|v| qvec_value(v)).collect()),
        "rays": ivecs_value(p.rays()),
        "lines": ivecs_value(p.lines()),
        "inequalities": halfspaces_value(p.inequalities()),
        "equalities": halfspaces_value(p.equalities()),
    })
}

pub fn cone_value(c: &Cone) -> Value {
    json!({"rays": ivecs_value(c.rays()), "lines": ivecs_value(c.lines())})
}

pub fn fan_value(f: &Fan) -> Value {
    json!({
        "dim": f.ambient_dim(),
        "maximal_cones": Value::Array(f.maximal_cones().iter().map(cone_value).collect()),
    })
}

pub fn parse_fan(v: &Value) -> Result<Fan> {
    let o = object(v)?;
    let dim = o.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("fan needs \"dim\""))? as usize;
    let cones = array(o.get("maximal_cones").ok_or_else(|| bad("fan needs \"maximal_cones\""))?, "maximal_cones")?
        .iter()
        .map(|c| {
            let c = object(c)?;
            Cone::from_generators(dim, &parse_rows(c, "rays", parse_ivec)?, &parse_rows(c, "lines", parse_ivec)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Fan::new(dim, cones)
}

pub fn parse_projection(v: &Value) -> Result<GradedProjection> {
    let o = object(v)?;
    let weights = parse_rows(o, "weights", parse_ivec)?;
    let g = GradedProjection::new(weights)?;
    if let Some(n) = o.get("n") {
        if n.as_u64() != Some(g.n() as u64) {
            return Err(bad(format!("\"n\" is {n} but {} weights are given", g.n())));
        }
    }
    if let Some(m) = o.get("m") {
        if m.as_u64() != Some(g.m() as u64) {
            return Err(bad(format!("\"m\" is {m} but weights have length {}", g.m())));
        }
    }
    Ok(g)
}

pub fn projection_value(g: &GradedProjection) -> Value {
    json!({"n": g.n(), "m": g.m(), "weights": ivecs_value(g.weights())})
}

fn checked_value(c: &Checked) -> Value {
    json!({
        "scales": c.scales.iter().map(|&(k, s)| json!([k, s])).collect::<Vec<_>>(),
        "window": c.window.as_ref().map(|w| w.to_string()),
    })
}

pub fn location_report_value(r: &LocationReport) -> Value {
    json!({
        "verdict": r.verdict.as_str(),
        "witness": r.witness,
        "witness_kind": r.witness_kind.map(|k| k.as_str()),
        "failed_scale": r.failed_scale.map(|(k, s)| json!([k, s])),
        "checked": checked_value(&r.checked),
    })
}

pub fn search_report_value(r: &SearchReport) -> Value {
    let failures: Vec<Value> = r.failures.iter().map(|((k, s), w)| json!({"k": k, "s": s, "witness": w})).collect();
    json!({
        "verdict": r.verdict.as_str(),
        "k": r.k,
        "k_max": r.k_max,
        "s_max": r.s_max,
        "witness": r.witness(),
        "failures": failures,
        "checked": checked_value(&r.checked),
    })
}

pub fn git_fan_value(f: &GitFan) -> Value {
    json!({
        "weight_cone": cone_value(&f.weight_cone),
        "orbit_cone_count": f.orbit_cones.len(),
        "maximal_cones": Value::Array(f.maximal_cones().iter().map(cone_value).collect()),
        "fan_verified": f.fan_verified,
    })
}

pub fn realized_pair_value(r: &RealizedPair) -> Value {
    json!({
        "projection": projection_value(&r.projection),
        "u1": ivec_value(&r.u1),
        "u2": ivec_value(&r.u2),
        "functionals": ivecs_value(&r.functionals),
        "a": ivec_value(&r.a),
        "b": ivec_value(&r.b),
        "translation": ivec_value(&r.translation),
    })
}

/// Lattice points as a JSON array of integer arrays.
pub fn points_value<T: AsRef<[i64]>>(pts: &[T]) -> Value {
    Value::Array(pts.iter().map(|p| json!(p.as_ref())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;

    #[test]
    fn polyhedron_round_trip() {
        let p = Polyhedron::from_points(&[&[165, 0], &[175, 0], &[0, 385]]).unwrap();
        let v = polyhedron_value(&p);
        assert_eq!(parse_polyhedron(&v).unwrap(), p);
        let h = json!({"inequalities": [
            {"normal": [-1, 0], "rhs": 0}, {"normal": [0, -1], "rhs": "0"}, {"normal": [1, 1], "rhs": "3/2"}
        ]});
        let tri = parse_polyhedron(&h).unwrap();
        assert_eq!(qvec_value(&tri.vertices()[1]), json!(["0", "3/2"]));
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_polyhedron(&json!({"vertices": [[1, "x"]]})).is_err());
        assert!(parse_polyhedron(&json!({"points": []})).is_err());
        assert!(parse_polyhedron(&json!([1, 2])).is_err());
        assert!(parse_projection(&json!({"n": 3, "m": 1, "weights": [[1], [1]]})).is_err());
        assert_eq!(parse_projection(&json!({"weights": [[2], [4]]})).unwrap_err(), Error::NotSurjective);
    }

    #[test]
    fn fan_round_trip() {
        let sq = Polyhedron::from_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let f = crate::fan::normal_fan(&sq);
        assert_eq!(parse_fan(&fan_value(&f)).unwrap(), f);
    }

    #[test]
    fn big_integers_become_strings() {
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(int_value(&big), Value::String(big.to_string()));
        assert_eq!(parse_int(&int_value(&big)).unwrap(), big);
        assert_eq!(ivec_value(&ivec(&[1, -2])), json!([1, -2]));
    }
}
