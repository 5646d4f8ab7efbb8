//! JSON formats for polytopes, triangulations, groups and matrices.
//!
//! Integers are read and written exactly (no `f64` round trip); any
//! non-integral number is rejected.
//!
//! ```text
//! polytope       {"dim": 2, "vertices": [[0,0],[1,0],[0,1]]}
//! triangulation  {"polytope": {...}, "simplices": [[[0,0],[1,0],[0,1]], ...]}
//! group          {"kind": "zd", "dim": 2, "generators": [[0,0],[1,0]]}
//!                {"kind": "gl2z", "generators": [[[1,0],[0,1]], ...]}
//! matrix         {"columns": [[1,0],[0,1]]}
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::group::{BoundaryReport, ElementSet, GroupElement, GroupKind, GroupPresentation, Matrix2};
use crate::minkowski::{Decomposition, EqualityReport};
use crate::point::{LatticePoint, PointSet, Rational};
use crate::polytope::LatticePolytope;
use crate::triangulation::{IntegerMatrix, LatticeSimplex, UnimodularityFlags, SimplexClass, Triangulation, TriangulationReport};

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| format_err(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| format_err(format!("{what} must be an array")))
}

pub fn parse_integer(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| format_err(format!("{n} is not an integer")))
        }
        other => Err(format_err(format!("expected an integer, got {other}"))),
    }
}

fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| format_err(format!("{what} must be a non-negative integer")))
}

pub fn parse_point(v: &Value) -> Result<LatticePoint> {
    let coords = array(v, "a point")?
        .iter()
        .map(parse_integer)
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticePoint::new(coords))
}

fn parse_points(v: &Value, dim: usize) -> Result<Vec<LatticePoint>> {
    array(v, "a point list")?
        .iter()
        .map(|p| {
            let p = parse_point(p)?;
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            Ok(p)
        })
        .collect()
}

pub fn integer_value(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

pub fn rational_value(q: &Rational) -> Value {
    if q.is_integer() {
        integer_value(q.numer())
    } else {
        Value::String(q.to_string())
    }
}

pub fn point_value(p: &LatticePoint) -> Value {
    Value::Array(p.coords().iter().map(integer_value).collect())
}

pub fn point_set_value(s: &PointSet) -> Value {
    Value::Array(s.iter().map(point_value).collect())
}

pub fn polytope_from_value(v: &Value) -> Result<LatticePolytope> {
    LatticePolytope::hull(vertices_from_value(v)?)
}

/// The vertex list of a polytope file, in file order and without taking the
/// hull.
pub fn vertices_from_value(v: &Value) -> Result<Vec<LatticePoint>> {
    let dim = parse_usize(field(v, "dim")?, "\"dim\"")?;
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    parse_points(field(v, "vertices")?, dim)
}

pub fn polytope_value(p: &LatticePolytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(point_value).collect::<Vec<_>>(),
    })
}

pub fn triangulation_from_value(v: &Value) -> Result<Triangulation> {
    let polytope = polytope_from_value(field(v, "polytope")?)?;
    let simplices = array(field(v, "simplices")?, "\"simplices\"")?
        .iter()
        .map(|s| LatticeSimplex::new(parse_points(s, polytope.dim())?))
        .collect::<Result<Vec<_>>>()?;
    Triangulation::new(polytope, simplices)
}

pub fn simplex_value(s: &LatticeSimplex) -> Value {
    Value::Array(s.vertices().iter().map(point_value).collect())
}

pub fn triangulation_value(t: &Triangulation) -> Value {
    json!({
        "polytope": polytope_value(t.polytope()),
        "simplices": t.simplices().iter().map(simplex_value).collect::<Vec<_>>(),
    })
}

fn parse_matrix2(v: &Value) -> Result<Matrix2> {
    let rows = array(v, "a 2x2 matrix")?;
    if rows.len() != 2 {
        return Err(format_err("a GL(2,Z) generator needs exactly 2 rows"));
    }
    let mut entries = Vec::with_capacity(4);
    for row in rows {
        let row = array(row, "a matrix row")?;
        if row.len() != 2 {
            return Err(format_err("a GL(2,Z) generator row needs exactly 2 entries"));
        }
        for e in row {
            entries.push(parse_integer(e)?);
        }
    }
    let [a, b, c, d]: [BigInt; 4] = entries.try_into().expect("four entries");
    Matrix2::new(a, b, c, d)
}

/// Parses a group file. The flag reports whether the identity had to be
/// added to the generators.
pub fn group_from_value(v: &Value) -> Result<(GroupPresentation, bool)> {
    let kind = field(v, "kind")?
        .as_str()
        .ok_or_else(|| format_err("\"kind\" must be a string"))?;
    let gens = array(field(v, "generators")?, "\"generators\"")?;
    match kind {
        "zd" => {
            let dim = parse_usize(field(v, "dim")?, "\"dim\"")?;
            let points = parse_points(field(v, "generators")?, dim)?;
            GroupPresentation::with_identity(GroupKind::Zd(dim), points.into_iter().map(GroupElement::Vector))
        }
        "gl2z" => {
            let mats = gens.iter().map(parse_matrix2).collect::<Result<Vec<_>>>()?;
            GroupPresentation::with_identity(GroupKind::Gl2z, mats.into_iter().map(GroupElement::Matrix))
        }
        other => Err(format_err(format!("unknown group kind \"{other}\""))),
    }
}

pub fn group_value(g: &GroupPresentation) -> Value {
    let gens = element_set_value(g.generators());
    match g.kind() {
        GroupKind::Zd(d) => json!({"kind": "zd", "dim": d, "generators": gens}),
        GroupKind::Gl2z => json!({"kind": "gl2z", "generators": gens}),
    }
}

pub fn element_value(e: &GroupElement) -> Value {
    match e {
        GroupElement::Vector(v) => point_value(v),
        GroupElement::Matrix(m) => {
            let [a, b, c, d] = m.entries();
            json!([
                [integer_value(a), integer_value(b)],
                [integer_value(c), integer_value(d)]
            ])
        }
    }
}

pub fn element_set_value(s: &ElementSet) -> Value {
    Value::Array(s.iter().map(element_value).collect())
}

/// A square matrix given by its columns.
pub fn matrix_from_value(v: &Value) -> Result<IntegerMatrix> {
    let cols = array(field(v, "columns")?, "\"columns\"")?
        .iter()
        .map(parse_point)
        .collect::<Result<Vec<_>>>()?;
    IntegerMatrix::from_columns(&cols)
}

pub fn matrix_value(a: &IntegerMatrix) -> Value {
    json!({"columns": a.columns().iter().map(point_value).collect::<Vec<_>>()})
}

/// Parses JSON text, keeping integers exact.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| format_err(e.to_string()))
}

pub fn equality_report_value(r: &EqualityReport) -> Value {
    json!({
        "n": r.n,
        "holds": r.holds,
        "witness": r.witness.as_ref().map(point_value),
    })
}

pub fn decomposition_value(d: &Decomposition) -> Value {
    json!({
        "target": point_value(&d.target),
        "summands": d.summands.iter().map(point_value).collect::<Vec<_>>(),
    })
}

pub fn simplex_class_value(c: &SimplexClass) -> Value {
    json!({
        "elementary": c.is_elementary,
        "primitive": c.is_primitive,
        "normalized_volume": integer_value(&c.normalized_volume),
        "non_vertex_points": point_set_value(&c.non_vertex_points),
    })
}

pub fn lemma1_value(f: &UnimodularityFlags) -> Value {
    let mut m = Map::new();
    m.insert("singular".into(), f.singular.into());
    m.insert("image_is_whole_lattice".into(), f.image_is_whole_lattice.into());
    m.insert("inverse_is_integral".into(), f.inverse_is_integral.into());
    m.insert("determinant_is_unit".into(), f.determinant_is_unit.into());
    m.insert("parallelotope_has_unit_volume".into(), f.parallelotope_has_unit_volume.into());
    m.insert("parallelotope_is_elementary".into(), f.parallelotope_is_elementary.into());
    m.insert("simplex_is_elementary".into(), f.simplex_is_elementary.into());
    Value::Object(m)
}

pub fn triangulation_report_value(r: &TriangulationReport) -> Value {
    json!({
        "valid": r.is_valid(),
        "elementary": r.is_elementary(),
        "primitive": r.is_primitive(),
        "failures": r.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

pub fn boundary_report_value(r: &BoundaryReport) -> Value {
    json!({
        "n": r.n,
        "holds": r.holds,
        "lhs_minus_rhs": element_set_value(&r.lhs_minus_rhs),
        "rhs_minus_lhs": element_set_value(&r.rhs_minus_lhs),
    })
}
