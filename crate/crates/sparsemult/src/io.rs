//! JSON input parsing and canonical emission. Rationals travel as `"p/q"`
//! strings (plain integers are accepted on input) so no value is ever
//! rounded through a float.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::support::{SparseSystem, SupportConfig};

/// A parsed system input: support, coefficients, and optional dual pair.
pub struct SystemInput {
    pub system: SparseSystem,
    pub b: Option<IntMatrix>,
    pub d: Option<RatMatrix>,
}

pub fn parse_system_str(text: &str) -> Result<SystemInput> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    parse_system_value(&value)
}

pub fn parse_system_value(value: &Value) -> Result<SystemInput> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::ParseError("top level must be an object".into()))?;
    let points = parse_points(
        obj.get("points")
            .ok_or_else(|| Error::ParseError("missing \"points\"".into()))?,
    )?;
    let coeffs = parse_rat_matrix(
        obj.get("C")
            .ok_or_else(|| Error::ParseError("missing \"C\"".into()))?,
    )?;
    let config = SupportConfig::new(points)?;
    let base_point = match obj.get("at") {
        Some(v) => parse_rat_vector(v)?,
        None => vec![Rat::from_integer(1.into()); config.dim()],
    };
    let system = SparseSystem::with_base_point(config, coeffs, base_point)?;
    let b = obj.get("B").map(parse_int_matrix).transpose()?;
    let d = obj.get("D").map(parse_rat_matrix).transpose()?;
    Ok(SystemInput { system, b, d })
}

pub fn parse_points(value: &Value) -> Result<Vec<Vec<i64>>> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::ParseError("\"points\" must be an array".into()))?;
    rows.iter()
        .map(|row| {
            let coords = row
                .as_array()
                .ok_or_else(|| Error::ParseError("each point must be an array".into()))?;
            coords
                .iter()
                .map(|c| {
                    c.as_i64()
                        .ok_or_else(|| Error::ParseError(format!("bad lattice coordinate {c}")))
                })
                .collect()
        })
        .collect()
}

pub fn parse_rat_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rat::from_integer(i.into()))
            .ok_or_else(|| Error::ParseError(format!("non-integer numeric literal {n}"))),
        other => Err(Error::ParseError(format!("bad rational {other}"))),
    }
}

pub fn parse_rat_vector(value: &Value) -> Result<Vec<Rat>> {
    value
        .as_array()
        .ok_or_else(|| Error::ParseError("expected an array of rationals".into()))?
        .iter()
        .map(parse_rat_value)
        .collect()
}

pub fn parse_rat_matrix(value: &Value) -> Result<RatMatrix> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::ParseError("expected a matrix (array of rows)".into()))?;
    let parsed: Result<Vec<Vec<Rat>>> = rows.iter().map(parse_rat_vector).collect();
    let parsed = parsed?;
    if parsed.is_empty() || parsed.iter().any(|r| r.len() != parsed[0].len()) {
        return Err(Error::ParseError("matrix rows must be nonempty and equal length".into()));
    }
    Ok(RatMatrix::from_rows(parsed))
}

pub fn parse_int_matrix(value: &Value) -> Result<IntMatrix> {
    let m = parse_rat_matrix(value)?;
    m.to_int()
        .ok_or_else(|| Error::ParseError("expected integer matrix entries".into()))
}

/// Vertex lists of one or more polytopes: `{"polytopes": [[[x, y], ...]]}`.
pub fn parse_polytopes_str(text: &str) -> Result<Vec<Vec<Vec<Rat>>>> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::ParseError("top level must be an object".into()))?;
    let list = obj
        .get("polytopes")
        .ok_or_else(|| Error::ParseError("missing \"polytopes\"".into()))?
        .as_array()
        .ok_or_else(|| Error::ParseError("\"polytopes\" must be an array".into()))?;
    list.iter()
        .map(|p| {
            p.as_array()
                .ok_or_else(|| Error::ParseError("each polytope is a vertex list".into()))?
                .iter()
                .map(parse_rat_vector)
                .collect()
        })
        .collect()
}

/// Inline points: `;`-separated points with `,`-separated coordinates; a
/// single `;`-free list is read as one-dimensional points.
pub fn parse_inline_points(text: &str) -> Result<Vec<Vec<i64>>> {
    let chunks: Vec<&str> = text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let parse_i64 = |s: &str| -> Result<i64> {
        s.trim()
            .parse()
            .map_err(|_| Error::ParseError(format!("bad integer {s:?}")))
    };
    if chunks.len() == 1 {
        // a flat list reads as one-dimensional points
        return chunks[0]
            .split(',')
            .map(|s| parse_i64(s).map(|v| vec![v]))
            .collect();
    }
    chunks
        .iter()
        .map(|c| c.split(',').map(&parse_i64).collect())
        .collect()
}

/// Inline coefficient rows: `;`-separated rows of `,`-separated rationals.
pub fn parse_inline_coeffs(text: &str) -> Result<RatMatrix> {
    let rows: Result<Vec<Vec<Rat>>> = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|row| row.split(',').map(|s| parse_rat(s.trim())).collect())
        .collect();
    let rows = rows?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::ParseError("coefficient rows must be equal length".into()));
    }
    Ok(RatMatrix::from_rows(rows))
}

pub fn rat_matrix_value(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    m.row(r)
                        .iter()
                        .map(|v| Value::String(format_rat(v)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn int_matrix_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    m.row(r)
                        .iter()
                        .map(|v| Value::String(v.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn points_value(points: &[Vec<i64>]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| Value::Array(p.iter().map(|&v| Value::from(v)).collect()))
            .collect(),
    )
}

/// Canonical echo of a parsed system, suitable for byte-stable round trips.
pub fn system_input_value(input: &SystemInput) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "points".into(),
        points_value(input.system.config.points()),
    );
    obj.insert("C".into(), rat_matrix_value(&input.system.coeffs));
    if let Some(b) = &input.b {
        obj.insert("B".into(), int_matrix_value(b));
    }
    if let Some(d) = &input.d {
        obj.insert("D".into(), rat_matrix_value(d));
    }
    if input.system.base_point.iter().any(|v| !v.is_integer() || *v.numer() != 1.into()) {
        obj.insert(
            "at".into(),
            Value::Array(
                input
                    .system
                    .base_point
                    .iter()
                    .map(|v| Value::String(format_rat(v)))
                    .collect(),
            ),
        );
    }
    Value::Object(obj)
}
