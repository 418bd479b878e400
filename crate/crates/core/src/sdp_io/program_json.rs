//! SOS-program documents:
//!
//! ```json
//! { "nvars": 1, "ndecs": 1, "cost": ["0"],
//!   "constraints": [ { "parts": ["x1^2", "2*x1"] } ] }
//! ```
//!
//! `parts[0]` is the constant part, `parts[j]` multiplies `d_j`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::poly::{parse_polynomial, parse_rational, Coefficient};
use crate::simplify::{AffineSosConstraint, SosProgram};

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn as_count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::schema(path, "expected a nonnegative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))
}

fn as_rational(v: &Value, path: &str) -> Result<Coefficient> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::schema(path, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Coefficient::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::schema(path, "expected a rational string")),
    }
}

/// Parses and validates a program document; errors name the offending path,
/// e.g. `constraints[0].parts`.
pub fn parse_program_json(text: &str) -> Result<SosProgram> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::schema(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| Error::schema("$", "expected an object"))?;

    let nvars = as_count(field(obj, "", "nvars")?, "nvars")?;
    if nvars == 0 {
        return Err(Error::schema("nvars", "must be positive"));
    }
    let ndecs = as_count(field(obj, "", "ndecs")?, "ndecs")?;
    let cost = match obj.get("cost") {
        None => vec![Coefficient::from_integer(0.into()); ndecs],
        Some(v) => {
            let arr = as_array(v, "cost")?;
            if arr.len() != ndecs {
                return Err(Error::schema("cost", format!("expected {ndecs} entries, found {}", arr.len())));
            }
            arr.iter()
                .enumerate()
                .map(|(i, v)| as_rational(v, &format!("cost[{i}]")))
                .collect::<Result<_>>()?
        }
    };

    let cons = as_array(field(obj, "", "constraints")?, "constraints")?;
    if cons.is_empty() {
        return Err(Error::schema("constraints", "at least one constraint is required"));
    }
    let mut constraints = Vec::with_capacity(cons.len());
    for (k, c) in cons.iter().enumerate() {
        let path = format!("constraints[{k}]");
        let cobj = c.as_object().ok_or_else(|| Error::schema(&path, "expected an object"))?;
        let parts_path = join(&path, "parts");
        let parts = as_array(field(cobj, &path, "parts")?, &parts_path)?;
        if parts.len() != ndecs + 1 {
            return Err(Error::schema(
                &parts_path,
                format!("expected ndecs + 1 = {} polynomials, found {}", ndecs + 1, parts.len()),
            ));
        }
        let polys = parts
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let p = format!("{parts_path}[{j}]");
                let s = v.as_str().ok_or_else(|| Error::schema(&p, "expected a polynomial string"))?;
                parse_polynomial(s, Some(nvars)).map_err(|e| Error::schema(&p, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        constraints.push(AffineSosConstraint::new(polys)?);
    }
    SosProgram::new(nvars, ndecs, cost, constraints)
}

pub fn program_to_json(prog: &SosProgram) -> String {
    let v = json!({
        "nvars": prog.nvars(),
        "ndecs": prog.ndecs(),
        "cost": prog.cost().iter().map(super::rational_str::to_string).collect::<Vec<_>>(),
        "constraints": prog.constraints().iter().map(|c| json!({
            "parts": c.parts().iter().map(ToString::to_string).collect::<Vec<_>>()
        })).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&v).expect("json value")
}
