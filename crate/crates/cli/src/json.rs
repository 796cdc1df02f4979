//! JSON output and foam input.

use serde_json::{json, Map, Value};

use foamhom::arith::GaussianPolynomial;
use foamhom::complex::ChainComplex;
use foamhom::foamval::{ClosedFoam, Facet};
use foamhom::homology::{Group, Homology};

use crate::CliError;

pub fn group_value(g: &Group) -> Value {
    json!({
        "free": g.free,
        "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}

pub fn group(g: &Group) -> String {
    group_value(g).to_string()
}

/// `{"(i,j)": {"free": r, "torsion": [...]}}`; ungraded tables use `(i,*)`.
pub fn homology_table(h: &Homology) -> String {
    let mut map = Map::new();
    for ((i, j), g) in &h.groups {
        let key = if h.quantum_graded { format!("({},{})", i, j) } else { format!("({},*)", i) };
        map.insert(key, group_value(g));
    }
    serde_json::to_string_pretty(&Value::Object(map)).unwrap()
}

/// Parses `{"facets": [{"genus": g, "dots": d}, ...],
/// "seams": [{"attachments": [preferred, other]}, ...]}`.
pub fn parse_foam(text: &str) -> Result<ClosedFoam, CliError> {
    let bad = |m: &str| CliError::Validation(format!("foam: {}", m));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let count = |x: &Value, key: &str| -> Result<u32, CliError> {
        match x.get(key) {
            None => Ok(0),
            Some(n) => n.as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| bad(&format!("`{}` must be a small non-negative integer", key))),
        }
    };
    let facets = v
        .get("facets")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `facets` array"))?
        .iter()
        .map(|f| Ok(Facet { genus: count(f, "genus")?, dots: count(f, "dots")? }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let empty = Vec::new();
    let seams = v.get("seams").map(|s| s.as_array().ok_or_else(|| bad("`seams` must be an array"))).transpose()?.unwrap_or(&empty);
    let attachments = seams
        .iter()
        .map(|s| {
            s.get("attachments")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("seam without `attachments`"))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("attachment must be a facet index")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    ClosedFoam::new(facets, &attachments).map_err(|e| bad(&e.to_string()))
}

/// Generators per homological degree and nonzero differential entries.
pub fn complex(c: &ChainComplex<GaussianPolynomial>) -> String {
    let mut degrees = Vec::new();
    for (k, gens) in c.gens.iter().enumerate() {
        let h = c.min_h + k as i64;
        let gens: Vec<Value> = gens
            .iter()
            .map(|g| json!({ "state": format!("{:b}", g.state.0), "word": format!("{:b}", g.word), "q": g.q }))
            .collect();
        let diff: Vec<Value> = c
            .diff_at(h)
            .map(|m| m.entries().map(|(r, col, v)| json!([col, r, v.to_string()])).collect())
            .unwrap_or_default();
        degrees.push(json!({ "h": h, "generators": gens, "differential": diff }));
    }
    serde_json::to_string_pretty(&Value::Array(degrees)).unwrap()
}
