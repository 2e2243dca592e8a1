//! JSON matrix literals.
//!
//! A matrix is a row-major array of rows. An entry is a plain number
//! (real), `[re, im]` (complex), or `[a, b, c, d]` (quaternion). Plain
//! numbers are accepted in any algebra and promoted to the scalar with
//! zero non-real components.

use matfn_core::algebra::{AlgebraTag, MatrixF};
use serde_json::{json, Value};

fn entry_components(v: &Value, tag: AlgebraTag) -> Result<Vec<f64>, String> {
    let comps = tag.components();
    match v {
        Value::Number(x) => {
            let mut e = vec![0.0; comps];
            e[0] = x.as_f64().ok_or("non-finite entry")?;
            Ok(e)
        }
        Value::Array(parts) if parts.len() == comps => parts
            .iter()
            .map(|p| p.as_f64().ok_or_else(|| "non-numeric entry component".to_string()))
            .collect(),
        Value::Array(parts) => Err(format!(
            "entry has {} components but beta={} needs {comps}",
            parts.len(),
            tag.beta()
        )),
        other => Err(format!("unexpected matrix entry: {other}")),
    }
}

/// Parses a row-major JSON matrix literal into a `MatrixF` over `tag`.
pub fn matrix_from_json(v: &Value, tag: AlgebraTag) -> Result<MatrixF, String> {
    let rows = v.as_array().ok_or("matrix must be an array of rows")?;
    if rows.is_empty() {
        return Err("matrix has no rows".into());
    }
    let mut entries = Vec::with_capacity(rows.len() * 4);
    let mut cols = None;
    for row in rows {
        let row = row.as_array().ok_or("matrix row must be an array")?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => return Err("ragged matrix rows".into()),
            _ => {}
        }
        for entry in row {
            entries.push(entry_components(entry, tag)?);
        }
    }
    let cols = cols.unwrap();
    if cols == 0 {
        return Err("matrix has no columns".into());
    }
    MatrixF::from_entries(rows.len(), cols, tag, &entries).map_err(|e| e.to_string())
}

/// Serializes a matrix back to the documented JSON literal form.
pub fn matrix_to_json(x: &MatrixF) -> Value {
    let comps = x.tag().components();
    let rows: Vec<Value> = (0..x.rows())
        .map(|i| {
            let row: Vec<Value> = (0..x.cols())
                .map(|j| {
                    let e = x.entry(i, j);
                    if comps == 1 {
                        json!(e[0])
                    } else {
                        Value::Array(e.iter().map(|&c| json!(c)).collect())
                    }
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}
