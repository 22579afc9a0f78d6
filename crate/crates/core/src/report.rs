//! Verdict reports with embedded linear-algebra claims that can be re-verified
//! from the JSON alone.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::exactlin::{Fp, Matrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Route {
    pub name: String,
    pub verdict: bool,
    pub certificate: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub verdict: bool,
    pub routes: Vec<Route>,
    pub witnesses: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(verdict: bool) -> Report {
        Report {
            verdict,
            routes: Vec::new(),
            witnesses: BTreeMap::new(),
        }
    }

    pub fn with_route(mut self, name: &str, verdict: bool, certificate: Value) -> Report {
        self.routes.push(Route {
            name: name.to_string(),
            verdict,
            certificate,
        });
        self
    }

    pub fn with_witness(mut self, key: &str, value: Value) -> Report {
        self.witnesses.insert(key.to_string(), value);
        self
    }

    pub fn route(&self, name: &str) -> Option<&Route> {
        self.routes.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn matrix_json(m: &Matrix) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": m.to_rows() })
}

/// `rank(m) = r`, checked by recomputation.
pub fn rank_claim(label: &str, m: &Matrix) -> Value {
    json!({
        "claim": "rank",
        "label": label,
        "p": m.field().p(),
        "matrix": matrix_json(m),
        "rank": m.rank(),
    })
}

/// `m x = rhs` for the recorded `x`.
pub fn solve_claim(label: &str, m: &Matrix, rhs: &[u32], x: &[u32]) -> Value {
    json!({
        "claim": "solve",
        "label": label,
        "p": m.field().p(),
        "matrix": matrix_json(m),
        "rhs": rhs,
        "x": x,
    })
}

/// `m x = rhs` has no solution, witnessed by `y` with `y m = 0` and `y . rhs != 0`.
pub fn inconsistent_claim(label: &str, m: &Matrix, rhs: &[u32]) -> Value {
    let f = m.field();
    let aug = Matrix::hstack(f, m.rows(), &[m, &Matrix::column(f, rhs)]);
    let y = m
        .left_kernel()
        .to_rows()
        .into_iter()
        .find(|y| Matrix::row_vector(f, y).mul(&aug).get(0, m.cols()) != 0)
        .unwrap_or_default();
    json!({
        "claim": "inconsistent",
        "label": label,
        "p": f.p(),
        "matrix": matrix_json(m),
        "rhs": rhs,
        "y": y,
    })
}

/// Claim for `m x = rhs`, whichever way it resolves.
pub fn solvability_claim(label: &str, m: &Matrix, rhs: &[u32]) -> (bool, Value) {
    match m.solve(rhs) {
        Ok(x) => (true, solve_claim(label, m, rhs, &x)),
        Err(_) => (false, inconsistent_claim(label, m, rhs)),
    }
}

/// Outcome of re-verifying every claim inside a JSON document.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Recheck {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Recheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn recheck(doc: &Value) -> Recheck {
    let mut out = Recheck::default();
    walk(doc, "$", &mut out);
    out
}

fn walk(v: &Value, path: &str, out: &mut Recheck) {
    match v {
        Value::Object(map) => {
            if map.contains_key("claim") {
                out.checked += 1;
                if let Err(e) = check_claim(v) {
                    out.failures.push(format!("{path}: {e}"));
                }
            }
            for (k, child) in map {
                walk(child, &format!("{path}.{k}"), out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                walk(child, &format!("{path}[{i}]"), out);
            }
        }
        _ => {}
    }
}

fn u32_vec(v: &Value, key: &str) -> Result<Vec<u32>, String> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or(format!("missing `{key}`"))?
        .iter()
        .map(|x| x.as_u64().map(|n| n as u32).ok_or(format!("`{key}` holds a non-integer")))
        .collect()
}

fn read_matrix(f: Fp, v: &Value) -> Result<Matrix, String> {
    let m = v.get("matrix").ok_or("missing `matrix`")?;
    let rows = m.get("rows").and_then(Value::as_u64).ok_or("missing `rows`")? as usize;
    let cols = m.get("cols").and_then(Value::as_u64).ok_or("missing `cols`")? as usize;
    let entries = m.get("entries").and_then(Value::as_array).ok_or("missing `entries`")?;
    if entries.len() != rows {
        return Err("row count mismatch".into());
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row.as_array().ok_or("row is not an array")?;
        if row.len() != cols {
            return Err("column count mismatch".into());
        }
        for x in row {
            let x = x.as_u64().ok_or("entry is not a residue")?;
            if x >= f.p() as u64 {
                return Err("entry is not reduced".into());
            }
            data.push(x as u32);
        }
    }
    Ok(Matrix::from_residues(f, rows, cols, data))
}

fn check_claim(v: &Value) -> Result<(), String> {
    let p = v.get("p").and_then(Value::as_u64).ok_or("missing `p`")?;
    let f = Fp::new(p as u32).map_err(|e| e.to_string())?;
    let m = read_matrix(f, v)?;
    let kind = v.get("claim").and_then(Value::as_str).unwrap_or("");
    match kind {
        "rank" => {
            let r = v.get("rank").and_then(Value::as_u64).ok_or("missing `rank`")? as usize;
            if m.rank() != r {
                return Err(format!("rank is {}, claimed {r}", m.rank()));
            }
        }
        "solve" => {
            let (rhs, x) = (u32_vec(v, "rhs")?, u32_vec(v, "x")?);
            if x.len() != m.cols() || m.mul_vec(&x) != rhs {
                return Err("recorded solution does not satisfy the system".into());
            }
        }
        "inconsistent" => {
            let (rhs, y) = (u32_vec(v, "rhs")?, u32_vec(v, "y")?);
            if y.len() != m.rows() || rhs.len() != m.rows() {
                return Err("witness has the wrong length".into());
            }
            if Matrix::row_vector(f, &y).mul(&m).data().iter().any(|&x| x != 0) {
                return Err("witness is not in the left kernel".into());
            }
            let dot = y.iter().zip(&rhs).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            if dot == 0 {
                return Err("witness does not separate the right-hand side".into());
            }
        }
        other => return Err(format!("unknown claim kind `{other}`")),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claims_round_trip() {
        let f = Fp::default();
        let m = Matrix::from_rows(f, 2, &[vec![1, 2], vec![2, 4]]);
        let doc = json!({
            "a": rank_claim("m", &m),
            "b": [solvability_claim("s", &m, &[1, 2]).1, solvability_claim("t", &m, &[1, 0]).1],
        });
        let r = recheck(&doc);
        assert_eq!(r.checked, 3);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(!solvability_claim("t", &m, &[1, 0]).0);
    }

    #[test]
    fn tampered_claims_fail() {
        let f = Fp::default();
        let m = Matrix::identity(f, 2);
        let mut c = rank_claim("id", &m);
        c["rank"] = json!(1);
        assert!(!recheck(&c).passed());
        let mut s = solve_claim("id", &m, &[1, 1], &[1, 1]);
        s["x"] = json!([1, 0]);
        assert!(!recheck(&s).passed());
    }
}
