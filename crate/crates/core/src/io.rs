//! JSON file formats for algebras, modules and two-term complexes.
//!
//! Module and complex files name their algebra file by a path relative to themselves.

use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Algebra, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactlin::{Fp, Matrix};
use crate::repmod::{Module, Presentation, ProjMap, ProjSum};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    pub length_cap: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub algebra: String,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummandSpec {
    pub vertex: String,
    pub mult: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub algebra: String,
    pub p_minus1: Vec<SummandSpec>,
    pub p0: Vec<SummandSpec>,
    pub map: Vec<Vec<Vec<i64>>>,
}

fn read(path: &FsPath) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(&path.display().to_string(), "<file>", e.to_string()))
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str, file: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        // serde reports missing/unknown fields as "missing field `x`"
        let field = msg
            .split('`')
            .nth(1)
            .filter(|_| msg.contains("field"))
            .unwrap_or("<document>")
            .to_string();
        Error::parse(file, &field, msg)
    })
}

pub fn parse_algebra(text: &str, file: &str) -> Result<Algebra> {
    let spec: AlgebraFile = from_json(text, file)?;
    algebra_from_spec(&spec, file)
}

pub fn algebra_from_spec(spec: &AlgebraFile, file: &str) -> Result<Algebra> {
    let field = Fp::new(spec.field.p).map_err(|e| Error::parse(file, "field.p", e.to_string()))?;
    let arrows = spec
        .arrows
        .iter()
        .map(|a| (a.name.clone(), a.from.clone(), a.to.clone()))
        .collect();
    let quiver =
        Quiver::new(spec.vertices.clone(), arrows).map_err(|e| Error::parse(file, "arrows", e.to_string()))?;
    let relations = spec
        .relations
        .iter()
        .enumerate()
        .map(|(i, terms)| {
            let terms: Vec<(i64, Vec<String>)> = terms.iter().map(|t| (t.coeff, t.path.clone())).collect();
            Relation::from_names(field, &quiver, &terms)
                .map_err(|e| Error::parse(file, &format!("relations[{i}]"), e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Algebra::build(field, quiver, relations, spec.length_cap).map_err(|e| match e {
        Error::CapTooSmall { .. } => Error::parse(file, "length_cap", e.to_string()),
        other => Error::parse(file, "relations", other.to_string()),
    })
}

pub fn load_algebra(path: &FsPath) -> Result<Arc<Algebra>> {
    Ok(Arc::new(parse_algebra(&read(path)?, &path.display().to_string())?))
}

/// Serializes an algebra back to its file format.
pub fn algebra_to_spec(a: &Algebra) -> AlgebraFile {
    let q = a.quiver();
    let f = a.field();
    AlgebraFile {
        field: FieldSpec { p: f.p() },
        vertices: q.vertices.clone(),
        arrows: q
            .arrows
            .iter()
            .map(|ar| ArrowSpec {
                name: ar.name.clone(),
                from: q.vertices[ar.source].clone(),
                to: q.vertices[ar.target].clone(),
            })
            .collect(),
        relations: a
            .relations()
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, p)| TermSpec {
                        coeff: f.signed(*c),
                        path: p.arrows.iter().map(|&i| q.arrows[i].name.clone()).collect(),
                    })
                    .collect()
            })
            .collect(),
        length_cap: a.length_cap(),
    }
}

fn resolve(base: &FsPath, rel: &str) -> PathBuf {
    base.parent().unwrap_or(FsPath::new(".")).join(rel)
}

/// The referenced algebra, or `given` when the two agree.
fn referenced_algebra(given: Option<&Arc<Algebra>>, path: &FsPath, rel: &str) -> Result<Arc<Algebra>> {
    let file = path.display().to_string();
    let own = load_algebra(&resolve(path, rel)).map_err(|e| Error::parse(&file, "algebra", e.to_string()))?;
    match given {
        Some(a) if **a == *own => Ok(a.clone()),
        Some(_) => Err(Error::parse(&file, "algebra", "differs from the algebra given on the command line")),
        None => Ok(own),
    }
}

pub fn module_from_spec(spec: &ModuleFile, a: &Arc<Algebra>, file: &str) -> Result<Module> {
    let q = a.quiver();
    let f = a.field();
    for v in spec.dims.keys() {
        if q.vertex_index(v).is_none() {
            return Err(Error::parse(file, &format!("dims.{v}"), "unknown vertex"));
        }
    }
    let dims: Vec<usize> = q.vertices.iter().map(|v| spec.dims.get(v).copied().unwrap_or(0)).collect();
    for name in spec.maps.keys() {
        if q.arrow_index(name).is_none() {
            return Err(Error::parse(file, &format!("maps.{name}"), "unknown arrow"));
        }
    }
    let mut maps = Vec::with_capacity(q.arrows.len());
    for ar in &q.arrows {
        let (r, c) = (dims[ar.source], dims[ar.target]);
        let field = format!("maps.{}", ar.name);
        let m = match spec.maps.get(&ar.name) {
            None if r == 0 || c == 0 => Matrix::zeros(f, r, c),
            None => return Err(Error::parse(file, &field, "missing map for an arrow between nonzero spaces")),
            Some(rows) => {
                let shape_ok = rows.len() == r && rows.iter().all(|row| row.len() == c);
                // a 0 x c or r x 0 matrix may be written as []
                if !shape_ok && !(rows.is_empty() && (r == 0 || c == 0)) {
                    return Err(Error::parse(file, &field, format!("expected a {r} x {c} matrix")));
                }
                if rows.is_empty() {
                    Matrix::zeros(f, r, c)
                } else {
                    Matrix::from_rows(f, c, rows)
                }
            }
        };
        maps.push(m);
    }
    Module::new(a.clone(), dims, maps).map_err(|e| Error::parse(file, "maps", e.to_string()))
}

pub fn parse_module(text: &str, a: &Arc<Algebra>, file: &str) -> Result<Module> {
    module_from_spec(&from_json(text, file)?, a, file)
}

/// Loads a module file; its algebra reference must agree with `given` when present.
pub fn load_module(path: &FsPath, given: Option<&Arc<Algebra>>) -> Result<Module> {
    let file = path.display().to_string();
    let spec: ModuleFile = from_json(&read(path)?, &file)?;
    let a = referenced_algebra(given, path, &spec.algebra)?;
    module_from_spec(&spec, &a, &file)
}

pub fn module_to_spec(m: &Module, algebra_ref: &str) -> ModuleFile {
    let q = m.algebra().quiver();
    let f = m.field();
    ModuleFile {
        algebra: algebra_ref.to_string(),
        dims: q
            .vertices
            .iter()
            .enumerate()
            .filter(|&(v, _)| m.dim_at(v) > 0)
            .map(|(v, l)| (l.clone(), m.dim_at(v)))
            .collect(),
        maps: q
            .arrows
            .iter()
            .enumerate()
            .filter(|&(i, _)| !m.arrow_map(i).data().is_empty())
            .map(|(i, ar)| {
                let rows = m.arrow_map(i).to_rows();
                let signed = rows.iter().map(|r| r.iter().map(|&x| f.signed(x)).collect()).collect();
                (ar.name.clone(), signed)
            })
            .collect(),
    }
}

pub fn module_to_json(m: &Module, algebra_ref: &str) -> Value {
    serde_json::to_value(module_to_spec(m, algebra_ref)).expect("module serializes")
}

fn expand(a: &Algebra, list: &[SummandSpec], file: &str, field: &str) -> Result<ProjSum> {
    let mut out = Vec::new();
    for (i, s) in list.iter().enumerate() {
        let v = a
            .quiver()
            .vertex_index(&s.vertex)
            .ok_or_else(|| Error::parse(file, &format!("{field}[{i}].vertex"), "unknown vertex"))?;
        out.extend(std::iter::repeat(v).take(s.mult));
    }
    Ok(ProjSum::new(out))
}

pub fn complex_from_spec(spec: &ComplexFile, a: &Arc<Algebra>, file: &str) -> Result<Presentation> {
    let f = a.field();
    let source = expand(a, &spec.p_minus1, file, "p_minus1")?;
    let target = expand(a, &spec.p0, file, "p0")?;
    if spec.map.len() != source.len() {
        return Err(Error::parse(file, "map", format!("expected {} rows", source.len())));
    }
    let mut map = ProjMap::zero(a, source.clone(), target.clone());
    for (r, row) in spec.map.iter().enumerate() {
        if row.len() != target.len() {
            return Err(Error::parse(file, &format!("map[{r}]"), format!("expected {} entries", target.len())));
        }
        for (c, coords) in row.iter().enumerate() {
            let field = format!("map[{r}][{c}]");
            if coords.len() != a.dim() {
                return Err(Error::parse(file, &field, format!("expected {} algebra coordinates", a.dim())));
            }
            let allowed = a.between(target.vertices[c], source.vertices[r]);
            for (b, &x) in coords.iter().enumerate() {
                let x = f.from_i64(x);
                if x != 0 && allowed.binary_search(&b).is_err() {
                    return Err(Error::parse(
                        file,
                        &field,
                        format!("basis element {} is not a path from P0 summand to P-1 summand", a.basis_label(b)),
                    ));
                }
            }
            map.entries[r][c] = allowed.iter().map(|&b| f.from_i64(coords[b])).collect();
        }
    }
    Ok(Presentation::new(a.clone(), map))
}

pub fn parse_complex(text: &str, a: &Arc<Algebra>, file: &str) -> Result<Presentation> {
    complex_from_spec(&from_json(text, file)?, a, file)
}

pub fn load_complex(path: &FsPath, given: Option<&Arc<Algebra>>) -> Result<Presentation> {
    let file = path.display().to_string();
    let spec: ComplexFile = from_json(&read(path)?, &file)?;
    let a = referenced_algebra(given, path, &spec.algebra)?;
    complex_from_spec(&spec, &a, &file)
}

fn collapse(a: &Algebra, p: &ProjSum) -> Vec<SummandSpec> {
    let mut out: Vec<SummandSpec> = Vec::new();
    for &v in &p.vertices {
        let label = &a.quiver().vertices[v];
        match out.last_mut() {
            Some(last) if &last.vertex == label => last.mult += 1,
            _ => out.push(SummandSpec {
                vertex: label.clone(),
                mult: 1,
            }),
        }
    }
    out
}

pub fn complex_to_spec(s: &Presentation, algebra_ref: &str) -> ComplexFile {
    let a = s.algebra();
    let f = a.field();
    let map = s
        .map()
        .entries
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, e)| {
                    let mut full = vec![0i64; a.dim()];
                    let allowed = a.between(s.p0().vertices[c], s.p_minus1().vertices[r]);
                    for (k, &b) in allowed.iter().enumerate() {
                        full[b] = f.signed(e[k]);
                    }
                    full
                })
                .collect()
        })
        .collect();
    ComplexFile {
        algebra: algebra_ref.to_string(),
        p_minus1: collapse(a, s.p_minus1()),
        p0: collapse(a, s.p0()),
        map,
    }
}

pub fn complex_to_json(s: &Presentation, algebra_ref: &str) -> Value {
    serde_json::to_value(complex_to_spec(s, algebra_ref)).expect("complex serializes")
}

/// A compact description used inside reports.
pub fn describe_complex(s: &Presentation) -> Value {
    let a = s.algebra();
    let label = |p: &ProjSum| -> Vec<String> {
        p.vertices.iter().map(|&v| format!("P{}", a.quiver().vertices[v])).collect()
    };
    json!({ "p_minus1": label(s.p_minus1()), "p0": label(s.p0()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = r#"{"field":{"p":10007},"vertices":["1","2"],
        "arrows":[{"name":"a1","from":"1","to":"2"}],"relations":[],"length_cap":2}"#;

    #[test]
    fn algebra_round_trip() {
        let a = parse_algebra(A2, "a2.json").unwrap();
        assert_eq!(a, Algebra::linear_a(Fp::default(), 2));
        let text = serde_json::to_string(&algebra_to_spec(&a)).unwrap();
        assert_eq!(parse_algebra(&text, "x").unwrap(), a);
    }

    #[test]
    fn nakayama_file() {
        let text = r#"{"field":{"p":10007},"vertices":["1","2","3"],
            "arrows":[{"name":"a1","from":"1","to":"2"},{"name":"a2","from":"2","to":"3"},{"name":"a3","from":"3","to":"1"}],
            "relations":[[{"coeff":1,"path":["a1","a2"]}],[{"coeff":1,"path":["a2","a3"]}],[{"coeff":1,"path":["a3","a1"]}]],
            "length_cap":2}"#;
        assert_eq!(parse_algebra(text, "n3").unwrap(), Algebra::cyclic_nakayama(Fp::default(), 3, 2));
    }

    #[test]
    fn parse_errors_name_the_field() {
        let bad = A2.replace("\"length_cap\":2", "\"length_cap\":1");
        match parse_algebra(&bad, "a2.json") {
            Err(Error::Parse { file, field, .. }) => {
                assert_eq!(file, "a2.json");
                assert_eq!(field, "relations");
            }
            other => panic!("{other:?}"),
        }
        match parse_algebra(r#"{"field":{"p":10007}}"#, "x.json") {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "vertices"),
            other => panic!("{other:?}"),
        }
        match parse_algebra(&A2.replace("10007", "10000"), "x.json") {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "field.p"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn module_and_complex_round_trip() {
        let a = Arc::new(parse_algebra(A2, "a2.json").unwrap());
        let m = parse_module(r#"{"algebra":"a2.json","dims":{"1":1,"2":1},"maps":{"a1":[[1]]}}"#, &a, "p1").unwrap();
        assert_eq!(m.dims(), &[1, 1]);
        let back = module_to_json(&m, "a2.json");
        assert_eq!(parse_module(&back.to_string(), &a, "x").unwrap().arrow_maps(), m.arrow_maps());
        let bad = parse_module(r#"{"algebra":"a2.json","dims":{"1":1,"2":1},"maps":{"a1":[[1,0]]}}"#, &a, "bad");
        assert!(matches!(bad, Err(Error::Parse { ref field, .. }) if field == "maps.a1"));

        // P2 -> P1 by the arrow; basis order is e1, e2, a1
        let c = parse_complex(
            r#"{"algebra":"a2.json","p_minus1":[{"vertex":"2","mult":1}],"p0":[{"vertex":"1","mult":1}],"map":[[[0,0,1]]]}"#,
            &a,
            "c",
        )
        .unwrap();
        assert_eq!(c.cokernel().dims(), &[1, 0]);
        let back = complex_to_json(&c, "a2.json");
        assert_eq!(parse_complex(&back.to_string(), &a, "x").unwrap().map(), c.map());
        let bad = parse_complex(
            r#"{"algebra":"a2.json","p_minus1":[{"vertex":"2","mult":1}],"p0":[{"vertex":"1","mult":1}],"map":[[[1,0,0]]]}"#,
            &a,
            "c",
        );
        assert!(matches!(bad, Err(Error::Parse { ref field, .. }) if field == "map[0][0]"));
    }
}
