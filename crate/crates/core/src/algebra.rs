//! Bound quiver algebras `kQ/I` with an explicit basis of reduced paths.
//!
//! Paths compose left to right: for arrows `a: 1 -> 2` and `b: 2 -> 3` the path `ab`
//! runs from 1 to 3. Modules are right modules, so `e_i A` is spanned by the paths
//! starting at `i`.

use std::cmp::Reverse;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactlin::{Fp, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are `(name, from, to)` with vertex labels.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label `{v}`")));
            }
        }
        let lookup = |label: &str| {
            vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex `{label}`")))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (name, from, to) in arrows {
            if out.iter().any(|a: &Arrow| a.name == name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name `{name}`")));
            }
            out.push(Arrow {
                source: lookup(&from)?,
                target: lookup(&to)?,
                name,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    /// Linear quiver `1 -> 2 -> ... -> n` with arrows `a1, a2, ...`.
    pub fn linear(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| Arrow {
                name: format!("a{i}"),
                source: i - 1,
                target: i,
            })
            .collect();
        Quiver { vertices, arrows }
    }

    /// Oriented cycle `1 -> 2 -> ... -> n -> 1`.
    pub fn cyclic(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (0..n)
            .map(|i| Arrow {
                name: format!("a{}", i + 1),
                source: i,
                target: (i + 1) % n,
            })
            .collect();
        Quiver { vertices, arrows }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }
}

/// A path in the quiver; trivial paths have no arrows and `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    fn reversed(&self) -> Path {
        Path {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(u32, Path)>,
}

impl Relation {
    /// Builds a relation from `(coefficient, arrow names)` terms, checking admissibility.
    pub fn from_names(field: Fp, quiver: &Quiver, terms: &[(i64, Vec<String>)]) -> Result<Self> {
        let mut out = Vec::new();
        for (coeff, names) in terms {
            let mut arrows = Vec::with_capacity(names.len());
            for n in names {
                arrows.push(
                    quiver
                        .arrow_index(n)
                        .ok_or_else(|| Error::NotAdmissible(format!("unknown arrow `{n}`")))?,
                );
            }
            let path = path_from_arrows(quiver, &arrows)
                .ok_or_else(|| Error::NotAdmissible(format!("path {names:?} is not composable")))?;
            out.push((field.from_i64(*coeff), path));
        }
        let rel = Relation { terms: out };
        rel.check_admissible()?;
        Ok(rel)
    }

    fn check_admissible(&self) -> Result<()> {
        let Some((_, first)) = self.terms.first() else {
            return Err(Error::NotAdmissible("empty relation".into()));
        };
        for (_, p) in &self.terms {
            if p.len() < 2 {
                return Err(Error::NotAdmissible(format!(
                    "term of length {} (admissible relations need length >= 2)",
                    p.len()
                )));
            }
            if (p.source, p.target) != (first.source, first.target) {
                return Err(Error::NotAdmissible("terms are not parallel".into()));
            }
        }
        Ok(())
    }

    fn endpoints(&self) -> (usize, usize) {
        let p = &self.terms[0].1;
        (p.source, p.target)
    }

    fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }
}

pub fn path_from_arrows(quiver: &Quiver, arrows: &[usize]) -> Option<Path> {
    let first = quiver.arrows.get(*arrows.first()?)?;
    let mut target = first.source;
    for &a in arrows {
        let arr = quiver.arrows.get(a)?;
        if arr.source != target {
            return None;
        }
        target = arr.target;
    }
    Some(Path {
        source: first.source,
        target,
        arrows: arrows.to_vec(),
    })
}

/// Sparse coordinate vector over the algebra basis.
pub type Sparse = Vec<(usize, u32)>;

/// A finite dimensional bound quiver algebra.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Fp,
    quiver: Quiver,
    relations: Vec<Relation>,
    length_cap: usize,
    basis: Vec<Path>,
    /// `mult[i * dim + j]` is `basis[i] * basis[j]`.
    mult: Vec<Sparse>,
    /// `between[i][j]`: basis indices of paths from `i` to `j`, ascending.
    between: Vec<Vec<Vec<usize>>>,
    vertex_basis: Vec<usize>,
    arrow_basis: Vec<usize>,
    nilpotency_degree: usize,
    normal_forms: HashMap<Path, Sparse>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.quiver == other.quiver
            && self.basis == other.basis
            && self.mult == other.mult
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Builds `kQ/I` by linear reduction on each class of parallel paths.
    ///
    /// Works in `kQ / R^(cap+1)`: the ideal is spanned by all `u r v` truncated above
    /// `length_cap`, and every path of length `length_cap` must lie in that span.
    pub fn build(
        field: Fp,
        quiver: Quiver,
        relations: Vec<Relation>,
        length_cap: usize,
    ) -> Result<Algebra> {
        if length_cap < 2 {
            return Err(Error::NotAdmissible("length_cap must be at least 2".into()));
        }
        if quiver.vertices.is_empty() {
            return Err(Error::InvalidQuiver("quiver has no vertices".into()));
        }
        for r in &relations {
            r.check_admissible()?;
        }
        let n = quiver.vertex_count();

        // all paths of length <= cap, grouped by endpoints
        let mut by_len: Vec<Vec<Path>> = vec![(0..n).map(Path::trivial).collect()];
        for len in 1..=length_cap {
            let mut next = Vec::new();
            for p in &by_len[len - 1] {
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            by_len.push(next);
        }
        let mut classes: HashMap<(usize, usize), Vec<Path>> = HashMap::new();
        for p in by_len.iter().flatten() {
            classes.entry((p.source, p.target)).or_default().push(p.clone());
        }
        for paths in classes.values_mut() {
            paths.sort_by(|a, b| (Reverse(a.len()), &a.arrows).cmp(&(Reverse(b.len()), &b.arrows)));
        }

        // ideal generators u * r * v, truncated above the cap
        let mut generators: HashMap<(usize, usize), Vec<HashMap<Path, u32>>> = HashMap::new();
        for r in &relations {
            let (s, t) = r.endpoints();
            let slack = length_cap.saturating_sub(r.min_len());
            let lefts: Vec<&Path> = by_len[..=slack].iter().flatten().filter(|u| u.target == s).collect();
            let rights: Vec<&Path> = by_len[..=slack].iter().flatten().filter(|v| v.source == t).collect();
            for u in &lefts {
                for v in &rights {
                    if u.len() + v.len() > slack {
                        continue;
                    }
                    let mut vec: HashMap<Path, u32> = HashMap::new();
                    for (c, q) in &r.terms {
                        if u.len() + q.len() + v.len() > length_cap {
                            continue;
                        }
                        let w = u.concat(q).and_then(|uq| uq.concat(v)).expect("composable");
                        let e = vec.entry(w).or_insert(0);
                        *e = field.add(*e, *c);
                    }
                    vec.retain(|_, c| *c != 0);
                    if !vec.is_empty() {
                        generators.entry((u.source, v.target)).or_default().push(vec);
                    }
                }
            }
        }

        let mut normal: HashMap<Path, Sparse> = HashMap::new();
        let mut basis_paths: Vec<Path> = Vec::new();
        // reduction rules keyed by path; values are non-pivot paths with coefficients
        let mut rules: HashMap<Path, Vec<(Path, u32)>> = HashMap::new();
        let mut keys: Vec<&(usize, usize)> = classes.keys().collect();
        keys.sort();
        for key in keys {
            let paths = &classes[key];
            let col_of: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let gens = generators.get(key).map(Vec::as_slice).unwrap_or(&[]);
            let mut m = Matrix::zeros(field, gens.len(), paths.len());
            for (r, g) in gens.iter().enumerate() {
                for (p, &c) in g {
                    m.set(r, col_of[p], c);
                }
            }
            let (red, pivots) = m.rref();
            let mut is_pivot = vec![false; paths.len()];
            for (row, &pc) in pivots.iter().enumerate() {
                is_pivot[pc] = true;
                let rest: Vec<(Path, u32)> = (0..paths.len())
                    .filter(|&c| c != pc && red.get(row, c) != 0)
                    .map(|c| (paths[c].clone(), field.neg(red.get(row, c))))
                    .collect();
                rules.insert(paths[pc].clone(), rest);
            }
            for (c, p) in paths.iter().enumerate() {
                if p.len() == length_cap && !(is_pivot[c] && rules[p].is_empty()) {
                    return Err(Error::CapTooSmall { cap: length_cap });
                }
                if !is_pivot[c] {
                    basis_paths.push(p.clone());
                }
            }
        }

        basis_paths.sort_by(|a, b| (a.len(), &a.arrows, a.source).cmp(&(b.len(), &b.arrows, b.source)));
        let index: HashMap<&Path, usize> = basis_paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for (i, p) in basis_paths.iter().enumerate() {
            normal.insert(p.clone(), vec![(i, 1)]);
        }
        for (p, rest) in &rules {
            if p.len() >= length_cap {
                continue;
            }
            let mut v: Sparse = rest.iter().map(|(q, c)| (index[q], *c)).collect();
            v.sort_unstable();
            normal.insert(p.clone(), v);
        }

        let dim = basis_paths.len();
        let mut mult = vec![Vec::new(); dim * dim];
        for (i, a) in basis_paths.iter().enumerate() {
            for (j, b) in basis_paths.iter().enumerate() {
                if let Some(ab) = a.concat(b) {
                    if ab.len() < length_cap {
                        mult[i * dim + j] = normal[&ab].clone();
                    }
                }
            }
        }

        let mut between = vec![vec![Vec::new(); n]; n];
        for (i, p) in basis_paths.iter().enumerate() {
            between[p.source][p.target].push(i);
        }
        let vertex_basis = (0..n).map(|v| index[&Path::trivial(v)]).collect();
        let arrow_basis = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                index[&Path {
                    source: a.source,
                    target: a.target,
                    arrows: vec![ai],
                }]
            })
            .collect();
        let nilpotency_degree = (1..=length_cap)
            .find(|&k| {
                by_len[k]
                    .iter()
                    .all(|p| k >= length_cap || normal[p].is_empty())
            })
            .unwrap_or(length_cap);

        Ok(Algebra {
            field,
            quiver,
            relations,
            length_cap,
            basis: basis_paths,
            mult,
            between,
            vertex_basis,
            arrow_basis,
            nilpotency_degree,
            normal_forms: normal,
        })
    }

    /// Path algebra of `1 -> 2 -> ... -> n`.
    pub fn linear_a(field: Fp, n: usize) -> Algebra {
        Algebra::build(field, Quiver::linear(n), Vec::new(), n.max(2)).expect("type A path algebra")
    }

    /// Cyclic Nakayama algebra on `n` vertices with all paths of length `l` set to zero.
    pub fn cyclic_nakayama(field: Fp, n: usize, l: usize) -> Algebra {
        let q = Quiver::cyclic(n);
        let relations = (0..n)
            .map(|start| {
                let arrows: Vec<usize> = (0..l).map(|k| (start + k) % n).collect();
                Relation {
                    terms: vec![(1, path_from_arrows(&q, &arrows).expect("cycle path"))],
                }
            })
            .collect();
        Algebra::build(field, q, relations, l).expect("cyclic Nakayama algebra")
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency_degree
    }

    /// Basis indices of the paths from `i` to `j` (a basis of `e_i A e_j`).
    pub fn between(&self, i: usize, j: usize) -> &[usize] {
        &self.between[i][j]
    }

    pub fn vertex_element(&self, v: usize) -> usize {
        self.vertex_basis[v]
    }

    pub fn arrow_element(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    pub fn is_hereditary_path_algebra(&self) -> bool {
        self.relations.is_empty()
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.mult[i * self.dim() + j]
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let dim = self.dim();
        assert_eq!(x.len(), dim);
        assert_eq!(y.len(), dim);
        let mut out = vec![0u32; dim];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in self.mul_basis(i, j) {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    /// Product of `x in e_i A e_j` and `y in e_j A e_k`, all in `between` coordinates.
    pub fn mul_restricted(&self, i: usize, j: usize, k: usize, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let (bx, by, bz) = (self.between(i, j), self.between(j, k), self.between(i, k));
        debug_assert_eq!(bx.len(), x.len());
        debug_assert_eq!(by.len(), y.len());
        let mut out = vec![0u32; bz.len()];
        for (&a, &xa) in bx.iter().zip(x) {
            if xa == 0 {
                continue;
            }
            for (&b, &yb) in by.iter().zip(y) {
                if yb == 0 {
                    continue;
                }
                let s = f.mul(xa, yb);
                for &(t, c) in self.mul_basis(a, b) {
                    let pos = bz.binary_search(&t).expect("product stays in e_i A e_k");
                    out[pos] = f.add(out[pos], f.mul(s, c));
                }
            }
        }
        out
    }

    /// Position of basis element `b` inside `between(source(b), target(b))`.
    pub fn position_in_between(&self, b: usize) -> usize {
        let p = &self.basis[b];
        self.between(p.source, p.target)
            .binary_search(&b)
            .expect("basis element listed in its own class")
    }

    /// Coordinates of a path (possibly not a basis element) in the reduced basis.
    pub fn path_element(&self, path: &Path) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        if path.len() >= self.length_cap {
            return v;
        }
        for &(k, c) in &self.normal_forms[path] {
            v[k] = c;
        }
        v
    }

    /// Unit element `e_1 + ... + e_n`.
    pub fn one(&self) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        for &b in &self.vertex_basis {
            v[b] = 1;
        }
        v
    }

    /// Human-readable label of a basis element, e.g. `e1` or `a1*a2`.
    pub fn basis_label(&self, i: usize) -> String {
        let p = &self.basis[i];
        if p.is_trivial() {
            format!("e{}", self.quiver.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.quiver.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    /// The opposite algebra: arrows reversed, multiplication reversed.
    ///
    /// Basis indices are shared with `self`, so `e_i A^op e_j` has the same index list
    /// as `e_j A e_i`.
    pub fn opposite(&self) -> Algebra {
        let dim = self.dim();
        let mut mult = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                mult[i * dim + j] = self.mult[j * dim + i].clone();
            }
        }
        let n = self.vertex_count();
        let mut between = vec![vec![Vec::new(); n]; n];
        for (i, row) in between.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = self.between[j][i].clone();
            }
        }
        Algebra {
            field: self.field,
            quiver: self.quiver.reversed(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r.terms.iter().map(|(c, p)| (*c, p.reversed())).collect(),
                })
                .collect(),
            length_cap: self.length_cap,
            basis: self.basis.iter().map(Path::reversed).collect(),
            mult,
            between,
            vertex_basis: self.vertex_basis.clone(),
            arrow_basis: self.arrow_basis.clone(),
            nilpotency_degree: self.nilpotency_degree,
            normal_forms: self
                .normal_forms
                .iter()
                .map(|(p, v)| (p.reversed(), v.clone()))
                .collect(),
        }
    }

    /// True if `other` is (structurally) the opposite of `self`.
    pub fn is_opposite_of(&self, other: &Algebra) -> bool {
        let dim = self.dim();
        self.field == other.field
            && dim == other.dim()
            && self.quiver.reversed() == other.quiver
            && (0..dim).all(|i| (0..dim).all(|j| self.mult[i * dim + j] == other.mult[j * dim + i]))
    }
}
