use std::sync::Arc;

use crate::algebra::Algebra;
use crate::exactlin::{Fp, Matrix};
use crate::repmod::module::{Module, ModuleMap};

/// A finite direct sum `P_{v_1} + ... + P_{v_k}` of indecomposable projectives,
/// in the listed order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjSum {
    pub vertices: Vec<usize>,
}

impl ProjSum {
    pub fn new(vertices: Vec<usize>) -> Self {
        ProjSum { vertices }
    }

    /// The regular module `A = P_1 + ... + P_n`.
    pub fn regular(a: &Algebra) -> Self {
        ProjSum::new((0..a.vertex_count()).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn concat(&self, other: &ProjSum) -> ProjSum {
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices);
        ProjSum::new(v)
    }

    pub fn repeat(&self, k: usize) -> ProjSum {
        ProjSum::new(
            std::iter::repeat(self.vertices.iter().copied())
                .take(k)
                .flatten()
                .collect(),
        )
    }

    /// Multiplicity of each vertex.
    pub fn multiplicities(&self, n: usize) -> Vec<usize> {
        let mut m = vec![0; n];
        for &v in &self.vertices {
            m[v] += 1;
        }
        m
    }

    /// Start of each summand inside the component at vertex `v`.
    fn offsets(&self, a: &Algebra, v: usize) -> Vec<usize> {
        let mut off = 0;
        self.vertices
            .iter()
            .map(|&j| {
                let o = off;
                off += a.between(j, v).len();
                o
            })
            .collect()
    }

    /// The module `P`: at vertex `v`, summand `c` contributes `e_{j_c} A e_v`.
    pub fn module(&self, a: &Arc<Algebra>) -> Module {
        let f = a.field();
        let n = a.vertex_count();
        let dims: Vec<usize> = (0..n)
            .map(|v| self.vertices.iter().map(|&j| a.between(j, v).len()).sum())
            .collect();
        let maps = a
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, arrow)| {
                let (s, t) = (arrow.source, arrow.target);
                let mut m = Matrix::zeros(f, dims[s], dims[t]);
                let (os, ot) = (self.offsets(a, s), self.offsets(a, t));
                let alpha = a.arrow_element(ai);
                for (c, &j) in self.vertices.iter().enumerate() {
                    let target_idx = a.between(j, t);
                    for (row, &b) in a.between(j, s).iter().enumerate() {
                        for &(k, coeff) in a.mul_basis(b, alpha) {
                            let pos = target_idx.binary_search(&k).expect("path extends within e_j A");
                            m.set(os[c] + row, ot[c] + pos, coeff);
                        }
                    }
                }
                m
            })
            .collect();
        Module::from_parts(a.clone(), dims, maps)
    }

    /// Row of the generator `e_{j_c}` of summand `c`, inside the component at `j_c`.
    pub fn generator_row(&self, a: &Algebra, c: usize) -> usize {
        let j = self.vertices[c];
        self.offsets(a, j)[c] + a.position_in_between(a.vertex_element(j))
    }

    /// The map `P -> M` sending the generator of summand `c` to `gens[c] in M e_{j_c}`.
    pub fn map_to_module(&self, target: &Module, gens: &[Vec<u32>]) -> ModuleMap {
        let a = target.algebra();
        let f = a.field();
        let n = a.vertex_count();
        let blocks = (0..n)
            .map(|v| {
                let off = self.offsets(a, v);
                let rows = self.vertices.iter().map(|&j| a.between(j, v).len()).sum();
                let mut block = Matrix::zeros(f, rows, target.dim_at(v));
                for (c, &j) in self.vertices.iter().enumerate() {
                    let g = Matrix::row_vector(f, &gens[c]);
                    for (row, &b) in a.between(j, v).iter().enumerate() {
                        block.set_block(off[c] + row, 0, &g.mul(&target.basis_action(b)));
                    }
                }
                block
            })
            .collect();
        ModuleMap { blocks }
    }

    /// Images of the generators under a map out of this sum.
    pub fn generator_images(&self, a: &Algebra, f: &ModuleMap) -> Vec<Vec<u32>> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(c, &j)| f.blocks[j].row(self.generator_row(a, c)).to_vec())
            .collect()
    }

    /// `dim Hom(P, M) = sum_c dim M e_{j_c}`.
    pub fn hom_dim_to(&self, m: &Module) -> usize {
        self.vertices.iter().map(|&j| m.dim_at(j)).sum()
    }
}

/// A map between sums of indecomposable projectives.
///
/// `entries[r][c]` is the image of the generator of source summand `r` in target summand
/// `c`: an element of `e_{target[c]} A e_{source[r]}` in `between` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    pub source: ProjSum,
    pub target: ProjSum,
    pub entries: Vec<Vec<Vec<u32>>>,
}

impl ProjMap {
    pub fn zero(a: &Algebra, source: ProjSum, target: ProjSum) -> ProjMap {
        let entries = source
            .vertices
            .iter()
            .map(|&i| target.vertices.iter().map(|&j| vec![0; a.between(j, i).len()]).collect())
            .collect();
        ProjMap {
            source,
            target,
            entries,
        }
    }

    pub fn identity(a: &Algebra, p: &ProjSum) -> ProjMap {
        let mut m = ProjMap::zero(a, p.clone(), p.clone());
        for (r, &v) in p.vertices.iter().enumerate() {
            m.entries[r][r][a.position_in_between(a.vertex_element(v))] = 1;
        }
        m
    }

    /// Dimension of `Hom(source, target)`.
    pub fn space_dim(a: &Algebra, source: &ProjSum, target: &ProjSum) -> usize {
        source
            .vertices
            .iter()
            .map(|&i| target.vertices.iter().map(|&j| a.between(j, i).len()).sum::<usize>())
            .sum()
    }

    /// Coordinates, ordered by source summand, then target summand.
    pub fn coords(&self) -> Vec<u32> {
        self.entries.iter().flatten().flatten().copied().collect()
    }

    pub fn from_coords(a: &Algebra, source: &ProjSum, target: &ProjSum, v: &[u32]) -> ProjMap {
        let mut m = ProjMap::zero(a, source.clone(), target.clone());
        let mut off = 0;
        for row in &mut m.entries {
            for e in row {
                let len = e.len();
                e.copy_from_slice(&v[off..off + len]);
                off += len;
            }
        }
        assert_eq!(off, v.len());
        m
    }

    /// Standard basis of `Hom(source, target)` (one path per entry).
    pub fn basis(a: &Algebra, source: &ProjSum, target: &ProjSum) -> Vec<ProjMap> {
        let d = ProjMap::space_dim(a, source, target);
        (0..d)
            .map(|k| {
                let mut v = vec![0; d];
                v[k] = 1;
                ProjMap::from_coords(a, source, target, &v)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().flatten().all(|&x| x == 0)
    }

    fn zip_with(&self, other: &ProjMap, op: impl Fn(u32, u32) -> u32) -> ProjMap {
        assert_eq!((&self.source, &self.target), (&other.source, &other.target));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r1, r2)| {
                r1.iter()
                    .zip(r2)
                    .map(|(e1, e2)| e1.iter().zip(e2).map(|(&x, &y)| op(x, y)).collect())
                    .collect()
            })
            .collect();
        ProjMap {
            source: self.source.clone(),
            target: self.target.clone(),
            entries,
        }
    }

    pub fn add(&self, f: Fp, other: &ProjMap) -> ProjMap {
        self.zip_with(other, |x, y| f.add(x, y))
    }

    pub fn sub(&self, f: Fp, other: &ProjMap) -> ProjMap {
        self.zip_with(other, |x, y| f.sub(x, y))
    }

    pub fn scale(&self, f: Fp, c: u32) -> ProjMap {
        self.zip_with(self, |x, _| f.mul(x, c))
    }

    /// `self` followed by `next`.
    pub fn then(&self, a: &Algebra, next: &ProjMap) -> ProjMap {
        assert_eq!(self.target, next.source, "composing non-matching projective maps");
        let f = a.field();
        let mut out = ProjMap::zero(a, self.source.clone(), next.target.clone());
        for (r, &i) in self.source.vertices.iter().enumerate() {
            for (d, &k) in next.target.vertices.iter().enumerate() {
                let acc = &mut out.entries[r][d];
                for (c, &j) in self.target.vertices.iter().enumerate() {
                    let prod = a.mul_restricted(k, j, i, &next.entries[c][d], &self.entries[r][c]);
                    for (x, y) in acc.iter_mut().zip(prod) {
                        *x = f.add(*x, y);
                    }
                }
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(a: &Algebra, maps: &[&ProjMap]) -> ProjMap {
        let source = maps.iter().fold(ProjSum::default(), |s, m| s.concat(&m.source));
        let target = maps.iter().fold(ProjSum::default(), |s, m| s.concat(&m.target));
        let mut out = ProjMap::zero(a, source, target);
        let (mut r0, mut c0) = (0, 0);
        for m in maps {
            for (r, row) in m.entries.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    out.entries[r0 + r][c0 + c] = e.clone();
                }
            }
            r0 += m.source.len();
            c0 += m.target.len();
        }
        out
    }

    /// `(self, other)`: same source, targets concatenated.
    pub fn pair(&self, other: &ProjMap) -> ProjMap {
        assert_eq!(self.source, other.source);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r1, r2)| r1.iter().chain(r2).cloned().collect())
            .collect();
        ProjMap {
            source: self.source.clone(),
            target: self.target.concat(&other.target),
            entries,
        }
    }

    /// The induced module homomorphism between `source.module()` and `target.module()`.
    pub fn to_module_map(&self, a: &Algebra) -> ModuleMap {
        let f = a.field();
        let n = a.vertex_count();
        let blocks = (0..n)
            .map(|v| {
                let rows: usize = self.source.vertices.iter().map(|&i| a.between(i, v).len()).sum();
                let cols: usize = self.target.vertices.iter().map(|&j| a.between(j, v).len()).sum();
                let mut block = Matrix::zeros(f, rows, cols);
                let (ro, co) = (self.source.offsets(a, v), self.target.offsets(a, v));
                for (r, &i) in self.source.vertices.iter().enumerate() {
                    for (bpos, &b) in a.between(i, v).iter().enumerate() {
                        let mut unit = vec![0u32; a.between(i, v).len()];
                        unit[bpos] = 1;
                        let _ = b;
                        for (c, &j) in self.target.vertices.iter().enumerate() {
                            let prod = a.mul_restricted(j, i, v, &self.entries[r][c], &unit);
                            for (k, x) in prod.into_iter().enumerate() {
                                if x != 0 {
                                    block.set(ro[r] + bpos, co[c] + k, x);
                                }
                            }
                        }
                    }
                }
                block
            })
            .collect();
        ModuleMap { blocks }
    }

    /// Reads a module map between projective sums back into entries.
    pub fn from_module_map(a: &Algebra, source: &ProjSum, target: &ProjSum, f: &ModuleMap) -> ProjMap {
        let mut out = ProjMap::zero(a, source.clone(), target.clone());
        let images = source.generator_images(a, f);
        for (r, &i) in source.vertices.iter().enumerate() {
            let co = target.offsets(a, i);
            for (c, &j) in target.vertices.iter().enumerate() {
                let len = a.between(j, i).len();
                out.entries[r][c] = images[r][co[c]..co[c] + len].to_vec();
            }
        }
        out
    }

    /// Same entries read as a map over the opposite algebra, in the other direction:
    /// `Hom_A(-, A)` applied to `self`.
    pub fn dualize(&self) -> ProjMap {
        let entries = (0..self.target.len())
            .map(|c| (0..self.source.len()).map(|r| self.entries[r][c].clone()).collect())
            .collect();
        ProjMap {
            source: self.target.clone(),
            target: self.source.clone(),
            entries,
        }
    }

    /// The linear map `Hom(target, X) -> Hom(source, X)`, `g -> g . self`, as a
    /// column-convention matrix over generator-image coordinates.
    pub fn induced_on_hom(&self, x: &Module) -> Matrix {
        let f = x.field();
        let rows = self.source.hom_dim_to(x);
        let cols = self.target.hom_dim_to(x);
        let mut m = Matrix::zeros(f, rows, cols);
        let mut r0 = 0;
        for (r, &i) in self.source.vertices.iter().enumerate() {
            let mut c0 = 0;
            for (c, &j) in self.target.vertices.iter().enumerate() {
                // generator image y_r = sum_c x_c * X(entry[r][c])
                let act = x.restricted_action(j, i, &self.entries[r][c]);
                m.set_block(r0, c0, &act.transpose());
                c0 += x.dim_at(j);
            }
            r0 += x.dim_at(i);
        }
        m
    }
}

/// A projective presentation `P_{-1} -> P_0`, also read as a two-term complex.
#[derive(Clone, Debug)]
pub struct Presentation {
    algebra: Arc<Algebra>,
    map: ProjMap,
}

impl Presentation {
    pub fn new(algebra: Arc<Algebra>, map: ProjMap) -> Presentation {
        Presentation { algebra, map }
    }

    /// `0 -> P`.
    pub fn stalk(algebra: Arc<Algebra>, p: ProjSum) -> Presentation {
        let map = ProjMap::zero(&algebra, ProjSum::default(), p);
        Presentation { algebra, map }
    }

    /// `P -> 0`.
    pub fn shifted(algebra: Arc<Algebra>, p: ProjSum) -> Presentation {
        let map = ProjMap::zero(&algebra, p, ProjSum::default());
        Presentation { algebra, map }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn map(&self) -> &ProjMap {
        &self.map
    }

    pub fn p_minus1(&self) -> &ProjSum {
        &self.map.source
    }

    pub fn p0(&self) -> &ProjSum {
        &self.map.target
    }

    pub fn direct_sum(parts: &[&Presentation]) -> Presentation {
        let a = parts[0].algebra.clone();
        let maps: Vec<&ProjMap> = parts.iter().map(|p| &p.map).collect();
        Presentation {
            map: ProjMap::direct_sum(&a, &maps),
            algebra: a,
        }
    }

    pub fn module_map(&self) -> ModuleMap {
        self.map.to_module_map(&self.algebra)
    }

    /// `H^0`: the presented module.
    pub fn cokernel(&self) -> Module {
        let target = self.p0().module(&self.algebra);
        self.module_map().cokernel(&target).0
    }

    /// `H^{-1}`.
    pub fn kernel(&self) -> Module {
        let source = self.p_minus1().module(&self.algebra);
        self.module_map().kernel(&source).0
    }

    pub fn is_monomorphic(&self) -> bool {
        self.module_map().is_injective()
    }

    /// Image of the map lies in the radical of `P_0` and its kernel in the radical of
    /// `P_{-1}`: the presentation has no split summands.
    pub fn is_minimal(&self) -> bool {
        let a = &self.algebra;
        let p0 = self.p0().module(a);
        let pm1 = self.p_minus1().module(a);
        let f = self.module_map();
        let image_in_rad = contained_in(&f.image(&p0).1, &p0.radical_rows());
        let kernel_in_rad = contained_in(&f.kernel(&pm1).1, &pm1.radical_rows());
        image_in_rad && kernel_in_rad
    }

    /// `Hom(P_0, X) -> Hom(P_{-1}, X)`, column convention.
    pub fn induced_on_hom(&self, x: &Module) -> Matrix {
        self.map.induced_on_hom(x)
    }
}

/// Whether the subspaces spanned by `inc.blocks[v]` lie in `rows[v]`.
pub(crate) fn contained_in(inc: &ModuleMap, rows: &[Matrix]) -> bool {
    inc.blocks.iter().zip(rows).all(|(sub, big)| {
        let f = big.field();
        let stacked = Matrix::vstack(f, big.cols(), &[big, sub]);
        stacked.rank() == big.rank()
    })
}

/// A projective cover `P -> M` with its kernel.
#[derive(Clone, Debug)]
pub struct Cover {
    pub sum: ProjSum,
    pub projective: Module,
    pub map: ModuleMap,
    pub kernel: Module,
    pub inclusion: ModuleMap,
}

/// Projective cover: one copy of `P_i` per basis vector of `top(M) e_i`, lifted through
/// a section of `M -> top(M)`.
pub fn projective_cover(m: &Module) -> Cover {
    let a = m.algebra();
    let (_, _, sections) = m.quotient(&m.radical_rows());
    let mut vertices = Vec::new();
    let mut gens = Vec::new();
    for (v, sec) in sections.iter().enumerate() {
        for r in 0..sec.rows() {
            vertices.push(v);
            gens.push(sec.row(r).to_vec());
        }
    }
    let sum = ProjSum::new(vertices);
    let projective = sum.module(a);
    let map = sum.map_to_module(m, &gens);
    assert!(map.is_surjective(), "projective cover is not onto");
    let (kernel, inclusion) = map.kernel(&projective);
    debug_assert!(contained_in(&inclusion, &projective.radical_rows()));
    Cover {
        sum,
        projective,
        map,
        kernel,
        inclusion,
    }
}

/// Minimal projective presentation `P_{-1} -> P_0 -> M -> 0`.
pub fn min_presentation(m: &Module) -> Presentation {
    let a = m.algebra();
    let outer = projective_cover(m);
    let inner = projective_cover(&outer.kernel);
    let composite = inner.map.then(&outer.inclusion);
    let map = ProjMap::from_module_map(a, &inner.sum, &outer.sum, &composite);
    Presentation::new(a.clone(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Fp;

    fn a2() -> Arc<Algebra> {
        Arc::new(Algebra::linear_a(Fp::default(), 2))
    }

    #[test]
    fn projective_dims() {
        let a = a2();
        assert_eq!(ProjSum::new(vec![0]).module(&a).dims(), &[1, 1]);
        assert_eq!(ProjSum::new(vec![1]).module(&a).dims(), &[0, 1]);
        assert_eq!(ProjSum::regular(&a).module(&a).total_dim(), 3);
    }

    #[test]
    fn module_map_round_trip() {
        let a = a2();
        let s = ProjSum::new(vec![1, 0]);
        let t = ProjSum::new(vec![0, 0, 1]);
        for b in ProjMap::basis(&a, &s, &t) {
            let mm = b.to_module_map(&a);
            assert!(mm.is_homomorphism(&s.module(&a), &t.module(&a)));
            assert_eq!(ProjMap::from_module_map(&a, &s, &t, &mm), b);
        }
    }

    #[test]
    fn composition_matches_module_maps() {
        let a = Arc::new(Algebra::linear_a(Fp::default(), 3));
        let s = ProjSum::new(vec![2, 1]);
        let t = ProjSum::new(vec![1, 0]);
        let u = ProjSum::new(vec![0]);
        let f = a.field();
        let x = ProjMap::basis(&a, &s, &t).into_iter().fold(ProjMap::zero(&a, s.clone(), t.clone()), |acc, m| acc.add(f, &m));
        let y = ProjMap::basis(&a, &t, &u).into_iter().fold(ProjMap::zero(&a, t.clone(), u.clone()), |acc, m| acc.add(f, &m));
        let xy = x.then(&a, &y);
        assert_eq!(xy.to_module_map(&a), x.to_module_map(&a).then(&y.to_module_map(&a)));
    }
}
