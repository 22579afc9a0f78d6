use std::sync::Arc;

use rand::Rng;

use crate::algebra::{Algebra, Path};
use crate::error::{Error, Result};
use crate::exactlin::{poly_eval, Fp, Matrix};

/// A finite dimensional right module given as a quiver representation.
///
/// The map of an arrow `a: i -> j` is a `dims[i] x dims[j]` matrix acting on row vectors.
#[derive(Clone, Debug)]
pub struct Module {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// Per-vertex blocks of a module homomorphism, row-vector convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

/// A basis of `Hom(M, N)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<ModuleMap>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Random linear combination of the basis (zero map for an empty basis needs shapes,
    /// so callers should check `dim() > 0`).
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> ModuleMap {
        let f = self.basis[0].field();
        let coeffs: Vec<u32> = (0..self.dim()).map(|_| rng.gen_range(0..f.p())).collect();
        self.combine(&coeffs)
    }

    pub fn combine(&self, coeffs: &[u32]) -> ModuleMap {
        let mut acc = self.basis[0].scale(coeffs[0]);
        for (b, &c) in self.basis.iter().zip(coeffs).skip(1) {
            if c != 0 {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

impl Module {
    /// Validates shapes and that every relation acts as zero.
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Module> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::InvalidModule(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        if maps.len() != q.arrows.len() {
            return Err(Error::InvalidModule(format!(
                "{} arrow maps for {} arrows",
                maps.len(),
                q.arrows.len()
            )));
        }
        for (a, m) in q.arrows.iter().zip(&maps) {
            if m.rows() != dims[a.source] || m.cols() != dims[a.target] {
                return Err(Error::InvalidModule(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.source],
                    dims[a.target],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::InvalidModule("matrix over a different field".into()));
            }
        }
        let module = Module { algebra, dims, maps };
        for (k, r) in module.algebra.relations().iter().enumerate() {
            let (s, t) = (r.terms[0].1.source, r.terms[0].1.target);
            let mut acc = Matrix::zeros(module.field(), module.dims[s], module.dims[t]);
            for (c, p) in &r.terms {
                acc = acc.add(&module.path_action(p).scale(*c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!("relation {k} does not act as zero")));
            }
        }
        Ok(module)
    }

    pub(crate) fn from_parts(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Module {
        debug_assert_eq!(maps.len(), algebra.quiver().arrows.len());
        Module { algebra, dims, maps }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Module {
        let f = algebra.field();
        let maps = algebra
            .quiver()
            .arrows
            .iter()
            .map(|_| Matrix::zeros(f, 0, 0))
            .collect();
        let n = algebra.vertex_count();
        Module {
            algebra,
            dims: vec![0; n],
            maps,
        }
    }

    /// One-dimensional at `v`, zero elsewhere.
    pub fn simple(algebra: Arc<Algebra>, v: usize) -> Module {
        let f = algebra.field();
        let mut dims = vec![0; algebra.vertex_count()];
        dims[v] = 1;
        let maps = algebra
            .quiver()
            .arrows
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.source], dims[a.target]))
            .collect();
        Module { algebra, dims, maps }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Fp {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn arrow_maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    pub(crate) fn check_same_algebra(&self, other: &Module) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Action of a path: product of the arrow maps along it.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.field(), self.dims[p.source]);
        for &a in &p.arrows {
            acc = acc.mul(&self.maps[a]);
        }
        acc
    }

    /// Action of a basis element of the algebra.
    pub fn basis_action(&self, b: usize) -> Matrix {
        self.path_action(&self.algebra.basis()[b])
    }

    /// Action of `x in e_i A e_j` given in coordinates over `between(i, j)`.
    pub fn restricted_action(&self, i: usize, j: usize, coords: &[u32]) -> Matrix {
        let idx = self.algebra.between(i, j);
        assert_eq!(idx.len(), coords.len());
        let mut acc = Matrix::zeros(self.field(), self.dims[i], self.dims[j]);
        for (&b, &c) in idx.iter().zip(coords) {
            if c != 0 {
                acc = acc.add(&self.basis_action(b).scale(c));
            }
        }
        acc
    }

    /// Direct sum; components are concatenated vertexwise in the given order.
    pub fn direct_sum(parts: &[&Module]) -> Module {
        let first = parts.first().expect("direct sum of no modules");
        let alg = first.algebra.clone();
        let f = alg.field();
        let n = alg.vertex_count();
        let dims = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let maps = (0..alg.quiver().arrows.len())
            .map(|a| {
                let blocks: Vec<&Matrix> = parts.iter().map(|m| &m.maps[a]).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        Module::from_parts(alg, dims, maps)
    }

    /// `self` repeated `k` times.
    pub fn power(&self, k: usize) -> Module {
        if k == 0 {
            return Module::zero(self.algebra.clone());
        }
        let parts: Vec<&Module> = std::iter::repeat(self).take(k).collect();
        Module::direct_sum(&parts)
    }

    /// Submodule spanned vertexwise by the rows of `rows[v]` (assumed invariant and of
    /// full row rank). Returns the submodule and its inclusion.
    pub fn submodule(&self, rows: Vec<Matrix>) -> (Module, ModuleMap) {
        let q = self.algebra.quiver();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let image = rows[a.source].mul(&self.maps[ai]);
                rows[a.target]
                    .solve_left(&image)
                    .expect("subspace is not closed under the arrow action")
            })
            .collect();
        let dims = rows.iter().map(Matrix::rows).collect();
        let sub = Module::from_parts(self.algebra.clone(), dims, maps);
        (sub, ModuleMap { blocks: rows })
    }

    /// Quotient by the (invariant) subspaces spanned by `rows[v]`.
    /// Returns the quotient, the projection, and a vertexwise section of the projection.
    pub fn quotient(&self, rows: &[Matrix]) -> (Module, ModuleMap, Vec<Matrix>) {
        let f = self.field();
        let mut projections = Vec::new();
        let mut sections = Vec::new();
        for (v, r) in rows.iter().enumerate() {
            let d = self.dims[v];
            let (red, pivots) = r.rref();
            let mut is_pivot = vec![false; d];
            for &c in &pivots {
                is_pivot[c] = true;
            }
            let free: Vec<usize> = (0..d).filter(|&c| !is_pivot[c]).collect();
            let mut proj = Matrix::zeros(f, d, free.len());
            let mut sec = Matrix::zeros(f, free.len(), d);
            for (k, &c) in free.iter().enumerate() {
                proj.set(c, k, 1);
                sec.set(k, c, 1);
            }
            for (row, &pc) in pivots.iter().enumerate() {
                for (k, &c) in free.iter().enumerate() {
                    proj.set(pc, k, f.neg(red.get(row, c)));
                }
            }
            projections.push(proj);
            sections.push(sec);
        }
        let q = self.algebra.quiver();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| sections[a.source].mul(&self.maps[ai]).mul(&projections[a.target]))
            .collect();
        let dims = projections.iter().map(Matrix::cols).collect();
        let quot = Module::from_parts(self.algebra.clone(), dims, maps);
        (quot, ModuleMap { blocks: projections }, sections)
    }

    /// Radical: the sum of the images of all arrow maps.
    pub fn radical(&self) -> (Module, ModuleMap) {
        let rows = self.radical_rows();
        self.submodule(rows)
    }

    pub(crate) fn radical_rows(&self) -> Vec<Matrix> {
        let f = self.field();
        let q = self.algebra.quiver();
        (0..self.dims.len())
            .map(|v| {
                let parts: Vec<&Matrix> = q
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.target == v)
                    .map(|(ai, _)| &self.maps[ai])
                    .collect();
                Matrix::vstack(f, self.dims[v], &parts).row_space_basis()
            })
            .collect()
    }

    /// `M / rad M`.
    pub fn top(&self) -> Module {
        self.quotient(&self.radical_rows()).0
    }

    /// Identity endomorphism.
    pub fn identity(&self) -> ModuleMap {
        ModuleMap {
            blocks: self.dims.iter().map(|&d| Matrix::identity(self.field(), d)).collect(),
        }
    }

    /// Canonical inclusion of the `k`-th summand into `direct_sum(parts)`.
    pub fn summand_inclusion(parts: &[&Module], k: usize) -> ModuleMap {
        let f = parts[0].field();
        let n = parts[0].dims.len();
        let blocks = (0..n)
            .map(|v| {
                let total: usize = parts.iter().map(|m| m.dims[v]).sum();
                let off: usize = parts[..k].iter().map(|m| m.dims[v]).sum();
                let mut b = Matrix::zeros(f, parts[k].dims[v], total);
                b.set_block(0, off, &Matrix::identity(f, parts[k].dims[v]));
                b
            })
            .collect();
        ModuleMap { blocks }
    }

    /// Canonical projection of `direct_sum(parts)` onto the `k`-th summand.
    pub fn summand_projection(parts: &[&Module], k: usize) -> ModuleMap {
        let inc = Module::summand_inclusion(parts, k);
        ModuleMap {
            blocks: inc.blocks.iter().map(Matrix::transpose).collect(),
        }
    }
}

impl ModuleMap {
    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        let f = source.field();
        ModuleMap {
            blocks: source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&a, &b)| Matrix::zeros(f, a, b))
                .collect(),
        }
    }

    pub fn field(&self) -> Fp {
        self.blocks[0].field()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().zip(&next.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// Checks shapes and commutation with every arrow.
    pub fn is_homomorphism(&self, source: &Module, target: &Module) -> bool {
        let q = source.algebra.quiver();
        self.blocks.len() == source.dims.len()
            && self
                .blocks
                .iter()
                .enumerate()
                .all(|(v, b)| b.rows() == source.dims[v] && b.cols() == target.dims[v])
            && q.arrows.iter().enumerate().all(|(ai, a)| {
                source.maps[ai].mul(&self.blocks[a.target]) == self.blocks[a.source].mul(&target.maps[ai])
            })
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.rows() == 0 || b.pow(b.rows() as u64).is_zero())
    }

    /// Row-major blocks concatenated in vertex order.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn from_flat(source: &Module, target: &Module, v: &[u32]) -> ModuleMap {
        let f = source.field();
        let mut off = 0;
        let blocks = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&a, &b)| {
                let m = Matrix::from_residues(f, a, b, v[off..off + a * b].to_vec());
                off += a * b;
                m
            })
            .collect();
        ModuleMap { blocks }
    }

    /// Kernel as a submodule of `source`.
    pub fn kernel(&self, source: &Module) -> (Module, ModuleMap) {
        let rows = self.blocks.iter().map(Matrix::left_kernel).collect();
        source.submodule(rows)
    }

    /// Image as a submodule of `target`.
    pub fn image(&self, target: &Module) -> (Module, ModuleMap) {
        let rows = self.blocks.iter().map(Matrix::row_space_basis).collect();
        target.submodule(rows)
    }

    /// Cokernel with its projection from `target`.
    pub fn cokernel(&self, target: &Module) -> (Module, ModuleMap) {
        let rows: Vec<Matrix> = self.blocks.iter().map(Matrix::row_space_basis).collect();
        let (q, proj, _) = target.quotient(&rows);
        (q, proj)
    }

    /// Block-diagonal sum of maps.
    pub fn direct_sum(maps: &[&ModuleMap]) -> ModuleMap {
        let f = maps[0].field();
        let n = maps[0].blocks.len();
        ModuleMap {
            blocks: (0..n)
                .map(|v| {
                    let parts: Vec<&Matrix> = maps.iter().map(|m| &m.blocks[v]).collect();
                    Matrix::block_diag(f, &parts)
                })
                .collect(),
        }
    }
}

/// The linear system whose kernel is `Hom(M, N)`, over flattened block unknowns.
pub fn hom_system(m: &Module, n: &Module) -> Matrix {
    let f = m.field();
    let q = m.algebra.quiver();
    let mut offsets = Vec::with_capacity(m.dims.len());
    let mut unknowns = 0;
    for v in 0..m.dims.len() {
        offsets.push(unknowns);
        unknowns += m.dims[v] * n.dims[v];
    }
    let eqs: usize = q.arrows.iter().map(|a| m.dims[a.source] * n.dims[a.target]).sum();
    let mut sys = Matrix::zeros(f, eqs, unknowns);
    let mut row = 0;
    for (ai, a) in q.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = &m.maps[ai];
        let na = &n.maps[ai];
        // (M_a f_t - f_s N_a)[i][j] = 0
        for i in 0..m.dims[s] {
            for j in 0..n.dims[t] {
                for k in 0..m.dims[t] {
                    let c = ma.get(i, k);
                    if c != 0 {
                        sys.add_at(row, offsets[t] + k * n.dims[t] + j, c);
                    }
                }
                for k in 0..n.dims[s] {
                    let c = na.get(k, j);
                    if c != 0 {
                        sys.add_at(row, offsets[s] + i * n.dims[s] + k, f.neg(c));
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

pub fn hom_basis(m: &Module, n: &Module) -> HomSpace {
    let sys = hom_system(m, n);
    HomSpace {
        basis: sys
            .kernel_basis()
            .iter()
            .map(|v| ModuleMap::from_flat(m, n, v))
            .collect(),
    }
}

pub fn hom_dim(m: &Module, n: &Module) -> usize {
    let sys = hom_system(m, n);
    sys.cols() - sys.rank()
}

/// Samples homomorphisms looking for an isomorphism; `None` means no witness was found.
pub fn find_isomorphism<R: Rng>(m: &Module, n: &Module, rng: &mut R) -> Option<ModuleMap> {
    if m.dims != n.dims {
        return None;
    }
    if m.is_zero() {
        return Some(ModuleMap::zero(m, n));
    }
    let hom = hom_basis(m, n);
    if hom.dim() == 0 {
        return None;
    }
    hom.basis
        .iter()
        .cloned()
        .chain((0..16).map(|_| hom.random_element(rng)))
        .find(ModuleMap::is_isomorphism)
}

/// Samples homomorphisms looking for a surjection `m -> n`.
pub fn find_surjection<R: Rng>(m: &Module, n: &Module, rng: &mut R) -> Option<ModuleMap> {
    if n.is_zero() {
        return Some(ModuleMap::zero(m, n));
    }
    if m.dims.iter().zip(&n.dims).any(|(a, b)| a < b) {
        return None;
    }
    let hom = hom_basis(m, n);
    if hom.dim() == 0 {
        return None;
    }
    hom.basis
        .iter()
        .cloned()
        .chain((0..16).map(|_| hom.random_element(rng)))
        .find(ModuleMap::is_surjective)
}

/// Probabilistic locality test of `End(M)`: every sampled endomorphism must be
/// invertible or nilpotent. Checks each basis element plus `samples` random ones.
pub fn is_indecomposable<R: Rng>(m: &Module, rng: &mut R, samples: usize) -> bool {
    if m.is_zero() {
        return false;
    }
    let end = hom_basis(m, m);
    let ok = |f: &ModuleMap| f.is_isomorphism() || f.is_nilpotent();
    end.basis.iter().all(ok) && (0..samples).all(|_| ok(&end.random_element(rng)))
}

/// Splits `m` into summands using Fitting's lemma on `f - c` for random endomorphisms
/// `f` and eigenvalues `c`. One-sided: a summand that is not split further may still
/// decompose, with probability controlled by `p`.
pub fn split_fitting<R: Rng>(m: &Module, rng: &mut R, attempts: usize) -> Vec<Module> {
    if m.is_zero() {
        return Vec::new();
    }
    let f = m.field();
    let end = hom_basis(m, m);
    let big = (0..m.dims.len()).max_by_key(|&v| m.dims[v]).unwrap_or(0);
    let n = m.total_dim() as u64;
    for _ in 0..attempts {
        let g = end.random_element(rng);
        let cp = g.blocks[big].char_poly();
        let Some(c) = (0..f.p()).find(|&x| poly_eval(f, &cp, x) == 0) else {
            continue;
        };
        let shifted = ModuleMap {
            blocks: g
                .blocks
                .iter()
                .map(|b| b.sub(&Matrix::scalar(f, b.rows(), c)).pow(n))
                .collect(),
        };
        let (ker, _) = shifted.kernel(m);
        let (img, _) = shifted.image(m);
        if !ker.is_zero() && !img.is_zero() {
            let mut out = split_fitting(&ker, rng, attempts);
            out.extend(split_fitting(&img, rng, attempts));
            return out;
        }
    }
    vec![m.clone()]
}
