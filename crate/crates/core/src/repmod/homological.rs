use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{span_rank, Matrix};
use crate::repmod::module::{hom_basis, Module, ModuleMap};
use crate::repmod::proj::{min_presentation, projective_cover, Cover, ProjMap, ProjSum};

/// Ext^1 computed from the projective cover of the first argument.
///
/// `Ext^1(M, N) = coker(Hom(P_0, N) -> Hom(K, N))` where `K` is the kernel of the cover.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    pub cover: Cover,
    /// Maps `K -> N` whose classes form a basis of `Ext^1`.
    pub cocycles: Vec<ModuleMap>,
}

pub fn ext1(m: &Module, n: &Module) -> Result<Ext1> {
    m.check_same_algebra(n)?;
    let a = m.algebra();
    let cover = projective_cover(m);
    let hom_kn = hom_basis(&cover.kernel, n);
    let len = cover.kernel.dims().iter().zip(n.dims()).map(|(x, y)| x * y).sum();

    // restrictions of maps P_0 -> N to K
    let mut coboundaries = Vec::new();
    for (c, &j) in cover.sum.vertices.iter().enumerate() {
        for k in 0..n.dim_at(j) {
            let mut gens: Vec<Vec<u32>> = cover.sum.vertices.iter().map(|&v| vec![0; n.dim_at(v)]).collect();
            gens[c][k] = 1;
            let g = cover.sum.map_to_module(n, &gens);
            coboundaries.push(cover.inclusion.then(&g).flatten());
        }
    }
    let f = a.field();
    let mut span = coboundaries.clone();
    let mut rank = span_rank(f, len, &span);
    let boundary_rank = rank;
    let mut cocycles = Vec::new();
    for h in &hom_kn.basis {
        span.push(h.flatten());
        let r = span_rank(f, len, &span);
        if r > rank {
            rank = r;
            cocycles.push(h.clone());
        } else {
            span.pop();
        }
    }
    debug_assert_eq!(cocycles.len(), hom_kn.dim() - boundary_rank);
    Ok(Ext1 {
        dim: cocycles.len(),
        cover,
        cocycles,
    })
}

pub fn ext1_dim(m: &Module, n: &Module) -> usize {
    ext1(m, n).map(|e| e.dim).unwrap_or(0)
}

/// Middle term of the extension `0 -> N -> E -> M -> 0` classified by `cocycle: K -> N`,
/// built as the pushout of `0 -> K -> P_0 -> M -> 0` along the cocycle.
pub fn middle_term(m: &Module, n: &Module, ext: &Ext1, cocycle: &ModuleMap) -> Module {
    let f = m.field();
    let cover = &ext.cover;
    // K -> N + P_0, k -> (h(k), -i(k))
    let blocks = cocycle
        .blocks
        .iter()
        .zip(&cover.inclusion.blocks)
        .map(|(h, i)| Matrix::hstack(f, h.rows(), &[h, &i.neg()]))
        .collect();
    let total = Module::direct_sum(&[n, &cover.projective]);
    let (e, _) = ModuleMap { blocks }.cokernel(&total);
    debug_assert_eq!(e.total_dim(), m.total_dim() + n.total_dim());
    e
}

/// Vector space dual, a module over the opposite algebra `op`.
pub fn dual_into(m: &Module, op: &Arc<Algebra>) -> Result<Module> {
    if !m.algebra().is_opposite_of(op) {
        return Err(Error::AlgebraMismatch);
    }
    let maps = m.arrow_maps().iter().map(Matrix::transpose).collect();
    Ok(Module::from_parts(op.clone(), m.dims().to_vec(), maps))
}

/// Vector space dual over a freshly built opposite algebra.
pub fn dual(m: &Module) -> Module {
    let op = Arc::new(m.algebra().opposite());
    dual_into(m, &op).expect("opposite algebra")
}

/// Auslander-Bridger transpose over `op`: the cokernel of `Hom(P_0, A) -> Hom(P_{-1}, A)`
/// for the minimal presentation.
pub fn transpose_into(m: &Module, op: &Arc<Algebra>) -> Result<Module> {
    if !m.algebra().is_opposite_of(op) {
        return Err(Error::AlgebraMismatch);
    }
    let sigma = min_presentation(m);
    let dual_map: ProjMap = sigma.map().dualize();
    let target = dual_map.target.module(op);
    Ok(dual_map.to_module_map(op).cokernel(&target).0)
}

pub fn transpose(m: &Module) -> Module {
    let op = Arc::new(m.algebra().opposite());
    transpose_into(m, &op).expect("opposite algebra")
}

/// Auslander-Reiten translate `D Tr M`.
pub fn tau(m: &Module) -> Module {
    let op = Arc::new(m.algebra().opposite());
    let tr = transpose_into(m, &op).expect("opposite algebra");
    dual_into(&tr, m.algebra()).expect("double opposite")
}

/// Inverse translate `Tr D M`.
pub fn tau_inverse(m: &Module) -> Module {
    let op = Arc::new(m.algebra().opposite());
    let d = dual_into(m, &op).expect("opposite algebra");
    transpose_into(&d, m.algebra()).expect("double opposite")
}

/// Indecomposable projective `P_i = e_i A`.
pub fn projective(a: &Arc<Algebra>, i: usize) -> Module {
    ProjSum::new(vec![i]).module(a)
}

/// Indecomposable injective `I_i = D(A e_i)`.
pub fn injective(a: &Arc<Algebra>, i: usize) -> Module {
    let op = Arc::new(a.opposite());
    let p = projective(&op, i);
    dual_into(&p, a).expect("double opposite")
}

pub fn simple(a: &Arc<Algebra>, i: usize) -> Module {
    Module::simple(a.clone(), i)
}

/// The regular module `A_A`.
pub fn regular(a: &Arc<Algebra>) -> Module {
    ProjSum::regular(a).module(a)
}

/// Trace of `t` in `m`: the sum of the images of all maps `t -> m`.
pub fn trace(t: &Module, m: &Module) -> Result<(Module, ModuleMap)> {
    t.check_same_algebra(m)?;
    let f = m.field();
    let hom = hom_basis(t, m);
    let rows = (0..m.dims().len())
        .map(|v| {
            let parts: Vec<&Matrix> = hom.basis.iter().map(|g| &g.blocks[v]).collect();
            Matrix::vstack(f, m.dim_at(v), &parts).row_space_basis()
        })
        .collect();
    Ok(m.submodule(rows))
}

/// Stacked images of a basis of `Hom(t, m)` at every vertex; `m` is generated by `t`
/// iff each has rank `dim m e_v`.
pub fn trace_span(t: &Module, m: &Module) -> Vec<Matrix> {
    let f = m.field();
    let hom = hom_basis(t, m);
    (0..m.dims().len())
        .map(|v| {
            let parts: Vec<&Matrix> = hom.basis.iter().map(|g| &g.blocks[v]).collect();
            Matrix::vstack(f, m.dim_at(v), &parts)
        })
        .collect()
}

/// `m` lies in `Gen(t)`.
pub fn is_generated_by(t: &Module, m: &Module) -> bool {
    trace_span(t, m)
        .iter()
        .zip(m.dims())
        .all(|(s, &d)| s.rank() == d)
}

/// Linear system `x -> (M(x) at every vertex pair)`; its kernel is the annihilator.
pub fn annihilator_system(m: &Module) -> Matrix {
    let a = m.algebra();
    let f = a.field();
    let actions: Vec<Vec<u32>> = (0..a.dim()).map(|b| m.basis_action(b).flatten()).collect();
    // pad per basis element to a common coordinate layout indexed by (source, target)
    let n = a.vertex_count();
    let mut offsets = vec![vec![0usize; n]; n];
    let mut len = 0;
    for (i, row) in offsets.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = len;
            len += m.dim_at(i) * m.dim_at(j);
        }
    }
    let mut sys = Matrix::zeros(f, len, a.dim());
    for (b, act) in actions.iter().enumerate() {
        let p = &a.basis()[b];
        let off = offsets[p.source][p.target];
        for (k, &x) in act.iter().enumerate() {
            sys.set(off + k, b, x);
        }
    }
    sys
}

/// Basis of `ann(M) = {a : M a = 0}` as coordinate vectors over the algebra basis.
pub fn annihilator(m: &Module) -> Vec<Vec<u32>> {
    annihilator_system(m).kernel_basis()
}

pub fn is_faithful(m: &Module) -> bool {
    annihilator_system(m).is_injective()
}

/// Nonzero at every vertex.
pub fn is_sincere(m: &Module) -> bool {
    m.dims().iter().all(|&d| d > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Fp;
    use crate::repmod::module::hom_dim;
    use crate::repmod::proj::min_presentation;

    fn a2() -> Arc<Algebra> {
        Arc::new(Algebra::linear_a(Fp::default(), 2))
    }

    fn a3() -> Arc<Algebra> {
        Arc::new(Algebra::linear_a(Fp::default(), 3))
    }

    fn n3() -> Arc<Algebra> {
        Arc::new(Algebra::cyclic_nakayama(Fp::default(), 3, 2))
    }

    /// Interval module over the linear quiver, supported on `lo..=hi` with identity maps.
    fn interval(a: &Arc<Algebra>, lo: usize, hi: usize) -> Module {
        let f = a.field();
        let dims: Vec<usize> = (0..a.vertex_count()).map(|v| usize::from(lo <= v && v <= hi)).collect();
        let maps = a
            .quiver()
            .arrows
            .iter()
            .map(|ar| {
                let mut m = Matrix::zeros(f, dims[ar.source], dims[ar.target]);
                if dims[ar.source] == 1 && dims[ar.target] == 1 {
                    m.set(0, 0, 1);
                }
                m
            })
            .collect();
        Module::new(a.clone(), dims, maps).unwrap()
    }

    #[test]
    fn projectives_injectives_simples() {
        let a = a2();
        assert_eq!(projective(&a, 0).dims(), &[1, 1]);
        assert_eq!(projective(&a, 1).dims(), &[0, 1]);
        assert_eq!(injective(&a, 0).dims(), &[1, 0]);
        assert_eq!(injective(&a, 1).dims(), &[1, 1]);
        let a = a3();
        assert_eq!(injective(&a, 2).dims(), &[1, 1, 1]);
        assert!(injective(&a, 2).arrow_maps().iter().all(|m| m.rank() == 1));
        let a = n3();
        for i in 0..3 {
            assert_eq!(projective(&a, i).total_dim(), 2);
            assert_eq!(injective(&a, i).total_dim(), 2);
        }
    }

    #[test]
    fn hom_examples() {
        let a = a2();
        let p1 = projective(&a, 0);
        let s2 = simple(&a, 1);
        assert_eq!(hom_dim(&p1, &s2), 0);
        assert_eq!(hom_dim(&p1, &p1), 1);
        let m = interval(&a3(), 0, 1);
        let mm = Module::direct_sum(&[&m, &m]);
        assert_eq!(hom_dim(&m, &mm), 2 * hom_dim(&m, &m));
    }

    #[test]
    fn kernels_and_cokernels() {
        let a = a2();
        let p1 = projective(&a, 0);
        assert!(p1.identity().kernel(&p1).0.is_zero());
        let zero = Module::zero(a.clone());
        let (c, _) = ModuleMap::zero(&zero, &p1).cokernel(&p1);
        assert_eq!(c.dims(), p1.dims());
        // P2 -> P1 via alpha
        let sigma = ProjMap::basis(&a, &ProjSum::new(vec![1]), &ProjSum::new(vec![0])).remove(0);
        let coker = sigma.to_module_map(&a).cokernel(&p1).0;
        assert_eq!(coker.dims(), &[1, 0]);
    }

    #[test]
    fn tops_and_radicals() {
        let a = a2();
        let p1 = projective(&a, 0);
        assert_eq!(p1.top().dims(), &[1, 0]);
        assert_eq!(p1.radical().0.dims(), &[0, 1]);
        assert!(simple(&a, 0).radical().0.is_zero());
        let s = Module::direct_sum(&[&p1, &simple(&a, 1)]);
        assert_eq!(s.top().dims(), &[1, 1]);
    }

    #[test]
    fn covers_and_presentations() {
        let a = a2();
        let s1 = simple(&a, 0);
        let c = projective_cover(&s1);
        assert_eq!(c.sum.vertices, vec![0]);
        let p2 = projective(&a, 1);
        assert_eq!(projective_cover(&p2).sum.vertices, vec![1]);
        assert!(projective_cover(&p2).kernel.is_zero());
        let m12 = interval(&a3(), 0, 1);
        assert_eq!(projective_cover(&m12).sum.vertices, vec![0]);

        let sigma = min_presentation(&s1);
        assert_eq!(sigma.p_minus1().vertices, vec![1]);
        assert_eq!(sigma.p0().vertices, vec![0]);
        assert!(sigma.is_minimal());
        assert!(min_presentation(&projective(&a, 0)).p_minus1().is_empty());
        let sigma = min_presentation(&simple(&a3(), 1));
        assert_eq!(sigma.p_minus1().vertices, vec![2]);
        assert_eq!(sigma.p0().vertices, vec![1]);
        // N3 simples have projective dimension infinity; the presentation still works
        let s = simple(&n3(), 0);
        let sigma = min_presentation(&s);
        assert_eq!(sigma.p0().vertices, vec![0]);
        assert_eq!(sigma.p_minus1().vertices, vec![1]);
        assert!(!sigma.is_monomorphic());
        assert_eq!(sigma.cokernel().dims(), s.dims());
    }

    #[test]
    fn ext_examples() {
        let a = a2();
        let (s1, s2) = (simple(&a, 0), simple(&a, 1));
        assert_eq!(ext1_dim(&projective(&a, 0), &s1), 0);
        let e = ext1(&s1, &s2).unwrap();
        assert_eq!(e.dim, 1);
        let mid = middle_term(&s1, &s2, &e, &e.cocycles[0]);
        assert_eq!(mid.dims(), &[1, 1]);
        assert_eq!(mid.arrow_map(0).rank(), 1);

        let a = a3();
        let m12 = interval(&a, 0, 1);
        let p2 = projective(&a, 1);
        let e = ext1(&m12, &p2).unwrap();
        assert_eq!(e.dim, 1);
        assert_eq!(middle_term(&m12, &p2, &e, &e.cocycles[0]).dims(), &[1, 2, 1]);
        let split = middle_term(&m12, &p2, &e, &ModuleMap::zero(&e.cover.kernel, &p2));
        assert_eq!(hom_dim(&split, &split), hom_dim(&Module::direct_sum(&[&p2, &m12]), &Module::direct_sum(&[&p2, &m12])));
    }

    #[test]
    fn tau_examples() {
        let a = a2();
        assert!(tau(&projective(&a, 0)).is_zero());
        assert!(tau(&projective(&a, 1)).is_zero());
        assert_eq!(tau(&simple(&a, 0)).dims(), &[0, 1]);
        assert_eq!(tau_inverse(&simple(&a, 1)).dims(), &[1, 0]);
        let a = a3();
        assert_eq!(tau(&simple(&a, 1)).dims(), &[0, 0, 1]);
        assert!(tau_inverse(&injective(&a, 0)).is_zero());
        let a = n3();
        // over rad^2 = 0 cyclic Nakayama, tau S_i = S_{i+1}
        assert_eq!(tau(&simple(&a, 0)).dims(), &[0, 1, 0]);
    }

    #[test]
    fn trace_examples() {
        let a = a2();
        let (p1, s1, s2) = (projective(&a, 0), simple(&a, 0), simple(&a, 1));
        assert_eq!(trace(&p1, &p1).unwrap().0.dims(), p1.dims());
        assert!(trace(&s1, &p1).unwrap().0.is_zero());
        let m = Module::direct_sum(&[&s2, &s1]);
        // Hom(P1, S2) = 0, so only S1 is reached
        assert_eq!(trace(&p1, &m).unwrap().0.dims(), &[1, 0]);
        assert!(is_generated_by(&p1, &s1));
        assert!(!is_generated_by(&p1, &s2));
    }

    #[test]
    fn annihilators() {
        let a = a2();
        assert!(is_faithful(&regular(&a)));
        let s2 = simple(&a, 1);
        assert_eq!(annihilator(&s2).len(), 2);
        assert!(!is_faithful(&s2));
        assert!(is_sincere(&projective(&a, 0)));
        assert!(!is_sincere(&simple(&a, 0)));
    }
}
