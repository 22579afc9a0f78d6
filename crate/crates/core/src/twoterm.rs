//! Two-term complexes of projectives in degrees -1 and 0.

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlin::{Fp, Matrix};
use crate::indec::IndSet;
use crate::report::{rank_claim, Report};
use crate::repmod::{hom_dim, min_presentation, tau, Module, Presentation, ProjMap, ProjSum};
use crate::silting::{dclass, equivalent_silting, is_silting, is_silting_wrt, sigma_tilde};
use crate::torsion::{enumerate_silting_classes, is_torsion_pair, perp_class, IndSubset};

/// A two-term complex `P_{-1} -> P_0` is stored as its underlying presentation.
pub type TwoTermComplex = Presentation;

/// `H^i` of the total Hom complex between two complexes.
#[derive(Clone, Debug)]
pub struct HomVerdict {
    pub degree: i32,
    pub dim: usize,
    pub witness: Value,
}

fn space_dim(s: &Presentation, p: &ProjSum, q: &ProjSum) -> usize {
    ProjMap::space_dim(s.algebra(), p, q)
}

/// Matrix (column convention) of a linear map between Hom spaces of projective sums,
/// given by its action on coordinate vectors.
fn linear_map(f: Fp, rows: usize, cols: usize, image: impl Fn(&[u32]) -> Vec<u32>) -> Matrix {
    let mut m = Matrix::zeros(f, rows, cols);
    for c in 0..cols {
        let mut e = vec![0; cols];
        e[c] = 1;
        for (r, x) in image(&e).into_iter().enumerate() {
            m.set(r, c, x);
        }
    }
    m
}

/// Differentials `D^{-1}: Hom^{-1} -> Hom^0` and `D^0: Hom^0 -> Hom^1` of `Hom(s, g)`.
fn differentials(s: &Presentation, g: &Presentation) -> (Matrix, Matrix) {
    let a = s.algebra();
    let f = a.field();
    let (s1, s0) = (s.p_minus1(), s.p0());
    let (g1, g0) = (g.p_minus1(), g.p0());
    let dm1 = space_dim(s, s0, g1);
    let d0a = space_dim(s, s1, g1);
    let d0b = space_dim(s, s0, g0);
    let d1 = space_dim(s, s1, g0);
    let big_dm1 = linear_map(f, d0a + d0b, dm1, |v| {
        let h = ProjMap::from_coords(a, s0, g1, v);
        let mut out = s.map().then(a, &h).coords();
        out.extend(h.then(a, g.map()).coords());
        out
    });
    let big_d0 = linear_map(f, d1, d0a + d0b, |v| {
        let f1 = ProjMap::from_coords(a, s1, g1, &v[..d0a]);
        let f0 = ProjMap::from_coords(a, s0, g0, &v[d0a..]);
        s.map().then(a, &f0).sub(f, &f1.then(a, g.map())).coords()
    });
    (big_dm1, big_d0)
}

/// First standard basis vector outside the column space of `m`.
fn outside_image(m: &Matrix) -> Option<Vec<u32>> {
    let f = m.field();
    let r = m.rank();
    (0..m.rows()).find_map(|k| {
        let mut e = vec![0; m.rows()];
        e[k] = 1;
        let aug = Matrix::hstack(f, m.rows(), &[m, &Matrix::column(f, &e)]);
        (aug.rank() > r).then_some(e)
    })
}

/// `dim Hom_{K(A)}(s, g[i])` for `i` in `-1..=1`, with a representative when nonzero.
pub fn hom_complex_dim(s: &TwoTermComplex, g: &TwoTermComplex, i: i32) -> Result<HomVerdict> {
    if !(-1..=1).contains(&i) {
        return Err(Error::DegreeOutOfRange(i));
    }
    let (dm1, d0) = differentials(s, g);
    let (r_m1, r_0) = (dm1.rank(), d0.rank());
    let claims = json!([rank_claim("D^-1", &dm1), rank_claim("D^0", &d0)]);
    let (dim, rep) = match i {
        -1 => {
            let k = dm1.kernel_basis();
            (dm1.cols() - r_m1, k.into_iter().next())
        }
        0 => {
            let dim = d0.cols() - r_0 - r_m1;
            let rep = d0.kernel_basis().into_iter().find(|z| {
                let f = dm1.field();
                let aug = Matrix::hstack(f, dm1.rows(), &[&dm1, &Matrix::column(f, z)]);
                aug.rank() > r_m1
            });
            (dim, rep)
        }
        _ => (d0.rows() - r_0, outside_image(&d0)),
    };
    let witness = json!({ "differentials": claims, "representative": if dim > 0 { json!(rep) } else { Value::Null } });
    Ok(HomVerdict {
        degree: i,
        dim,
        witness,
    })
}

/// `Hom(s, s[1]) = 0`; the coproduct condition is automatic for finite sums.
pub fn is_presilting(s: &TwoTermComplex) -> Report {
    let h = hom_complex_dim(s, s, 1).expect("degree 1 is in range");
    Report::new(h.dim == 0)
        .with_route("Hom(s, s[1]) = 0", h.dim == 0, h.witness)
        .with_witness("coproducts", json!("automatic (finite sums)"))
}

pub fn h0(s: &TwoTermComplex) -> Module {
    s.cokernel()
}

pub fn h_minus1(s: &TwoTermComplex) -> Module {
    s.kernel()
}

/// `dim Hom_{D(A)}(s, x[i])` for a module `x`, `i` in `{0, 1}`.
pub fn module_stalk_derived_hom(s: &TwoTermComplex, x: &Module, i: i32) -> Result<usize> {
    let m = s.induced_on_hom(x);
    match i {
        0 => Ok(m.cols() - m.rank()),
        1 => Ok(m.rows() - m.rank()),
        _ => Err(Error::DegreeOutOfRange(i)),
    }
}

/// 2-silting: presilting with `(D_σ, (H^0 σ)°)` a torsion pair, cross-checked with
/// `H^0 σ` silting with respect to `σ`.
pub fn is_two_silting<R: Rng>(s: &TwoTermComplex, ind: &IndSet, rng: &mut R) -> Result<Report> {
    let pre = is_presilting(s);
    let h = h0(s);
    let tor = dclass(s, ind);
    let free = perp_class(&h, ind);
    let pair = is_torsion_pair(ind, &tor, &free, rng);
    let a = pre.verdict && pair.is_ok();
    let b_report = is_silting_wrt(&h, s, ind)?;
    let b = b_report.verdict;
    if a != b {
        return Err(Error::VerdictDisagreement {
            what: "2-silting".into(),
            detail: format!("presilting + torsion pair: {a}, H0 silting w.r.t. sigma: {b}"),
        });
    }
    let pair_json = match &pair {
        Ok(c) => c.to_json(ind),
        Err(e) => json!({ "failure": e.to_string() }),
    };
    Ok(Report::new(a)
        .with_route(
            "presilting and torsion pair",
            a,
            json!({ "presilting": pre.to_json(), "torsion_pair": pair_json }),
        )
        .with_route("H0 silting with respect to sigma", b, b_report.to_json())
        .with_witness("h0_dims", json!(h.dims())))
}

/// One 2-silting complex per silting class, as `sigma_tilde` of the basic representative.
pub fn enumerate_two_silting<R: Rng>(ind: &IndSet, rng: &mut R) -> Result<Vec<TwoTermComplex>> {
    let mut out = Vec::new();
    for class in enumerate_silting_classes(ind)? {
        let s = sigma_tilde(&class.module);
        if !is_two_silting(&s, ind, rng)?.verdict {
            return Err(Error::CertificationFailure(format!(
                "sigma tilde of {:?} is not 2-silting",
                class.summands.names(ind)
            )));
        }
        out.push(s);
    }
    Ok(out)
}

/// Presilting pieces: minimal presentations of τ-rigid indecomposables and `P_i -> 0`.
pub fn presilting_pieces(ind: &IndSet) -> Vec<TwoTermComplex> {
    let a = ind.algebra();
    let mut out: Vec<Presentation> = ind
        .modules
        .iter()
        .filter(|u| hom_dim(u, &tau(u)) == 0)
        .map(min_presentation)
        .collect();
    out.extend((0..a.vertex_count()).map(|i| Presentation::shifted(a.clone(), ProjSum::new(vec![i]))));
    out
}

/// Counts 2-silting classes directly from sums of `n` distinct presilting pieces,
/// without going through silting modules.
pub fn count_two_silting_from_pieces<R: Rng>(ind: &IndSet, rng: &mut R) -> Result<Vec<IndSubset>> {
    let pieces = presilting_pieces(ind);
    let n = ind.algebra().vertex_count();
    let mut classes: Vec<IndSubset> = Vec::new();
    let mut chosen = Vec::new();
    subsets(pieces.len(), n, 0, &mut chosen, &mut |idx| {
        let parts: Vec<&Presentation> = idx.iter().map(|&i| &pieces[i]).collect();
        let s = Presentation::direct_sum(&parts);
        if !is_presilting(&s).verdict {
            return Ok(());
        }
        let tor = dclass(&s, ind);
        let free = perp_class(&h0(&s), ind);
        if is_torsion_pair(ind, &tor, &free, rng).is_ok() && !classes.contains(&tor) {
            classes.push(tor);
        }
        Ok(())
    })?;
    classes.sort();
    Ok(classes)
}

fn subsets(
    n: usize,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if chosen.len() == k {
        return visit(chosen);
    }
    for i in start..n {
        chosen.push(i);
        subsets(n, k, i + 1, chosen, visit)?;
        chosen.pop();
    }
    Ok(())
}

/// `H^0` is a bijection between 2-silting classes and silting classes on the catalog.
pub fn verify_h0_bijection<R: Rng>(ind: &IndSet, rng: &mut R) -> Result<Report> {
    let complexes = enumerate_two_silting(ind, rng)?;
    let fail = |msg: String| Err(Error::BijectionFailure(msg));
    let modules: Vec<Module> = complexes.iter().map(h0).collect();
    let classes: Vec<IndSubset> = complexes.iter().map(|s| dclass(s, ind)).collect();
    let mut entries = Vec::new();
    for (k, (s, h)) in complexes.iter().zip(&modules).enumerate() {
        if !is_silting(h, ind)?.verdict {
            return fail(format!("H0 of complex {k} is not silting"));
        }
        let back = dclass(&sigma_tilde(h), ind);
        if back != classes[k] {
            return fail(format!("round trip of complex {k} leaves its class"));
        }
        entries.push(json!({
            "p_minus1": s.p_minus1().vertices,
            "p0": s.p0().vertices,
            "h0": ind.describe(&ind.decompose(h)?),
            "d_sigma": classes[k].names(ind),
        }));
    }
    for i in 0..complexes.len() {
        for j in 0..complexes.len() {
            let same_complex = classes[i] == classes[j];
            let same_module = equivalent_silting(&modules[i], &modules[j], ind)?;
            if same_complex != same_module {
                return fail(format!("complexes {i} and {j}: complex equivalence {same_complex}, module equivalence {same_module}"));
            }
        }
    }
    let independent = count_two_silting_from_pieces(ind, rng)?;
    let mut mine = classes.clone();
    mine.sort();
    if independent != mine {
        return fail(format!(
            "{} classes from silting modules, {} from presilting pieces",
            mine.len(),
            independent.len()
        ));
    }
    Ok(Report::new(true)
        .with_route("H0 bijection", true, json!(entries))
        .with_witness("count", json!(complexes.len()))
        .with_witness("independent_count", json!(independent.len())))
}
