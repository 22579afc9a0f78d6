//! Torsion classes as subsets of a catalog of indecomposables.

use std::collections::BTreeMap;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::indec::{Decomposition, IndSet};
use crate::report::{rank_claim, Report};
use crate::repmod::{
    ext1, find_surjection, hom_basis, hom_dim, is_generated_by, middle_term, trace, trace_span, Module,
    ModuleMap,
};
use crate::silting::{dclass, is_silting, left_approximation, sigma_tilde};
use crate::twoterm::module_stalk_derived_hom;

/// Random cocycle combinations tried per pair when testing extension closure.
pub const EXTENSION_SAMPLES: usize = 8;

/// Sorted indices into a catalog.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndSubset {
    pub members: Vec<usize>,
}

impl IndSubset {
    pub fn new(mut members: Vec<usize>) -> IndSubset {
        members.sort_unstable();
        members.dedup();
        IndSubset { members }
    }

    pub fn all(ind: &IndSet) -> IndSubset {
        IndSubset::new((0..ind.len()).collect())
    }

    pub fn filter(ind: &IndSet, mut keep: impl FnMut(usize, &Module) -> bool) -> IndSubset {
        IndSubset::new((0..ind.len()).filter(|&i| keep(i, &ind.modules[i])).collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &IndSubset) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }

    pub fn intersect(&self, other: &IndSubset) -> IndSubset {
        IndSubset::new(self.members.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    pub fn names(&self, ind: &IndSet) -> Vec<String> {
        self.members.iter().map(|&i| ind.names[i].clone()).collect()
    }

    /// Direct sum of the members.
    pub fn module(&self, ind: &IndSet) -> Module {
        ind.sum(&self.members)
    }
}

/// `Gen(t)` on the catalog.
pub fn gen_class(t: &Module, ind: &IndSet) -> IndSubset {
    IndSubset::filter(ind, |_, u| is_generated_by(t, u))
}

/// `t° = {X : Hom(t, X) = 0}` on the catalog.
pub fn perp_class(t: &Module, ind: &IndSet) -> IndSubset {
    IndSubset::filter(ind, |_, u| hom_dim(t, u) == 0)
}

/// `t^{⊥1} = {X : Ext^1(t, X) = 0}` on the catalog.
pub fn ext_perp_class(t: &Module, ind: &IndSet) -> IndSubset {
    let parts = ind.summands(t).ok();
    IndSubset::filter(ind, |j, u| match &parts {
        Some(p) => p.iter().all(|&i| ind.ext_table[i][j] == 0),
        None => crate::repmod::ext1_dim(t, u) == 0,
    })
}

/// Rank claims showing `m` is (or is not) generated by `t`.
pub fn generation_certificate(t: &Module, m: &Module) -> Value {
    let claims: Vec<Value> = trace_span(t, m)
        .iter()
        .enumerate()
        .map(|(v, s)| json!({ "vertex": v, "dim": m.dim_at(v), "span": rank_claim("trace span", s) }))
        .collect();
    Value::Array(claims)
}

#[derive(Clone, Debug)]
pub struct TorsionPairCertificate {
    pub torsion: IndSubset,
    pub free: IndSubset,
    /// Per catalog member: decompositions of `t(M)` and `M / t(M)`.
    pub filtrations: Vec<(Decomposition, Decomposition)>,
    pub quotient_witnesses: usize,
    pub extensions_checked: usize,
}

impl TorsionPairCertificate {
    pub fn to_json(&self, ind: &IndSet) -> Value {
        let filtrations: BTreeMap<String, Value> = self
            .filtrations
            .iter()
            .enumerate()
            .map(|(i, (t, f))| {
                (ind.names[i].clone(), json!({ "torsion_part": ind.describe(t), "free_part": ind.describe(f) }))
            })
            .collect();
        json!({
            "torsion": self.torsion.names(ind),
            "free": self.free.names(ind),
            "filtrations": filtrations,
            "quotient_witnesses": self.quotient_witnesses,
            "extensions_checked": self.extensions_checked,
        })
    }
}

/// Certifies `(tor, free)` as a torsion pair on the catalog.
pub fn is_torsion_pair<R: Rng>(
    ind: &IndSet,
    tor: &IndSubset,
    free: &IndSubset,
    rng: &mut R,
) -> Result<TorsionPairCertificate> {
    for &t in &tor.members {
        for &f in &free.members {
            if ind.hom_table[t][f] != 0 {
                return Err(Error::OrthogonalityFailure {
                    torsion: t,
                    free: f,
                });
            }
        }
    }
    let tor_sum = tor.module(ind);
    let mut filtrations = Vec::with_capacity(ind.len());
    for (i, m) in ind.modules.iter().enumerate() {
        let (tm, inc) = trace(&tor_sum, m)?;
        let (quot, _) = inc.cokernel(m);
        let dt = ind.decompose(&tm)?;
        let df = ind.decompose(&quot)?;
        let fail = |reason: &str| Error::FiltrationFailure {
            member: i,
            reason: reason.to_string(),
        };
        if !IndSubset::new(dt.support()).is_subset(tor) {
            return Err(fail("trace has a summand outside the torsion class"));
        }
        if !IndSubset::new(df.support()).is_subset(free) {
            return Err(fail("quotient by the trace has a summand outside the torsion-free class"));
        }
        filtrations.push((dt, df));
    }

    // closure under quotients and extensions, sampled
    let mut quotient_witnesses = 0;
    for &x in &tor.members {
        for y in 0..ind.len() {
            if find_surjection(&ind.modules[x], &ind.modules[y], rng).is_some() {
                quotient_witnesses += 1;
                if !tor.contains(y) {
                    return Err(Error::FiltrationFailure {
                        member: y,
                        reason: format!("quotient of {} outside the torsion class", ind.names[x]),
                    });
                }
            }
        }
    }
    let mut extensions_checked = 0;
    for &x in &tor.members {
        for &y in &tor.members {
            let (mx, my) = (&ind.modules[x], &ind.modules[y]);
            let e = ext1(mx, my)?;
            if e.dim == 0 {
                continue;
            }
            let space = crate::repmod::HomSpace {
                basis: e.cocycles.clone(),
            };
            let samples: Vec<ModuleMap> = e
                .cocycles
                .iter()
                .cloned()
                .chain((0..EXTENSION_SAMPLES).map(|_| space.random_element(rng)))
                .collect();
            for c in samples {
                let mid = middle_term(mx, my, &e, &c);
                extensions_checked += 1;
                if !IndSubset::new(ind.summands(&mid)?).is_subset(tor) {
                    return Err(Error::FiltrationFailure {
                        member: x,
                        reason: format!("extension by {} leaves the torsion class", ind.names[y]),
                    });
                }
            }
        }
    }
    Ok(TorsionPairCertificate {
        torsion: tor.clone(),
        free: free.clone(),
        filtrations,
        quotient_witnesses,
        extensions_checked,
    })
}

/// Members `U` of `tor` with `Ext^1(U, X) = 0` for every `X` in `tor`.
pub fn ext_projectives(ind: &IndSet, tor: &IndSubset) -> IndSubset {
    IndSubset::new(
        tor.members
            .iter()
            .copied()
            .filter(|&u| tor.members.iter().all(|&x| ind.ext_table[u][x] == 0))
            .collect(),
    )
}

/// Whether `n` embeds in a finite sum of members of `tor`: the maps to members have no
/// common kernel.
pub fn in_submodule_closure(n: &Module, ind: &IndSet, tor: &IndSubset) -> bool {
    let f = n.field();
    let homs: Vec<ModuleMap> = tor
        .members
        .iter()
        .flat_map(|&i| hom_basis(n, &ind.modules[i]).basis)
        .collect();
    (0..n.dims().len()).all(|v| {
        let blocks: Vec<&Matrix> = homs.iter().map(|h| &h.blocks[v]).collect();
        Matrix::hstack(f, n.dim_at(v), &blocks).rank() == n.dim_at(v)
    })
}

/// A silting torsion class with its basic representative.
#[derive(Clone, Debug)]
pub struct SiltingClass {
    pub module: Module,
    pub summands: IndSubset,
    pub class: IndSubset,
    pub ext_projectives: IndSubset,
}

impl SiltingClass {
    pub fn to_json(&self, ind: &IndSet) -> Value {
        json!({
            "module": self.summands.names(ind),
            "class": self.class.members,
            "class_names": self.class.names(ind),
            "ext_projectives": self.ext_projectives.members,
        })
    }
}

/// Basic silting modules from subsets of the catalog, one per torsion class.
///
/// Each class also gets a left approximation of `A` whose cokernel is checked to be
/// Ext-projective in the class.
pub fn enumerate_silting_classes(ind: &IndSet) -> Result<Vec<SiltingClass>> {
    let n = ind.len();
    assert!(n < 24, "subset scan over {n} modules is too large");
    let mut out: Vec<SiltingClass> = Vec::new();
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let t = ind.sum(&idx);
        if !is_silting(&t, ind)?.verdict {
            continue;
        }
        let class = gen_class(&t, ind);
        if out.iter().any(|c| c.class == class) {
            continue;
        }
        let ext_proj = ext_projectives(ind, &class);
        let approx = left_approximation(&t, &sigma_tilde(&t), ind)?;
        if !IndSubset::new(approx.t1_decomposition.support()).is_subset(&ext_proj) {
            return Err(Error::ApproximationFailure(
                "cokernel of the approximation of A is not Ext-projective".into(),
            ));
        }
        out.push(SiltingClass {
            module: t,
            summands: IndSubset::new(idx),
            class,
            ext_projectives: ext_proj,
        });
    }
    Ok(out)
}

/// Degree-0 shadows of the HRS t-structure attached to `(Gen t, t°)`, cross-checked
/// against derived Hom into stalk complexes.
pub fn hrs_report(t: &Module, ind: &IndSet) -> Result<Report> {
    let silting = is_silting(t, ind)?;
    if !silting.verdict {
        return Err(Error::NotSilting("hrs_report needs a silting module".into()));
    }
    let tor = gen_class(t, ind);
    let free = perp_class(t, ind);
    let sigma = sigma_tilde(t);
    let d = dclass(&sigma, ind);
    let mut shadows = BTreeMap::new();
    let mut ok = d == tor;
    for (i, x) in ind.modules.iter().enumerate() {
        let h1 = module_stalk_derived_hom(&sigma, x, 1)?;
        let h0 = module_stalk_derived_hom(&sigma, x, 0)?;
        // X[0] lies in the aisle iff Hom(sigma, X[1]) = 0; X[1] always does.
        let stalk0 = h1 == 0;
        ok &= stalk0 == tor.contains(i) && (h0 == 0) == free.contains(i);
        shadows.insert(
            ind.names[i].clone(),
            json!({
                "hom_sigma_x1": h1,
                "hom_sigma_x0": h0,
                "stalk_degree0_in_aisle": stalk0,
                "stalk_degree_minus1_in_aisle": true,
                "in_torsion": tor.contains(i),
                "in_free": free.contains(i),
                "induced_map": rank_claim("Hom(P0,X) -> Hom(P-1,X)", &sigma.induced_on_hom(x)),
            }),
        );
    }
    let rest: Vec<String> = ind.names.clone();
    Ok(Report::new(ok)
        .with_route("stalk shadows", ok, json!(shadows))
        .with_witness(
            "aisle",
            json!({ "degree0": tor.names(ind), "degrees_below_0": rest }),
        )
        .with_witness(
            "coaisle",
            json!({ "degree0": free.names(ind), "degrees_above_0": ind.names }),
        )
        .with_witness("silting", silting.to_json()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::exactlin::Fp;
    use crate::indec::catalog;
    use crate::seeded_rng;
    use std::sync::Arc;

    fn cat(a: Algebra) -> IndSet {
        catalog(&Arc::new(a), &mut seeded_rng(1)).unwrap()
    }

    fn names(s: &IndSubset, ind: &IndSet) -> Vec<String> {
        let mut v = s.names(ind);
        v.sort();
        v
    }

    #[test]
    fn classes_over_a2() {
        let ind = cat(Algebra::linear_a(Fp::default(), 2));
        let p1 = ind.get("P1");
        assert_eq!(names(&gen_class(p1, &ind), &ind), ["P1", "S1"]);
        assert_eq!(names(&perp_class(p1, &ind), &ind), ["S2"]);
        let s2 = ind.get("S2");
        assert_eq!(ext_perp_class(s2, &ind).len(), 3);
    }

    #[test]
    fn torsion_pairs_over_a2() {
        let ind = cat(Algebra::linear_a(Fp::default(), 2));
        let mut rng = seeded_rng(3);
        let all = IndSubset::all(&ind);
        assert!(is_torsion_pair(&ind, &all, &IndSubset::default(), &mut rng).is_ok());
        let t = ind.sum_named(&["S1", "P1"]);
        let cert = is_torsion_pair(&ind, &gen_class(&t, &ind), &perp_class(&t, &ind), &mut rng).unwrap();
        assert_eq!(names(&cert.free, &ind), ["S2"]);
        let s1 = IndSubset::new(vec![ind.index_of("S1").unwrap()]);
        assert!(matches!(
            is_torsion_pair(&ind, &s1, &s1, &mut rng),
            Err(Error::OrthogonalityFailure { .. })
        ));
    }

    #[test]
    fn ext_projective_examples() {
        let ind = cat(Algebra::linear_a(Fp::default(), 2));
        assert_eq!(names(&ext_projectives(&ind, &IndSubset::all(&ind)), &ind), ["P1", "S2"]);
        let tor = gen_class(&ind.sum_named(&["S1", "P1"]), &ind);
        assert_eq!(names(&ext_projectives(&ind, &tor), &ind), ["P1", "S1"]);

        let ind = cat(Algebra::linear_a(Fp::default(), 3));
        let tor = IndSubset::new(
            ["S1", "S2", "M12", "P1", "P2"].iter().map(|n| ind.index_of(n).unwrap()).collect(),
        );
        assert_eq!(names(&ext_projectives(&ind, &tor), &ind), ["P1", "P2", "S2"]);
    }

    #[test]
    fn submodule_closure() {
        let ind = cat(Algebra::linear_a(Fp::default(), 2));
        let s2 = ind.get("S2");
        let single = |n: &str| IndSubset::new(vec![ind.index_of(n).unwrap()]);
        assert!(in_submodule_closure(s2, &ind, &single("S2")));
        assert!(!in_submodule_closure(s2, &ind, &single("S1")));
        assert!(in_submodule_closure(s2, &ind, &single("P1")));
    }

    #[test]
    fn silting_census() {
        let f = Fp::default();
        assert_eq!(enumerate_silting_classes(&cat(Algebra::linear_a(f, 1))).unwrap().len(), 2);
        let ind = cat(Algebra::linear_a(f, 2));
        let classes = enumerate_silting_classes(&ind).unwrap();
        let mut found: Vec<Vec<String>> = classes.iter().map(|c| names(&c.class, &ind)).collect();
        found.sort();
        assert_eq!(
            found,
            vec![vec![], vec!["P1", "S1"], vec!["P1", "S1", "S2"], vec!["S1"], vec!["S2"]]
        );
        assert_eq!(enumerate_silting_classes(&cat(Algebra::linear_a(f, 3))).unwrap().len(), 14);
    }

    #[test]
    fn hrs_examples() {
        let ind = cat(Algebra::linear_a(Fp::default(), 2));
        let r = hrs_report(&ind.sum_named(&["S1", "P1"]), &ind).unwrap();
        assert!(r.verdict);
        assert_eq!(r.witnesses["coaisle"]["degree0"], json!(["S2"]));
        let zero = Module::zero(ind.algebra().clone());
        let r = hrs_report(&zero, &ind).unwrap();
        assert_eq!(r.witnesses["aisle"]["degree0"], json!([]));
        assert!(hrs_report(ind.get("S1"), &ind).is_ok());
    }
}
