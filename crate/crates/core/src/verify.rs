//! The full invariant suite against one algebra.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::Result;
use crate::indec::{catalog, IndSet};
use crate::report::Report;
use crate::repmod::{
    ext1, find_surjection, hom_dim, is_sincere, middle_term, min_presentation, tau, Module, ModuleMap,
    Presentation, ProjMap, ProjSum,
};
use crate::silting::{
    bongartz_complete, dclass, dsigma_contains, is_partial_silting, is_quasitilting, is_silting, is_tilting,
};
use crate::torsion::{
    enumerate_silting_classes, ext_perp_class, ext_projectives, gen_class, in_submodule_closure,
    is_torsion_pair, perp_class, IndSubset,
};
use crate::twoterm::{enumerate_two_silting, h0, hom_complex_dim, module_stalk_derived_hom, verify_h0_bijection};
use crate::seeded_rng;

/// Outcome of one invariant: instances checked and the first counterexample.
type Outcome = Result<(usize, Option<String>)>;

struct Suite {
    report: Report,
}

impl Suite {
    fn check(&mut self, name: &str, run: impl FnOnce() -> Outcome) {
        let (verdict, cert) = match run() {
            Ok((n, None)) => (true, json!({ "checked": n })),
            Ok((n, Some(c))) => (false, json!({ "checked": n, "counterexample": c })),
            Err(e) => (false, json!({ "error": e.to_string(), "invariant_violation": e.is_invariant_violation() })),
        };
        self.report.verdict &= verdict;
        self.report.routes.push(crate::report::Route {
            name: name.to_string(),
            verdict,
            certificate: cert,
        });
    }
}

/// Counts checks and keeps the first failure message.
#[derive(Default)]
struct Tally {
    n: usize,
    first: Option<String>,
}

impl Tally {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.n += 1;
        if !ok && self.first.is_none() {
            self.first = Some(what());
        }
    }

    fn done(self) -> Outcome {
        Ok((self.n, self.first))
    }
}

/// Minimal presentations of catalog members and the shifted projectives `P_i -> 0`.
fn presentations(ind: &IndSet) -> Vec<(String, Presentation)> {
    let a = ind.algebra();
    let mut out: Vec<(String, Presentation)> = ind
        .modules
        .iter()
        .zip(&ind.names)
        .map(|(u, n)| (format!("pres({n})"), min_presentation(u)))
        .collect();
    for i in 0..a.vertex_count() {
        out.push((
            format!("P{} -> 0", a.quiver().vertices[i]),
            Presentation::shifted(a.clone(), ProjSum::new(vec![i])),
        ));
    }
    out
}

/// Basic modules with at most `k` catalog summands.
fn basic_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize <= k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

pub fn verify_all(a: &Arc<Algebra>, seed: u64) -> Result<Report> {
    let ind = catalog(a, &mut seeded_rng(seed))?;
    let mut s = Suite {
        report: Report::new(true),
    };
    let names = |i: usize| ind.names[i].clone();
    let n = ind.len();

    s.check("Hom is additive in the first argument", || {
        let mut t = Tally::default();
        for i in 0..n {
            for j in 0..n {
                let sum = Module::direct_sum(&[&ind.modules[i], &ind.modules[j]]);
                for k in 0..n {
                    let lhs = hom_dim(&sum, &ind.modules[k]);
                    t.expect(lhs == ind.hom_table[i][k] + ind.hom_table[j][k], || {
                        format!("Hom({} + {}, {})", names(i), names(j), names(k))
                    });
                }
            }
        }
        t.done()
    });

    s.check("minimal presentations are exact and minimal", || {
        let mut t = Tally::default();
        for (i, u) in ind.modules.iter().enumerate() {
            let p = min_presentation(u);
            let ok = p.is_minimal() && ind.is_isomorphic(&p.cokernel(), u)?;
            t.expect(ok, || names(i));
        }
        t.done()
    });

    s.check("D_sigma of a minimal presentation is Hom(-, tau T) = 0", || {
        let mut t = Tally::default();
        for (j, tm) in ind.modules.iter().enumerate() {
            let sigma = min_presentation(tm);
            let tt = tau(tm);
            for (i, m) in ind.modules.iter().enumerate() {
                t.expect(dsigma_contains(&sigma, m) == (hom_dim(m, &tt) == 0), || {
                    format!("M = {}, T = {}", names(i), names(j))
                });
            }
        }
        t.done()
    });

    s.check("Ext vanishes iff every extension splits", || {
        let mut t = Tally::default();
        for (i, m) in ind.modules.iter().enumerate() {
            for (j, x) in ind.modules.iter().enumerate() {
                let e = ext1(m, x)?;
                let split = Module::direct_sum(&[x, m]);
                let zero = middle_term(m, x, &e, &ModuleMap::zero(&e.cover.kernel, x));
                t.expect(ind.is_isomorphic(&zero, &split)?, || format!("zero class of Ext({}, {})", names(i), names(j)));
                for c in &e.cocycles {
                    let mid = middle_term(m, x, &e, c);
                    t.expect(!ind.is_isomorphic(&mid, &split)?, || {
                        format!("nonzero class of Ext({}, {}) splits", names(i), names(j))
                    });
                }
            }
        }
        t.done()
    });

    s.check("catalog members decompose to unit vectors", || {
        let mut t = Tally::default();
        for (i, u) in ind.modules.iter().enumerate() {
            t.expect(ind.decompose(u)?.support() == vec![i], || names(i));
        }
        t.done()
    });

    s.check("translate table agrees with tau", || {
        let mut t = Tally::default();
        for (i, u) in ind.modules.iter().enumerate() {
            let tt = tau(u);
            let ok = match ind.tau_map[i] {
                None => tt.is_zero(),
                Some(j) => ind.is_isomorphic(&tt, &ind.modules[j])?,
            };
            t.expect(ok, || names(i));
        }
        t.done()
    });

    let pres = presentations(&ind);

    s.check("D_sigma is closed under quotients and extensions", || {
        let mut t = Tally::default();
        let mut rng = seeded_rng(seed ^ 0x51);
        for (label, sigma) in &pres {
            let d = dclass(sigma, &ind);
            for &x in &d.members {
                for y in 0..n {
                    if find_surjection(&ind.modules[x], &ind.modules[y], &mut rng).is_some() {
                        t.expect(d.contains(y), || format!("{label}: quotient {} of {}", names(y), names(x)));
                    }
                }
                for &y in &d.members {
                    let e = ext1(&ind.modules[x], &ind.modules[y])?;
                    if e.dim == 0 {
                        continue;
                    }
                    let space = crate::repmod::HomSpace { basis: e.cocycles.clone() };
                    let samples: Vec<ModuleMap> = e
                        .cocycles
                        .iter()
                        .cloned()
                        .chain((0..crate::torsion::EXTENSION_SAMPLES).map(|_| space.random_element(&mut rng)))
                        .collect();
                    for c in samples {
                        let mid = middle_term(&ind.modules[x], &ind.modules[y], &e, &c);
                        t.expect(dsigma_contains(sigma, &mid), || {
                            format!("{label}: extension of {} by {}", names(x), names(y))
                        });
                    }
                }
            }
        }
        t.done()
    });

    s.check("D_sigma lies in the Ext-perpendicular of coker sigma", || {
        let mut t = Tally::default();
        for (label, sigma) in &pres {
            let c = sigma.cokernel();
            let perp = ext_perp_class(&c, &ind);
            for x in dclass(sigma, &ind).members {
                t.expect(perp.contains(x), || format!("{label}, X = {}", names(x)));
            }
        }
        t.done()
    });

    s.check("D of a direct sum is the intersection", || {
        let mut t = Tally::default();
        for (l1, s1) in &pres {
            for (l2, s2) in &pres {
                let sum = Presentation::direct_sum(&[s1, s2]);
                for (i, x) in ind.modules.iter().enumerate() {
                    let ok = dsigma_contains(&sum, x) == (dsigma_contains(s1, x) && dsigma_contains(s2, x));
                    t.expect(ok, || format!("{l1} + {l2}, X = {}", names(i)));
                }
            }
        }
        t.done()
    });

    s.check("D_theta is contained in D of (theta, beta)", || {
        let mut t = Tally::default();
        let reg = ProjSum::regular(a);
        for (label, theta) in &pres {
            let d = dclass(theta, &ind);
            for beta in ProjMap::basis(a, theta.p_minus1(), &reg) {
                let joint = Presentation::new(a.clone(), theta.map().pair(&beta));
                let dj = dclass(&joint, &ind);
                t.expect(d.is_subset(&dj), || format!("{label} with a basis map to A"));
            }
        }
        t.done()
    });

    s.check("partial silting iff tau-rigid (at most 3 summands)", || {
        let mut t = Tally::default();
        for idx in basic_subsets(n, 3) {
            let m = ind.sum(&idx);
            let partial = is_partial_silting(&m, None)?.verdict;
            let rigid = hom_dim(&m, &tau(&m)) == 0;
            t.expect(partial == rigid, || format!("{:?}", IndSubset::new(idx.clone()).names(&ind)));
        }
        t.done()
    });

    s.check("silting routes agree on every basic module", || {
        let mut t = Tally::default();
        for idx in basic_subsets(n, n) {
            // is_silting fails with VerdictDisagreement if the routes differ
            is_silting(&ind.sum(&idx), &ind)?;
            t.expect(true, String::new);
        }
        t.done()
    });

    s.check("tilting routes agree on every basic module", || {
        let mut t = Tally::default();
        for idx in basic_subsets(n, n) {
            is_tilting(&ind.sum(&idx), &ind)?;
            t.expect(true, String::new);
        }
        t.done()
    });

    if a.is_hereditary_path_algebra() {
        s.check("sincere silting is tilting over a hereditary algebra", || {
            let mut t = Tally::default();
            for idx in basic_subsets(n, n) {
                let m = ind.sum(&idx);
                let lhs = is_silting(&m, &ind)?.verdict && is_sincere(&m);
                let rhs = is_tilting(&m, &ind)?.verdict;
                t.expect(lhs == rhs, || format!("{:?}", IndSubset::new(idx.clone()).names(&ind)));
            }
            t.done()
        });
    }

    let classes = enumerate_silting_classes(&ind);

    s.check("silting classes are torsion pairs with Ext-projectives the summands", || {
        let mut t = Tally::default();
        let mut rng = seeded_rng(seed ^ 0x7e);
        for c in classes.as_ref().map_err(clone_err)? {
            let free = perp_class(&c.module, &ind);
            let cert = is_torsion_pair(&ind, &gen_class(&c.module, &ind), &free, &mut rng);
            t.expect(cert.is_ok(), || format!("{:?}: {:?}", c.summands.names(&ind), cert.err()));
            t.expect(ext_projectives(&ind, &c.class) == c.summands, || {
                format!("Ext-projectives of {:?}", c.summands.names(&ind))
            });
        }
        t.done()
    });

    s.check("silting classes are quasitilting", || {
        let mut t = Tally::default();
        for c in classes.as_ref().map_err(clone_err)? {
            let closure = IndSubset::filter(&ind, |_, u| in_submodule_closure(u, &ind, &c.class));
            let perp = ext_perp_class(&c.module, &ind);
            t.expect(c.class == closure.intersect(&perp), || format!("{:?}", c.summands.names(&ind)));
            t.expect(is_quasitilting(&c.module, &ind)?.verdict, || format!("{:?}", c.summands.names(&ind)));
        }
        t.done()
    });

    s.check("submodule closure is monotone", || {
        let mut t = Tally::default();
        let cs = classes.as_ref().map_err(clone_err)?;
        for c1 in cs {
            for c2 in cs.iter().filter(|c2| c1.class.is_subset(&c2.class)) {
                for (i, u) in ind.modules.iter().enumerate() {
                    let ok = !in_submodule_closure(u, &ind, &c1.class) || in_submodule_closure(u, &ind, &c2.class);
                    t.expect(ok, || format!("{} between nested classes", names(i)));
                }
            }
        }
        t.done()
    });

    s.check("Bongartz completion of every partial silting indecomposable", || {
        let mut t = Tally::default();
        for (i, u) in ind.modules.iter().enumerate() {
            let sigma = min_presentation(u);
            if !is_partial_silting(u, Some(&sigma))?.verdict {
                continue;
            }
            let c = bongartz_complete(u, &sigma, &ind)?;
            t.expect(gen_class(&c.t_bar, &ind) == dclass(&sigma, &ind), || names(i));
        }
        t.done()
    });

    s.check("H0 is a bijection from 2-silting complexes to silting modules", || {
        let mut rng = seeded_rng(seed ^ 0x2b);
        let r = verify_h0_bijection(&ind, &mut rng)?;
        Ok((r.witnesses["count"].as_u64().unwrap_or(0) as usize, None))
    });

    s.check("derived Hom into stalks matches D_sigma and the torsion-free class", || {
        let mut t = Tally::default();
        let mut rng = seeded_rng(seed ^ 0x2b);
        for sigma in enumerate_two_silting(&ind, &mut rng)? {
            let d = dclass(&sigma, &ind);
            let free = perp_class(&h0(&sigma), &ind);
            for (i, x) in ind.modules.iter().enumerate() {
                let h1 = module_stalk_derived_hom(&sigma, x, 1)?;
                let h0v = module_stalk_derived_hom(&sigma, x, 0)?;
                t.expect((h1 == 0) == d.contains(i), || format!("X = {} at degree 1", names(i)));
                t.expect((h0v == 0) == free.contains(i), || format!("X = {} at degree 0", names(i)));
            }
            // X[1] is always in the aisle: Hom(sigma, X[2]) vanishes, seen here on P[1][1]
            for v in 0..a.vertex_count() {
                let shifted = Presentation::shifted(a.clone(), ProjSum::new(vec![v]));
                t.expect(hom_complex_dim(&sigma, &shifted, 1)?.dim == 0, || format!("P{}[2]", v + 1));
            }
        }
        t.done()
    });

    s.check("Hom between complexes is additive", || {
        let mut t = Tally::default();
        let pieces: Vec<&Presentation> = pres.iter().map(|(_, p)| p).collect();
        let k = pieces.len().min(6);
        for i in 0..k {
            for j in 0..k {
                let sum = Presentation::direct_sum(&[pieces[i], pieces[j]]);
                for g in pieces.iter().take(k) {
                    for deg in -1..=1 {
                        let lhs = hom_complex_dim(&sum, g, deg)?.dim;
                        let rhs = hom_complex_dim(pieces[i], g, deg)?.dim + hom_complex_dim(pieces[j], g, deg)?.dim;
                        t.expect(lhs == rhs, || format!("first argument, degree {deg}"));
                        let lhs = hom_complex_dim(g, &sum, deg)?.dim;
                        let rhs = hom_complex_dim(g, pieces[i], deg)?.dim + hom_complex_dim(g, pieces[j], deg)?.dim;
                        t.expect(lhs == rhs, || format!("second argument, degree {deg}"));
                    }
                }
            }
        }
        t.done()
    });

    // full silting certificates per class, so the report carries re-checkable claims
    let mut certificates = serde_json::Map::new();
    for c in classes.iter().flatten() {
        let key = format!("{:?}", c.summands.names(&ind));
        let v = is_silting(&c.module, &ind).map(|r| r.to_json()).unwrap_or_else(|e| json!({ "error": e.to_string() }));
        certificates.insert(key, v);
    }
    let count = classes.as_ref().map(|c| c.len()).unwrap_or(0);
    Ok(s.report
        .with_witness("catalog", json!(ind.names))
        .with_witness("silting_classes", json!(count))
        .with_witness("silting_certificates", Value::Object(certificates))
        .with_witness("seed", Value::from(seed)))
}

fn clone_err(e: &crate::error::Error) -> crate::error::Error {
    crate::error::Error::CertificationFailure(e.to_string())
}
