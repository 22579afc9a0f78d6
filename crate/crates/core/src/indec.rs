//! Catalogs of indecomposable modules for representation-finite algebras, with
//! Hom-count decomposition.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::repmod::{
    ext1_dim, find_isomorphism, hom_dim, is_indecomposable, projective, tau, tau_inverse, Module,
};

/// Default bound on the number of modules knitting may produce.
pub const KNITTING_CAP: usize = 200;

/// Random endomorphisms sampled per locality test.
pub const LOCALITY_SAMPLES: usize = 8;

#[derive(Clone, Debug)]
pub enum Strategy {
    HereditaryKnitting,
    NakayamaIntervals,
    UserSupplied(Vec<Module>),
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::HereditaryKnitting => "hereditary-knitting",
            Strategy::NakayamaIntervals => "nakayama-intervals",
            Strategy::UserSupplied(_) => "user-supplied",
        }
    }

    /// The strategy that applies to `a`, if any.
    pub fn auto(a: &Algebra) -> Option<Strategy> {
        if a.relations().is_empty() {
            Some(Strategy::HereditaryKnitting)
        } else if is_nakayama_quiver(a) {
            Some(Strategy::NakayamaIntervals)
        } else {
            None
        }
    }
}

fn is_nakayama_quiver(a: &Algebra) -> bool {
    let q = a.quiver();
    (0..q.vertex_count()).all(|v| {
        q.arrows.iter().filter(|ar| ar.source == v).count() <= 1
            && q.arrows.iter().filter(|ar| ar.target == v).count() <= 1
    })
}

/// Pairwise non-isomorphic indecomposables with cached Hom and Ext dimensions.
#[derive(Clone, Debug)]
pub struct IndSet {
    algebra: Arc<Algebra>,
    pub modules: Vec<Module>,
    pub names: Vec<String>,
    pub hom_table: Vec<Vec<usize>>,
    pub ext_table: Vec<Vec<usize>>,
    /// `tau_map[i] = Some(j)` when `tau U_i = U_j`, `None` when `U_i` is projective.
    pub tau_map: Vec<Option<usize>>,
    pub tau_inverse_map: Vec<Option<usize>>,
}

/// Multiplicity of each catalog member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub multiplicities: Vec<usize>,
}

impl Decomposition {
    /// Indices with nonzero multiplicity.
    pub fn support(&self) -> Vec<usize> {
        (0..self.multiplicities.len())
            .filter(|&i| self.multiplicities[i] > 0)
            .collect()
    }

    pub fn summand_count(&self) -> usize {
        self.support().len()
    }
}

pub fn enumerate_indecomposables<R: Rng>(
    a: &Arc<Algebra>,
    strategy: Strategy,
    rng: &mut R,
) -> Result<IndSet> {
    let modules = match strategy {
        Strategy::HereditaryKnitting => knit(a, KNITTING_CAP, rng)?,
        Strategy::NakayamaIntervals => nakayama_intervals(a, rng)?,
        Strategy::UserSupplied(list) => validate_user(a, list, rng)?,
    };
    IndSet::from_modules(a.clone(), modules)
}

/// Catalog chosen by [`Strategy::auto`].
pub fn catalog<R: Rng>(a: &Arc<Algebra>, rng: &mut R) -> Result<IndSet> {
    let strategy = Strategy::auto(a).ok_or_else(|| {
        Error::StrategyMismatch("neither hereditary nor Nakayama; supply the indecomposables".into())
    })?;
    enumerate_indecomposables(a, strategy, rng)
}

fn insert_new<R: Rng>(list: &mut Vec<Module>, m: Module, rng: &mut R) -> bool {
    if m.is_zero() || list.iter().any(|u| find_isomorphism(u, &m, rng).is_some()) {
        return false;
    }
    list.push(m);
    true
}

/// Preprojective component: projectives and their iterated inverse translates.
fn knit<R: Rng>(a: &Arc<Algebra>, cap: usize, rng: &mut R) -> Result<Vec<Module>> {
    if !a.relations().is_empty() {
        return Err(Error::StrategyMismatch(
            "hereditary knitting needs a path algebra without relations".into(),
        ));
    }
    let mut list = Vec::new();
    for i in 0..a.vertex_count() {
        insert_new(&mut list, projective(a, i), rng);
    }
    let mut next = 0;
    while next < list.len() {
        let m = tau_inverse(&list[next]);
        next += 1;
        insert_new(&mut list, m, rng);
        if list.len() > cap {
            return Err(Error::NotRepresentationFinite { cap });
        }
    }
    Ok(list)
}

/// Rows spanning `rad^k M` at every vertex.
fn radical_power_rows(m: &Module, k: usize) -> Vec<Matrix> {
    let f = m.field();
    let q = m.algebra().quiver();
    let mut rows: Vec<Matrix> = (0..m.dims().len())
        .map(|v| Matrix::identity(f, m.dim_at(v)))
        .collect();
    for _ in 0..k {
        rows = (0..m.dims().len())
            .map(|t| {
                let parts: Vec<Matrix> = q
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(_, ar)| ar.target == t)
                    .map(|(ai, ar)| rows[ar.source].mul(m.arrow_map(ai)))
                    .collect();
                let refs: Vec<&Matrix> = parts.iter().collect();
                Matrix::vstack(f, m.dim_at(t), &refs).row_space_basis()
            })
            .collect();
    }
    rows
}

/// All `P_i / rad^k P_i`: over a Nakayama algebra these are every indecomposable.
fn nakayama_intervals<R: Rng>(a: &Arc<Algebra>, rng: &mut R) -> Result<Vec<Module>> {
    if !is_nakayama_quiver(a) {
        return Err(Error::StrategyMismatch(
            "Nakayama intervals need at most one arrow in and out of each vertex".into(),
        ));
    }
    let mut list = Vec::new();
    for i in 0..a.vertex_count() {
        let p = projective(a, i);
        let len = p.total_dim();
        for k in 1..=len {
            let (quot, _, _) = p.quotient(&radical_power_rows(&p, k));
            insert_new(&mut list, quot, rng);
        }
    }
    Ok(list)
}

fn validate_user<R: Rng>(a: &Arc<Algebra>, list: Vec<Module>, rng: &mut R) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    for (i, m) in list.into_iter().enumerate() {
        if !Arc::ptr_eq(m.algebra(), a) && **m.algebra() != **a {
            return Err(Error::AlgebraMismatch);
        }
        if !is_indecomposable(&m, rng, LOCALITY_SAMPLES) {
            return Err(Error::InvalidModule(format!("catalog entry {i} is not indecomposable")));
        }
        if !insert_new(&mut out, m, rng) {
            return Err(Error::InvalidModule(format!("catalog entry {i} repeats an earlier one")));
        }
    }
    Ok(out)
}

fn default_name(a: &Algebra, m: &Module, index: usize) -> String {
    let labels = &a.quiver().vertices;
    let support: Vec<usize> = (0..m.dims().len()).filter(|&v| m.dim_at(v) > 0).collect();
    if m.total_dim() == 1 {
        return format!("S{}", labels[support[0]]);
    }
    let tops = m.top();
    if tops.total_dim() == 1 {
        let v = (0..tops.dims().len()).find(|&v| tops.dim_at(v) == 1).unwrap();
        if m.dims() == projective(m.algebra(), v).dims() {
            return format!("P{}", labels[v]);
        }
    }
    if m.dims().iter().all(|&d| d <= 1) {
        let tag: String = support.iter().map(|&v| labels[v].as_str()).collect();
        return format!("M{tag}");
    }
    format!("U{index}")
}

/// Solves `h x = rhs` over the rationals; `None` if `h` is singular.
pub fn solve_rational(h: &[Vec<usize>], rhs: &[usize]) -> Option<Vec<BigRational>> {
    let n = h.len();
    let r = |x: usize| BigRational::from_integer(BigInt::from(x));
    let mut aug: Vec<Vec<BigRational>> = h
        .iter()
        .zip(rhs)
        .map(|(row, &b)| row.iter().map(|&x| r(x)).chain(std::iter::once(r(b))).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(col, piv);
        let inv = BigRational::one() / aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..n {
            if i != col && !aug[i][col].is_zero() {
                let factor = aug[i][col].clone();
                for j in col..=n {
                    let sub = factor.clone() * aug[col][j].clone();
                    aug[i][j] = aug[i][j].clone() - sub;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

impl IndSet {
    /// Fills the Hom/Ext tables and the translate maps; checks the Hom table is invertible.
    pub fn from_modules(algebra: Arc<Algebra>, modules: Vec<Module>) -> Result<IndSet> {
        let names = modules
            .iter()
            .enumerate()
            .map(|(i, m)| default_name(&algebra, m, i))
            .collect();
        let hom_table: Vec<Vec<usize>> = modules
            .iter()
            .map(|x| modules.iter().map(|y| hom_dim(x, y)).collect())
            .collect();
        let ext_table = modules
            .iter()
            .map(|x| modules.iter().map(|y| ext1_dim(x, y)).collect())
            .collect();
        let zeros = vec![0; modules.len()];
        if !modules.is_empty() && solve_rational(&hom_table, &zeros).is_none() {
            return Err(Error::InconsistentDecomposition("Hom table is singular".into()));
        }
        let mut set = IndSet {
            algebra,
            modules,
            names,
            hom_table,
            ext_table,
            tau_map: Vec::new(),
            tau_inverse_map: Vec::new(),
        };
        set.tau_map = set.translate_map(tau)?;
        set.tau_inverse_map = set.translate_map(tau_inverse)?;
        Ok(set)
    }

    fn translate_map(&self, op: fn(&Module) -> Module) -> Result<Vec<Option<usize>>> {
        self.modules
            .iter()
            .map(|m| {
                let t = op(m);
                if t.is_zero() {
                    return Ok(None);
                }
                match self.decompose(&t)?.support().as_slice() {
                    [j] if self.decompose(&t)?.multiplicities[*j] == 1 => Ok(Some(*j)),
                    _ => Err(Error::InconsistentDecomposition(
                        "translate of a catalog member is not a catalog member".into(),
                    )),
                }
            })
            .collect()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The catalog member called `name`; panics on unknown names.
    pub fn get(&self, name: &str) -> &Module {
        let i = self.index_of(name).unwrap_or_else(|| panic!("no catalog member `{name}`"));
        &self.modules[i]
    }

    /// `U_{i_1} + ... + U_{i_k}`.
    pub fn sum(&self, indices: &[usize]) -> Module {
        if indices.is_empty() {
            return Module::zero(self.algebra.clone());
        }
        let parts: Vec<&Module> = indices.iter().map(|&i| &self.modules[i]).collect();
        Module::direct_sum(&parts)
    }

    /// Direct sum of members by name.
    pub fn sum_named(&self, names: &[&str]) -> Module {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.index_of(n).unwrap_or_else(|| panic!("no catalog member `{n}`")))
            .collect();
        self.sum(&idx)
    }

    pub fn describe(&self, d: &Decomposition) -> String {
        let parts: Vec<String> = d
            .support()
            .into_iter()
            .map(|i| match d.multiplicities[i] {
                1 => self.names[i].clone(),
                k => format!("{k}*{}", self.names[i]),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Multiplicities from `dim Hom(U_i, M) = sum_j m_j dim Hom(U_i, U_j)`, then checked
    /// against dimension vectors and `dim Hom(M, U_i)`.
    pub fn decompose(&self, m: &Module) -> Result<Decomposition> {
        if !Arc::ptr_eq(m.algebra(), &self.algebra) && **m.algebra() != *self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let h: Vec<usize> = self.modules.iter().map(|u| hom_dim(u, m)).collect();
        let sol = solve_rational(&self.hom_table, &h)
            .ok_or_else(|| Error::InconsistentDecomposition("Hom table is singular".into()))?;
        let mut mult = Vec::with_capacity(sol.len());
        for x in sol {
            if !x.is_integer() || x.is_negative() {
                return Err(Error::InconsistentDecomposition(format!(
                    "multiplicity {x} is not a nonnegative integer; catalog incomplete"
                )));
            }
            mult.push(x.to_integer().to_usize().expect("small multiplicity"));
        }
        let dims: Vec<usize> = (0..m.dims().len())
            .map(|v| (0..mult.len()).map(|j| mult[j] * self.modules[j].dim_at(v)).sum())
            .collect();
        if dims != m.dims() {
            return Err(Error::InconsistentDecomposition("dimension vectors differ".into()));
        }
        for (i, u) in self.modules.iter().enumerate() {
            let expected: usize = (0..mult.len()).map(|j| mult[j] * self.hom_table[j][i]).sum();
            if hom_dim(m, u) != expected {
                return Err(Error::InconsistentDecomposition(format!(
                    "dim Hom(M, {}) disagrees with the decomposition",
                    self.names[i]
                )));
            }
        }
        Ok(Decomposition { multiplicities: mult })
    }

    pub fn is_isomorphic(&self, m: &Module, n: &Module) -> Result<bool> {
        Ok(self.decompose(m)? == self.decompose(n)?)
    }

    /// Indices of the distinct indecomposable summands.
    pub fn summands(&self, m: &Module) -> Result<Vec<usize>> {
        Ok(self.decompose(m)?.support())
    }

    pub fn index_of_module(&self, m: &Module) -> Result<Option<usize>> {
        let d = self.decompose(m)?;
        Ok(match d.support().as_slice() {
            [j] if d.multiplicities[*j] == 1 => Some(*j),
            _ => None,
        })
    }
}
