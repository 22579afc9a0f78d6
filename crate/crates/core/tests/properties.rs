use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use silting::algebra::Algebra;
use silting::exactlin::{Fp, Matrix};
use silting::indec::{catalog, IndSet};
use silting::repmod::{hom_dim, Module};
use silting::silting::{is_silting, is_tau_rigid};
use silting::torsion::gen_class;
use silting::{seeded_rng, DEFAULT_SEED};

fn a3() -> &'static IndSet {
    static IND: OnceLock<IndSet> = OnceLock::new();
    IND.get_or_init(|| {
        let a = Arc::new(Algebra::linear_a(Fp::default(), 3));
        catalog(&a, &mut seeded_rng(DEFAULT_SEED)).unwrap()
    })
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(0u32..10007, r * c)
            .prop_map(move |data| Matrix::from_residues(Fp::default(), r, c, data))
    })
}

fn sparse_matrix() -> impl Strategy<Value = Matrix> {
    // small entries make rank deficiency common
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(0u32..3, r * c).prop_map(move |data| Matrix::from_residues(Fp::default(), r, c, data))
    })
}

fn multiset() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..3, 6)
}

fn assemble(mult: &[usize]) -> Module {
    let ind = a3();
    let parts: Vec<&Module> = mult
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat(&ind.modules[i]).take(k))
        .collect();
    Module::direct_sum(&parts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_plus_nullity(m in matrix()) {
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solutions_solve(m in sparse_matrix(), x in prop::collection::vec(0u32..10007, 6)) {
        let x = &x[..m.cols()];
        let b = m.mul_vec(x);
        let y = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn decomposition_recovers_multiplicities(mult in multiset()) {
        let d = a3().decompose(&assemble(&mult)).unwrap();
        prop_assert_eq!(d.multiplicities, mult);
    }

    #[test]
    fn hom_is_additive(m in multiset(), n in multiset()) {
        let ind = a3();
        let expected: usize = (0..6).flat_map(|i| (0..6).map(move |j| (i, j)))
            .map(|(i, j)| m[i] * n[j] * ind.hom_table[i][j])
            .sum();
        prop_assert_eq!(hom_dim(&assemble(&m), &assemble(&n)), expected);
    }

    #[test]
    fn silting_depends_only_on_additive_closure(mult in multiset()) {
        let ind = a3();
        let basic: Vec<usize> = mult.iter().map(|&k| k.min(1)).collect();
        let (m, b) = (assemble(&mult), assemble(&basic));
        prop_assert_eq!(is_silting(&m, ind).unwrap().verdict, is_silting(&b, ind).unwrap().verdict);
        prop_assert_eq!(is_tau_rigid(&m).verdict, is_tau_rigid(&b).verdict);
        prop_assert_eq!(gen_class(&m, ind), gen_class(&b, ind));
    }
}
