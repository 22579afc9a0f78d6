use std::sync::Arc;

use silting::algebra::Algebra;
use silting::exactlin::Fp;
use silting::verify::verify_all;
use silting::DEFAULT_SEED;

fn assert_suite(a: Algebra) {
    let r = verify_all(&Arc::new(a), DEFAULT_SEED).unwrap();
    let failed: Vec<_> = r.routes.iter().filter(|x| !x.verdict).collect();
    assert!(r.verdict, "{failed:#?}");
}

#[test]
fn a3_suite() {
    assert_suite(Algebra::linear_a(Fp::default(), 3));
}

#[test]
fn n3_suite() {
    assert_suite(Algebra::cyclic_nakayama(Fp::default(), 3, 2));
}
