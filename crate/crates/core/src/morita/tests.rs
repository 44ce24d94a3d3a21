use std::sync::Arc;

use super::*;
use crate::corpus;
use crate::dgalg::DgLeftModule;
use crate::field::Q;

fn ranks(c: &ChainComplex<Q>, lo: i64, hi: i64) -> Vec<usize> {
    c.homology_ranks(lo, hi).iter().map(|h| h.rank).collect()
}

#[test]
fn pushing_along_the_identity_returns_the_module() {
    let f = corpus::three_module::<Q>().unwrap();
    let g = alpha_push(&f, &MonotoneMap::identity(Ordinal(3)), Window::new(0, 4)).unwrap();
    assert_eq!(f, g);
}

#[test]
fn convex_push_is_a_projection() {
    let f = corpus::three_module::<Q>().unwrap();
    let g = alpha_push(&f, &MonotoneMap::of(3, &[1, 2]), Window::new(0, 4)).unwrap();
    assert_eq!(g.algebras(), &f.algebras()[1..3]);
    assert_eq!(g.bimodules(), &f.bimodules()[1..2]);
    let h = alpha_push(&f, &MonotoneMap::of(3, &[1, 2, 3]), Window::new(0, 4)).unwrap();
    let hh = alpha_push(&h, &MonotoneMap::of(2, &[0, 1]), Window::new(0, 4)).unwrap();
    assert_eq!(hh, g);
}

#[test]
fn inner_face_tensors_the_middle() {
    let f = corpus::three_module::<Q>().unwrap();
    let w = Window::new(0, 6);
    let g = alpha_push(&f, &MonotoneMap::of(3, &[0, 2, 3]), w).unwrap();
    let direct = relative_tensor(&f.bimodules()[0], &f.algebras()[1], &f.bimodules()[1], w).unwrap();
    assert_eq!(g.bimodules()[0].complex(), direct.complex());
    assert_eq!(g.bimodules()[1], f.bimodules()[2]);
}

#[test]
fn face_pushes_agree_in_both_orders() {
    let f = corpus::three_module::<Q>().unwrap();
    let w = Window::new(0, 6);
    let left = alpha_push(&alpha_push(&f, &MonotoneMap::of(3, &[0, 2, 3]), w).unwrap(), &MonotoneMap::of(2, &[0, 2]), w).unwrap();
    let right = alpha_push(&alpha_push(&f, &MonotoneMap::of(3, &[0, 1, 3]), w).unwrap(), &MonotoneMap::of(2, &[0, 2]), w).unwrap();
    let once = alpha_push(&f, &MonotoneMap::of(3, &[0, 3]), w).unwrap();
    let (l, r, o) = (left.bimodules()[0].complex(), right.bimodules()[0].complex(), once.bimodules()[0].complex());
    assert_eq!(ranks(l, 0, 6), ranks(r, 0, 6));
    assert_eq!(ranks(l, 0, 6), ranks(o, 0, 6));
}

#[test]
fn degenerate_push_inserts_the_algebra() {
    let f = corpus::three_module::<Q>().unwrap();
    let g = alpha_push(&f, &MonotoneMap::of(3, &[1, 1, 2]), Window::new(0, 4)).unwrap();
    assert_eq!(g.bimodules()[0], DgBimodule::regular(f.algebras()[1].clone()));
    g.validate().into_result().unwrap();
}

#[test]
fn push_rejects_wrong_target() {
    let f = corpus::three_module::<Q>().unwrap();
    assert_eq!(alpha_push(&f, &MonotoneMap::of(2, &[0, 2]), Window::new(0, 4)).unwrap_err().exit_code(), 2);
}

#[test]
fn segal_condition_on_the_default_sample() {
    let sample = default_segal_sample::<Q>(11);
    for n in [2, 3] {
        let r = segal_check(n, &sample).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.cases_checked > sample.bimodules.len().pow(n as u32) as u64);
    }
}

#[test]
fn segal_condition_over_unit_exterior_unit() {
    let k = Arc::new(DgAlgebra::unit_algebra());
    let lam = Arc::new(corpus::exterior1::<Q>());
    let sample = SegalSample::generate(vec![k, lam], 3);
    let r = segal_check(2, &sample).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
fn segal_with_only_the_unit_glues_plain_complexes() {
    let sample = SegalSample::generate(vec![Arc::new(DgAlgebra::<Q>::unit_algebra())], 5);
    assert!(sample.bimodules.len() >= 2);
    let r = segal_check(2, &sample).unwrap();
    assert!(r.passed());
    assert_eq!(segal_check(1, &sample).unwrap_err().exit_code(), 2);
}

#[test]
fn horizontal_action_unit_and_associativity() {
    let a = Arc::new(corpus::exterior1::<Q>());
    let b = Arc::new(corpus::dual_numbers::<Q>());
    let w = Window::new(0, 6);
    let m = free_bimodule(a.clone(), &corpus::graded(0, &[1, 1]), b.clone());
    let unit = horizontal_action(&DgBimodule::regular(a.clone()), &m, w).unwrap();
    assert_eq!(ranks(unit.complex(), 0, 6), ranks(m.complex(), 0, 6));

    let n1 = free_bimodule(a.clone(), &corpus::graded(0, &[1]), a.clone());
    let n2 = free_bimodule(a.clone(), &corpus::graded(0, &[0, 1]), a.clone());
    let twice = horizontal_action(&n1, &horizontal_action(&n2, &m, w).unwrap(), w).unwrap();
    let composed = horizontal_action(&horizontal_action(&n1, &n2, w).unwrap(), &m, w).unwrap();
    assert_eq!(ranks(twice.complex(), 0, 6), ranks(composed.complex(), 0, 6));
    // (A ⊗ E₁ ⊗ A) ⊗_A (A ⊗ E₂ ⊗ A) ⊗_A (A ⊗ E ⊗ B) ≃ A ⊗ E₁ ⊗ A ⊗ E₂ ⊗ A ⊗ E ⊗ B.
    let dims = |c: &ChainComplex<Q>| -> Vec<usize> { (0..=6).map(|d| c.dim(d)).collect() };
    let e = crate::chains::tensor(&corpus::graded::<Q>(0, &[1]), &corpus::graded(0, &[0, 1]), 0, 20);
    let e = crate::chains::tensor(&e, a.complex(), 0, 20);
    let e = crate::chains::tensor(&e, a.complex(), 0, 20);
    let e = crate::chains::tensor(&e, &corpus::graded(0, &[1, 1]), 0, 20);
    let expected = free_bimodule(a.clone(), &e, b.clone());
    assert_eq!(ranks(twice.complex(), 0, 6), dims(expected.complex()));
    assert_eq!(horizontal_action(&m, &m, w).unwrap_err().exit_code(), 2);
}

#[test]
fn decalage_of_the_coskeleton_is_a_product() {
    let algebras: Vec<Arc<DgAlgebra<Q>>> = vec![Arc::new(DgAlgebra::unit_algebra()), Arc::new(corpus::exterior1())];
    let r = decalage_check(&algebras, 4);
    assert!(r.passed(), "{:?}", r.failures);
    let three: Vec<Arc<DgAlgebra<Q>>> = corpus::algebras().into_iter().take(3).map(Arc::new).collect();
    assert!(decalage_check(&three, 3).passed());
}

#[test]
fn module_maps_match_an_independent_count() {
    // Maps A⊗E -> X of left modules are maps of complexes E -> X.
    let a = Arc::new(corpus::exterior1::<Q>());
    let e = corpus::graded(0, &[1, 1]);
    let free = crate::dgalg::free_left_module(a.clone(), &e);
    let x = DgLeftModule::regular(a.clone());
    let maps = bimodule_maps(free.bimodule(), x.bimodule()).unwrap();
    let k = DgBimodule::from_complex(e);
    let plain = bimodule_maps(&k, &DgBimodule::from_complex(x.complex().clone())).unwrap();
    assert_eq!(maps.len(), plain.len());
    assert!(maps.iter().all(|f| is_bimodule_map(free.bimodule(), x.bimodule(), f)));
}

