//! Property tests of the structural invariants on randomly generated inputs.

use std::sync::Arc;

use proptest::prelude::*;

use koszul::bar::relative_tensor;
use koszul::chains::{tensor, ChainComplex};
use koszul::dgalg::{free_left_module, DgAlgebra, DgBimodule};
use koszul::twarr::{twarr_check, twisted_arrow, FiniteCategory};
use koszul::{corpus, verify, Fp, Report, Window, Q};

/// A complex with known homology: `spheres[i]` copies of `k` in degree
/// `lo + i` plus `cones[i]` contractible pieces `k -> k` in degrees
/// `lo + i + 1 -> lo + i`.
fn assembled(lo: i64, spheres: &[usize], cones: &[usize]) -> ChainComplex<Q> {
    let mut c = ChainComplex::<Q>::from_dims(lo, spheres.to_vec());
    for (i, &n) in cones.iter().enumerate() {
        for _ in 0..n {
            c = c.direct_sum(&corpus::cone_of_identity().shift(lo + i as i64));
        }
    }
    c
}

fn arb_assembled() -> impl Strategy<Value = (i64, Vec<usize>, Vec<usize>)> {
    (0i64..=1, 1usize..=3).prop_flat_map(|(lo, len)| {
        (Just(lo), prop::collection::vec(0usize..=2, len), prop::collection::vec(0usize..=1, len))
    })
}

/// Coefficients of `∏ 1 / (1 - t^{dᵢ + 1})` up to `t^hi`.
fn poincare_series(degrees: &[i64], hi: usize) -> Vec<usize> {
    let mut series = vec![0usize; hi + 1];
    series[0] = 1;
    for &d in degrees {
        let step = (d + 1) as usize;
        for n in step..=hi {
            series[n] += series[n - step];
        }
    }
    series
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn kunneth_on_assembled_complexes(x in arb_assembled(), y in arb_assembled()) {
        let (cx, cy) = (assembled(x.0, &x.1, &x.2), assembled(y.0, &y.1, &y.2));
        let (lo, hi) = (x.0 + y.0, x.0 + y.0 + (x.1.len() + y.1.len()) as i64);
        let t = tensor(&cx, &cy, lo, hi);
        let got: Vec<usize> = t.homology_ranks(lo, hi).iter().map(|h| h.rank).collect();
        let mut want = vec![0usize; (hi - lo + 1) as usize];
        for (i, a) in x.1.iter().enumerate() {
            for (j, b) in y.1.iter().enumerate() {
                want[i + j] += a * b;
            }
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn homology_of_assembled_complexes(x in arb_assembled()) {
        let c = assembled(x.0, &x.1, &x.2);
        let hi = x.0 + x.1.len() as i64 - 1;
        let got: Vec<usize> = c.homology_ranks(x.0, hi).iter().map(|h| h.rank).collect();
        prop_assert_eq!(got, x.1);
    }

    #[test]
    fn koszul_dual_of_exterior_algebras(degrees in prop::collection::vec(0i64..=2, 1..=3)) {
        // Graded-commutative exterior algebras are tensor products of
        // `k[x]/x²`, whose duals have one class in each degree `w(|x|+1)`.
        let names = ["x", "y", "z"];
        let gens: Vec<(&str, i64)> = names.iter().copied().zip(degrees.iter().copied()).collect();
        let a = Arc::new(corpus::exterior::<Fp<65521>>("ext", &gens));
        let hi = 6;
        let h = verify::koszul_dual_ranks(&a, Window::new(0, hi)).unwrap();
        let got: Vec<usize> = h.iter().map(|h| h.rank).collect();
        prop_assert_eq!(got, poincare_series(&degrees, hi as usize));
        prop_assert!(h.iter().all(|h| !h.edge));
    }

    #[test]
    fn free_modules_are_dual_to_their_generators(alg in 1usize..6, lo in 0i64..=1, dims in prop::collection::vec(0usize..=2, 1..=3)) {
        let a = Arc::new(corpus::algebras::<Q>().swap_remove(alg));
        let e = corpus::graded(lo, &dims);
        let x = free_left_module(a.clone(), &e);
        let w = Window::new(0, 5);
        let k = Arc::new(DgAlgebra::unit_algebra());
        let bar = relative_tensor(&DgBimodule::trivial(k, a.clone()), &a, x.bimodule(), w).unwrap();
        let mut r = Report::new("free-duality");
        verify::compare_ranks(&mut r, "𝟙 ⊗_A (A ⊗ E) vs E", bar.complex(), &e, w);
        prop_assert!(r.passed(), "{:?}", r.failures);

        let bar = relative_tensor(&DgBimodule::regular(a.clone()), &a, x.bimodule(), w).unwrap();
        let mut r = Report::new("contractibility");
        verify::compare_ranks(&mut r, "A ⊗_A X vs X", bar.complex(), x.complex(), w);
        prop_assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn tensor_compatibility_on_random_seeds(seed in any::<u64>()) {
        let r = verify::compat_check::<Fp<7>>(4, seed, Window::new(0, 3)).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn twisted_arrows_of_random_posets(n in 1usize..=5, bits in any::<u32>()) {
        let mut rel = Vec::new();
        let mut b = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits >> b & 1 == 1 {
                    rel.push((i, j));
                }
                b += 1;
            }
        }
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let c = FiniteCategory::poset("random", names, &rel).unwrap();
        // In a poset the objects of TwArr are the comparable pairs.
        let pairs: usize = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| !c.hom(x, y).is_empty()).count();
        prop_assert_eq!(twisted_arrow(&c).total.objects().len(), pairs);
        let r = twarr_check(&c);
        prop_assert!(r.passed(), "{:?}", r.failures);
    }
}
