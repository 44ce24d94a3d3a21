//! Named verification runs over the shipped corpus. Each returns a
//! [`Report`] with canonical ordering, so equal inputs give equal JSON.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bar::{
    bar_cobar_counit, compat_witness, koszul_dual_algebra_to_weight, koszul_dual_module_to_weight, relative_tensor, Window,
};
use crate::chains::{ChainComplex, HomologyRank};
use crate::corpus;
use crate::dgalg::{DgAlgebra, DgBimodule, Multimodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::morita::{default_segal_sample, segal_check};
use crate::operads::laws;
use crate::report::Report;

/// Homology of `𝟙 ⊗_A 𝟙`.
pub fn koszul_dual_ranks<F: Field>(a: &Arc<DgAlgebra<F>>, window: Window) -> Result<Vec<HomologyRank>> {
    let k = Arc::new(DgAlgebra::unit_algebra());
    let bar = relative_tensor(&DgBimodule::trivial(k.clone(), a.clone()), a, &DgBimodule::trivial(a.clone(), k), window)?;
    Ok(bar.complex().homology_ranks(window.lo, window.hi))
}

/// Compares homology ranks degreewise; edge degrees of either side fail.
pub fn compare_ranks<F: Field>(r: &mut Report, label: &str, x: &ChainComplex<F>, y: &ChainComplex<F>, window: Window) {
    let (hx, hy) = (x.homology_ranks(window.lo, window.hi), y.homology_ranks(window.lo, window.hi));
    for (a, b) in hx.iter().zip(&hy) {
        r.check(a.rank == b.rank && !a.edge && !b.edge, || {
            format!("{label}: degree {}: ranks {} and {}{}", a.degree, a.rank, b.rank, if a.edge || b.edge { " (truncated)" } else { "" })
        });
    }
}

/// Colors, composition of validated morphisms, functoriality of the
/// comparison functor, simplicial identities of the bar index to level
/// `max_n + 1`, and terminality of the slice witnesses.
pub fn operads_check(max_n: usize, max_k: usize) -> Report {
    let mut r = Report::new("operads").with_bound("max_n", max_n as i64).with_bound("max_k", max_k as i64);
    r.absorb(laws::check_colors(max_k));
    r.absorb(laws::check_tens_composition(max_n, max_k));
    r.absorb(laws::check_phi_functor(max_n, max_k));
    r.absorb(laws::check_bar_index(max_n + 1));
    r.absorb(laws::check_mass_terminality(max_n, max_k));
    r
}

/// `A ⊗_A N ≃ N` for every corpus algebra and module, and `𝟙 ⊗_𝟙 N = N`.
pub fn contractibility_check<F: Field>(window: Window) -> Result<Report> {
    let mut r = Report::new("contractibility").with_bound("lo", window.lo).with_bound("hi", window.hi);
    for a in corpus::algebras::<F>() {
        let a = Arc::new(a);
        for x in corpus::left_modules(&a) {
            let bar = relative_tensor(&DgBimodule::regular(a.clone()), &a, x.bimodule(), window)?;
            compare_ranks(&mut r, &format!("{} over {}", x.name(), a.name()), bar.complex(), x.complex(), window);
        }
    }
    let k = Arc::new(DgAlgebra::unit_algebra());
    for x in [corpus::graded::<F>(0, &[1, 0, 2]), corpus::cone_of_identity()] {
        let n = DgBimodule::from_complex(x);
        let bar = relative_tensor(&DgBimodule::regular(k.clone()), &k, &n, window)?;
        r.check(bar.complex() == n.complex(), || "𝟙 ⊗_𝟙 N differs from N".into());
    }
    Ok(r)
}

/// Coalgebra and comodule laws of the Koszul duals of every corpus algebra
/// and module, up to `max_weight`.
pub fn coalgebra_check<F: Field>(max_weight: usize) -> Result<Report> {
    let mut r = Report::new("coalgebra").with_bound("max_weight", max_weight as i64);
    for a in corpus::algebras::<F>() {
        let a = Arc::new(a);
        let c = koszul_dual_algebra_to_weight(&a, max_weight)?;
        let v = c.validate();
        r.check(v.passed(), || format!("{}: {:?}", a.name(), v.first_failure()));
        for x in corpus::left_modules(&a) {
            let v = koszul_dual_module_to_weight(&a, &x, max_weight)?.validate();
            r.check(v.passed(), || format!("{} over {}: {:?}", x.name(), a.name(), v.first_failure()));
        }
    }
    Ok(r)
}

fn random_complex<F: Field, R: Rng>(rng: &mut R) -> ChainComplex<F> {
    let lo = rng.gen_range(0..=1);
    let dims: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=2)).collect();
    corpus::graded(lo, &dims)
}

/// The comparison `X ⊗ (M ⊗_A N) ⊗ Y -> (X ⊗ M) ⊗_A (N ⊗ Y)` is an
/// isomorphism on `instances` random choices of corpus data.
pub fn compat_check<F: Field>(instances: usize, seed: u64, window: Window) -> Result<Report> {
    let mut r = Report::new("compat").with_bound("instances", instances as i64).with_bound("seed", seed as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let algebras: Vec<Arc<DgAlgebra<F>>> = corpus::algebras().into_iter().map(Arc::new).collect();
    let k = Arc::new(DgAlgebra::unit_algebra());
    for i in 0..instances {
        let a = algebras[rng.gen_range(0..algebras.len())].clone();
        let mods = corpus::left_modules(&a);
        let n = mods[rng.gen_range(0..mods.len())].bimodule().clone();
        let m = if rng.gen_bool(0.5) { DgBimodule::regular(a.clone()) } else { DgBimodule::trivial(k.clone(), a.clone()) };
        let (x, y) = (random_complex::<F, _>(&mut rng), random_complex::<F, _>(&mut rng));
        let w = compat_witness(&x, &m, &a, &n, &y, window)?;
        r.check(w.isomorphism, || format!("instance {i}: {} ⊗_{} {}", m.name(), a.name(), n.name()));
    }
    Ok(r)
}

/// `(M ⊗ N) ⊗ P` and `M ⊗ (N ⊗ P)` over a 3-module agree in homology.
pub fn assoc_check<F: Field>(mm: &Multimodule<F>, window: Window) -> Result<Report> {
    if mm.len() != 3 {
        return Err(Error::shape(format!("associativity needs a 3-module, found {} bimodules", mm.len())));
    }
    let mut r = Report::new("assoc").with_bound("lo", window.lo).with_bound("hi", window.hi);
    let (al, bm) = (mm.algebras(), mm.bimodules());
    let left = relative_tensor(&relative_tensor(&bm[0], &al[1], &bm[1], window)?.into_module(), &al[2], &bm[2], window)?;
    let right = relative_tensor(&bm[0], &al[1], &relative_tensor(&bm[1], &al[2], &bm[2], window)?.into_module(), window)?;
    compare_ranks(&mut r, "bracketings", left.complex(), right.complex(), window);
    Ok(r)
}

/// `ΩB(A) -> A` is a homology isomorphism in the window.
pub fn counit_check<F: Field>(a: &Arc<DgAlgebra<F>>, window: Window) -> Result<Report> {
    let mut r = Report::new("bar-cobar-counit").with_bound("lo", window.lo).with_bound("hi", window.hi);
    let w = bar_cobar_counit(a, window)?;
    for d in w.map.map().quasi_iso_report(window.lo, window.hi).degrees {
        r.check(d.is_iso() && !d.edge, || {
            format!("degree {}: ranks {} -> {} with image {}", d.degree, d.source_rank, d.target_rank, d.image_rank)
        });
    }
    Ok(r)
}

/// Segal condition on the default generated sample.
pub fn segal_report<F: Field>(n: usize, seed: u64) -> Result<Report> {
    let r = segal_check(n, &default_segal_sample::<F>(seed))?;
    Ok(r.with_bound("seed", seed as i64))
}
