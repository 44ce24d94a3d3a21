use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use koszul::bar::{cobar, koszul_dual_algebra, relative_tensor, Window};
use koszul::dgalg::{DgAlgebra, DgBimodule};
use koszul::operads::laws;
use koszul::twarr::{twarr_check, FiniteCategory};
use koszul::{corpus, Fp, Q};

fn dual_ranks<F: koszul::Field>(a: &Arc<DgAlgebra<F>>, w: Window) -> usize {
    let k = Arc::new(DgAlgebra::unit_algebra());
    let bar = relative_tensor(&DgBimodule::trivial(k.clone(), a.clone()), a, &DgBimodule::trivial(a.clone(), k), w).unwrap();
    bar.complex().homology_ranks(w.lo, w.hi).iter().map(|h| h.rank).sum()
}

fn bar(c: &mut Criterion) {
    let w = Window::new(0, 8);
    let ext2 = Arc::new(corpus::exterior::<Q>("exterior2", &[("x", 1), ("y", 1)]));
    c.bench_function("koszul dual of exterior2 over Q, window 0:8", |b| b.iter(|| dual_ranks(black_box(&ext2), w)));
    let ext2p = Arc::new(corpus::exterior::<Fp<65521>>("exterior2", &[("x", 1), ("y", 1)]));
    c.bench_function("koszul dual of exterior2 over F65521, window 0:8", |b| b.iter(|| dual_ranks(black_box(&ext2p), w)));
    let dg = Arc::new(corpus::dg_dual_numbers::<Q>());
    c.bench_function("koszul dual of dg dual numbers, window 0:6", |b| b.iter(|| dual_ranks(black_box(&dg), Window::new(0, 6))));
    let ext1 = Arc::new(corpus::exterior1::<Q>());
    c.bench_function("cobar of the koszul dual of exterior1, window 0:8", |b| {
        b.iter(|| {
            let coalg = koszul_dual_algebra(black_box(&ext1), Window::new(0, 9)).unwrap();
            cobar(&coalg, w).unwrap()
        })
    });
}

fn combinatorics(c: &mut Criterion) {
    let mut g = c.benchmark_group("law checks");
    g.sample_size(10);
    g.bench_function("tens composition, n <= 2, k <= 2", |b| b.iter(|| laws::check_tens_composition(2, 2)));
    g.bench_function("slice terminality, n <= 2, k <= 2", |b| b.iter(|| laws::check_mass_terminality(2, 2)));
    let rel: Vec<(usize, usize)> = (1..6).map(|i| (i - 1, i)).collect();
    let names: Vec<String> = (0..6).map(|i| i.to_string()).collect();
    let chain6 = FiniteCategory::poset("chain6", names, &rel).unwrap();
    g.bench_function("twisted arrow suite on chain6", |b| b.iter(|| twarr_check(black_box(&chain6))));
    g.finish();
}

criterion_group!(benches, bar, combinatorics);
criterion_main!(benches);
