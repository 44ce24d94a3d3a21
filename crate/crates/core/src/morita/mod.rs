//! Multimodules as a double category at desk scale: pushforward along maps
//! of ordinals, the Segal gluing of bimodules, the action of horizontal
//! endomorphisms and the décalage of the 0-coskeleton.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bar::{relative_tensor, Window};
use crate::chains::ChainComplex;
use crate::dgalg::{
    bimodule_maps, free_bimodule, is_bimodule_map, map_equations, same, DgAlgebra, DgBimodule, Multimodule,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::report::Report;
use crate::simplicial::{MonotoneMap, Ordinal};

/// `α_! F` for `α : [m] -> [n]` and an `n`-module `F`: the algebras are
/// `F_{α(i)}` and the `i`-th bimodule is the relative tensor product of the
/// stretch `F_{α(i),α(i)+1} ⊗ ⋯ ⊗ F_{α(i+1)-1,α(i+1)}`, or the algebra
/// itself when the stretch is empty. Convex maps only reindex.
pub fn alpha_push<F: Field>(f: &Multimodule<F>, alpha: &MonotoneMap, window: Window) -> Result<Multimodule<F>> {
    if alpha.target().0 != f.len() {
        return Err(Error::shape(format!(
            "{alpha} does not land in [{}] for a {}-module",
            f.len(),
            f.len()
        )));
    }
    let (algs, bims) = (f.algebras(), f.bimodules());
    let v = alpha.values();
    let algebras = v.iter().map(|&i| algs[i].clone()).collect();
    let mut bimodules = Vec::with_capacity(v.len() - 1);
    for w in v.windows(2) {
        let (i, j) = (w[0], w[1]);
        if i == j {
            bimodules.push(DgBimodule::regular(algs[i].clone()));
            continue;
        }
        let mut acc = bims[i].clone();
        for k in i + 1..j {
            acc = relative_tensor(&acc, &algs[k], &bims[k], window)?.into_module();
        }
        bimodules.push(acc);
    }
    Multimodule::new(algebras, bimodules)
}

/// The action of an `A`-`A`-bimodule `N` on an `A`-`B`-bimodule `M`:
/// `N ⊗_A M` with the outer actions.
pub fn horizontal_action<F: Field>(n: &DgBimodule<F>, m: &DgBimodule<F>, window: Window) -> Result<DgBimodule<F>> {
    let a = n.left();
    if !same(a, n.right()) {
        return Err(Error::shape(format!("{} is not an endomorphism of {}", n.name(), a.name())));
    }
    if !same(a, m.left()) {
        return Err(Error::shape(format!("{} is not a left {}-module", m.name(), a.name())));
    }
    Ok(relative_tensor(n, a, m, window)?.into_module())
}

/// Algebras and a pool of bimodules between them from which multimodules
/// are glued.
#[derive(Debug, Clone)]
pub struct SegalSample<F> {
    pub algebras: Vec<Arc<DgAlgebra<F>>>,
    pub bimodules: Vec<DgBimodule<F>>,
    /// Number of multimodule pairs whose morphism spaces are compared.
    pub morphism_pairs: usize,
    pub seed: u64,
}

impl<F: Field> SegalSample<F> {
    /// For every ordered pair `(A, B)`: the trivial bimodule, the free
    /// bimodule on one generator, a free bimodule on seeded generators, and
    /// `A` itself when `A = B`. Duplicates are dropped.
    pub fn generate(algebras: Vec<Arc<DgAlgebra<F>>>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pool: Vec<DgBimodule<F>> = Vec::new();
        let mut push = |m: DgBimodule<F>| {
            if !pool.iter().any(|p| p.complex() == m.complex() && p.left_action() == m.left_action() && p.right_action() == m.right_action() && same(p.left(), m.left()) && same(p.right(), m.right())) {
                pool.push(m);
            }
        };
        for a in &algebras {
            for b in &algebras {
                let tag = format!("{},{}", a.name(), b.name());
                push(DgBimodule::trivial(a.clone(), b.clone()).with_name(format!("trivial({tag})")));
                push(free_bimodule(a.clone(), &ChainComplex::concentrated(0, 1), b.clone()).with_name(format!("free({tag})")));
                let dims = [rng.gen_range(0..=1), rng.gen_range(1..=2)];
                push(free_bimodule(a.clone(), &ChainComplex::from_dims(0, dims.to_vec()), b.clone())
                    .with_name(format!("free{dims:?}({tag})")));
                if Arc::ptr_eq(a, b) {
                    push(DgBimodule::regular(a.clone()).with_name(format!("regular({})", a.name())));
                }
            }
        }
        SegalSample {
            algebras,
            bimodules: pool,
            morphism_pairs: 24,
            seed,
        }
    }
}

/// The default sample over `𝟙`, `Λ(x)` and `k[x]/x²`.
pub fn default_segal_sample<F: Field>(seed: u64) -> SegalSample<F> {
    SegalSample::generate(
        vec![
            Arc::new(DgAlgebra::unit_algebra()),
            Arc::new(crate::corpus::exterior1()),
            Arc::new(crate::corpus::dual_numbers()),
        ],
        seed,
    )
}

/// Joint morphism space of two multimodules over the same algebras, as
/// tuples of components.
fn multimodule_maps<F: Field>(f: &Multimodule<F>, g: &Multimodule<F>) -> Vec<Vec<BTreeMap<i64, Matrix<F>>>> {
    let mut layouts = Vec::new();
    let mut rows: Vec<SparseVec<F>> = Vec::new();
    let mut offset = 0;
    for (m, n) in f.bimodules().iter().zip(g.bimodules()) {
        let (u, eqs) = map_equations(m, n);
        rows.extend(eqs.into_iter().map(|r| r.into_iter().map(|(k, v)| (k + offset, v)).collect::<SparseVec<F>>()));
        layouts.push((offset, u.clone()));
        offset += u.count;
    }
    let system = Matrix::from_columns(offset, rows).transpose();
    system
        .kernel()
        .iter()
        .map(|v| layouts.iter().map(|(off, u)| u.components(v, *off)).collect())
        .collect()
}

/// The Segal map from `n`-modules to chains of `n` bimodules glued over
/// shared algebras, checked to be a bijection on the sample: every chain
/// from the pool glues exactly when adjacent algebras agree, projecting a
/// glued module along the inclusions `{i, i+1} ⊂ [n]` recovers the chain,
/// and distinct modules have distinct projections. On seeded pairs of
/// modules over the same algebras, morphisms of modules correspond to
/// tuples of bimodule maps.
pub fn segal_check<F: Field>(n: usize, sample: &SegalSample<F>) -> Result<Report> {
    if n < 2 {
        return Err(Error::shape("the Segal condition is checked for n >= 2"));
    }
    let mut r = Report::new("segal").with_bound("n", n as i64);
    let pool = &sample.bimodules;
    let window = Window::new(0, 0);
    let mut glued: Vec<(Vec<usize>, Multimodule<F>)> = Vec::new();
    let mut images = BTreeSet::new();
    let mut tuple = vec![0usize; n];
    'outer: loop {
        let bims: Vec<DgBimodule<F>> = tuple.iter().map(|&i| pool[i].clone()).collect();
        let compatible = bims.windows(2).all(|w| same(w[0].right(), w[1].left()));
        let mut algebras = vec![bims[0].left().clone()];
        algebras.extend(bims.iter().map(|m| m.right().clone()));
        let label = || {
            let names: Vec<&str> = tuple.iter().map(|&i| pool[i].name()).collect();
            names.join(" | ")
        };
        match Multimodule::new(algebras, bims) {
            Ok(f) => {
                r.check(compatible, || format!("glued a chain with mismatched algebras: {}", label()));
                let mut image = Vec::with_capacity(n);
                for i in 0..n {
                    let p = alpha_push(&f, &MonotoneMap::of(n, &[i, i + 1]), window)?;
                    let found = pool.iter().position(|m| *m == p.bimodules()[0]);
                    let ok = found == Some(tuple[i])
                        && same(&p.algebras()[0], &f.algebras()[i])
                        && same(&p.algebras()[1], &f.algebras()[i + 1]);
                    r.check(ok, || format!("projection {i} of {} is not the glued bimodule", label()));
                    image.push(found.unwrap_or(usize::MAX));
                }
                r.check(images.insert(image), || format!("two modules share the projections of {}", label()));
                glued.push((tuple.clone(), f));
            }
            Err(_) => {
                r.check(!compatible, || format!("a compatible chain failed to glue: {}", label()));
            }
        }
        for k in (0..n).rev() {
            tuple[k] += 1;
            if tuple[k] < pool.len() {
                continue 'outer;
            }
            tuple[k] = 0;
        }
        break;
    }

    let mut by_chain: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, (_, f)) in glued.iter().enumerate() {
        let key = f
            .algebras()
            .iter()
            .map(|a| sample.algebras.iter().position(|b| same(a, b)).unwrap_or(usize::MAX))
            .collect();
        by_chain.entry(key).or_default().push(k);
    }
    let chains: Vec<&Vec<usize>> = by_chain.values().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(sample.seed);
    for _ in 0..sample.morphism_pairs {
        let Some(group) = chains.choose(&mut rng) else {
            break;
        };
        let (&i, &j) = (group.choose(&mut rng).expect("nonempty"), group.choose(&mut rng).expect("nonempty"));
        let (f, g) = (&glued[i].1, &glued[j].1);
        let joint = multimodule_maps(f, g);
        let mut expected = 0;
        for (m, n) in f.bimodules().iter().zip(g.bimodules()) {
            expected += bimodule_maps(m, n)?.len();
        }
        r.check(joint.len() == expected, || {
            format!("module maps have dimension {} but tuples of bimodule maps {}", joint.len(), expected)
        });
        let mut span = Echelon::new();
        for comps in &joint {
            let mut flat = Vec::new();
            let mut off = 0;
            for ((m, n), c) in f.bimodules().iter().zip(g.bimodules()).zip(comps) {
                r.check(is_bimodule_map(m, n, c), || "a module map has a component that is not a bimodule map".into());
                for (deg, mat) in c {
                    let rows = n.complex().dim(*deg);
                    for (col, entries) in mat.columns().iter().enumerate() {
                        let base = off + block_offset(m, n, *deg) + col * rows;
                        flat.extend(entries.iter().map(|(k, v)| (base + k, v.clone())));
                    }
                }
                off += total_entries(m, n);
            }
            flat.sort_by_key(|e| e.0);
            r.check(span.insert(flat), || "two module maps restrict to the same tuple".into());
        }
    }
    Ok(r)
}

fn block_offset<F: Field>(m: &DgBimodule<F>, n: &DgBimodule<F>, deg: i64) -> usize {
    m.complex()
        .degrees()
        .take_while(|&d| d < deg)
        .map(|d| m.complex().dim(d) * n.complex().dim(d))
        .sum()
}

fn total_entries<F: Field>(m: &DgBimodule<F>, n: &DgBimodule<F>) -> usize {
    m.complex().degrees().map(|d| m.complex().dim(d) * n.complex().dim(d)).sum()
}

fn tuples(universe: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..universe).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Precomposition of a labelling of `[n]` with `α : [m] -> [n]`.
fn pull(t: &[usize], alpha: &MonotoneMap) -> Vec<usize> {
    alpha.values().iter().map(|&v| t[v]).collect()
}

/// `Dec cosk₀ Y ≅ cosk₀ Y × Y₀` on the labellings of vertices by the given
/// algebras, at levels up to `max_level`: the comparison
/// `ψ(t) = (t|[n], t(∞))` is a bijection at every level, natural for all
/// faces and degeneracies, compatible with the projection `Dec → cosk₀`,
/// and the summed total dimensions of the labelled algebras factor.
pub fn decalage_check<F: Field>(algebras: &[Arc<DgAlgebra<F>>], max_level: usize) -> Report {
    let a = algebras.len();
    let mut r = Report::new("decalage").with_bound("levels", max_level as i64);
    let dims: Vec<usize> = algebras.iter().map(|x| x.complex().total_dim()).collect();
    let weight = |t: &[usize]| -> usize { t.iter().map(|&i| dims[i]).product() };
    let psi = |t: &[usize]| -> (Vec<usize>, usize) { (t[..t.len() - 1].to_vec(), t[t.len() - 1]) };
    for n in 0..=max_level {
        let dec = tuples(a, n + 2);
        let cosk = tuples(a, n + 1);
        r.check(dec.len() == a.pow(n as u32 + 2) && cosk.len() * a == dec.len(), || {
            format!("level {n}: fiber sizes {} and {}·{a}", dec.len(), cosk.len())
        });
        let image: BTreeSet<(Vec<usize>, usize)> = dec.iter().map(|t| psi(t)).collect();
        let product: BTreeSet<(Vec<usize>, usize)> =
            cosk.iter().flat_map(|s| (0..a).map(move |x| (s.clone(), x))).collect();
        r.check(image.len() == dec.len() && image == product, || format!("level {n}: ψ is not a bijection"));
        let lhs: usize = dec.iter().map(|t| weight(t)).sum();
        let rhs: usize = cosk.iter().map(|t| weight(t)).sum::<usize>() * dims.iter().sum::<usize>();
        r.check(lhs == rhs, || format!("level {n}: total dimensions {lhs} != {rhs}"));

        let mut maps = Vec::new();
        if n >= 1 {
            maps.extend((0..=n).map(|i| MonotoneMap::face(n, i)));
        }
        if n < max_level {
            maps.extend((0..=n).map(|i| MonotoneMap::degeneracy(n, i)));
        }
        for alpha in &maps {
            let m = alpha.source();
            let incl_m = MonotoneMap::inclusion_into_plus(m);
            let incl_n = MonotoneMap::inclusion_into_plus(Ordinal(n));
            for t in &dec {
                let moved = pull(t, &alpha.plus());
                let (s, x) = psi(t);
                r.check(psi(&moved) == (pull(&s, alpha), x), || format!("ψ is not natural for {alpha} at {t:?}"));
                r.check(pull(&moved, &incl_m) == pull(&pull(t, &incl_n), alpha), || {
                    format!("Dec -> cosk₀ is not natural for {alpha} at {t:?}")
                });
            }
        }
    }
    r
}

#[cfg(test)]
mod tests;
