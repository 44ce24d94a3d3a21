//! The cobar construction, its module version, the bar–cobar counit and the
//! free-module checks of the bar object `𝟙 ⊗_A X`.
//!
//! `Ω(C)` is the tensor algebra on `s⁻¹C̄`, a letter `s⁻¹c` having degree
//! `|c| - 1`. On a letter, `d(s⁻¹c) = -s⁻¹(dc) + Σ (-1)^{|c'|} s⁻¹c' s⁻¹c''`
//! over the reduced coproduct `Δ̄c = Σ c' ⊗ c''`, extended as a derivation.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::{relative_tensor, DgCoalgebra, DgComodule, Window};
use crate::chains::{ChainComplex, ChainMap};
use crate::dgalg::{free_left_module, free_projection, AlgebraMap, BasisNames, Bilinear, DgAlgebra, DgBimodule, DgLeftModule};
use crate::error::{Error, Result, COBAR_REGIME};
use crate::field::Field;
use crate::linalg::{Accumulator, Matrix, SparseVec};
use crate::report::Report;

/// Words in the letters `s⁻¹c`, `c` a basis vector of `C̄`, by degree.
struct CobarWords {
    letters: Vec<(i64, usize)>,
    letter_of: HashMap<(i64, usize), u32>,
    by_deg: Vec<Vec<Vec<u32>>>,
    lookup: Vec<HashMap<Vec<u32>, usize>>,
}

impl CobarWords {
    fn new<F: Field>(c: &DgCoalgebra<F>, top: i64) -> Self {
        let cc = c.complex();
        let mut letters = Vec::new();
        for n in cc.degrees() {
            if n - 1 > top {
                break;
            }
            for i in 0..cc.dim(n) {
                if !c.is_counit_basis(n, i) {
                    letters.push((n, i));
                }
            }
        }
        let letter_of = letters.iter().enumerate().map(|(k, &l)| (l, k as u32)).collect();
        let mut by_deg: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
        for d in 1..=top.max(0) as usize {
            let mut ws = Vec::new();
            for (k, &(n, _)) in letters.iter().enumerate() {
                let dl = (n - 1) as usize;
                if dl > d {
                    continue;
                }
                for tail in &by_deg[d - dl] {
                    let mut w = Vec::with_capacity(tail.len() + 1);
                    w.push(k as u32);
                    w.extend_from_slice(tail);
                    ws.push(w);
                }
            }
            by_deg.push(ws);
        }
        let lookup = by_deg
            .iter()
            .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
            .collect();
        CobarWords {
            letters,
            letter_of,
            by_deg,
            lookup,
        }
    }

    fn dim(&self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            self.by_deg.get(d as usize).map_or(0, |v| v.len())
        }
    }

    fn degree(&self, word: &[u32]) -> i64 {
        word.iter().map(|&l| self.letters[l as usize].0 - 1).sum()
    }

    fn find(&self, word: &[u32]) -> Option<(i64, usize)> {
        let d = self.degree(word);
        Some((d, *self.lookup.get(d as usize)?.get(word)?))
    }
}

fn sign<F: Field>(e: i64) -> F {
    F::sign(e.rem_euclid(2) == 1)
}

fn check_cobar_regime<F: Field>(c: &DgCoalgebra<F>) -> Result<()> {
    let cc = c.complex();
    match cc
        .degrees()
        .find(|&n| n < 2 && cc.dim(n) > usize::from(n == 0))
    {
        None => Ok(()),
        Some(n) => Err(Error::Regime {
            regime: COBAR_REGIME,
            detail: format!("{} has coaugmentation coideal in degree {n}", c.name()),
        }),
    }
}

/// The differential of `Ω(C)` on a word.
fn cobar_d<F: Field>(c: &DgCoalgebra<F>, words: &CobarWords, word: &[u32]) -> Vec<(Vec<u32>, F)> {
    let cc = c.complex();
    let idx = c.pair_index();
    let mut out = Vec::new();
    let mut pre = 0;
    for (k, &l) in word.iter().enumerate() {
        let (n, i) = words.letters[l as usize];
        let sg: F = sign(pre);
        for (i2, v) in cc.d(n).column(i) {
            if let Some(&l2) = words.letter_of.get(&(n - 1, *i2)) {
                let mut w = word.to_vec();
                w[k] = l2;
                out.push((w, -(sg.clone() * v.clone())));
            }
        }
        for (t, v) in c.coproduct(n, i) {
            let (p, a, b) = idx.split(n, *t);
            let (Some(&l1), Some(&l2)) = (words.letter_of.get(&(p, a)), words.letter_of.get(&(n - p, b))) else {
                continue;
            };
            let mut w = Vec::with_capacity(word.len() + 1);
            w.extend_from_slice(&word[..k]);
            w.push(l1);
            w.push(l2);
            w.extend_from_slice(&word[k + 1..]);
            out.push((w, sg.clone() * sign::<F>(p) * v.clone()));
        }
        pre += n - 1;
    }
    out
}

/// Top degree of `Ω(C)` to compute for homology through `hi`, and whether
/// the result is truncated.
fn cobar_top<F: Field>(c: &DgCoalgebra<F>, hi: i64) -> (i64, bool) {
    let cc = c.complex();
    let trivial = cc.degrees().all(|n| cc.dim(n) == usize::from(n == 0));
    if trivial && !cc.is_truncated_above() {
        return (0, false);
    }
    let mut top = hi + 1;
    if cc.is_truncated_above() {
        top = top.min(cc.hi() - 1);
    }
    (top, true)
}

/// The cobar construction `Ω(C)`, through degree `window.hi + 1` where `C`
/// determines it.
pub fn cobar<F: Field>(c: &DgCoalgebra<F>, window: Window) -> Result<DgAlgebra<F>> {
    check_cobar_regime(c)?;
    let (top, truncated) = cobar_top(c, window.hi);
    let words = CobarWords::new(c, top);
    let mut diffs = Vec::new();
    for d in 0..=top {
        let cols: Vec<SparseVec<F>> = (0..words.dim(d))
            .into_par_iter()
            .map(|w| {
                let mut acc = Accumulator::new();
                for (w2, v) in cobar_d(c, &words, &words.by_deg[d as usize][w]) {
                    let (d2, t) = words.find(&w2).expect("boundary in window");
                    debug_assert_eq!(d2, d - 1);
                    acc.add(t, v);
                }
                acc.finish()
            })
            .collect();
        diffs.push(Matrix::from_columns(words.dim(d - 1), cols));
    }
    let dims = (0..=top).map(|d| words.dim(d)).collect();
    let complex = ChainComplex::new(0, dims, diffs)?.with_truncation(false, truncated);
    let product = Bilinear::from_fn(&complex, &complex, &complex, top, |p, i, q, j| {
        let mut w = words.by_deg[p as usize][i].clone();
        w.extend_from_slice(&words.by_deg[q as usize][j]);
        vec![(words.find(&w).expect("product in window").1, F::one())]
    });
    let mut names = BTreeMap::new();
    for d in 0..=top {
        let v = words.by_deg[d as usize]
            .iter()
            .map(|w| {
                let parts: Vec<String> = w
                    .iter()
                    .map(|&l| {
                        let (n, i) = words.letters[l as usize];
                        c.basis_name(n, i)
                    })
                    .collect();
                format!("<{}>", parts.join("|"))
            })
            .collect();
        names.insert(d, v);
    }
    DgAlgebra::from_parts(format!("Ω({})", c.name()), complex, 0, product, BasisNames::new(names))
}

/// The twisted tensor product `Ω(C) ⊗ Y` of a comodule, as a left
/// `Ω(C)`-module, through degree `window.hi + 1` where determined.
pub fn cobar_module<F: Field>(
    c: &Arc<DgCoalgebra<F>>,
    y: &DgComodule<F>,
    window: Window,
) -> Result<DgLeftModule<F>> {
    if !(Arc::ptr_eq(c, y.coalgebra()) || **c == **y.coalgebra()) {
        return Err(Error::shape(format!("{} is not a comodule over {}", y.name(), c.name())));
    }
    check_cobar_regime(c)?;
    let yc = y.complex();
    let cc = c.complex();
    let trivial = cc.degrees().all(|n| cc.dim(n) == usize::from(n == 0)) && !cc.is_truncated_above();
    let (top, truncated) = if trivial && !yc.is_truncated_above() {
        (yc.hi(), false)
    } else {
        let mut top = window.hi + 1;
        if yc.is_truncated_above() {
            top = top.min(yc.hi());
        }
        if cc.is_truncated_above() {
            top = top.min(cc.hi() - 1 + yc.lo());
        }
        (top, true)
    };
    let omega = Arc::new(cobar(c, Window::new(0, top - yc.lo() - 1))?);
    let oc = omega.complex();
    let words = CobarWords::new(c, oc.hi());
    let idx = crate::chains::TensorIndex::new(oc, yc, yc.lo(), top);
    let cy = y.pair_index();
    let lo = yc.lo();
    let mut diffs = Vec::new();
    for d in lo..=top {
        let cols: Vec<SparseVec<F>> = (0..idx.dim(d))
            .into_par_iter()
            .map(|u| {
                let (p, w, j) = idx.split(d, u);
                let q = d - p;
                let mut acc = Accumulator::new();
                for (w2, v) in oc.d(p).column(w) {
                    if let Some(t) = idx.index(d - 1, p - 1, *w2, j) {
                        acc.add(t, v.clone());
                    }
                }
                let sg: F = sign(p);
                for (j2, v) in yc.d(q).column(j) {
                    if let Some(t) = idx.index(d - 1, p, w, *j2) {
                        acc.add(t, sg.clone() * v.clone());
                    }
                }
                let word = &words.by_deg[p as usize][w];
                for (t, v) in y.coaction(q, j) {
                    let (n, a, b) = cy.split(q, *t);
                    let Some(&l) = words.letter_of.get(&(n, a)) else {
                        continue;
                    };
                    let mut w2 = word.clone();
                    w2.push(l);
                    let Some((p2, wi)) = words.find(&w2) else {
                        continue;
                    };
                    if let Some(t) = idx.index(d - 1, p2, wi, b) {
                        acc.add(t, sg.clone() * v.clone());
                    }
                }
                acc.finish()
            })
            .collect();
        diffs.push(Matrix::from_columns(idx.dim(d - 1), cols));
    }
    let dims = (lo..=top).map(|d| idx.dim(d)).collect();
    let complex = ChainComplex::new(lo, dims, diffs)?.with_truncation(false, truncated);
    let action = Bilinear::from_fn(oc, &complex, &complex, top, |r, k, d, u| {
        let (p, w, j) = idx.split(d, u);
        let mut w2 = words.by_deg[r as usize][k].clone();
        w2.extend_from_slice(&words.by_deg[p as usize][w]);
        match words.find(&w2).and_then(|(p2, wi)| idx.index(d + r, p2, wi, j)) {
            Some(t) => vec![(t, F::one())],
            None => Vec::new(),
        }
    });
    DgLeftModule::from_parts(
        format!("Ω({};{})", c.name(), y.name()),
        omega,
        complex,
        action,
        BasisNames::default(),
    )
}

/// The counit `ΩB(A) -> A`: a generator `s⁻¹[a]` maps to `a`, longer bar
/// words map to zero, extended multiplicatively.
#[derive(Debug, Clone)]
pub struct CounitWitness<F> {
    pub cobar_bar: Arc<DgAlgebra<F>>,
    pub map: AlgebraMap<F>,
}

pub fn bar_cobar_counit<F: Field>(a: &Arc<DgAlgebra<F>>, window: Window) -> Result<CounitWitness<F>> {
    let b = super::koszul_dual_algebra(a, Window::new(0, window.hi + 1))?;
    let omega = Arc::new(cobar(&b, window)?);
    let oc = omega.complex();
    let words = CobarWords::new(&b, oc.hi());
    let mut comps = BTreeMap::new();
    for d in oc.degrees() {
        let cols = (0..oc.dim(d))
            .map(|w| {
                let mut v: SparseVec<F> = vec![(a.unit(), F::one())];
                let mut deg = 0;
                for &l in &words.by_deg[d as usize][w] {
                    let (n, i) = words.letters[l as usize];
                    let bw = b.word(n, i).expect("bar coalgebra");
                    if bw.len() != 1 {
                        return Vec::new();
                    }
                    let (dl, al) = bw[0];
                    v = a.product().apply(deg, &v, dl, &[(al, F::one())]);
                    deg += dl;
                }
                v
            })
            .collect();
        comps.insert(d, Matrix::from_columns(a.complex().dim(d), cols));
    }
    let map = ChainMap::new(oc.clone(), a.complex().clone(), comps)?;
    let map = AlgebraMap::new(omega.clone(), a.clone(), map)?;
    Ok(CounitWitness {
        cobar_bar: omega,
        map,
    })
}

/// The free-module shadow of the universal property of `𝟙 ⊗_A X`:
/// the unit `X -> 𝟙 ⊗_A X`, `x ↦ 1[]x`, is a chain map; when `X = A ⊗ E`
/// (pass `E` as `generators`) the projection `𝟙 ⊗_A X -> E` is a
/// quasi-isomorphism on the window and its composite with the unit is
/// `ε ⊗ 1`.
pub fn bar_object_check<F: Field>(
    a: &Arc<DgAlgebra<F>>,
    x: &DgLeftModule<F>,
    generators: Option<&ChainComplex<F>>,
    window: Window,
) -> Result<Report> {
    let k = Arc::new(DgAlgebra::unit_algebra());
    let unit_module = DgBimodule::trivial(k, a.clone());
    let bar = relative_tensor(&unit_module, a, x.bimodule(), window)?;
    let bc = bar.complex();
    let xc = x.complex();
    let mut r = Report::new("bar-object").with_bound("hi", window.hi);

    let mut comps = BTreeMap::new();
    for n in xc.degrees() {
        let cols = (0..xc.dim(n))
            .map(|j| bar.index(n, 0, 0, &[], j).map(|t| vec![(t, F::one())]).unwrap_or_default())
            .collect();
        comps.insert(n, Matrix::from_columns(bc.dim(n), cols));
    }
    let unit = ChainMap::new(xc.clone(), bc.clone(), comps);
    r.check(unit.is_ok(), || "the unit X -> 1⊗_A X is not a chain map".into());

    let Some(e) = generators else {
        return Ok(r);
    };
    if free_left_module(a.clone(), e).complex() != xc {
        return Err(Error::shape("X is not the free module on the given generators"));
    }
    let eps = free_projection(a, e)?;
    let mut comps = BTreeMap::new();
    for n in bc.degrees() {
        let cols = (0..bc.dim(n))
            .map(|t| {
                let (_, _, word, j) = bar.element(n, t);
                if word.is_empty() {
                    eps.component(n).column(j).to_vec()
                } else {
                    Vec::new()
                }
            })
            .collect();
        comps.insert(n, Matrix::from_columns(e.dim(n), cols));
    }
    match ChainMap::new(bc.clone(), e.clone(), comps) {
        Err(err) => r.fail(format!("projection 1⊗_A X -> E: {err}")),
        Ok(proj) => {
            r.case();
            for v in proj.quasi_iso_report(window.lo, window.hi).degrees {
                r.check(v.edge || v.is_iso(), || format!("projection is not a quasi-isomorphism in degree {}", v.degree));
            }
            if let Ok(unit) = unit {
                for n in xc.degrees() {
                    if bc.is_edge(n) {
                        continue;
                    }
                    let lhs = proj.component(n).mul(&unit.component(n));
                    r.check(lhs == eps.component(n), || format!("projection ∘ unit != ε⊗1 in degree {n}"));
                }
            }
        }
    }
    Ok(r)
}
