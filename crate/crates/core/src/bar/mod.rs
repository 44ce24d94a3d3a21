//! Two-sided bar constructions and relative tensor products.
//!
//! The canonical model of `M ⊗_A N` is the normalized bar complex
//! `⊕_w M ⊗ (sĀ)^{⊗w} ⊗ N`, where a letter `sa` has degree `|a| + 1`. For
//! `m[a₁|…|a_w]n` write `εₖ = |m| + Σ_{t<k} (|a_t| + 1)`. The differential is
//! the sum of an internal part
//!
//! ```text
//!   dm[a₁|…|a_w]n + Σₖ (-1)^{εₖ+1} m[…|daₖ|…]n + (-1)^{ε_{w+1}} m[a₁|…|a_w]dn
//! ```
//!
//! and a simplicial part
//!
//! ```text
//!   (-1)^{|m|} (ma₁)[a₂|…]n
//!   + Σₖ (-1)^{εₖ+|aₖ|+1} m[…|aₖa_{k+1}|…]n
//!   + (-1)^{ε_w+1} m[…|a_{w-1}](a_w n)
//! ```
//!
//! Both parts square to zero and anticommute; this is checked by
//! [`BarComplex::check_differential`].

mod coalgebra;
mod cobar;
mod simplicial;

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::chains::{tensor, ChainComplex, ChainMap, TensorIndex};
use crate::dgalg::{same, Bilinear, BasisNames, DgAlgebra, DgBimodule, DgLeftModule, Sector};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Accumulator, Matrix, SparseVec};
use crate::report::Report;

pub use coalgebra::{
    koszul_dual_algebra, koszul_dual_algebra_to_weight, koszul_dual_module,
    koszul_dual_module_to_weight, DgCoalgebra, DgComodule,
};
pub use cobar::{bar_cobar_counit, bar_object_check, cobar, cobar_module, CounitWitness};
pub use simplicial::{bar_simplicial, normalization_map, realize, realize_unnormalized, SimplicialComplexObject};

/// A range of degrees `[lo, hi]` for homological claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    /// Parses `LO:HI`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            pointer: String::new(),
            message: format!("window `{s}` is not of the form LO:HI"),
        };
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        let lo = a.trim().parse().map_err(|_| bad())?;
        let hi = b.trim().parse().map_err(|_| bad())?;
        if hi < lo {
            return Err(bad());
        }
        Ok(Window { lo, hi })
    }
}

/// The bar words available in a computation, grouped by suspended degree
/// `Σ (|aₖ| + 1)`.
#[derive(Debug, Clone)]
pub struct Words {
    letters: Vec<(i64, usize)>,
    letter_of: HashMap<(i64, usize), u32>,
    by_sdeg: Vec<Vec<Vec<u32>>>,
    lookup: Vec<HashMap<Vec<u32>, usize>>,
}

impl Words {
    /// Letters are the basis of `Ā` (or of `A` when not `normalized`) in
    /// degrees `< max_sdeg`; words have suspended degree `<= max_sdeg`.
    fn new<F: Field>(a: &DgAlgebra<F>, normalized: bool, max_sdeg: i64, max_weight: Option<usize>) -> Self {
        let mut letters = Vec::new();
        let c = a.complex();
        for n in c.degrees() {
            if n + 1 > max_sdeg {
                break;
            }
            for i in 0..c.dim(n) {
                if !(normalized && a.is_unit_basis(n, i)) {
                    letters.push((n, i));
                }
            }
        }
        let letter_of = letters
            .iter()
            .enumerate()
            .map(|(k, &l)| (l, k as u32))
            .collect();
        let max_s = max_sdeg.max(0) as usize;
        let mut by_sdeg: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
        for s in 1..=max_s {
            let mut ws = Vec::new();
            for (k, &(n, _)) in letters.iter().enumerate() {
                let sd = (n + 1) as usize;
                if sd > s {
                    continue;
                }
                for tail in &by_sdeg[s - sd] {
                    if max_weight.is_some_and(|w| tail.len() >= w) {
                        continue;
                    }
                    let mut w = Vec::with_capacity(tail.len() + 1);
                    w.push(k as u32);
                    w.extend_from_slice(tail);
                    ws.push(w);
                }
            }
            by_sdeg.push(ws);
        }
        let lookup = by_sdeg
            .iter()
            .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
            .collect();
        Words {
            letters,
            letter_of,
            by_sdeg,
            lookup,
        }
    }

    /// `(degree, basis index)` of a letter in `A`.
    pub fn letter(&self, l: u32) -> (i64, usize) {
        self.letters[l as usize]
    }

    pub fn letter_of(&self, n: i64, i: usize) -> Option<u32> {
        self.letter_of.get(&(n, i)).copied()
    }

    pub fn count(&self, s: usize) -> usize {
        self.by_sdeg.get(s).map_or(0, |v| v.len())
    }

    pub fn word(&self, s: usize, w: usize) -> &[u32] {
        &self.by_sdeg[s][w]
    }

    pub fn sdeg(&self, word: &[u32]) -> usize {
        word.iter().map(|&l| (self.letters[l as usize].0 + 1) as usize).sum()
    }

    /// `(suspended degree, position)` of a word.
    pub fn find(&self, word: &[u32]) -> Option<(usize, usize)> {
        let s = self.sdeg(word);
        Some((s, *self.lookup.get(s)?.get(word)?))
    }
}

#[derive(Debug, Clone)]
struct Block {
    p: i64,
    s: usize,
    q: i64,
    offset: usize,
    nw: usize,
    dn: usize,
}

/// Basis of `M ⊗ T(sĀ) ⊗ N` by degree: blocks `(|m|, sdeg)` in order, and
/// inside a block `m_i [w] n_j` at `offset + (i * #words + w) * dim N + j`.
#[derive(Debug, Clone)]
struct Layout {
    lo: i64,
    blocks: Vec<Vec<Block>>,
    block_of: Vec<HashMap<(i64, usize), usize>>,
    dims: Vec<usize>,
}

impl Layout {
    fn new<F: Field>(mc: &ChainComplex<F>, words: &Words, nc: &ChainComplex<F>, lo: i64, top: i64) -> Self {
        let mut blocks = Vec::new();
        let mut block_of = Vec::new();
        let mut dims = Vec::new();
        for d in lo..=top {
            let mut off = 0;
            let mut bs = Vec::new();
            let mut index = HashMap::new();
            for p in mc.degrees() {
                let dm = mc.dim(p);
                for s in 0..words.by_sdeg.len() {
                    let q = d - p - s as i64;
                    let (nw, dn) = (words.count(s), nc.dim(q));
                    if dm * nw * dn == 0 {
                        continue;
                    }
                    index.insert((p, s), bs.len());
                    bs.push(Block {
                        p,
                        s,
                        q,
                        offset: off,
                        nw,
                        dn,
                    });
                    off += dm * nw * dn;
                }
            }
            blocks.push(bs);
            block_of.push(index);
            dims.push(off);
        }
        Layout {
            lo,
            blocks,
            block_of,
            dims,
        }
    }

    fn top(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    fn dim(&self, d: i64) -> usize {
        if d < self.lo || d > self.top() {
            0
        } else {
            self.dims[(d - self.lo) as usize]
        }
    }

    fn index(&self, d: i64, p: i64, i: usize, s: usize, w: usize, j: usize) -> Option<usize> {
        if d < self.lo || d > self.top() {
            return None;
        }
        let k = (d - self.lo) as usize;
        let b = &self.blocks[k][*self.block_of[k].get(&(p, s))?];
        Some(b.offset + (i * b.nw + w) * b.dn + j)
    }

    /// `(block, i, w, j)` of a basis vector.
    fn split(&self, d: i64, idx: usize) -> (&Block, usize, usize, usize) {
        let bs = &self.blocks[(d - self.lo) as usize];
        let k = bs.partition_point(|b| b.offset <= idx) - 1;
        let b = &bs[k];
        let r = idx - b.offset;
        (b, r / (b.nw * b.dn), r / b.dn % b.nw, r % b.dn)
    }
}

/// A bar complex `M ⊗ T(sĀ) ⊗ N` with its weight grading, the two parts of
/// its differential, and the actions of the outer algebras.
#[derive(Debug, Clone)]
pub struct BarComplex<F> {
    module: DgBimodule<F>,
    internal: Vec<Matrix<F>>,
    simplicial: Vec<Matrix<F>>,
    words: Words,
    layout: Layout,
    m_names: BasisNames,
    n_names: BasisNames,
    a: Arc<DgAlgebra<F>>,
}

/// How bar words are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BarOptions {
    /// Letters from `Ā` (reduced) or from all of `A`.
    pub normalized: bool,
    /// Keep only words of at most this many letters; the result is the
    /// weight-filtered subcomplex.
    pub max_weight: Option<usize>,
}

impl Default for BarOptions {
    fn default() -> Self {
        BarOptions {
            normalized: true,
            max_weight: None,
        }
    }
}

impl<F: Field> BarComplex<F> {
    /// Builds the bar complex in degrees up to `hi + 1` where determined, so
    /// that homology through `hi` is exact.
    pub fn new(
        m: &DgBimodule<F>,
        a: &Arc<DgAlgebra<F>>,
        n: &DgBimodule<F>,
        hi: i64,
        opts: BarOptions,
    ) -> Result<Self> {
        if !same(m.right(), a) {
            return Err(Error::shape(format!("{} is not a right {}-module", m.name(), a.name())));
        }
        if !same(n.left(), a) {
            return Err(Error::shape(format!("{} is not a left {}-module", n.name(), a.name())));
        }
        a.check_bar_regime()?;
        let (mc, nc, ac) = (m.complex(), n.complex(), a.complex());
        let lo = mc.lo() + nc.lo();
        let ideal_zero = ac.degrees().all(|d| a.ideal_dim(d) == 0);
        let max_letter = ac.degrees().filter(|&d| a.ideal_dim(d) > 0).max().unwrap_or(0) + 1;
        let natural = if opts.normalized && ideal_zero && !ac.is_truncated_above() {
            Some(mc.hi() + nc.hi())
        } else if !ac.is_truncated_above() {
            opts.max_weight.map(|w| mc.hi() + nc.hi() + w as i64 * max_letter)
        } else {
            None
        };
        let inputs_truncated = mc.is_truncated_above() || nc.is_truncated_above() || ac.is_truncated_above();
        let mut top = hi + 1;
        if ac.is_truncated_above() {
            top = top.min(ac.hi() + lo + 1);
        }
        if mc.is_truncated_above() {
            top = top.min(mc.hi() + nc.lo());
        }
        if nc.is_truncated_above() {
            top = top.min(nc.hi() + mc.lo());
        }
        let truncated = match natural {
            Some(t) if !inputs_truncated => {
                top = t;
                false
            }
            Some(t) => {
                top = top.min(t);
                true
            }
            None => true,
        };
        let words = Words::new(a, opts.normalized, top - lo, opts.max_weight);
        let layout = Layout::new(mc, &words, nc, lo, top.max(lo - 1));
        let top = layout.top();

        let mut internal = Vec::new();
        let mut simplicial = Vec::new();
        let mut diffs = Vec::new();
        for d in lo..=top {
            let cols: Vec<(SparseVec<F>, SparseVec<F>)> = (0..layout.dim(d))
                .into_par_iter()
                .map(|idx| bar_column(m, a, n, &words, &layout, d, idx))
                .collect();
            let rows = layout.dim(d - 1);
            let (ci, cs): (Vec<_>, Vec<_>) = cols.into_iter().unzip();
            let mi = Matrix::from_columns(rows, ci);
            let ms = Matrix::from_columns(rows, cs);
            diffs.push(mi.add(&ms));
            internal.push(mi);
            simplicial.push(ms);
        }
        let dims = (lo..=top).map(|d| layout.dim(d)).collect();
        let complex = ChainComplex::new(lo, dims, diffs)?.with_truncation(
            mc.is_truncated_below() || nc.is_truncated_below(),
            truncated,
        );

        let (b, c) = (m.left(), n.right());
        let left = Bilinear::from_fn(b.complex(), &complex, &complex, top, |r, k, d, idx| {
            let (blk, i, w, j) = layout.split(d, idx);
            m.left_action()
                .basis(r, k, blk.p, i)
                .iter()
                .filter_map(|(i2, v)| Some((layout.index(d + r, blk.p + r, *i2, blk.s, w, j)?, v.clone())))
                .collect()
        });
        let right = Bilinear::from_fn(&complex, c.complex(), &complex, top, |d, idx, r, k| {
            let (blk, i, w, j) = layout.split(d, idx);
            n.right_action()
                .basis(blk.q, j, r, k)
                .iter()
                .filter_map(|(j2, v)| Some((layout.index(d + r, blk.p, i, blk.s, w, *j2)?, v.clone())))
                .collect()
        });
        let module = DgBimodule::from_parts(
            format!("{}⊗_{}{}", m.name(), a.name(), n.name()),
            b.clone(),
            c.clone(),
            complex,
            left,
            right,
            BasisNames::default(),
        )?;
        Ok(BarComplex {
            module,
            internal,
            simplicial,
            words,
            layout,
            m_names: m.names().clone(),
            n_names: n.names().clone(),
            a: a.clone(),
        })
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        self.module.complex()
    }

    /// The result with the surviving outer actions.
    pub fn module(&self) -> &DgBimodule<F> {
        &self.module
    }

    pub fn into_module(self) -> DgBimodule<F> {
        self.module
    }

    pub fn words(&self) -> &Words {
        &self.words
    }

    pub fn internal(&self, d: i64) -> Matrix<F> {
        self.part(&self.internal, d)
    }

    pub fn simplicial(&self, d: i64) -> Matrix<F> {
        self.part(&self.simplicial, d)
    }

    fn part(&self, v: &[Matrix<F>], d: i64) -> Matrix<F> {
        let c = self.complex();
        if d < c.lo() || d > c.hi() {
            Matrix::zero(c.dim(d - 1), c.dim(d))
        } else {
            v[(d - c.lo()) as usize].clone()
        }
    }

    /// `(|m|, m index, word, n index)` of a basis vector of degree `d`.
    pub fn element(&self, d: i64, idx: usize) -> (i64, usize, &[u32], usize) {
        let (b, i, w, j) = self.layout.split(d, idx);
        (b.p, i, self.words.word(b.s, w), j)
    }

    /// Position of `m_i [word] n_j` with `|m_i| = p` in degree `d`.
    pub fn index(&self, d: i64, p: i64, i: usize, word: &[u32], j: usize) -> Option<usize> {
        let (s, w) = self.words.find(word)?;
        self.layout.index(d, p, i, s, w, j)
    }

    pub fn weight(&self, d: i64, idx: usize) -> usize {
        self.element(d, idx).2.len()
    }

    /// A readable name such as `m[x|y]n`.
    pub fn element_name(&self, d: i64, idx: usize) -> String {
        let (b, i, w, j) = self.layout.split(d, idx);
        let word = self.words.word(b.s, w);
        let letters: Vec<String> = word
            .iter()
            .map(|&l| {
                let (n, k) = self.words.letter(l);
                self.a.basis_name(n, k)
            })
            .collect();
        format!(
            "{}[{}]{}",
            self.m_names.get(b.p, i),
            letters.join("|"),
            self.n_names.get(b.q, j)
        )
    }

    /// Dimensions of the weight pieces of degree `d`, indexed by weight.
    pub fn weight_dims(&self, d: i64) -> Vec<usize> {
        let mut out = Vec::new();
        for idx in 0..self.complex().dim(d) {
            let w = self.weight(d, idx);
            if out.len() <= w {
                out.resize(w + 1, 0);
            }
            out[w] += 1;
        }
        out
    }

    /// Checks `d_int² = 0`, `d_simp² = 0` and `d_int d_simp + d_simp d_int = 0`
    /// in every degree, and that the simplicial part lowers weight by one
    /// while the internal part preserves it.
    pub fn check_differential(&self) -> Report {
        let mut r = Report::new("bar-differential");
        let c = self.complex();
        for d in c.lo() + 1..=c.hi() {
            let (i1, i0) = (self.internal(d), self.internal(d - 1));
            let (s1, s0) = (self.simplicial(d), self.simplicial(d - 1));
            r.check(i0.mul(&i1).is_zero(), || format!("d_int² != 0 in degree {d}"));
            r.check(s0.mul(&s1).is_zero(), || format!("d_simp² != 0 in degree {d}"));
            r.check(i0.mul(&s1).add(&s0.mul(&i1)).is_zero(), || {
                format!("d_int d_simp + d_simp d_int != 0 in degree {d}")
            });
        }
        for d in c.degrees() {
            let (int, simp) = (self.internal(d), self.simplicial(d));
            for idx in 0..c.dim(d) {
                let w = self.weight(d, idx);
                r.check(int.column(idx).iter().all(|(t, _)| self.weight(d - 1, *t) == w), || {
                    format!("internal part changes weight at {}", self.element_name(d, idx))
                });
                r.check(simp.column(idx).iter().all(|(t, _)| self.weight(d - 1, *t) + 1 == w), || {
                    format!("simplicial part does not lower weight at {}", self.element_name(d, idx))
                });
            }
        }
        r
    }
}

fn sign<F: Field>(e: i64) -> F {
    F::sign(e.rem_euclid(2) == 1)
}

/// Internal and simplicial parts of the differential on one basis vector.
fn bar_column<F: Field>(
    m: &DgBimodule<F>,
    a: &DgAlgebra<F>,
    n: &DgBimodule<F>,
    words: &Words,
    layout: &Layout,
    d: i64,
    idx: usize,
) -> (SparseVec<F>, SparseVec<F>) {
    let (b, i, w, j) = layout.split(d, idx);
    let (p, q, s) = (b.p, b.q, b.s as i64);
    let word = words.word(b.s, w);
    let (mc, nc, ac) = (m.complex(), n.complex(), a.complex());
    let mut int = Accumulator::new();
    let mut simp = Accumulator::new();
    let target = |p2: i64, i2: usize, word2: &[u32], j2: usize| -> Option<usize> {
        let (s2, w2) = words.find(word2)?;
        layout.index(d - 1, p2, i2, s2, w2, j2)
    };

    for (i2, c) in mc.d(p).column(i) {
        if let Some(t) = target(p - 1, *i2, word, j) {
            int.add(t, c.clone());
        }
    }
    let mut pre = p;
    let mut buf = word.to_vec();
    for (k, &l) in word.iter().enumerate() {
        let (dl, al) = words.letter(l);
        let sg: F = sign(pre + 1);
        for (b2, c) in ac.d(dl).column(al) {
            if let Some(l2) = words.letter_of(dl - 1, *b2) {
                buf[k] = l2;
                if let Some(t) = target(p, i, &buf, j) {
                    int.add(t, sg.clone() * c.clone());
                }
            }
        }
        buf[k] = l;
        pre += dl + 1;
    }
    let sg: F = sign(p + s);
    for (j2, c) in nc.d(q).column(j) {
        if let Some(t) = target(p, i, word, *j2) {
            int.add(t, sg.clone() * c.clone());
        }
    }

    if let Some(&first) = word.first() {
        let (d1, a1) = words.letter(first);
        let sg: F = sign(p);
        for (i2, c) in m.right_action().basis(p, i, d1, a1) {
            if let Some(t) = target(p + d1, *i2, &word[1..], j) {
                simp.add(t, sg.clone() * c.clone());
            }
        }
    }
    let mut pre = p;
    for k in 0..word.len().saturating_sub(1) {
        let (dk, ak) = words.letter(word[k]);
        let (dk1, ak1) = words.letter(word[k + 1]);
        let sg: F = sign(pre + dk + 1);
        let mut merged = Vec::with_capacity(word.len() - 1);
        for (b2, c) in a.product().basis(dk, ak, dk1, ak1) {
            if let Some(l2) = words.letter_of(dk + dk1, *b2) {
                merged.clear();
                merged.extend_from_slice(&word[..k]);
                merged.push(l2);
                merged.extend_from_slice(&word[k + 2..]);
                if let Some(t) = target(p, i, &merged, j) {
                    simp.add(t, sg.clone() * c.clone());
                }
            }
        }
        pre += dk + 1;
    }
    if let Some(&last) = word.last() {
        let (dw, aw) = words.letter(last);
        let sg: F = sign(pre + 1);
        for (j2, c) in n.left_action().basis(dw, aw, q, j) {
            if let Some(t) = target(p, i, &word[..word.len() - 1], *j2) {
                simp.add(t, sg.clone() * c.clone());
            }
        }
    }
    (int.finish(), simp.finish())
}

/// `M ⊗_A N` as the normalized bar complex, carrying the `B`-`C`-bimodule
/// structure of an `B`-`A`-bimodule `M` and an `A`-`C`-bimodule `N`.
pub fn relative_tensor<F: Field>(
    m: &DgBimodule<F>,
    a: &Arc<DgAlgebra<F>>,
    n: &DgBimodule<F>,
    window: Window,
) -> Result<BarComplex<F>> {
    BarComplex::new(m, a, n, window.hi, BarOptions::default())
}

/// `N ⊗_A M` for a bimodule `N` of the algebra sector and a left module `M`
/// of the module sector, with the residual left action of `N`.
pub fn external_relative_tensor<F: Field>(
    n: &DgBimodule<F>,
    m: &DgLeftModule<F>,
    window: Window,
) -> Result<DgLeftModule<F>> {
    if n.sector() != Sector::Algebra {
        return Err(Error::shape(format!("{} does not live in the algebra sector", n.name())));
    }
    let a = m.algebra();
    if !same(n.left(), a) || !same(n.right(), a) {
        return Err(Error::shape(format!(
            "{} is not a bimodule over {}",
            n.name(),
            a.name()
        )));
    }
    let bar = relative_tensor(n, a, m.bimodule(), window)?;
    Ok(DgLeftModule::from_bimodule(bar.into_module())?.with_sector(m.sector()))
}

/// `X ⊗ M` as a right module through `M`, forgetting any left action.
pub fn tensor_on_left<F: Field>(x: &ChainComplex<F>, m: &DgBimodule<F>) -> DgBimodule<F> {
    let mc = m.complex();
    let t = tensor(x, mc, x.lo() + mc.lo(), x.hi() + mc.hi());
    let idx = TensorIndex::new(x, mc, t.lo(), t.hi());
    let a = m.right();
    let k = Arc::new(DgAlgebra::unit_algebra());
    let left = Bilinear::from_fn(k.complex(), &t, &t, t.hi(), |_, _, _, j| vec![(j, F::one())]);
    let right = Bilinear::from_fn(&t, a.complex(), &t, t.hi(), |d, u, r, l| {
        let (p, i, jm) = idx.split(d, u);
        m.right_action()
            .basis(d - p, jm, r, l)
            .iter()
            .filter_map(|(j2, c)| Some((idx.index(d + r, p, i, *j2)?, c.clone())))
            .collect()
    });
    DgBimodule::from_parts(format!("X⊗{}", m.name()), k, a.clone(), t, left, right, BasisNames::default())
        .expect("shapes agree")
}

/// `N ⊗ Y` as a left module through `N`, forgetting any right action.
pub fn tensor_on_right<F: Field>(n: &DgBimodule<F>, y: &ChainComplex<F>) -> DgBimodule<F> {
    let nc = n.complex();
    let t = tensor(nc, y, nc.lo() + y.lo(), nc.hi() + y.hi());
    let idx = TensorIndex::new(nc, y, t.lo(), t.hi());
    let a = n.left();
    let k = Arc::new(DgAlgebra::unit_algebra());
    let right = Bilinear::from_fn(&t, k.complex(), &t, t.hi(), |_, i, _, _| vec![(i, F::one())]);
    let left = Bilinear::from_fn(a.complex(), &t, &t, t.hi(), |r, l, d, u| {
        let (p, i, jy) = idx.split(d, u);
        n.left_action()
            .basis(r, l, p, i)
            .iter()
            .filter_map(|(i2, c)| Some((idx.index(d + r, p + r, *i2, jy)?, c.clone())))
            .collect()
    });
    DgBimodule::from_parts(format!("{}⊗Y", n.name()), a.clone(), k, t, left, right, BasisNames::default())
        .expect("shapes agree")
}

/// The interchange map `|Bar_A(X⊗M, N⊗Y)| -> X ⊗ |Bar_A(M,N)| ⊗ Y` and
/// whether it is an isomorphism in every degree.
#[derive(Debug, Clone)]
pub struct CompatWitness<F> {
    pub map: ChainMap<F>,
    pub isomorphism: bool,
}

pub fn compat_witness<F: Field>(
    x: &ChainComplex<F>,
    m: &DgBimodule<F>,
    a: &Arc<DgAlgebra<F>>,
    n: &DgBimodule<F>,
    y: &ChainComplex<F>,
    window: Window,
) -> Result<CompatWitness<F>> {
    let xm = tensor_on_left(x, m);
    let ny = tensor_on_right(n, y);
    let outer = BarComplex::new(&xm, a, &ny, window.hi, BarOptions::default())?;
    let inner = BarComplex::new(m, a, n, window.hi - x.lo() - y.lo(), BarOptions::default())?;
    let (mc, nc, bc) = (m.complex(), n.complex(), inner.complex());
    let xb = tensor(x, bc, x.lo() + bc.lo(), x.hi() + bc.hi());
    let xby = tensor(&xb, y, xb.lo() + y.lo(), xb.hi() + y.hi());
    let i_xm = TensorIndex::new(x, mc, xm.complex().lo(), xm.complex().hi());
    let i_ny = TensorIndex::new(nc, y, ny.complex().lo(), ny.complex().hi());
    let i_xb = TensorIndex::new(x, bc, xb.lo(), xb.hi());
    let i_xby = TensorIndex::new(&xb, y, xby.lo(), xby.hi());
    let src = outer.complex();
    let mut comps = std::collections::BTreeMap::new();
    for d in src.degrees() {
        let cols = (0..src.dim(d))
            .map(|idx| {
                let (p, u, word, v) = outer.element(d, idx);
                let s = outer.words().sdeg(word) as i64;
                let q = d - p - s;
                let (px, ix, im) = i_xm.split(p, u);
                let (pn, jn, jy) = i_ny.split(q, v);
                let pm = p - px;
                let inner_deg = pm + s + pn;
                let Some(b) = inner.index(inner_deg, pm, im, word, jn) else {
                    return Vec::new();
                };
                let Some(xb_idx) = i_xb.index(px + inner_deg, px, ix, b) else {
                    return Vec::new();
                };
                match i_xby.index(d, px + inner_deg, xb_idx, jy) {
                    Some(t) => vec![(t, F::one())],
                    None => Vec::new(),
                }
            })
            .collect();
        comps.insert(d, Matrix::from_columns(xby.dim(d), cols));
    }
    let map = ChainMap::new(src.clone(), xby, comps)?;
    let isomorphism = map.is_isomorphism();
    Ok(CompatWitness { map, isomorphism })
}
