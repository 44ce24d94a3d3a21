//! The simplicial bar object `[n] ↦ M ⊗ A^{⊗n} ⊗ N` in chain complexes and
//! its geometric realization.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::chains::{ChainComplex, ChainMap};
use crate::dgalg::{same, DgAlgebra, DgBimodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Accumulator, Echelon, Matrix, SparseVec};
use crate::report::Report;

type Tuple = Vec<(i64, usize)>;

/// Basis of `X₁ ⊗ … ⊗ X_k` in degrees `[lo, top]`.
#[derive(Debug, Clone)]
struct MultiBasis {
    lo: i64,
    tuples: Vec<Vec<Tuple>>,
    lookup: Vec<HashMap<Tuple, usize>>,
}

impl MultiBasis {
    fn new<F: Field>(factors: &[&ChainComplex<F>], lo: i64, top: i64) -> Self {
        let mins: Vec<i64> = factors.iter().map(|c| c.lo()).collect();
        let mut partial: Vec<(i64, Tuple)> = vec![(0, Vec::new())];
        for (k, c) in factors.iter().enumerate() {
            let rest: i64 = mins[k + 1..].iter().sum();
            let mut next = Vec::new();
            for (s, t) in &partial {
                for p in c.degrees() {
                    if s + p + rest > top {
                        break;
                    }
                    for i in 0..c.dim(p) {
                        let mut t2 = t.clone();
                        t2.push((p, i));
                        next.push((s + p, t2));
                    }
                }
            }
            partial = next;
        }
        let n = (top - lo + 1).max(0) as usize;
        let mut tuples = vec![Vec::new(); n];
        for (s, t) in partial {
            if s >= lo {
                tuples[(s - lo) as usize].push(t);
            }
        }
        let lookup = tuples
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        MultiBasis { lo, tuples, lookup }
    }

    fn dim(&self, d: i64) -> usize {
        if d < self.lo {
            return 0;
        }
        self.tuples.get((d - self.lo) as usize).map_or(0, |v| v.len())
    }

    fn get(&self, d: i64, i: usize) -> &Tuple {
        &self.tuples[(d - self.lo) as usize][i]
    }

    fn find(&self, t: &Tuple) -> Option<usize> {
        let d: i64 = t.iter().map(|x| x.0).sum();
        if d < self.lo {
            return None;
        }
        self.lookup.get((d - self.lo) as usize)?.get(t).copied()
    }

    fn top(&self) -> i64 {
        self.lo + self.tuples.len() as i64 - 1
    }
}

fn sign<F: Field>(e: i64) -> F {
    F::sign(e.rem_euclid(2) == 1)
}

/// A simplicial object in chain complexes, through a finite level.
#[derive(Debug, Clone)]
pub struct SimplicialComplexObject<F> {
    pub levels: Vec<ChainComplex<F>>,
    /// `faces[n][i] = d_i : X_n -> X_{n-1}`; `faces[0]` is empty.
    pub faces: Vec<Vec<ChainMap<F>>>,
    /// `degeneracies[n][i] = s_i : X_n -> X_{n+1}` for `n + 1` in range.
    pub degeneracies: Vec<Vec<ChainMap<F>>>,
}

impl<F: Field> SimplicialComplexObject<F> {
    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    /// Degrees in which every level up to `n` is fully present.
    fn common_top(&self, n: usize) -> i64 {
        self.levels[..=n].iter().map(|c| c.hi()).min().unwrap_or(0)
    }

    /// Checks the simplicial identities componentwise.
    pub fn check_identities(&self) -> Report {
        let mut r = Report::new("simplicial-identities").with_bound("levels", self.top_level() as i64);
        let f = |n: usize, i: usize, d: i64| self.faces[n][i].component(d);
        let s = |n: usize, i: usize, d: i64| self.degeneracies[n][i].component(d);
        let lo = self.levels[0].lo();
        let l = self.top_level();
        for n in 2..=l {
            for d in lo..=self.common_top(n) {
                for j in 1..=n {
                    for i in 0..j {
                        let ok = f(n - 1, i, d).mul(&f(n, j, d)) == f(n - 1, j - 1, d).mul(&f(n, i, d));
                        r.check(ok, || format!("d_{i} d_{j} != d_{} d_{i} on level {n}, degree {d}", j - 1));
                    }
                }
            }
        }
        for n in 0..l {
            for d in lo..=self.common_top(n + 1) {
                let id = Matrix::identity(self.levels[n].dim(d));
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let lhs = f(n + 1, i, d).mul(&s(n, j, d));
                        let rhs = if i < j {
                            s(n - 1, j - 1, d).mul(&f(n, i, d))
                        } else if i == j || i == j + 1 {
                            id.clone()
                        } else {
                            s(n - 1, j, d).mul(&f(n, i - 1, d))
                        };
                        r.check(lhs == rhs, || format!("d_{i} s_{j} on level {n}, degree {d}"));
                    }
                }
            }
        }
        for n in 0..l.saturating_sub(1) {
            for d in lo..=self.common_top(n + 2) {
                for j in 0..=n {
                    for i in 0..=j {
                        let ok = s(n + 1, i, d).mul(&s(n, j, d)) == s(n + 1, j + 1, d).mul(&s(n, i, d));
                        r.check(ok, || format!("s_{i} s_{j} != s_{} s_{i} on level {n}, degree {d}", j + 1));
                    }
                }
            }
        }
        r
    }
}

/// The simplicial bar object of `M`, `A`, `N` through level `levels`, each
/// level in total internal degrees up to `top - n`.
pub fn bar_simplicial<F: Field>(
    m: &DgBimodule<F>,
    a: &Arc<DgAlgebra<F>>,
    n: &DgBimodule<F>,
    levels: usize,
    top: i64,
) -> Result<SimplicialComplexObject<F>> {
    if !same(m.right(), a) || !same(n.left(), a) {
        return Err(Error::shape(format!(
            "{} and {} are not modules over {}",
            m.name(),
            n.name(),
            a.name()
        )));
    }
    a.check_bar_regime()?;
    let (mc, ac, nc) = (m.complex(), a.complex(), n.complex());
    let lo = mc.lo() + nc.lo();
    let mut top = top;
    if ac.is_truncated_above() {
        top = top.min(ac.hi() + lo);
    }
    if mc.is_truncated_above() {
        top = top.min(mc.hi() + nc.lo());
    }
    if nc.is_truncated_above() {
        top = top.min(nc.hi() + mc.lo());
    }

    let mut bases = Vec::new();
    let mut complexes = Vec::new();
    for k in 0..=levels {
        let mut factors = vec![mc];
        factors.extend(std::iter::repeat_n(ac, k));
        factors.push(nc);
        let hi = top - k as i64;
        let b = MultiBasis::new(&factors, lo, hi.max(lo - 1));
        let mut diffs = Vec::new();
        for d in lo..=b.top() {
            let cols = (0..b.dim(d))
                .map(|u| {
                    let t = b.get(d, u);
                    let mut acc = Accumulator::new();
                    let mut pre = 0;
                    for (x, &(p, i)) in t.iter().enumerate() {
                        let sg: F = sign(pre);
                        for (i2, c) in factors[x].d(p).column(i) {
                            let mut t2 = t.clone();
                            t2[x] = (p - 1, *i2);
                            if let Some(v) = b.find(&t2) {
                                acc.add(v, sg.clone() * c.clone());
                            }
                        }
                        pre += p;
                    }
                    acc.finish()
                })
                .collect();
            diffs.push(Matrix::from_columns(b.dim(d - 1), cols));
        }
        let dims = (lo..=b.top()).map(|d| b.dim(d)).collect();
        complexes.push(ChainComplex::new(lo, dims, diffs)?.with_truncation(false, true));
        bases.push(b);
    }

    let map = |src: usize, dst: usize, f: &dyn Fn(&Tuple) -> Vec<(Tuple, F)>| -> Result<ChainMap<F>> {
        let (bs, bt) = (&bases[src], &bases[dst]);
        let mut comps = BTreeMap::new();
        for d in complexes[src].degrees() {
            let cols = (0..bs.dim(d))
                .map(|u| {
                    let mut acc = Accumulator::new();
                    for (t2, c) in f(bs.get(d, u)) {
                        if let Some(v) = bt.find(&t2) {
                            acc.add(v, c);
                        }
                    }
                    acc.finish()
                })
                .collect();
            comps.insert(d, Matrix::from_columns(bt.dim(d), cols));
        }
        ChainMap::new(complexes[src].clone(), complexes[dst].clone(), comps)
    };

    let mut faces = vec![Vec::new()];
    for k in 1..=levels {
        let mut fk = Vec::new();
        for i in 0..=k {
            let face = |t: &Tuple| -> Vec<(Tuple, F)> {
                let (x, y) = (t[i], t[i + 1]);
                let prod = if i == 0 {
                    m.right_action().basis(x.0, x.1, y.0, y.1)
                } else if i == k {
                    n.left_action().basis(x.0, x.1, y.0, y.1)
                } else {
                    a.product().basis(x.0, x.1, y.0, y.1)
                };
                prod.iter()
                    .map(|(z, c)| {
                        let mut t2 = Vec::with_capacity(t.len() - 1);
                        t2.extend_from_slice(&t[..i]);
                        t2.push((x.0 + y.0, *z));
                        t2.extend_from_slice(&t[i + 2..]);
                        (t2, c.clone())
                    })
                    .collect()
            };
            fk.push(map(k, k - 1, &face)?);
        }
        faces.push(fk);
    }
    let mut degeneracies = Vec::new();
    for k in 0..levels {
        let mut sk = Vec::new();
        for i in 0..=k {
            let degen = |t: &Tuple| -> Vec<(Tuple, F)> {
                let mut t2 = t.clone();
                t2.insert(i + 1, (0, a.unit()));
                vec![(t2, F::one())]
            };
            sk.push(map(k, k + 1, &degen)?);
        }
        degeneracies.push(sk);
    }
    Ok(SimplicialComplexObject {
        levels: complexes,
        faces,
        degeneracies,
    })
}

/// `⊕_n X_n[n]` in total degree `D`, for `D - lo` up to the top level.
struct Totalization {
    lo: i64,
    /// Per degree: `(level, offset)` for each contributing level.
    parts: Vec<Vec<(usize, usize)>>,
    dims: Vec<usize>,
}

impl Totalization {
    fn new<F: Field>(x: &SimplicialComplexObject<F>) -> Self {
        let lo = x.levels[0].lo();
        let top = (0..=x.top_level())
            .map(|n| x.levels[n].hi() + n as i64)
            .min()
            .unwrap_or(lo)
            .min(lo + x.top_level() as i64);
        let mut parts = Vec::new();
        let mut dims = Vec::new();
        for d in lo..=top {
            let mut off = 0;
            let mut ps = Vec::new();
            for (n, c) in x.levels.iter().enumerate() {
                ps.push((n, off));
                off += c.dim(d - n as i64);
            }
            parts.push(ps);
            dims.push(off);
        }
        Totalization { lo, parts, dims }
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

    fn offset(&self, d: i64, n: usize) -> usize {
        self.parts[(d - self.lo) as usize][n].1
    }

    /// `(level, index)` of a basis vector.
    fn split(&self, d: i64, u: usize) -> (usize, usize) {
        let ps = &self.parts[(d - self.lo) as usize];
        let k = ps.partition_point(|p| p.1 <= u) - 1;
        // Skip empty levels sharing the offset.
        let mut k = k;
        while k + 1 < ps.len() && ps[k + 1].1 <= u {
            k += 1;
        }
        (ps[k].0, u - ps[k].1)
    }

    /// `d = Σ (-1)^i d_i + (-1)^n d_int` on `X_n`.
    fn differential<F: Field>(&self, x: &SimplicialComplexObject<F>, d: i64) -> Matrix<F> {
        let cols = (0..self.dim(d))
            .map(|u| {
                let (n, i) = self.split(d, u);
                let q = d - n as i64;
                let mut acc = Accumulator::new();
                let sg: F = sign(n as i64);
                if d > self.lo {
                    let off = self.offset(d - 1, n);
                    for (t, c) in x.levels[n].d(q).column(i) {
                        acc.add(off + t, sg.clone() * c.clone());
                    }
                    if n > 0 {
                        let off = self.offset(d - 1, n - 1);
                        for (k, f) in x.faces[n].iter().enumerate() {
                            let sk: F = sign(k as i64);
                            for (t, c) in f.component(q).column(i) {
                                acc.add(off + t, sk.clone() * c.clone());
                            }
                        }
                    }
                }
                acc.finish()
            })
            .collect();
        Matrix::from_columns(self.dim(d - 1), cols)
    }

    /// The degenerate subspace of degree `d`.
    fn degenerate<F: Field>(&self, x: &SimplicialComplexObject<F>, d: i64) -> Echelon<F> {
        let mut e = Echelon::new();
        for n in 0..x.degeneracies.len() {
            let q = d - n as i64 - 1;
            if n + 1 >= x.levels.len() || d - self.lo < n as i64 + 1 {
                continue;
            }
            let off = self.offset(d, n + 1);
            for s in &x.degeneracies[n] {
                let c = s.component(q);
                for col in c.columns() {
                    e.insert(col.iter().map(|(t, v)| (off + t, v.clone())).collect());
                }
            }
        }
        e
    }
}

/// `|X|` without quotienting degeneracies: `⊕_n X_n[n]`, exact in total
/// degrees `D` with `D - lo` at most the top level.
pub fn realize_unnormalized<F: Field>(x: &SimplicialComplexObject<F>) -> Result<ChainComplex<F>> {
    let t = Totalization::new(x);
    let diffs = (t.lo..=t.top()).map(|d| t.differential(x, d)).collect();
    let dims = (t.lo..=t.top()).map(|d| t.dim(d)).collect();
    Ok(ChainComplex::new(t.lo, dims, diffs)?.with_truncation(false, true))
}

struct Quotient<F> {
    ech: Vec<Echelon<F>>,
    /// Per degree, the position of each surviving coordinate.
    keep: Vec<HashMap<usize, usize>>,
}

impl<F: Field> Quotient<F> {
    fn new(x: &SimplicialComplexObject<F>, t: &Totalization) -> Self {
        let mut ech = Vec::new();
        let mut keep = Vec::new();
        for d in t.lo..=t.top() {
            let e = t.degenerate(x, d);
            let k = (0..t.dim(d)).filter(|&u| !e.is_pivot(u)).enumerate().map(|(a, b)| (b, a)).collect();
            ech.push(e);
            keep.push(k);
        }
        Quotient { ech, keep }
    }

    fn project(&self, t: &Totalization, d: i64, v: SparseVec<F>) -> SparseVec<F> {
        let k = (d - t.lo) as usize;
        let mut out: SparseVec<F> = self.ech[k]
            .reduce(v)
            .into_iter()
            .map(|(u, c)| (self.keep[k][&u], c))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }
}

/// The normalized realization: `⊕_n X_n[n]` modulo degenerate elements,
/// with basis the non-degenerate coordinates.
pub fn realize<F: Field>(x: &SimplicialComplexObject<F>) -> Result<ChainComplex<F>> {
    let t = Totalization::new(x);
    let q = Quotient::new(x, &t);
    let mut diffs = Vec::new();
    let mut dims = Vec::new();
    for d in t.lo..=t.top() {
        let k = (d - t.lo) as usize;
        let full = t.differential(x, d);
        let mut survivors: Vec<usize> = q.keep[k].keys().copied().collect();
        survivors.sort();
        let cols = survivors
            .iter()
            .map(|&u| {
                if d - 1 < t.lo {
                    Vec::new()
                } else {
                    q.project(&t, d - 1, full.column(u).to_vec())
                }
            })
            .collect();
        let rows = if d > t.lo { q.keep[k - 1].len() } else { 0 };
        diffs.push(Matrix::from_columns(rows, cols));
        dims.push(survivors.len());
    }
    Ok(ChainComplex::new(t.lo, dims, diffs)?.with_truncation(false, true))
}

/// The quotient map from the unnormalized to the normalized realization.
pub fn normalization_map<F: Field>(x: &SimplicialComplexObject<F>) -> Result<ChainMap<F>> {
    let t = Totalization::new(x);
    let q = Quotient::new(x, &t);
    let src = realize_unnormalized(x)?;
    let dst = realize(x)?;
    let mut comps = BTreeMap::new();
    for d in t.lo..=t.top() {
        let cols = (0..t.dim(d)).map(|u| q.project(&t, d, vec![(u, F::one())])).collect();
        comps.insert(d, Matrix::from_columns(dst.dim(d), cols));
    }
    ChainMap::new(src, dst, comps)
}
