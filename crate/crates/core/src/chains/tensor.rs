//! Tensor products of complexes with the Koszul sign rule.

use std::collections::BTreeMap;

use super::{ChainComplex, ChainMap};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::Matrix;

/// Basis bookkeeping for `(X ⊗ Y)_n = ⊕_p X_p ⊗ Y_{n-p}`: in each degree the
/// blocks are ordered by `p`, and inside a block `x_i ⊗ y_j` sits at
/// `offset + i * dim Y_{n-p} + j`.
#[derive(Debug, Clone)]
pub struct TensorIndex {
    lo: i64,
    /// `blocks[n - lo]` lists `(p, offset)`.
    blocks: Vec<Vec<(i64, usize)>>,
    dims: Vec<usize>,
    x_dims: BTreeMap<i64, usize>,
    y_dims: BTreeMap<i64, usize>,
}

impl TensorIndex {
    pub fn new<F: Field>(x: &ChainComplex<F>, y: &ChainComplex<F>, lo: i64, hi: i64) -> Self {
        let x_dims: BTreeMap<i64, usize> = x.degrees().map(|p| (p, x.dim(p))).collect();
        let y_dims: BTreeMap<i64, usize> = y.degrees().map(|q| (q, y.dim(q))).collect();
        let mut blocks = Vec::new();
        let mut dims = Vec::new();
        for n in lo..=hi {
            let mut off = 0;
            let mut bs = Vec::new();
            for (&p, &dx) in &x_dims {
                let dy = y_dims.get(&(n - p)).copied().unwrap_or(0);
                if dx * dy > 0 {
                    bs.push((p, off));
                    off += dx * dy;
                }
            }
            blocks.push(bs);
            dims.push(off);
        }
        TensorIndex {
            lo,
            blocks,
            dims,
            x_dims,
            y_dims,
        }
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n >= self.lo + self.dims.len() as i64 {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    fn y_dim(&self, q: i64) -> usize {
        self.y_dims.get(&q).copied().unwrap_or(0)
    }

    /// Position of `x_i ⊗ y_j` with `|x_i| = p`, `|y_j| = n - p`.
    pub fn index(&self, n: i64, p: i64, i: usize, j: usize) -> Option<usize> {
        if n < self.lo || n >= self.lo + self.dims.len() as i64 {
            return None;
        }
        let bs = &self.blocks[(n - self.lo) as usize];
        let k = bs.binary_search_by_key(&p, |(q, _)| *q).ok()?;
        Some(bs[k].1 + i * self.y_dim(n - p) + j)
    }

    /// Inverse of [`TensorIndex::index`]: `(p, i, j)`.
    pub fn split(&self, n: i64, idx: usize) -> (i64, usize, usize) {
        let bs = &self.blocks[(n - self.lo) as usize];
        let k = bs.partition_point(|(_, off)| *off <= idx) - 1;
        let (p, off) = bs[k];
        let dy = self.y_dim(n - p);
        ((p), (idx - off) / dy, (idx - off) % dy)
    }

    /// The nonempty blocks of degree `n` as `(p, offset, dim X_p, dim Y_{n-p})`.
    pub fn blocks(&self, n: i64) -> Vec<(i64, usize, usize, usize)> {
        if n < self.lo || n >= self.lo + self.dims.len() as i64 {
            return Vec::new();
        }
        self.blocks[(n - self.lo) as usize]
            .iter()
            .map(|&(p, off)| (p, off, self.x_dims[&p], self.y_dim(n - p)))
            .collect()
    }
}

/// `X ⊗ Y` on degrees `[lo, hi]`, with `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.
///
/// When an input is truncated the window is clamped to the degrees where the
/// product is still determined, and the result is marked truncated.
pub fn tensor<F: Field>(
    x: &ChainComplex<F>,
    y: &ChainComplex<F>,
    lo: i64,
    hi: i64,
) -> ChainComplex<F> {
    let mut hi = hi;
    if x.is_truncated_above() {
        hi = hi.min(x.hi() + y.lo());
    }
    if y.is_truncated_above() {
        hi = hi.min(y.hi() + x.lo());
    }
    let mut lo = lo;
    if x.is_truncated_below() {
        lo = lo.max(x.lo() + y.hi());
    }
    if y.is_truncated_below() {
        lo = lo.max(y.lo() + x.hi());
    }
    let truncated_above = x.is_truncated_above() || y.is_truncated_above() || hi < x.hi() + y.hi();
    let truncated_below = x.is_truncated_below() || y.is_truncated_below() || lo > x.lo() + y.lo();
    if hi < lo {
        return ChainComplex::zero().with_truncation(truncated_below, truncated_above);
    }
    let idx = TensorIndex::new(x, y, lo, hi);
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let rows = if n == lo { 0 } else { idx.dim(n - 1) };
        let mut cols = Vec::with_capacity(idx.dim(n));
        for (p, _, dx, dy) in idx.blocks(n) {
            let q = n - p;
            let sign = F::sign(p.rem_euclid(2) == 1);
            let ddx = x.d(p);
            let ddy = y.d(q);
            for i in 0..dx {
                for j in 0..dy {
                    let mut col = Vec::new();
                    if n > lo {
                        for (i2, c) in ddx.column(i) {
                            if let Some(t) = idx.index(n - 1, p - 1, *i2, j) {
                                col.push((t, c.clone()));
                            }
                        }
                        for (j2, c) in ddy.column(j) {
                            if let Some(t) = idx.index(n - 1, p, i, *j2) {
                                col.push((t, sign.clone() * c.clone()));
                            }
                        }
                    }
                    cols.push(col);
                }
            }
        }
        diffs.push(Matrix::from_columns(rows, cols));
    }
    let dims = (lo..=hi).map(|n| idx.dim(n)).collect();
    ChainComplex::new(lo, dims, diffs)
        .expect("tensor product of complexes is a complex")
        .with_truncation(truncated_below, truncated_above)
}

fn full<F: Field>(x: &ChainComplex<F>, y: &ChainComplex<F>) -> ChainComplex<F> {
    tensor(x, y, x.lo() + y.lo(), x.hi() + y.hi())
}

/// `f ⊗ g` on the full tensor products of sources and targets.
pub fn tensor_maps<F: Field>(f: &ChainMap<F>, g: &ChainMap<F>) -> Result<ChainMap<F>> {
    let (xs, ys) = (f.source(), g.source());
    let (xt, yt) = (f.target(), g.target());
    let src = full(xs, ys);
    let tgt = full(xt, yt);
    let si = TensorIndex::new(xs, ys, src.lo(), src.hi());
    let ti = TensorIndex::new(xt, yt, tgt.lo(), tgt.hi());
    let mut comps = BTreeMap::new();
    for n in src.degrees() {
        let mut cols = Vec::new();
        for (p, _, dx, dy) in si.blocks(n) {
            let fp = f.component(p);
            let gq = g.component(n - p);
            for i in 0..dx {
                for j in 0..dy {
                    let mut col = Vec::new();
                    for (a, c) in fp.column(i) {
                        for (b, e) in gq.column(j) {
                            if let Some(t) = ti.index(n, p, *a, *b) {
                                col.push((t, c.clone() * e.clone()));
                            }
                        }
                    }
                    cols.push(col);
                }
            }
        }
        comps.insert(n, Matrix::from_columns(tgt.dim(n), cols));
    }
    ChainMap::new(src, tgt, comps)
}

/// The reindexing `(X ⊗ Y) ⊗ Z -> X ⊗ (Y ⊗ Z)`.
pub fn associator<F: Field>(
    x: &ChainComplex<F>,
    y: &ChainComplex<F>,
    z: &ChainComplex<F>,
) -> Result<ChainMap<F>> {
    let xy = full(x, y);
    let yz = full(y, z);
    let left = full(&xy, z);
    let right = full(x, &yz);
    let i_xy = TensorIndex::new(x, y, xy.lo(), xy.hi());
    let i_yz = TensorIndex::new(y, z, yz.lo(), yz.hi());
    let i_l = TensorIndex::new(&xy, z, left.lo(), left.hi());
    let i_r = TensorIndex::new(x, &yz, right.lo(), right.hi());
    let mut comps = BTreeMap::new();
    for n in left.degrees() {
        let mut cols = vec![Vec::new(); left.dim(n)];
        for (m, _, dxy, dz) in i_l.blocks(n) {
            for u in 0..dxy {
                let (p, a, b) = i_xy.split(m, u);
                for c in 0..dz {
                    let src = i_l.index(n, m, u, c).expect("in range");
                    let inner = i_yz.index(n - p, m - p, b, c).expect("in range");
                    let tgt = i_r.index(n, p, a, inner).expect("in range");
                    cols[src].push((tgt, F::one()));
                }
            }
        }
        comps.insert(n, Matrix::from_columns(right.dim(n), cols));
    }
    ChainMap::new(left, right, comps)
}

/// `k ⊗ X -> X`.
pub fn left_unitor<F: Field>(x: &ChainComplex<F>) -> Result<ChainMap<F>> {
    let kx = full(&ChainComplex::unit(), x);
    let comps = x
        .degrees()
        .map(|n| (n, Matrix::identity(x.dim(n))))
        .collect();
    ChainMap::new(kx, x.clone(), comps)
}

/// `X ⊗ k -> X`.
pub fn right_unitor<F: Field>(x: &ChainComplex<F>) -> Result<ChainMap<F>> {
    let xk = full(x, &ChainComplex::unit());
    let comps = x
        .degrees()
        .map(|n| (n, Matrix::identity(x.dim(n))))
        .collect();
    ChainMap::new(xk, x.clone(), comps)
}
