//! Degree-0 bimodule maps as the solution space of a linear system.

use std::collections::BTreeMap;

use super::{same, DgBimodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Accumulator, Matrix, SparseVec};

/// Unknowns of a map `src -> tgt`: the entries of each component, column
/// by column.
#[derive(Debug, Clone)]
pub(crate) struct MapUnknowns {
    blocks: BTreeMap<i64, (usize, usize, usize)>,
    pub(crate) count: usize,
}

impl MapUnknowns {
    fn new<F: Field>(src: &DgBimodule<F>, tgt: &DgBimodule<F>) -> Self {
        let (s, t) = (src.complex(), tgt.complex());
        let mut blocks = BTreeMap::new();
        let mut count = 0;
        for n in s.degrees() {
            let (rows, cols) = (t.dim(n), s.dim(n));
            if rows * cols > 0 {
                blocks.insert(n, (count, rows, cols));
                count += rows * cols;
            }
        }
        MapUnknowns { blocks, count }
    }

    fn var(&self, n: i64, r: usize, c: usize) -> Option<usize> {
        self.blocks.get(&n).map(|&(off, rows, _)| off + c * rows + r)
    }

    /// Components of the map whose unknowns are `v`, read from `offset` on.
    pub(crate) fn components<F: Field>(&self, v: &[(usize, F)], offset: usize) -> BTreeMap<i64, Matrix<F>> {
        let mut out = BTreeMap::new();
        for (&n, &(off, rows, cols)) in &self.blocks {
            let mut columns: Vec<SparseVec<F>> = vec![Vec::new(); cols];
            for (k, x) in v {
                if *k >= offset + off && *k < offset + off + rows * cols {
                    let e = k - offset - off;
                    columns[e / rows].push((e % rows, x.clone()));
                }
            }
            out.insert(n, Matrix::from_columns(rows, columns));
        }
        out
    }
}

/// The equations `d f = f d`, `f(a m) = a f(m)` and `f(m b) = f(m) b` on the
/// entries of `f`, each equation a row over the unknowns.
pub(crate) fn map_equations<F: Field>(src: &DgBimodule<F>, tgt: &DgBimodule<F>) -> (MapUnknowns, Vec<SparseVec<F>>) {
    let u = MapUnknowns::new(src, tgt);
    let (s, t) = (src.complex(), tgt.complex());
    let mut rows = Vec::new();
    let mut flush = |accs: Vec<Accumulator<F>>| {
        for acc in accs {
            let row = acc.finish();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    };
    for n in s.degrees() {
        for c in 0..s.dim(n) {
            let mut accs: Vec<Accumulator<F>> = (0..t.dim(n - 1)).map(|_| Accumulator::new()).collect();
            for k in 0..t.dim(n) {
                if let Some(x) = u.var(n, k, c) {
                    for (r, v) in t.d(n).column(k) {
                        accs[*r].add(x, v.clone());
                    }
                }
            }
            for (k, v) in s.d(n).column(c) {
                for (r, acc) in accs.iter_mut().enumerate() {
                    if let Some(x) = u.var(n - 1, r, *k) {
                        acc.add(x, -v.clone());
                    }
                }
            }
            flush(accs);
        }
    }
    for (alg, left) in [(src.left(), true), (src.right(), false)] {
        let ac = alg.complex();
        let act_s = if left { src.left_action() } else { src.right_action() };
        let act_t = if left { tgt.left_action() } else { tgt.right_action() };
        let on = |act: &super::Bilinear<F>, p: i64, i: usize, n: i64, c: usize| -> Vec<(usize, F)> {
            if left {
                act.basis(p, i, n, c).to_vec()
            } else {
                act.basis(n, c, p, i).to_vec()
            }
        };
        for p in ac.degrees() {
            for i in 0..ac.dim(p) {
                if alg.is_unit_basis(p, i) {
                    continue;
                }
                for n in s.degrees() {
                    for c in 0..s.dim(n) {
                        let mut accs: Vec<Accumulator<F>> = (0..t.dim(n + p)).map(|_| Accumulator::new()).collect();
                        for (k, v) in on(act_s, p, i, n, c) {
                            for (r, acc) in accs.iter_mut().enumerate() {
                                if let Some(x) = u.var(n + p, r, k) {
                                    acc.add(x, v.clone());
                                }
                            }
                        }
                        for k in 0..t.dim(n) {
                            if let Some(x) = u.var(n, k, c) {
                                for (r, v) in on(act_t, p, i, n, k) {
                                    accs[r].add(x, -v);
                                }
                            }
                        }
                        flush(accs);
                    }
                }
            }
        }
    }
    (u, rows)
}

fn check_sides<F: Field>(src: &DgBimodule<F>, tgt: &DgBimodule<F>) -> Result<()> {
    if same(src.left(), tgt.left()) && same(src.right(), tgt.right()) {
        Ok(())
    } else {
        Err(Error::shape(format!(
            "{} and {} are not bimodules over the same algebras",
            src.name(),
            tgt.name()
        )))
    }
}

/// A basis of the degree-0 bimodule maps `src -> tgt`, each map given by
/// its components.
pub fn bimodule_maps<F: Field>(src: &DgBimodule<F>, tgt: &DgBimodule<F>) -> Result<Vec<BTreeMap<i64, Matrix<F>>>> {
    check_sides(src, tgt)?;
    let (u, rows) = map_equations(src, tgt);
    let system = Matrix::from_columns(u.count, rows).transpose();
    Ok(system.kernel().iter().map(|v| u.components(v, 0)).collect())
}

/// Checks directly that `f` commutes with the differentials and both
/// actions.
pub fn is_bimodule_map<F: Field>(src: &DgBimodule<F>, tgt: &DgBimodule<F>, f: &BTreeMap<i64, Matrix<F>>) -> bool {
    if check_sides(src, tgt).is_err() {
        return false;
    }
    let (s, t) = (src.complex(), tgt.complex());
    let comp = |n: i64| f.get(&n).cloned().unwrap_or_else(|| Matrix::zero(t.dim(n), s.dim(n)));
    for n in s.degrees() {
        let m = comp(n);
        if m.rows() != t.dim(n) || m.cols() != s.dim(n) {
            return false;
        }
        if t.d(n).mul(&m) != comp(n - 1).mul(&s.d(n)) {
            return false;
        }
    }
    for p in src.left().complex().degrees() {
        for i in 0..src.left().complex().dim(p) {
            let a = [(i, F::one())];
            for n in s.degrees() {
                for c in 0..s.dim(n) {
                    let lhs = comp(n + p).apply(src.left_action().basis(p, i, n, c));
                    let rhs = tgt.left_action().apply(p, &a, n, comp(n).column(c));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    for p in src.right().complex().degrees() {
        for i in 0..src.right().complex().dim(p) {
            let b = [(i, F::one())];
            for n in s.degrees() {
                for c in 0..s.dim(n) {
                    let lhs = comp(n + p).apply(src.right_action().basis(n, c, p, i));
                    let rhs = tgt.right_action().apply(n, comp(n).column(c), p, &b);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}
