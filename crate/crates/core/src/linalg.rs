//! Sparse exact linear algebra.
//!
//! Vectors are sorted `(index, coefficient)` lists without zero entries.
//! Matrices are stored by column, since almost every matrix in this crate is
//! built by applying an operator to one basis element at a time. Elimination
//! is done by column reduction (pivot = largest nonzero row index); small
//! dense matrices are handed to a plain Gaussian elimination instead.

use std::collections::{BTreeMap, HashMap};

use crate::field::Field;

pub type SparseVec<F> = Vec<(usize, F)>;

/// Sorts, merges duplicates and drops zeros.
pub fn normalize<F: Field>(mut v: Vec<(usize, F)>) -> SparseVec<F> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = acc.clone() + c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Accumulates `(index, coefficient)` contributions.
#[derive(Debug, Clone)]
pub struct Accumulator<F> {
    terms: BTreeMap<usize, F>,
}

impl<F: Field> Default for Accumulator<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Accumulator<F> {
    pub fn new() -> Self {
        Accumulator {
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, c: F) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_insert_with(F::zero);
        *e = e.clone() + c;
    }

    pub fn add_vec(&mut self, scale: &F, v: &[(usize, F)]) {
        for (i, c) in v {
            self.add(*i, scale.clone() * c.clone());
        }
    }

    pub fn finish(self) -> SparseVec<F> {
        self.terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

/// `y + a x`.
pub fn axpy<F: Field>(y: &[(usize, F)], a: &F, x: &[(usize, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut p, mut q) = (0, 0);
    while p < y.len() || q < x.len() {
        let take_y = q >= x.len() || (p < y.len() && y[p].0 < x[q].0);
        let take_x = p >= y.len() || (q < x.len() && x[q].0 < y[p].0);
        if take_y {
            out.push(y[p].clone());
            p += 1;
        } else if take_x {
            out.push((x[q].0, a.clone() * x[q].1.clone()));
            q += 1;
        } else {
            let c = y[p].1.clone() + a.clone() * x[q].1.clone();
            if !c.is_zero() {
                out.push((y[p].0, c));
            }
            p += 1;
            q += 1;
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn scale<F: Field>(a: &F, x: &[(usize, F)]) -> SparseVec<F> {
    if a.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(i, c)| (*i, a.clone() * c.clone())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, F::one())]).collect(),
        }
    }

    /// Builds a matrix from (not necessarily normalized) columns.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, F)>>) -> Self {
        let columns: Vec<SparseVec<F>> = columns.into_iter().map(normalize).collect();
        for col in &columns {
            if let Some((i, _)) = col.last() {
                assert!(*i < rows, "row index {i} out of range {rows}");
            }
        }
        Matrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    /// Row-major dense input.
    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<F>]) -> Self {
        assert_eq!(data.len(), rows);
        let columns = (0..cols)
            .map(|c| {
                (0..rows)
                    .filter(|&r| !data[r][c].is_zero())
                    .map(|r| (r, data[r][c].clone()))
                    .collect()
            })
            .collect();
        Matrix {
            rows,
            cols,
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, F)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.columns[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let mut acc = Accumulator::new();
        for (j, c) in v {
            acc.add_vec(c, &self.columns[*j]);
        }
        acc.finish()
    }

    /// `self ∘ rhs`.
    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            columns: rhs.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&rhs.columns)
                .map(|(a, b)| axpy(a, &F::one(), b))
                .collect(),
        }
    }

    pub fn scaled(&self, a: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|c| scale(a, c)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut cols: Vec<SparseVec<F>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col {
                cols[*i].push((j, c.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            columns: cols,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut d = vec![vec![F::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col {
                d[*i][j] = c.clone();
            }
        }
        d
    }

    /// Block matrix `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, rhs.rows);
        let mut columns = self.columns.clone();
        columns.extend(rhs.columns.iter().cloned());
        Matrix {
            rows: self.rows,
            cols: self.cols + rhs.cols,
            columns,
        }
    }

    pub fn rank(&self) -> usize {
        if self.prefers_dense() {
            dense_rank(self.to_dense())
        } else {
            self.rank_sparse()
        }
    }

    pub fn rank_sparse(&self) -> usize {
        let mut ech = Echelon::new();
        self.columns
            .iter()
            .filter(|c| ech.insert(c.to_vec()))
            .count()
    }

    pub fn rank_dense(&self) -> usize {
        dense_rank(self.to_dense())
    }

    fn prefers_dense(&self) -> bool {
        let size = self.rows * self.cols;
        size > 0 && size <= DENSE_THRESHOLD && 4 * self.nnz() >= size
    }

    /// A basis of `{ v : self v = 0 }`.
    pub fn kernel(&self) -> Vec<SparseVec<F>> {
        // Column reduction tracking the combination of original columns.
        let mut pivots: HashMap<usize, (SparseVec<F>, SparseVec<F>)> = HashMap::new();
        let mut kernel = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let mut v = col.clone();
            let mut comb: SparseVec<F> = vec![(j, F::one())];
            while let Some((p, lead)) = v.last().cloned() {
                match pivots.get(&p) {
                    Some((pv, pc)) => {
                        let t = -lead;
                        v = axpy(&v, &t, pv);
                        comb = axpy(&comb, &t, pc);
                    }
                    None => break,
                }
            }
            match v.last().cloned() {
                None => kernel.push(comb),
                Some((p, lead)) => {
                    let inv = lead.inv().expect("nonzero pivot");
                    pivots.insert(p, (scale(&inv, &v), scale(&inv, &comb)));
                }
            }
        }
        kernel
    }

    /// A basis of the column space.
    pub fn image(&self) -> Vec<SparseVec<F>> {
        let mut ech = Echelon::new();
        for c in &self.columns {
            ech.insert(c.clone());
        }
        ech.into_basis()
    }

    /// Square matrix with trivial kernel.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

const DENSE_THRESHOLD: usize = 48 * 48;

fn dense_rank<F: Field>(mut a: Vec<Vec<F>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][c].inv().expect("nonzero pivot");
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let t = a[r][c].clone() * inv.clone();
            for k in c..cols {
                let v = a[r][k].clone() - t.clone() * a[rank][k].clone();
                a[r][k] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// An incrementally built echelon basis of a subspace.
///
/// Each stored vector is monic at its pivot (largest index) and pivots are
/// distinct, so reduction of a vector terminates with a vector whose pivot
/// is not owned by the basis.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    by_pivot: HashMap<usize, usize>,
    basis: Vec<SparseVec<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon {
            by_pivot: HashMap::new(),
            basis: Vec::new(),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec<F>>>(vs: I) -> Self {
        let mut e = Self::new();
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        // Pivots below the current leading entry may still be reducible, so
        // reduce from the top down, skipping entries that are not pivots.
        let mut out: SparseVec<F> = Vec::new();
        while let Some((p, lead)) = v.last().cloned() {
            match self.by_pivot.get(&p) {
                Some(&k) => v = axpy(&v, &(-lead), &self.basis[k]),
                None => {
                    out.push(v.pop().expect("nonempty"));
                }
            }
        }
        out.reverse();
        out
    }

    /// Inserts `v`; returns false when `v` already lies in the span.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(v);
        match r.last().cloned() {
            None => false,
            Some((p, lead)) => {
                let inv = lead.inv().expect("nonzero pivot");
                self.by_pivot.insert(p, self.basis.len());
                self.basis.push(scale(&inv, &r));
                true
            }
        }
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_pivot.keys().copied()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.by_pivot.contains_key(&i)
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<SparseVec<F>> {
        self.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type F5 = Fp<5>;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> Matrix<F5> {
        let data: Vec<Vec<F5>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if rng.gen_bool(density) {
                            F5::from_i64(rng.gen_range(1..5))
                        } else {
                            F5::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Matrix::from_dense(rows, cols, &data)
    }

    #[test]
    fn sparse_and_dense_ranks_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let r = rng.gen_range(0..12);
            let c = rng.gen_range(0..12);
            let density = rng.gen_range(0.05..0.9);
            let m = random_matrix(&mut rng, r, c, density);
            assert_eq!(m.rank_sparse(), m.rank_dense());
        }
    }

    #[test]
    fn kernel_is_kernel_and_has_right_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let r = rng.gen_range(1..10);
            let c = rng.gen_range(1..10);
            let m = random_matrix(&mut rng, r, c, 0.4);
            let ker = m.kernel();
            assert_eq!(ker.len() + m.rank(), c);
            for v in &ker {
                assert!(m.apply(v).is_empty());
            }
            assert_eq!(Echelon::from_vectors(ker.clone()).dim(), ker.len());
        }
    }

    #[test]
    fn rational_rank_of_singular_matrix() {
        let q = |a: i64| Q::from_i64(a);
        let m = Matrix::from_dense(
            3,
            3,
            &[
                vec![q(1), q(2), q(3)],
                vec![q(4), q(5), q(6)],
                vec![q(7), q(8), q(9)],
            ],
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_sparse(), 2);
        assert_eq!(m.kernel().len(), 1);
    }

    #[test]
    fn echelon_reduces_to_normal_form() {
        let q = |a: i64| Q::from_i64(a);
        let mut e = Echelon::new();
        assert!(e.insert(vec![(0, q(1)), (2, q(2))]));
        assert!(e.insert(vec![(1, q(1)), (2, q(1))]));
        assert!(!e.insert(vec![(0, q(1)), (1, q(-2))]));
        assert!(e.contains(&[(0, q(2)), (2, q(4))]));
        assert_eq!(e.dim(), 2);
        let r = e.reduce(vec![(2, q(1))]);
        assert!(r.iter().all(|(i, _)| !e.is_pivot(*i)));
    }

    #[test]
    fn product_and_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 4, 5, 0.5);
        let b = random_matrix(&mut rng, 5, 3, 0.5);
        let ab = a.mul(&b);
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
        assert_eq!(a.mul(&Matrix::identity(5)), a);
    }
}
