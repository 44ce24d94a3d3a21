//! Finite-type chain complexes over an exact field, homological grading.
//!
//! A complex is stored on a window `[lo, hi]` of degrees. Outside the window
//! it is zero, unless the corresponding side is marked truncated, in which
//! case nothing is known there and homology at that end of the window is
//! tagged as an edge value.

mod tensor;

use std::borrow::Cow;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix, SparseVec};

pub use tensor::{associator, left_unitor, right_unitor, tensor, tensor_maps, TensorIndex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex<F> {
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[n - lo]` is `d_n: C_n -> C_{n-1}`.
    diffs: Vec<Matrix<F>>,
    truncated_below: bool,
    truncated_above: bool,
}

impl<F: Field> ChainComplex<F> {
    /// Builds a complex from `dims[n - lo]` and `diffs[n - lo] = d_n`,
    /// checking shapes and `d² = 0`.
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != diffs.len() {
            return Err(Error::shape(format!(
                "{} degrees but {} differentials",
                dims.len(),
                diffs.len()
            )));
        }
        let c = ChainComplex {
            lo,
            dims,
            diffs,
            truncated_below: false,
            truncated_above: false,
        };
        for n in c.lo..=c.hi() {
            let d = c.d(n);
            if d.cols() != c.dim(n) || d.rows() != c.dim(n - 1) {
                return Err(Error::shape(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    c.dim(n - 1),
                    c.dim(n)
                )));
            }
        }
        for n in c.lo + 1..=c.hi() {
            if !c.d(n - 1).mul(&c.d(n)).is_zero() {
                return Err(Error::validation(
                    "d-squared",
                    format!("d_{} d_{n} != 0", n - 1),
                ));
            }
        }
        Ok(c)
    }

    /// The zero complex.
    pub fn zero() -> Self {
        ChainComplex {
            lo: 0,
            dims: Vec::new(),
            diffs: Vec::new(),
            truncated_below: false,
            truncated_above: false,
        }
    }

    /// `k^dim` in a single degree.
    pub fn concentrated(degree: i64, dim: usize) -> Self {
        ChainComplex {
            lo: degree,
            dims: vec![dim],
            diffs: vec![Matrix::zero(0, dim)],
            truncated_below: false,
            truncated_above: false,
        }
    }

    /// The ground field in degree 0.
    pub fn unit() -> Self {
        Self::concentrated(0, 1)
    }

    /// A complex with zero differential.
    pub fn from_dims(lo: i64, dims: Vec<usize>) -> Self {
        let diffs = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| Matrix::zero(if i == 0 { 0 } else { dims[i - 1] }, d))
            .collect();
        ChainComplex {
            lo,
            dims,
            diffs,
            truncated_below: false,
            truncated_above: false,
        }
    }

    /// Builds a complex from a degree map of dims and differentials `d_n`
    /// (missing differentials are zero).
    pub fn from_maps(dims: &BTreeMap<i64, usize>, diffs: BTreeMap<i64, Matrix<F>>) -> Result<Self> {
        let Some((&lo, _)) = dims.iter().next() else {
            return Ok(Self::zero());
        };
        let hi = *dims.keys().next_back().expect("nonempty");
        let dim_of = |n: i64| dims.get(&n).copied().unwrap_or(0);
        let mut ds = Vec::new();
        for n in lo..=hi {
            ds.push(diffs.get(&n).cloned().unwrap_or_else(|| {
                Matrix::zero(if n == lo { 0 } else { dim_of(n - 1) }, dim_of(n))
            }));
        }
        if let Some(n) = diffs.keys().find(|&&n| n < lo || n > hi) {
            return Err(Error::shape(format!(
                "differential d_{n} outside the degree range"
            )));
        }
        Self::new(lo, (lo..=hi).map(dim_of).collect(), ds)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn is_truncated_above(&self) -> bool {
        self.truncated_above
    }

    pub fn is_truncated_below(&self) -> bool {
        self.truncated_below
    }

    /// Marks the degrees above (below) the window as unknown.
    pub fn with_truncation(mut self, below: bool, above: bool) -> Self {
        self.truncated_below = below;
        self.truncated_above = above;
        self
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d_n`; the zero matrix of the right shape outside the window.
    pub fn d(&self, n: i64) -> Cow<'_, Matrix<F>> {
        if n >= self.lo && n <= self.hi() {
            Cow::Borrowed(&self.diffs[(n - self.lo) as usize])
        } else {
            Cow::Owned(Matrix::zero(self.dim(n - 1), self.dim(n)))
        }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    /// Whether homology in degree `n` is not determined by the stored data.
    pub fn is_edge(&self, n: i64) -> bool {
        (self.truncated_above && n >= self.hi()) || (self.truncated_below && n <= self.lo)
    }

    /// The brutal truncation to `[lo, hi]`; sides that cut off nonzero
    /// degrees are marked truncated.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        if hi < lo {
            return Self::zero();
        }
        let dims: Vec<usize> = (lo..=hi).map(|n| self.dim(n)).collect();
        let diffs = (lo..=hi)
            .map(|n| {
                if n == lo {
                    Matrix::zero(0, self.dim(n))
                } else {
                    self.d(n).into_owned()
                }
            })
            .collect();
        ChainComplex {
            lo,
            dims,
            diffs,
            truncated_below: self.truncated_below && lo <= self.lo
                || (self.lo..lo).any(|n| self.dim(n) > 0),
            truncated_above: self.truncated_above && hi >= self.hi()
                || (hi < self.hi() && (hi + 1..=self.hi()).any(|n| self.dim(n) > 0)),
        }
    }

    /// The shift `X[s]` with `X[s]_n = X_{n-s}` and differential `(-1)^s d`.
    pub fn shift(&self, s: i64) -> Self {
        let sign = F::sign(s.rem_euclid(2) == 1);
        ChainComplex {
            lo: self.lo + s,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.scaled(&sign)).collect(),
            truncated_below: self.truncated_below,
            truncated_above: self.truncated_above,
        }
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        if self.dims.is_empty() {
            return other.clone();
        }
        if other.dims.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let dims: Vec<usize> = (lo..=hi).map(|n| self.dim(n) + other.dim(n)).collect();
        let diffs = (lo..=hi)
            .map(|n| {
                let rows = if n == lo {
                    0
                } else {
                    self.dim(n - 1) + other.dim(n - 1)
                };
                let off = self.dim(n - 1);
                let mut cols: Vec<Vec<(usize, F)>> = Vec::new();
                let a = self.d(n);
                let b = other.d(n);
                for j in 0..self.dim(n) {
                    cols.push(a.column(j).to_vec());
                }
                for j in 0..other.dim(n) {
                    cols.push(
                        b.column(j)
                            .iter()
                            .map(|(i, c)| (i + off, c.clone()))
                            .collect(),
                    );
                }
                Matrix::from_columns(rows, cols)
            })
            .collect();
        ChainComplex {
            lo,
            dims,
            diffs,
            truncated_below: self.truncated_below || other.truncated_below,
            truncated_above: self.truncated_above || other.truncated_above,
        }
    }

    /// Homology in degree `n`.
    pub fn homology(&self, n: i64) -> Homology<F> {
        let cycles = self.d(n).kernel();
        let boundaries = Echelon::from_vectors(self.d(n + 1).image());
        let mut span = boundaries.clone();
        let representatives: Vec<SparseVec<F>> = cycles
            .into_iter()
            .filter(|z| span.insert(z.clone()))
            .collect();
        Homology {
            degree: n,
            rank: representatives.len(),
            edge: self.is_edge(n),
            representatives,
        }
    }

    /// Homology ranks for each degree in `[lo, hi]`.
    pub fn homology_ranks(&self, lo: i64, hi: i64) -> Vec<HomologyRank> {
        (lo..=hi)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&n| {
                let z = self.dim(n) - self.d(n).rank();
                let b = self.d(n + 1).rank();
                HomologyRank {
                    degree: n,
                    rank: z - b,
                    edge: self.is_edge(n),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology<F> {
    pub degree: i64,
    pub rank: usize,
    pub edge: bool,
    pub representatives: Vec<SparseVec<F>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomologyRank {
    pub degree: i64,
    pub rank: usize,
    pub edge: bool,
}

/// A degree-0 chain map, given by its components on the source window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap<F> {
    source: ChainComplex<F>,
    target: ChainComplex<F>,
    components: BTreeMap<i64, Matrix<F>>,
}

impl<F: Field> ChainMap<F> {
    /// Checks shapes and `d f = f d` in every degree where both sides are known.
    pub fn new(
        source: ChainComplex<F>,
        target: ChainComplex<F>,
        components: BTreeMap<i64, Matrix<F>>,
    ) -> Result<Self> {
        let f = ChainMap {
            source,
            target,
            components,
        };
        for n in f.source.degrees() {
            let c = f.component(n);
            if c.rows() != f.target.dim(n) || c.cols() != f.source.dim(n) {
                return Err(Error::shape(format!("component f_{n} has the wrong shape")));
            }
        }
        for n in f.source.degrees() {
            if f.target.is_edge(n) || f.target.is_edge(n - 1) || f.source.is_edge(n) {
                continue;
            }
            let lhs = f.target.d(n).mul(&f.component(n));
            let rhs = f.component(n - 1).mul(&f.source.d(n));
            if lhs != rhs {
                return Err(Error::validation(
                    "chain-map",
                    format!("d f_{n} != f_{} d", n - 1),
                ));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplex<F>) -> Self {
        let components = c
            .degrees()
            .map(|n| (n, Matrix::identity(c.dim(n))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: &ChainComplex<F>, target: &ChainComplex<F>) -> Self {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &ChainComplex<F> {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex<F> {
        &self.target
    }

    pub fn component(&self, n: i64) -> Matrix<F> {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.target.dim(n), self.source.dim(n)))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMap<F>) -> Result<ChainMap<F>> {
        if self.target != next.source {
            return Err(Error::Composition("chain maps do not compose".into()));
        }
        let components = self
            .source
            .degrees()
            .map(|n| (n, next.component(n).mul(&self.component(n))))
            .collect();
        Ok(ChainMap {
            source: self.source.clone(),
            target: next.target.clone(),
            components,
        })
    }

    /// True iff every component is invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.source
            .degrees()
            .chain(self.target.degrees())
            .all(|n| self.component(n).is_invertible())
    }

    /// Compares the induced maps on homology in each degree of `[lo, hi]`.
    pub fn quasi_iso_report(&self, lo: i64, hi: i64) -> QuasiIsoReport {
        let degrees: Vec<QuasiIsoDegree> = (lo..=hi)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&n| self.degree_verdict(n))
            .collect();
        QuasiIsoReport { degrees }
    }

    /// True iff `H_n(f)` is an isomorphism for every non-edge `n` in `[lo, hi]`.
    pub fn is_quasi_iso(&self, lo: i64, hi: i64) -> bool {
        self.quasi_iso_report(lo, hi).holds()
    }

    fn degree_verdict(&self, n: i64) -> QuasiIsoDegree {
        let hs = self.source.homology(n);
        let ht = self.target.homology(n);
        let boundaries = self.target.d(n + 1).image();
        let f = self.component(n);
        let mut span = Echelon::from_vectors(boundaries);
        let image_rank = hs
            .representatives
            .iter()
            .filter(|z| span.insert(f.apply(z)))
            .count();
        QuasiIsoDegree {
            degree: n,
            source_rank: hs.rank,
            target_rank: ht.rank,
            image_rank,
            edge: hs.edge || ht.edge,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuasiIsoDegree {
    pub degree: i64,
    pub source_rank: usize,
    pub target_rank: usize,
    /// Rank of the induced map `H_n(f)`.
    pub image_rank: usize,
    pub edge: bool,
}

impl QuasiIsoDegree {
    pub fn is_iso(&self) -> bool {
        self.source_rank == self.target_rank && self.image_rank == self.source_rank
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiIsoReport {
    pub degrees: Vec<QuasiIsoDegree>,
}

impl QuasiIsoReport {
    pub fn holds(&self) -> bool {
        self.degrees
            .iter()
            .filter(|d| !d.edge)
            .all(QuasiIsoDegree::is_iso)
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::field::{Fp, Q};

    type F7 = Fp<7>;

    /// A direct sum of `singles[n]` copies of `k` in degree `n` and
    /// `pairs[n]` copies of `k --id--> k` from degree `n` to `n-1`, with the
    /// basis scrambled by random elementary moves. Its homology has rank
    /// `singles[n]` in degree `n`.
    fn scrambled<F: Field>(
        lo: i64,
        singles: &[usize],
        pairs: &[usize],
        rng: &mut ChaCha8Rng,
    ) -> ChainComplex<F> {
        let mut c = ChainComplex::<F>::zero();
        for (i, (&s, &p)) in singles.iter().zip(pairs).enumerate() {
            let n = lo + i as i64;
            c = c.direct_sum(&ChainComplex::concentrated(n, s));
            for _ in 0..p {
                let d = Matrix::identity(1);
                let interval =
                    ChainComplex::new(n - 1, vec![1, 1], vec![Matrix::zero(0, 1), d]).unwrap();
                c = c.direct_sum(&interval);
            }
        }
        let mut dims: Vec<usize> = c.dims.clone();
        let mut diffs = c.diffs.clone();
        for _ in 0..40 {
            let k = rng.gen_range(0..dims.len());
            if dims[k] < 2 {
                continue;
            }
            let i = rng.gen_range(0..dims[k]);
            let j = (i + rng.gen_range(1..dims[k])) % dims[k];
            let a = F::from_i64(rng.gen_range(-3..=3));
            // E = 1 + a e_ij on C_{lo+k}: d_k <- d_k E⁻¹, d_{k+1} <- E d_{k+1}.
            let mut e = Matrix::identity(dims[k]).to_dense();
            e[i][j] = a.clone();
            let mut e_inv = Matrix::identity(dims[k]).to_dense();
            e_inv[i][j] = -a;
            let e = Matrix::from_dense(dims[k], dims[k], &e);
            let e_inv = Matrix::from_dense(dims[k], dims[k], &e_inv);
            diffs[k] = diffs[k].mul(&e_inv);
            if k + 1 < dims.len() {
                diffs[k + 1] = e.mul(&diffs[k + 1]);
            }
        }
        dims.shrink_to_fit();
        ChainComplex::new(c.lo, dims, diffs).unwrap()
    }

    fn ranks<F: Field>(c: &ChainComplex<F>) -> Vec<usize> {
        c.homology_ranks(c.lo(), c.hi())
            .iter()
            .map(|h| h.rank)
            .collect()
    }

    #[test]
    fn interval_decomposition_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let len = rng.gen_range(1..6);
            let singles: Vec<usize> = (0..len).map(|_| rng.gen_range(0..3)).collect();
            let mut pairs: Vec<usize> = (0..len).map(|_| rng.gen_range(0..3)).collect();
            pairs[0] = 0;
            let c: ChainComplex<Q> = scrambled(-1, &singles, &pairs, &mut rng);
            let r = ranks(&c);
            assert_eq!(&r[..], &singles[..], "{:?}", c);
            let c: ChainComplex<F7> = scrambled(2, &singles, &pairs, &mut rng);
            assert_eq!(ranks(&c), singles);
        }
    }

    #[test]
    fn homology_representatives_are_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c: ChainComplex<Q> = scrambled(0, &[1, 2, 1], &[0, 1, 2], &mut rng);
        for n in c.degrees() {
            let h = c.homology(n);
            for z in &h.representatives {
                assert!(c.d(n).apply(z).is_empty());
            }
        }
    }

    #[test]
    fn rejects_nonzero_d_squared() {
        let one = Matrix::<Q>::identity(1);
        let r = ChainComplex::new(0, vec![1, 1, 1], vec![Matrix::zero(0, 1), one.clone(), one]);
        assert!(matches!(r, Err(Error::Validation { .. })));
    }

    #[test]
    fn truncation_marks_edges() {
        let c = ChainComplex::<Q>::from_dims(0, vec![1, 1, 1, 1]);
        let t = c.restrict(0, 2);
        assert!(t.is_truncated_above() && !t.is_truncated_below());
        let hs = t.homology_ranks(0, 2);
        assert_eq!(
            hs.iter().map(|h| h.edge).collect::<Vec<_>>(),
            vec![false, false, true]
        );
        assert!(!c.restrict(-2, 5).is_truncated_above());
    }

    #[test]
    fn kunneth_on_random_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..15 {
            let sx: Vec<usize> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            let sy: Vec<usize> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            let x: ChainComplex<Q> = scrambled(0, &sx, &[0, 1, 1], &mut rng);
            let y: ChainComplex<Q> = scrambled(-1, &sy, &[0, 2, 1], &mut rng);
            let t = tensor(&x, &y, x.lo() + y.lo(), x.hi() + y.hi());
            assert!(!t.is_truncated_above() && !t.is_truncated_below());
            for n in t.degrees() {
                let expected: usize = (0..3)
                    .flat_map(|p| (0..3).map(move |q| (p, q)))
                    .filter(|&(p, q)| x.lo() + p + y.lo() + q == n)
                    .map(|(p, q)| sx[p as usize] * sy[q as usize])
                    .sum();
                assert_eq!(t.homology(n).rank, expected, "degree {n}");
            }
        }
    }

    #[test]
    fn tensor_truncation_clamps_the_window() {
        let x = ChainComplex::<Q>::from_dims(0, vec![1, 1, 1]).restrict(0, 1);
        let y = ChainComplex::<Q>::from_dims(0, vec![1, 1]);
        let t = tensor(&x, &y, 0, 10);
        assert_eq!(t.hi(), 1);
        assert!(t.is_truncated_above());
        assert!(t.is_edge(1) && !t.is_edge(0));
    }

    #[test]
    fn coherence_isomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x: ChainComplex<Q> = scrambled(0, &[1, 0], &[0, 1], &mut rng);
        let y: ChainComplex<Q> = scrambled(1, &[0, 1, 1], &[0, 1, 0], &mut rng);
        let z: ChainComplex<Q> = scrambled(-1, &[1, 1], &[0, 1], &mut rng);
        let a = associator(&x, &y, &z).unwrap();
        assert!(a.is_isomorphism());
        assert!(left_unitor(&x).unwrap().is_isomorphism());
        assert!(right_unitor(&y).unwrap().is_isomorphism());
        let id = tensor_maps(&ChainMap::identity(&x), &ChainMap::identity(&y)).unwrap();
        assert_eq!(id, ChainMap::identity(id.source()));
    }

    #[test]
    fn quasi_isomorphisms() {
        let interval =
            ChainComplex::<Q>::new(0, vec![1, 1], vec![Matrix::zero(0, 1), Matrix::identity(1)])
                .unwrap();
        let f = ChainMap::zero(&interval, &ChainComplex::zero());
        assert!(f.is_quasi_iso(-1, 3));
        let point = ChainComplex::<Q>::unit();
        assert!(!ChainMap::zero(&point, &ChainComplex::zero()).is_quasi_iso(0, 0));
        let sum = point.direct_sum(&interval);
        let incl = ChainMap::new(
            point.clone(),
            sum.clone(),
            [(0, Matrix::from_columns(2, vec![vec![(0, Q::one())]]))].into(),
        )
        .unwrap();
        assert!(incl.is_quasi_iso(-1, 2));
        assert!(!incl.is_isomorphism());
    }
}
