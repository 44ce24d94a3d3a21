//! Coaugmented dg coalgebras and comodules, and the Koszul duals of an
//! augmented algebra and of its modules: the reduced bar constructions with
//! the deconcatenation coproduct and coaction.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{BarComplex, BarOptions, Window};
use crate::chains::{ChainComplex, TensorIndex};
use crate::dgalg::{BasisNames, DgAlgebra, DgBimodule, DgLeftModule, ValidationReport};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, SparseVec};

type Letters = Vec<(i64, usize)>;

/// A coaugmented dg coalgebra with adapted basis: `counit` indexes the
/// degree-0 basis vector spanning the coaugmentation, and the counit is its
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgCoalgebra<F> {
    name: String,
    complex: ChainComplex<F>,
    counit: usize,
    /// `coproduct[n]` maps `C_n` into `(C ⊗ C)_n`, numbered by [`TensorIndex`].
    coproduct: BTreeMap<i64, Matrix<F>>,
    names: BasisNames,
    /// For bar coalgebras, each basis vector's word as letters of `A`.
    words: Option<BTreeMap<i64, Vec<Letters>>>,
}

fn pair_index<F: Field>(x: &ChainComplex<F>, y: &ChainComplex<F>, top: i64) -> TensorIndex {
    TensorIndex::new(x, y, x.lo() + y.lo(), top)
}

impl<F: Field> DgCoalgebra<F> {
    /// Checks shapes only; see [`DgCoalgebra::validate`].
    pub fn new(
        name: impl Into<String>,
        complex: ChainComplex<F>,
        counit: usize,
        coproduct: BTreeMap<i64, Matrix<F>>,
        names: BasisNames,
    ) -> Result<Self> {
        if counit >= complex.dim(0) {
            return Err(Error::validation("counit", "coaugmentation is not a degree-0 basis vector"));
        }
        let idx = pair_index(&complex, &complex, complex.hi());
        for (&n, m) in &coproduct {
            if m.cols() != complex.dim(n) || m.rows() != idx.dim(n) {
                return Err(Error::shape(format!("coproduct in degree {n} has the wrong shape")));
            }
        }
        Ok(DgCoalgebra {
            name: name.into(),
            complex,
            counit,
            coproduct,
            names,
            words: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    pub fn counit(&self) -> usize {
        self.counit
    }

    pub fn names(&self) -> &BasisNames {
        &self.names
    }

    pub fn basis_name(&self, n: i64, i: usize) -> String {
        self.names.get(n, i)
    }

    pub fn is_counit_basis(&self, n: i64, i: usize) -> bool {
        n == 0 && i == self.counit
    }

    /// Numbering of `C ⊗ C` used by the coproduct.
    pub fn pair_index(&self) -> TensorIndex {
        pair_index(&self.complex, &self.complex, self.complex.hi())
    }

    /// `Δ` of a basis vector.
    pub fn coproduct(&self, n: i64, i: usize) -> &[(usize, F)] {
        self.coproduct.get(&n).map_or(&[], |m| m.column(i))
    }

    pub(crate) fn word(&self, n: i64, i: usize) -> Option<&[(i64, usize)]> {
        self.words.as_ref()?.get(&n)?.get(i).map(|w| w.as_slice())
    }

    /// Checks coassociativity, counitality and that `Δ` is a chain map, on
    /// every basis vector of the window.
    pub fn validate(&self) -> ValidationReport {
        let c = &self.complex;
        let idx = self.pair_index();
        let mut r = ValidationReport::new(&format!("coalgebra {}", self.name));
        let nm = |n: i64, i: usize| self.basis_name(n, i);

        let co = r.axiom("coassociativity");
        for n in c.degrees() {
            for i in 0..c.dim(n) {
                let mut lhs: BTreeMap<[(i64, usize); 3], F> = BTreeMap::new();
                let mut rhs: BTreeMap<[(i64, usize); 3], F> = BTreeMap::new();
                for (t, v) in self.coproduct(n, i) {
                    let (p, a, b) = idx.split(n, *t);
                    for (t2, v2) in self.coproduct(p, a) {
                        let (p2, a2, b2) = idx.split(p, *t2);
                        add(&mut lhs, [(p2, a2), (p - p2, b2), (n - p, b)], v.clone() * v2.clone());
                    }
                    for (t2, v2) in self.coproduct(n - p, b) {
                        let (q2, a2, b2) = idx.split(n - p, *t2);
                        add(&mut rhs, [(p, a), (q2, a2), (n - p - q2, b2)], v.clone() * v2.clone());
                    }
                }
                co.record(same_sums(lhs, rhs), || format!("({})", nm(n, i)));
            }
        }

        let cu = r.axiom("counit");
        let one_one = idx.index(0, 0, self.counit, self.counit);
        cu.record(
            one_one.is_some_and(|t| self.coproduct(0, self.counit) == [(t, F::one())]),
            || "Δ(1) != 1⊗1".into(),
        );
        for n in c.degrees() {
            for i in 0..c.dim(n) {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (t, v) in self.coproduct(n, i) {
                    let (p, a, b) = idx.split(n, *t);
                    if self.is_counit_basis(p, a) {
                        left.push((b, v.clone()));
                    }
                    if self.is_counit_basis(n - p, b) {
                        right.push((a, v.clone()));
                    }
                }
                let e = vec![(i, F::one())];
                cu.record(left == e && right == e, || format!("({})", nm(n, i)));
            }
        }
        let d1 = c.d(1);
        cu.record(
            d1.columns().iter().all(|col| col.iter().all(|(r, _)| *r != self.counit)),
            || "ε d != 0".into(),
        );

        let cd = r.axiom("coderivation");
        let failure = chain_map_failure(c, c, c, &idx, |n, i| self.coproduct(n, i));
        cd.record(failure.is_none(), || failure.unwrap_or_default());
        r
    }
}

fn add<K: Ord, F: Field>(m: &mut BTreeMap<K, F>, k: K, v: F) {
    let e = m.entry(k).or_insert_with(F::zero);
    *e = e.clone() + v;
}

fn same_sums<K: Ord, F: Field>(mut a: BTreeMap<K, F>, mut b: BTreeMap<K, F>) -> bool {
    a.retain(|_, x| !x.is_zero());
    b.retain(|_, x| !x.is_zero());
    a == b
}

/// Checks that `f: Y -> C ⊗ Z` commutes with the differentials, term by
/// term and without building `C ⊗ Z`. Degrees at a truncated edge are
/// skipped.
fn chain_map_failure<'a, F: Field + 'a>(
    y: &ChainComplex<F>,
    c: &ChainComplex<F>,
    z: &ChainComplex<F>,
    idx: &TensorIndex,
    f: impl Fn(i64, usize) -> &'a [(usize, F)],
) -> Option<String> {
    let truncated = y.is_truncated_above() || c.is_truncated_above() || z.is_truncated_above();
    for n in y.degrees() {
        if y.is_edge(n) || (truncated && n >= y.hi()) {
            continue;
        }
        for i in 0..y.dim(n) {
            let mut lhs: BTreeMap<(i64, usize, usize), F> = BTreeMap::new();
            for (t, v) in f(n, i) {
                let (p, a, b) = idx.split(n, *t);
                for (a2, w) in c.d(p).column(a) {
                    add(&mut lhs, (p - 1, *a2, b), v.clone() * w.clone());
                }
                let sg = F::sign(p.rem_euclid(2) == 1);
                for (b2, w) in z.d(n - p).column(b) {
                    add(&mut lhs, (p, a, *b2), sg.clone() * v.clone() * w.clone());
                }
            }
            let mut rhs: BTreeMap<(i64, usize, usize), F> = BTreeMap::new();
            for (i2, v) in y.d(n).column(i) {
                for (t, w) in f(n - 1, *i2) {
                    let (p, a, b) = idx.split(n - 1, *t);
                    add(&mut rhs, (p, a, b), v.clone() * w.clone());
                }
            }
            if !same_sums(lhs, rhs) {
                return Some(format!("d f != f d on basis vector {i} of degree {n}"));
            }
        }
    }
    None
}

/// A left comodule over a [`DgCoalgebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgComodule<F> {
    name: String,
    coalgebra: Arc<DgCoalgebra<F>>,
    complex: ChainComplex<F>,
    /// `coaction[n]` maps `Y_n` into `(C ⊗ Y)_n`, numbered by [`TensorIndex`].
    coaction: BTreeMap<i64, Matrix<F>>,
    names: BasisNames,
}

impl<F: Field> DgComodule<F> {
    /// Checks shapes only; see [`DgComodule::validate`].
    pub fn new(
        name: impl Into<String>,
        coalgebra: Arc<DgCoalgebra<F>>,
        complex: ChainComplex<F>,
        coaction: BTreeMap<i64, Matrix<F>>,
        names: BasisNames,
    ) -> Result<Self> {
        let idx = pair_index(coalgebra.complex(), &complex, complex.hi());
        for (&n, m) in &coaction {
            if m.cols() != complex.dim(n) || m.rows() != idx.dim(n) {
                return Err(Error::shape(format!("coaction in degree {n} has the wrong shape")));
            }
        }
        Ok(DgComodule {
            name: name.into(),
            coalgebra,
            complex,
            coaction,
            names,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coalgebra(&self) -> &Arc<DgCoalgebra<F>> {
        &self.coalgebra
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    pub fn basis_name(&self, n: i64, i: usize) -> String {
        self.names.get(n, i)
    }

    /// Numbering of `C ⊗ Y` used by the coaction.
    pub fn pair_index(&self) -> TensorIndex {
        pair_index(self.coalgebra.complex(), &self.complex, self.complex.hi())
    }

    /// `ρ` of a basis vector.
    pub fn coaction(&self, n: i64, i: usize) -> &[(usize, F)] {
        self.coaction.get(&n).map_or(&[], |m| m.column(i))
    }

    /// Checks coassociativity and counitality of the coaction and that it is
    /// a chain map.
    pub fn validate(&self) -> ValidationReport {
        let (c, y) = (&*self.coalgebra, &self.complex);
        let idx = self.pair_index();
        let cidx = c.pair_index();
        let mut r = ValidationReport::new(&format!("comodule {}", self.name));
        let nm = |n: i64, i: usize| self.basis_name(n, i);

        let co = r.axiom("coaction-coassociativity");
        for n in y.degrees() {
            for i in 0..y.dim(n) {
                let mut lhs: BTreeMap<[(i64, usize); 3], F> = BTreeMap::new();
                let mut rhs: BTreeMap<[(i64, usize); 3], F> = BTreeMap::new();
                for (t, v) in self.coaction(n, i) {
                    let (p, a, b) = idx.split(n, *t);
                    for (t2, v2) in c.coproduct(p, a) {
                        let (p2, a2, b2) = cidx.split(p, *t2);
                        add(&mut lhs, [(p2, a2), (p - p2, b2), (n - p, b)], v.clone() * v2.clone());
                    }
                    for (t2, v2) in self.coaction(n - p, b) {
                        let (q2, a2, b2) = idx.split(n - p, *t2);
                        add(&mut rhs, [(p, a), (q2, a2), (n - p - q2, b2)], v.clone() * v2.clone());
                    }
                }
                co.record(same_sums(lhs, rhs), || format!("({})", nm(n, i)));
            }
        }

        let cu = r.axiom("coaction-counit");
        for n in y.degrees() {
            for i in 0..y.dim(n) {
                let mut left = Vec::new();
                for (t, v) in self.coaction(n, i) {
                    let (p, a, b) = idx.split(n, *t);
                    if c.is_counit_basis(p, a) {
                        left.push((b, v.clone()));
                    }
                }
                cu.record(left == vec![(i, F::one())], || format!("({})", nm(n, i)));
            }
        }

        let cd = r.axiom("coaction-chain-map");
        let failure = chain_map_failure(y, c.complex(), y, &idx, |n, i| self.coaction(n, i));
        cd.record(failure.is_none(), || failure.unwrap_or_default());
        r
    }
}

fn bar_coalgebra<F: Field>(a: &Arc<DgAlgebra<F>>, hi: i64, opts: BarOptions) -> Result<DgCoalgebra<F>> {
    let k = Arc::new(DgAlgebra::unit_algebra());
    let left = DgBimodule::trivial(k.clone(), a.clone());
    let right = DgBimodule::trivial(a.clone(), k);
    let bar = BarComplex::new(&left, a, &right, hi, opts)?;
    let c = bar.complex().clone();
    let idx = pair_index(&c, &c, c.hi());
    let mut coproduct = BTreeMap::new();
    let mut names = BTreeMap::new();
    let mut words = BTreeMap::new();
    for n in c.degrees() {
        let mut cols = Vec::with_capacity(c.dim(n));
        let mut nm = Vec::with_capacity(c.dim(n));
        let mut ws = Vec::with_capacity(c.dim(n));
        for i in 0..c.dim(n) {
            let (_, _, word, _) = bar.element(n, i);
            let mut col: SparseVec<F> = Vec::with_capacity(word.len() + 1);
            for cut in 0..=word.len() {
                let (w1, w2) = word.split_at(cut);
                let d1 = bar.words().sdeg(w1) as i64;
                let i1 = bar.index(d1, 0, 0, w1, 0).expect("prefix in window");
                let i2 = bar.index(n - d1, 0, 0, w2, 0).expect("suffix in window");
                col.push((idx.index(n, d1, i1, i2).expect("pair in window"), F::one()));
            }
            cols.push(crate::linalg::normalize(col));
            let letters: Letters = word.iter().map(|&l| bar.words().letter(l)).collect();
            nm.push(word_name(a, &letters));
            ws.push(letters);
        }
        coproduct.insert(n, Matrix::from_columns(idx.dim(n), cols));
        names.insert(n, nm);
        words.insert(n, ws);
    }
    let mut out = DgCoalgebra::new(
        format!("B({})", a.name()),
        c,
        0,
        coproduct,
        BasisNames::new(names),
    )?;
    out.words = Some(words);
    Ok(out)
}

pub(crate) fn word_name<F: Field>(a: &DgAlgebra<F>, letters: &[(i64, usize)]) -> String {
    let parts: Vec<String> = letters.iter().map(|&(n, i)| a.basis_name(n, i)).collect();
    format!("[{}]", parts.join("|"))
}

/// The Koszul dual coalgebra `𝟙 ⊗_A 𝟙`: the reduced bar construction with
/// deconcatenation coproduct, through degree `window.hi + 1`.
pub fn koszul_dual_algebra<F: Field>(a: &Arc<DgAlgebra<F>>, window: Window) -> Result<DgCoalgebra<F>> {
    bar_coalgebra(a, window.hi, BarOptions::default())
}

/// The subcoalgebra of words with at most `weight` letters. It is a finite
/// subcomplex because the differential never raises weight.
pub fn koszul_dual_algebra_to_weight<F: Field>(a: &Arc<DgAlgebra<F>>, weight: usize) -> Result<DgCoalgebra<F>> {
    bar_coalgebra(
        a,
        i64::MAX / 4,
        BarOptions {
            normalized: true,
            max_weight: Some(weight),
        },
    )
}

fn bar_comodule<F: Field>(
    a: &Arc<DgAlgebra<F>>,
    x: &DgLeftModule<F>,
    hi: i64,
    opts: BarOptions,
) -> Result<DgComodule<F>> {
    let k = Arc::new(DgAlgebra::unit_algebra());
    let left = DgBimodule::trivial(k, a.clone());
    let bar = BarComplex::new(&left, a, x.bimodule(), hi, opts)?;
    let y = bar.complex().clone();
    let c_hi = y.hi() - x.complex().lo() - 1;
    let c = Arc::new(if opts.max_weight.is_some() {
        bar_coalgebra(a, i64::MAX / 4, opts)?
    } else {
        bar_coalgebra(a, c_hi, opts)?
    });
    let cc = c.complex();
    let idx = pair_index(cc, &y, y.hi());
    let mut position: HashMap<&[(i64, usize)], usize> = HashMap::new();
    for n in cc.degrees() {
        for i in 0..cc.dim(n) {
            position.insert(c.word(n, i).expect("bar coalgebra"), i);
        }
    }
    let mut coaction = BTreeMap::new();
    let mut names = BTreeMap::new();
    for n in y.degrees() {
        let mut cols = Vec::with_capacity(y.dim(n));
        let mut nm = Vec::with_capacity(y.dim(n));
        for i in 0..y.dim(n) {
            let (_, _, word, j) = bar.element(n, i);
            let mut col = Vec::with_capacity(word.len() + 1);
            for cut in 0..=word.len() {
                let (w1, w2) = word.split_at(cut);
                let d1 = bar.words().sdeg(w1) as i64;
                let letters: Letters = w1.iter().map(|&l| bar.words().letter(l)).collect();
                let i1 = position[letters.as_slice()];
                let i2 = bar.index(n - d1, 0, 0, w2, j).expect("suffix in window");
                col.push((idx.index(n, d1, i1, i2).expect("pair in window"), F::one()));
            }
            cols.push(crate::linalg::normalize(col));
            nm.push(bar.element_name(n, i));
        }
        coaction.insert(n, Matrix::from_columns(idx.dim(n), cols));
        names.insert(n, nm);
    }
    DgComodule::new(
        format!("B({};{})", a.name(), x.name()),
        c,
        y,
        coaction,
        BasisNames::new(names),
    )
}

/// The Koszul dual comodule `𝟙 ⊗_A X` with the coaction splitting off left
/// bar letters, through degree `window.hi + 1`.
pub fn koszul_dual_module<F: Field>(
    a: &Arc<DgAlgebra<F>>,
    x: &DgLeftModule<F>,
    window: Window,
) -> Result<DgComodule<F>> {
    bar_comodule(a, x, window.hi, BarOptions::default())
}

/// The subcomodule of words with at most `weight` letters.
pub fn koszul_dual_module_to_weight<F: Field>(
    a: &Arc<DgAlgebra<F>>,
    x: &DgLeftModule<F>,
    weight: usize,
) -> Result<DgComodule<F>> {
    bar_comodule(
        a,
        x,
        i64::MAX / 4,
        BarOptions {
            normalized: true,
            max_weight: Some(weight),
        },
    )
}
