//! Augmented dg algebras, modules and bimodules given by structure constants
//! on a chosen basis, with exact validation of every axiom.
//!
//! Bases are adapted to the augmentation: the unit is a basis vector of
//! degree 0 and the augmentation is the coordinate of the unit, so the
//! remaining basis vectors span the augmentation ideal.

mod maps;
mod present;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::chains::{tensor, ChainComplex, ChainMap, TensorIndex};
use crate::error::{Error, Result, BAR_REGIME};
use crate::field::Field;
use crate::linalg::{Accumulator, Matrix, SparseVec};

pub use maps::{bimodule_maps, is_bimodule_map};
pub(crate) use maps::map_equations;
pub use present::{presented_complex, AlgebraPresentation, BasisElement, ModulePresentation, Term};

/// A degree-0 bilinear map `X ⊗ Y -> Z` by blocks: the block `(p, q)` sends
/// `x_i ⊗ y_j` (column `i * dim Y_q + j`) into `Z_{p+q}`. Missing blocks are
/// zero; on truncated targets blocks beyond the window are left out.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bilinear<F> {
    blocks: BTreeMap<(i64, i64), (usize, Matrix<F>)>,
}

impl<F: Field> Bilinear<F> {
    pub fn new() -> Self {
        Bilinear {
            blocks: BTreeMap::new(),
        }
    }

    /// Sets the block `(p, q)`; `right_dim` is `dim Y_q`.
    pub fn insert(&mut self, p: i64, q: i64, right_dim: usize, m: Matrix<F>) {
        self.blocks.insert((p, q), (right_dim, m));
    }

    pub fn block(&self, p: i64, q: i64) -> Option<&Matrix<F>> {
        self.blocks.get(&(p, q)).map(|(_, m)| m)
    }

    pub fn blocks(&self) -> impl Iterator<Item = ((i64, i64), usize, &Matrix<F>)> {
        self.blocks.iter().map(|(&k, (d, m))| (k, *d, m))
    }

    /// The image of `x_i ⊗ y_j` with `|x_i| = p`, `|y_j| = q`.
    pub fn basis(&self, p: i64, i: usize, q: i64, j: usize) -> &[(usize, F)] {
        match self.blocks.get(&(p, q)) {
            Some((dy, m)) => m.column(i * dy + j),
            None => &[],
        }
    }

    /// The image of `u ⊗ v` with `u` homogeneous of degree `p`, `v` of degree `q`.
    pub fn apply(&self, p: i64, u: &[(usize, F)], q: i64, v: &[(usize, F)]) -> SparseVec<F> {
        let Some((dy, m)) = self.blocks.get(&(p, q)) else {
            return Vec::new();
        };
        let mut acc = Accumulator::new();
        for (i, a) in u {
            for (j, b) in v {
                acc.add_vec(&(a.clone() * b.clone()), m.column(i * dy + j));
            }
        }
        acc.finish()
    }

    /// Builds the blocks from a function on basis pairs, for all `(p, q)`
    /// with `p + q <= hi`.
    pub fn from_fn(
        x: &ChainComplex<F>,
        y: &ChainComplex<F>,
        z: &ChainComplex<F>,
        hi: i64,
        mut f: impl FnMut(i64, usize, i64, usize) -> SparseVec<F>,
    ) -> Self {
        let mut out = Bilinear::new();
        for p in x.degrees() {
            for q in y.degrees() {
                let (dx, dy) = (x.dim(p), y.dim(q));
                if p + q > hi || dx * dy == 0 {
                    continue;
                }
                let mut cols = Vec::with_capacity(dx * dy);
                for i in 0..dx {
                    for j in 0..dy {
                        cols.push(f(p, i, q, j));
                    }
                }
                out.insert(p, q, dy, Matrix::from_columns(z.dim(p + q), cols));
            }
        }
        out
    }

    fn check_shapes(
        &self,
        what: &str,
        x: &ChainComplex<F>,
        y: &ChainComplex<F>,
        z: &ChainComplex<F>,
    ) -> Result<()> {
        for (&(p, q), (dy, m)) in &self.blocks {
            if *dy != y.dim(q) || m.cols() != x.dim(p) * y.dim(q) || m.rows() != z.dim(p + q) {
                return Err(Error::shape(format!("{what} block ({p}, {q}) has the wrong shape")));
            }
        }
        Ok(())
    }
}

/// Display names for basis vectors, by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BasisNames(BTreeMap<i64, Vec<String>>);

impl BasisNames {
    pub fn new(names: BTreeMap<i64, Vec<String>>) -> Self {
        BasisNames(names)
    }

    pub fn get(&self, n: i64, i: usize) -> String {
        self.0
            .get(&n)
            .and_then(|v| v.get(i))
            .cloned()
            .unwrap_or_else(|| format!("e{n}.{i}"))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, n: i64) -> &[String] {
        self.0.get(&n).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Outcome of one axiom over all basis tuples it quantifies over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub cases: u64,
    pub violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub(crate) fn new(subject: &str) -> Self {
        ValidationReport {
            subject: subject.to_string(),
            checks: Vec::new(),
        }
    }

    pub(crate) fn axiom(&mut self, axiom: &str) -> &mut AxiomCheck {
        self.checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            cases: 0,
            violation: None,
        });
        self.checks.last_mut().expect("just pushed")
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violation.is_none())
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.violation.is_some())
    }

    pub fn into_result(self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::validation(
                c.axiom.clone(),
                format!("{}: {}", self.subject, c.violation.clone().unwrap_or_default()),
            )),
        }
    }
}

impl AxiomCheck {
    pub(crate) fn record(&mut self, ok: bool, tuple: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.violation.is_none() {
            self.violation = Some(tuple());
        }
    }
}

fn equal<F: Field>(a: &SparseVec<F>, b: &SparseVec<F>) -> bool {
    a == b
}

/// An augmented dg algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgAlgebra<F> {
    name: String,
    complex: ChainComplex<F>,
    unit: usize,
    product: Bilinear<F>,
    names: BasisNames,
}

impl<F: Field> DgAlgebra<F> {
    /// Builds and validates an algebra; `unit` indexes the degree-0 basis.
    pub fn new(
        name: impl Into<String>,
        complex: ChainComplex<F>,
        unit: usize,
        product: Bilinear<F>,
        names: BasisNames,
    ) -> Result<Self> {
        let a = Self::from_parts(name, complex, unit, product, names)?;
        a.validate().into_result()?;
        Ok(a)
    }

    /// Like [`DgAlgebra::new`] but only checks shapes.
    pub fn from_parts(
        name: impl Into<String>,
        complex: ChainComplex<F>,
        unit: usize,
        product: Bilinear<F>,
        names: BasisNames,
    ) -> Result<Self> {
        if unit >= complex.dim(0) {
            return Err(Error::validation("unit", "unit is not a degree-0 basis vector"));
        }
        product.check_shapes("product", &complex, &complex, &complex)?;
        Ok(DgAlgebra {
            name: name.into(),
            complex,
            unit,
            product,
            names,
        })
    }

    /// The ground field `𝟙`.
    pub fn unit_algebra() -> Self {
        let mut product = Bilinear::new();
        product.insert(0, 0, 1, Matrix::identity(1));
        DgAlgebra {
            name: "unit".into(),
            complex: ChainComplex::unit(),
            unit: 0,
            product,
            names: BasisNames::new(BTreeMap::from([(0, vec!["1".to_string()])])),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn product(&self) -> &Bilinear<F> {
        &self.product
    }

    pub fn names(&self) -> &BasisNames {
        &self.names
    }

    pub fn basis_name(&self, n: i64, i: usize) -> String {
        self.names.get(n, i)
    }

    pub fn is_unit_basis(&self, n: i64, i: usize) -> bool {
        n == 0 && i == self.unit
    }

    /// `ε` on a homogeneous element of degree `n`.
    pub fn augmentation(&self, n: i64, v: &[(usize, F)]) -> F {
        if n != 0 {
            return F::zero();
        }
        v.iter()
            .find(|(i, _)| *i == self.unit)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    /// Degree-wise dimensions of the augmentation ideal.
    pub fn ideal_dim(&self, n: i64) -> usize {
        self.complex.dim(n) - usize::from(n == 0)
    }

    /// Whether the augmentation ideal is the zero space.
    pub fn is_trivial(&self) -> bool {
        self.complex.degrees().all(|n| self.ideal_dim(n) == 0) && !self.complex.is_truncated_above()
    }

    /// Rejects algebras whose augmentation ideal has negative degrees.
    pub fn check_bar_regime(&self) -> Result<()> {
        match self.complex.degrees().find(|&n| n < 0 && self.ideal_dim(n) > 0) {
            None => Ok(()),
            Some(n) => Err(Error::Regime {
                regime: BAR_REGIME,
                detail: format!("{} has augmentation ideal in degree {n}", self.name),
            }),
        }
    }

    fn top(&self) -> i64 {
        self.complex.hi()
    }

    /// Checks unitality, associativity, the Leibniz rule and the augmentation
    /// on all basis tuples inside the window.
    pub fn validate(&self) -> ValidationReport {
        let c = &self.complex;
        let mut r = ValidationReport::new(&format!("algebra {}", self.name));
        let nm = |n: i64, i: usize| self.basis_name(n, i);
        let e = vec![(self.unit, F::one())];

        let unit = r.axiom("unit");
        unit.record(c.d(0).column(self.unit).is_empty(), || "d(1) != 0".into());
        for n in c.degrees() {
            for i in 0..c.dim(n) {
                let x = vec![(i, F::one())];
                let l = self.product.apply(0, &e, n, &x);
                let rt = self.product.apply(n, &x, 0, &e);
                unit.record(equal(&l, &x) && equal(&rt, &x), || format!("({})", nm(n, i)));
            }
        }

        let assoc = r.axiom("associativity");
        for p in c.degrees() {
            for q in c.degrees() {
                for s in c.degrees() {
                    if p + q + s > self.top() {
                        continue;
                    }
                    for i in 0..c.dim(p) {
                        for j in 0..c.dim(q) {
                            let xy = self.product.basis(p, i, q, j).to_vec();
                            for k in 0..c.dim(s) {
                                let z = [(k, F::one())];
                                let x = [(i, F::one())];
                                let lhs = self.product.apply(p + q, &xy, s, &z);
                                let yz = self.product.basis(q, j, s, k);
                                let rhs = self.product.apply(p, &x, q + s, yz);
                                assoc.record(equal(&lhs, &rhs), || {
                                    format!("({}, {}, {})", nm(p, i), nm(q, j), nm(s, k))
                                });
                            }
                        }
                    }
                }
            }
        }

        let leibniz = r.axiom("leibniz");
        for p in c.degrees() {
            for q in c.degrees() {
                if p + q > self.top() {
                    continue;
                }
                let sign = F::sign(p.rem_euclid(2) == 1);
                for i in 0..c.dim(p) {
                    for j in 0..c.dim(q) {
                        let x = [(i, F::one())];
                        let y = [(j, F::one())];
                        let lhs = c.d(p + q).apply(self.product.basis(p, i, q, j));
                        let a = self.product.apply(p - 1, c.d(p).column(i), q, &y);
                        let b = self.product.apply(p, &x, q - 1, c.d(q).column(j));
                        let rhs = crate::linalg::axpy(&a, &sign, &b);
                        leibniz.record(equal(&lhs, &rhs), || format!("({}, {})", nm(p, i), nm(q, j)));
                    }
                }
            }
        }

        let aug = r.axiom("augmentation");
        for i in 0..c.dim(1) {
            let d = c.d(1);
            aug.record(self.augmentation(0, d.column(i)).is_zero(), || {
                format!("ε(d {}) != 0", nm(1, i))
            });
        }
        for i in 0..c.dim(0) {
            for j in 0..c.dim(0) {
                let xy = self.product.basis(0, i, 0, j);
                let lhs = self.augmentation(0, xy);
                let rhs = F::from_i64(i64::from(i == self.unit && j == self.unit));
                aug.record(lhs == rhs, || format!("ε({} {})", nm(0, i), nm(0, j)));
            }
        }
        r
    }
}

/// Which of the two ingestion namespaces a module lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sector {
    Algebra,
    Module,
}

/// An `A`-`B`-bimodule. Left modules have `B = 𝟙`, right modules `A = 𝟙`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgBimodule<F> {
    name: String,
    left: Arc<DgAlgebra<F>>,
    right: Arc<DgAlgebra<F>>,
    complex: ChainComplex<F>,
    left_action: Bilinear<F>,
    right_action: Bilinear<F>,
    names: BasisNames,
    sector: Sector,
}

pub(crate) fn same<F: Field>(a: &Arc<DgAlgebra<F>>, b: &Arc<DgAlgebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<F: Field> DgBimodule<F> {
    /// Builds and validates a bimodule.
    pub fn new(
        name: impl Into<String>,
        left: Arc<DgAlgebra<F>>,
        right: Arc<DgAlgebra<F>>,
        complex: ChainComplex<F>,
        left_action: Bilinear<F>,
        right_action: Bilinear<F>,
        names: BasisNames,
    ) -> Result<Self> {
        let m = Self::from_parts(name, left, right, complex, left_action, right_action, names)?;
        m.validate().into_result()?;
        Ok(m)
    }

    /// Like [`DgBimodule::new`] but only checks shapes.
    pub fn from_parts(
        name: impl Into<String>,
        left: Arc<DgAlgebra<F>>,
        right: Arc<DgAlgebra<F>>,
        complex: ChainComplex<F>,
        left_action: Bilinear<F>,
        right_action: Bilinear<F>,
        names: BasisNames,
    ) -> Result<Self> {
        left_action.check_shapes("left action", left.complex(), &complex, &complex)?;
        right_action.check_shapes("right action", &complex, right.complex(), &complex)?;
        Ok(DgBimodule {
            name: name.into(),
            left,
            right,
            complex,
            left_action,
            right_action,
            names,
            sector: Sector::Algebra,
        })
    }

    /// An algebra as a bimodule over itself.
    pub fn regular(a: Arc<DgAlgebra<F>>) -> Self {
        DgBimodule {
            name: a.name().to_string(),
            complex: a.complex().clone(),
            left_action: a.product().clone(),
            right_action: a.product().clone(),
            names: a.names().clone(),
            left: a.clone(),
            right: a,
            sector: Sector::Algebra,
        }
    }

    /// `𝟙` as an `A`-`B`-bimodule through both augmentations.
    pub fn trivial(left: Arc<DgAlgebra<F>>, right: Arc<DgAlgebra<F>>) -> Self {
        let k = ChainComplex::unit();
        let la = Bilinear::from_fn(left.complex(), &k, &k, 0, |p, i, _, _| {
            if left.is_unit_basis(p, i) {
                vec![(0, F::one())]
            } else {
                Vec::new()
            }
        });
        let ra = Bilinear::from_fn(&k, right.complex(), &k, 0, |_, _, q, j| {
            if right.is_unit_basis(q, j) {
                vec![(0, F::one())]
            } else {
                Vec::new()
            }
        });
        DgBimodule {
            name: "k".into(),
            left,
            right,
            complex: k,
            left_action: la,
            right_action: ra,
            names: BasisNames::new(BTreeMap::from([(0, vec!["1".to_string()])])),
            sector: Sector::Algebra,
        }
    }

    /// A complex as a `𝟙`-`𝟙`-bimodule.
    pub fn from_complex(x: ChainComplex<F>) -> Self {
        let k = Arc::new(DgAlgebra::unit_algebra());
        let la = Bilinear::from_fn(&ChainComplex::unit(), &x, &x, x.hi(), |_, _, _, j| {
            vec![(j, F::one())]
        });
        let ra = Bilinear::from_fn(&x, &ChainComplex::unit(), &x, x.hi(), |_, i, _, _| {
            vec![(i, F::one())]
        });
        DgBimodule {
            name: "complex".into(),
            left: k.clone(),
            right: k,
            complex: x,
            left_action: la,
            right_action: ra,
            names: BasisNames::default(),
            sector: Sector::Algebra,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn with_sector(mut self, sector: Sector) -> Self {
        self.sector = sector;
        self
    }

    pub fn with_names(mut self, names: BasisNames) -> Self {
        self.names = names;
        self
    }

    pub fn left(&self) -> &Arc<DgAlgebra<F>> {
        &self.left
    }

    pub fn right(&self) -> &Arc<DgAlgebra<F>> {
        &self.right
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    pub fn left_action(&self) -> &Bilinear<F> {
        &self.left_action
    }

    pub fn right_action(&self) -> &Bilinear<F> {
        &self.right_action
    }

    pub fn names(&self) -> &BasisNames {
        &self.names
    }

    pub fn basis_name(&self, n: i64, i: usize) -> String {
        self.names.get(n, i)
    }

    /// Checks both action axioms, their commutation and the Leibniz rules.
    pub fn validate(&self) -> ValidationReport {
        let (a, b, m) = (&*self.left, &*self.right, &self.complex);
        let top = m.hi();
        let mut r = ValidationReport::new(&format!("bimodule {}", self.name));
        let nm = |n: i64, i: usize| self.basis_name(n, i);
        let one = |i: usize| [(i, F::one())];

        let unit = r.axiom("action-unit");
        for n in m.degrees() {
            for i in 0..m.dim(n) {
                let x = one(i).to_vec();
                let l = self.left_action.apply(0, &one(a.unit()), n, &x);
                let rt = self.right_action.apply(n, &x, 0, &one(b.unit()));
                unit.record(equal(&l, &x) && equal(&rt, &x), || format!("({})", nm(n, i)));
            }
        }

        let la = r.axiom("left-associativity");
        for p in a.complex().degrees() {
            for q in a.complex().degrees() {
                for s in m.degrees() {
                    if p + q + s > top {
                        continue;
                    }
                    for i in 0..a.complex().dim(p) {
                        for j in 0..a.complex().dim(q) {
                            let xy = a.product().basis(p, i, q, j);
                            for k in 0..m.dim(s) {
                                let lhs = self.left_action.apply(p + q, xy, s, &one(k));
                                let yz = self.left_action.basis(q, j, s, k);
                                let rhs = self.left_action.apply(p, &one(i), q + s, yz);
                                la.record(equal(&lhs, &rhs), || {
                                    format!("({}, {}, {})", a.basis_name(p, i), a.basis_name(q, j), nm(s, k))
                                });
                            }
                        }
                    }
                }
            }
        }

        let ra = r.axiom("right-associativity");
        for s in m.degrees() {
            for p in b.complex().degrees() {
                for q in b.complex().degrees() {
                    if p + q + s > top {
                        continue;
                    }
                    for k in 0..m.dim(s) {
                        for i in 0..b.complex().dim(p) {
                            let mx = self.right_action.basis(s, k, p, i);
                            for j in 0..b.complex().dim(q) {
                                let lhs = self.right_action.apply(s + p, mx, q, &one(j));
                                let xy = b.product().basis(p, i, q, j);
                                let rhs = self.right_action.apply(s, &one(k), p + q, xy);
                                ra.record(equal(&lhs, &rhs), || {
                                    format!("({}, {}, {})", nm(s, k), b.basis_name(p, i), b.basis_name(q, j))
                                });
                            }
                        }
                    }
                }
            }
        }

        let cm = r.axiom("commutation");
        for p in a.complex().degrees() {
            for s in m.degrees() {
                for q in b.complex().degrees() {
                    if p + q + s > top {
                        continue;
                    }
                    for i in 0..a.complex().dim(p) {
                        for k in 0..m.dim(s) {
                            let am = self.left_action.basis(p, i, s, k);
                            for j in 0..b.complex().dim(q) {
                                let lhs = self.right_action.apply(p + s, am, q, &one(j));
                                let mb = self.right_action.basis(s, k, q, j);
                                let rhs = self.left_action.apply(p, &one(i), s + q, mb);
                                cm.record(equal(&lhs, &rhs), || {
                                    format!("({}, {}, {})", a.basis_name(p, i), nm(s, k), b.basis_name(q, j))
                                });
                            }
                        }
                    }
                }
            }
        }

        let ll = r.axiom("left-leibniz");
        for p in a.complex().degrees() {
            for s in m.degrees() {
                if p + s > top {
                    continue;
                }
                let sign = F::sign(p.rem_euclid(2) == 1);
                for i in 0..a.complex().dim(p) {
                    for k in 0..m.dim(s) {
                        let lhs = m.d(p + s).apply(self.left_action.basis(p, i, s, k));
                        let x = self.left_action.apply(p - 1, a.complex().d(p).column(i), s, &one(k));
                        let y = self.left_action.apply(p, &one(i), s - 1, m.d(s).column(k));
                        let rhs = crate::linalg::axpy(&x, &sign, &y);
                        ll.record(equal(&lhs, &rhs), || format!("({}, {})", a.basis_name(p, i), nm(s, k)));
                    }
                }
            }
        }

        let rl = r.axiom("right-leibniz");
        for s in m.degrees() {
            for q in b.complex().degrees() {
                if s + q > top {
                    continue;
                }
                let sign = F::sign(s.rem_euclid(2) == 1);
                for k in 0..m.dim(s) {
                    for j in 0..b.complex().dim(q) {
                        let lhs = m.d(s + q).apply(self.right_action.basis(s, k, q, j));
                        let x = self.right_action.apply(s - 1, m.d(s).column(k), q, &one(j));
                        let y = self.right_action.apply(s, &one(k), q - 1, b.complex().d(q).column(j));
                        let rhs = crate::linalg::axpy(&x, &sign, &y);
                        rl.record(equal(&lhs, &rhs), || format!("({}, {})", nm(s, k), b.basis_name(q, j)));
                    }
                }
            }
        }
        r
    }
}

/// A left module, stored as a bimodule whose right algebra is `𝟙`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgLeftModule<F>(DgBimodule<F>);

impl<F: Field> DgLeftModule<F> {
    /// Builds and validates a left module.
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<DgAlgebra<F>>,
        complex: ChainComplex<F>,
        action: Bilinear<F>,
        names: BasisNames,
    ) -> Result<Self> {
        let m = Self::from_parts(name, algebra, complex, action, names)?;
        m.validate().into_result()?;
        Ok(m)
    }

    pub fn from_parts(
        name: impl Into<String>,
        algebra: Arc<DgAlgebra<F>>,
        complex: ChainComplex<F>,
        action: Bilinear<F>,
        names: BasisNames,
    ) -> Result<Self> {
        let k = Arc::new(DgAlgebra::unit_algebra());
        let ra = Bilinear::from_fn(&complex, k.complex(), &complex, complex.hi(), |_, i, _, _| {
            vec![(i, F::one())]
        });
        Ok(DgLeftModule(DgBimodule::from_parts(
            name, algebra, k, complex, action, ra, names,
        )?))
    }

    /// Forgets the right `𝟙`-action of a bimodule.
    pub fn from_bimodule(m: DgBimodule<F>) -> Result<Self> {
        if !m.right.is_trivial() {
            return Err(Error::shape(format!(
                "{} has a nontrivial right algebra",
                m.name
            )));
        }
        Ok(DgLeftModule(m))
    }

    /// The algebra acting on itself from the left.
    pub fn regular(a: Arc<DgAlgebra<F>>) -> Self {
        let complex = a.complex().clone();
        let action = a.product().clone();
        Self::from_parts(a.name().to_string(), a.clone(), complex, action, a.names().clone())
            .expect("regular module has consistent shapes")
    }

    /// `𝟙` with `A` acting through the augmentation.
    pub fn trivial(a: Arc<DgAlgebra<F>>) -> Self {
        DgLeftModule(DgBimodule::trivial(a, Arc::new(DgAlgebra::unit_algebra())))
    }

    /// A complex with `A` acting through the augmentation.
    pub fn with_trivial_action(a: Arc<DgAlgebra<F>>, x: ChainComplex<F>) -> Self {
        let action = Bilinear::from_fn(a.complex(), &x, &x, x.hi(), |p, i, _, j| {
            if a.is_unit_basis(p, i) {
                vec![(j, F::one())]
            } else {
                Vec::new()
            }
        });
        Self::from_parts("trivial", a, x, action, BasisNames::default())
            .expect("trivial action has consistent shapes")
    }

    pub fn bimodule(&self) -> &DgBimodule<F> {
        &self.0
    }

    pub fn into_bimodule(self) -> DgBimodule<F> {
        self.0
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra<F>> {
        &self.0.left
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        &self.0.complex
    }

    pub fn action(&self) -> &Bilinear<F> {
        &self.0.left_action
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn sector(&self) -> Sector {
        self.0.sector
    }

    pub fn with_sector(self, sector: Sector) -> Self {
        DgLeftModule(self.0.with_sector(sector))
    }

    pub fn with_name(self, name: impl Into<String>) -> Self {
        DgLeftModule(self.0.with_name(name))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = self.0.validate();
        r.subject = format!("left module {}", self.0.name);
        r.checks.retain(|c| !c.axiom.starts_with("right") && c.axiom != "commutation");
        r
    }
}

/// A chain `A₀, M⁰¹, A₁, …, M^{n-1,n}, A_n` of bimodules with matching sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multimodule<F> {
    algebras: Vec<Arc<DgAlgebra<F>>>,
    bimodules: Vec<DgBimodule<F>>,
}

impl<F: Field> Multimodule<F> {
    pub fn new(algebras: Vec<Arc<DgAlgebra<F>>>, bimodules: Vec<DgBimodule<F>>) -> Result<Self> {
        if algebras.len() != bimodules.len() + 1 {
            return Err(Error::shape(format!(
                "{} algebras for {} bimodules",
                algebras.len(),
                bimodules.len()
            )));
        }
        for (i, m) in bimodules.iter().enumerate() {
            if !same(m.left(), &algebras[i]) || !same(m.right(), &algebras[i + 1]) {
                return Err(Error::validation(
                    "side-matching",
                    format!("bimodule {i} ({}) is not an A{i}-A{}-bimodule", m.name(), i + 1),
                ));
            }
        }
        Ok(Multimodule {
            algebras,
            bimodules,
        })
    }

    /// The length `n`.
    pub fn len(&self) -> usize {
        self.bimodules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bimodules.is_empty()
    }

    pub fn algebras(&self) -> &[Arc<DgAlgebra<F>>] {
        &self.algebras
    }

    pub fn bimodules(&self) -> &[DgBimodule<F>] {
        &self.bimodules
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new("multimodule");
        for a in &self.algebras {
            r.checks.extend(a.validate().checks);
        }
        for m in &self.bimodules {
            r.checks.extend(m.validate().checks);
        }
        let side = r.axiom("side-matching");
        for (i, m) in self.bimodules.iter().enumerate() {
            side.record(
                same(m.left(), &self.algebras[i]) && same(m.right(), &self.algebras[i + 1]),
                || format!("bimodule {i}"),
            );
        }
        r
    }
}

/// A map of augmented dg algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap<F> {
    source: Arc<DgAlgebra<F>>,
    target: Arc<DgAlgebra<F>>,
    map: ChainMap<F>,
}

impl<F: Field> AlgebraMap<F> {
    /// Checks that `map` is a chain map preserving unit, product and augmentation.
    pub fn new(source: Arc<DgAlgebra<F>>, target: Arc<DgAlgebra<F>>, map: ChainMap<F>) -> Result<Self> {
        if map.source() != source.complex() || map.target() != target.complex() {
            return Err(Error::shape("algebra map between the wrong complexes"));
        }
        let f = AlgebraMap {
            source,
            target,
            map,
        };
        f.validate().into_result()?;
        Ok(f)
    }

    pub fn identity(a: Arc<DgAlgebra<F>>) -> Self {
        let map = ChainMap::identity(a.complex());
        AlgebraMap {
            source: a.clone(),
            target: a,
            map,
        }
    }

    /// The unit `𝟙 -> A`.
    pub fn unit(a: Arc<DgAlgebra<F>>) -> Self {
        let k = Arc::new(DgAlgebra::unit_algebra());
        let comps = BTreeMap::from([(0, Matrix::from_columns(a.complex().dim(0), vec![vec![(a.unit(), F::one())]]))]);
        let map = ChainMap::new(k.complex().clone(), a.complex().clone(), comps)
            .expect("the unit is a cycle");
        AlgebraMap {
            source: k,
            target: a,
            map,
        }
    }

    /// The augmentation `A -> 𝟙`.
    pub fn augmentation(a: Arc<DgAlgebra<F>>) -> Self {
        let k = Arc::new(DgAlgebra::unit_algebra());
        let cols = (0..a.complex().dim(0))
            .map(|i| if i == a.unit() { vec![(0, F::one())] } else { Vec::new() })
            .collect();
        let comps = BTreeMap::from([(0, Matrix::from_columns(1, cols))]);
        let map = ChainMap::new(a.complex().clone(), k.complex().clone(), comps)
            .expect("the augmentation is a chain map");
        AlgebraMap {
            source: a,
            target: k,
            map,
        }
    }

    pub fn source(&self) -> &Arc<DgAlgebra<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DgAlgebra<F>> {
        &self.target
    }

    pub fn map(&self) -> &ChainMap<F> {
        &self.map
    }

    pub fn validate(&self) -> ValidationReport {
        let (a, b) = (&*self.source, &*self.target);
        let mut r = ValidationReport::new("algebra map");
        let u = r.axiom("map-unit");
        let fu = self.map.component(0).apply(&[(a.unit(), F::one())]);
        u.record(fu == vec![(b.unit(), F::one())], || "f(1) != 1".into());
        let mul = r.axiom("map-product");
        let c = a.complex();
        for p in c.degrees() {
            for q in c.degrees() {
                if p + q > c.hi().min(b.complex().hi()) {
                    continue;
                }
                let (fp, fq, fpq) = (self.map.component(p), self.map.component(q), self.map.component(p + q));
                for i in 0..c.dim(p) {
                    for j in 0..c.dim(q) {
                        let lhs = fpq.apply(a.product().basis(p, i, q, j));
                        let rhs = b.product().apply(p, fp.column(i), q, fq.column(j));
                        mul.record(lhs == rhs, || format!("({}, {})", a.basis_name(p, i), a.basis_name(q, j)));
                    }
                }
            }
        }
        let aug = r.axiom("map-augmentation");
        let f0 = self.map.component(0);
        for i in 0..c.dim(0) {
            let lhs = b.augmentation(0, f0.column(i));
            let rhs = a.augmentation(0, &[(i, F::one())]);
            aug.record(lhs == rhs, || format!("ε(f({}))", a.basis_name(0, i)));
        }
        r
    }
}

/// The free bimodule `A ⊗ E ⊗ B` with the regular actions on the outer factors.
pub fn free_bimodule<F: Field>(
    a: Arc<DgAlgebra<F>>,
    e: &ChainComplex<F>,
    b: Arc<DgAlgebra<F>>,
) -> DgBimodule<F> {
    let (ca, cb) = (a.complex(), b.complex());
    let ae = tensor(ca, e, ca.lo() + e.lo(), ca.hi() + e.hi());
    let t = tensor(&ae, cb, ae.lo() + cb.lo(), ae.hi() + cb.hi());
    let i_ae = TensorIndex::new(ca, e, ae.lo(), ae.hi());
    let i_t = TensorIndex::new(&ae, cb, t.lo(), t.hi());
    let top = t.hi();
    let left = Bilinear::from_fn(ca, &t, &t, top, |p, i, n, x| {
        let (m, u, k) = i_t.split(n, x);
        let (r, a2, e2) = i_ae.split(m, u);
        a.product()
            .basis(p, i, r, a2)
            .iter()
            .filter_map(|(a3, c)| {
                let u3 = i_ae.index(m + p, p + r, *a3, e2)?;
                Some((i_t.index(n + p, m + p, u3, k)?, c.clone()))
            })
            .collect()
    });
    let right = Bilinear::from_fn(&t, cb, &t, top, |n, x, q, j| {
        let (m, u, k) = i_t.split(n, x);
        b.product()
            .basis(n - m, k, q, j)
            .iter()
            .filter_map(|(k3, c)| Some((i_t.index(n + q, m, u, *k3)?, c.clone())))
            .collect()
    });
    let mut names = BTreeMap::new();
    for n in t.degrees() {
        let v = (0..t.dim(n))
            .map(|x| {
                let (m, u, k) = i_t.split(n, x);
                let (r, a2, e2) = i_ae.split(m, u);
                format!("{}⊗e{}.{}⊗{}", a.basis_name(r, a2), m - r, e2, b.basis_name(n - m, k))
            })
            .collect();
        names.insert(n, v);
    }
    DgBimodule::from_parts(
        format!("{}⊗E⊗{}", a.name(), b.name()),
        a,
        b,
        t,
        left,
        right,
        BasisNames::new(names),
    )
    .expect("free bimodule has consistent shapes")
}

/// The free left module `A ⊗ E`.
pub fn free_left_module<F: Field>(a: Arc<DgAlgebra<F>>, e: &ChainComplex<F>) -> DgLeftModule<F> {
    let k = Arc::new(DgAlgebra::unit_algebra());
    let m = free_bimodule(a.clone(), e, k);
    let name = format!("{}⊗E", a.name());
    DgLeftModule(m.with_name(name))
}

/// The projection `ε ⊗ 1: A ⊗ E -> E` out of [`free_left_module`].
pub fn free_projection<F: Field>(a: &DgAlgebra<F>, e: &ChainComplex<F>) -> Result<ChainMap<F>> {
    let ca = a.complex();
    let ae = tensor(ca, e, ca.lo() + e.lo(), ca.hi() + e.hi());
    let k = ChainComplex::unit();
    let t = tensor(&ae, &k, ae.lo(), ae.hi());
    let i_ae = TensorIndex::new(ca, e, ae.lo(), ae.hi());
    let i_t = TensorIndex::new(&ae, &k, t.lo(), t.hi());
    let mut comps = BTreeMap::new();
    for n in t.degrees() {
        let cols = (0..t.dim(n))
            .map(|x| {
                let (m, u, _) = i_t.split(n, x);
                let (r, a2, e2) = i_ae.split(m, u);
                if a.is_unit_basis(r, a2) {
                    vec![(e2, F::one())]
                } else {
                    Vec::new()
                }
            })
            .collect();
        comps.insert(n, Matrix::from_columns(e.dim(n), cols));
    }
    ChainMap::new(t, e.clone(), comps)
}

/// Restriction of scalars along `f: A' -> A`.
pub fn restrict_scalars<F: Field>(f: &AlgebraMap<F>, m: &DgLeftModule<F>) -> Result<DgLeftModule<F>> {
    if !same(f.target(), m.algebra()) {
        return Err(Error::shape("the module is not over the target of the map"));
    }
    let src = f.source().clone();
    let x = m.complex();
    let action = Bilinear::from_fn(src.complex(), x, x, x.hi(), |p, i, q, j| {
        let fi = f.map().component(p);
        m.action().apply(p, fi.column(i), q, &[(j, F::one())])
    });
    DgLeftModule::from_parts(m.name().to_string(), src, x.clone(), action, m.bimodule().names().clone())
        .map(|r| r.with_sector(m.sector()))
}

#[cfg(test)]
mod tests;
