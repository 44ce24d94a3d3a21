//! Algebras and modules presented by named basis vectors and sparse tables.
//! Products and actions involving the unit may be omitted; every other
//! missing entry is zero.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{BasisNames, Bilinear, DgAlgebra, DgBimodule, Sector};
use crate::chains::ChainComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{normalize, Matrix, SparseVec};

/// A coefficient on a named basis vector.
pub type Term<F> = (String, F);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone)]
pub struct AlgebraPresentation<F> {
    pub name: String,
    pub basis: Vec<BasisElement>,
    pub unit: String,
    /// `None` when no product table was supplied at all.
    pub product: Option<Vec<(String, String, Vec<Term<F>>)>>,
    pub differential: Vec<(String, Vec<Term<F>>)>,
    /// Defaults to the coordinate of the unit.
    pub augmentation: Option<Vec<Term<F>>>,
}

#[derive(Debug, Clone)]
pub struct ModulePresentation<F> {
    pub name: String,
    pub left: Arc<DgAlgebra<F>>,
    pub right: Arc<DgAlgebra<F>>,
    pub basis: Vec<BasisElement>,
    pub differential: Vec<(String, Vec<Term<F>>)>,
    pub left_action: Vec<(String, String, Vec<Term<F>>)>,
    pub right_action: Vec<(String, String, Vec<Term<F>>)>,
    pub sector: Sector,
}

/// Name lookup for a basis listed in order, grouped by degree.
struct Lookup {
    by_name: HashMap<String, (i64, usize)>,
    names: BTreeMap<i64, Vec<String>>,
}

impl Lookup {
    fn new(basis: &[BasisElement]) -> Result<Self> {
        let mut by_name = HashMap::new();
        let mut names: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for b in basis {
            let v = names.entry(b.degree).or_default();
            if by_name.insert(b.name.clone(), (b.degree, v.len())).is_some() {
                return Err(Error::validation("basis", format!("duplicate basis name `{}`", b.name)));
            }
            v.push(b.name.clone());
        }
        Ok(Lookup { by_name, names })
    }

    fn from_names(names: &BasisNames) -> Self {
        let mut by_name = HashMap::new();
        for (&n, v) in &names.0 {
            for (i, s) in v.iter().enumerate() {
                by_name.insert(s.clone(), (n, i));
            }
        }
        Lookup {
            by_name,
            names: names.0.clone(),
        }
    }

    fn get(&self, name: &str, table: &str) -> Result<(i64, usize)> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::validation(table, format!("unknown basis name `{name}`")))
    }

    fn dims(&self) -> BTreeMap<i64, usize> {
        self.names.iter().map(|(&n, v)| (n, v.len())).collect()
    }

    /// Resolves terms that must all have degree `degree`.
    fn vector<F: Field>(
        &self,
        terms: &[Term<F>],
        degree: i64,
        axiom: &str,
        what: &str,
    ) -> Result<SparseVec<F>> {
        let mut v = Vec::new();
        for (name, c) in terms {
            let (n, i) = self.get(name, axiom)?;
            if n != degree {
                return Err(Error::validation(
                    axiom,
                    format!("{what} -> {name}: expected degree {degree}, found {n}"),
                ));
            }
            v.push((i, c.clone()));
        }
        Ok(normalize(v))
    }
}

fn complex_from<F: Field>(look: &Lookup, differential: &[(String, Vec<Term<F>>)]) -> Result<ChainComplex<F>> {
    let dims = look.dims();
    let mut cols: BTreeMap<i64, Vec<SparseVec<F>>> =
        dims.iter().map(|(&n, &d)| (n, vec![Vec::new(); d])).collect();
    for (name, terms) in differential {
        let (n, i) = look.get(name, "differential")?;
        let v = look.vector(terms, n - 1, "differential-degree", &format!("d {name}"))?;
        cols.get_mut(&n).expect("degree present")[i] = v;
    }
    let diffs = cols
        .into_iter()
        .map(|(n, c)| {
            let rows = dims.get(&(n - 1)).copied().unwrap_or(0);
            (n, Matrix::from_columns(rows, c))
        })
        .collect();
    if dims.is_empty() {
        return Ok(ChainComplex::zero());
    }
    // Fill gaps so the complex is contiguous.
    let lo = *dims.keys().next().expect("nonempty");
    let hi = *dims.keys().next_back().expect("nonempty");
    let full: BTreeMap<i64, usize> = (lo..=hi).map(|n| (n, dims.get(&n).copied().unwrap_or(0))).collect();
    ChainComplex::from_maps(&full, diffs)
}

/// The complex spanned by named basis vectors with the given differential.
pub fn presented_complex<F: Field>(basis: &[BasisElement], differential: &[(String, Vec<Term<F>>)]) -> Result<ChainComplex<F>> {
    complex_from(&Lookup::new(basis)?, differential)
}

type Table<F> = HashMap<((i64, usize), (i64, usize)), SparseVec<F>>;

fn table<F: Field>(
    entries: &[(String, String, Vec<Term<F>>)],
    left: &Lookup,
    right: &Lookup,
    out: &Lookup,
    what: &str,
) -> Result<Table<F>> {
    let axiom = format!("{what}-table");
    let degree_axiom = format!("{what}-degree");
    let mut t = HashMap::new();
    for (l, r, terms) in entries {
        let x = left.get(l, &axiom)?;
        let y = right.get(r, &axiom)?;
        let v = out.vector(terms, x.0 + y.0, &degree_axiom, &format!("{l}*{r}"))?;
        if t.insert((x, y), v).is_some() {
            return Err(Error::validation(axiom, format!("duplicate entry {l}*{r}")));
        }
    }
    Ok(t)
}

fn bilinear<F: Field>(
    t: &Table<F>,
    x: &ChainComplex<F>,
    y: &ChainComplex<F>,
    z: &ChainComplex<F>,
    default: impl Fn(i64, usize, i64, usize) -> SparseVec<F>,
) -> Bilinear<F> {
    Bilinear::from_fn(x, y, z, z.hi(), |p, i, q, j| {
        t.get(&((p, i), (q, j)))
            .cloned()
            .unwrap_or_else(|| default(p, i, q, j))
    })
}

impl<F: Field> AlgebraPresentation<F> {
    /// Resolves names, checks degrees and runs full validation.
    pub fn build(&self) -> Result<DgAlgebra<F>> {
        let look = Lookup::new(&self.basis)?;
        let (un, ui) = look.get(&self.unit, "unit")?;
        if un != 0 {
            return Err(Error::validation("unit", format!("unit `{}` has degree {un}", self.unit)));
        }
        let Some(product) = &self.product else {
            return Err(Error::validation("product-table", "no product table given"));
        };
        let complex = complex_from(&look, &self.differential)?;
        let t = table(product, &look, &look, &look, "product")?;
        let one = |i: usize| vec![(i, F::one())];
        let prod = bilinear(&t, &complex, &complex, &complex, |p, i, q, j| {
            if p == 0 && i == ui {
                one(j)
            } else if q == 0 && j == ui {
                one(i)
            } else {
                Vec::new()
            }
        });
        if let Some(aug) = &self.augmentation {
            let v = look.vector(aug, 0, "augmentation-degree", "ε")?;
            for (i, c) in &v {
                let ok = if *i == ui { c.is_one() } else { c.is_zero() };
                if !ok {
                    let axiom = if *i == ui { "augmentation" } else { "augmentation-adapted-basis" };
                    return Err(Error::validation(
                        axiom,
                        format!("ε({}) = {c}", look.names[&0][*i]),
                    ));
                }
            }
            if !v.iter().any(|(i, _)| *i == ui) {
                return Err(Error::validation("augmentation", "ε(1) = 0"));
            }
        }
        DgAlgebra::new(self.name.clone(), complex, ui, prod, BasisNames::new(look.names))
    }
}

impl<F: Field> ModulePresentation<F> {
    /// Resolves names, checks degrees and runs full validation.
    pub fn build(&self) -> Result<DgBimodule<F>> {
        let look = Lookup::new(&self.basis)?;
        let la = Lookup::from_names(self.left.names());
        let lb = Lookup::from_names(self.right.names());
        let complex = complex_from(&look, &self.differential)?;
        let tl = table(&self.left_action, &la, &look, &look, "left-action")?;
        let tr = table(&self.right_action, &look, &lb, &look, "right-action")?;
        let (a, b) = (&self.left, &self.right);
        let left = bilinear(&tl, a.complex(), &complex, &complex, |p, i, _, j| {
            if a.is_unit_basis(p, i) {
                vec![(j, F::one())]
            } else {
                Vec::new()
            }
        });
        let right = bilinear(&tr, &complex, b.complex(), &complex, |_, i, q, j| {
            if b.is_unit_basis(q, j) {
                vec![(i, F::one())]
            } else {
                Vec::new()
            }
        });
        Ok(DgBimodule::new(
            self.name.clone(),
            a.clone(),
            b.clone(),
            complex,
            left,
            right,
            BasisNames::new(look.names),
        )?
        .with_sector(self.sector))
    }
}
