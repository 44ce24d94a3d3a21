//! Finite models of Ass⊗, Tens⊗ and the operads derived from them.
//!
//! A pointed finite set ⟨n⟩ is represented by `n`; its non-base points are
//! `0..n` internally and are printed 1-based.

mod bar_index;
pub mod laws;
mod mass;
mod nabla;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::{compose, monotone_maps, MonotoneMap, Ordinal};

pub use bar_index::{bar_degeneracy, bar_face, bar_index};
pub use mass::{
    is_slice_morphism, mass_morphisms, mass_slice_terminal, mass_slice_terminal_with, HomScan, MassObject, SliceInput,
    SliceObject, SliceVerdict,
};
pub use nabla::{
    nabla_tens_morphisms, phi, phi_mor, validate_bm_morphism, BMObject, NablaTensMorphism,
    NablaTensObject,
};

/// A morphism `α: ⟨n⟩ -> ⟨n'⟩` of Ass⊗: a pointed map with a total order on
/// each fiber over a non-base point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AssMorphism {
    source: usize,
    target: usize,
    /// `fibers[j]` lists `α⁻¹(j)` in increasing fiber order.
    fibers: Vec<Vec<usize>>,
    #[serde(skip)]
    map: Vec<Option<usize>>,
}

impl AssMorphism {
    pub fn new(source: usize, target: usize, fibers: Vec<Vec<usize>>) -> Result<Self> {
        if fibers.len() != target {
            return Err(Error::shape(format!(
                "⟨{target}⟩ needs {target} fibers, got {}",
                fibers.len()
            )));
        }
        let mut map = vec![None; source];
        for (j, fiber) in fibers.iter().enumerate() {
            for &i in fiber {
                if i >= source {
                    return Err(Error::shape(format!("point {} not in ⟨{source}⟩", i + 1)));
                }
                if map[i].is_some() {
                    return Err(Error::shape(format!("point {} lies in two fibers", i + 1)));
                }
                map[i] = Some(j);
            }
        }
        Ok(AssMorphism {
            source,
            target,
            fibers,
            map,
        })
    }

    /// Builds `α` from its underlying pointed map, ordering fibers naturally.
    pub fn from_map(target: usize, map: &[Option<usize>]) -> Result<Self> {
        let mut fibers = vec![Vec::new(); target];
        for (i, m) in map.iter().enumerate() {
            if let Some(j) = *m {
                if j >= target {
                    return Err(Error::shape(format!("value {} not in ⟨{target}⟩", j + 1)));
                }
                fibers[j].push(i);
            }
        }
        Self::new(map.len(), target, fibers)
    }

    pub fn identity(n: usize) -> Self {
        AssMorphism {
            source: n,
            target: n,
            fibers: (0..n).map(|i| vec![i]).collect(),
            map: (0..n).map(Some).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn fiber(&self, j: usize) -> &[usize] {
        &self.fibers[j]
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        self.map[i]
    }

    /// `self` followed by `next`. The fiber of the composite over `l` is the
    /// concatenation, in the order of `next`'s fiber over `l`, of `self`'s
    /// fibers.
    pub fn then(&self, next: &AssMorphism) -> Result<AssMorphism> {
        if self.target != next.source {
            return Err(Error::Composition(format!(
                "Ass: ⟨{}⟩ != ⟨{}⟩",
                self.target, next.source
            )));
        }
        let fibers: Vec<Vec<usize>> = next
            .fibers
            .iter()
            .map(|outer| {
                outer
                    .iter()
                    .flat_map(|&j| self.fibers[j].iter().copied())
                    .collect()
            })
            .collect();
        Self::new(self.source, next.target, fibers)
    }

    /// Whether `self.then(next) == expected`, without building the composite.
    pub fn then_is(&self, next: &AssMorphism, expected: &AssMorphism) -> bool {
        if self.target != next.source
            || expected.source != self.source
            || expected.target != next.target
        {
            return false;
        }
        next.fibers
            .iter()
            .zip(&expected.fibers)
            .all(|(outer, want)| {
                let mut got = outer.iter().flat_map(|&j| self.fibers[j].iter());
                want.iter().all(|w| got.next() == Some(w)) && got.next().is_none()
            })
    }
}

impl fmt::Display for AssMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩->⟨{}⟩{{", self.source, self.target)?;
        for (j, fiber) in self.fibers.iter().enumerate() {
            if j > 0 {
                write!(f, "; ")?;
            }
            let pts: Vec<String> = fiber.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "{}:{}", j + 1, pts.join("<"))?;
        }
        write!(f, "}}")
    }
}

/// All Ass⊗ morphisms `⟨n⟩ -> ⟨m⟩`, in a fixed deterministic order.
pub fn ass_morphisms(n: usize, m: usize) -> Vec<AssMorphism> {
    let mut out = Vec::new();
    let mut fibers = vec![Vec::new(); m];
    fn rec(i: usize, n: usize, fibers: &mut Vec<Vec<usize>>, out: &mut Vec<AssMorphism>) {
        if i == n {
            out.push(AssMorphism::new(n, fibers.len(), fibers.clone()).expect("valid"));
            return;
        }
        rec(i + 1, n, fibers, out);
        for j in 0..fibers.len() {
            for pos in 0..=fibers[j].len() {
                fibers[j].insert(pos, i);
                rec(i + 1, n, fibers, out);
                fibers[j].remove(pos);
            }
        }
    }
    rec(0, n, &mut fibers, &mut out);
    out
}

/// A color of Tens⊗: `a_i` (algebra) or `m_{i,i+1}` (bimodule).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    Algebra(usize),
    Module(usize),
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Algebra(i) => write!(f, "a{i}"),
            Color::Module(i) => write!(f, "m{},{}", i, i + 1),
        }
    }
}

/// An object `(⟨n⟩, [k], c₋, c₊)` of Tens⊗.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TensObject {
    pub k: Ordinal,
    pub c_minus: Vec<usize>,
    pub c_plus: Vec<usize>,
}

impl TensObject {
    pub fn new(k: Ordinal, c_minus: Vec<usize>, c_plus: Vec<usize>) -> Result<Self> {
        let o = TensObject { k, c_minus, c_plus };
        if o.c_minus.len() != o.c_plus.len() {
            return Err(Error::shape("c₋ and c₊ have different lengths"));
        }
        if !validate_tens_object(&o) {
            return Err(Error::validation(
                "tens-object",
                format!("{o}: need c₋(i) <= c₊(i) <= c₋(i)+1 <= k+1"),
            ));
        }
        Ok(o)
    }

    pub fn from_colors(k: Ordinal, colors: &[Color]) -> Result<Self> {
        let (c_minus, c_plus) = colors
            .iter()
            .map(|c| match *c {
                Color::Algebra(i) => (i, i),
                Color::Module(i) => (i, i + 1),
            })
            .unzip();
        Self::new(k, c_minus, c_plus)
    }

    pub fn n(&self) -> usize {
        self.c_minus.len()
    }

    pub fn color(&self, i: usize) -> Color {
        if self.c_minus[i] == self.c_plus[i] {
            Color::Algebra(self.c_minus[i])
        } else {
            Color::Module(self.c_minus[i])
        }
    }

    pub fn colors(&self) -> Vec<Color> {
        (0..self.n()).map(|i| self.color(i)).collect()
    }
}

impl fmt::Display for TensObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = (0..self.n())
            .map(|i| format!("{}:{}", self.c_minus[i], self.c_plus[i]))
            .collect();
        write!(f, "(⟨{}⟩,{},[{}])", self.n(), self.k, cs.join(" "))
    }
}

/// The pointwise color condition `c₋(i) <= c₊(i) <= c₋(i) + 1`, values in `[k]`.
pub fn validate_tens_object(o: &TensObject) -> bool {
    o.c_minus.len() == o.c_plus.len()
        && o.c_minus
            .iter()
            .zip(&o.c_plus)
            .all(|(&m, &p)| m <= p && p <= m + 1 && p <= o.k.0)
}

/// The `2k + 1` colors `a₀, …, a_k, m₀,₁, …, m_{k-1,k}` of Tens⊗ over `[k]`.
pub fn colors_of(k: Ordinal) -> Vec<TensObject> {
    let mut out: Vec<TensObject> = (0..=k.0)
        .map(|i| TensObject::from_colors(k, &[Color::Algebra(i)]).expect("valid"))
        .collect();
    out.extend((0..k.0).map(|i| TensObject::from_colors(k, &[Color::Module(i)]).expect("valid")));
    out
}

/// How the fiber conditions treat an empty fiber over `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmptyFiberRule {
    /// An empty fiber inserts a unit, so `λ(c'₋(j)) = λ(c'₊(j))` is required.
    #[default]
    Unit,
    /// No condition at all. Not closed under composition; kept for comparison.
    Vacuous,
}

/// A morphism `(α, λ)` of Tens⊗ from `(⟨n⟩,[k],…)` to `(⟨n'⟩,[k'],…)`, with
/// `λ: [k'] -> [k]` in Δ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TensMorphism {
    pub alpha: AssMorphism,
    pub lambda: MonotoneMap,
}

impl TensMorphism {
    pub fn identity(o: &TensObject) -> Self {
        TensMorphism {
            alpha: AssMorphism::identity(o.n()),
            lambda: MonotoneMap::identity(o.k),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &TensMorphism) -> Result<TensMorphism> {
        Ok(TensMorphism {
            alpha: self.alpha.then(&next.alpha)?,
            lambda: compose(&next.lambda, &self.lambda)?,
        })
    }
}

impl fmt::Display for TensMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, λ={:?})", self.alpha, self.lambda.values())
    }
}

fn check_shapes(
    alpha: &AssMorphism,
    lambda: &MonotoneMap,
    src: &TensObject,
    dst: &TensObject,
) -> Result<()> {
    if alpha.source() != src.n() || alpha.target() != dst.n() {
        return Err(Error::shape(format!(
            "α = {} does not connect ⟨{}⟩ and ⟨{}⟩",
            alpha,
            src.n(),
            dst.n()
        )));
    }
    if lambda.source() != dst.k || lambda.target() != src.k {
        return Err(Error::shape(format!(
            "λ = {} is not a map {} -> {}",
            lambda, dst.k, src.k
        )));
    }
    Ok(())
}

/// Checks the fiber conditions: over each `j` with fiber `i₀ ≺ … ≺ i_m`,
/// `c₋(i₀) = λ(c'₋(j))`, `c₊(i_m) = λ(c'₊(j))` and `c₊(i_t) = c₋(i_{t+1})`.
///
/// Shape mismatches are errors rather than `false`.
pub fn validate_tens_morphism(
    m: &TensMorphism,
    src: &TensObject,
    dst: &TensObject,
    rule: EmptyFiberRule,
) -> Result<bool> {
    validate_parts(&m.alpha, &m.lambda, src, dst, rule)
}

/// [`validate_tens_morphism`] on `(α, λ)` given separately.
pub fn validate_parts(
    alpha: &AssMorphism,
    lambda: &MonotoneMap,
    src: &TensObject,
    dst: &TensObject,
    rule: EmptyFiberRule,
) -> Result<bool> {
    check_shapes(alpha, lambda, src, dst)?;
    Ok(fibers_ok(alpha, lambda, src, dst, rule))
}

fn fibers_ok(
    alpha: &AssMorphism,
    lambda: &MonotoneMap,
    src: &TensObject,
    dst: &TensObject,
    rule: EmptyFiberRule,
) -> bool {
    (0..dst.n()).all(|j| {
        let start = lambda.apply(dst.c_minus[j]);
        let end = lambda.apply(dst.c_plus[j]);
        let fiber = alpha.fiber(j);
        match (fiber.first(), fiber.last()) {
            (Some(&first), Some(&last)) => {
                src.c_minus[first] == start
                    && src.c_plus[last] == end
                    && fiber
                        .windows(2)
                        .all(|w| src.c_plus[w[0]] == src.c_minus[w[1]])
            }
            _ => rule == EmptyFiberRule::Vacuous || start == end,
        }
    })
}

/// All valid Tens⊗ morphisms `src -> dst`, by backtracking over fiber chains.
pub fn tens_morphisms(
    src: &TensObject,
    dst: &TensObject,
    rule: EmptyFiberRule,
) -> Vec<TensMorphism> {
    monotone_maps(dst.k, src.k)
        .into_iter()
        .flat_map(|lambda| tens_morphisms_over(src, dst, &lambda, rule))
        .collect()
}

/// The valid Tens⊗ morphisms `src -> dst` with a prescribed `λ`.
pub fn tens_morphisms_over(
    src: &TensObject,
    dst: &TensObject,
    lambda: &MonotoneMap,
    rule: EmptyFiberRule,
) -> Vec<TensMorphism> {
    assert_eq!((lambda.source(), lambda.target()), (dst.k, src.k));
    let ends: Vec<(usize, usize)> = (0..dst.n())
        .map(|j| (lambda.apply(dst.c_minus[j]), lambda.apply(dst.c_plus[j])))
        .collect();
    let mut used = vec![false; src.n()];
    let mut fibers: Vec<Vec<usize>> = Vec::with_capacity(dst.n());
    let mut found = Vec::new();
    chains(src, &ends, rule, 0, &mut used, &mut fibers, &mut found);
    found
        .into_iter()
        .map(|fibers| TensMorphism {
            alpha: AssMorphism::new(src.n(), dst.n(), fibers).expect("valid fibers"),
            lambda: lambda.clone(),
        })
        .collect()
}

fn chains(
    src: &TensObject,
    ends: &[(usize, usize)],
    rule: EmptyFiberRule,
    j: usize,
    used: &mut Vec<bool>,
    fibers: &mut Vec<Vec<usize>>,
    found: &mut Vec<Vec<Vec<usize>>>,
) {
    if j == ends.len() {
        found.push(fibers.clone());
        return;
    }
    let (start, end) = ends[j];
    if rule == EmptyFiberRule::Vacuous || start == end {
        fibers.push(Vec::new());
        chains(src, ends, rule, j + 1, used, fibers, found);
        fibers.pop();
    }
    let mut chain = Vec::new();
    extend_chain(src, ends, rule, j, start, used, &mut chain, fibers, found);
}

#[allow(clippy::too_many_arguments)]
fn extend_chain(
    src: &TensObject,
    ends: &[(usize, usize)],
    rule: EmptyFiberRule,
    j: usize,
    pos: usize,
    used: &mut Vec<bool>,
    chain: &mut Vec<usize>,
    fibers: &mut Vec<Vec<usize>>,
    found: &mut Vec<Vec<Vec<usize>>>,
) {
    if !chain.is_empty() && pos == ends[j].1 {
        fibers.push(chain.clone());
        chains(src, ends, rule, j + 1, used, fibers, found);
        fibers.pop();
    }
    for i in 0..src.n() {
        if used[i] || src.c_minus[i] != pos {
            continue;
        }
        used[i] = true;
        chain.push(i);
        extend_chain(
            src,
            ends,
            rule,
            j,
            src.c_plus[i],
            used,
            chain,
            fibers,
            found,
        );
        chain.pop();
        used[i] = false;
    }
}

/// All valid Tens⊗ objects with `n <= max_n` and `k <= max_k`.
pub fn tens_objects(max_n: usize, max_k: usize) -> Vec<TensObject> {
    let mut out = Vec::new();
    for k in 0..=max_k {
        let colors: Vec<Color> = colors_of(Ordinal(k)).iter().map(|o| o.color(0)).collect();
        for n in 0..=max_n {
            let mut idx = vec![0usize; n];
            loop {
                let cs: Vec<Color> = idx.iter().map(|&i| colors[i]).collect();
                out.push(TensObject::from_colors(Ordinal(k), &cs).expect("valid"));
                let mut p = n;
                loop {
                    if p == 0 {
                        break;
                    }
                    p -= 1;
                    idx[p] += 1;
                    if idx[p] < colors.len() {
                        break;
                    }
                    idx[p] = 0;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
    }
    out
}
