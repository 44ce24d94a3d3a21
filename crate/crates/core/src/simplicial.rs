//! The simplex category Δ and the category ∇ = Δᵒᵖ × [1].
//!
//! Every map stored here is a covariant map in Δ. A morphism `[k] -> [k']`
//! of Δᵒᵖ is stored as the Δ-map `[k'] -> [k]`, and functions taking
//! Δᵒᵖ-morphisms say so.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ordinal `[n] = {0 < 1 < ... < n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ordinal(pub usize);

impl Ordinal {
    pub fn size(self) -> usize {
        self.0
    }

    /// Number of elements.
    pub fn card(self) -> usize {
        self.0 + 1
    }

    /// `[n]₊ = [n] ∐ {∞}`, with `∞` the new maximum `n + 1`.
    pub fn plus(self) -> Ordinal {
        Ordinal(self.0 + 1)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// A weakly increasing map `[source] -> [target]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonotoneMap {
    source: Ordinal,
    target: Ordinal,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Ordinal, target: Ordinal, values: Vec<usize>) -> Result<Self> {
        if values.len() != source.card() {
            return Err(Error::shape(format!(
                "map out of {source} needs {} values, got {}",
                source.card(),
                values.len()
            )));
        }
        if values.iter().any(|&v| v > target.0) {
            return Err(Error::shape(format!(
                "value out of range {target}: {values:?}"
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::shape(format!("not monotone: {values:?}")));
        }
        Ok(MonotoneMap {
            source,
            target,
            values,
        })
    }

    /// Shorthand for `[values.len() - 1] -> [target]`; panics on invalid data.
    pub fn of(target: usize, values: &[usize]) -> Self {
        assert!(!values.is_empty());
        Self::new(Ordinal(values.len() - 1), Ordinal(target), values.to_vec())
            .expect("valid monotone map")
    }

    pub fn identity(n: Ordinal) -> Self {
        MonotoneMap {
            source: n,
            target: n,
            values: (0..=n.0).collect(),
        }
    }

    /// The coface `[n-1] -> [n]` omitting `i`.
    pub fn face(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        let values = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
        MonotoneMap {
            source: Ordinal(n - 1),
            target: Ordinal(n),
            values,
        }
    }

    /// The codegeneracy `[n+1] -> [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        let values = (0..=n + 1)
            .map(|j| if j <= i { j } else { j - 1 })
            .collect();
        MonotoneMap {
            source: Ordinal(n + 1),
            target: Ordinal(n),
            values,
        }
    }

    /// The constant map `[source] -> [target]` with value `v`.
    pub fn constant(source: Ordinal, target: Ordinal, v: usize) -> Self {
        assert!(v <= target.0);
        MonotoneMap {
            source,
            target,
            values: vec![v; source.card()],
        }
    }

    pub fn source(&self) -> Ordinal {
        self.source
    }

    pub fn target(&self) -> Ordinal {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().expect("nonempty") == self.target.0
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap> {
        compose(self, g)
    }

    /// True iff the image is an interval of the target.
    pub fn is_convex(&self) -> bool {
        self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `f₊ : [k'+1] -> [k+1]`, fixing the adjoined maximum.
    pub fn plus(&self) -> MonotoneMap {
        let mut values = self.values.clone();
        values.push(self.target.0 + 1);
        MonotoneMap {
            source: self.source.plus(),
            target: self.target.plus(),
            values,
        }
    }

    /// The inclusion `[k] ⊂ [k]₊`.
    pub fn inclusion_into_plus(k: Ordinal) -> MonotoneMap {
        MonotoneMap {
            source: k,
            target: k.plus(),
            values: (0..=k.0).collect(),
        }
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:{:?}", self.source, self.target, self.values)
    }
}

/// `g ∘ f`.
pub fn compose(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
    if f.target != g.source {
        return Err(Error::Composition(format!(
            "cannot compose {f} with {g}: {} != {}",
            f.target, g.source
        )));
    }
    Ok(MonotoneMap {
        source: f.source,
        target: g.target,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// All monotone maps `[a] -> [b]`, in lexicographic order of value tables.
pub fn monotone_maps(a: Ordinal, b: Ordinal) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(a.card());
    fn rec(a: usize, b: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=b {
            cur.push(v);
            rec(a, b, v, cur, out);
            cur.pop();
        }
    }
    let mut tables = Vec::new();
    rec(a.0, b.0, 0, &mut cur, &mut tables);
    for values in tables {
        out.push(MonotoneMap {
            source: a,
            target: b,
            values,
        });
    }
    out
}

/// An object `([k], b)` of ∇ = Δᵒᵖ × [1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NablaObject {
    pub ordinal: Ordinal,
    pub flag: u8,
}

impl NablaObject {
    pub fn new(k: usize, flag: u8) -> Result<Self> {
        if flag > 1 {
            return Err(Error::shape(format!("flag must be 0 or 1, got {flag}")));
        }
        Ok(NablaObject {
            ordinal: Ordinal(k),
            flag,
        })
    }
}

impl fmt::Display for NablaObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.ordinal, self.flag)
    }
}

/// A morphism `([k], b) -> ([k'], b')` of ∇: a Δ-map `λ: [k'] -> [k]` and
/// `b <= b'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NablaMorphism {
    pub source: NablaObject,
    pub target: NablaObject,
    pub lambda: MonotoneMap,
}

impl NablaMorphism {
    pub fn new(source: NablaObject, target: NablaObject, lambda: MonotoneMap) -> Result<Self> {
        if lambda.source() != target.ordinal || lambda.target() != source.ordinal {
            return Err(Error::shape(format!(
                "λ = {lambda} does not go from {} to {}",
                target.ordinal, source.ordinal
            )));
        }
        if source.flag > target.flag {
            return Err(Error::shape(format!(
                "no map of [1] from {} to {}",
                source.flag, target.flag
            )));
        }
        Ok(NablaMorphism {
            source,
            target,
            lambda,
        })
    }

    pub fn identity(x: NablaObject) -> Self {
        NablaMorphism {
            source: x,
            target: x,
            lambda: MonotoneMap::identity(x.ordinal),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &NablaMorphism) -> Result<NablaMorphism> {
        if self.target != next.source {
            return Err(Error::Composition(format!(
                "∇: {} != {}",
                self.target, next.source
            )));
        }
        Ok(NablaMorphism {
            source: self.source,
            target: next.target,
            lambda: compose(&next.lambda, &self.lambda)?,
        })
    }
}

/// All ∇-morphisms `x -> y`.
pub fn nabla_morphisms(x: NablaObject, y: NablaObject) -> Vec<NablaMorphism> {
    if x.flag > y.flag {
        return Vec::new();
    }
    monotone_maps(y.ordinal, x.ordinal)
        .into_iter()
        .map(|lambda| NablaMorphism {
            source: x,
            target: y,
            lambda,
        })
        .collect()
}

/// δ on objects: `([k],0) ↦ [k]₊`, `([k],1) ↦ [k]`.
pub fn delta_object(x: NablaObject) -> Ordinal {
    if x.flag == 0 {
        x.ordinal.plus()
    } else {
        x.ordinal
    }
}

/// δ on morphisms, as a Δ-map `δ(target) -> δ(source)` (δ lands in Δᵒᵖ).
pub fn delta(m: &NablaMorphism) -> MonotoneMap {
    match (m.source.flag, m.target.flag) {
        (0, 0) => m.lambda.plus(),
        (1, 1) => m.lambda.clone(),
        _ => compose(
            &m.lambda,
            &MonotoneMap::inclusion_into_plus(m.source.ordinal),
        )
        .expect("composable"),
    }
}

/// The canonical map `η_x : δ(x) -> [1]`.
pub fn eta(x: NablaObject) -> MonotoneMap {
    let d = delta_object(x);
    if x.flag == 0 {
        let mut values = vec![0; d.card()];
        *values.last_mut().expect("nonempty") = 1;
        MonotoneMap {
            source: d,
            target: Ordinal(1),
            values,
        }
    } else {
        MonotoneMap::constant(d, Ordinal(1), 0)
    }
}

/// π on objects: `([k],0) ↦ [k]₊`, `([k],1) ↦ [0]`.
pub fn pi_object(x: NablaObject) -> Ordinal {
    if x.flag == 0 {
        x.ordinal.plus()
    } else {
        Ordinal(0)
    }
}

/// π on morphisms, as a Δ-map `π(target) -> π(source)`.
pub fn pi(m: &NablaMorphism) -> MonotoneMap {
    match (m.source.flag, m.target.flag) {
        (0, 0) => m.lambda.plus(),
        (1, 1) => MonotoneMap::identity(Ordinal(0)),
        _ => MonotoneMap::constant(Ordinal(0), m.source.ordinal.plus(), m.source.ordinal.0 + 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_ordinals(max: usize) -> Vec<Ordinal> {
        (0..=max).map(Ordinal).collect()
    }

    #[test]
    fn composition_examples() {
        let id2 = MonotoneMap::identity(Ordinal(2));
        assert_eq!(compose(&id2, &id2).unwrap(), id2);
        let f = MonotoneMap::of(0, &[0, 0]);
        let g = MonotoneMap::of(1, &[1]);
        assert_eq!(compose(&f, &g).unwrap().values(), &[1, 1]);
        let g0 = MonotoneMap::of(1, &[0]);
        assert_eq!(compose(&f, &g0).unwrap(), MonotoneMap::of(1, &[0, 0]));
        let h = MonotoneMap::of(1, &[0, 1, 1]);
        assert!(matches!(compose(&f, &h), Err(Error::Composition(_))));
    }

    #[test]
    fn convexity_examples() {
        assert!(MonotoneMap::of(3, &[1, 2]).is_convex());
        assert!(!MonotoneMap::of(2, &[0, 2]).is_convex());
        assert!(MonotoneMap::of(2, &[1, 1, 1]).is_convex());
    }

    #[test]
    fn plus_examples() {
        assert_eq!(
            MonotoneMap::identity(Ordinal(0)).plus(),
            MonotoneMap::identity(Ordinal(1))
        );
        assert_eq!(MonotoneMap::of(1, &[0]).plus(), MonotoneMap::of(2, &[0, 2]));
        assert_eq!(
            MonotoneMap::of(1, &[0, 0, 1]).plus(),
            MonotoneMap::of(2, &[0, 0, 1, 2])
        );
    }

    #[test]
    fn delta_examples() {
        let x0 = NablaObject::new(0, 0).unwrap();
        let x1 = NablaObject::new(0, 1).unwrap();
        assert_eq!(
            delta(&NablaMorphism::identity(x0)),
            MonotoneMap::identity(Ordinal(1))
        );
        let up = NablaMorphism::new(x0, x1, MonotoneMap::identity(Ordinal(0))).unwrap();
        assert_eq!(delta(&up), MonotoneMap::face(1, 1));
        // τ: ([1],0) -> ([0],0) with λ: [0] -> [1] hitting 0.
        let tau = NablaMorphism::new(
            NablaObject::new(1, 0).unwrap(),
            x0,
            MonotoneMap::of(1, &[0]),
        )
        .unwrap();
        assert_eq!(delta(&tau), MonotoneMap::of(2, &[0, 2]));
    }

    #[test]
    fn eta_examples() {
        assert_eq!(
            eta(NablaObject::new(0, 1).unwrap()),
            MonotoneMap::of(1, &[0])
        );
        assert_eq!(
            eta(NablaObject::new(1, 0).unwrap()),
            MonotoneMap::of(1, &[0, 0, 1])
        );
    }

    #[test]
    fn composition_is_associative_and_unital() {
        let ords = all_ordinals(4);
        let maps: Vec<Vec<Vec<MonotoneMap>>> = ords
            .iter()
            .map(|&a| ords.iter().map(|&b| monotone_maps(a, b)).collect())
            .collect();
        for a in 0..=4 {
            for b in 0..=4 {
                for f in &maps[a][b] {
                    let ida = MonotoneMap::identity(Ordinal(a));
                    let idb = MonotoneMap::identity(Ordinal(b));
                    assert_eq!(&compose(&ida, f).unwrap(), f);
                    assert_eq!(&compose(f, &idb).unwrap(), f);
                    for c in 0..=4 {
                        for g in &maps[b][c] {
                            let gf = compose(f, g).unwrap();
                            for d in 0..=4 {
                                for h in &maps[c][d] {
                                    assert_eq!(
                                        compose(&gf, h).unwrap(),
                                        compose(f, &compose(g, h).unwrap()).unwrap()
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn convex_maps_closed_under_composition() {
        for a in all_ordinals(3) {
            assert!(MonotoneMap::identity(a).is_convex());
            for b in all_ordinals(3) {
                for c in all_ordinals(3) {
                    for f in monotone_maps(a, b).iter().filter(|f| f.is_convex()) {
                        for g in monotone_maps(b, c).iter().filter(|g| g.is_convex()) {
                            assert!(compose(f, g).unwrap().is_convex());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn plus_is_functorial() {
        for a in all_ordinals(3) {
            assert_eq!(
                MonotoneMap::identity(a).plus(),
                MonotoneMap::identity(a.plus())
            );
            for b in all_ordinals(3) {
                for c in all_ordinals(3) {
                    for f in monotone_maps(a, b) {
                        for g in monotone_maps(b, c) {
                            assert_eq!(
                                compose(&f, &g).unwrap().plus(),
                                compose(&f.plus(), &g.plus()).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    fn nabla_objects(max: usize) -> Vec<NablaObject> {
        (0..=max)
            .flat_map(|k| [0u8, 1].map(|b| NablaObject::new(k, b).unwrap()))
            .collect()
    }

    #[test]
    fn delta_is_a_functor_and_eta_is_natural() {
        let objs = nabla_objects(3);
        for &x in &objs {
            assert!(delta(&NablaMorphism::identity(x)).is_identity());
            assert!(pi(&NablaMorphism::identity(x)).is_identity());
            for &y in &objs {
                for m in nabla_morphisms(x, y) {
                    let dm = delta(&m);
                    assert_eq!(dm.source(), delta_object(y));
                    assert_eq!(dm.target(), delta_object(x));
                    assert_eq!(compose(&dm, &eta(x)).unwrap(), eta(y));
                    let pm = pi(&m);
                    assert_eq!((pm.source(), pm.target()), (pi_object(y), pi_object(x)));
                    for &z in &objs {
                        for n in nabla_morphisms(y, z) {
                            let nm = m.then(&n).unwrap();
                            assert_eq!(delta(&nm), compose(&delta(&n), &dm).unwrap());
                            assert_eq!(pi(&nm), compose(&pi(&n), &pm).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts_are_binomial() {
        // Monotone maps [a] -> [b] correspond to multisets of size a+1 from b+1 values.
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(
                    monotone_maps(Ordinal(a), Ordinal(b)).len(),
                    binom(a + b + 1, a + 1)
                );
            }
        }
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 2..6 {
            for i in 0..=n {
                for j in i + 1..=n {
                    // d^j d^i = d^i d^{j-1} as maps [n-2] -> [n].
                    let lhs = compose(&MonotoneMap::face(n - 1, i), &MonotoneMap::face(n, j));
                    let rhs = compose(&MonotoneMap::face(n - 1, j - 1), &MonotoneMap::face(n, i));
                    assert_eq!(lhs.unwrap(), rhs.unwrap());
                }
            }
        }
    }

    fn arb_map(max: usize) -> impl Strategy<Value = MonotoneMap> {
        (0..=max, 0..=max).prop_flat_map(|(a, b)| {
            proptest::collection::vec(0..=b, a + 1).prop_map(move |mut v| {
                v.sort_unstable();
                MonotoneMap::new(Ordinal(a), Ordinal(b), v).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn surjection_injection_factorization(f in arb_map(6)) {
            // Every monotone map factors as its corestriction onto the image
            // followed by the inclusion of the image.
            let mut image: Vec<usize> = f.values().to_vec();
            image.dedup();
            let onto: Vec<usize> = f
                .values()
                .iter()
                .map(|v| image.iter().position(|w| w == v).unwrap())
                .collect();
            let s = MonotoneMap::new(f.source(), Ordinal(image.len() - 1), onto).unwrap();
            let i = MonotoneMap::new(Ordinal(image.len() - 1), f.target(), image).unwrap();
            prop_assert!(s.is_surjective());
            prop_assert!(i.is_injective());
            prop_assert_eq!(compose(&s, &i).unwrap(), f.clone());
            prop_assert_eq!(f.is_convex(), i.is_convex());
        }
    }
}
