//! Exhaustive law checks over bounded enumerations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::mass::{mass_slice_terminal_in, HomScan, MassObject, SliceInput, SliceShapes};
use super::{
    bar_degeneracy, bar_face, bar_index, colors_of, nabla_tens_morphisms, phi, phi_mor,
    tens_morphisms, tens_morphisms_over, tens_objects, validate_bm_morphism,
    validate_tens_morphism, validate_tens_object, AssMorphism, BMObject, EmptyFiberRule, NablaTensMorphism,
    NablaTensObject, TensMorphism, TensObject,
};
use crate::report::Report;
use crate::simplicial::{
    compose, delta, delta_object, monotone_maps, nabla_morphisms, MonotoneMap, NablaObject, Ordinal,
};

/// `colors_of(k)` has `2k+1` elements and agrees with a brute enumeration.
pub fn check_colors(max_k: usize) -> Report {
    let mut r = Report::new("tens-colors").with_bound("max_k", max_k as i64);
    for k in 0..=max_k {
        let colors = colors_of(Ordinal(k));
        r.check(colors.len() == 2 * k + 1, || {
            format!("k={k}: {} colors", colors.len())
        });
        let mut brute: Vec<TensObject> = (0..=k)
            .flat_map(|m| (0..=k).map(move |p| (m, p)))
            .map(|(m, p)| TensObject {
                k: Ordinal(k),
                c_minus: vec![m],
                c_plus: vec![p],
            })
            .filter(validate_tens_object)
            .collect();
        let mut sorted = colors.clone();
        sorted.sort();
        brute.sort();
        r.check(sorted == brute, || {
            format!("k={k}: colors differ from brute enumeration")
        });
    }
    r
}

struct Arrow<M> {
    src: usize,
    dst: usize,
    mor: M,
}

fn arrows<O: Sync, M: Send>(
    objects: &[O],
    homs: impl Fn(&O, &O) -> Vec<M> + Sync,
) -> Vec<Arrow<M>> {
    let pairs: Vec<(usize, usize)> = (0..objects.len())
        .flat_map(|a| (0..objects.len()).map(move |b| (a, b)))
        .collect();
    pairs
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            homs(&objects[a], &objects[b])
                .into_iter()
                .map(move |mor| Arrow {
                    src: a,
                    dst: b,
                    mor,
                })
        })
        .collect()
}

/// Keys in first-seen order, each with its first member and its size.
struct Groups<K> {
    index: FxHashMap<K, usize>,
    entries: Vec<(K, usize, u64)>,
}

impl<K: std::hash::Hash + Eq + Clone> Groups<K> {
    fn new() -> Self {
        Groups {
            index: FxHashMap::default(),
            entries: Vec::new(),
        }
    }

    fn add_with<Q>(&mut self, key: &Q, member: usize)
    where
        K: std::borrow::Borrow<Q>,
        Q: std::hash::Hash + Eq + ToOwned<Owned = K> + ?Sized,
    {
        match self.index.get(key) {
            Some(&g) => self.entries[g].2 += 1,
            None => {
                self.index.insert(key.to_owned(), self.entries.len());
                self.entries.push((key.to_owned(), member, 1));
            }
        }
    }

    fn add(&mut self, key: K, member: usize) {
        match self.index.get(&key) {
            Some(&g) => self.entries[g].2 += 1,
            None => {
                self.index.insert(key.clone(), self.entries.len());
                self.entries.push((key, member, 1));
            }
        }
    }
}

fn outgoing<M>(n: usize, arrows: &[Arrow<M>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    for (idx, a) in arrows.iter().enumerate() {
        out[a.src].push(idx);
    }
    out
}

/// Every enumerated Tens⊗ morphism validates, identities are neutral, and
/// every composite of two valid morphisms validates.
///
/// Validating a composite reads only the colors of the source points in each
/// fiber, never their labels. Arrows into a middle object are therefore
/// grouped by `(λ, colors along each fiber)`, and arrows `(β, μ)` out of it by
/// their fibers together with `μ` applied to the target colors. One composite
/// per pair of groups is formed and validated, and counts for every pair it
/// stands for.
pub fn check_tens_composition(max_n: usize, max_k: usize) -> Report {
    let objects = tens_objects(max_n, max_k);
    let arrows = arrows(&objects, |a, b| tens_morphisms(a, b, EmptyFiberRule::Unit));
    let out = outgoing(objects.len(), &arrows);
    let mut incoming = vec![Vec::new(); objects.len()];
    for (idx, a) in arrows.iter().enumerate() {
        incoming[a.dst].push(idx);
    }
    let mut report = Report::new("tens-composition")
        .with_bound("max_n", max_n as i64)
        .with_bound("max_k", max_k as i64);
    let partial: Vec<Report> = arrows
        .par_iter()
        .map(|a| {
            let mut r = Report::new("");
            let (x, y) = (&objects[a.src], &objects[a.dst]);
            r.check(
                validate_tens_morphism(&a.mor, x, y, EmptyFiberRule::Unit) == Ok(true),
                || format!("{} : {x} -> {y} does not validate", a.mor),
            );
            let left = TensMorphism::identity(x).then(&a.mor);
            let right = a.mor.then(&TensMorphism::identity(y));
            r.check(
                left.as_ref() == Ok(&a.mor) && right.as_ref() == Ok(&a.mor),
                || format!("identity law fails for {}", a.mor),
            );
            r
        })
        .collect();
    for r in partial {
        report.absorb(r);
    }
    let partial: Vec<Report> = (0..objects.len())
        .into_par_iter()
        .map(|mid| {
            let mut r = Report::new("");
            let mut ins = Groups::new();
            for &i in &incoming[mid] {
                let a = &arrows[i];
                let x = &objects[a.src];
                let colors: Vec<Vec<(usize, usize)>> = a
                    .mor
                    .alpha
                    .fibers()
                    .iter()
                    .map(|f| f.iter().map(|&p| (x.c_minus[p], x.c_plus[p])).collect())
                    .collect();
                ins.add((a.mor.lambda.clone(), colors), i);
            }
            let mut outs = Groups::new();
            for &i in &out[mid] {
                let b = &arrows[i];
                let z = &objects[b.dst];
                let ends: Vec<(&[usize], usize, usize)> = (0..z.n())
                    .map(|l| {
                        let lambda = &b.mor.lambda;
                        (
                            b.mor.alpha.fiber(l),
                            lambda.apply(z.c_minus[l]),
                            lambda.apply(z.c_plus[l]),
                        )
                    })
                    .collect();
                outs.add((z.k, ends), i);
            }
            for &(_, i, ca) in &ins.entries {
                for &(_, j, cb) in &outs.entries {
                    let (a, b) = (&arrows[i], &arrows[j]);
                    let (x, z) = (&objects[a.src], &objects[b.dst]);
                    let ok = a
                        .mor
                        .then(&b.mor)
                        .map(|m| validate_tens_morphism(&m, x, z, EmptyFiberRule::Unit) == Ok(true))
                        .unwrap_or(false);
                    r.cases_checked += ca * cb - 1;
                    r.check(ok, || {
                        format!(
                            "composite of {} and {} ({x} -> {} -> {z}) is invalid",
                            a.mor, b.mor, objects[mid]
                        )
                    });
                }
            }
            r
        })
        .collect();
    for r in partial {
        report.absorb(r);
    }
    report
}

/// All Tens⊗_∇ objects over `([k], b)` with `k <= max_k` and `n <= max_n`.
pub fn nabla_tens_objects(max_n: usize, max_k: usize) -> Vec<NablaTensObject> {
    let mut out = Vec::new();
    for k in 0..=max_k {
        for flag in [0u8, 1] {
            let x = NablaObject::new(k, flag).expect("flag");
            let d = delta_object(x).0;
            for base in tens_objects(max_n, d).into_iter().filter(|o| o.k.0 == d) {
                out.push(NablaTensObject { index: x, base });
            }
        }
    }
    out
}

/// φ sends valid morphisms to BM⊗ morphisms and preserves identities and
/// composition, and Tens⊗_∇ is closed under composition.
///
/// Composable pairs are grouped per middle object as in
/// [`check_tens_composition`]. Closure reads `δ` of the composite ∇-map only
/// on target colors, so arrows out are keyed by `δ(β)` on those colors; this
/// relies on `δ` being a functor, which is checked on every composable pair
/// of ∇-maps in range first. Each group pair is decided by the fiber-chain
/// rule on the key data, and a fixed slice of them is re-decided by composing
/// and validating through the library. `φ` keeps only `α`, so the
/// composition law is checked once per pair of distinct `α`s.
pub fn check_phi_functor(max_n: usize, max_k: usize) -> Report {
    let objects = nabla_tens_objects(max_n, max_k);
    let arrows = arrows(&objects, nabla_tens_morphisms);
    let out = outgoing(objects.len(), &arrows);
    let mut incoming = vec![Vec::new(); objects.len()];
    for (idx, a) in arrows.iter().enumerate() {
        incoming[a.dst].push(idx);
    }
    let mut report = Report::new("phi-functor")
        .with_bound("max_n", max_n as i64)
        .with_bound("max_k", max_k as i64);
    let indices: Vec<NablaObject> = (0..=max_k)
        .flat_map(|k| [0u8, 1].map(|b| NablaObject::new(k, b).expect("flag")))
        .collect();
    for &a in &indices {
        for &b in &indices {
            for f in nabla_morphisms(a, b) {
                for &c in &indices {
                    for g in nabla_morphisms(b, c) {
                        let fg = f.then(&g).expect("composable");
                        report.check(
                            compose(&delta(&g), &delta(&f)).as_ref() == Ok(&delta(&fg)),
                            || format!("δ is not functorial on {a} -> {b} -> {c}"),
                        );
                    }
                }
            }
        }
    }
    for o in &objects {
        let id = NablaTensMorphism::identity(o);
        report.check(*phi_mor(&id) == AssMorphism::identity(o.base.n()), || {
            format!("φ(id_{o}) is not an identity")
        });
    }
    let phis: Vec<BMObject> = objects.iter().map(phi).collect();
    let partial: Vec<Report> = arrows
        .par_iter()
        .map(|a| {
            let mut r = Report::new("");
            let (x, y) = (&objects[a.src], &objects[a.dst]);
            r.check(a.mor.validate(x, y) == Ok(true), || {
                format!("{} : {x} -> {y} does not validate", a.mor.alpha)
            });
            let (px, py) = (&phis[a.src], &phis[a.dst]);
            r.check(
                validate_bm_morphism(phi_mor(&a.mor), px, py) == Ok(true),
                || format!("φ({}) is not a BM morphism {px} -> {py}", a.mor.alpha),
            );
            r
        })
        .collect();
    for r in partial {
        report.absorb(r);
    }
    let partial: Vec<Report> = (0..objects.len())
        .into_par_iter()
        .map(|mid| {
            let mut r = Report::new("");
            let mut ins = Groups::new();
            let mut in_alphas = Groups::new();
            let mut key = Vec::new();
            for &i in &incoming[mid] {
                let a = &arrows[i];
                in_key(a, &objects[a.src], &mut key);
                ins.add_with(&key, i);
                in_alphas.add(&a.mor.alpha, i);
            }
            let mut outs = Groups::new();
            let mut out_alphas = Groups::new();
            for &i in &out[mid] {
                let b = &arrows[i];
                out_key(b, &objects[b.dst], &mut key);
                outs.add_with(&key, i);
                out_alphas.add(&b.mor.alpha, i);
            }
            let ins: Vec<_> = ins
                .entries
                .into_iter()
                .map(|(_, i, c)| {
                    let a = &arrows[i];
                    let x = &objects[a.src];
                    let colors: Vec<Vec<(usize, usize)>> = a
                        .mor
                        .alpha
                        .fibers()
                        .iter()
                        .map(|f| f.iter().map(|&p| (x.base.c_minus[p], x.base.c_plus[p])).collect())
                        .collect();
                    ((delta(&a.mor.nabla), colors), i, c)
                })
                .collect();
            let outs: Vec<_> = outs
                .entries
                .into_iter()
                .map(|(_, i, c)| {
                    let b = &arrows[i];
                    let z = &objects[b.dst];
                    let lambda = delta(&b.mor.nabla);
                    let ends: Vec<(&[usize], usize, usize)> = (0..z.base.n())
                        .map(|l| (b.mor.alpha.fiber(l), lambda.apply(z.base.c_minus[l]), lambda.apply(z.base.c_plus[l])))
                        .collect();
                    (ends, i, c)
                })
                .collect();
            for (u, ((lambda, colors), i, ca)) in ins.iter().enumerate() {
                for (v, (ends, j, cb)) in outs.iter().enumerate() {
                    let ok = chains_close(lambda, colors, ends);
                    r.cases_checked += ca * cb - 1;
                    let (a, b) = (&arrows[*i], &arrows[*j]);
                    let (x, z) = (&objects[a.src], &objects[b.dst]);
                    r.check(ok, || {
                        format!("composite {x} -> {} -> {z} is invalid", objects[mid])
                    });
                    if (u * 31 + v) % 64 == 0 {
                        let lib = a
                            .mor
                            .then(&b.mor)
                            .map(|m| m.validate(x, z) == Ok(true))
                            .unwrap_or(false);
                        r.check(lib == ok, || {
                            format!(
                                "fiber-chain rule disagrees with validation on {x} -> {} -> {z}",
                                objects[mid]
                            )
                        });
                    }
                }
            }
            for &(_, i, ca) in &in_alphas.entries {
                for &(_, j, cb) in &out_alphas.entries {
                    let (a, b) = (&arrows[i], &arrows[j]);
                    let ok = match a.mor.then(&b.mor) {
                        Ok(m) => phi_mor(&a.mor).then_is(phi_mor(&b.mor), phi_mor(&m)),
                        Err(_) => false,
                    };
                    r.cases_checked += ca * cb - 1;
                    r.check(ok, || {
                        format!(
                            "φ does not preserve the composite of {} and {}",
                            a.mor.alpha, b.mor.alpha
                        )
                    });
                }
            }
            r
        })
        .collect();
    for r in partial {
        report.absorb(r);
    }
    report
}

/// Flat grouping key of an incoming arrow: `δ` of its Nabla part and the
/// colors along each fiber of its Ass part.
fn in_key(a: &Arrow<NablaTensMorphism>, x: &NablaTensObject, key: &mut Vec<usize>) {
    key.clear();
    key.extend_from_slice(delta(&a.mor.nabla).values());
    for f in a.mor.alpha.fibers() {
        key.push(usize::MAX);
        for &p in f {
            key.extend([x.base.c_minus[p], x.base.c_plus[p]]);
        }
    }
}

/// Flat grouping key of an outgoing arrow: each fiber with the image of
/// its target colors under `δ`.
fn out_key(b: &Arrow<NablaTensMorphism>, z: &NablaTensObject, key: &mut Vec<usize>) {
    key.clear();
    let lambda = delta(&b.mor.nabla);
    for l in 0..z.base.n() {
        key.push(usize::MAX);
        key.extend_from_slice(b.mor.alpha.fiber(l));
        key.extend([lambda.apply(z.base.c_minus[l]), lambda.apply(z.base.c_plus[l])]);
    }
}

/// The fiber-chain rule for a composite, read off grouped data: over each
/// target point the concatenated fibers must chain from `λ(μ(c₋))` to
/// `λ(μ(c₊))`.
fn chains_close(
    lambda: &MonotoneMap,
    colors: &[Vec<(usize, usize)>],
    ends: &[(&[usize], usize, usize)],
) -> bool {
    ends.iter().all(|&(fiber, start, end)| {
        let mut cur = lambda.apply(start);
        for &j in fiber {
            for &(cm, cp) in &colors[j] {
                if cm != cur {
                    return false;
                }
                cur = cp;
            }
        }
        cur == lambda.apply(end)
    })
}

/// Faces and degeneracies of the bar index validate and satisfy the
/// simplicial identities on all levels `<= max_level`.
pub fn check_bar_index(max_level: usize) -> Report {
    let mut r = Report::new("bar-index-simplicial").with_bound("max_level", max_level as i64);
    let rule = EmptyFiberRule::Unit;
    for n in 0..=max_level {
        for i in 0..=n {
            if n >= 1 {
                r.check(
                    validate_tens_morphism(&bar_face(n, i), &bar_index(n), &bar_index(n - 1), rule)
                        == Ok(true),
                    || format!("d_{i} at level {n} is invalid"),
                );
            }
            if n < max_level {
                r.check(
                    validate_tens_morphism(
                        &bar_degeneracy(n, i),
                        &bar_index(n),
                        &bar_index(n + 1),
                        rule,
                    ) == Ok(true),
                    || format!("s_{i} at level {n} is invalid"),
                );
            }
        }
    }
    let eq = |a: TensMorphism, b: TensMorphism| a == b;
    // d_i d_j = d_{j-1} d_i for i < j, starting at level n.
    for n in 2..=max_level {
        for j in 1..=n {
            for i in 0..j {
                let lhs = bar_face(n, j)
                    .then(&bar_face(n - 1, i))
                    .expect("composable");
                let rhs = bar_face(n, i)
                    .then(&bar_face(n - 1, j - 1))
                    .expect("composable");
                r.check(eq(lhs, rhs), || {
                    format!("d_{i} d_{j} != d_{} d_{i} at level {n}", j - 1)
                });
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i <= j, ending at level n+2 <= max_level.
    for n in 0..=max_level.saturating_sub(2) {
        if n + 2 > max_level {
            break;
        }
        for j in 0..=n {
            for i in 0..=j {
                let lhs = bar_degeneracy(n, j)
                    .then(&bar_degeneracy(n + 1, i))
                    .expect("composable");
                let rhs = bar_degeneracy(n, i)
                    .then(&bar_degeneracy(n + 1, j + 1))
                    .expect("composable");
                r.check(eq(lhs, rhs), || {
                    format!("s_{i} s_{j} != s_{} s_{i} at level {n}", j + 1)
                });
            }
        }
    }
    // Mixed identities d_i s_j, staying within levels <= max_level.
    for n in 0..max_level {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = bar_degeneracy(n, j)
                    .then(&bar_face(n + 1, i))
                    .expect("composable");
                let rhs = if i < j {
                    bar_face(n, i)
                        .then(&bar_degeneracy(n - 1, j - 1))
                        .expect("composable")
                } else if i == j || i == j + 1 {
                    TensMorphism::identity(&bar_index(n))
                } else {
                    bar_face(n, i - 1)
                        .then(&bar_degeneracy(n - 1, j))
                        .expect("composable")
                };
                r.check(eq(lhs, rhs), || {
                    format!("d_{i} s_{j} identity fails at level {n}")
                });
            }
        }
    }
    r
}

/// The slice category of every enumerated factorization has the asserted
/// terminal object.
///
/// The slice category of `(α, λ = λ'∘λ'')` is built from `α`, `[k']`, the
/// terminal colors `λ''∘c''` and the sets `λ'⁻¹(c(i))` alone, so inputs are
/// grouped by that data and one member of each group is verified. By default
/// hom-sets into the terminal object are counted through the unit law (see
/// [`HomScan::UnitLaw`]).
pub fn check_mass_terminality(max_n: usize, max_k: usize) -> Report {
    check_mass_terminality_with(max_n, max_k, HomScan::UnitLaw)
}

/// [`check_mass_terminality`] with a choice of how hom-sets into the
/// terminal object are counted.
pub fn check_mass_terminality_with(max_n: usize, max_k: usize, scan: HomScan) -> Report {
    let objects = MassObject::enumerate(max_n, max_k);
    type Key = (AssMorphism, usize, Vec<usize>, Vec<Vec<usize>>);
    let mut groups: FxHashMap<Key, ((usize, usize, AssMorphism, MonotoneMap, MonotoneMap), u64)> =
        FxHashMap::default();
    let mut order = Vec::new();
    for (a, c) in objects.iter().enumerate() {
        for (b, c2) in objects.iter().enumerate() {
            for lambda in monotone_maps(c2.k, c.k) {
                let homs =
                    tens_morphisms_over(&c.as_tens(), &c2.as_tens(), &lambda, EmptyFiberRule::Unit);
                for kp in 0..=max_k {
                    for l2 in monotone_maps(c2.k, Ordinal(kp)) {
                        for l1 in monotone_maps(Ordinal(kp), c.k) {
                            if compose(&l2, &l1).expect("composable") != lambda {
                                continue;
                            }
                            let top: Vec<usize> = c2.c.iter().map(|&v| l2.apply(v)).collect();
                            let fibers: Vec<Vec<usize>> =
                                c.c.iter()
                                    .map(|&ci| (0..=kp).filter(|&v| l1.apply(v) == ci).collect())
                                    .collect();
                            for m in &homs {
                                let key = (m.alpha.clone(), kp, top.clone(), fibers.clone());
                                if let Some(entry) = groups.get_mut(&key) {
                                    entry.1 += 1;
                                } else {
                                    order.push(key.clone());
                                    groups.insert(key, ((a, b, m.alpha.clone(), l1.clone(), l2.clone()), 1));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut by_alpha: BTreeMap<&AssMorphism, Vec<_>> = BTreeMap::new();
    for k in &order {
        by_alpha.entry(&k.0).or_default().push(&groups[k]);
    }
    let by_alpha: Vec<_> = by_alpha.into_iter().collect();
    let partial: Vec<Report> = by_alpha
        .par_iter()
        .map(|(alpha, inputs)| {
            let shapes = SliceShapes::new(alpha, max_n);
            let mut r = Report::new("");
            for ((a, b, alpha, l1, l2), count) in inputs.iter().copied() {
            let input = SliceInput {
                c: &objects[*a],
                c2: &objects[*b],
                alpha,
                lambda1: l1,
                lambda2: l2,
            };
            match mass_slice_terminal_in(&input, &shapes, scan) {
                Ok(v) => r.check(v.passed(), || {
                    format!(
                        "{} -> {} via {alpha}, λ'={l1}, λ''={l2}: {} objects without a unique map to {}",
                        objects[*a],
                        objects[*b],
                        v.non_unique.len(),
                        v.terminal
                    )
                }),
                Err(e) => r.check(false, || e.to_string()),
            }
            r.cases_checked += count - 1;
            }
            r
        })
        .collect();
    let mut report = Report::new("mass-slice-terminal")
        .with_bound("max_n", max_n as i64)
        .with_bound("max_k", max_k as i64);
    for r in partial {
        report.absorb(r);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds_pass() {
        assert!(check_colors(5).passed());
        assert!(check_tens_composition(2, 1).passed());
        assert!(check_phi_functor(1, 1).passed());
        assert!(check_bar_index(4).passed());
        assert!(check_mass_terminality(2, 1).passed());
    }

    #[test]
    fn unit_law_scan_agrees_with_full_scan() {
        let fast = check_mass_terminality_with(2, 2, HomScan::UnitLaw);
        let full = check_mass_terminality_with(2, 2, HomScan::Full);
        assert!(full.passed());
        assert_eq!(fast.to_json(), full.to_json());
    }

    #[test]
    fn bar_index_identity_count() {
        let r = check_bar_index(4);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.cases_checked > 50);
    }
}
