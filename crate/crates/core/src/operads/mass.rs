//! MAss⊗, the full subcategory of Tens⊗ on objects with `c₋ = c₊`, and the
//! slice categories whose terminal objects make MAss⊗ flat over Δᵒᵖ.

use std::fmt;

use serde::Serialize;

use super::{ass_morphisms, tens_morphisms, AssMorphism, EmptyFiberRule, TensMorphism, TensObject};
use crate::error::{Error, Result};
use crate::simplicial::{compose, MonotoneMap, Ordinal};

/// An object `(⟨n⟩, [k], c)` of MAss⊗.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MassObject {
    pub k: Ordinal,
    pub c: Vec<usize>,
}

impl MassObject {
    pub fn new(k: Ordinal, c: Vec<usize>) -> Result<Self> {
        if c.iter().any(|&v| v > k.0) {
            return Err(Error::shape(format!("colors {c:?} exceed {k}")));
        }
        Ok(MassObject { k, c })
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn as_tens(&self) -> TensObject {
        TensObject {
            k: self.k,
            c_minus: self.c.clone(),
            c_plus: self.c.clone(),
        }
    }

    /// All objects with `n <= max_n`, `k <= max_k`.
    pub fn enumerate(max_n: usize, max_k: usize) -> Vec<MassObject> {
        let mut out = Vec::new();
        for k in 0..=max_k {
            for n in 0..=max_n {
                for code in 0..(k + 1).pow(n as u32) {
                    let mut c = Vec::with_capacity(n);
                    let mut x = code;
                    for _ in 0..n {
                        c.push(x % (k + 1));
                        x /= k + 1;
                    }
                    c.reverse();
                    out.push(MassObject { k: Ordinal(k), c });
                }
            }
        }
        out
    }
}

impl fmt::Display for MassObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(⟨{}⟩,{},{:?})", self.n(), self.k, self.c)
    }
}

/// `λ ∘ c' ∘ α = c` wherever `α` is defined.
pub fn is_commuting_square(
    alpha: &AssMorphism,
    lambda: &MonotoneMap,
    src: &MassObject,
    dst: &MassObject,
) -> bool {
    (0..src.n()).all(|i| match alpha.apply(i) {
        Some(j) => lambda.apply(dst.c[j]) == src.c[i],
        None => true,
    })
}

/// All MAss⊗ morphisms `src -> dst`.
pub fn mass_morphisms(src: &MassObject, dst: &MassObject) -> Vec<TensMorphism> {
    tens_morphisms(&src.as_tens(), &dst.as_tens(), EmptyFiberRule::Unit)
}

/// An object `(⟨n'⟩, α', α'', c')` of the slice category of a factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SliceObject {
    pub alpha1: AssMorphism,
    pub alpha2: AssMorphism,
    pub c: Vec<usize>,
}

impl fmt::Display for SliceObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(α'={}, α''={}, c'={:?})",
            self.alpha1, self.alpha2, self.c
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceVerdict {
    pub terminal: SliceObject,
    pub objects: usize,
    pub candidates_checked: usize,
    /// Objects whose hom-set into the candidate does not have exactly one element.
    pub non_unique: Vec<(SliceObject, usize)>,
    pub connected: bool,
}

impl SliceVerdict {
    pub fn passed(&self) -> bool {
        self.non_unique.is_empty() && self.connected
    }
}

/// The input of the slice construction: a MAss⊗ morphism `(α, λ): c -> c''`
/// and a factorization `λ = λ' ∘ λ''` through `[k']`.
#[derive(Debug, Clone)]
pub struct SliceInput<'a> {
    pub c: &'a MassObject,
    pub c2: &'a MassObject,
    pub alpha: &'a AssMorphism,
    /// `λ': [k'] -> [k]`.
    pub lambda1: &'a MonotoneMap,
    /// `λ'': [k''] -> [k']`.
    pub lambda2: &'a MonotoneMap,
}

/// How hom-sets `x -> T` into the candidate terminal object are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomScan {
    /// Test every Ass⊗ map `⟨n'_x⟩ -> ⟨n''⟩`.
    Full,
    /// `α''_T` is the identity, so a morphism `γ: x -> T` satisfies
    /// `γ = γ∘α''_T = α''_x`; only that one candidate is tested.
    UnitLaw,
}

/// Returns the object `(⟨n''⟩, α, id, λ''∘c'')` and verifies by enumeration
/// (objects with `n' <= max_n`) that it is terminal.
pub fn mass_slice_terminal(input: &SliceInput<'_>, max_n: usize) -> Result<SliceVerdict> {
    mass_slice_terminal_with(input, max_n, HomScan::Full)
}

pub fn mass_slice_terminal_with(
    input: &SliceInput<'_>,
    max_n: usize,
    scan: HomScan,
) -> Result<SliceVerdict> {
    mass_slice_terminal_in(input, &SliceShapes::new(input.alpha, max_n), scan)
}

/// The `(α', α'')` parts of slice objects over a fixed `α`, shared by every
/// factorization of every `λ` that `α` lies over.
#[derive(Debug, Clone)]
pub struct SliceShapes {
    alpha: AssMorphism,
    /// `into_target[n']` lists the Ass⊗ maps `⟨n'⟩ -> ⟨n''⟩`.
    into_target: Vec<Vec<AssMorphism>>,
    /// `factors[n'][i]` lists the `α'` with `into_target[n'][i] ∘ α' = α`.
    factors: Vec<Vec<Vec<AssMorphism>>>,
}

impl SliceShapes {
    pub fn new(alpha: &AssMorphism, max_n: usize) -> Self {
        let into_target: Vec<Vec<AssMorphism>> = (0..=max_n.max(alpha.target()))
            .map(|np| ass_morphisms(np, alpha.target()))
            .collect();
        let factors = into_target
            .iter()
            .map(|cs| cs.iter().map(|a2| factorizations(alpha, a2)).collect())
            .collect();
        SliceShapes {
            alpha: alpha.clone(),
            into_target,
            factors,
        }
    }
}

/// [`mass_slice_terminal_with`] over precomputed shapes for `input.alpha`.
pub fn mass_slice_terminal_in(
    input: &SliceInput<'_>,
    shapes: &SliceShapes,
    scan: HomScan,
) -> Result<SliceVerdict> {
    if shapes.alpha != *input.alpha {
        return Err(Error::shape("slice shapes were built for a different α"));
    }
    let SliceInput {
        c,
        c2,
        alpha,
        lambda1,
        lambda2,
    } = *input;
    if lambda1.target() != c.k || lambda2.source() != c2.k || lambda2.target() != lambda1.source() {
        return Err(Error::shape(format!(
            "λ' = {lambda1}, λ'' = {lambda2} do not factor a map {} -> {}",
            c2.k, c.k
        )));
    }
    if alpha.source() != c.n() || alpha.target() != c2.n() {
        return Err(Error::shape(format!(
            "α = {alpha} does not connect {c} and {c2}"
        )));
    }
    let lambda = compose(lambda2, lambda1)?;
    if !is_commuting_square(alpha, &lambda, c, c2) {
        return Err(Error::validation(
            "mass-morphism",
            format!("({alpha}, {lambda}) is not a morphism {c} -> {c2}"),
        ));
    }
    let kp = lambda1.source();
    let terminal = SliceObject {
        alpha1: alpha.clone(),
        alpha2: AssMorphism::identity(c2.n()),
        c: c2.c.iter().map(|&v| lambda2.apply(v)).collect(),
    };
    let into_c2 = &shapes.into_target;
    let mut objects = 0;
    let mut candidates_checked = 0;
    let mut non_unique = Vec::new();
    let mut reaches = 0;
    let mut terminal_found = false;
    for (candidates, factors) in into_c2.iter().zip(&shapes.factors) {
        for (alpha2, alpha1s) in candidates.iter().zip(factors) {
            for alpha1 in alpha1s {
                let options = color_options(alpha1, alpha2, input, kp);
                if options.iter().any(Vec::is_empty) {
                    continue;
                }
                let mut pick = vec![0usize; options.len()];
                let mut cp: Vec<usize> = options.iter().map(|o| o[0]).collect();
                loop {
                    objects += 1;
                    let is_terminal =
                        *alpha1 == terminal.alpha1 && *alpha2 == terminal.alpha2 && cp == terminal.c;
                    terminal_found |= is_terminal;
                    let homs = match scan {
                        HomScan::Full => {
                            let candidates = &into_c2[alpha2.source()];
                            candidates_checked += candidates.len();
                            candidates
                                .iter()
                                .filter(|g| slice_morphism_from(g, alpha1, alpha2, &cp, &terminal))
                                .count()
                        }
                        HomScan::UnitLaw => {
                            candidates_checked += 1;
                            usize::from(slice_morphism_from(alpha2, alpha1, alpha2, &cp, &terminal))
                        }
                    };
                    if homs > 0 {
                        reaches += 1;
                    }
                    if homs != 1 {
                        let x = SliceObject { alpha1: alpha1.clone(), alpha2: alpha2.clone(), c: cp.clone() };
                        non_unique.push((x, homs));
                    }
                    // Advance the odometer over the color options.
                    let mut p = 0;
                    while p < pick.len() {
                        pick[p] += 1;
                        if pick[p] < options[p].len() {
                            cp[p] = options[p][pick[p]];
                            break;
                        }
                        pick[p] = 0;
                        cp[p] = options[p][0];
                        p += 1;
                    }
                    if p == pick.len() {
                        break;
                    }
                }
            }
        }
    }
    if !terminal_found {
        non_unique.push((terminal.clone(), 0));
    }
    Ok(SliceVerdict {
        terminal,
        objects,
        candidates_checked,
        non_unique,
        connected: reaches == objects && terminal_found,
    })
}

/// `γ` is a morphism `x -> y` when `γ∘α'_x = α'_y`, `α''_y∘γ = α''_x` and
/// `c'_y∘γ = c'_x` wherever `γ` is defined.
pub fn is_slice_morphism(g: &AssMorphism, x: &SliceObject, y: &SliceObject) -> bool {
    slice_morphism_from(g, &x.alpha1, &x.alpha2, &x.c, y)
}

fn slice_morphism_from(g: &AssMorphism, alpha1: &AssMorphism, alpha2: &AssMorphism, c: &[usize], y: &SliceObject) -> bool {
    g.source() == alpha2.source()
        && g.target() == y.alpha2.source()
        && (0..g.source()).all(|p| g.apply(p).is_none_or(|q| y.c[q] == c[p]))
        && g.then_is(&y.alpha2, alpha2)
        && alpha1.then_is(g, &y.alpha1)
}

/// All `α'` with `α'' ∘ α' = α` (as Ass⊗ morphisms, fiber orders included).
pub fn factorizations(alpha: &AssMorphism, alpha2: &AssMorphism) -> Vec<AssMorphism> {
    let n = alpha.source();
    let np = alpha2.source();
    // Points of ⟨n'⟩ not sent to a point by α''.
    let dropped: Vec<usize> = (0..np).filter(|&p| alpha2.apply(p).is_none()).collect();
    // Each α-fiber over l is cut into consecutive blocks, one per point of
    // the α''-fiber over l.
    let mut per_target: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
    for l in 0..alpha.target() {
        per_target.push(splits(alpha.fiber(l), alpha2.fiber(l).len()));
    }
    let based: Vec<usize> = (0..n).filter(|&i| alpha.apply(i).is_none()).collect();
    let mut out = Vec::new();
    let mut fibers = vec![Vec::new(); np];
    assign_blocks(alpha2, &per_target, 0, &mut fibers, &mut |fibers| {
        distribute(&based, 0, &dropped, fibers, &mut out, n)
    });
    out
}

fn assign_blocks(
    alpha2: &AssMorphism,
    per_target: &[Vec<Vec<Vec<usize>>>],
    l: usize,
    fibers: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&mut Vec<Vec<usize>>),
) {
    if l == per_target.len() {
        emit(fibers);
        return;
    }
    for split in &per_target[l] {
        for (b, block) in split.iter().enumerate() {
            fibers[alpha2.fiber(l)[b]] = block.clone();
        }
        assign_blocks(alpha2, per_target, l + 1, fibers, emit);
    }
}

/// Ways to cut `seq` into `parts` consecutive (possibly empty) blocks.
fn splits(seq: &[usize], parts: usize) -> Vec<Vec<Vec<usize>>> {
    if parts == 0 {
        return if seq.is_empty() { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![seq.to_vec()]];
    }
    let mut out = Vec::new();
    for cut in 0..=seq.len() {
        for mut rest in splits(&seq[cut..], parts - 1) {
            rest.insert(0, seq[..cut].to_vec());
            out.push(rest);
        }
    }
    out
}

/// Sends each point of `based` to the base point or, in some position, into
/// the fiber of a point in `dropped`.
fn distribute(
    based: &[usize],
    idx: usize,
    dropped: &[usize],
    fibers: &mut Vec<Vec<usize>>,
    out: &mut Vec<AssMorphism>,
    n: usize,
) {
    if idx == based.len() {
        out.push(AssMorphism::new(n, fibers.len(), fibers.clone()).expect("valid"));
        return;
    }
    let i = based[idx];
    distribute(based, idx + 1, dropped, fibers, out, n);
    for &p in dropped {
        for pos in 0..=fibers[p].len() {
            fibers[p].insert(pos, i);
            distribute(based, idx + 1, dropped, fibers, out, n);
            fibers[p].remove(pos);
        }
    }
}

/// The admissible values of `c'` at each point of `⟨n'⟩`; every choice
/// makes both squares commute.
fn color_options(
    alpha1: &AssMorphism,
    alpha2: &AssMorphism,
    input: &SliceInput<'_>,
    kp: Ordinal,
) -> Vec<Vec<usize>> {
    let np = alpha2.source();
    let mut options: Vec<Vec<usize>> = (0..np)
        .map(|p| match alpha2.apply(p) {
            Some(l) => vec![input.lambda2.apply(input.c2.c[l])],
            None => (0..=kp.0).collect(),
        })
        .collect();
    for i in 0..alpha1.source() {
        if let Some(p) = alpha1.apply(i) {
            options[p].retain(|&v| input.lambda1.apply(v) == input.c.c[i]);
        }
    }
    options
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::validate_tens_morphism;
    use crate::simplicial::monotone_maps;

    #[test]
    fn mass_validation_is_a_commuting_square() {
        let objs = MassObject::enumerate(2, 2);
        for src in &objs {
            for dst in &objs {
                for lambda in monotone_maps(dst.k, src.k) {
                    for alpha in ass_morphisms(src.n(), dst.n()) {
                        let m = TensMorphism {
                            alpha: alpha.clone(),
                            lambda: lambda.clone(),
                        };
                        let tens = validate_tens_morphism(
                            &m,
                            &src.as_tens(),
                            &dst.as_tens(),
                            EmptyFiberRule::Unit,
                        )
                        .unwrap();
                        assert_eq!(tens, is_commuting_square(&alpha, &lambda, src, dst));
                    }
                }
            }
        }
    }

    #[test]
    fn factorizations_match_brute_force() {
        for n in 0..=3 {
            for n2 in 0..=2 {
                for alpha in ass_morphisms(n, n2) {
                    for np in 0..=2 {
                        for alpha2 in ass_morphisms(np, n2) {
                            let mut fast = factorizations(&alpha, &alpha2);
                            let mut brute: Vec<AssMorphism> = ass_morphisms(n, np)
                                .into_iter()
                                .filter(|a1| a1.then(&alpha2).unwrap() == alpha)
                                .collect();
                            fast.sort();
                            brute.sort();
                            assert_eq!(fast, brute, "{alpha} via {alpha2}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identity_factorization_has_the_input_as_terminal() {
        let c = MassObject::new(Ordinal(1), vec![0, 1]).unwrap();
        let id = MonotoneMap::identity(Ordinal(1));
        let alpha = AssMorphism::identity(2);
        let v = mass_slice_terminal(
            &SliceInput {
                c: &c,
                c2: &c,
                alpha: &alpha,
                lambda1: &id,
                lambda2: &id,
            },
            3,
        )
        .unwrap();
        assert_eq!(v.terminal.c, c.c);
        assert!(v.passed(), "{:?}", v.non_unique);
    }

    #[test]
    fn face_factorization_with_collapse() {
        // λ = d⁰: [0] -> [1] factored as d⁰ ∘ id; α collapses ⟨2⟩ -> ⟨1⟩.
        let c = MassObject::new(Ordinal(1), vec![1, 1]).unwrap();
        let c2 = MassObject::new(Ordinal(0), vec![0]).unwrap();
        let alpha = AssMorphism::new(2, 1, vec![vec![0, 1]]).unwrap();
        let face = MonotoneMap::face(1, 0);
        let id = MonotoneMap::identity(Ordinal(0));
        let v = mass_slice_terminal(
            &SliceInput {
                c: &c,
                c2: &c2,
                alpha: &alpha,
                lambda1: &face,
                lambda2: &id,
            },
            3,
        )
        .unwrap();
        assert!(v.passed());
        assert!(v.objects > 1);
    }

    #[test]
    fn rejects_a_non_morphism() {
        let c = MassObject::new(Ordinal(1), vec![0]).unwrap();
        let c2 = MassObject::new(Ordinal(1), vec![1]).unwrap();
        let alpha = AssMorphism::identity(1);
        let id = MonotoneMap::identity(Ordinal(1));
        let r = mass_slice_terminal(
            &SliceInput {
                c: &c,
                c2: &c2,
                alpha: &alpha,
                lambda1: &id,
                lambda2: &id,
            },
            2,
        );
        assert!(matches!(r, Err(Error::Validation { .. })));
    }
}
