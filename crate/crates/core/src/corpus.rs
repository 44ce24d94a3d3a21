//! Small named algebras and modules used by the examples, the command line
//! and the test suites.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chains::ChainComplex;
use crate::dgalg::{
    free_bimodule, AlgebraPresentation, BasisElement, DgAlgebra, DgBimodule, Multimodule,
};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::Matrix;

fn subset_name(gens: &[(&str, i64)], s: u32) -> String {
    if s == 0 {
        return "1".into();
    }
    gens.iter()
        .enumerate()
        .filter(|(i, _)| s >> i & 1 == 1)
        .map(|(_, g)| g.0)
        .collect()
}

/// The exterior algebra on generators of the given degrees: basis the
/// subsets, `x_i x_j = (-1)^{|x_i||x_j|} x_j x_i` and `x_i² = 0`, zero
/// differential.
pub fn exterior<F: Field>(name: &str, gens: &[(&str, i64)]) -> DgAlgebra<F> {
    let k = gens.len();
    let deg = |s: u32| -> i64 { (0..k).filter(|i| s >> i & 1 == 1).map(|i| gens[i].1).sum() };
    let basis = (0..1u32 << k)
        .map(|s| BasisElement {
            name: subset_name(gens, s),
            degree: deg(s),
        })
        .collect();
    let mut product = Vec::new();
    for s in 1..1u32 << k {
        for t in 1..1u32 << k {
            if s & t != 0 {
                continue;
            }
            // Moving each generator of t past the larger generators of s.
            let mut odd = false;
            for j in 0..k {
                if t >> j & 1 == 1 {
                    for i in j + 1..k {
                        if s >> i & 1 == 1 && gens[i].1 * gens[j].1 % 2 != 0 {
                            odd = !odd;
                        }
                    }
                }
            }
            product.push((
                subset_name(gens, s),
                subset_name(gens, t),
                vec![(subset_name(gens, s | t), F::sign(odd))],
            ));
        }
    }
    AlgebraPresentation {
        name: name.into(),
        basis,
        unit: "1".into(),
        product: Some(product),
        differential: Vec::new(),
        augmentation: None,
    }
    .build()
    .expect("exterior algebras are valid")
}

/// `Λ(x)` with `|x| = 1`.
pub fn exterior1<F: Field>() -> DgAlgebra<F> {
    exterior("exterior1", &[("x", 1)])
}

/// `k[x]/x²` with `|x| = 0`.
pub fn dual_numbers<F: Field>() -> DgAlgebra<F> {
    exterior("dual_numbers", &[("x", 0)])
}

/// `k[x]/x^n` with `|x| = degree`.
pub fn truncated_polynomial<F: Field>(name: &str, degree: i64, n: usize) -> DgAlgebra<F> {
    let pw = |i: usize| match i {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x{i}"),
    };
    let basis = (0..n)
        .map(|i| BasisElement {
            name: pw(i),
            degree: degree * i as i64,
        })
        .collect();
    let mut product = Vec::new();
    for i in 1..n {
        for j in 1..n {
            let terms = if i + j < n {
                vec![(pw(i + j), F::one())]
            } else {
                Vec::new()
            };
            product.push((pw(i), pw(j), terms));
        }
    }
    AlgebraPresentation {
        name: name.into(),
        basis,
        unit: "1".into(),
        product: Some(product),
        differential: Vec::new(),
        augmentation: None,
    }
    .build()
    .expect("truncated polynomial algebras are valid")
}

/// `k[y]/y² ⊗ Λ(x)` with `|y| = 0`, `|x| = 1` and `dx = y`: an augmented
/// algebra with nonzero differential.
pub fn dg_dual_numbers<F: Field>() -> DgAlgebra<F> {
    let b = |n: &str, d| BasisElement {
        name: n.into(),
        degree: d,
    };
    let one = || F::one();
    AlgebraPresentation {
        name: "dg_dual_numbers".into(),
        basis: vec![b("1", 0), b("y", 0), b("x", 1), b("xy", 1)],
        unit: "1".into(),
        product: Some(vec![
            ("y".into(), "y".into(), vec![]),
            ("y".into(), "x".into(), vec![("xy".into(), one())]),
            ("x".into(), "y".into(), vec![("xy".into(), one())]),
            ("x".into(), "x".into(), vec![]),
            ("y".into(), "xy".into(), vec![]),
            ("xy".into(), "y".into(), vec![]),
            ("x".into(), "xy".into(), vec![]),
            ("xy".into(), "x".into(), vec![]),
            ("xy".into(), "xy".into(), vec![]),
        ]),
        differential: vec![("x".into(), vec![("y".into(), one())])],
        augmentation: None,
    }
    .build()
    .expect("dg dual numbers are valid")
}

/// The algebras shipped as examples, by name.
pub fn algebras<F: Field>() -> Vec<DgAlgebra<F>> {
    vec![
        DgAlgebra::unit_algebra(),
        exterior1(),
        dual_numbers(),
        exterior("exterior2", &[("x", 1), ("y", 1)]),
        truncated_polynomial("truncated_poly3", 2, 3),
        dg_dual_numbers(),
    ]
}

/// A complex with the given dimensions starting in degree `lo` and zero
/// differential.
pub fn graded<F: Field>(lo: i64, dims: &[usize]) -> ChainComplex<F> {
    ChainComplex::from_dims(lo, dims.to_vec())
}

/// `k → k` in degrees 1 → 0: an acyclic complex.
pub fn cone_of_identity<F: Field>() -> ChainComplex<F> {
    ChainComplex::new(
        0,
        vec![1, 1],
        vec![Matrix::zero(0, 1), Matrix::identity(1)],
    )
    .expect("d² = 0")
}

/// Left modules over `a` used as examples: the regular module, the trivial
/// module, two free modules and a trivial-action module.
pub fn left_modules<F: Field>(a: &Arc<DgAlgebra<F>>) -> Vec<crate::dgalg::DgLeftModule<F>> {
    use crate::dgalg::{free_left_module, DgLeftModule};
    vec![
        DgLeftModule::regular(a.clone()),
        DgLeftModule::trivial(a.clone()),
        free_left_module(a.clone(), &graded(0, &[1, 1])),
        free_left_module(a.clone(), &cone_of_identity()),
        DgLeftModule::with_trivial_action(a.clone(), graded(0, &[1, 0, 2])),
    ]
}

/// The 3-module `𝟙 M Λ(x) N Λ(y) P 𝟙` with `M`, `N` free and `P` the
/// trivial bimodule.
pub fn three_module<F: Field>() -> Result<Multimodule<F>> {
    let k = Arc::new(DgAlgebra::unit_algebra());
    let lam = Arc::new(exterior1::<F>());
    let dn = Arc::new(exterior::<F>("exterior1b", &[("y", 1)]));
    let e = graded(0, &[1, 1]);
    let m = free_bimodule(k.clone(), &e, lam.clone());
    let n = free_bimodule(lam.clone(), &graded(0, &[1]), dn.clone());
    let p = DgBimodule::trivial(dn.clone(), k.clone());
    Multimodule::new(vec![k.clone(), lam, dn, k], vec![m, n, p])
}

/// Names of the basis vectors of an algebra, in order, by degree.
pub fn basis_names<F: Field>(a: &DgAlgebra<F>) -> BTreeMap<i64, Vec<String>> {
    a.complex()
        .degrees()
        .map(|n| (n, (0..a.complex().dim(n)).map(|i| a.basis_name(n, i)).collect()))
        .collect()
}
