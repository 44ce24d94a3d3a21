use super::*;
use crate::corpus::{dg_dual_numbers, dual_numbers, exterior, exterior1, graded};
use crate::field::Q;

fn b(name: &str, degree: i64) -> BasisElement {
    BasisElement {
        name: name.into(),
        degree,
    }
}

fn q(v: i64) -> Q {
    Q::from_i64(v)
}

fn exterior_presentation(xx: Vec<Term<Q>>) -> AlgebraPresentation<Q> {
    AlgebraPresentation {
        name: "ext".into(),
        basis: vec![b("1", 0), b("x", 1)],
        unit: "1".into(),
        product: Some(vec![("x".into(), "x".into(), xx)]),
        differential: vec![],
        augmentation: None,
    }
}

#[test]
fn exterior_algebra_passes_every_axiom() {
    let a = exterior_presentation(vec![]).build().unwrap();
    let r = a.validate();
    assert!(r.passed());
    let names: Vec<&str> = r.checks.iter().map(|c| c.axiom.as_str()).collect();
    assert_eq!(names, ["unit", "associativity", "leibniz", "augmentation"]);
    assert!(r.checks.iter().all(|c| c.cases > 0));
}

#[test]
fn product_of_wrong_degree_is_rejected() {
    let err = exterior_presentation(vec![("x".into(), q(1))]).build().unwrap_err();
    match err {
        Error::Validation { axiom, detail } => {
            assert_eq!(axiom, "product-degree");
            assert!(detail.contains("x*x"), "{detail}");
        }
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn missing_product_table_names_the_axiom() {
    let mut p = exterior_presentation(vec![]);
    p.product = None;
    let err = p.build().unwrap_err();
    assert!(matches!(err, Error::Validation { ref axiom, .. } if axiom == "product-table"));
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn seeded_associativity_corruption_is_located() {
    // k[x]/x³ with |x| = 0, then corrupt x·x² so that (x·x)·x != x·(x·x).
    let basis = vec![b("1", 0), b("x", 0), b("x2", 0)];
    let mut product = vec![
        ("x".to_string(), "x".to_string(), vec![("x2".to_string(), q(1))]),
        ("x".to_string(), "x2".to_string(), vec![]),
        ("x2".to_string(), "x".to_string(), vec![]),
        ("x2".to_string(), "x2".to_string(), vec![]),
    ];
    let good = AlgebraPresentation {
        name: "poly".into(),
        basis: basis.clone(),
        unit: "1".into(),
        product: Some(product.clone()),
        differential: vec![],
        augmentation: None,
    };
    assert!(good.build().is_ok());
    product[2].2 = vec![("x2".to_string(), q(1))];
    let bad = AlgebraPresentation {
        product: Some(product),
        ..good
    };
    let err = bad.build().unwrap_err();
    match err {
        Error::Validation { axiom, detail } => {
            assert_eq!(axiom, "associativity");
            assert!(detail.contains("(x, x, x)"), "{detail}");
        }
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn seeded_action_corruption_is_located() {
    let a = Arc::new(exterior1::<Q>());
    let k = Arc::new(DgAlgebra::unit_algebra());
    // Λ(x) acting on span{m0, m1} with x m0 = m1, x m1 = m0: (x x) m0 = 0 != x(x m0).
    let p = ModulePresentation {
        name: "bad".into(),
        left: a.clone(),
        right: k.clone(),
        basis: vec![b("m0", 0), b("m1", 1), b("m2", 2)],
        differential: vec![],
        left_action: vec![
            ("x".into(), "m0".into(), vec![("m1".into(), q(1))]),
            ("x".into(), "m1".into(), vec![("m2".into(), q(1))]),
        ],
        right_action: vec![],
        sector: Sector::Algebra,
    };
    let err = p.build().unwrap_err();
    match err {
        Error::Validation { axiom, detail } => {
            assert_eq!(axiom, "left-associativity");
            assert!(detail.contains("(x, x, m0)"), "{detail}");
        }
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn nonadapted_augmentation_is_rejected() {
    let mut p = AlgebraPresentation {
        name: "dn".into(),
        basis: vec![b("1", 0), b("x", 0)],
        unit: "1".into(),
        product: Some(vec![]),
        differential: vec![],
        augmentation: Some(vec![("1".into(), q(1)), ("x".into(), q(2))]),
    };
    let err = p.build().unwrap_err();
    assert!(matches!(err, Error::Validation { ref axiom, .. } if axiom == "augmentation-adapted-basis"));
    p.augmentation = Some(vec![("1".into(), q(1))]);
    assert!(p.build().is_ok());
}

#[test]
fn corpus_algebras_validate() {
    for a in crate::corpus::algebras::<Q>() {
        assert!(a.validate().passed(), "{}", a.name());
    }
    let a = dg_dual_numbers::<Q>();
    assert_eq!(a.complex().homology_ranks(0, 1).iter().map(|h| h.rank).collect::<Vec<_>>(), [1, 1]);
}

#[test]
fn free_bimodule_over_units_is_the_generators() {
    let k = Arc::new(DgAlgebra::<Q>::unit_algebra());
    let e = crate::corpus::cone_of_identity::<Q>().direct_sum(&graded(2, &[3]));
    let m = free_bimodule(k.clone(), &e, k);
    assert_eq!(m.complex(), &e);
    assert!(m.validate().passed());
}

#[test]
fn free_bimodule_dimensions() {
    let a = Arc::new(exterior1::<Q>());
    let m = free_bimodule(a.clone(), &graded(0, &[1]), a.clone());
    assert_eq!((0..=2).map(|n| m.complex().dim(n)).collect::<Vec<_>>(), [1, 2, 1]);
    assert!(m.validate().passed());

    let b = Arc::new(dg_dual_numbers::<Q>());
    let m = free_bimodule(a.clone(), &crate::corpus::cone_of_identity(), b);
    let r = m.validate();
    assert!(r.passed(), "{:?}", r.first_failure());
    assert_eq!(m.complex().total_dim(), 2 * 2 * 4);
}

#[test]
fn free_left_module_dimensions() {
    let k = Arc::new(DgAlgebra::<Q>::unit_algebra());
    let e = graded(0, &[1, 2]);
    assert_eq!(free_left_module(k, &e).complex(), &e);
    let a = Arc::new(exterior("ext2", &[("x", 1), ("y", 2)]));
    let m = free_left_module(a.clone(), &e);
    assert!(m.validate().passed());
    let dims: Vec<usize> = (0..=4).map(|n| m.complex().dim(n)).collect();
    // A has dims 1,1,1,1 in degrees 0..3; E has 1,2 in degrees 0,1.
    assert_eq!(dims, [1, 3, 3, 3, 2]);
}

/// Hom of left modules out of `A ⊗ E` equals Hom of complexes out of `E`
/// (degree-0 maps to a fixed target), compared as solution-space dimensions.
#[test]
fn free_left_module_is_left_adjoint_on_small_instances() {
    let a = Arc::new(exterior1::<Q>());
    let e = graded(0, &[1, 1]);
    let x = free_left_module(a.clone(), &graded(0, &[1]));
    let free = free_left_module(a.clone(), &e);
    let module_homs = hom_dim(&free, &x);
    let complex_homs = complex_hom_dim(&e, x.complex());
    assert_eq!(module_homs, complex_homs);
    let y = DgLeftModule::regular(Arc::new(dual_numbers::<Q>()));
    let free = free_left_module(y.algebra().clone(), &graded(0, &[2]));
    assert_eq!(hom_dim(&free, &y), complex_hom_dim(&graded(0, &[2]), y.complex()));
}

/// Dimension of the space of degree-0 chain maps `src -> tgt` commuting with the action.
fn hom_dim(src: &DgLeftModule<Q>, tgt: &DgLeftModule<Q>) -> usize {
    let constraints = linear_constraints(src.complex(), tgt.complex(), Some((src, tgt)));
    constraints.0 - constraints.1
}

fn complex_hom_dim(src: &ChainComplex<Q>, tgt: &ChainComplex<Q>) -> usize {
    let c = linear_constraints(src, tgt, None);
    c.0 - c.1
}

/// Returns (number of unknowns, rank of the constraint system).
fn linear_constraints(
    s: &ChainComplex<Q>,
    t: &ChainComplex<Q>,
    modules: Option<(&DgLeftModule<Q>, &DgLeftModule<Q>)>,
) -> (usize, usize) {
    // Unknowns: entries f_n[r][c] for every degree n.
    let mut offset = BTreeMap::new();
    let mut n_unknowns = 0;
    let lo = s.lo().min(t.lo());
    let hi = s.hi().max(t.hi());
    for n in lo..=hi {
        offset.insert(n, n_unknowns);
        n_unknowns += s.dim(n) * t.dim(n);
    }
    let var = |n: i64, r: usize, c: usize| offset[&n] + r * s.dim(n) + c;
    let mut rows: Vec<SparseVec<Q>> = Vec::new();
    // d f = f d.
    for n in lo..=hi {
        for c in 0..s.dim(n) {
            for r in 0..t.dim(n - 1) {
                let mut acc = Accumulator::new();
                for k in 0..t.dim(n) {
                    let dk = t.d(n).get(r, k);
                    if !dk.is_zero() {
                        acc.add(var(n, k, c), dk);
                    }
                }
                for (k, dk) in s.d(n).column(c) {
                    acc.add(var(n - 1, r, *k), -dk.clone());
                }
                rows.push(acc.finish());
            }
        }
    }
    if let Some((ms, mt)) = modules {
        let a = ms.algebra().complex();
        for p in a.degrees() {
            for i in 0..a.dim(p) {
                for n in lo..=hi {
                    for c in 0..s.dim(n) {
                        // f(a·e_c) = a·f(e_c), coordinate r.
                        for r in 0..t.dim(n + p) {
                            let mut acc = Accumulator::new();
                            for (k, v) in ms.action().basis(p, i, n, c) {
                                acc.add(var(n + p, r, *k), v.clone());
                            }
                            for k in 0..t.dim(n) {
                                let col = mt.action().basis(p, i, n, k);
                                if let Some((_, v)) = col.iter().find(|(x, _)| *x == r) {
                                    acc.add(var(n, k, c), -v.clone());
                                }
                            }
                            rows.push(acc.finish());
                        }
                    }
                }
            }
        }
    }
    let rank = crate::linalg::Echelon::from_vectors(rows).dim();
    (n_unknowns, rank)
}

#[test]
fn restriction_along_identity_unit_and_augmentation() {
    let a = Arc::new(exterior1::<Q>());
    let m = DgLeftModule::regular(a.clone());
    let id = AlgebraMap::identity(a.clone());
    assert_eq!(restrict_scalars(&id, &m).unwrap(), m);

    let u = AlgebraMap::unit(a.clone());
    assert!(u.validate().passed());
    let r = restrict_scalars(&u, &m).unwrap();
    assert_eq!(r.complex(), a.complex());
    assert!(r.validate().passed());
    assert!(r.algebra().is_trivial());

    let eps = AlgebraMap::augmentation(a.clone());
    assert!(eps.validate().passed());
    let k = DgLeftModule::trivial(eps.target().clone());
    let r = restrict_scalars(&eps, &k).unwrap();
    assert!(r.validate().passed());
    assert_eq!(r, DgLeftModule::trivial(a.clone()));
}

#[test]
fn restriction_rejects_mismatched_module() {
    let a = Arc::new(exterior1::<Q>());
    let b = Arc::new(dual_numbers::<Q>());
    let m = DgLeftModule::regular(b);
    assert!(restrict_scalars(&AlgebraMap::identity(a), &m).is_err());
}

#[test]
fn multimodule_side_matching() {
    let three = crate::corpus::three_module::<Q>().unwrap();
    assert_eq!(three.len(), 3);
    assert!(three.validate().passed());
    let a = Arc::new(exterior1::<Q>());
    let k = Arc::new(DgAlgebra::<Q>::unit_algebra());
    let m = DgBimodule::regular(a.clone());
    let err = Multimodule::new(vec![k.clone(), a.clone()], vec![m]).unwrap_err();
    assert!(matches!(err, Error::Validation { ref axiom, .. } if axiom == "side-matching"));
}
