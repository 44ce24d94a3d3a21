use super::*;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn chain(n: usize) -> FiniteCategory {
    let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FiniteCategory::poset(format!("chain{n}"), names(n), &rel).unwrap()
}

/// 0 below 1 and 2, both below 3, and 3 below 4.
fn square_with_top() -> FiniteCategory {
    FiniteCategory::poset("square", names(5), &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
}

/// One object with an idempotent `e`.
fn idempotent() -> FiniteCategory {
    let arrows = vec![Arrow { name: "e".into(), src: 0, dst: 0 }];
    FiniteCategory::build("idem", names(1), arrows, &[(0, 0, 0)]).unwrap()
}

#[test]
fn twisted_arrow_object_counts() {
    let arrow = chain(2);
    assert_eq!(twisted_arrow(&arrow).total.objects().len(), 3);
    let c3 = chain(3);
    let tw = twisted_arrow(&c3);
    assert_eq!(tw.total.objects().len(), 6);
    let disc = FiniteCategory::discrete("d", names(4));
    let tw = twisted_arrow(&disc);
    assert_eq!(tw.total.objects().len(), 4);
    assert_eq!(tw.total.arrows().len(), 4);
}

#[test]
fn fibers_are_hom_sets_on_chain3() {
    let c = chain(3);
    let tw = twisted_arrow(&c);
    let mut pairs = 0;
    for x in 0..3 {
        for y in 0..3 {
            assert_eq!(tw.fiber(x, y).len(), usize::from(x <= y));
            pairs += 1;
        }
    }
    assert_eq!(pairs, 9);
    assert!(tw.check().passed());
}

#[test]
fn twisted_arrow_of_chain3_has_the_expected_morphisms() {
    // In a poset TwArr is the poset of intervals ordered by reverse
    // inclusion: [a,b] -> [a',b'] iff a <= a' <= b' <= b.
    let c = chain(3);
    let tw = twisted_arrow(&c);
    let mut expected = 0;
    for (a, b) in [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)] {
        for (a2, b2) in [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)] {
            if a <= a2 && b2 <= b {
                expected += 1;
            }
        }
    }
    assert_eq!(tw.total.arrows().len(), expected);
}

#[test]
fn universal_lifts_are_identities() {
    for c in [chain(3), square_with_top(), idempotent(), FiniteCategory::discrete("d", names(3))] {
        let tw = twisted_arrow(&c);
        let u = universal_objects(&tw);
        for x in 0..c.objects().len() {
            assert_eq!(u.left[x], Some(c.identity(x)), "{}", c.name());
            assert_eq!(u.right[x], Some(c.identity(x)), "{}", c.name());
        }
        let r = adjunction_check(&tw, &u);
        assert!(r.passed(), "{}: {:?}", c.name(), r.failures);
    }
}

#[test]
fn twarr_suite_passes_on_corpus_categories() {
    for c in [chain(3), chain(4), square_with_top(), idempotent(), FiniteCategory::discrete("d", names(2))] {
        let r = twarr_check(&c);
        assert!(r.passed(), "{}: {:?}", c.name(), r.failures);
        assert!(r.cases_checked > 0);
    }
}

#[test]
fn pushout_in_a_poset_with_constant_target() {
    let c = square_with_top();
    let tw = twisted_arrow(&c);
    let arrow = |s: &str| c.arrow_index(s).unwrap();
    let (f, g, h) = (arrow("0<=4"), arrow("1<=4"), arrow("2<=4"));
    let leg = |src: usize, dst: usize, u: &str| {
        tw.lifts(dst, arrow(u), c.identity(4)).into_iter().find(|&m| tw.total.arrow(m).src == src).unwrap()
    };
    let ids = [f, g, h].map(|x| tw.total.identity(x));
    let d = Diagram { shape: span_shape(), objects: vec![f, g, h], arrows: vec![ids[0], ids[1], ids[2], leg(f, g, "0<=1"), leg(f, h, "0<=2")] };
    match constant_target_colimit_check(&c, &tw, &d).unwrap() {
        ColimitVerdict::Verified { apex, cocones } => {
            assert_eq!(apex, "3<=4");
            assert!(cocones > 0);
        }
        v => panic!("{v}"),
    }
}

#[test]
fn non_constant_target_is_inapplicable() {
    let c = chain(3);
    let tw = twisted_arrow(&c);
    // 0<=2 -> 0<=1 has v = 1<=2, not an identity.
    let (f, g) = (c.arrow_index("0<=2").unwrap(), c.arrow_index("0<=1").unwrap());
    let m = tw.lifts(g, c.identity(0), c.arrow_index("1<=2").unwrap())[0];
    let shape = chain(2);
    let d = Diagram { shape, objects: vec![f, g], arrows: vec![tw.total.identity(f), tw.total.identity(g), m] };
    let v = constant_target_colimit_check(&c, &tw, &d).unwrap();
    assert_eq!(v.to_string(), "inapplicable: target not constant");
}

#[test]
fn missing_colimit_is_inapplicable() {
    // 1 and 2 sit above 0 and below both 3 and 4, so the span 1 <- 0 -> 2
    // has two minimal upper bounds and no pushout.
    let c = FiniteCategory::poset("bowtie", names(6), &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
    let tw = twisted_arrow(&c);
    let arrow = |s: &str| c.arrow_index(s).unwrap();
    let (f, g, h) = (arrow("0<=5"), arrow("1<=5"), arrow("2<=5"));
    let leg = |src: usize, dst: usize, u: &str| {
        tw.lifts(dst, arrow(u), c.identity(5)).into_iter().find(|&m| tw.total.arrow(m).src == src).unwrap()
    };
    let ids = [f, g, h].map(|x| tw.total.identity(x));
    let d = Diagram { shape: span_shape(), objects: vec![f, g, h], arrows: vec![ids[0], ids[1], ids[2], leg(f, g, "0<=1"), leg(f, h, "0<=2")] };
    let v = constant_target_colimit_check(&c, &tw, &d).unwrap();
    assert_eq!(v.to_string(), "inapplicable: source diagram has no colimit");

    let pair = Diagram { shape: FiniteCategory::discrete("pair", names(2)), objects: vec![g, h], arrows: vec![ids[1], ids[2]] };
    let v = constant_target_colimit_check(&c, &tw, &pair).unwrap();
    assert_eq!(v.to_string(), "inapplicable: diagram shape not connected");
    let ok = twarr_check(&c);
    assert!(ok.passed(), "{:?}", ok.failures);
}

#[test]
fn invalid_categories_name_the_axiom() {
    let arrows = vec![Arrow { name: "e".into(), src: 0, dst: 0 }];
    let err = FiniteCategory::build("bad", names(1), arrows.clone(), &[]).unwrap_err();
    assert!(matches!(err, Error::Validation { ref axiom, .. } if axiom == "composition-total"), "{err}");
    // (f∘e)∘f = e∘f = f but f∘(e∘f) = f∘f = e.
    let two = vec![arrows[0].clone(), Arrow { name: "f".into(), src: 0, dst: 0 }];
    let table = [(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 0)];
    let err = FiniteCategory::build("bad", names(1), two, &table).unwrap_err();
    assert!(matches!(err, Error::Validation { ref axiom, .. } if axiom == "associativity"), "{err}");
    let err = FiniteCategory::poset("cycle", names(2), &[(0, 1), (1, 0)]).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn a_non_fibration_is_caught() {
    // chain3 over itself twice: the right leg is not even a functor into
    // the opposite category.
    let c = chain(3);
    let id = Functor { objects: (0..3).collect(), arrows: (0..c.arrows().len()).collect() };
    let p = PairingInstance { total: c.clone(), left: c.clone(), right: c.opposite(), to_left: id.clone(), to_right: id };
    let r = p.check();
    assert!(!r.passed());
}
