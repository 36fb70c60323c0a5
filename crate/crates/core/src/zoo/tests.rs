use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

fn group(spec: GroupSpec) -> Group {
    Group::new(spec).unwrap()
}

fn dinf() -> Group {
    group(GroupSpec::dihedral())
}

fn bs(m: i64) -> Group {
    group(GroupSpec::baumslag_solitar(m))
}

fn affine(n: i64, t: i64) -> Element {
    Element::Affine(Affine {
        numerator: n.into(),
        denominator_exp: 0,
        height: t.into(),
    })
}

fn zoo() -> Vec<Group> {
    vec![
        group(GroupSpec::free(2)),
        group(GroupSpec::cyclic(6)),
        group(GroupSpec::cyclic(0)),
        group(GroupSpec::free_product(&[2, 3, 0])),
        dinf(),
        bs(-2),
        bs(-1),
        bs(2),
        bs(3),
        group(GroupSpec::product(
            GroupSpec::cyclic(3),
            GroupSpec::dihedral(),
        )),
        group(GroupSpec::product(
            GroupSpec::dihedral(),
            GroupSpec::dihedral(),
        )),
        group(GroupSpec::abelian(1, &[2, 6])),
    ]
}

#[test]
fn dihedral_multiplication() {
    let d = dinf();
    let k = Element::dihedral(1, false);
    let g = Element::dihedral(0, true);
    assert_eq!(d.mul(&k, &k), Element::dihedral(2, false));
    assert_eq!(d.mul(&g, &d.mul(&k, &g)), Element::dihedral(-1, false));
}

#[test]
fn bs_conjugation_relation() {
    let b = bs(-2);
    let k = affine(1, 0);
    let g = affine(0, 1);
    assert_eq!(b.conjugate(&g, &k), affine(-2, 0));
    for m in [-5i64, -3, -2, -1, 1, 2, 4] {
        let b = bs(m);
        assert_eq!(b.conjugate(&g, &k), affine(m, 0), "m = {m}");
    }
}

#[test]
fn from_word_examples() {
    let b = bs(-1);
    assert!(b.is_identity(&b.parse("g k g^-1 k").unwrap()));
    let fp = group(GroupSpec::free_product(&[2, 3]));
    assert!(fp.is_identity(&fp.parse("a^2").unwrap()));
    let ab = group(GroupSpec::abelian_named(1, &[], &["x"]));
    assert!(ab.is_identity(&ab.parse("x^3 x^-3").unwrap()));
    assert!(matches!(
        fp.parse("c"),
        Err(GroupError::Word(WordError::UnknownGenerator(_)))
    ));
}

#[test]
fn order_examples() {
    let d = dinf();
    assert_eq!(d.order(&Element::dihedral(5, true)), Order::Finite(2));
    assert_eq!(d.order(&Element::dihedral(1, false)), Order::Infinite);
    let z6 = group(GroupSpec::cyclic(6));
    assert_eq!(z6.order(&Element::integer(4)), Order::Finite(3));
    assert_eq!(
        z6.order_bounded(&Element::integer(4), 1),
        BoundedOrder::Finite(3)
    );
    assert_eq!(
        d.order_bounded(&Element::dihedral(1, false), 10),
        BoundedOrder::Infinite
    );
    assert_eq!(
        d.order_by_powers(&Element::dihedral(1, false), 10),
        BoundedOrder::NotFoundWithin(10)
    );
}

#[test]
fn free_product_orders_use_cyclic_reduction() {
    let fp = group(GroupSpec::free_product(&[2, 3]));
    let order = |w: &str| fp.order(&fp.parse(w).unwrap());
    assert_eq!(order("b a b a b^-1 a b^-1"), Order::Finite(2));
    assert_eq!(order("b a b^2"), Order::Finite(2));
    assert_eq!(order("a b a b^-1 a"), Order::Finite(2));
    assert_eq!(order("a b a"), Order::Finite(3));
    assert_eq!(order("a b"), Order::Infinite);
    assert_eq!(order("1"), Order::Finite(1));
}

/// Enumerates all words of length <= r over the given letters and collects
/// their values, independently of the layered breadth-first search.
fn brute_force_ball(g: &Group, r: usize) -> BTreeSet<Element> {
    let mut letters = Vec::new();
    for x in g.generators() {
        letters.push(g.inv(&x));
        letters.push(x);
    }
    let mut all = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    for _ in 0..r {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &letters {
                next.push(g.mul(x, s));
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

#[test]
fn ball_examples() {
    for g in zoo() {
        assert_eq!(g.ball(0), vec![g.identity()]);
    }
    let z = group(GroupSpec::free_named(&["x"]));
    let rendered: Vec<String> = z.ball(2).iter().map(|e| z.render(e)).collect();
    assert_eq!(rendered, ["1", "x^-1", "x", "x^-2", "x^2"]);

    let d = dinf();
    let oracle = brute_force_ball(&d, 2);
    assert_eq!(oracle.len(), 8);
    let ball = d.ball(2);
    assert_eq!(ball.len(), 8);
    assert_eq!(ball.iter().cloned().collect::<BTreeSet<_>>(), oracle);
}

#[test]
fn balls_match_brute_force_and_are_sorted_by_length() {
    for g in zoo() {
        let with_len = g.ball_with_lengths(3);
        let set: BTreeSet<_> = with_len.iter().map(|(x, _)| x.clone()).collect();
        assert_eq!(set.len(), with_len.len(), "{g}: duplicates");
        assert_eq!(set, brute_force_ball(&g, 3), "{g}");
        assert!(with_len
            .windows(2)
            .all(|w| (w[0].1, &w[0].0) < (w[1].1, &w[1].0)));
    }
}

#[test]
fn abelianization_examples() {
    let b = bs(-1);
    assert_eq!(b.abelianization().orders(), &[0, 2]);
    assert_eq!(
        b.abelianization_image(&affine(0, 1)),
        vec![1.into(), 0.into()]
    );
    let d = dinf();
    assert_eq!(
        d.abelianization_image(&Element::dihedral(1, false)),
        vec![1.into(), 1.into()]
    );
    for g in zoo() {
        assert_eq!(
            g.abelianization_image(&g.identity()),
            g.abelianization().zero()
        );
    }
}

#[test]
fn dinf_iso_examples() {
    let model = dihedral_word_model();
    assert_eq!(
        dinf_iso(&Element::dihedral(0, true)),
        model.parse("s").unwrap()
    );
    let st = dinf_iso(&Element::dihedral(1, false));
    assert_eq!(st, model.parse("s t").unwrap());
    assert!(!model.is_identity(&model.mul(&st, &st)));
    let s = model.parse("s").unwrap();
    assert_eq!(model.conjugate(&s, &st), model.inv(&st));
    assert_eq!(dinf_iso(&dinf().identity()), model.identity());
    assert_eq!(model.render(&model.identity()), "1");
}

#[test]
fn relators_evaluate_to_identity() {
    for g in zoo() {
        for r in g.relators() {
            assert!(g.is_identity(&g.from_word(&r).unwrap()), "{g}: {r}");
        }
    }
}

#[test]
fn product_alphabets_are_qualified() {
    let g = group(GroupSpec::product(
        GroupSpec::dihedral(),
        GroupSpec::dihedral(),
    ));
    let names: Vec<_> = g
        .alphabet()
        .generators()
        .iter()
        .map(|x| x.to_string())
        .collect();
    assert_eq!(names, ["k_1", "g_1", "k_2", "g_2"]);
    let x = g.parse("k_1 k_2 g_1").unwrap();
    assert_eq!(
        x,
        Element::pair(Element::dihedral(1, true), Element::dihedral(1, false))
    );
    assert_eq!(g.render(&x), "k_1 g_1 k_2");
}

#[test]
fn invalid_specs_rejected() {
    for spec in [
        GroupSpec::free(0),
        GroupSpec::baumslag_solitar(0),
        GroupSpec::free_product(&[]),
        GroupSpec::abelian(1, &[2, 3]),
        GroupSpec::abelian(0, &[1]),
        GroupSpec::free_named(&["a", "a"]),
        GroupSpec::Free {
            rank: 2,
            generators: Some(vec!["a".into()]),
        },
    ] {
        assert!(Group::new(spec.clone()).is_err(), "{spec:?}");
    }
}

#[test]
fn family_mismatch_is_reported() {
    let d = dinf();
    assert!(d.try_mul(&Element::integer(1), &d.identity()).is_err());
    assert!(d.try_inv(&affine(1, 0)).is_err());
    let z3 = group(GroupSpec::cyclic(3));
    assert!(z3.check(&Element::integer(3)).is_err());
    assert!(bs(2)
        .check(&Element::Affine(Affine {
            numerator: 4.into(),
            denominator_exp: 1,
            height: 0.into()
        }))
        .is_err());
}

fn raw_word() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..8, -3i64..=3), 0..8)
}

fn element_of(g: &Group, raw: &[(usize, i64)]) -> Element {
    let gens = g.alphabet().generators();
    let w = Word::reduce(
        raw.iter()
            .map(|&(i, e)| (gens[i % gens.len()].clone(), BigInt::from(e))),
    );
    g.from_word(&w).unwrap()
}

proptest! {
    #[test]
    fn group_axioms(i in 0usize..12, a in raw_word(), b in raw_word(), c in raw_word()) {
        let g = &zoo()[i];
        let (x, y, z) = (element_of(g, &a), element_of(g, &b), element_of(g, &c));
        for e in [&x, &y, &z] {
            prop_assert!(g.check(e).is_ok());
        }
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.identity()), x.clone());
        prop_assert_eq!(g.mul(&g.identity(), &x), x.clone());
        prop_assert!(g.is_identity(&g.mul(&x, &g.inv(&x))));
        prop_assert!(g.is_identity(&g.mul(&g.inv(&x), &x)));
    }

    #[test]
    fn to_word_round_trips(i in 0usize..12, a in raw_word()) {
        let g = &zoo()[i];
        let x = element_of(g, &a);
        prop_assert_eq!(g.from_word(&g.to_word(&x)).unwrap(), x.clone());
        prop_assert_eq!(g.parse(&g.render(&x)).unwrap(), x);
    }

    #[test]
    fn from_word_is_a_homomorphism(i in 0usize..12, a in raw_word(), b in raw_word()) {
        let g = &zoo()[i];
        let gens = g.alphabet().generators();
        let word = |raw: &[(usize, i64)]| Word::reduce(
            raw.iter().map(|&(j, e)| (gens[j % gens.len()].clone(), BigInt::from(e))));
        let (u, v) = (word(&a), word(&b));
        prop_assert_eq!(
            g.from_word(&u.concat(&v)).unwrap(),
            g.mul(&g.from_word(&u).unwrap(), &g.from_word(&v).unwrap())
        );
    }

    #[test]
    fn abelianization_is_a_homomorphism(i in 0usize..12, a in raw_word(), b in raw_word()) {
        let g = &zoo()[i];
        let (x, y) = (element_of(g, &a), element_of(g, &b));
        let ab = g.abelianization();
        prop_assert_eq!(
            g.abelianization_image(&g.mul(&x, &y)),
            ab.add(&g.abelianization_image(&x), &g.abelianization_image(&y))
        );
    }

    #[test]
    fn exact_order_matches_brute_force(i in 0usize..12, a in raw_word()) {
        let g = &zoo()[i];
        let x = element_of(g, &a);
        match g.order(&x) {
            Order::Finite(n) => prop_assert_eq!(g.order_by_powers(&x, 64), BoundedOrder::Finite(n)),
            Order::Infinite => prop_assert_eq!(g.order_by_powers(&x, 64), BoundedOrder::NotFoundWithin(64)),
        }
    }

    #[test]
    fn dinf_iso_is_an_isomorphism(a in -20i64..20, e in any::<bool>(), b in -20i64..20, f in any::<bool>()) {
        let d = dinf();
        let model = dihedral_word_model();
        let (x, y) = (Element::dihedral(a, e), Element::dihedral(b, f));
        prop_assert_eq!(dinf_iso(&d.mul(&x, &y)), model.mul(&dinf_iso(&x), &dinf_iso(&y)));
        prop_assert_eq!(dinf_iso_inverse(&dinf_iso(&x)), x);
    }

    #[test]
    fn cyclic_reduction_is_a_conjugate(a in raw_word()) {
        let g = group(GroupSpec::free_product(&[2, 3, 0]));
        let x = element_of(&g, &a);
        let core = g.cyclically_reduce(&x).unwrap();
        prop_assert_eq!(g.order(&core), g.order(&x));
        prop_assert_eq!(g.abelianization_image(&core), g.abelianization_image(&x));
    }
}
