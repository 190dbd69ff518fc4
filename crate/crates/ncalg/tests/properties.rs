use ncalg::*;
use proptest::prelude::*;

/// Two vertices, arrows 1→2 (invertible), 2→1, and loops at both.
fn quiver() -> Algebra {
    let base = BaseRing::untyped(&["1", "2"]).unwrap();
    let g = |n: &str, t, h, inv| Generator { name: n.into(), tail: t, head: h, invertible: inv };
    Algebra::new(
        base,
        vec![g("a", 0, 1, true), g("b", 1, 0, false), g("x", 0, 0, true), g("y", 1, 1, false)],
    )
    .unwrap()
}

/// Random composable word from `start` of at most `len` letters.
fn word_strategy(start: u32, len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0u8..6, 0..=len).prop_map(move |picks| {
        let alg = quiver();
        let mut cur = start;
        let mut letters = Vec::new();
        for p in picks {
            let choices: Vec<Letter> = (0..alg.num_gens() as u32)
                .flat_map(|g| [Letter::new(g), Letter::inverse(g)])
                .filter(|l| !l.inv || alg.gen(l.gen).invertible)
                .filter(|l| alg.letter_tail(*l) == cur)
                .collect();
            let l = choices[p as usize % choices.len()];
            letters.push(l);
            cur = alg.letter_head(l);
        }
        alg.word(start, letters).unwrap()
    })
}

fn element_strategy() -> impl Strategy<Value = Element> {
    proptest::collection::vec(((0u32..2).prop_flat_map(|s| word_strategy(s, 4)), -3i64..=3), 0..4)
        .prop_map(|ts| ts.into_iter().map(|(w, c)| (w, qi(c))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn normalization_is_idempotent(x in element_strategy()) {
        let again: Element = x.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        prop_assert_eq!(&again, &x);
        prop_assert!(quiver().validate(&x).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]
    #[test]
    fn ring_axioms(x in element_strategy(), y in element_strategy(), z in element_strategy()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
    }

    #[test]
    fn outer_and_inner_actions_commute(
        a in element_strategy(), b in element_strategy(), c in element_strategy(),
        e in element_strategy(), d1 in element_strategy(), d2 in element_strategy(),
    ) {
        let d = Tensor2::outer([&d1, &d2]);
        let lhs = d.inner_act(&b, &c).outer_act(&a, &e);
        let rhs = d.outer_act(&a, &e).inner_act(&b, &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transpose_is_involutive(d1 in element_strategy(), d2 in element_strategy()) {
        let d = Tensor2::outer([&d1, &d2]);
        prop_assert_eq!(d.transpose().transpose(), d);
    }

    #[test]
    fn commutators_reduce_to_zero(x in element_strategy(), y in element_strategy()) {
        let alg = quiver();
        let comm = &(&x * &y) - &(&y * &x);
        prop_assert!(cyclic_reduce(&alg, &comm).is_zero());
    }

    #[test]
    fn render_parse_round_trip(x in element_strategy()) {
        let alg = quiver();
        let s = render_element(&alg, &x);
        prop_assert_eq!(parse_element(&alg, &s).unwrap(), x);
    }
}

/// Typed ϖ on a mixed O/Sp quiver squares to 𝔱(s)𝔱(t) on each generator.
#[test]
fn antihom_square_matches_kind() {
    let base = BaseRing::new(vec!["1".into(), "2".into()], vec![VertexType::O, VertexType::Sp]).unwrap();
    let g = |n: &str, t, h| Generator { name: n.into(), tail: t, head: h, invertible: false };
    let alg = Algebra::new(
        base,
        vec![g("a", 0, 1), g("a'", 1, 0), g("c", 0, 0), g("c'", 1, 1)],
    )
    .unwrap();
    // ϖ(a) = 𝔱(1)𝔱(2) a′ = −a′, ϖ(a′) = a, loops fixed up to γ.
    let w = AntiHom::from_pairs(
        &alg,
        &[("a", -alg.g("a'")), ("a'", alg.g("a")), ("c", -alg.g("c")), ("c'", alg.g("c'"))],
        AntiHomKind::Typed,
    )
    .unwrap();
    let rep = w.check_kind(&alg);
    assert!(rep.passed(), "{rep:?}");
    for gid in 0..alg.num_gens() as u32 {
        let x = Element::from_word(alg.letter(Letter::new(gid)).unwrap());
        let sq = w.apply(&alg, &w.apply(&alg, &x).unwrap()).unwrap();
        assert_eq!(sq, x.scale(&w.square_sign(&alg, gid)));
    }
}
