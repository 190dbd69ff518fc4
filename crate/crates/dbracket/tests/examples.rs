mod common;

use common::*;
use dbracket::*;
use ncalg::{
    q, qi, Algebra, AntiHom, AntiHomKind, BaseRing, Element, Tensor3, VertexType,
};

#[test]
fn eval_on_g0r1() {
    let ctx = g0r1();
    let alg = ctx.alg();
    let z = el(alg, "z");
    let expected = (t2(alg, "z*z", "1") - t2(alg, "1", "z*z")).scale(&half());
    assert_eq!(ctx.db.eval(&z, &z), expected);
    assert!(ctx.db.eval(&alg.idem(0), &z).is_zero());
    assert!(ctx.db.eval(&z, &alg.one()).is_zero());
    let z2 = el(alg, "z*z");
    let expected = (t2(alg, "z*z*z", "1") - t2(alg, "z", "z*z") + t2(alg, "z*z", "z") - t2(alg, "1", "z*z*z"))
        .scale(&half());
    assert_eq!(ctx.db.eval(&z2, &z), expected);
}

#[test]
fn inverse_letters_follow_the_conjugation_rules() {
    let ctx = g0r1();
    let alg = ctx.alg();
    let (z, zi) = (el(alg, "z"), el(alg, "z^-1"));
    // ⟪z, z z⁻¹⟫ = ⟪z, 1⟫ = 0, so the derivation rule pins ⟪z, z⁻¹⟫.
    let lhs = &ctx.db.eval(&z, &z).mul_slot_right(1, &zi) + &ctx.db.eval(&z, &zi).mul_slot_left(0, &z);
    assert!(lhs.is_zero());
    let expected = (t2(alg, "1", "z^-1*z^-1") - t2(alg, "z^-1*z^-1", "1")).scale(&half());
    // ⟪z⁻¹, z⁻¹⟫° = φ⊗φ(⟪z, z⟫) for the inversion φ.
    assert_eq!(ctx.db.eval(&zi, &zi), expected);
}

#[test]
fn triple_bracket_basic_cases() {
    let cot = cotangent_a2();
    let alg = cot.alg();
    let (a, s) = (el(alg, "a"), el(alg, "a^*"));
    assert!(triple_bracket(&cot.db, &a, &s, &a).is_zero());
    let zero = BracketTable::new(alg.clone(), Default::default(), Claim::Poisson).unwrap();
    assert!(triple_bracket(&zero, &a, &s, &el(alg, "a'")).is_zero());

    let h = g1r0();
    let x = el(h.alg(), "x");
    assert_eq!(triple_bracket(&h.db, &x, &x, &x), quasi_defect(&h.db, &x, &x, &x));
}

#[test]
fn quasi_defect_examples() {
    let alg = Algebra::new(BaseRing::untyped(&["1"]).unwrap(), vec![gen("x", 0, 0, false)]).unwrap();
    let db = BracketTable::new(alg.clone(), Default::default(), Claim::QuasiPoisson).unwrap();
    let one = alg.one();
    assert!(quasi_defect(&db, &one, &one, &one).is_zero());

    let x = el(&alg, "x");
    let t = |a: &str, b: &str, c: &str| Tensor3::outer([&el(&alg, a), &el(&alg, b), &el(&alg, c)]);
    let expected = (t("x*x", "x", "1") - t("x*x", "1", "x") - t("x", "x*x", "1") + t("x", "x", "x")
        - t("x", "x", "x")
        + t("x", "1", "x*x")
        + t("1", "x*x", "x")
        - t("1", "x", "x*x"))
    .scale(&q(1, 4));
    assert_eq!(quasi_defect(&db, &x, &x, &x), expected);

    // A vertex not touched by a, b, c contributes nothing.
    let alg3 = Algebra::new(
        BaseRing::untyped(&["1", "2", "3"]).unwrap(),
        vec![gen("a", 0, 1, false), gen("b", 1, 0, false)],
    )
    .unwrap();
    let db3 = BracketTable::new(alg3.clone(), Default::default(), Claim::QuasiPoisson).unwrap();
    let (a, b) = (el(&alg3, "a"), el(&alg3, "b"));
    let full = quasi_defect(&db3, &a, &b, &a);
    let alg2 = Algebra::new(
        BaseRing::untyped(&["1", "2"]).unwrap(),
        vec![gen("a", 0, 1, false), gen("b", 1, 0, false)],
    )
    .unwrap();
    let db2 = BracketTable::new(alg2.clone(), Default::default(), Claim::QuasiPoisson).unwrap();
    let (a2, b2) = (el(&alg2, "a"), el(&alg2, "b"));
    assert_eq!(full, quasi_defect(&db2, &a2, &b2, &a2));
    assert!(!full.is_zero());
}

#[test]
fn certify_examples() {
    assert!(certify(&cotangent_a2().db).passed());
    let arrow = one_arrow("1", "2", "a");
    let r = certify(&arrow.db);
    assert!(r.passed());
    assert_eq!(r.triples_checked, 8);
    assert!(certify(&g0r1().db).passed());
    assert!(certify(&g1r0().db).passed());

    let bad = g0r1_with(qi(1));
    let r = certify(&bad.db);
    assert!(!r.passed());
    assert_eq!(r.failures[0].a, "z");

    let none = cotangent_a2().db.with_claim(Claim::None);
    assert_eq!(certify(&none).triples_checked, 0);
}

#[test]
fn certify_fuzz_agrees() {
    assert!(certify_fuzz(&g1r0().db, 7, 40, 3).passed());
    assert!(certify_fuzz(&cotangent_a2().db, 7, 40, 3).passed());
    assert!(!certify_fuzz(&g0r1_with(qi(1)).db, 7, 40, 3).passed());
}

#[test]
fn compat_examples() {
    for ctx in [g0r1(), g1r0(), cotangent_a2(), one_arrow("1", "2", "a")] {
        let r = check_compat(&ctx.db, ctx.phi.as_ref().unwrap());
        assert!(r.passed(), "{:?}", r.failures);
    }
    let ctx = g0r1();
    let alg = ctx.alg();
    let id = AntiHom::new(alg, vec![el(alg, "z")], AntiHomKind::Involution).unwrap();
    let r = check_compat(&ctx.db, &id);
    assert_eq!(r.failures.len(), 1);
    let f = &r.failures[0];
    assert_eq!(f.lhs, "-1/2*(e_1 ⊗ z*z) + 1/2*(z*z ⊗ e_1)");
    assert_eq!(f.rhs, "1/2*(e_1 ⊗ z*z) - 1/2*(z*z ⊗ e_1)");
}

#[test]
fn moment_examples() {
    let cot = cotangent_a2();
    assert!(check_moment_map(&cot.db, cot.moment.as_ref().unwrap()).passed());
    let ctx = g0r1();
    assert!(check_moment_map(&ctx.db, ctx.moment.as_ref().unwrap()).passed());
    let alg = ctx.alg();
    let sq = MomentMap::new(alg, MomentKind::Multiplicative, vec![el(alg, "z*z")]).unwrap();
    assert!(!check_moment_map(&ctx.db, &sq).passed());
    // A non-invertible multiplicative component is rejected outright.
    assert!(MomentMap::new(alg, MomentKind::Multiplicative, vec![el(alg, "z + 1")]).is_err());
    // Components must sit in their corner.
    let cot_alg = cot.alg();
    assert!(matches!(
        MomentMap::new(cot_alg, MomentKind::Additive, vec![el(cot_alg, "a"), Element::zero()]),
        Err(DbError::MomentCorner(_))
    ));
}

#[test]
fn normalization_examples() {
    let cot = cotangent_a2();
    let (m, phi) = (cot.moment.as_ref().unwrap(), cot.phi.as_ref().unwrap());
    let n = normalize_moment_map(&cot.db, m, phi).unwrap();
    assert!(n.unchanged(m));
    assert_eq!(n.constants, vec![qi(0), qi(0)]);

    let alg = cot.alg();
    let shifted = MomentMap::new(
        alg,
        MomentKind::Additive,
        vec![m.component(0) + &alg.idem(0), m.component(1).clone()],
    )
    .unwrap();
    assert!(check_moment_map(&cot.db, &shifted).passed());
    let n = normalize_moment_map(&cot.db, &shifted, phi).unwrap();
    assert_eq!(n.constants[0], qi(-2));
    assert_eq!(&n.moment, m);

    let z = g0r1();
    let (m, phi) = (z.moment.as_ref().unwrap(), z.phi.as_ref().unwrap());
    let n = normalize_moment_map(&z.db, m, phi).unwrap();
    assert!(n.unchanged(m) && n.is_exact());
    assert_eq!(n.constants, vec![qi(1)]);

    // Φ = 2z rescales back to z.
    let zalg = z.alg();
    let two = MomentMap::new(zalg, MomentKind::Multiplicative, vec![el(zalg, "2*z")]).unwrap();
    let n = normalize_moment_map(&z.db, &two, phi).unwrap();
    assert_eq!(&n.moment, m);
    assert_eq!(n.constants, vec![q(1, 4)]);

    // φ(z) = 2z⁻¹ is still an involution; the constant ½ has no rational root.
    let phi2 = AntiHom::new(zalg, vec![el(zalg, "2*z^-1")], AntiHomKind::Involution).unwrap();
    assert!(check_compat(&z.db, &phi2).passed());
    let n = normalize_moment_map(&z.db, m, &phi2).unwrap();
    assert!(!n.is_exact());
    assert_eq!(n.deferred, vec![("1".to_string(), q(1, 2))]);
}

#[test]
fn normalization_rejects_non_scalar_defect() {
    let cot = cotangent_a2();
    let alg = cot.alg();
    let m = cot.moment.as_ref().unwrap();
    // Rescaling a ↦ 2a′ keeps φ an involution but μ + φ(μ) leaves A₀.
    let phi = AntiHom::from_pairs(
        alg,
        &[
            ("a", el(alg, "2*a'")),
            ("a'", el(alg, "1/2*a")),
            ("a^*", el(alg, "a'^*")),
            ("a'^*", el(alg, "a^*")),
        ],
        AntiHomKind::Involution,
    )
    .unwrap();
    assert!(matches!(normalize_moment_map(&cot.db, m, &phi), Err(DbError::NotAMomentMap(_))));
}

#[test]
fn opposite_examples() {
    let cot = cotangent_a2();
    let op = opposite(&cot.db);
    let oalg = op.alg();
    let (a, s) = (oalg.gen_id("a").unwrap(), oalg.gen_id("a^*").unwrap());
    assert_eq!(op.entry(a, s), &t2(oalg, "e_1", "e_2"));
    assert_eq!(opposite(&op), cot.db);
    assert!(certify(&op).passed());

    let ctx = opposite_context(&cot).unwrap();
    assert!(check_moment_map(&ctx.db, ctx.moment.as_ref().unwrap()).passed());
    assert!(check_compat(&ctx.db, ctx.phi.as_ref().unwrap()).passed());
    assert_eq!(ctx.moment.as_ref().unwrap().total(), -op_element(&cot.moment.as_ref().unwrap().total()));

    let h = opposite_context(&g1r0()).unwrap();
    assert!(certify(&h.db).passed());
    assert!(check_moment_map(&h.db, h.moment.as_ref().unwrap()).passed());
    assert!(check_compat(&h.db, h.phi.as_ref().unwrap()).passed());
}

#[test]
fn fusion_correction_first_second_kind() {
    // t: 3 → 1 untouched, u: 2 → 3 outgoing from the absorbed vertex.
    let alg = Algebra::new(
        BaseRing::untyped(&["1", "2", "3"]).unwrap(),
        vec![gen("t", 2, 0, false), gen("u", 1, 2, false)],
    )
    .unwrap();
    let db = BracketTable::new(alg, Default::default(), Claim::QuasiPoisson).unwrap();
    let f = fuse(&Context::new(db, None, None), 0, 1).unwrap();
    assert_eq!(f.kinds, vec![FusionKind::Untouched, FusionKind::Outgoing]);
    let falg = f.ctx.alg();
    // ⟪t, e₁₂u⟫_fus = ½(e₁ ⊗ t·e₁₂u − e₁t ⊗ e₁₂u); here e₁t = 0.
    let expected = t2(falg, "e_1", "t*u").scale(&half());
    assert_eq!(f.ctx.db.entry(0, 1), &expected);
    let e = falg.idem(f.fused_vertex);
    let (t, u) = (el(falg, "t"), el(falg, "u"));
    assert_eq!(fusion_correction(FusionKind::Untouched, FusionKind::Outgoing, &t, &u, &e), expected);
}

#[test]
fn fusion_correction_table_antisymmetric_and_first_kind_vanishes() {
    use FusionKind::*;
    // All four kinds relative to absorbing vertex 2 into 1, on loops and arrows
    // among {1, 2, 3}.
    let names = ["p11", "p12", "p21", "p22", "p13", "p31", "p23", "p32", "p33"];
    let ends = [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0), (1, 2), (2, 1), (2, 2)];
    let gens: Vec<_> = names.iter().zip(ends).map(|(n, (t, h))| gen(n, t, h, false)).collect();
    let alg = Algebra::new(BaseRing::untyped(&["1", "2", "3"]).unwrap(), gens).unwrap();
    let db = BracketTable::new(alg.clone(), Default::default(), Claim::QuasiPoisson).unwrap();
    let f = fuse(&Context::new(db, None, None), 0, 1).unwrap();
    let falg = f.ctx.alg();
    let e = falg.idem(f.fused_vertex);
    for a in 0..names.len() as u32 {
        for b in 0..names.len() as u32 {
            let (ka, kb) = (f.kinds[a as usize], f.kinds[b as usize]);
            let (x, y) = (el(falg, names[a as usize]), el(falg, names[b as usize]));
            let d = fusion_correction(ka, kb, &x, &y, &e);
            let r = fusion_correction(kb, ka, &y, &x, &e);
            assert_eq!(r, -d.transpose(), "{} {}", names[a as usize], names[b as usize]);
            if ka == Untouched && kb == Untouched {
                assert!(d.is_zero());
            }
        }
    }
}

#[test]
fn fusing_handle_and_boundary() {
    let h = g1r0().relabeled(&["h"]).unwrap();
    let z = g0r1().relabeled(&["b"]).unwrap();
    let f = fuse(&direct_sum(&h, &z).unwrap(), 0, 1).unwrap().ctx;
    let alg = f.alg();
    assert_eq!(f.moment.as_ref().unwrap().component(0), &el(alg, "x*y*x^-1*y^-1*z"));
    assert!(certify(&f.db).passed());
    assert!(check_compat(&f.db, f.phi.as_ref().unwrap()).passed());
    assert!(check_moment_map(&f.db, f.moment.as_ref().unwrap()).passed());
    // ⟪x, z⟫ comes purely from the correction: x is untouched, z a loop at
    // the absorbed vertex.
    let (x, zz) = (alg.gen_id("x").unwrap(), alg.gen_id("z").unwrap());
    let expected = (t2(alg, "z*x", "1") + t2(alg, "1", "x*z") - t2(alg, "z", "x") - t2(alg, "x", "z")).scale(&half());
    assert_eq!(f.db.entry(x, zz), &expected);
}

#[test]
fn poisson_fusion_adds_nothing() {
    let cot = cotangent_a2();
    let f = fuse(&cot, 0, 1).unwrap().ctx;
    assert!(certify(&f.db).passed());
    assert!(check_compat(&f.db, f.phi.as_ref().unwrap()).passed());
    assert!(check_moment_map(&f.db, f.moment.as_ref().unwrap()).passed());
    assert_eq!(f.alg().base().len(), 1);
}

#[test]
fn typed_fusion_requires_equal_types() {
    let alg = Algebra::new(
        BaseRing::new(vec!["1".into(), "2".into()], vec![VertexType::O, VertexType::Sp]).unwrap(),
        vec![gen("a", 0, 1, false)],
    )
    .unwrap();
    let db = BracketTable::new(alg, Default::default(), Claim::Poisson).unwrap();
    let ctx = Context::new(db, None, None);
    assert!(matches!(fuse(&ctx, 0, 1), Err(DbError::TypedFusionMismatch(_, _))));
    assert!(matches!(fuse(&ctx, 0, 0), Err(DbError::FuseSame)));
}

#[test]
fn construction_validates_blocks_and_antisymmetry() {
    let alg = Algebra::new(
        BaseRing::untyped(&["1", "2"]).unwrap(),
        vec![gen("a", 0, 1, false), gen("b", 1, 0, false)],
    )
    .unwrap();
    // ⟪a,b⟫ must lie in e₂Ae₂ ⊗ e₁Ae₁.
    let bad = BracketTable::from_named(alg.clone(), vec![("a", "b", t2(&alg, "e_1", "e_1"))], Claim::None);
    assert!(matches!(bad, Err(DbError::Block { .. })));
    let asym = BracketTable::from_named(
        alg.clone(),
        vec![("a", "b", t2(&alg, "e_2", "e_1")), ("b", "a", t2(&alg, "e_1", "e_2"))],
        Claim::None,
    );
    assert!(asym.is_err());
    let ok = BracketTable::from_named(alg.clone(), vec![("a", "b", t2(&alg, "e_2", "e_1"))], Claim::None).unwrap();
    let (a, b) = (alg.gen_id("a").unwrap(), alg.gen_id("b").unwrap());
    assert_eq!(ok.entry(b, a), &-t2(&alg, "e_1", "e_2"));
}

#[test]
fn tampered_table_fails_certification() {
    let h = g1r0();
    let alg = h.alg();
    let (x, y) = (alg.gen_id("x").unwrap(), alg.gen_id("y").unwrap());
    let d = h.db.entry(x, y).clone() + t2(alg, "x", "y");
    let bad = h.db.tampered(x, y, d).unwrap();
    assert!(!certify(&bad).passed());
}

#[test]
fn json_dump_lists_entries() {
    let ctx = one_arrow("1", "2", "a");
    let j = dump_json(&ctx.db);
    assert_eq!(j["claim"], "quasi_poisson");
    assert_eq!(j["generators"][0]["name"], "a");
    assert_eq!(j["generators"][0]["tail"], "1");
    let entries = j["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    let first = &entries[0];
    assert_eq!(first["a"], "a");
    assert_eq!(first["b"], "a^*");
    let terms = first["terms"].as_array().unwrap();
    assert!(terms.iter().all(|t| t[2] == "1/2"));
}

#[test]
fn sharp_of_generators_multiplies_out() {
    let ctx = g0r1();
    let z = el(ctx.alg(), "z");
    let d = ctx.db.eval(&z, &z);
    assert_eq!(ctx.db.sharp(&z, &z), d.multiply());
}
