#![allow(dead_code)]

use dbracket::{BracketTable, Claim, Context, MomentKind, MomentMap};
use ncalg::{
    parse_element, q, Algebra, AntiHom, AntiHomKind, BaseRing, Element, Generator, Tensor2,
};

pub fn gen(name: &str, tail: u32, head: u32, invertible: bool) -> Generator {
    Generator { name: name.into(), tail, head, invertible }
}

pub fn el(alg: &Algebra, s: &str) -> Element {
    parse_element(alg, s).unwrap()
}

pub fn t2(alg: &Algebra, a: &str, b: &str) -> Tensor2 {
    Tensor2::outer([&el(alg, a), &el(alg, b)])
}

pub fn half() -> ncalg::Q {
    q(1, 2)
}

/// `ℚ⟨z^{±1}⟩` with `⟪z,z⟫ = k(z²⊗1 − 1⊗z²)`.
pub fn g0r1_with(k: ncalg::Q) -> Context {
    boundary_loop("1", "z", k)
}

/// `g0r1_with` on a chosen vertex label and loop name.
pub fn boundary_loop(label: &str, z: &str, k: ncalg::Q) -> Context {
    let alg = Algebra::new(BaseRing::untyped(&[label]).unwrap(), vec![gen(z, 0, 0, true)]).unwrap();
    let zz = format!("{z}*{z}");
    let d = (t2(&alg, &zz, "1") - t2(&alg, "1", &zz)).scale(&k);
    let db = BracketTable::from_named(alg.clone(), vec![(z, z, d)], Claim::QuasiPoisson).unwrap();
    let phi = AntiHom::inversion(&alg).unwrap();
    let m = MomentMap::new(&alg, MomentKind::Multiplicative, vec![el(&alg, z)]).unwrap();
    Context::new(db, Some(phi), Some(m))
}

pub fn g0r1() -> Context {
    g0r1_with(half())
}

pub fn g1r0() -> Context {
    let alg = Algebra::new(
        BaseRing::untyped(&["1"]).unwrap(),
        vec![gen("x", 0, 0, true), gen("y", 0, 0, true)],
    )
    .unwrap();
    let h = half();
    let xx = (t2(&alg, "x*x", "1") - t2(&alg, "1", "x*x")).scale(&h);
    let yy = (t2(&alg, "1", "y*y") - t2(&alg, "y*y", "1")).scale(&h);
    let xy = (t2(&alg, "y*x", "1") + t2(&alg, "1", "x*y") - t2(&alg, "x", "y") + t2(&alg, "y", "x")).scale(&h);
    let db = BracketTable::from_named(alg.clone(), vec![("x", "x", xx), ("y", "y", yy), ("x", "y", xy)], Claim::QuasiPoisson)
        .unwrap();
    let phi = AntiHom::inversion(&alg).unwrap();
    let m = MomentMap::new(&alg, MomentKind::Multiplicative, vec![el(&alg, "x*y*x^-1*y^-1")]).unwrap();
    Context::new(db, Some(phi), Some(m))
}

/// Multiplicative 1-arrow quiver on vertices `l1 → l2`.
pub fn one_arrow(l1: &str, l2: &str, name: &str) -> Context {
    let star = format!("{name}^*");
    let alg = Algebra::new(
        BaseRing::untyped(&[l1, l2]).unwrap(),
        vec![gen(name, 0, 1, true), gen(&star, 1, 0, true)],
    )
    .unwrap();
    let e1 = format!("e_{l1}");
    let e2 = format!("e_{l2}");
    let d = (t2(&alg, &format!("{star}*{name}"), &e1) + t2(&alg, &e2, &format!("{name}*{star}"))).scale(&half());
    let db = BracketTable::from_named(alg.clone(), vec![(name, &star, d)], Claim::QuasiPoisson).unwrap();
    let phi = AntiHom::inversion(&alg).unwrap();
    let m = MomentMap::new(
        &alg,
        MomentKind::Multiplicative,
        vec![el(&alg, &format!("{name}*{star}")), el(&alg, &format!("{name}^-1*{star}^-1"))],
    )
    .unwrap();
    Context::new(db, Some(phi), Some(m))
}

/// Cotangent model of `1 --a--> 2`: arrows a, a^*, a', a'^*.
pub fn cotangent_a2() -> Context {
    let alg = Algebra::new(
        BaseRing::untyped(&["1", "2"]).unwrap(),
        vec![gen("a", 0, 1, false), gen("a^*", 1, 0, false), gen("a'", 1, 0, false), gen("a'^*", 0, 1, false)],
    )
    .unwrap();
    let db = BracketTable::from_named(
        alg.clone(),
        vec![("a", "a^*", t2(&alg, "e_2", "e_1")), ("a'", "a'^*", t2(&alg, "e_1", "e_2"))],
        Claim::Poisson,
    )
    .unwrap();
    let phi = AntiHom::from_pairs(
        &alg,
        &[
            ("a", el(&alg, "a'")),
            ("a'", el(&alg, "a")),
            ("a^*", el(&alg, "a'^*")),
            ("a'^*", el(&alg, "a^*")),
        ],
        AntiHomKind::Involution,
    )
    .unwrap();
    let mu = el(&alg, "a*a^* - a^**a + a'*a'^* - a'^**a'");
    let m = MomentMap::new(&alg, MomentKind::Additive, vec![mu.corner(0, 0), mu.corner(1, 1)]).unwrap();
    Context::new(db, Some(phi), Some(m))
}
