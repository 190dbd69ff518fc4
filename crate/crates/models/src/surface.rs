use std::collections::BTreeMap;

use dbracket::{direct_sum, fuse, BracketTable, Claim, Context, MomentKind, MomentMap};
use ncalg::{q, qi, Algebra, AntiHom, AntiHomKind, BaseRing, Element, Generator, Tensor2};

use crate::error::ModelError;

fn one_vertex(label: &str, names: &[&str], invertible: bool) -> Result<Algebra, ModelError> {
    let gens = names
        .iter()
        .map(|n| Generator { name: n.to_string(), tail: 0, head: 0, invertible })
        .collect();
    Ok(Algebra::new(BaseRing::untyped(&[label])?, gens)?)
}

/// `½(x²⊗1 − 1⊗x²)`.
fn half_square(alg: &Algebra, x: &Element) -> Tensor2 {
    let x2 = x * x;
    let one = alg.one();
    (Tensor2::outer([&x2, &one]) - Tensor2::outer([&one, &x2])).scale(&q(1, 2))
}

fn boundary_piece(label: &str, z: &str) -> Result<Context, ModelError> {
    let alg = one_vertex(label, &[z], true)?;
    let entries = vec![(z, z, half_square(&alg, &alg.g(z)))];
    let db = BracketTable::from_named(alg.clone(), entries, Claim::QuasiPoisson)?;
    let moment = MomentMap::new(&alg, MomentKind::Multiplicative, vec![alg.g(z)])?;
    Ok(Context::new(db, Some(AntiHom::inversion(&alg)?), Some(moment)))
}

fn handle_piece(label: &str, x: &str, y: &str) -> Result<Context, ModelError> {
    let alg = one_vertex(label, &[x, y], true)?;
    let (xe, ye, one) = (alg.g(x), alg.g(y), alg.one());
    let t = |a: &Element, b: &Element| Tensor2::outer([a, b]);
    let xy = (t(&(&ye * &xe), &one) + t(&one, &(&xe * &ye)) - t(&xe, &ye) + t(&ye, &xe)).scale(&q(1, 2));
    let entries = vec![
        (x, x, half_square(&alg, &xe)),
        (y, y, -half_square(&alg, &ye)),
        (x, y, xy),
    ];
    let db = BracketTable::from_named(alg.clone(), entries, Claim::QuasiPoisson)?;
    let phi = &(&(&xe * &ye) * &alg.ginv(x)) * &alg.ginv(y);
    let moment = MomentMap::new(&alg, MomentKind::Multiplicative, vec![phi])?;
    Ok(Context::new(db, Some(AntiHom::inversion(&alg)?), Some(moment)))
}

/// `L_{0,1}`: `⟪z,z⟫ = ½(z²⊗1 − 1⊗z²)`, Φ = z, φ(z) = z⁻¹.
pub fn build_g0r1() -> Result<Context, ModelError> {
    boundary_piece("1", "z")
}

/// `L_{1,0}` with Φ = xyx⁻¹y⁻¹ and φ inverting x, y.
pub fn build_g1r0() -> Result<Context, ModelError> {
    handle_piece("1", "x", "y")
}

fn names(prefix: &str, k: usize, count: usize) -> String {
    if count == 1 {
        prefix.to_string()
    } else {
        format!("{prefix}{k}")
    }
}

/// `L_{g,r}`, assembled by fusing `g` handles and then `r` boundary loops
/// into one vertex. Generators are `x, y, z` when unique, else `x1, y1, …`.
pub fn build_surface(g: usize, r: usize) -> Result<Context, ModelError> {
    if g + r == 0 {
        return Err(ModelError::Quiver("surface needs g + r ≥ 1".into()));
    }
    let mut pieces = Vec::new();
    for i in 1..=g {
        pieces.push(handle_piece(&format!("h{i}"), &names("x", i, g), &names("y", i, g))?);
    }
    for k in 1..=r {
        pieces.push(boundary_piece(&format!("b{k}"), &names("z", k, r))?);
    }
    let mut iter = pieces.into_iter();
    let mut ctx = iter.next().unwrap();
    for p in iter {
        ctx = fuse(&direct_sum(&ctx, &p)?, 0, 1)?.ctx;
    }
    Ok(ctx.relabeled(&["1"])?)
}

/// Free algebra on `x_i, y_i, z_k` with `⟪x_i,y_j⟫ = δ 1⊗1`,
/// `⟪z_k,z_l⟫ = δ (z_k⊗1 − 1⊗z_k)` and φ = −id.
pub fn build_linear(g: usize, r: usize) -> Result<Context, ModelError> {
    if g + r == 0 {
        return Err(ModelError::Quiver("linear model needs g + r ≥ 1".into()));
    }
    let mut gen_names = Vec::new();
    for i in 1..=g {
        gen_names.push(names("x", i, g));
        gen_names.push(names("y", i, g));
    }
    for k in 1..=r {
        gen_names.push(names("z", k, r));
    }
    let refs: Vec<&str> = gen_names.iter().map(String::as_str).collect();
    let alg = one_vertex("1", &refs, false)?;
    let one = alg.one();
    let mut entries = BTreeMap::new();
    for i in 1..=g {
        let (x, y) = (alg.gen_id(&names("x", i, g))?, alg.gen_id(&names("y", i, g))?);
        entries.insert((x, y), Tensor2::outer([&one, &one]));
    }
    for k in 1..=r {
        let name = names("z", k, r);
        let z = alg.g(&name);
        let id = alg.gen_id(&name)?;
        entries.insert((id, id), Tensor2::outer([&z, &one]) - Tensor2::outer([&one, &z]));
    }
    let db = BracketTable::new(alg.clone(), entries, Claim::Poisson)?;
    let images = refs.iter().map(|n| alg.g(n).scale(&qi(-1))).collect();
    let phi = AntiHom::new(&alg, images, AntiHomKind::Involution)?;
    Ok(Context::new(db, Some(phi), None))
}
