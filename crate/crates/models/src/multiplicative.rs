use std::collections::BTreeMap;

use dbracket::{BracketTable, Claim, Context, MomentKind, MomentMap};
use ncalg::{q as rat, Algebra, AntiHom, Element, Generator, Tensor2};
use num_traits::Zero;

use crate::error::ModelError;
use crate::quiver::QuiverSpec;

/// `oₛ(b,c)`: +1 if `b <ₛ c`, −1 if `c <ₛ b`, 0 if equal or either is absent.
pub fn ordering_sign(order: &[String], b: &str, c: &str) -> i64 {
    let pos = |x: &str| order.iter().position(|y| y == x);
    match (pos(b), pos(c)) {
        (Some(i), Some(j)) if i < j => 1,
        (Some(i), Some(j)) if i > j => -1,
        _ => 0,
    }
}

fn star(name: &str) -> String {
    match name.strip_suffix("^*") {
        Some(base) => base.to_string(),
        None => format!("{name}^*"),
    }
}

/// Quasi-Poisson structure on the localized doubled quiver (γ = 0, all
/// arrows invertible), with the inversion anti-involution and the
/// multiplicative moment map `Φₛ = ∏_{a ∈ Tₛ} (aa*)^{ε(a)}`.
pub fn build_multiplicative(q: &QuiverSpec) -> Result<Context, ModelError> {
    q.validate()?;
    if let Some((a, _)) = q.gamma.iter().find(|(_, g)| !g.is_zero()) {
        return Err(ModelError::Unsupported(format!("γ_{a} ≠ 0 (only γ = 0 is supported)")));
    }
    if !q.loops.is_empty() {
        return Err(ModelError::Quiver("Λ is not used by multiplicative quivers".into()));
    }
    let base = q.base()?;
    let mut gens = Vec::new();
    for a in &q.arrows {
        let (t, h) = (q.vertex(&a.tail)?, q.vertex(&a.head)?);
        gens.push(Generator { name: a.name.clone(), tail: t, head: h, invertible: true });
        gens.push(Generator { name: format!("{}^*", a.name), tail: h, head: t, invertible: true });
    }
    let alg = Algebra::new(base, gens)?;
    let orders: Vec<Vec<String>> =
        q.vertices.iter().map(|s| q.order_at(s)).collect::<Result<_, _>>()?;
    let o = |s: u32, b: &str, c: &str| rat(ordering_sign(&orders[s as usize], b, c), 1);
    let half = rat(1, 2);
    let t = |x: &Element, y: &Element| Tensor2::outer([x, y]);

    let n = alg.num_gens() as u32;
    let mut entries = BTreeMap::new();
    for bi in 0..n {
        for ci in 0..n {
            let (gb, gc) = (alg.gen(bi), alg.gen(ci));
            let (bn, cn) = (gb.name.as_str(), gc.name.as_str());
            let (b, c) = (alg.g(bn), alg.g(cn));
            let (et, eh) = (alg.idem(gb.tail), alg.idem(gb.head));
            let d = if bi == ci {
                let b2 = &b * &b;
                (t(&b2, &et) - t(&eh, &b2)).scale(&(&half * o(gb.tail, bn, &star(bn))))
            } else if cn == star(bn) {
                if bn.ends_with("^*") {
                    continue;
                }
                let mut d = t(&(&c * &b), &et) + t(&eh, &(&b * &c));
                d = d + (t(&c, &b) - t(&b, &c)).scale(&o(gb.tail, bn, cn));
                d.scale(&half)
            } else {
                let (bs, cs) = (star(bn), star(cn));
                let mut d = t(&b, &c).scale(&-o(gb.tail, bn, cn));
                d = d - t(&c, &b).scale(&o(gb.head, &bs, &cs));
                d = d + t(&(&c * &b), &et).scale(&o(gb.tail, bn, &cs));
                d = d + t(&eh, &(&b * &c)).scale(&o(gb.head, &bs, cn));
                d.scale(&half)
            };
            if !d.is_zero() {
                entries.insert((bi, ci), d);
            }
        }
    }
    let db = BracketTable::new(alg.clone(), entries, Claim::QuasiPoisson)?;

    let mut comps = Vec::new();
    for (s, order) in orders.iter().enumerate() {
        let mut phi_s = alg.idem(s as u32);
        for a in order {
            let f = &alg.g(a) * &alg.g(&star(a));
            let f = if a.ends_with("^*") { alg.inverse(&f)? } else { f };
            phi_s = &phi_s * &f;
        }
        comps.push(phi_s);
    }
    let moment = MomentMap::new(&alg, MomentKind::Multiplicative, comps)?;
    let phi = AntiHom::inversion(&alg)?;
    Ok(Context::new(db, Some(phi), Some(moment)))
}
