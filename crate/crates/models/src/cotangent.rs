use std::collections::BTreeMap;

use dbracket::{BracketTable, Claim, Context, MomentKind, MomentMap};
use ncalg::{qi, Algebra, AntiHom, AntiHomKind, Element, Generator, Tensor2};

use crate::error::ModelError;
use crate::quiver::QuiverSpec;

/// Arrows of `Q̄_{Υ,Λ}` in generator order: per arrow `a`, then `a^*`, then
/// (outside Λ) `a'` and `a'^*`.
fn quadrupled(q: &QuiverSpec) -> Result<Vec<Generator>, ModelError> {
    let mut gens = Vec::new();
    let gen = |name: String, tail: u32, head: u32| Generator { name, tail, head, invertible: false };
    for a in &q.arrows {
        let (t, h) = (q.vertex(&a.tail)?, q.vertex(&a.head)?);
        gens.push(gen(a.name.clone(), t, h));
        gens.push(gen(format!("{}^*", a.name), h, t));
        if !q.in_lambda(&a.name) {
            gens.push(gen(format!("{}'", a.name), h, t));
            gens.push(gen(format!("{}'^*", a.name), t, h));
        }
    }
    Ok(gens)
}

/// The canonical double Poisson bracket of the doubled quiver, `⟪b,b*⟫ =
/// e_{h(b)} ⊗ e_{t(b)}`, for the listed arrows `b`.
pub(crate) fn doubled_bracket(alg: &Algebra, arrows: &[&str]) -> Result<BracketTable, ModelError> {
    let mut entries = BTreeMap::new();
    for b in arrows {
        let id = alg.gen_id(b)?;
        let star = alg.gen_id(&format!("{b}^*"))?;
        let g = alg.gen(id);
        entries.insert((id, star), Tensor2::outer([&alg.idem(g.head), &alg.idem(g.tail)]));
    }
    Ok(BracketTable::new(alg.clone(), entries, Claim::Poisson)?)
}

/// `μ = Σ_b [b, b*]`, split into its corners.
pub(crate) fn commutator_moment(alg: &Algebra, arrows: &[&str]) -> Result<MomentMap, ModelError> {
    let mut mu = Element::zero();
    for b in arrows {
        let (x, y) = (alg.g(b), alg.g(&format!("{b}^*")));
        mu = &mu + &(&(&x * &y) - &(&y * &x));
    }
    let comps = (0..alg.base().len() as u32).map(|s| mu.corner(s, s)).collect();
    Ok(MomentMap::new(alg, MomentKind::Additive, comps)?)
}

/// Cotangent model on `Q̄_{Υ,Λ}` with the involution exchanging `a` and `a'`
/// (or, when `typed`, the typed anti-involution ϖ with the `𝔱(t)𝔱(h)` signs).
pub fn build_cotangent(q: &QuiverSpec, typed: bool) -> Result<Context, ModelError> {
    q.validate()?;
    let base = q.base()?;
    if typed && !base.all_typed() {
        return Err(ModelError::Quiver("typed mode needs a type on every vertex".into()));
    }
    let alg = Algebra::new(base, quadrupled(q)?)?;
    let arrows: Vec<String> = alg
        .gens()
        .iter()
        .map(|g| g.name.clone())
        .filter(|n| !n.ends_with("^*"))
        .collect();
    let arrow_refs: Vec<&str> = arrows.iter().map(String::as_str).collect();
    let db = doubled_bracket(&alg, &arrow_refs)?;

    let mut images = vec![Element::zero(); alg.num_gens()];
    for a in &q.arrows {
        let n = &a.name;
        let set = |images: &mut Vec<Element>, g: &str, x: Element| -> Result<(), ModelError> {
            images[alg.gen_id(g)? as usize] = x;
            Ok(())
        };
        if let Some(&gamma) = q.loops.get(n) {
            let c = qi(gamma as i64);
            set(&mut images, n, alg.g(n).scale(&c))?;
            set(&mut images, &format!("{n}^*"), alg.g(&format!("{n}^*")).scale(&c))?;
            continue;
        }
        let sign = if typed {
            let t = |v: &str| base_sign(&alg, q.vertex(v).unwrap());
            qi(t(&a.tail) * t(&a.head))
        } else {
            qi(1)
        };
        let (p, ps, s) = (format!("{n}'"), format!("{n}'^*"), format!("{n}^*"));
        set(&mut images, n, alg.g(&p).scale(&sign))?;
        set(&mut images, &s, alg.g(&ps).scale(&sign))?;
        set(&mut images, &p, alg.g(n))?;
        set(&mut images, &ps, alg.g(&s))?;
    }
    let kind = if typed { AntiHomKind::Typed } else { AntiHomKind::Involution };
    let phi = AntiHom::new(&alg, images, kind)?;
    let moment = commutator_moment(&alg, &arrow_refs)?;
    Ok(Context::new(db, Some(phi), Some(moment)))
}

pub(crate) fn base_sign(alg: &Algebra, s: u32) -> i64 {
    alg.base().vtype(s).sign().expect("typed vertex")
}
