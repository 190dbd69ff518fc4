use dbracket::Context;
use ncalg::{qi, Algebra, AntiHom, AntiHomKind, Element, Generator};

use crate::cotangent::{commutator_moment, doubled_bracket};
use crate::error::ModelError;
use crate::quiver::QuiverSpec;

/// Doubled quiver `Ῡ` with alternating types and the typed anti-involution
/// `ϖ₋(a) = −a*`, `ϖ₋(a*) = a`.
pub fn build_case_two(q: &QuiverSpec) -> Result<Context, ModelError> {
    q.validate()?;
    let base = q.base()?;
    if !base.all_typed() {
        return Err(ModelError::Quiver("case II needs a type on every vertex".into()));
    }
    if !q.loops.is_empty() {
        return Err(ModelError::Quiver("Λ is not used in case II".into()));
    }
    let mut gens = Vec::new();
    for a in &q.arrows {
        let (t, h) = (q.vertex(&a.tail)?, q.vertex(&a.head)?);
        if base.vtype(t) == base.vtype(h) {
            return Err(ModelError::SameTypes(a.name.clone()));
        }
        gens.push(Generator { name: a.name.clone(), tail: t, head: h, invertible: false });
        gens.push(Generator { name: format!("{}^*", a.name), tail: h, head: t, invertible: false });
    }
    let alg = Algebra::new(base, gens)?;
    let arrows: Vec<&str> = q.arrows.iter().map(|a| a.name.as_str()).collect();
    let db = doubled_bracket(&alg, &arrows)?;
    let mut images = vec![Element::zero(); alg.num_gens()];
    for a in &arrows {
        let star = format!("{a}^*");
        images[alg.gen_id(a)? as usize] = alg.g(&star).scale(&qi(-1));
        images[alg.gen_id(&star)? as usize] = alg.g(a);
    }
    let phi = AntiHom::new(&alg, images, AntiHomKind::Typed)?;
    let moment = commutator_moment(&alg, &arrows)?;
    Ok(Context::new(db, Some(phi), Some(moment)))
}
