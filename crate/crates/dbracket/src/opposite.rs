use std::collections::BTreeMap;

use ncalg::{Algebra, AntiHom, Element, Generator};

use crate::context::Context;
use crate::error::DbError;
use crate::moment::{MomentKind, MomentMap};
use crate::table::BracketTable;

/// `A^op`: same generators with tail and head exchanged.
pub fn op_algebra(alg: &Algebra) -> Algebra {
    let gens = alg
        .gens()
        .iter()
        .map(|g| Generator { name: g.name.clone(), tail: g.head, head: g.tail, invertible: g.invertible })
        .collect();
    Algebra::new(alg.base().clone(), gens).expect("same names and vertices")
}

/// The canonical anti-isomorphism `A → A^op` (words reversed).
pub fn op_element(x: &Element) -> Element {
    x.map_words(|w| w.reversed())
}

/// `⟪a,b⟫_op = ⟪a,b⟫°`, factors read in `A^op`.
pub fn opposite(db: &BracketTable) -> BracketTable {
    let mut entries = BTreeMap::new();
    for ((a, b), d) in db.entries() {
        let t = d.map_factors(|w| Element::from_word(w.reversed())).transpose();
        entries.insert((a, b), t);
    }
    BracketTable::new(op_algebra(db.alg()), entries, db.claim())
        .expect("opposite of a valid table is valid")
}

/// `−μ` for additive moment maps, `Φ⁻¹` for multiplicative ones.
pub fn opposite_moment(alg: &Algebra, m: &MomentMap) -> Result<MomentMap, DbError> {
    let op = op_algebra(alg);
    let comps = m
        .components()
        .iter()
        .map(|x| match m.kind {
            MomentKind::Additive => Ok(-op_element(x)),
            MomentKind::Multiplicative => Ok(op.inverse(&op_element(x))?),
        })
        .collect::<Result<Vec<_>, DbError>>()?;
    MomentMap::new(&op, m.kind, comps)
}

/// φ transported to `A^op`.
pub fn opposite_antihom(alg: &Algebra, phi: &AntiHom) -> Result<AntiHom, DbError> {
    let op = op_algebra(alg);
    let images = phi.images().iter().map(op_element).collect();
    Ok(AntiHom::new(&op, images, phi.kind())?)
}

pub fn opposite_context(ctx: &Context) -> Result<Context, DbError> {
    let alg = ctx.alg();
    Ok(Context {
        db: opposite(&ctx.db),
        phi: ctx.phi.as_ref().map(|p| opposite_antihom(alg, p)).transpose()?,
        moment: ctx.moment.as_ref().map(|m| opposite_moment(alg, m)).transpose()?,
    })
}
