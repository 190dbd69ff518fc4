use dbracket::{direct_sum, fuse, Context};

use crate::error::ModelError;
use crate::multiplicative::build_multiplicative;
use crate::quiver::QuiverSpec;

/// Assembles the multiplicative algebra of `q` from one-arrow pieces: each
/// arrow is built on its own copies of its endpoints, the pieces are summed,
/// and the copies of every vertex are fused in declaration order.
///
/// Returns the fused context, relabeled to the vertex names of `q`, together
/// with the quiver (vertex order and orderings `<ₛ`) that the direct
/// construction must use to produce the same table.
pub fn fuse_from_pieces(q: &QuiverSpec) -> Result<(Context, QuiverSpec), ModelError> {
    q.validate()?;
    if q.arrows.is_empty() {
        return Err(ModelError::Quiver("fusion needs at least one arrow".into()));
    }
    let vtype = |v: &str| q.vertex(v).map(|i| q.types.get(i as usize).copied());
    let mut ctx: Option<Context> = None;
    for a in &q.arrows {
        let lt = format!("{}#{}", a.tail, a.name);
        let mut piece = if a.tail == a.head {
            QuiverSpec::new(std::slice::from_ref(&lt)).arrow(&a.name, &lt, &lt)
        } else {
            let lh = format!("{}#{}", a.head, a.name);
            QuiverSpec::new(&[lt.clone(), lh.clone()]).arrow(&a.name, &lt, &lh)
        };
        if !q.types.is_empty() {
            let mut types = vec![vtype(&a.tail)?.unwrap()];
            if a.tail != a.head {
                types.push(vtype(&a.head)?.unwrap());
            }
            piece = piece.typed(&types);
        }
        let piece = build_multiplicative(&piece)?;
        ctx = Some(match ctx {
            None => piece,
            Some(c) => direct_sum(&c, &piece)?,
        });
    }
    let mut ctx = ctx.expect("at least one arrow");

    let mut spec = q.clone();
    spec.orderings.clear();
    let mut used = Vec::new();
    for v in &q.vertices {
        let copies: Vec<String> = q
            .arrows
            .iter()
            .filter(|a| &a.tail == v || &a.head == v)
            .map(|a| format!("{v}#{}", a.name))
            .collect();
        if copies.is_empty() {
            return Err(ModelError::Quiver(format!("vertex `{v}` has no arrows and no piece to come from")));
        }
        let mut order = Vec::new();
        for a in &q.arrows {
            if &a.tail == v {
                order.push(a.name.clone());
            }
            if &a.head == v {
                order.push(format!("{}^*", a.name));
            }
        }
        spec.orderings.insert(v.clone(), order);
        for other in &copies[1..] {
            let base = ctx.alg().base();
            let (s1, s2) = (base.index_of(&copies[0])?, base.index_of(other)?);
            ctx = fuse(&ctx, s1, s2)?.ctx;
        }
        used.push(v.clone());
    }
    // Fused vertices appear in first-copy order; the direct build follows it.
    let labels: Vec<String> =
        ctx.alg().base().labels().iter().map(|l| l.split('#').next().unwrap_or(l).to_string()).collect();
    debug_assert_eq!(labels.len(), used.len());
    if !q.types.is_empty() {
        spec.types = labels.iter().map(|l| vtype(l).map(|t| t.unwrap())).collect::<Result<_, _>>()?;
    }
    spec.vertices = labels.clone();
    Ok((ctx.relabeled(&labels)?, spec))
}
