use dbracket::{fuse, Context};
use models::{build_case_two, build_cotangent, build_linear, build_multiplicative, build_surface, QuiverSpec};
use repspace::{Mode, TypedDims};

use crate::dsl::{AlgebraSection, ModelKind, ModelSpec, RepSection};
use crate::error::CliError;

/// The quiver of a quiver-based algebra section.
pub fn quiver(a: &AlgebraSection) -> QuiverSpec {
    let mut q = QuiverSpec::new(&a.vertices).typed(&a.types);
    q.arrows = a.arrows.clone();
    for (c, g) in &a.lambda {
        q = q.lambda(c, *g);
    }
    for (v, o) in &a.orderings {
        q.orderings.insert(v.clone(), o.clone());
    }
    q
}

/// The context before fusions and tampering.
pub fn build_base(a: &AlgebraSection) -> Result<Context, CliError> {
    let pair = || (a.genus.unwrap_or(0), a.boundary.unwrap_or(0));
    Ok(match a.kind {
        ModelKind::Cotangent => build_cotangent(&quiver(a), !a.types.is_empty())?,
        ModelKind::Multiplicative => build_multiplicative(&quiver(a))?,
        ModelKind::Case2 => build_case_two(&quiver(a))?,
        ModelKind::Surface => build_surface(pair().0, pair().1)?,
        ModelKind::Linear => build_linear(pair().0, pair().1)?,
    })
}

/// Fuses vertices `s` and `t` of `ctx`, given by label.
pub fn fuse_labels(ctx: &Context, s: &str, t: &str) -> Result<Context, CliError> {
    let base = ctx.alg().base();
    let (i, j) = (base.index_of(s)?, base.index_of(t)?);
    Ok(fuse(ctx, i, j)?.ctx)
}

/// The context of the algebra section with its fusions and tampering.
pub fn build_context(a: &AlgebraSection) -> Result<Context, CliError> {
    let mut ctx = build_base(a)?;
    for (s, t) in &a.fuse {
        ctx = fuse_labels(&ctx, s, t)?;
    }
    for t in &a.tamper {
        let alg = ctx.alg();
        let (x, y) = (alg.gen_id(&t.a)?, alg.gen_id(&t.b)?);
        let d = ctx.db.entry(x, y).scale(&t.factor);
        ctx = Context::new(ctx.db.tampered(x, y, d)?, ctx.phi.clone(), ctx.moment.clone());
    }
    Ok(ctx)
}

pub fn algebra(spec: &ModelSpec) -> Result<&AlgebraSection, CliError> {
    spec.algebra.as_ref().ok_or_else(|| CliError::Spec("the model has no [algebra] section".into()))
}

pub fn rep(spec: &ModelSpec) -> Result<&RepSection, CliError> {
    spec.rep.as_ref().ok_or_else(|| CliError::Spec("the model has no [rep] section".into()))
}

/// Dimension vector for `ctx`: explicit `rep.types`, else the vertex types.
pub fn dims(ctx: &Context, r: &RepSection) -> Result<TypedDims, CliError> {
    let base = ctx.alg().base();
    if r.alpha.len() != base.len() {
        return Err(CliError::Spec(format!("alpha has {} entries but the algebra has {} vertices", r.alpha.len(), base.len())));
    }
    Ok(match r.mode {
        Mode::Gl => TypedDims::gl(r.alpha.clone()),
        Mode::Twisted if r.types.is_empty() => TypedDims::twisted(base, r.alpha.clone())?,
        Mode::Twisted => TypedDims::new(r.alpha.clone(), r.types.clone(), Mode::Twisted)?,
    })
}
