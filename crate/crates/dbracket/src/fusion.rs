use std::collections::BTreeMap;

use ncalg::{AntiHom, Algebra, BaseRing, Element, Generator, Letter, Tensor2, VertexType, Word};

use crate::context::Context;
use crate::error::DbError;
use crate::moment::{MomentKind, MomentMap};
use crate::table::{BracketTable, Claim};

/// Position of a generator relative to the absorbed vertex `s₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FusionKind {
    /// Neither end at `s₂`.
    Untouched,
    /// Tail at `s₂`.
    Outgoing,
    /// Head at `s₂`.
    Incoming,
    /// Loop at `s₂`.
    Loop,
}

impl FusionKind {
    fn of(g: &Generator, s2: u32) -> Self {
        match (g.tail == s2, g.head == s2) {
            (false, false) => FusionKind::Untouched,
            (true, false) => FusionKind::Outgoing,
            (false, true) => FusionKind::Incoming,
            (true, true) => FusionKind::Loop,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FusedContext {
    pub ctx: Context,
    /// Old vertex index → new vertex index.
    pub vertex_map: Vec<u32>,
    pub kinds: Vec<FusionKind>,
    /// The surviving vertex, in new numbering.
    pub fused_vertex: u32,
}

/// Disjoint union of two contexts. Labels and generator names must not clash.
pub fn direct_sum(c1: &Context, c2: &Context) -> Result<Context, DbError> {
    let (a1, a2) = (c1.alg(), c2.alg());
    let n1 = a1.base().len() as u32;
    let g1 = a1.num_gens() as u32;
    let labels = a1.base().labels().iter().chain(a2.base().labels()).cloned().collect();
    let types = a1.base().types().iter().chain(a2.base().types()).copied().collect();
    let base = BaseRing::new(labels, types)?;
    let mut gens = a1.gens().to_vec();
    gens.extend(a2.gens().iter().map(|g| Generator {
        name: g.name.clone(),
        tail: g.tail + n1,
        head: g.head + n1,
        invertible: g.invertible,
    }));
    let alg = Algebra::new(base, gens)?;

    if c1.db.claim() != c2.db.claim() {
        return Err(DbError::Incompatible("summands make different claims".into()));
    }
    let shift_w = |w: &Word| {
        let letters = w
            .letters()
            .iter()
            .map(|l| Letter { gen: l.gen + g1, inv: l.inv })
            .collect();
        Word::from_letters(w.start() + n1, w.end() + n1, letters)
    };
    let shift = |x: &Element| x.map_words(shift_w);
    let mut entries = BTreeMap::new();
    for ((a, b), d) in c1.db.entries() {
        entries.insert((a, b), d.clone());
    }
    for ((a, b), d) in c2.db.entries() {
        entries.insert((a + g1, b + g1), d.map_factors(|w| Element::from_word(shift_w(w))));
    }
    let db = BracketTable::new(alg.clone(), entries, c1.db.claim())?;

    let phi = match (&c1.phi, &c2.phi) {
        (None, None) => None,
        (Some(p1), Some(p2)) if p1.kind() == p2.kind() => {
            let images = p1.images().iter().cloned().chain(p2.images().iter().map(shift)).collect();
            Some(AntiHom::new(&alg, images, p1.kind())?)
        }
        _ => return Err(DbError::Incompatible("anti-involutions differ in presence or kind".into())),
    };
    let moment = match (&c1.moment, &c2.moment) {
        (None, None) => None,
        (Some(m1), Some(m2)) if m1.kind == m2.kind => {
            let comps = m1.components().iter().cloned().chain(m2.components().iter().map(shift)).collect();
            Some(MomentMap::new(&alg, m1.kind, comps)?)
        }
        _ => return Err(DbError::Incompatible("moment maps differ in presence or kind".into())),
    };
    Ok(Context { db, phi, moment })
}

/// The quasi-Poisson correction `⟪a,b⟫_fus` in the fused algebra, for
/// generators `a`, `b` of kinds `ka`, `kb`; `e` is the fused idempotent.
pub fn fusion_correction(
    ka: FusionKind,
    kb: FusionKind,
    a: &Element,
    b: &Element,
    e: &Element,
) -> Tensor2 {
    use FusionKind::*;
    if ka > kb {
        return -fusion_correction(kb, ka, b, a, e).transpose();
    }
    let t = |x: &Element, y: &Element| Tensor2::outer([x, y]);
    let d = match (ka, kb) {
        (Untouched, Untouched) | (Loop, Loop) => Tensor2::zero(),
        (Untouched, Outgoing) => t(e, &(a * b)) - t(&(e * a), b),
        (Untouched, Incoming) => t(&(b * a), e) - t(b, &(a * e)),
        (Untouched, Loop) => {
            t(&(b * a), e) + t(e, &(a * b)) - t(b, &(a * e)) - t(&(e * a), b)
        }
        (Outgoing, Outgoing) => t(e, &(a * b)) - t(&(b * a), e),
        (Outgoing, Incoming) => t(a, &(e * b)) - t(b, &(a * e)),
        (Outgoing, Loop) => t(e, &(a * b)) - t(b, &(a * e)),
        (Incoming, Incoming) => t(&(b * a), e) - t(e, &(a * b)),
        (Incoming, Loop) => t(&(b * a), e) - t(&(e * a), b),
        _ => unreachable!("ka <= kb"),
    };
    d.scale(&BracketTable::one_half())
}

/// Identifies `s₂` with `s₁`. Poisson structures are fused by plain
/// transport; quasi-Poisson ones acquire the fusion correction. Moment maps
/// combine as `μ₁ + μ₂` or `Φ₁Φ₂`.
pub fn fuse(ctx: &Context, s1: u32, s2: u32) -> Result<FusedContext, DbError> {
    let alg = ctx.alg();
    let n = alg.base().len() as u32;
    if s1 == s2 || s1 >= n || s2 >= n {
        return Err(DbError::FuseSame);
    }
    let (t1, t2) = (alg.base().vtype(s1), alg.base().vtype(s2));
    if t1 != t2 && (t1 != VertexType::Untyped || t2 != VertexType::Untyped) {
        return Err(DbError::TypedFusionMismatch(
            alg.base().label(s1).to_string(),
            alg.base().label(s2).to_string(),
        ));
    }
    let renum = |v: u32| if v > s2 { v - 1 } else { v };
    let vertex_map: Vec<u32> = (0..n).map(|v| if v == s2 { renum(s1) } else { renum(v) }).collect();
    let vm = |v: u32| vertex_map[v as usize];
    let fused_vertex = vm(s1);

    let labels = (0..n).filter(|&v| v != s2).map(|v| alg.base().label(v).to_string()).collect();
    let types = (0..n).filter(|&v| v != s2).map(|v| alg.base().vtype(v)).collect();
    let base = BaseRing::new(labels, types)?;
    let gens = alg
        .gens()
        .iter()
        .map(|g| Generator { name: g.name.clone(), tail: vm(g.tail), head: vm(g.head), invertible: g.invertible })
        .collect();
    let falg = Algebra::new(base, gens)?;
    let kinds: Vec<FusionKind> = alg.gens().iter().map(|g| FusionKind::of(g, s2)).collect();

    let map_w = |w: &Word| w.map_vertices(vm);
    let map = |x: &Element| x.map_words(map_w);
    let e = falg.idem(fused_vertex);
    let gen_el = |g: u32| Element::from_word(falg.letter(Letter::new(g)).unwrap());
    let mut entries = BTreeMap::new();
    let ng = alg.num_gens() as u32;
    for a in 0..ng {
        for b in 0..ng {
            let mut d = ctx.db.entry(a, b).map_factors(|w| Element::from_word(map_w(w)));
            if ctx.db.claim() == Claim::QuasiPoisson {
                d = d + fusion_correction(kinds[a as usize], kinds[b as usize], &gen_el(a), &gen_el(b), &e);
            }
            if !d.is_zero() {
                entries.insert((a, b), d);
            }
        }
    }
    let db = BracketTable::new(falg.clone(), entries, ctx.db.claim())?;

    let phi = match &ctx.phi {
        None => None,
        Some(p) => Some(AntiHom::new(&falg, p.images().iter().map(map).collect(), p.kind())?),
    };
    let moment = match &ctx.moment {
        None => None,
        Some(m) => {
            let mut comps = Vec::new();
            for v in 0..n {
                if v == s2 {
                    continue;
                }
                let c = if v == s1 {
                    let (x, y) = (map(m.component(s1)), map(m.component(s2)));
                    match m.kind {
                        MomentKind::Additive => &x + &y,
                        MomentKind::Multiplicative => &x * &y,
                    }
                } else {
                    map(m.component(v))
                };
                comps.push(c);
            }
            Some(MomentMap::new(&falg, m.kind, comps)?)
        }
    };
    Ok(FusedContext { ctx: Context { db, phi, moment }, vertex_map, kinds, fused_vertex })
}
