use ncalg::{render_element, render_tensor, Algebra, AntiHom, Element, Letter, Tensor2, Q};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::DbError;
use crate::table::BracketTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    Additive,
    Multiplicative,
}

/// One component per idempotent, μₛ (or Φₛ) ∈ eₛAeₛ.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMap {
    pub kind: MomentKind,
    comps: Vec<Element>,
}

impl MomentMap {
    pub fn new(alg: &Algebra, kind: MomentKind, comps: Vec<Element>) -> Result<Self, DbError> {
        assert_eq!(comps.len(), alg.base().len(), "one component per idempotent");
        for (s, x) in comps.iter().enumerate() {
            let label = alg.base().label(s as u32).to_string();
            alg.validate(x)?;
            if x.iter().any(|(w, _)| w.start() != s as u32 || w.end() != s as u32) {
                return Err(DbError::MomentCorner(label));
            }
            if kind == MomentKind::Multiplicative && alg.inverse(x).is_err() {
                return Err(DbError::MomentNotInvertible(label));
            }
        }
        Ok(MomentMap { kind, comps })
    }

    pub fn component(&self, s: u32) -> &Element {
        &self.comps[s as usize]
    }

    pub fn components(&self) -> &[Element] {
        &self.comps
    }

    pub fn total(&self) -> Element {
        let mut out = Element::zero();
        for c in &self.comps {
            out = &out + c;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentFailure {
    pub vertex: String,
    pub generator: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentCheck {
    pub checked: usize,
    pub failures: Vec<MomentFailure>,
}

impl MomentCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Required value of `⟪mₛ, a⟫` for a moment component `mₛ`.
fn required(kind: MomentKind, e: &Element, m: &Element, a: &Element) -> Tensor2 {
    let t = |x: &Element, y: &Element| Tensor2::outer([x, y]);
    match kind {
        MomentKind::Additive => t(&(a * e), e) - t(e, &(e * a)),
        MomentKind::Multiplicative => {
            let mut out = t(&(a * e), m);
            out = out - t(e, &(m * a));
            out = out + t(&(a * m), e);
            out = out - t(m, &(e * a));
            out.scale(&BracketTable::one_half())
        }
    }
}

pub fn check_moment_map(db: &BracketTable, m: &MomentMap) -> MomentCheck {
    let alg = db.alg();
    let mut out = MomentCheck { checked: 0, failures: Vec::new() };
    for s in 0..alg.base().len() as u32 {
        let e = alg.idem(s);
        let ms = m.component(s);
        for g in 0..alg.num_gens() as u32 {
            let a = Element::from_word(alg.letter(Letter::new(g)).unwrap());
            let lhs = db.eval(ms, &a);
            let rhs = required(m.kind, &e, ms, &a);
            out.checked += 1;
            if lhs != rhs {
                out.failures.push(MomentFailure {
                    vertex: alg.base().label(s).to_string(),
                    generator: alg.gen(g).name.clone(),
                    lhs: render_tensor(alg, &lhs),
                    rhs: render_tensor(alg, &rhs),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub moment: MomentMap,
    /// The constants `c` computed per vertex (`c ∈ ℚ`, meaning `c·eₛ`).
    pub constants: Vec<Q>,
    /// Vertices whose square root `√c` is not rational: the component is left
    /// unscaled and the constant is carried symbolically.
    pub deferred: Vec<(String, Q)>,
}

fn rational_sqrt(c: &Q) -> Option<Q> {
    if c.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Q::new(root(c.numer())?, root(c.denom())?))
}

/// `x = k·eₛ` → `k`.
fn scalar_at(x: &Element, s: u32) -> Option<Q> {
    if x.is_zero() {
        return Some(Q::zero());
    }
    let (w, c) = x.as_monomial()?;
    (w.is_empty() && w.start() == s).then(|| c.clone())
}

/// Shifts (or rescales) a moment map so that `μ + φ(μ) = 0` (resp. `φ(Φ)Φ = 1`).
pub fn normalize_moment_map(
    db: &BracketTable,
    m: &MomentMap,
    phi: &AntiHom,
) -> Result<Normalized, DbError> {
    let alg = db.alg();
    let n = alg.base().len() as u32;
    let mut comps = Vec::new();
    let mut constants = Vec::new();
    let mut deferred = Vec::new();
    for s in 0..n {
        let ms = m.component(s);
        let label = alg.base().label(s).to_string();
        match m.kind {
            MomentKind::Additive => {
                let c = -&(&phi.apply(alg, ms)? + ms);
                let k = scalar_at(&c, s).ok_or_else(|| {
                    DbError::NotAMomentMap(format!(
                        "−φ(μ_{label}) − μ_{label} = {} is not in A₀",
                        render_element(alg, &c)
                    ))
                })?;
                let shifted = ms + &alg.idem(s).scale(&(&k / Q::from_integer(2.into())));
                debug_assert!((&shifted + &phi.apply(alg, &shifted)?).is_zero());
                comps.push(shifted);
                constants.push(k);
            }
            MomentKind::Multiplicative => {
                let inv = alg.inverse(ms)?;
                let c = &phi.apply(alg, &inv)? * &inv;
                let k = scalar_at(&c, s).filter(|k| !k.is_zero()).ok_or_else(|| {
                    DbError::NotAMomentMap(format!(
                        "φ(Φ_{label}⁻¹)Φ_{label}⁻¹ = {} is not an invertible scalar",
                        render_element(alg, &c)
                    ))
                })?;
                match rational_sqrt(&k) {
                    Some(r) => {
                        let scaled = ms.scale(&r);
                        debug_assert_eq!(&phi.apply(alg, &scaled)? * &scaled, alg.idem(s));
                        comps.push(scaled);
                    }
                    None => {
                        deferred.push((label, k.clone()));
                        comps.push(ms.clone());
                    }
                }
                constants.push(k);
            }
        }
    }
    let moment = MomentMap::new(alg, m.kind, comps)?;
    Ok(Normalized { moment, constants, deferred })
}

impl Normalized {
    pub fn is_exact(&self) -> bool {
        self.deferred.is_empty()
    }

    pub fn unchanged(&self, original: &MomentMap) -> bool {
        self.moment == *original
    }
}
