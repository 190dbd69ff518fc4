use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use dbracket::Context;
use ncalg::{AntiHom, Element, Letter};

use crate::dims::Mode;
use crate::error::RepError;
use crate::numeric::{Entry, NumTensor2};
use crate::point::RepPoint;

/// `⟪a,b⟫` and (twisted mode) `⟪ϖ(a),b⟫` evaluated at the point.
#[derive(Debug)]
struct Pair {
    direct: NumTensor2,
    twisted: Option<NumTensor2>,
}

/// The bracket induced on matrix entries at one point:
/// twisted `{a_ij,b_kl} = ½⟪a,b⟫_{kj,il} + ½𝔰𝔤𝔫(θi,θj)⟪ϖ(a),b⟫_{kθi,θjl}`,
/// GL `{a_ij,b_kl} = ⟪a,b⟫_{kj,il}`.
pub struct RepBracket<'a> {
    ctx: &'a Context,
    p: &'a RepPoint,
    phi: Option<&'a AntiHom>,
    pairs: RefCell<HashMap<(u32, u32), Rc<Pair>>>,
}

pub fn gen_element(ctx: &Context, g: u32) -> Element {
    Element::from_word(ctx.alg().letter(Letter::new(g)).expect("generator letter"))
}

impl<'a> RepBracket<'a> {
    pub fn new(ctx: &'a Context, p: &'a RepPoint) -> Result<Self, RepError> {
        if ctx.alg() != p.alg() {
            return Err(RepError::Import("point belongs to a different algebra".into()));
        }
        let phi = match p.dims().mode() {
            Mode::Gl => None,
            Mode::Twisted => Some(
                ctx.phi
                    .as_ref()
                    .ok_or_else(|| RepError::Unsupported("twisted mode needs an anti-involution".into()))?,
            ),
        };
        Ok(RepBracket { ctx, p, phi, pairs: RefCell::default() })
    }

    pub fn ctx(&self) -> &Context {
        self.ctx
    }

    pub fn point(&self) -> &RepPoint {
        self.p
    }

    pub fn twisted(&self) -> bool {
        self.phi.is_some()
    }

    fn pair(&self, a: u32, b: u32) -> Rc<Pair> {
        if let Some(x) = self.pairs.borrow().get(&(a, b)) {
            return x.clone();
        }
        let db = &self.ctx.db;
        let direct = NumTensor2::at(self.p, db.entry(a, b));
        let twisted = self.phi.map(|phi| {
            let t = db.eval(phi.image(a), &gen_element(self.ctx, b));
            NumTensor2::at(self.p, &t)
        });
        let x = Rc::new(Pair { direct, twisted });
        self.pairs.borrow_mut().insert((a, b), x.clone());
        x
    }

    fn combine(&self, direct: &NumTensor2, twisted: Option<&NumTensor2>, x: (usize, usize), y: (usize, usize)) -> (f64, f64) {
        let ((i, j), (k, l)) = (x, y);
        match twisted {
            None => (direct.entry(k, j, i, l), direct.entry_scale(k, j, i, l)),
            Some(tw) => {
                let t = self.p.tables();
                let (ti, tj) = (t.theta(i), t.theta(j));
                let s = t.sgn2(ti, tj) as f64;
                let v = 0.5 * direct.entry(k, j, i, l) + 0.5 * s * tw.entry(k, ti, tj, l);
                let sc = (0.5 * direct.entry_scale(k, j, i, l)).max(0.5 * tw.entry_scale(k, ti, tj, l));
                (v, sc)
            }
        }
    }

    /// `{x, y}` for generator entries.
    pub fn entry(&self, x: Entry, y: Entry) -> f64 {
        self.entry_scaled(x, y).0
    }

    /// Value and largest term magnitude.
    pub fn entry_scaled(&self, x: Entry, y: Entry) -> (f64, f64) {
        let pr = self.pair(x.gen, y.gen);
        self.combine(&pr.direct, pr.twisted.as_ref(), (x.i, x.j), (y.i, y.j))
    }

    /// `{X(a)_ij, X(b)_kl}` for arbitrary elements.
    pub fn elements(&self, a: &Element, ij: (usize, usize), b: &Element, kl: (usize, usize)) -> Result<f64, RepError> {
        Ok(self.pair_eval(a, b)?.entry(ij, kl).0)
    }

    /// Both tensors for `(a, b)` evaluated once, for many index pairs.
    pub fn pair_eval(&self, a: &Element, b: &Element) -> Result<PairEval<'_, 'a>, RepError> {
        let (direct, twisted) = self.tensors(a, b)?;
        Ok(PairEval { br: self, direct, twisted })
    }

    fn tensors(&self, a: &Element, b: &Element) -> Result<(NumTensor2, Option<NumTensor2>), RepError> {
        let alg = self.ctx.alg();
        alg.validate(a)?;
        alg.validate(b)?;
        let db = &self.ctx.db;
        let d = NumTensor2::at(self.p, &db.eval(a, b));
        let t = match self.phi {
            None => None,
            Some(phi) => Some(NumTensor2::at(self.p, &db.eval(&phi.apply(alg, a)?, b))),
        };
        Ok((d, t))
    }

    /// `{tr a, tr b}` in closed form: `½ tr m(⟪a,b⟫ + ⟪ϖa,b⟫)` (GL: `tr m⟪a,b⟫`).
    pub fn trace(&self, a: &Element, b: &Element) -> Result<f64, RepError> {
        let (d, t) = self.tensors(a, b)?;
        Ok(match t {
            None => d.trace_mult(),
            Some(t) => 0.5 * (d.trace_mult() + t.trace_mult()),
        })
    }

    /// `Σ_{i,k} {a_ii, b_kk}` through the entry formula.
    pub fn trace_by_indices(&self, a: &Element, b: &Element) -> Result<f64, RepError> {
        let pe = self.pair_eval(a, b)?;
        let n = self.p.n();
        Ok((0..n).flat_map(|i| (0..n).map(move |k| (i, k))).map(|(i, k)| pe.entry((i, i), (k, k)).0).sum())
    }
}

/// `{X(a)_ij, X(b)_kl}` for a fixed pair of elements.
pub struct PairEval<'b, 'a> {
    br: &'b RepBracket<'a>,
    direct: NumTensor2,
    twisted: Option<NumTensor2>,
}

impl PairEval<'_, '_> {
    /// Value and largest term magnitude.
    pub fn entry(&self, ij: (usize, usize), kl: (usize, usize)) -> (f64, f64) {
        self.br.combine(&self.direct, self.twisted.as_ref(), ij, kl)
    }
}

/// One-shot `{X(a)_ij, X(b)_kl}` at `p`.
pub fn induced_bracket(
    ctx: &Context,
    p: &RepPoint,
    a: &Element,
    ij: (usize, usize),
    b: &Element,
    kl: (usize, usize),
) -> Result<f64, RepError> {
    RepBracket::new(ctx, p)?.elements(a, ij, b, kl)
}
