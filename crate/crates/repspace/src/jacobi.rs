use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use dbracket::triple_bracket;
use nalgebra::DMatrix;
use ncalg::{q_to_f64, Element, Tensor2, Word};

use crate::bracket::{gen_element, RepBracket};
use crate::numeric::{Entry, NumTensor3};

pub const ABS_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacMode {
    /// Sum of the three nested brackets, the inner one kept as a polynomial
    /// in matrix entries and the outer one applied by the Leibniz rule.
    Nested,
    /// The closed combination of triple brackets.
    ClosedForm,
}

/// A Jacobiator value with the largest magnitude among its summands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub value: f64,
    pub scale: f64,
}

impl Scaled {
    /// `|self − target|` relative to the larger scale; differences below the
    /// absolute floor `1e−12` count as zero.
    pub fn rel_diff(&self, target: &Scaled) -> f64 {
        let d = (self.value - target.value).abs();
        if d <= ABS_FLOOR {
            0.0
        } else {
            d / self.scale.max(target.scale).max(f64::MIN_POSITIVE)
        }
    }

    pub const ZERO: Scaled = Scaled { value: 0.0, scale: 0.0 };
}

/// `{x, ·}` as a derivation on words: `D(w)_pq = {x, X(w)_pq}`.
struct Derivation<'b, 'a> {
    br: &'b RepBracket<'a>,
    x: Entry,
    gens: RefCell<HashMap<u32, Rc<DMatrix<f64>>>>,
    words: RefCell<HashMap<Word, Rc<DMatrix<f64>>>>,
}

impl<'b, 'a> Derivation<'b, 'a> {
    fn new(br: &'b RepBracket<'a>, x: Entry) -> Self {
        Derivation { br, x, gens: RefCell::default(), words: RefCell::default() }
    }

    /// `B(g)_rs = {x, g_rs}`, nonzero only on the block of `g`.
    fn generator(&self, g: u32) -> Rc<DMatrix<f64>> {
        if let Some(m) = self.gens.borrow().get(&g) {
            return m.clone();
        }
        let p = self.br.point();
        let gen = p.alg().gen(g);
        let t = p.tables();
        let mut m = DMatrix::zeros(p.n(), p.n());
        for r in t.block(gen.tail as usize) {
            for s in t.block(gen.head as usize) {
                m[(r, s)] = self.br.entry(self.x, Entry::new(g, r, s));
            }
        }
        let m = Rc::new(m);
        self.gens.borrow_mut().insert(g, m.clone());
        m
    }

    fn word(&self, w: &Word) -> Rc<DMatrix<f64>> {
        if let Some(m) = self.words.borrow().get(w) {
            return m.clone();
        }
        let p = self.br.point();
        let n = p.n();
        let m = if w.is_empty() {
            DMatrix::zeros(n, n)
        } else {
            let alg = p.alg();
            let (head, rest) = alg.split_word(w, 1);
            let l = head.letters()[0];
            let b = self.generator(l.gen);
            let dl = if l.inv {
                // {x, g⁻¹} = −g⁻¹ {x, g} g⁻¹
                let gi = p.word(&head);
                -(&*gi * &*b * &*gi)
            } else {
                (*b).clone()
            };
            if rest.is_empty() {
                dl
            } else {
                dl * &*p.word(&rest) + &*p.word(&head) * &*self.word(&rest)
            }
        };
        let m = Rc::new(m);
        self.words.borrow_mut().insert(w.clone(), m.clone());
        m
    }
}

/// One summand `c · X(w₁)_{p₁q₁} · X(w₂)_{p₂q₂}` of `{y, z}`.
struct Monomial {
    c: f64,
    w1: Word,
    e1: (usize, usize),
    w2: Word,
    e2: (usize, usize),
}

fn push_terms(out: &mut Vec<Monomial>, t: &Tensor2, c: f64, e1: (usize, usize), e2: (usize, usize)) {
    for ([w1, w2], q) in t.iter() {
        out.push(Monomial { c: c * q_to_f64(q), w1: w1.clone(), e1, w2: w2.clone(), e2 });
    }
}

impl<'a> RepBracket<'a> {
    /// `{y, z}` as a polynomial in matrix entries.
    fn inner(&self, y: Entry, z: Entry) -> Vec<Monomial> {
        let ctx = self.ctx();
        let db = &ctx.db;
        let (b, c) = (y.gen, z.gen);
        let (k, l, u, v) = (y.i, y.j, z.i, z.j);
        let mut out = Vec::new();
        if !self.twisted() {
            push_terms(&mut out, db.entry(b, c), 1.0, (u, l), (k, v));
            return out;
        }
        let t = self.point().tables();
        push_terms(&mut out, db.entry(b, c), 0.5, (u, l), (k, v));
        let phi = ctx.phi.as_ref().expect("twisted bracket has ϖ");
        let tw = db.eval(phi.image(b), &gen_element(ctx, c));
        let (tk, tl) = (t.theta(k), t.theta(l));
        push_terms(&mut out, &tw, 0.5 * t.sgn2(tk, tl) as f64, (u, tk), (tl, v));
        out
    }

    fn nested_one(&self, x: Entry, y: Entry, z: Entry) -> Scaled {
        let d = Derivation::new(self, x);
        let p = self.point();
        let (mut value, mut scale) = (0.0, 0.0f64);
        for m in self.inner(y, z) {
            let (x1, x2) = (p.word(&m.w1), p.word(&m.w2));
            let (d1, d2) = (d.word(&m.w1), d.word(&m.w2));
            let a = m.c * d1[m.e1] * x2[m.e2];
            let b = m.c * x1[m.e1] * d2[m.e2];
            value += a + b;
            scale = scale.max(a.abs()).max(b.abs());
        }
        Scaled { value, scale }
    }

    /// `{x,{y,z}} + {y,{z,x}} + {z,{x,y}}`.
    pub fn jacobiator_nested(&self, x: Entry, y: Entry, z: Entry) -> Scaled {
        [(x, y, z), (y, z, x), (z, x, y)].iter().fold(Scaled { value: 0.0, scale: 0.0 }, |acc, &(a, b, c)| {
            let s = self.nested_one(a, b, c);
            Scaled { value: acc.value + s.value, scale: acc.scale.max(s.scale) }
        })
    }
}

/// Closed-form evaluator; caches the triple brackets per generator triple.
pub struct ClosedJacobiator<'b, 'a> {
    br: &'b RepBracket<'a>,
    cache: RefCell<HashMap<[(u32, bool); 3], Rc<NumTensor3>>>,
}

impl<'b, 'a> ClosedJacobiator<'b, 'a> {
    pub fn new(br: &'b RepBracket<'a>) -> Self {
        ClosedJacobiator { br, cache: RefCell::default() }
    }

    /// `⟪A,B,C⟫` with each slot a generator or its `ϖ`-image.
    fn triple(&self, key: [(u32, bool); 3]) -> Rc<NumTensor3> {
        if let Some(t) = self.cache.borrow().get(&key) {
            return t.clone();
        }
        let ctx = self.br.ctx();
        let el = |(g, tw): (u32, bool)| -> Element {
            if tw {
                ctx.phi.as_ref().expect("twisted").image(g).clone()
            } else {
                gen_element(ctx, g)
            }
        };
        let t = triple_bracket(&ctx.db, &el(key[0]), &el(key[1]), &el(key[2]));
        let t = Rc::new(NumTensor3::at(self.br.point(), &t));
        self.cache.borrow_mut().insert(key, t.clone());
        t
    }

    pub fn eval(&self, x: Entry, y: Entry, z: Entry) -> Scaled {
        let (a, b, c) = (x.gen, y.gen, z.gen);
        let (i, j, k, l, u, v) = (x.i, x.j, y.i, y.j, z.i, z.j);
        let (mut value, mut scale) = (0.0, 0.0f64);
        let mut add = |coef: f64, key: [(u32, bool); 3], idx: [(usize, usize); 3]| {
            if coef == 0.0 {
                return;
            }
            let (s, sc) = self.triple(key).entry(idx);
            value += coef * s;
            scale = scale.max((coef * sc).abs());
        };
        if !self.br.twisted() {
            add(1.0, [(a, false), (b, false), (c, false)], [(u, j), (i, l), (k, v)]);
            add(-1.0, [(a, false), (c, false), (b, false)], [(k, j), (i, v), (u, l)]);
            return Scaled { value, scale };
        }
        let t = self.br.point().tables();
        let th = |m: usize| t.theta(m);
        let (sa, sb, sc) = (
            0.25 * t.sgn2(th(i), th(j)) as f64,
            0.25 * t.sgn2(th(k), th(l)) as f64,
            0.25 * t.sgn2(th(u), th(v)) as f64,
        );
        add(0.25, [(a, false), (b, false), (c, false)], [(u, j), (i, l), (k, v)]);
        add(-0.25, [(a, false), (c, false), (b, false)], [(k, j), (i, v), (u, l)]);
        add(sa, [(a, true), (b, false), (c, false)], [(u, th(i)), (th(j), l), (k, v)]);
        add(-sa, [(a, true), (c, false), (b, false)], [(k, th(i)), (th(j), v), (u, l)]);
        add(sb, [(a, false), (b, true), (c, false)], [(u, j), (i, th(k)), (th(l), v)]);
        add(-sb, [(a, false), (c, false), (b, true)], [(th(l), j), (i, v), (u, th(k))]);
        add(sc, [(a, false), (b, false), (c, true)], [(th(v), j), (i, l), (k, th(u))]);
        add(-sc, [(a, false), (c, true), (b, false)], [(k, j), (i, th(u)), (th(v), l)]);
        Scaled { value, scale }
    }
}

/// Jacobiator of three generator entries in either mode.
pub fn jacobiator(br: &RepBracket, x: Entry, y: Entry, z: Entry, mode: JacMode) -> Scaled {
    match mode {
        JacMode::Nested => br.jacobiator_nested(x, y, z),
        JacMode::ClosedForm => ClosedJacobiator::new(br).eval(x, y, z),
    }
}
