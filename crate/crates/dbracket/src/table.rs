use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use ncalg::{render_element, Algebra, Element, Letter, Tensor2, Word, Q};
use num_traits::One;

use crate::error::DbError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    Poisson,
    QuasiPoisson,
    None,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::Poisson => "poisson",
            Claim::QuasiPoisson => "quasi_poisson",
            Claim::None => "none",
        }
    }
}

/// A double bracket given on ordered generator pairs, extended by the
/// outer/inner derivation rules. Inverse letters are never stored; they are
/// handled by `⟪a,g⁻¹⟫ = −g⁻¹⟪a,g⟫g⁻¹` and `⟪g⁻¹,a⟫ = −g⁻¹∗⟪g,a⟫∗g⁻¹`.
pub struct BracketTable {
    alg: Algebra,
    table: Vec<Tensor2>,
    claim: Claim,
    cache: Mutex<HashMap<(Word, Word), Tensor2>>,
}

impl Clone for BracketTable {
    fn clone(&self) -> Self {
        BracketTable {
            alg: self.alg.clone(),
            table: self.table.clone(),
            claim: self.claim,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for BracketTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BracketTable")
            .field("gens", &self.alg.num_gens())
            .field("claim", &self.claim)
            .finish()
    }
}

impl PartialEq for BracketTable {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.table == other.table
    }
}

impl BracketTable {
    /// Entries are given on ordered pairs; a pair whose reverse is absent
    /// gets the reverse filled in by cyclic antisymmetry. Everything is then
    /// validated: block structure and `⟪b,a⟫ = −⟪a,b⟫°`.
    pub fn new(
        alg: Algebra,
        entries: BTreeMap<(u32, u32), Tensor2>,
        claim: Claim,
    ) -> Result<Self, DbError> {
        let n = alg.num_gens();
        let mut table = vec![Tensor2::zero(); n * n];
        for (&(a, b), d) in &entries {
            table[a as usize * n + b as usize] = d.clone();
        }
        for (&(a, b), d) in &entries {
            if !entries.contains_key(&(b, a)) {
                table[b as usize * n + a as usize] = -d.transpose();
            }
        }
        let db = BracketTable { alg, table, claim, cache: Mutex::new(HashMap::new()) };
        db.validate()?;
        Ok(db)
    }

    /// Same as `new`, keyed by generator names.
    pub fn from_named(
        alg: Algebra,
        entries: Vec<(&str, &str, Tensor2)>,
        claim: Claim,
    ) -> Result<Self, DbError> {
        let mut map = BTreeMap::new();
        for (a, b, d) in entries {
            map.insert((alg.gen_id(a)?, alg.gen_id(b)?), d);
        }
        BracketTable::new(alg, map, claim)
    }

    fn validate(&self) -> Result<(), DbError> {
        let n = self.alg.num_gens() as u32;
        for a in 0..n {
            for b in 0..n {
                let d = self.entry(a, b);
                let (ga, gb) = (self.alg.gen(a), self.alg.gen(b));
                let name = |g: u32| self.alg.gen(g).name.clone();
                for ([x, y], _) in d.iter() {
                    for w in [x, y] {
                        self.alg.validate(&Element::from_word(w.clone()))?;
                    }
                    let ok = x.start() == gb.tail
                        && x.end() == ga.head
                        && y.start() == ga.tail
                        && y.end() == gb.head;
                    if !ok {
                        return Err(DbError::Block { a: name(a), b: name(b) });
                    }
                }
                if *self.entry(b, a) != -d.transpose() {
                    return Err(DbError::Antisymmetry { a: name(a), b: name(b) });
                }
            }
        }
        Ok(())
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }

    pub fn claim(&self) -> Claim {
        self.claim
    }

    pub fn with_claim(mut self, claim: Claim) -> Self {
        self.claim = claim;
        self
    }

    pub fn entry(&self, a: u32, b: u32) -> &Tensor2 {
        &self.table[a as usize * self.alg.num_gens() + b as usize]
    }

    /// Nonzero generator-pair entries in (a, b) order.
    pub fn entries(&self) -> Vec<((u32, u32), &Tensor2)> {
        let n = self.alg.num_gens() as u32;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let d = self.entry(a, b);
                if !d.is_zero() {
                    out.push(((a, b), d));
                }
            }
        }
        out
    }

    /// `⟪x, y⟫` for arbitrary elements.
    pub fn eval(&self, x: &Element, y: &Element) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (u, cu) in x.iter() {
            for (v, cv) in y.iter() {
                let d = self.eval_word(u, v);
                out.add_scaled(&d, &(cu * cv));
            }
        }
        out
    }

    pub fn eval_word(&self, u: &Word, v: &Word) -> Tensor2 {
        if u.is_empty() || v.is_empty() {
            return Tensor2::zero();
        }
        let key = (u.clone(), v.clone());
        if let Some(d) = self.cache.lock().unwrap().get(&key) {
            return d.clone();
        }
        let d = self.eval_word_uncached(u, v);
        self.cache.lock().unwrap().insert(key, d.clone());
        d
    }

    fn eval_word_uncached(&self, u: &Word, v: &Word) -> Tensor2 {
        if v.len() > 1 {
            // ⟪u, v₁v₂⟫ = ⟪u,v₁⟫v₂ + v₁⟪u,v₂⟫
            let (v1, v2) = self.alg.split_word(v, 1);
            let (e1, e2) = (Element::from_word(v1.clone()), Element::from_word(v2.clone()));
            let left = self.eval_word(u, &v1).mul_slot_right(1, &e2);
            let right = self.eval_word(u, &v2).mul_slot_left(0, &e1);
            return left + right;
        }
        if u.len() > 1 {
            // ⟪u₁u₂, v⟫ = ⟪u₁,v⟫∗u₂ + u₁∗⟪u₂,v⟫
            let (u1, u2) = self.alg.split_word(u, 1);
            let (e1, e2) = (Element::from_word(u1.clone()), Element::from_word(u2.clone()));
            let left = self.eval_word(&u1, v).mul_slot_right(0, &e2);
            let right = self.eval_word(&u2, v).mul_slot_left(1, &e1);
            return left + right;
        }
        self.eval_letters(u.letters()[0], v.letters()[0])
    }

    fn eval_letters(&self, l: Letter, m: Letter) -> Tensor2 {
        let word = |x: Letter| Element::from_word(self.alg.letter(x).expect("valid letter"));
        if m.inv {
            let gi = word(m);
            let d = self.eval_letters(l, m.flip());
            return -d.mul_slot_left(0, &gi).mul_slot_right(1, &gi);
        }
        if l.inv {
            let gi = word(l);
            let d = self.eval_letters(l.flip(), m);
            return -d.mul_slot_right(0, &gi).mul_slot_left(1, &gi);
        }
        self.entry(l.gen, m.gen).clone()
    }

    /// `m∘⟪x,y⟫`, the sharp bracket before passing to `A/[A,A]`.
    pub fn sharp(&self, x: &Element, y: &Element) -> Element {
        self.eval(x, y).multiply()
    }

    /// Replaces one entry (and its antisymmetric partner); for mutation controls.
    pub fn tampered(&self, a: u32, b: u32, d: Tensor2) -> Result<Self, DbError> {
        let mut map = BTreeMap::new();
        for ((x, y), t) in self.entries() {
            if (x, y) != (a, b) && (x, y) != (b, a) {
                map.insert((x, y), t.clone());
            }
        }
        map.insert((a, b), d);
        BracketTable::new(self.alg.clone(), map, self.claim)
    }

    pub fn render_entry(&self, a: u32, b: u32) -> String {
        ncalg::render_tensor(&self.alg, self.entry(a, b))
    }

    pub(crate) fn one_half() -> Q {
        Q::one() / Q::from_integer(2.into())
    }

    pub fn render(&self, x: &Element) -> String {
        render_element(&self.alg, x)
    }
}
