use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::word::Word;
use crate::Q;

/// Finite rational combination of words, always in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<Word, Q>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Element::zero();
        e.terms.insert(w, Q::one());
        e
    }

    pub fn monomial(w: Word, c: Q) -> Self {
        let mut e = Element::zero();
        e.add_word(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Word, Q> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c·w`, reducing `w` and dropping a vanishing coefficient.
    pub fn add_word(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        let w = w.reduced();
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (w, k) in &other.terms {
            self.add_word(w.clone(), k * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect() }
    }

    /// Single term `c·w`, if that is all there is.
    pub fn as_monomial(&self) -> Option<(&Word, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// `eₛ · self · eₜ`.
    pub fn corner(&self, s: u32, t: u32) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.start() == s && w.end() == t)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every word is an idempotent, i.e. the element lies in A₀.
    pub fn in_base(&self) -> bool {
        self.terms.keys().all(|w| w.is_empty())
    }

    pub fn mul_word_left(&self, w: &Word) -> Element {
        let mut out = Element::zero();
        for (v, c) in &self.terms {
            if let Some(p) = w.mul(v) {
                out.add_word(p, c.clone());
            }
        }
        out
    }

    pub fn mul_word_right(&self, w: &Word) -> Element {
        let mut out = Element::zero();
        for (v, c) in &self.terms {
            if let Some(p) = v.mul(w) {
                out.add_word(p, c.clone());
            }
        }
        out
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_word(f(w), c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32, one: &Element) -> Element {
        let mut out = one.clone();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

impl FromIterator<(Word, Q)> for Element {
    fn from_iter<I: IntoIterator<Item = (Word, Q)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (w, c) in iter {
            e.add_word(w, c);
        }
        e
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_word(w.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                if let Some(p) = a.mul(b) {
                    out.add_word(p, ca * cb);
                }
            }
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Element> for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Element> for Element {
            type Output = Element;
            fn $m(self, rhs: &Element) -> Element {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Element> for &'a Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                self.$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}
