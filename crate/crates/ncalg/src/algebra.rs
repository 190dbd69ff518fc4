use std::collections::HashMap;

use crate::error::AlgError;
use crate::word::{Letter, Word};
use crate::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexType {
    O,
    Sp,
    Untyped,
}

impl VertexType {
    /// The sign 𝔱(s): +1 for O, −1 for Sp.
    pub fn sign(self) -> Option<i64> {
        match self {
            VertexType::O => Some(1),
            VertexType::Sp => Some(-1),
            VertexType::Untyped => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            VertexType::O => "O",
            VertexType::Sp => "Sp",
            VertexType::Untyped => "untyped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseRing {
    labels: Vec<String>,
    types: Vec<VertexType>,
}

impl BaseRing {
    pub fn new(labels: Vec<String>, types: Vec<VertexType>) -> Result<Self, AlgError> {
        if labels.is_empty() {
            return Err(AlgError::EmptyBase);
        }
        assert_eq!(labels.len(), types.len(), "one type per label");
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(AlgError::DuplicateLabel(l.clone()));
            }
        }
        Ok(BaseRing { labels, types })
    }

    pub fn untyped<S: ToString>(labels: &[S]) -> Result<Self, AlgError> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let types = vec![VertexType::Untyped; labels.len()];
        BaseRing::new(labels, types)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, s: u32) -> &str {
        &self.labels[s as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vtype(&self, s: u32) -> VertexType {
        self.types[s as usize]
    }

    pub fn types(&self) -> &[VertexType] {
        &self.types
    }

    pub fn index_of(&self, label: &str) -> Result<u32, AlgError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as u32)
            .ok_or_else(|| AlgError::UnknownLabel(label.to_string()))
    }

    pub fn all_typed(&self) -> bool {
        self.types.iter().all(|t| *t != VertexType::Untyped)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub tail: u32,
    pub head: u32,
    pub invertible: bool,
}

/// Path algebra of a quiver over `base`, localized at the invertible arrows.
#[derive(Debug, Clone)]
pub struct Algebra {
    base: BaseRing,
    gens: Vec<Generator>,
    index: HashMap<String, u32>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.gens == other.gens
    }
}

impl Algebra {
    pub fn new(base: BaseRing, gens: Vec<Generator>) -> Result<Self, AlgError> {
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if (g.tail as usize) >= base.len() || (g.head as usize) >= base.len() {
                return Err(AlgError::UnknownLabel(format!("endpoint of `{}`", g.name)));
            }
            if index.insert(g.name.clone(), i as u32).is_some() {
                return Err(AlgError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Algebra { base, gens, index })
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen(&self, g: u32) -> &Generator {
        &self.gens[g as usize]
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_id(&self, name: &str) -> Result<u32, AlgError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| AlgError::UnknownGenerator(name.to_string()))
    }

    /// Source vertex of a letter, read along the path.
    pub fn letter_tail(&self, l: Letter) -> u32 {
        let g = self.gen(l.gen);
        if l.inv {
            g.head
        } else {
            g.tail
        }
    }

    pub fn letter_head(&self, l: Letter) -> u32 {
        let g = self.gen(l.gen);
        if l.inv {
            g.tail
        } else {
            g.head
        }
    }

    pub fn letter(&self, l: Letter) -> Result<Word, AlgError> {
        if l.inv && !self.gen(l.gen).invertible {
            return Err(AlgError::NotInvertible(self.gen(l.gen).name.clone()));
        }
        Ok(Word::from_letters(self.letter_tail(l), self.letter_head(l), vec![l]))
    }

    /// Builds a word from letters, checking composability and invertibility.
    pub fn word(&self, start: u32, letters: Vec<Letter>) -> Result<Word, AlgError> {
        let mut cur = start;
        for &l in &letters {
            if l.inv && !self.gen(l.gen).invertible {
                return Err(AlgError::NotInvertible(self.gen(l.gen).name.clone()));
            }
            if self.letter_tail(l) != cur {
                return Err(AlgError::Malformed(format!(
                    "letter `{}` does not start at `{}`",
                    self.gen(l.gen).name,
                    self.base.label(cur)
                )));
            }
            cur = self.letter_head(l);
        }
        let w = Word::from_letters(start, cur, letters);
        Ok(w.reduced())
    }

    pub fn idem(&self, s: u32) -> Element {
        Element::from_word(Word::idem(s))
    }

    /// The unit `Σₛ eₛ`.
    pub fn one(&self) -> Element {
        let mut e = Element::zero();
        for s in 0..self.base.len() as u32 {
            e.add_word(Word::idem(s), crate::qi(1));
        }
        e
    }

    pub fn g(&self, name: &str) -> Element {
        let id = self.gen_id(name).unwrap_or_else(|e| panic!("{e}"));
        Element::from_word(self.letter(Letter::new(id)).unwrap())
    }

    pub fn ginv(&self, name: &str) -> Element {
        let id = self.gen_id(name).unwrap_or_else(|e| panic!("{e}"));
        Element::from_word(self.letter(Letter::inverse(id)).unwrap_or_else(|e| panic!("{e}")))
    }

    /// Splits a word after `k` letters.
    pub fn split_word(&self, w: &Word, k: usize) -> (Word, Word) {
        let mid = if k == 0 { w.start() } else { self.letter_head(w.letters()[k - 1]) };
        w.split_at(k, mid)
    }

    /// Inverse of a word, defined when every letter is invertible.
    pub fn word_inverse(&self, w: &Word) -> Result<Word, AlgError> {
        for l in w.letters() {
            if !l.inv && !self.gen(l.gen).invertible {
                return Err(AlgError::NotInvertible(self.gen(l.gen).name.clone()));
            }
        }
        Ok(w.inverse_unchecked())
    }

    /// Inverse of a monomial `c·w`.
    pub fn inverse(&self, x: &Element) -> Result<Element, AlgError> {
        let (w, c) = x
            .as_monomial()
            .ok_or_else(|| AlgError::UnsupportedInverse(crate::render_element(self, x)))?;
        let wi = self.word_inverse(w)?;
        let mut out = Element::zero();
        out.add_word(wi, num_traits::Inv::inv(c.clone()));
        Ok(out)
    }

    /// Checks that every word is composable for this algebra and reduced.
    pub fn validate(&self, x: &Element) -> Result<(), AlgError> {
        for (w, _) in x.iter() {
            let rebuilt = self.word(w.start(), w.letters().to_vec())?;
            if rebuilt.end() != w.end() || rebuilt != *w {
                return Err(AlgError::Malformed(crate::render_word(self, w)));
            }
        }
        Ok(())
    }
}
