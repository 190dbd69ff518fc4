use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: u32) -> Self {
        Letter { gen, inv: false }
    }

    pub fn inverse(gen: u32) -> Self {
        Letter { gen, inv: true }
    }

    pub fn flip(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    fn cancels(self, next: Letter) -> bool {
        self.gen == next.gen && self.inv != next.inv
    }
}

/// A path `e_start · l₁ ⋯ lₙ · e_end`; the empty path is `e_start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    start: u32,
    end: u32,
    letters: Vec<Letter>,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then(self.start.cmp(&other.start))
            .then_with(|| self.letters.cmp(&other.letters))
            .then(self.end.cmp(&other.end))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn idem(s: u32) -> Self {
        Word { start: s, end: s, letters: Vec::new() }
    }

    /// Raw constructor; endpoints are trusted. Use `Algebra::word` to check.
    pub fn from_letters(start: u32, end: u32, letters: Vec<Letter>) -> Self {
        Word { start, end, letters }
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn end(&self) -> u32 {
        self.end
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end
    }

    pub fn reduced(mut self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in self.letters.drain(..) {
            match out.last() {
                Some(&p) if p.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        self.letters = out;
        self
    }

    /// Concatenation; `None` when the endpoints do not match.
    pub fn mul(&self, rhs: &Word) -> Option<Word> {
        if self.end != rhs.start {
            return None;
        }
        let mut k = 0;
        let n = self.letters.len();
        while k < n && k < rhs.letters.len() && self.letters[n - 1 - k].cancels(rhs.letters[k]) {
            k += 1;
        }
        let mut letters = Vec::with_capacity(n - k + rhs.letters.len() - k);
        letters.extend_from_slice(&self.letters[..n - k]);
        letters.extend_from_slice(&rhs.letters[k..]);
        Some(Word { start: self.start, end: rhs.end, letters })
    }

    /// Formal inverse; the caller guarantees every letter is invertible.
    pub fn inverse_unchecked(&self) -> Word {
        Word {
            start: self.end,
            end: self.start,
            letters: self.letters.iter().rev().map(|l| l.flip()).collect(),
        }
    }

    /// Letters in reverse order with endpoints swapped: the image in the opposite algebra.
    pub fn reversed(&self) -> Word {
        Word {
            start: self.end,
            end: self.start,
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Splits after `k` letters; `mid` is the vertex reached there.
    pub fn split_at(&self, k: usize, mid: u32) -> (Word, Word) {
        (
            Word { start: self.start, end: mid, letters: self.letters[..k].to_vec() },
            Word { start: mid, end: self.end, letters: self.letters[k..].to_vec() },
        )
    }

    pub fn map_vertices(&self, f: impl Fn(u32) -> u32) -> Word {
        Word { start: f(self.start), end: f(self.end), letters: self.letters.clone() }
    }
}
