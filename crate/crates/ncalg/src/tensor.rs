use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::element::Element;
use crate::word::Word;
use crate::Q;

/// Element of `A^{⊗N}`, stored as a map from word tuples to coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor<const N: usize> {
    terms: BTreeMap<[Word; N], Q>,
}

pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

impl<const N: usize> Default for Tensor<N> {
    fn default() -> Self {
        Tensor { terms: BTreeMap::new() }
    }
}

impl<const N: usize> Tensor<N> {
    pub fn zero() -> Self {
        Self::default()
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

    pub fn iter(&self) -> btree_map::Iter<'_, [Word; N], Q> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &[Word; N]) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, ws: [Word; N], c: Q) {
        if c.is_zero() {
            return;
        }
        let ws = ws.map(|w| w.reduced());
        match self.terms.entry(ws) {
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

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// `x₁ ⊗ ⋯ ⊗ x_N`.
    pub fn outer(xs: [&Element; N]) -> Self {
        let mut acc: Vec<(Vec<Word>, Q)> = vec![(Vec::new(), Q::one())];
        for x in xs {
            let mut next = Vec::with_capacity(acc.len() * x.len());
            for (ws, c) in &acc {
                for (w, k) in x.iter() {
                    let mut ws2 = ws.clone();
                    ws2.push(w.clone());
                    next.push((ws2, c * k));
                }
            }
            acc = next;
        }
        let mut out = Self::zero();
        for (ws, c) in acc {
            let arr: [Word; N] = ws.try_into().expect("arity");
            out.add_term(arr, c);
        }
        out
    }

    /// Multiplies slot `i` by `x` on the left.
    pub fn mul_slot_left(&self, i: usize, x: &Element) -> Self {
        let mut out = Self::zero();
        for (ws, c) in &self.terms {
            for (w, k) in x.iter() {
                if let Some(p) = w.mul(&ws[i]) {
                    let mut ws2 = ws.clone();
                    ws2[i] = p;
                    out.add_term(ws2, c * k);
                }
            }
        }
        out
    }

    /// Multiplies slot `i` by `x` on the right.
    pub fn mul_slot_right(&self, i: usize, x: &Element) -> Self {
        let mut out = Self::zero();
        for (ws, c) in &self.terms {
            for (w, k) in x.iter() {
                if let Some(p) = ws[i].mul(w) {
                    let mut ws2 = ws.clone();
                    ws2[i] = p;
                    out.add_term(ws2, c * k);
                }
            }
        }
        out
    }

    /// New slot `k` holds old slot `perm[k]`.
    pub fn permute(&self, perm: [usize; N]) -> Self {
        let mut out = Self::zero();
        for (ws, c) in &self.terms {
            let ws2: [Word; N] = std::array::from_fn(|k| ws[perm[k]].clone());
            out.add_term(ws2, c.clone());
        }
        out
    }

    /// Applies a linear map to every tensor factor.
    pub fn map_factors(&self, f: impl Fn(&Word) -> Element) -> Self {
        let mut out = Self::zero();
        for (ws, c) in &self.terms {
            let imgs: Vec<Element> = ws.iter().map(&f).collect();
            let refs: [&Element; N] = std::array::from_fn(|k| &imgs[k]);
            out.add_scaled(&Self::outer(refs), c);
        }
        out
    }

    /// Multiplies the factors together: `m(x₁⊗⋯⊗x_N) = x₁⋯x_N`.
    pub fn multiply(&self) -> Element {
        let mut out = Element::zero();
        'terms: for (ws, c) in &self.terms {
            let mut acc = ws[0].clone();
            for w in &ws[1..] {
                match acc.mul(w) {
                    Some(p) => acc = p,
                    None => continue 'terms,
                }
            }
            out.add_word(acc, c.clone());
        }
        out
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().flat_map(|ws| ws.iter().map(|w| w.len())).max().unwrap_or(0)
    }
}

impl Tensor2 {
    /// Outer bimodule action `a·d·b = a d′ ⊗ d″ b`.
    pub fn outer_act(&self, a: &Element, b: &Element) -> Self {
        self.mul_slot_left(0, a).mul_slot_right(1, b)
    }

    /// Inner bimodule action `a∗d∗b = d′ b ⊗ a d″`.
    pub fn inner_act(&self, a: &Element, b: &Element) -> Self {
        self.mul_slot_right(0, b).mul_slot_left(1, a)
    }

    /// `(d′⊗d″)° = d″⊗d′`.
    pub fn transpose(&self) -> Self {
        self.permute([1, 0])
    }

    /// `d ⊗ c·w`.
    pub fn append(&self, w: &Word, c: &Q) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ([x, y], k) in &self.terms {
            out.add_term([x.clone(), y.clone(), w.clone()], k * c);
        }
        out
    }

    /// `c·w ⊗ d`.
    pub fn prepend(&self, w: &Word, c: &Q) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ([x, y], k) in &self.terms {
            out.add_term([w.clone(), x.clone(), y.clone()], k * c);
        }
        out
    }
}

impl Tensor3 {
    /// `τ₍₁₂₃₎(a₁⊗a₂⊗a₃) = a₃⊗a₁⊗a₂`.
    pub fn cyc(&self) -> Self {
        self.permute([2, 0, 1])
    }

    /// `τ₍₁₃₎(a₁⊗a₂⊗a₃) = a₃⊗a₂⊗a₁`.
    pub fn tau13(&self) -> Self {
        self.permute([2, 1, 0])
    }
}

impl<'a, const N: usize> Add<&'a Tensor<N>> for &'a Tensor<N> {
    type Output = Tensor<N>;
    fn add(self, rhs: &Tensor<N>) -> Tensor<N> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl<'a, const N: usize> Sub<&'a Tensor<N>> for &'a Tensor<N> {
    type Output = Tensor<N>;
    fn sub(self, rhs: &Tensor<N>) -> Tensor<N> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl<const N: usize> Add for Tensor<N> {
    type Output = Tensor<N>;
    fn add(self, rhs: Tensor<N>) -> Tensor<N> {
        &self + &rhs
    }
}

impl<const N: usize> Sub for Tensor<N> {
    type Output = Tensor<N>;
    fn sub(self, rhs: Tensor<N>) -> Tensor<N> {
        &self - &rhs
    }
}

impl<const N: usize> Neg for &Tensor<N> {
    type Output = Tensor<N>;
    fn neg(self) -> Tensor<N> {
        self.scale(&-Q::one())
    }
}

impl<const N: usize> Neg for Tensor<N> {
    type Output = Tensor<N>;
    fn neg(self) -> Tensor<N> {
        -&self
    }
}
