use std::rc::Rc;

use nalgebra::DMatrix;
use ncalg::{q_to_f64, Tensor2, Tensor3};

use crate::point::RepPoint;

/// A matrix-entry coordinate `X(gen)_{ij}` (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub gen: u32,
    pub i: usize,
    pub j: usize,
}

impl Entry {
    pub fn new(gen: u32, i: usize, j: usize) -> Self {
        Entry { gen, i, j }
    }
}

/// `Σ c X(w′) ⊗ X(w″)` at a point; `(d′⊗d″)_{ij,kl} = d′_ij d″_kl`.
#[derive(Debug, Clone, Default)]
pub struct NumTensor2 {
    pub terms: Vec<(f64, Rc<DMatrix<f64>>, Rc<DMatrix<f64>>)>,
}

impl NumTensor2 {
    pub fn at(p: &RepPoint, t: &Tensor2) -> Self {
        let terms = t.iter().map(|([w1, w2], c)| (q_to_f64(c), p.word(w1), p.word(w2))).collect();
        NumTensor2 { terms }
    }

    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.terms.iter().map(|(c, a, b)| c * a[(i, j)] * b[(k, l)]).sum()
    }

    /// Largest `|term|` entering `entry`, for relative tolerances.
    pub fn entry_scale(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.terms.iter().map(|(c, a, b)| (c * a[(i, j)] * b[(k, l)]).abs()).fold(0.0, f64::max)
    }

    /// `tr X(m∘d)`.
    pub fn trace_mult(&self) -> f64 {
        self.terms.iter().map(|(c, a, b)| c * (&**a * &**b).trace()).sum()
    }
}

/// Three-slot analogue of [`NumTensor2`].
#[derive(Debug, Clone, Default)]
pub struct NumTensor3 {
    pub terms: Vec<(f64, [Rc<DMatrix<f64>>; 3])>,
}

impl NumTensor3 {
    pub fn at(p: &RepPoint, t: &Tensor3) -> Self {
        let terms = t
            .iter()
            .map(|([w1, w2, w3], c)| (q_to_f64(c), [p.word(w1), p.word(w2), p.word(w3)]))
            .collect();
        NumTensor3 { terms }
    }

    pub fn entry(&self, idx: [(usize, usize); 3]) -> (f64, f64) {
        let mut sum = 0.0;
        let mut scale = 0.0f64;
        for (c, m) in &self.terms {
            let v = c * m[0][idx[0]] * m[1][idx[1]] * m[2][idx[2]];
            sum += v;
            scale = scale.max(v.abs());
        }
        (sum, scale)
    }
}
