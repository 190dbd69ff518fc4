use std::ops::Range;

use nalgebra::DMatrix;
use ncalg::VertexType;

use crate::dims::{Mode, TypedDims};

/// Index maps on `{0, …, N−1}` (0-based throughout):
/// block `ι`, block size `α̂`, sign `sgn_α`, involution `θ`, type sign `𝔱∘ι`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexTables {
    n: usize,
    offsets: Vec<usize>,
    alpha: Vec<usize>,
    types: Vec<VertexType>,
    iota: Vec<usize>,
    ahat: Vec<usize>,
    sgn: Vec<i64>,
    theta: Vec<usize>,
    tsign: Vec<i64>,
}

impl IndexTables {
    pub fn new(dims: &TypedDims) -> Self {
        let alpha = dims.alpha().to_vec();
        let types: Vec<VertexType> = match dims.mode() {
            Mode::Twisted => dims.types().to_vec(),
            // θ is unused in GL mode; keep the trivial orthogonal tables.
            Mode::Gl => vec![VertexType::O; alpha.len()],
        };
        let n = dims.n();
        let mut offsets = Vec::with_capacity(alpha.len());
        let (mut iota, mut ahat, mut sgn, mut theta, mut tsign) = (vec![], vec![], vec![], vec![], vec![]);
        let mut off = 0;
        for (s, (&a, &t)) in alpha.iter().zip(&types).enumerate() {
            offsets.push(off);
            for r in 0..a {
                let k = off + r;
                iota.push(s);
                ahat.push(a);
                match t {
                    VertexType::Sp => {
                        let half = a / 2;
                        sgn.push(if r < half { 1 } else { -1 });
                        theta.push(if r < half { k + half } else { k - half });
                        tsign.push(-1);
                    }
                    _ => {
                        sgn.push(1);
                        theta.push(k);
                        tsign.push(1);
                    }
                }
            }
            off += a;
        }
        IndexTables { n, offsets, alpha, types, iota, ahat, sgn, theta, tsign }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_blocks(&self) -> usize {
        self.alpha.len()
    }

    /// Index range `𝚁ₛ` of block `s`.
    pub fn block(&self, s: usize) -> Range<usize> {
        self.offsets[s]..self.offsets[s] + self.alpha[s]
    }

    pub fn block_type(&self, s: usize) -> VertexType {
        self.types[s]
    }

    pub fn iota(&self, k: usize) -> usize {
        self.iota[k]
    }

    pub fn ahat(&self, k: usize) -> usize {
        self.ahat[k]
    }

    pub fn sgn(&self, k: usize) -> i64 {
        self.sgn[k]
    }

    pub fn theta(&self, k: usize) -> usize {
        self.theta[k]
    }

    /// `𝔱(ι(k))`.
    pub fn tsign(&self, k: usize) -> i64 {
        self.tsign[k]
    }

    /// Two-argument typed sign `𝔰𝔤𝔫_α(i, j)`.
    pub fn sgn2(&self, i: usize, j: usize) -> i64 {
        self.tsign[i] * self.sgn[i] * self.tsign[j] * self.sgn[j]
    }

    /// `θ(E_ij) = sign · E_{θ(j), θ(i)}`, returned as `(sign, θ(j), θ(i))`.
    pub fn theta_on_elementary(&self, i: usize, j: usize) -> (i64, usize, usize) {
        (self.sgn2(i, j), self.theta[j], self.theta[i])
    }

    /// `Θ = diag(Θ₁, …)` built from the block definition (`Id` or `Ω`).
    pub fn theta_matrix(&self) -> DMatrix<i64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for s in 0..self.alpha.len() {
            let off = self.offsets[s];
            let a = self.alpha[s];
            match self.types[s] {
                VertexType::Sp => {
                    let d = a / 2;
                    for r in 0..d {
                        m[(off + r, off + d + r)] = 1;
                        m[(off + d + r, off + r)] = -1;
                    }
                }
                _ => {
                    for r in 0..a {
                        m[(off + r, off + r)] = 1;
                    }
                }
            }
        }
        m
    }

    pub fn theta_matrix_f64(&self) -> DMatrix<f64> {
        self.theta_matrix().map(|x| x as f64)
    }

    /// `Θ ξᵀ Θᵀ`.
    pub fn theta_conj(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let t = self.theta_matrix_f64();
        &t * x.transpose() * t.transpose()
    }

    /// The matrix form of the defining relation: `(twist X)_ij = 𝔰𝔤𝔫(i,j) X_{θ(j) θ(i)}`,
    /// so that `X(ϖ(a)) = twist(X(a))` on the twisted space.
    pub fn twist(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.sgn2(i, j) as f64 * x[(self.theta[j], self.theta[i])])
    }

    /// Checks the structural identities; returns the first violation.
    pub fn check(&self) -> Result<(), String> {
        for k in 0..self.n {
            if self.theta[self.theta[k]] != k {
                return Err(format!("θ²({k}) ≠ {k}"));
            }
            if self.types[self.iota[k]] != VertexType::Sp && self.theta[k] != k {
                return Err(format!("θ moves {k} in an orthogonal block"));
            }
            if self.iota[self.theta[k]] != self.iota[k] {
                return Err(format!("θ leaves the block of {k}"));
            }
            if self.sgn[self.theta[k]] != self.tsign[k] * self.sgn[k] {
                return Err(format!("sgn(θ({k})) ≠ 𝔱 sgn({k})"));
            }
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if self.sgn2(i, j) != self.sgn2(j, i) {
                    return Err(format!("𝔰𝔤𝔫 not symmetric at ({i},{j})"));
                }
                if self.sgn2(i, self.theta[j]) != self.tsign[j] * self.sgn2(i, j) {
                    return Err(format!("𝔰𝔤𝔫(i, θ(j)) rule fails at ({i},{j})"));
                }
                for k in 0..self.n {
                    if self.sgn2(i, j) * self.sgn2(j, k) != self.sgn2(i, k) {
                        return Err(format!("𝔰𝔤𝔫 not multiplicative at ({i},{j},{k})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Largest absolute entry.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}
