//! Exact rational Cartan trivectors of `𝔬(n)` and `𝔰𝔭(2d)`, from the
//! definition and from the closed forms, as coefficient maps over triples of
//! elementary matrices.

use std::collections::BTreeMap;

use ncalg::{q, qi, Q};
use num_traits::{One, Zero};

/// `n×n` rational matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct QMat {
    pub n: usize,
    pub data: Vec<Q>,
}

impl QMat {
    pub fn zero(n: usize) -> Self {
        QMat { n, data: vec![Q::zero(); n * n] }
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.n + j]
    }

    pub fn add_at(&mut self, i: usize, j: usize, c: &Q) {
        self.data[i * self.n + j] += c;
    }

    pub fn scale(&self, c: &Q) -> QMat {
        QMat { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &QMat) -> QMat {
        QMat { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn mul(&self, o: &QMat) -> QMat {
        let n = self.n;
        let mut out = QMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Q {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), &Q)> {
        self.data.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| ((k / self.n, k % self.n), c))
    }
}

fn elem(n: usize, entries: &[(usize, usize, i64)]) -> QMat {
    let mut m = QMat::zero(n);
    for &(i, j, c) in entries {
        m.add_at(i, j, &qi(c));
    }
    m
}

/// `F_ij = E_ij − E_ji`, `i < j`, with the dual `−½F_ij`.
pub fn basis_o(n: usize) -> (Vec<QMat>, Vec<QMat>) {
    let mut f = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            f.push(elem(n, &[(i, j, 1), (j, i, -1)]));
        }
    }
    let duals = f.iter().map(|x| x.scale(&q(-1, 2))).collect();
    (f, duals)
}

/// The three families of `𝔰𝔭(2d)` with their listed duals.
pub fn basis_sp(d: usize) -> (Vec<QMat>, Vec<QMat>) {
    let n = 2 * d;
    let (mut f, mut fd) = (Vec::new(), Vec::new());
    for i in 0..d {
        for j in 0..d {
            f.push(elem(n, &[(i, j, 1), (d + j, d + i, -1)]));
            fd.push(elem(n, &[(j, i, 1), (d + i, d + j, -1)]).scale(&q(1, 2)));
        }
    }
    for i in 0..d {
        for j in i..d {
            let c = if i == j { q(1, 4) } else { q(1, 2) };
            let f2 = elem(n, &[(i, d + j, 1), (j, d + i, 1)]);
            let f3 = elem(n, &[(d + i, j, 1), (d + j, i, 1)]);
            fd.push(f3.scale(&c));
            fd.push(f2.scale(&c));
            f.push(f2);
            f.push(f3);
        }
    }
    (f, fd)
}

/// Dual basis from the inverse Gram matrix of `tr(XY)`.
pub fn gram_duals(basis: &[QMat]) -> Option<Vec<QMat>> {
    let m = basis.len();
    let n = basis.first().map_or(0, |b| b.n);
    // Augmented [G | I] reduced to [I | G⁻¹].
    let mut a: Vec<Vec<Q>> = (0..m)
        .map(|r| {
            let mut row: Vec<Q> = (0..m).map(|c| basis[r].mul(&basis[c]).trace()).collect();
            row.extend((0..m).map(|c| if c == r { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Q::one() / a[col][col].clone();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(
        (0..m)
            .map(|r| {
                (0..m).fold(QMat::zero(n), |acc, c| acc.add(&basis[c].scale(&a[r][m + c])))
            })
            .collect(),
    )
}

/// Coefficients on `E_{p₁q₁} ⊗ E_{p₂q₂} ⊗ E_{p₃q₃}`.
pub type LieTensor = BTreeMap<[(usize, usize); 3], Q>;

fn add_outer(out: &mut LieTensor, c: &Q, a: &QMat, b: &QMat, d: &QMat) {
    for (ka, va) in a.nonzero() {
        for (kb, vb) in b.nonzero() {
            for (kd, vd) in d.nonzero() {
                let e = out.entry([ka, kb, kd]).or_insert_with(Q::zero);
                *e += c * va * vb * vd;
            }
        }
    }
}

fn prune(mut t: LieTensor) -> LieTensor {
    t.retain(|_, c| !c.is_zero());
    t
}

/// `ψ = 1/12 Σ ⟨F̌a,[F̌b,F̌c]⟩ F_a∧F_b∧F_c`, with `∧` the unnormalized
/// alternating sum over the six orderings.
pub fn cartan3(basis: &[QMat], duals: &[QMat]) -> LieTensor {
    let m = basis.len();
    let mut out = LieTensor::new();
    let twelfth = q(1, 12);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let bc = duals[b].mul(&duals[c]).add(&duals[c].mul(&duals[b]).scale(&qi(-1)));
                let k = duals[a].mul(&bc).trace();
                if k.is_zero() {
                    continue;
                }
                let k = k * &twelfth;
                let (fa, fb, fc) = (&basis[a], &basis[b], &basis[c]);
                let neg = -k.clone();
                add_outer(&mut out, &k, fa, fb, fc);
                add_outer(&mut out, &k, fb, fc, fa);
                add_outer(&mut out, &k, fc, fa, fb);
                add_outer(&mut out, &neg, fb, fa, fc);
                add_outer(&mut out, &neg, fa, fc, fb);
                add_outer(&mut out, &neg, fc, fb, fa);
            }
        }
    }
    prune(out)
}

/// `⅛ Σ_{i,j,u} F_ij ⊗ F_uj ⊗ F_ui` with `F_ab = E_ab − E_ba` for all `a, b`.
pub fn cartan_o_closed(n: usize) -> LieTensor {
    let f = |a: usize, b: usize| elem(n, &[(a, b, 1), (b, a, -1)]);
    let mut out = LieTensor::new();
    let c = q(1, 8);
    for i in 0..n {
        for j in 0..n {
            for u in 0..n {
                add_outer(&mut out, &c, &f(i, j), &f(u, j), &f(u, i));
            }
        }
    }
    prune(out)
}

/// `1/16 Σ_{i,j,k} (F_ij⊗F_ki⊗F_jk − F_ij⊗F_jk⊗F_ki)` with
/// `F_ij = E_ij − sgn(i)sgn(j) E_{j+d,i+d}` (indices mod `2d`).
pub fn cartan_sp_closed(d: usize) -> LieTensor {
    let n = 2 * d;
    let sgn = |k: usize| if k < d { 1 } else { -1 };
    let f = |a: usize, b: usize| elem(n, &[(a, b, 1), ((b + d) % n, (a + d) % n, -sgn(a) * sgn(b))]);
    let mut out = LieTensor::new();
    let (c, neg) = (q(1, 16), q(-1, 16));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                add_outer(&mut out, &c, &f(i, j), &f(k, i), &f(j, k));
                add_outer(&mut out, &neg, &f(i, j), &f(j, k), &f(k, i));
            }
        }
    }
    prune(out)
}
