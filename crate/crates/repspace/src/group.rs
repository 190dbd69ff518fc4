use nalgebra::DMatrix;
use ncalg::VertexType;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::index::IndexTables;

pub fn gaussian<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample::<f64, _>(StandardNormal))
}

/// Ratio of extreme singular values; `∞` for singular matrices.
pub fn cond(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 1.0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let (lo, hi) = sv.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

/// `Ω_{2d}` of the symplectic form.
pub fn omega(n: usize) -> DMatrix<f64> {
    let d = n / 2;
    let mut m = DMatrix::zeros(n, n);
    for r in 0..d {
        m[(r, d + r)] = 1.0;
        m[(d + r, r)] = -1.0;
    }
    m
}

/// Orthogonal matrix from the QR factor of a Gaussian matrix, columns
/// sign-fixed so that `R` has a positive diagonal.
pub fn sample_orthogonal<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let qr = gaussian(rng, n, n).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Cayley transform `(1 − X)(1 + X)⁻¹` of `X = S Ω ∈ 𝔰𝔭(n)`, `S` symmetric
/// Gaussian scaled by `scale`. `None` if `1 + X` is too ill-conditioned.
pub fn sample_symplectic<R: Rng>(rng: &mut R, n: usize, scale: f64, cond_bound: f64) -> Option<DMatrix<f64>> {
    if n == 0 {
        return Some(DMatrix::zeros(0, 0));
    }
    let g = gaussian(rng, n, n);
    let s = (&g + g.transpose()) * (0.5 * scale);
    let x = s * omega(n);
    let id = DMatrix::<f64>::identity(n, n);
    let plus = &id + &x;
    if cond(&plus) > cond_bound {
        return None;
    }
    let inv = plus.try_inverse()?;
    Some((&id - &x) * inv)
}

/// Cayley inputs past this condition number give group elements whose
/// defining relation holds only to `cond·ε`; they are resampled.
const CAYLEY_COND: f64 = 20.0;

/// One element of `O(n)` or `Sp(n)`.
pub fn sample_group<R: Rng>(rng: &mut R, t: VertexType, n: usize, cond_bound: f64, attempts: usize) -> Option<DMatrix<f64>> {
    match t {
        VertexType::Sp => (0..attempts).find_map(|_| sample_symplectic(rng, n, 1.0 / (n as f64).sqrt(), cond_bound.min(CAYLEY_COND))),
        _ => Some(sample_orthogonal(rng, n)),
    }
}

/// Block-diagonal element of `G = ∏ₛ Gₛ`.
pub fn sample_structure_group<R: Rng>(rng: &mut R, t: &IndexTables) -> DMatrix<f64> {
    let n = t.n();
    let mut g = DMatrix::zeros(n, n);
    for s in 0..t.num_blocks() {
        let r = t.block(s);
        let b = sample_group(rng, t.block_type(s), r.len(), 1e8, 100).expect("Cayley sampling exhausted");
        g.view_mut((r.start, r.start), (r.len(), r.len())).copy_from(&b);
    }
    g
}
