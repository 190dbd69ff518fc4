use nalgebra::DMatrix;
use ncalg::VertexType;

use crate::dims::Mode;
use crate::error::RepError;
use crate::index::IndexTables;
use crate::jacobi::Scaled;
use crate::numeric::Entry;
use crate::point::RepPoint;

/// Sparse matrix as `(row, col, value)` triples.
pub type Sparse = Vec<(usize, usize, f64)>;

/// `[X, E_ab]_kl = X_ka δ_bl − δ_ka X_bl`.
fn comm_elementary(x: &DMatrix<f64>, a: usize, b: usize, k: usize, l: usize) -> f64 {
    let mut v = 0.0;
    if b == l {
        v += x[(k, a)];
    }
    if k == a {
        v -= x[(b, l)];
    }
    v
}

/// `F_pq(X_kl) = [X, F_pq]_kl` with `F_pq = E_pq − 𝔰𝔤𝔫(p,q) E_{θq,θp}`.
fn f_action(t: &IndexTables, x: &DMatrix<f64>, p: usize, q: usize, k: usize, l: usize) -> f64 {
    comm_elementary(x, p, q, k, l) - t.sgn2(p, q) as f64 * comm_elementary(x, t.theta(q), t.theta(p), k, l)
}

/// `[X, F]_kl` for a sparse `F`.
pub fn comm_sparse(x: &DMatrix<f64>, f: &Sparse, k: usize, l: usize) -> f64 {
    f.iter().map(|&(a, b, c)| c * comm_elementary(x, a, b, k, l)).sum()
}

/// `½ ψ_M(x, y, z)` for three generator entries, summed over the blocks:
/// `ψ^𝔬 = ⅛ Σ F_ij⊗F_uj⊗F_ui`, `ψ^𝔰𝔭 = 1/16 Σ (F_ij⊗F_ki⊗F_jk − F_ij⊗F_jk⊗F_ki)`,
/// each `F` acting by `ξ_M(X) = [X, ξ]`.
pub fn cartan_action(p: &RepPoint, x: Entry, y: Entry, z: Entry) -> Result<Scaled, RepError> {
    if p.dims().mode() != Mode::Twisted {
        return Err(RepError::Unsupported("the Cartan action is defined for twisted points".into()));
    }
    let t = p.tables();
    let (xa, xb, xc) = (p.matrix(x.gen), p.matrix(y.gen), p.matrix(z.gen));
    let fa = |a: usize, b: usize| f_action(t, xa, a, b, x.i, x.j);
    let fb = |a: usize, b: usize| f_action(t, xb, a, b, y.i, y.j);
    let fc = |a: usize, b: usize| f_action(t, xc, a, b, z.i, z.j);
    let (mut value, mut scale) = (0.0, 0.0f64);
    for s in 0..t.num_blocks() {
        let r = t.block(s);
        match t.block_type(s) {
            VertexType::Sp => {
                for i in r.clone() {
                    for j in r.clone() {
                        let a = fa(i, j);
                        if a == 0.0 {
                            continue;
                        }
                        for k in r.clone() {
                            let v1 = a * fb(k, i) * fc(j, k) / 32.0;
                            let v2 = a * fb(j, k) * fc(k, i) / 32.0;
                            value += v1 - v2;
                            scale = scale.max(v1.abs()).max(v2.abs());
                        }
                    }
                }
            }
            _ => {
                for i in r.clone() {
                    for j in r.clone() {
                        let a = fa(i, j);
                        if a == 0.0 {
                            continue;
                        }
                        for u in r.clone() {
                            let v = a * fb(u, j) * fc(u, i) / 16.0;
                            value += v;
                            scale = scale.max(v.abs());
                        }
                    }
                }
            }
        }
    }
    Ok(Scaled { value, scale })
}

/// A basis of the Lie algebra of block `s` with its trace-dual basis:
/// `𝔬`: `F_ij = E_ij − E_ji` (i<j), `F̌ = −½F`;
/// `𝔰𝔭`: the three families `E_ij − E_{d+j,d+i}`, `E_{i,d+j} + E_{j,d+i}`,
/// `E_{d+i,j} + E_{d+j,i}` (i ≤ j for the last two).
pub fn block_basis(t: &IndexTables, s: usize) -> Vec<(Sparse, Sparse)> {
    let r = t.block(s);
    let (o, a) = (r.start, r.len());
    let mut out = Vec::new();
    match t.block_type(s) {
        VertexType::Sp => {
            let d = a / 2;
            for i in 0..d {
                for j in 0..d {
                    let f = vec![(o + i, o + j, 1.0), (o + d + j, o + d + i, -1.0)];
                    let fd = vec![(o + j, o + i, 0.5), (o + d + i, o + d + j, -0.5)];
                    out.push((f, fd));
                }
            }
            for i in 0..d {
                for j in i..d {
                    let c = if i == j { 0.25 } else { 0.5 };
                    let f2 = vec![(o + i, o + d + j, 1.0), (o + j, o + d + i, 1.0)];
                    let f3 = vec![(o + d + i, o + j, 1.0), (o + d + j, o + i, 1.0)];
                    let scaled = |f: &Sparse| f.iter().map(|&(p, q, v)| (p, q, c * v)).collect::<Sparse>();
                    out.push((f2.clone(), scaled(&f3)));
                    out.push((f3, scaled(&f2)));
                }
            }
        }
        _ => {
            for i in 0..a {
                for j in i + 1..a {
                    let f = vec![(o + i, o + j, 1.0), (o + j, o + i, -1.0)];
                    let fd = vec![(o + i, o + j, -0.5), (o + j, o + i, 0.5)];
                    out.push((f, fd));
                }
            }
        }
    }
    out
}
