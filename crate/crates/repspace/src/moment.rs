use dbracket::{Context, MomentKind};
use nalgebra::DMatrix;
use ncalg::Element;

use crate::bracket::{gen_element, RepBracket};
use crate::cartan::{block_basis, comm_sparse};
use crate::error::RepError;
use crate::index::max_abs;
use crate::jacobi::ABS_FLOOR;
use crate::point::RepPoint;

/// Outcome of the moment-map identities at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentRepReport {
    pub kind: MomentKind,
    pub checked: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    /// Additive: `|X(μ) + ΘX(μ)ᵀΘᵀ|`; multiplicative: `|X(Φ)ΘX(Φ)ᵀΘᵀ − Id|`,
    /// both relative to `max(1, |X|²)`.
    pub value_error: f64,
    /// Description of the worst bracket identity, if any failed to vanish.
    pub worst: Option<String>,
}

impl MomentRepReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_rel_error <= tol && self.value_error <= tol
    }
}

fn rel(diff: f64, scale: f64) -> f64 {
    if diff <= ABS_FLOOR {
        0.0
    } else {
        diff / scale.max(f64::MIN_POSITIVE)
    }
}

/// Checks the moment map of the context (or `moment` if given) at a twisted
/// point: for every block basis element `F` and generator entry `b_kl`,
/// additive `Σ_pq F_qp {μ_pq, b_kl} = [X(b), F]_kl`, multiplicative
/// `{Φ_pq, b_kl} = ½ Σ_a (ΦF_a + F_aΦ)_pq [X(b), F̌_a]_kl`; plus the value check.
pub fn check_moment_map_rep(ctx: &Context, p: &RepPoint, moment: Option<(MomentKind, &Element)>) -> Result<MomentRepReport, RepError> {
    let (kind, mu) = match moment {
        Some((k, m)) => (k, m.clone()),
        None => {
            let m = ctx.moment.as_ref().ok_or_else(|| RepError::Unsupported("context has no moment map".into()))?;
            (m.kind, m.total())
        }
    };
    let br = RepBracket::new(ctx, p)?;
    if !br.twisted() {
        return Err(RepError::Unsupported("moment maps are checked on twisted points".into()));
    }
    let t = p.tables();
    let n = p.n();
    let xm = p.eval(&mu)?;
    let conj = t.theta_conj(&xm);
    let size = max_abs(&xm).max(1.0);
    let value_error = match kind {
        MomentKind::Additive => max_abs(&(&xm + &conj)) / size,
        MomentKind::Multiplicative => max_abs(&(&xm * &conj - DMatrix::identity(n, n))) / (size * size),
    };

    let mut report = MomentRepReport { kind, checked: 0, max_abs_error: 0.0, max_rel_error: 0.0, value_error, worst: None };
    let alg = ctx.alg();
    for g in 0..alg.num_gens() as u32 {
        let gen = alg.gen(g);
        let xb = p.matrix(g);
        let pair = br.pair_eval(&mu, &gen_element(ctx, g))?;
        for s in 0..t.num_blocks() {
            let basis = block_basis(t, s);
            for k in t.block(gen.tail as usize) {
                for l in t.block(gen.head as usize) {
                    match kind {
                        MomentKind::Additive => {
                            for (f, _) in &basis {
                                let mut lhs = 0.0;
                                let mut scale = 0.0f64;
                                for &(q, pp, c) in f {
                                    let v = c * pair.entry((pp, q), (k, l)).0;
                                    lhs += v;
                                    scale = scale.max(v.abs());
                                }
                                let rhs = comm_sparse(xb, f, k, l);
                                report.record(lhs, rhs, scale.max(rhs.abs()), || format!("F on block {s}, b = {}_{k}{l}", gen.name));
                            }
                        }
                        MomentKind::Multiplicative => {
                            let block = t.block(s);
                            for pp in block.clone() {
                                for q in block.clone() {
                                    let (lhs, lscale) = pair.entry((pp, q), (k, l));
                                    let mut rhs = 0.0;
                                    let mut scale = lscale;
                                    for (f, fd) in &basis {
                                        // (ΦF + FΦ)_pq for sparse F.
                                        let mut coef = 0.0;
                                        for &(a, b, c) in f {
                                            if b == q {
                                                coef += xm[(pp, a)] * c;
                                            }
                                            if a == pp {
                                                coef += c * xm[(b, q)];
                                            }
                                        }
                                        if coef == 0.0 {
                                            continue;
                                        }
                                        let v = 0.5 * coef * comm_sparse(xb, fd, k, l);
                                        rhs += v;
                                        scale = scale.max(v.abs());
                                    }
                                    report.record(lhs, rhs, scale, || format!("Φ_{pp}{q}, b = {}_{k}{l}", gen.name));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

impl MomentRepReport {
    fn record(&mut self, lhs: f64, rhs: f64, scale: f64, what: impl Fn() -> String) {
        self.checked += 1;
        let d = (lhs - rhs).abs();
        let r = rel(d, scale);
        if d > self.max_abs_error {
            self.max_abs_error = d;
        }
        if r > self.max_rel_error {
            self.max_rel_error = r;
            self.worst = Some(format!("{}: lhs {lhs:e}, rhs {rhs:e}", what()));
        }
    }
}
