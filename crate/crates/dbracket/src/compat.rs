use ncalg::{render_tensor, AntiHom, Element, Letter};

use crate::table::BracketTable;

#[derive(Debug, Clone, PartialEq)]
pub struct CompatFailure {
    pub a: String,
    pub b: String,
    /// φ⊗φ applied to ⟪a,b⟫.
    pub lhs: String,
    /// ⟪φ(a),φ(b)⟫°.
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompatReport {
    pub pairs_checked: usize,
    pub failures: Vec<CompatFailure>,
}

impl CompatReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `φ⊗φ(⟪a,b⟫) = ⟪φ(a),φ(b)⟫°` on all generator pairs. The same
/// identity expresses the typed condition when φ is a typed anti-involution.
pub fn check_compat(db: &BracketTable, phi: &AntiHom) -> CompatReport {
    let alg = db.alg();
    let n = alg.num_gens() as u32;
    let mut report = CompatReport { pairs_checked: 0, failures: Vec::new() };
    let img = |x: &ncalg::Word| phi.apply_word(alg, x).expect("φ defined on words");
    for a in 0..n {
        for b in 0..n {
            let lhs = db.entry(a, b).map_factors(img);
            let rhs = db.eval(phi.image(a), phi.image(b)).transpose();
            report.pairs_checked += 1;
            if lhs != rhs {
                let name = |g: u32| {
                    db.render(&Element::from_word(alg.letter(Letter::new(g)).unwrap()))
                };
                report.failures.push(CompatFailure {
                    a: name(a),
                    b: name(b),
                    lhs: render_tensor(alg, &lhs),
                    rhs: render_tensor(alg, &rhs),
                });
            }
        }
    }
    report
}
