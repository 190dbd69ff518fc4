use ncalg::{Element, Tensor2, Tensor3};

use crate::table::BracketTable;

/// `⟪a, d′⊗d″⟫_L = ⟪a,d′⟫ ⊗ d″`.
fn left_ext(db: &BracketTable, a: &Element, d: &Tensor2) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ([x, y], c) in d.iter() {
        let inner = db.eval(a, &Element::from_word(x.clone()));
        out.add_scaled(&inner.append(y, c), &num_traits::One::one());
    }
    out
}

/// `⟪a, d′⊗d″⟫_R = d′ ⊗ ⟪a,d″⟫`.
fn right_ext(db: &BracketTable, a: &Element, d: &Tensor2) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ([x, y], c) in d.iter() {
        let inner = db.eval(a, &Element::from_word(y.clone()));
        out.add_scaled(&inner.prepend(x, c), &num_traits::One::one());
    }
    out
}

/// Double Jacobiator built from the left extension.
pub fn triple_bracket(db: &BracketTable, a: &Element, b: &Element, c: &Element) -> Tensor3 {
    let t1 = left_ext(db, a, &db.eval(b, c));
    let t2 = left_ext(db, b, &db.eval(c, a)).cyc();
    let t3 = left_ext(db, c, &db.eval(a, b)).cyc().cyc();
    t1 + t2 + t3
}

/// Equivalent form built from the right extension.
pub fn triple_bracket_right(db: &BracketTable, a: &Element, b: &Element, c: &Element) -> Tensor3 {
    let t1 = right_ext(db, b, &db.eval(a, c));
    let t2 = right_ext(db, c, &db.eval(b, a)).cyc();
    let t3 = right_ext(db, a, &db.eval(c, b)).cyc().cyc();
    -(t1 + t2 + t3)
}

/// The eight-term idempotent expression a quasi-Poisson Jacobiator must equal.
pub fn quasi_defect(db: &BracketTable, a: &Element, b: &Element, c: &Element) -> Tensor3 {
    let alg = db.alg();
    let mut out = Tensor3::zero();
    let quarter = ncalg::q(1, 4);
    for s in 0..alg.base().len() as u32 {
        let e = alg.idem(s);
        let ea = &e * a;
        let ae = a * &e;
        let eb = &e * b;
        let be = b * &e;
        let ce = c * &e;
        let ec = &e * c;
        let cea = &ce * a;
        let aeb = &ae * b;
        let bec = &be * c;
        let t = |x: &Element, y: &Element, z: &Element| Tensor3::outer([x, y, z]);
        let terms = [
            (t(&cea, &eb, &e), 1),
            (t(&cea, &e, &be), -1),
            (t(&ce, &aeb, &e), -1),
            (t(&ce, &ae, &be), 1),
            (t(&ea, &eb, &ec), -1),
            (t(&ea, &e, &bec), 1),
            (t(&e, &aeb, &ec), 1),
            (t(&e, &ae, &bec), -1),
        ];
        for (x, sgn) in terms {
            out.add_scaled(&x, &(&quarter * ncalg::qi(sgn)));
        }
    }
    out
}
