use ncalg::{cyclic_reduce, q, render_tensor, Element, Tensor2};
use serde::Serialize;

use crate::error::KError;
use crate::system::{HamiltonianSpec, KSystem};

/// A double bracket written out by hand next to the engine's value.
#[derive(Debug, Clone)]
pub struct DisplayCheck {
    pub name: &'static str,
    pub expected: Tensor2,
    pub computed: Tensor2,
}

impl DisplayCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.computed
    }
}

fn t(a: &Element, b: &Element) -> Tensor2 {
    Tensor2::outer([a, b])
}

/// The intermediate brackets used to derive the modified system.
pub fn displays(sys: &KSystem) -> Vec<DisplayCheck> {
    let db = &sys.ctx.db;
    let (u, v, ui, vi, one) = (sys.u(), sys.v(), sys.ui(), sys.vi(), sys.alg().one());
    let (h, w) = (sys.big_h(), sys.w());
    let wi = sys.w_inv();
    let half = q(1, 2);

    let hw_u = (t(&u, &h) - t(&h, &u) - t(&(&u * &h), &one) + t(&one, &(&h * &u))).scale(&half) + t(&(&u * &v), &one)
        - t(&u, &vi);
    let ww_u = (-t(&w, &u) - t(&u, &w) - t(&(&u * &w), &one) + t(&one, &(&w * &u))).scale(&half);
    let hw_v = (-t(&v, &h) + t(&h, &v) + t(&(&v * &h), &one) - t(&one, &(&h * &v))).scale(&half) - t(&(&v * &u), &one)
        + t(&v, &ui);
    let ww_v = (t(&w, &v) - t(&v, &w) + t(&(&v * &w), &one) + t(&one, &(&w * &v))).scale(&half);

    let vui = &v + &ui;
    let uvi = &u + &vi;
    let h2 = &h * &h;
    let hh = t(&(&(&u * &v) - &(&v * &u)), &one) + t(&one, &(&(&vi * &ui) - &(&ui * &vi))) + (t(&one, &h2) - t(&h2, &one)).scale(&half)
        + t(&(&vui * &h), &one)
        - t(&vui, &h)
        + t(&h, &vui)
        - t(&one, &(&h * &vui));
    let hw = (t(&h, &w) + t(&w, &h) - t(&(&w * &h), &one) - t(&one, &(&h * &w))).scale(&half) + t(&one, &(&uvi * &w))
        - t(&vui, &w);
    let w2 = &w * &w;
    let ww = (t(&one, &w2) - t(&w2, &one)).scale(&half);

    let mut out = vec![
        DisplayCheck { name: "<<H,u>>", expected: hw_u, computed: db.eval(&h, &u) },
        DisplayCheck { name: "<<w,u>>", expected: ww_u, computed: db.eval(&w, &u) },
        DisplayCheck { name: "<<H,v>>", expected: hw_v, computed: db.eval(&h, &v) },
        DisplayCheck { name: "<<w,v>>", expected: ww_v, computed: db.eval(&w, &v) },
        DisplayCheck { name: "<<H,H>>", expected: hh, computed: db.eval(&h, &h) },
        DisplayCheck { name: "<<H,w>>", expected: hw, computed: db.eval(&h, &w) },
        DisplayCheck { name: "<<w,w>>", expected: ww, computed: db.eval(&w, &w) },
    ];
    for (name_l, name_r, a) in [("<<w^-1,u>>", "<<u,w^-1>>", &u), ("<<w^-1,v>>", "<<v,w^-1>>", &v)] {
        out.push(DisplayCheck { name: name_l, expected: -db.eval(&w, a).inner_act(&wi, &wi), computed: db.eval(&wi, a) });
        out.push(DisplayCheck { name: name_r, expected: -db.eval(a, &w).outer_act(&wi, &wi), computed: db.eval(a, &wi) });
    }
    out
}

/// `⟪h,h⟫′ h^{k−1} ⟪h,h⟫″ h^{ℓ−1}`, the representative of `(1/kℓ)⟨h^k, h^ℓ⟩♯`.
pub fn reduction_rhs(sys: &KSystem, h: &Element, k: u32, l: u32) -> Element {
    let one = sys.alg().one();
    let d = sys.ctx.db.eval(h, h);
    let (hk, hl) = (h.pow(k - 1, &one), h.pow(l - 1, &one));
    let mut out = Element::zero();
    for ([a, b], c) in d.iter() {
        let (a, b) = (Element::from_word(a.clone()), Element::from_word(b.clone()));
        out.add_scaled(&(&(&(&a * &hk) * &b) * &hl), c);
    }
    out
}

/// Whether `h^k` and `h^ℓ` commute under `⟨−,−⟩♯`, decided by reducing the
/// right side of the reduction identity modulo commutators.
pub fn sharp_commute_check_for(sys: &KSystem, spec: &HamiltonianSpec, k: u32, l: u32) -> bool {
    assert!(k >= 1 && l >= 1, "powers start at 1");
    cyclic_reduce(sys.alg(), &reduction_rhs(sys, &spec.h, k, l)).is_zero()
}

/// `sharp_commute_check_for` on the modified Hamiltonian.
pub fn sharp_commute_check(sys: &KSystem, k: u32, l: u32, lambda: ncalg::Q) -> bool {
    sharp_commute_check_for(sys, &HamiltonianSpec::modified(sys, lambda), k, l)
}

/// `⟨h^k, φ(h)^ℓ⟩♯ = 0` modulo commutators, computed directly.
pub fn phi_commute_check(sys: &KSystem, spec: &HamiltonianSpec, k: u32, l: u32) -> Result<bool, KError> {
    let one = sys.alg().one();
    let ph = sys.phi(&spec.h)?;
    Ok(sys.sharp_reduced(&spec.h.pow(k, &one), &ph.pow(l, &one)).is_zero())
}

#[derive(Debug, Clone, Serialize)]
pub struct CommuteReport {
    pub lambda: String,
    pub pairs: Vec<(u32, u32, bool)>,
    pub displays: Vec<(String, bool)>,
}

impl CommuteReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.2) && self.displays.iter().all(|d| d.1)
    }
}

/// All pairs with `k + ℓ ≤ max_total`, plus the display checks.
pub fn commute_report(sys: &KSystem, spec: &HamiltonianSpec, max_total: u32) -> CommuteReport {
    let mut pairs = Vec::new();
    for k in 1..max_total {
        for l in 1..=max_total - k {
            pairs.push((k, l, sharp_commute_check_for(sys, spec, k, l)));
        }
    }
    let displays = displays(sys).into_iter().map(|d| (d.name.to_string(), d.holds())).collect();
    CommuteReport { lambda: spec.label(), pairs, displays }
}

pub fn render_display(sys: &KSystem, d: &DisplayCheck) -> String {
    format!("{} = {}", d.name, render_tensor(sys.alg(), &d.computed))
}
