use dbracket::Context;
use models::build_g1r0;
use nalgebra::DMatrix;
use ncalg::{cyclic_reduce, qi, render_element, Algebra, Element, VertexType, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repspace::{gaussian, sample_point, Mode, RepPoint, TypedDims};

use crate::error::KError;

/// The handle algebra `L₁,₀` written in `u = y`, `v = x`.
#[derive(Debug, Clone)]
pub struct KSystem {
    pub ctx: Context,
    pub u: u32,
    pub v: u32,
}

impl KSystem {
    pub fn new() -> Result<Self, KError> {
        let ctx = build_g1r0()?;
        let (u, v) = (ctx.alg().gen_id("y")?, ctx.alg().gen_id("x")?);
        Ok(KSystem { ctx, u, v })
    }

    pub fn alg(&self) -> &Algebra {
        self.ctx.alg()
    }

    pub fn u(&self) -> Element {
        self.alg().g("y")
    }

    pub fn v(&self) -> Element {
        self.alg().g("x")
    }

    pub fn ui(&self) -> Element {
        self.alg().ginv("y")
    }

    pub fn vi(&self) -> Element {
        self.alg().ginv("x")
    }

    /// `H = u + v + u⁻¹ + v⁻¹`.
    pub fn big_h(&self) -> Element {
        &(&(&self.u() + &self.v()) + &self.ui()) + &self.vi()
    }

    /// `w = u⁻¹v⁻¹`.
    pub fn w(&self) -> Element {
        &self.ui() * &self.vi()
    }

    /// `w⁻¹ = vu`.
    pub fn w_inv(&self) -> Element {
        &self.v() * &self.u()
    }

    /// The group commutator `Φ = vuv⁻¹u⁻¹`.
    pub fn phi_element(&self) -> Element {
        &(&(&self.v() * &self.u()) * &self.vi()) * &self.ui()
    }

    pub fn render(&self, x: &Element) -> String {
        render_element(self.alg(), x)
    }

    /// `⟨a, b⟩♯` reduced modulo commutators.
    pub fn sharp_reduced(&self, a: &Element, b: &Element) -> Element {
        cyclic_reduce(self.alg(), &self.ctx.db.sharp(a, b))
    }

    /// Image of `x` under the inversion anti-involution.
    pub fn phi(&self, x: &Element) -> Result<Element, KError> {
        let phi = self.ctx.phi.as_ref().expect("L₁,₀ carries the inversion");
        Ok(phi.apply(self.alg(), x)?)
    }
}

/// A Hamiltonian on `L₁,₀`. `lambda = None` marks the original system
/// `h = H + w`; otherwise `h = H + λ(w + w⁻¹)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    pub lambda: Option<Q>,
    pub big_h: Element,
    pub w: Element,
    pub h: Element,
}

impl HamiltonianSpec {
    pub fn modified(sys: &KSystem, lambda: Q) -> Self {
        let (big_h, w) = (sys.big_h(), sys.w());
        let h = &big_h + &(&w + &sys.w_inv()).scale(&lambda);
        HamiltonianSpec { lambda: Some(lambda), big_h, w, h }
    }

    pub fn original(sys: &KSystem) -> Self {
        let (big_h, w) = (sys.big_h(), sys.w());
        let h = &big_h + &w;
        HamiltonianSpec { lambda: None, big_h, w, h }
    }

    pub fn is_phi_invariant(&self, sys: &KSystem) -> Result<bool, KError> {
        Ok(sys.phi(&self.h)? == self.h)
    }

    pub fn label(&self) -> String {
        match &self.lambda {
            Some(l) => format!("modified(lambda={l})"),
            None => "original".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub u: Element,
    pub v: Element,
}

/// `ẋ = m∘⟪h, x⟫` for `x ∈ {u, v}`.
pub fn vector_field(sys: &KSystem, spec: &HamiltonianSpec) -> VectorField {
    VectorField { u: sys.ctx.db.sharp(&spec.h, &sys.u()), v: sys.ctx.db.sharp(&spec.h, &sys.v()) }
}

/// The field as an affine pencil in `λ`: `(field of H, field of w + w⁻¹)`.
pub fn vector_field_pencil(sys: &KSystem) -> (VectorField, VectorField) {
    let h0 = HamiltonianSpec { lambda: Some(qi(0)), big_h: sys.big_h(), w: sys.w(), h: sys.big_h() };
    let pert = &sys.w() + &sys.w_inv();
    let lam = VectorField { u: sys.ctx.db.sharp(&pert, &sys.u()), v: sys.ctx.db.sharp(&pert, &sys.v()) };
    (vector_field(sys, &h0), lam)
}

/// Closed forms: `u̇ = uv − uv⁻¹ − λv⁻¹ + λuvu`, `v̇ = vu⁻¹ − vu + λu⁻¹ − λvuv`
/// for the modified system, `u̇ = uv − uv⁻¹ − v⁻¹`, `v̇ = vu⁻¹ − vu + u⁻¹`
/// for the original one.
pub fn closed_form(sys: &KSystem, spec: &HamiltonianSpec) -> VectorField {
    let (u, v, ui, vi) = (sys.u(), sys.v(), sys.ui(), sys.vi());
    let base_u = &(&u * &v) - &(&u * &vi);
    let base_v = &(&v * &ui) - &(&v * &u);
    match &spec.lambda {
        Some(l) => {
            let du = &(&u * &v) * &u - vi.clone();
            let dv = &ui - &(&(&v * &u) * &v);
            VectorField { u: &base_u + &du.scale(l), v: &base_v + &dv.scale(l) }
        }
        None => VectorField { u: &base_u - &vi, v: &base_v + &ui },
    }
}

/// Cayley image of a random element of `𝔰𝔭(2h) ∩ 𝔰𝔬(2h)`: symplectic and orthogonal.
fn compact_symplectic(rng: &mut ChaCha8Rng, h: usize) -> DMatrix<f64> {
    let (a, b) = (gaussian(rng, h, h), gaussian(rng, h, h));
    let x = (&a - a.transpose()) * 0.5;
    let y = (&b + b.transpose()) * 0.5;
    let mut m = DMatrix::zeros(2 * h, 2 * h);
    m.view_mut((0, 0), (h, h)).copy_from(&x);
    m.view_mut((h, h), (h, h)).copy_from(&x);
    m.view_mut((0, h), (h, h)).copy_from(&y);
    m.view_mut((h, 0), (h, h)).copy_from(&(-y));
    let id = DMatrix::identity(2 * h, 2 * h);
    (&id - &m).try_inverse().expect("I − A is invertible for antisymmetric A") * (&id + &m)
}

/// A twisted point of type `t` on the compact part of the double: `O(n)`
/// itself, or `Sp(n) ∩ O(n)` for `Sp`. The flow keeps `XᵀX = Id`, so these
/// trajectories stay bounded.
pub fn compact_point(sys: &KSystem, n: usize, t: VertexType, seed: u64) -> Result<RepPoint, KError> {
    let dims = TypedDims::new(vec![n], vec![t], Mode::Twisted)?;
    if t != VertexType::Sp {
        return Ok(sample_point(&sys.ctx, &dims, seed)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mats = vec![DMatrix::zeros(0, 0); sys.alg().num_gens()];
    for g in [sys.u, sys.v] {
        mats[g as usize] = compact_symplectic(&mut rng, n / 2);
    }
    Ok(RepPoint::from_matrices(sys.alg(), dims, mats, seed)?)
}
