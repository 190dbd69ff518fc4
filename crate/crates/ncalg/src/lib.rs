//! Exact noncommutative algebra over a semisimple base `⊕ₛ ℚ eₛ`.
//!
//! Path algebras of quivers, optionally localized at some arrows, with
//! rational coefficients. Words carry their endpoints so products never
//! need to consult the algebra.

mod algebra;
mod antihom;
mod cyclic;
mod element;
mod error;
mod tensor;
mod text;
mod word;

pub use algebra::{Algebra, BaseRing, Generator, VertexType};
pub use antihom::{AntiHom, AntiHomKind, KindCheck};
pub use cyclic::cyclic_reduce;
pub use element::Element;
pub use error::AlgError;
pub use tensor::{Tensor, Tensor2, Tensor3};
pub use text::{parse_element, parse_word, render_element, render_tensor, render_word};
pub use word::{Letter, Word};

pub use num_rational::BigRational;

/// Exact rational scalar.
pub type Q = BigRational;

/// `n/d` as an exact rational.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Integer as an exact rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Lossy conversion used by the numeric layers.
pub fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
