use ncalg::{BaseRing, VertexType};

use crate::error::RepError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Plain `Rep(A, α)` with the `GL_α` action.
    Gl,
    /// `Rep^{ϖ,θ}(A, α)` for the types of the base ring.
    Twisted,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Gl => "GL",
            Mode::Twisted => "twisted",
        }
    }
}

/// Dimension vector with a type per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedDims {
    alpha: Vec<usize>,
    types: Vec<VertexType>,
    mode: Mode,
}

impl TypedDims {
    pub fn new(alpha: Vec<usize>, types: Vec<VertexType>, mode: Mode) -> Result<Self, RepError> {
        if alpha.len() != types.len() {
            return Err(RepError::Dims(format!("{} dimensions for {} vertices", alpha.len(), types.len())));
        }
        if alpha.is_empty() {
            return Err(RepError::Dims("no vertices".into()));
        }
        if mode == Mode::Twisted {
            for (s, (&a, &t)) in alpha.iter().zip(&types).enumerate() {
                match t {
                    VertexType::Untyped => return Err(RepError::Untyped(format!("#{}", s + 1))),
                    VertexType::Sp if a % 2 == 1 => {
                        return Err(RepError::Dims(format!("Sp dimension must be even (vertex #{}, α = {a})", s + 1)))
                    }
                    _ => {}
                }
            }
        }
        Ok(TypedDims { alpha, types, mode })
    }

    /// Twisted dimensions using the types of `base`.
    pub fn twisted(base: &BaseRing, alpha: Vec<usize>) -> Result<Self, RepError> {
        if base.len() != alpha.len() {
            return Err(RepError::Dims(format!("{} dimensions for {} vertices", alpha.len(), base.len())));
        }
        for (s, t) in base.types().iter().enumerate() {
            if *t == VertexType::Untyped {
                return Err(RepError::Untyped(base.label(s as u32).to_string()));
            }
        }
        TypedDims::new(alpha, base.types().to_vec(), Mode::Twisted)
    }

    /// Untwisted dimensions; the types are kept only as labels.
    pub fn gl(alpha: Vec<usize>) -> Self {
        let types = vec![VertexType::Untyped; alpha.len()];
        TypedDims { alpha, types, mode: Mode::Gl }
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn types(&self) -> &[VertexType] {
        &self.types
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.alpha.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}
