use std::collections::{BTreeMap, BTreeSet};

use ncalg::{BaseRing, VertexType, Q};

use crate::error::ModelError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub tail: String,
    pub head: String,
}

/// A finite quiver Υ with the extra choices the catalog builders need.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    /// Either empty (untyped) or one entry per vertex.
    pub types: Vec<VertexType>,
    pub arrows: Vec<Arrow>,
    /// Λ with the signs γ (cotangent models only).
    pub loops: BTreeMap<String, i8>,
    /// Multiplicative γ; only zero is supported.
    pub gamma: BTreeMap<String, Q>,
    /// Orderings `<ₛ` on `Tₛ`, by names in the doubled quiver (`a`, `a^*`).
    pub orderings: BTreeMap<String, Vec<String>>,
}

impl QuiverSpec {
    pub fn new<S: ToString>(vertices: &[S]) -> Self {
        QuiverSpec { vertices: vertices.iter().map(|v| v.to_string()).collect(), ..Default::default() }
    }

    pub fn typed(mut self, types: &[VertexType]) -> Self {
        self.types = types.to_vec();
        self
    }

    pub fn arrow(mut self, name: &str, tail: &str, head: &str) -> Self {
        self.arrows.push(Arrow { name: name.into(), tail: tail.into(), head: head.into() });
        self
    }

    /// Puts a loop into Λ with sign γ.
    pub fn lambda(mut self, name: &str, gamma: i8) -> Self {
        self.loops.insert(name.into(), gamma);
        self
    }

    pub fn ordering(mut self, vertex: &str, order: &[&str]) -> Self {
        self.orderings.insert(vertex.into(), order.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn base(&self) -> Result<BaseRing, ModelError> {
        let types = if self.types.is_empty() {
            vec![VertexType::Untyped; self.vertices.len()]
        } else {
            self.types.clone()
        };
        Ok(BaseRing::new(self.vertices.clone(), types)?)
    }

    pub fn vertex(&self, label: &str) -> Result<u32, ModelError> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .map(|i| i as u32)
            .ok_or_else(|| ModelError::Quiver(format!("unknown vertex `{label}`")))
    }

    pub fn arrow_named(&self, name: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.name == name)
    }

    pub fn in_lambda(&self, name: &str) -> bool {
        self.loops.contains_key(name)
    }

    /// Structural checks shared by every builder.
    pub fn validate(&self) -> Result<(), ModelError> {
        let err = |m: String| Err(ModelError::Quiver(m));
        if self.vertices.is_empty() {
            return err("no vertices".into());
        }
        if !self.types.is_empty() && self.types.len() != self.vertices.len() {
            return err("one type per vertex required".into());
        }
        let mut names = BTreeSet::new();
        for a in &self.arrows {
            self.vertex(&a.tail)?;
            self.vertex(&a.head)?;
            if a.name.is_empty() || a.name.contains('^') || a.name.ends_with('\'') {
                return err(format!("bad arrow name `{}`", a.name));
            }
            if !names.insert(a.name.as_str()) {
                return err(format!("duplicate arrow `{}`", a.name));
            }
        }
        for (c, g) in &self.loops {
            match self.arrow_named(c) {
                None => return err(format!("Λ contains unknown arrow `{c}`")),
                Some(a) if a.tail != a.head => return err(format!("`{c}` in Λ is not a loop")),
                _ => {}
            }
            if *g != 1 && *g != -1 {
                return err(format!("γ_{c} must be ±1"));
            }
        }
        for g in self.gamma.keys() {
            if self.arrow_named(g).is_none() {
                return err(format!("γ given for unknown arrow `{g}`"));
            }
        }
        Ok(())
    }

    /// `Tₛ` of the doubled quiver in default order: declared arrows, `a`
    /// before `a^*`.
    pub fn default_order(&self, s: &str) -> Vec<String> {
        let mut out = Vec::new();
        for a in &self.arrows {
            if a.tail == s {
                out.push(a.name.clone());
            }
            if a.head == s {
                out.push(format!("{}^*", a.name));
            }
        }
        out
    }

    /// The ordering at `s`, checked to be a total order on `Tₛ`.
    pub fn order_at(&self, s: &str) -> Result<Vec<String>, ModelError> {
        let default = self.default_order(s);
        match self.orderings.get(s) {
            None => Ok(default),
            Some(o) => {
                let want: BTreeSet<_> = default.iter().collect();
                let got: BTreeSet<_> = o.iter().collect();
                if want != got || o.len() != default.len() {
                    return Err(ModelError::Quiver(format!(
                        "ordering at `{s}` must list exactly {default:?}"
                    )));
                }
                Ok(o.clone())
            }
        }
    }
}
