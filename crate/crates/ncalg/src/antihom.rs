use crate::algebra::Algebra;
use crate::element::Element;
use crate::error::AlgError;
use crate::word::Word;
use crate::{qi, render_element, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntiHomKind {
    /// φ² = id.
    Involution,
    /// φ²(g) = 𝔱(s)𝔱(t)·g for g ∈ eₛAeₜ.
    Typed,
}

/// Anti-homomorphism fixing every idempotent, given on generators.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiHom {
    images: Vec<Element>,
    inv_images: Vec<Option<Element>>,
    kind: AntiHomKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KindCheck {
    pub kind: AntiHomKind,
    /// `(generator, passed, φ²(g) rendered)`.
    pub per_generator: Vec<(String, bool, String)>,
}

impl KindCheck {
    pub fn passed(&self) -> bool {
        self.per_generator.iter().all(|(_, ok, _)| *ok)
    }
}

impl AntiHom {
    pub fn new(alg: &Algebra, images: Vec<Element>, kind: AntiHomKind) -> Result<Self, AlgError> {
        if images.len() != alg.num_gens() {
            return Err(AlgError::Malformed("one image per generator required".into()));
        }
        for (g, img) in alg.gens().iter().zip(&images) {
            alg.validate(img)?;
            if img.iter().any(|(w, _)| w.start() != g.head || w.end() != g.tail) {
                return Err(AlgError::Malformed(format!(
                    "image of `{}` must lie in e_{} A e_{}",
                    g.name,
                    alg.base().label(g.head),
                    alg.base().label(g.tail)
                )));
            }
        }
        let inv_images = images.iter().map(|x| alg.inverse(x).ok()).collect();
        Ok(AntiHom { images, inv_images, kind })
    }

    /// Builds from `(generator, image)` pairs; unlisted generators are an error.
    pub fn from_pairs(
        alg: &Algebra,
        pairs: &[(&str, Element)],
        kind: AntiHomKind,
    ) -> Result<Self, AlgError> {
        let mut images = vec![None; alg.num_gens()];
        for (name, img) in pairs {
            images[alg.gen_id(name)? as usize] = Some(img.clone());
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| AlgError::UnknownGenerator(alg.gen(i as u32).name.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        AntiHom::new(alg, images, kind)
    }

    /// The inversion map g ↦ g⁻¹ on an algebra whose generators are all invertible.
    pub fn inversion(alg: &Algebra) -> Result<Self, AlgError> {
        let images = (0..alg.num_gens() as u32)
            .map(|g| alg.letter(crate::Letter::inverse(g)).map(Element::from_word))
            .collect::<Result<Vec<_>, _>>()?;
        AntiHom::new(alg, images, AntiHomKind::Involution)
    }

    pub fn kind(&self) -> AntiHomKind {
        self.kind
    }

    pub fn image(&self, g: u32) -> &Element {
        &self.images[g as usize]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply_word(&self, alg: &Algebra, w: &Word) -> Result<Element, AlgError> {
        let mut acc = Element::from_word(Word::idem(w.end()));
        for l in w.letters().iter().rev() {
            let img = if l.inv {
                self.inv_images[l.gen as usize].as_ref().ok_or_else(|| {
                    AlgError::UnsupportedInverse(render_element(alg, &self.images[l.gen as usize]))
                })?
            } else {
                &self.images[l.gen as usize]
            };
            acc = &acc * img;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn apply(&self, alg: &Algebra, x: &Element) -> Result<Element, AlgError> {
        let mut out = Element::zero();
        for (w, c) in x.iter() {
            out.add_scaled(&self.apply_word(alg, w)?, c);
        }
        Ok(out)
    }

    /// Expected scalar in φ²(g) = ε·g for the claimed kind.
    pub fn square_sign(&self, alg: &Algebra, g: u32) -> Q {
        match self.kind {
            AntiHomKind::Involution => qi(1),
            AntiHomKind::Typed => {
                let gen = alg.gen(g);
                let t = |s| alg.base().vtype(s).sign().unwrap_or(1);
                qi(t(gen.tail) * t(gen.head))
            }
        }
    }

    pub fn check_kind(&self, alg: &Algebra) -> KindCheck {
        let mut per_generator = Vec::new();
        for g in 0..alg.num_gens() as u32 {
            let gen = alg.gen(g);
            let typed_ok = self.kind == AntiHomKind::Involution
                || (alg.base().vtype(gen.tail).sign().is_some()
                    && alg.base().vtype(gen.head).sign().is_some());
            let sq = self.apply(alg, &self.images[g as usize]);
            let want = Element::from_word(alg.letter(crate::Letter::new(g)).unwrap())
                .scale(&self.square_sign(alg, g));
            let (ok, shown) = match sq {
                Ok(sq) => (typed_ok && sq == want, render_element(alg, &sq)),
                Err(e) => (false, e.to_string()),
            };
            per_generator.push((gen.name.clone(), ok, shown));
        }
        KindCheck { kind: self.kind, per_generator }
    }
}
