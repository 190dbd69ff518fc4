use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use dbracket::Context;
use nalgebra::DMatrix;
use ncalg::{q_to_f64, Algebra, AntiHom, Element, Letter, VertexType, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::dims::{Mode, TypedDims};
use crate::error::RepError;
use crate::group::{cond, gaussian, sample_group};
use crate::index::{max_abs, IndexTables};

#[derive(Debug, Clone, Copy)]
pub struct SampleOptions {
    /// Largest accepted condition number for invertible generators.
    pub cond_bound: f64,
    pub max_attempts: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { cond_bound: 1e8, max_attempts: 100 }
    }
}

/// Numeric matrices for every generator, supported on their blocks.
#[derive(Debug)]
pub struct RepPoint {
    alg: Algebra,
    dims: TypedDims,
    tables: IndexTables,
    mats: Vec<DMatrix<f64>>,
    invs: Vec<Option<DMatrix<f64>>>,
    seed: u64,
    cache: RefCell<HashMap<Word, Rc<DMatrix<f64>>>>,
}

impl Clone for RepPoint {
    fn clone(&self) -> Self {
        RepPoint {
            alg: self.alg.clone(),
            dims: self.dims.clone(),
            tables: self.tables.clone(),
            mats: self.mats.clone(),
            invs: self.invs.clone(),
            seed: self.seed,
            cache: RefCell::default(),
        }
    }
}

fn place(t: &IndexTables, s: usize, u: usize, block: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(t.n(), t.n());
    let (r, c) = (t.block(s), t.block(u));
    m.view_mut((r.start, c.start), (r.len(), c.len())).copy_from(block);
    m
}

fn extract(t: &IndexTables, s: usize, u: usize, m: &DMatrix<f64>) -> DMatrix<f64> {
    let (r, c) = (t.block(s), t.block(u));
    m.view((r.start, c.start), (r.len(), c.len())).into_owned()
}

impl RepPoint {
    /// Wraps explicit matrices; checks sizes, block support and invertibility.
    pub fn from_matrices(alg: &Algebra, dims: TypedDims, mats: Vec<DMatrix<f64>>, seed: u64) -> Result<Self, RepError> {
        if dims.len() != alg.base().len() {
            return Err(RepError::Dims(format!("{} dimensions for {} vertices", dims.len(), alg.base().len())));
        }
        if mats.len() != alg.num_gens() {
            let missing = alg.gens().get(mats.len()).map(|g| g.name.clone()).unwrap_or_default();
            return Err(RepError::Unassigned(missing));
        }
        let tables = IndexTables::new(&dims);
        let n = tables.n();
        let mut invs = Vec::with_capacity(mats.len());
        for (g, m) in alg.gens().iter().zip(&mats) {
            if m.nrows() != n || m.ncols() != n {
                return Err(RepError::Import(format!("`{}` is {}×{}, expected {n}×{n}", g.name, m.nrows(), m.ncols())));
            }
            let (rows, cols) = (tables.block(g.tail as usize), tables.block(g.head as usize));
            for i in 0..n {
                for j in 0..n {
                    if m[(i, j)] != 0.0 && !(rows.contains(&i) && cols.contains(&j)) {
                        return Err(RepError::Import(format!("`{}` has an entry outside its block at ({i},{j})", g.name)));
                    }
                }
            }
            if g.invertible {
                if rows.len() != cols.len() {
                    return Err(RepError::Import(format!("invertible `{}` joins blocks of different sizes", g.name)));
                }
                let b = extract(&tables, g.tail as usize, g.head as usize, m);
                let inv = b
                    .try_inverse()
                    .ok_or_else(|| RepError::Import(format!("`{}` is singular", g.name)))?;
                invs.push(Some(place(&tables, g.head as usize, g.tail as usize, &inv)));
            } else {
                invs.push(None);
            }
        }
        Ok(RepPoint { alg: alg.clone(), dims, tables, mats, invs, seed, cache: RefCell::default() })
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }

    pub fn dims(&self) -> &TypedDims {
        &self.dims
    }

    pub fn tables(&self) -> &IndexTables {
        &self.tables
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n(&self) -> usize {
        self.tables.n()
    }

    pub fn matrix(&self, g: u32) -> &DMatrix<f64> {
        &self.mats[g as usize]
    }

    pub fn matrices(&self) -> &[DMatrix<f64>] {
        &self.mats
    }

    fn letter(&self, l: Letter) -> &DMatrix<f64> {
        if l.inv {
            self.invs[l.gen as usize].as_ref().expect("inverse letter of a non-invertible generator")
        } else {
            &self.mats[l.gen as usize]
        }
    }

    /// `X(w)`; the empty word at `s` is the `s`-th identity block.
    pub fn word(&self, w: &Word) -> Rc<DMatrix<f64>> {
        if let Some(m) = self.cache.borrow().get(w) {
            return m.clone();
        }
        let m = if w.is_empty() {
            let s = w.start() as usize;
            let r = self.tables.block(s);
            place(&self.tables, s, s, &DMatrix::identity(r.len(), r.len()))
        } else {
            let mut it = w.letters().iter();
            let first = self.letter(*it.next().unwrap()).clone();
            it.fold(first, |acc, &l| acc * self.letter(l))
        };
        let m = Rc::new(m);
        self.cache.borrow_mut().insert(w.clone(), m.clone());
        m
    }

    /// `X(x)` for an element of the point's algebra.
    pub fn eval(&self, x: &Element) -> Result<DMatrix<f64>, RepError> {
        let n = self.n();
        let mut out = DMatrix::zeros(n, n);
        for (w, c) in x.iter() {
            for l in w.letters() {
                if l.gen as usize >= self.mats.len() {
                    return Err(RepError::Unassigned(format!("#{}", l.gen)));
                }
                if l.inv && self.invs[l.gen as usize].is_none() {
                    return Err(RepError::Unassigned(format!("{}⁻¹", self.alg.gen(l.gen).name)));
                }
            }
            out += &*self.word(w) * q_to_f64(c);
        }
        Ok(out)
    }

    pub fn trace(&self, x: &Element) -> Result<f64, RepError> {
        Ok(self.eval(x)?.trace())
    }

    /// Largest deviation `|X(ϖ(g)) − twist(X(g))|` over the generators.
    pub fn twist_error(&self, phi: &AntiHom) -> Result<(f64, String), RepError> {
        let mut worst = (0.0, String::new());
        for (g, gen) in self.alg.gens().iter().enumerate() {
            let lhs = self.eval(phi.image(g as u32))?;
            let rhs = self.tables.twist(&self.mats[g]);
            let e = max_abs(&(lhs - rhs));
            if e > worst.0 || worst.1.is_empty() {
                worst = (e, gen.name.clone());
            }
        }
        Ok(worst)
    }

    /// The point `g·X = g⁻¹ X g` for block-diagonal `g`.
    pub fn acted(&self, g: &DMatrix<f64>) -> Result<RepPoint, RepError> {
        let gi = g.clone().try_inverse().ok_or_else(|| RepError::Import("singular group element".into()))?;
        let mats = self.mats.iter().map(|m| &gi * m * g).collect();
        RepPoint::from_matrices(&self.alg, self.dims.clone(), mats, self.seed)
    }

    pub fn to_json(&self) -> Value {
        let mut gens = serde_json::Map::new();
        for (g, m) in self.alg.gens().iter().zip(&self.mats) {
            let rows: Vec<Value> = (0..m.nrows())
                .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
                .map(|(i, j)| json!([m[(i, j)], 0.0]))
                .collect();
            gens.insert(g.name.clone(), Value::Array(rows));
        }
        let types: Vec<&str> = self.dims.types().iter().map(|t| t.tag()).collect();
        json!({
            "dims": {"alpha": self.dims.alpha(), "types": types, "mode": self.dims.mode().name()},
            "seed": self.seed,
            "generators": gens,
        })
    }

    pub fn from_json(alg: &Algebra, v: &Value) -> Result<Self, RepError> {
        let bad = |m: &str| RepError::Import(m.to_string());
        let d = &v["dims"];
        let alpha: Vec<usize> = d["alpha"]
            .as_array()
            .ok_or_else(|| bad("missing dims.alpha"))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("alpha entry")))
            .collect::<Result<_, _>>()?;
        let dims = match d["mode"].as_str() {
            Some("GL") => TypedDims::gl(alpha),
            Some("twisted") => {
                let types = d["types"]
                    .as_array()
                    .ok_or_else(|| bad("missing dims.types"))?
                    .iter()
                    .map(|t| match t.as_str() {
                        Some("O") => Ok(VertexType::O),
                        Some("Sp") => Ok(VertexType::Sp),
                        _ => Err(bad("type tag")),
                    })
                    .collect::<Result<_, _>>()?;
                TypedDims::new(alpha, types, Mode::Twisted)?
            }
            _ => return Err(bad("dims.mode")),
        };
        let n = dims.n();
        let seed = v["seed"].as_u64().ok_or_else(|| bad("seed"))?;
        let mut mats = Vec::new();
        for g in alg.gens() {
            let arr = v["generators"][&g.name].as_array().ok_or_else(|| RepError::Unassigned(g.name.clone()))?;
            if arr.len() != n * n {
                return Err(bad(&format!("`{}` has {} entries", g.name, arr.len())));
            }
            let vals: Vec<f64> = arr
                .iter()
                .map(|p| {
                    let (re, im) = (p[0].as_f64(), p[1].as_f64());
                    match (re, im) {
                        (Some(re), Some(im)) if im == 0.0 => Ok(re),
                        (Some(_), Some(_)) => Err(bad("complex entries are not supported")),
                        _ => Err(bad("entry is not a [re, im] pair")),
                    }
                })
                .collect::<Result<_, _>>()?;
            mats.push(DMatrix::from_row_slice(n, n, &vals));
        }
        RepPoint::from_matrices(alg, dims, mats, seed)
    }
}

/// How a generator's matrix is determined in twisted mode.
enum Rule {
    /// `ϖ(g) = λ h` with `h ≠ g`: `g` is free, `X(h) = twist(X(g))/λ`.
    Partner(u32, f64),
    /// `ϖ(g) = λ g` on a loop: project onto the `λ`-eigenspace of the twist.
    Eigen(f64),
    /// `ϖ(g) = g⁻¹`: a group element.
    Group,
}

fn rule(alg: &Algebra, phi: &AntiHom, g: u32) -> Result<Rule, RepError> {
    let img = phi.image(g);
    let name = &alg.gen(g).name;
    let unsupported = || RepError::Unsupported(format!("cannot sample `{name}` with ϖ image of this shape"));
    let (w, c) = img.as_monomial().ok_or_else(unsupported)?;
    let c = q_to_f64(c);
    if w.len() != 1 {
        return Err(unsupported());
    }
    let l = w.letters()[0];
    match (l.gen == g, l.inv) {
        (false, false) => Ok(Rule::Partner(l.gen, c)),
        (true, false) if c.abs() == 1.0 => Ok(Rule::Eigen(c)),
        (true, true) if c == 1.0 => Ok(Rule::Group),
        _ => Err(unsupported()),
    }
}

/// Samples a point of `Rep(A, α)` (GL mode) or `Rep^{ϖ,θ}(A, α)` (twisted
/// mode, `ϖ` taken from the context). Deterministic in `seed`.
pub fn sample_point(ctx: &Context, dims: &TypedDims, seed: u64) -> Result<RepPoint, RepError> {
    sample_point_with(ctx, dims, seed, SampleOptions::default())
}

pub fn sample_point_with(ctx: &Context, dims: &TypedDims, seed: u64, opts: SampleOptions) -> Result<RepPoint, RepError> {
    let alg = ctx.alg();
    if dims.len() != alg.base().len() {
        return Err(RepError::Dims(format!("{} dimensions for {} vertices", dims.len(), alg.base().len())));
    }
    let tables = IndexTables::new(dims);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ng = alg.num_gens();
    let mut mats: Vec<Option<DMatrix<f64>>> = vec![None; ng];
    let fail = |msg: String| RepError::Sampling { seed, attempts: opts.max_attempts, msg };

    let invertible_block = |rng: &mut ChaCha8Rng, g: u32| -> Result<DMatrix<f64>, RepError> {
        let gen = alg.gen(g);
        let (r, c) = (tables.block(gen.tail as usize).len(), tables.block(gen.head as usize).len());
        if r != c {
            return Err(RepError::Unsupported(format!("invertible `{}` joins blocks of sizes {r} and {c}", gen.name)));
        }
        for _ in 0..opts.max_attempts {
            let b = gaussian(rng, r, c);
            if cond(&b) < opts.cond_bound {
                return Ok(b);
            }
        }
        Err(fail(format!("no well-conditioned matrix for `{}`", gen.name)))
    };

    match dims.mode() {
        Mode::Gl => {
            for g in 0..ng as u32 {
                let gen = alg.gen(g);
                let b = if gen.invertible {
                    invertible_block(&mut rng, g)?
                } else {
                    let (r, c) = (tables.block(gen.tail as usize).len(), tables.block(gen.head as usize).len());
                    gaussian(&mut rng, r, c)
                };
                mats[g as usize] = Some(place(&tables, gen.tail as usize, gen.head as usize, &b));
            }
        }
        Mode::Twisted => {
            for (s, t) in dims.types().iter().enumerate() {
                // An untyped base vertex takes the type of the dimension vector.
                let base = alg.base().vtype(s as u32);
                if *t == VertexType::Untyped {
                    return Err(RepError::Untyped(alg.base().label(s as u32).to_string()));
                }
                if base != VertexType::Untyped && base != *t {
                    return Err(RepError::Dims(format!(
                        "vertex `{}` is {} in the algebra but {} in the dimension vector",
                        alg.base().label(s as u32),
                        base.tag(),
                        t.tag()
                    )));
                }
            }
            let phi = ctx
                .phi
                .as_ref()
                .ok_or_else(|| RepError::Unsupported("twisted mode needs an anti-involution".into()))?;
            for g in 0..ng as u32 {
                if mats[g as usize].is_some() {
                    continue;
                }
                let gen = alg.gen(g);
                let (s, u) = (gen.tail as usize, gen.head as usize);
                match rule(alg, phi, g)? {
                    Rule::Partner(h, lambda) => {
                        let b = if gen.invertible {
                            invertible_block(&mut rng, g)?
                        } else {
                            gaussian(&mut rng, tables.block(s).len(), tables.block(u).len())
                        };
                        let x = place(&tables, s, u, &b);
                        mats[h as usize] = Some(tables.twist(&x) / lambda);
                        mats[g as usize] = Some(x);
                    }
                    Rule::Eigen(lambda) => {
                        if s != u {
                            return Err(RepError::Unsupported(format!("ϖ fixes the non-loop `{}`", gen.name)));
                        }
                        let r = tables.block(s).len();
                        let x = place(&tables, s, s, &gaussian(&mut rng, r, r));
                        let x = (&x + tables.twist(&x) * lambda) * 0.5;
                        mats[g as usize] = Some(x);
                    }
                    Rule::Group => {
                        let (ts, tu) = (dims.types()[s], dims.types()[u]);
                        let (r, c) = (tables.block(s).len(), tables.block(u).len());
                        if ts != tu || r != c {
                            return Err(RepError::Unsupported(format!(
                                "`{}` is inverted by ϖ but joins blocks of different type or size",
                                gen.name
                            )));
                        }
                        let b = sample_group(&mut rng, ts, r, opts.cond_bound, opts.max_attempts)
                            .ok_or_else(|| fail(format!("Cayley transform for `{}`", gen.name)))?;
                        mats[g as usize] = Some(place(&tables, s, u, &b));
                    }
                }
            }
        }
    }
    let mats: Vec<DMatrix<f64>> = mats.into_iter().map(|m| m.expect("every generator assigned")).collect();
    let p = RepPoint::from_matrices(alg, dims.clone(), mats, seed)?;
    if dims.mode() == Mode::Twisted {
        let (err, gen) = p.twist_error(ctx.phi.as_ref().unwrap())?;
        let scale = p.mats.iter().map(max_abs).fold(1.0, f64::max);
        if err > 1e-10 * scale {
            return Err(RepError::Twist { gen, err });
        }
    }
    Ok(p)
}
