//! The model-definition language.
//!
//! ```text
//! # comment
//! [algebra]
//! kind = cotangent
//! vertices = [0, inf]
//! types = [O, O]
//! arrow = x: 0 -> 0
//! arrow = v: 0 -> inf
//! lambda = x: -1
//!
//! [rep]
//! alpha = [3, 1]
//! mode = twisted
//! seeds = [0, 1]
//!
//! [verify]
//! suites = [certify, compat, moment, jacobi]
//! ```
//!
//! Every line is a section header, a `key = value` pair, a comment or blank.
//! Keys marked repeatable (`arrow`, `lambda`, `ordering`, `fuse`, `tamper`)
//! may occur more than once; any other key at most once.

use std::fmt;
use std::str::FromStr;

use models::Arrow;
use ncalg::{VertexType, Q};
use repspace::Mode;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Cotangent,
    Multiplicative,
    Surface,
    Linear,
    Case2,
}

impl ModelKind {
    const ALL: [ModelKind; 5] =
        [ModelKind::Cotangent, ModelKind::Multiplicative, ModelKind::Surface, ModelKind::Linear, ModelKind::Case2];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Cotangent => "cotangent",
            ModelKind::Multiplicative => "multiplicative",
            ModelKind::Surface => "surface",
            ModelKind::Linear => "linear",
            ModelKind::Case2 => "case2",
        }
    }

    fn quiver_based(self) -> bool {
        !matches!(self, ModelKind::Surface | ModelKind::Linear)
    }
}

/// Replaces `⟪a,b⟫` by `factor·⟪a,b⟫`; a mutation control.
#[derive(Debug, Clone, PartialEq)]
pub struct Tamper {
    pub a: String,
    pub b: String,
    pub factor: Q,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraSection {
    pub kind: ModelKind,
    pub vertices: Vec<String>,
    pub types: Vec<VertexType>,
    pub arrows: Vec<Arrow>,
    pub lambda: Vec<(String, i8)>,
    pub orderings: Vec<(String, Vec<String>)>,
    pub genus: Option<usize>,
    pub boundary: Option<usize>,
    pub fuse: Vec<(String, String)>,
    pub tamper: Vec<Tamper>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepSection {
    pub alpha: Vec<usize>,
    pub mode: Mode,
    /// Empty means: take the types of the algebra.
    pub types: Vec<VertexType>,
    pub seeds: Vec<u64>,
    pub trials: usize,
}

/// Suites in their fixed execution order: exact ones first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Certify,
    Compat,
    Moment,
    Fusion,
    Cartan,
    Jacobi,
    Trace,
    Kontsevich,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::Certify, Suite::Compat, Suite::Moment, Suite::Fusion, Suite::Cartan, Suite::Jacobi, Suite::Trace, Suite::Kontsevich];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Certify => "certify",
            Suite::Compat => "compat",
            Suite::Moment => "moment",
            Suite::Fusion => "fusion",
            Suite::Cartan => "cartan",
            Suite::Jacobi => "jacobi",
            Suite::Trace => "trace",
            Suite::Kontsevich => "kontsevich",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    /// `O(n)`, or `Sp(n) ∩ O(n)` for symplectic blocks.
    Compact,
    /// The generic sampler of the representation space.
    Sampled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KontsevichSection {
    /// `None` selects the original system `h = H + w`.
    pub lambda: Option<Q>,
    pub dt: f64,
    pub steps: usize,
    pub max_power: u32,
    pub sample_every: usize,
    pub point: PointKind,
    pub drift_tol: f64,
}

impl Default for KontsevichSection {
    fn default() -> Self {
        KontsevichSection {
            lambda: Some(Q::from_integer(1.into())),
            dt: 1e-3,
            steps: 10_000,
            max_power: 4,
            sample_every: 100,
            point: PointKind::Compact,
            drift_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModelSpec {
    pub algebra: Option<AlgebraSection>,
    pub rep: Option<RepSection>,
    /// `Some(vec![])` is an explicit empty suite list.
    pub verify: Option<Vec<Suite>>,
    pub kontsevich: Option<KontsevichSection>,
}

/// A value with the column it starts at.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl<'a> Span<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: self.line, col: self.col, msg: msg.into() })
    }

    fn sub(&self, offset: usize, text: &'a str) -> Span<'a> {
        Span { text, line: self.line, col: self.col + self.text[..offset].chars().count() }
    }

    /// Trims whitespace, keeping the column in step.
    fn trim(&self) -> Span<'a> {
        let start = self.text.len() - self.text.trim_start().len();
        self.sub(start, self.text.trim())
    }

    /// Splits at the first occurrence of `sep`.
    fn split_once(&self, sep: &str) -> Option<(Span<'a>, Span<'a>)> {
        let i = self.text.find(sep)?;
        Some((self.sub(0, &self.text[..i]).trim(), self.sub(i + sep.len(), &self.text[i + sep.len()..]).trim()))
    }

    /// Comma-separated items, with optional surrounding brackets.
    fn list(&self) -> Result<Vec<Span<'a>>, ParseError> {
        let s = self.trim();
        let inner = match (s.text.starts_with('['), s.text.ends_with(']')) {
            (true, true) => s.sub(1, &s.text[1..s.text.len() - 1]).trim(),
            (false, false) => s,
            _ => return s.err("unbalanced brackets"),
        };
        if inner.text.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut start = 0;
        for (i, c) in inner.text.char_indices().chain([(inner.text.len(), ',')]) {
            if c == ',' {
                let item = inner.sub(start, &inner.text[start..i]).trim();
                if item.text.is_empty() {
                    return item.err("empty list item");
                }
                out.push(item);
                start = i + 1;
            }
        }
        Ok(out)
    }

    fn name(&self) -> Result<String, ParseError> {
        let t = self.text;
        let ok = !t.is_empty() && t.chars().all(|c| c.is_alphanumeric() || "_^*'#.".contains(c));
        if ok {
            Ok(t.to_string())
        } else {
            self.err(format!("expected a name, found `{t}`"))
        }
    }

    fn parse<T: FromStr>(&self, what: &str) -> Result<T, ParseError> {
        self.text.parse().or_else(|_| self.err(format!("expected {what}, found `{}`", self.text)))
    }

    fn vtype(&self) -> Result<VertexType, ParseError> {
        match self.text {
            "O" => Ok(VertexType::O),
            "Sp" => Ok(VertexType::Sp),
            "untyped" => Ok(VertexType::Untyped),
            t => self.err(format!("expected a vertex type (O, Sp, untyped), found `{t}`")),
        }
    }

    fn rational(&self) -> Result<Q, ParseError> {
        let bad = || self.err(format!("expected a rational such as 3 or -1/3, found `{}`", self.text));
        let (n, d) = match self.text.split_once('/') {
            Some((n, d)) => (n.trim().parse::<i64>(), d.trim().parse::<i64>()),
            None => (self.text.parse::<i64>(), Ok(1)),
        };
        match (n, d) {
            (Ok(n), Ok(d)) if d != 0 => Ok(ncalg::q(n, d)),
            _ => bad(),
        }
    }
}

const SECTIONS: [&str; 4] = ["algebra", "rep", "verify", "kontsevich"];

fn keys(section: &str) -> &'static [&'static str] {
    match section {
        "algebra" => &["kind", "vertices", "types", "arrow", "lambda", "ordering", "genus", "boundary", "fuse", "tamper"],
        "rep" => &["alpha", "mode", "types", "seeds", "trials"],
        "verify" => &["suites"],
        "kontsevich" => &["lambda", "dt", "steps", "M", "sample_every", "point", "drift_tol"],
        _ => &[],
    }
}

fn repeatable(section: &str, key: &str) -> bool {
    section == "algebra" && matches!(key, "arrow" | "lambda" | "ordering" | "fuse" | "tamper")
}

/// One `key = value` line.
struct Entry<'a> {
    key: Span<'a>,
    value: Span<'a>,
}

struct Section<'a> {
    name: &'a str,
    header: Span<'a>,
    entries: Vec<Entry<'a>>,
}

impl<'a> Section<'a> {
    fn get(&self, key: &str) -> Option<&Entry<'a>> {
        self.entries.iter().find(|e| e.key.text == key)
    }

    fn all<'s>(&'s self, key: &'s str) -> impl Iterator<Item = &'s Entry<'a>> + 's {
        self.entries.iter().filter(move |e| e.key.text == key)
    }
}

fn lex(text: &str) -> Result<Vec<Section<'_>>, ParseError> {
    let mut sections: Vec<Section> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        // `#` also occurs inside fused labels (`1#a`); only a `#` at the
        // start of a word opens a comment.
        let cut = raw
            .char_indices()
            .find(|&(i, c)| c == '#' && (i == 0 || raw[..i].ends_with(char::is_whitespace)))
            .map_or(raw.len(), |(i, _)| i);
        let content = &raw[..cut];
        let line = Span { text: content, line: n + 1, col: 1 }.trim();
        if line.text.is_empty() {
            continue;
        }
        if line.text.starts_with('[') {
            if !line.text.ends_with(']') {
                return line.err("expected `]` to close the section header");
            }
            let name = line.text[1..line.text.len() - 1].trim();
            if !SECTIONS.contains(&name) {
                return line.err(format!("unknown section `[{name}]`; expected one of {}", SECTIONS.join(", ")));
            }
            if sections.iter().any(|s| s.name == name) {
                return line.err(format!("section `[{name}]` given twice"));
            }
            sections.push(Section { name: SECTIONS.iter().find(|s| **s == name).unwrap(), header: line, entries: Vec::new() });
            continue;
        }
        let Some((key, value)) = line.split_once("=") else {
            return line.err("expected `key = value` or a `[section]` header");
        };
        let Some(sec) = sections.last_mut() else {
            return key.err("key outside of any section");
        };
        if !keys(sec.name).contains(&key.text) {
            return key.err(format!("unknown key `{}` in [{}]; expected one of {}", key.text, sec.name, keys(sec.name).join(", ")));
        }
        if !repeatable(sec.name, key.text) && sec.get(key.text).is_some() {
            return key.err(format!("key `{}` given twice", key.text));
        }
        if value.text.is_empty() {
            return value.err(format!("missing value for `{}`", key.text));
        }
        sec.entries.push(Entry { key, value });
    }
    Ok(sections)
}

fn names(v: &Span) -> Result<Vec<String>, ParseError> {
    v.list()?.iter().map(|s| s.name()).collect()
}

fn parse_algebra(s: &Section) -> Result<AlgebraSection, ParseError> {
    let kind_entry = s.get("kind").map_or_else(|| s.header.err("[algebra] needs `kind`"), Ok)?;
    let kind = ModelKind::ALL
        .into_iter()
        .find(|k| k.name() == kind_entry.value.text)
        .map_or_else(|| kind_entry.value.err(format!("unknown kind `{}`; expected cotangent, multiplicative, surface, linear or case2", kind_entry.value.text)), Ok)?;
    let mut a = AlgebraSection {
        kind,
        vertices: Vec::new(),
        types: Vec::new(),
        arrows: Vec::new(),
        lambda: Vec::new(),
        orderings: Vec::new(),
        genus: None,
        boundary: None,
        fuse: Vec::new(),
        tamper: Vec::new(),
    };
    if let Some(e) = s.get("vertices") {
        a.vertices = names(&e.value)?;
    }
    if let Some(e) = s.get("types") {
        a.types = e.value.list()?.iter().map(|t| t.vtype()).collect::<Result<_, _>>()?;
        if a.types.len() != a.vertices.len() {
            return e.value.err(format!("{} types for {} vertices", a.types.len(), a.vertices.len()));
        }
    }
    let vertex = |sp: &Span| -> Result<String, ParseError> {
        let v = sp.name()?;
        if a.vertices.contains(&v) {
            Ok(v)
        } else {
            sp.err(format!("unknown vertex `{v}`"))
        }
    };
    let mut arrows = Vec::new();
    for e in s.all("arrow") {
        let (name, ends) = e.value.split_once(":").map_or_else(|| e.value.err("expected `name: tail -> head`"), Ok)?;
        let (t, h) = ends.split_once("->").map_or_else(|| ends.err("expected `tail -> head`"), Ok)?;
        arrows.push(Arrow { name: name.name()?, tail: vertex(&t)?, head: vertex(&h)? });
    }
    a.arrows = arrows;
    for e in s.all("lambda") {
        let (name, g) = e.value.split_once(":").map_or_else(|| e.value.err("expected `loop: ±1`"), Ok)?;
        let gamma: i8 = g.parse("±1")?;
        if gamma != 1 && gamma != -1 {
            return g.err("γ must be 1 or -1");
        }
        a.lambda.push((name.name()?, gamma));
    }
    for e in s.all("ordering") {
        let (v, order) = e.value.split_once(":").map_or_else(|| e.value.err("expected `vertex: a, b^*, ...`"), Ok)?;
        a.orderings.push((vertex(&v)?, names(&order)?));
    }
    for (key, slot) in [("genus", &mut a.genus), ("boundary", &mut a.boundary)] {
        if let Some(e) = s.get(key) {
            *slot = Some(e.value.parse("a non-negative integer")?);
        }
    }
    for e in s.all("fuse") {
        let items = e.value.list()?;
        if items.len() != 2 {
            return e.value.err("expected two vertex labels `s, t`");
        }
        a.fuse.push((items[0].name()?, items[1].name()?));
    }
    for e in s.all("tamper") {
        let (pair, f) = e.value.split_once(":").map_or_else(|| e.value.err("expected `a, b: factor`"), Ok)?;
        let items = pair.list()?;
        if items.len() != 2 {
            return pair.err("expected two generator names `a, b`");
        }
        a.tamper.push(Tamper { a: items[0].name()?, b: items[1].name()?, factor: f.rational()? });
    }

    // Which keys belong to which kind.
    let quiver_keys = ["vertices", "types", "arrow", "lambda", "ordering"];
    let surface_keys = ["genus", "boundary"];
    let (forbidden, required): (&[&str], &[&str]) =
        if kind.quiver_based() { (&surface_keys, &["vertices"]) } else { (&quiver_keys, &surface_keys) };
    for k in forbidden {
        if let Some(e) = s.get(k) {
            return e.key.err(format!("`{k}` does not apply to kind {}", kind.name()));
        }
    }
    for k in required {
        if s.get(k).is_none() {
            return s.header.err(format!("kind {} needs `{k}`", kind.name()));
        }
    }
    if kind != ModelKind::Cotangent {
        if let Some(e) = s.get("lambda") {
            return e.key.err("`lambda` (the set Λ) applies only to cotangent models");
        }
    }
    if kind != ModelKind::Multiplicative {
        if let Some(e) = s.get("ordering") {
            return e.key.err("`ordering` applies only to multiplicative models");
        }
    }
    if kind == ModelKind::Case2 && a.types.is_empty() {
        return s.header.err("kind case2 needs `types`");
    }
    if kind == ModelKind::Case2 && a.types.len() == a.vertices.len() {
        let ty = |v: &str| a.vertices.iter().position(|x| x == v).map(|i| a.types[i]);
        for (e, arrow) in s.all("arrow").zip(&a.arrows) {
            if ty(&arrow.tail).is_some() && ty(&arrow.tail) == ty(&arrow.head) {
                return e.value.err(format!("arrow {} must join vertices of two different types", arrow.name));
            }
        }
    }
    Ok(a)
}

fn parse_rep(s: &Section) -> Result<RepSection, ParseError> {
    let need = |k: &str| s.get(k).map_or_else(|| s.header.err(format!("[rep] needs `{k}`")), Ok);
    let alpha_e = need("alpha")?;
    let alpha = alpha_e.value.list()?.iter().map(|x| x.parse("a dimension")).collect::<Result<Vec<usize>, _>>()?;
    if alpha.is_empty() {
        return alpha_e.value.err("alpha is empty");
    }
    let seeds_e = need("seeds")?;
    let seeds = seeds_e.value.list()?.iter().map(|x| x.parse("a seed")).collect::<Result<Vec<u64>, _>>()?;
    let mode = match s.get("mode") {
        None => Mode::Twisted,
        Some(e) => match e.value.text {
            "twisted" => Mode::Twisted,
            "GL" | "gl" => Mode::Gl,
            t => return e.value.err(format!("expected mode GL or twisted, found `{t}`")),
        },
    };
    let types = match s.get("types") {
        None => Vec::new(),
        Some(e) => {
            let t: Vec<VertexType> = e.value.list()?.iter().map(|t| t.vtype()).collect::<Result<_, _>>()?;
            if t.len() != alpha.len() {
                return e.value.err(format!("{} types for {} dimensions", t.len(), alpha.len()));
            }
            t
        }
    };
    let trials = match s.get("trials") {
        None => 50,
        Some(e) => e.value.parse("a trial count")?,
    };
    Ok(RepSection { alpha, mode, types, seeds, trials })
}

fn parse_verify(s: &Section) -> Result<Vec<Suite>, ParseError> {
    let Some(e) = s.get("suites") else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for item in e.value.list()? {
        let suite = Suite::ALL.into_iter().find(|x| x.name() == item.text).map_or_else(
            || item.err(format!("unknown suite `{}`; expected one of {}", item.text, Suite::ALL.map(|s| s.name()).join(", "))),
            Ok,
        )?;
        if out.contains(&suite) {
            return item.err(format!("suite `{}` listed twice", item.text));
        }
        out.push(suite);
    }
    Ok(out)
}

fn parse_kontsevich(s: &Section) -> Result<KontsevichSection, ParseError> {
    let mut k = KontsevichSection::default();
    if let Some(e) = s.get("lambda") {
        k.lambda = if e.value.text == "original" { None } else { Some(e.value.rational()?) };
    }
    if let Some(e) = s.get("dt") {
        k.dt = e.value.parse("a time step")?;
        if !(k.dt.is_finite() && k.dt > 0.0) {
            return e.value.err("dt must be positive");
        }
    }
    if let Some(e) = s.get("steps") {
        k.steps = e.value.parse("a step count")?;
    }
    if let Some(e) = s.get("M") {
        k.max_power = e.value.parse("a trace power")?;
        if k.max_power == 0 {
            return e.value.err("M must be at least 1");
        }
    }
    if let Some(e) = s.get("sample_every") {
        k.sample_every = e.value.parse("a step count")?;
        if k.sample_every == 0 {
            return e.value.err("sample_every must be at least 1");
        }
    }
    if let Some(e) = s.get("point") {
        k.point = match e.value.text {
            "compact" => PointKind::Compact,
            "sampled" => PointKind::Sampled,
            t => return e.value.err(format!("expected point compact or sampled, found `{t}`")),
        };
    }
    if let Some(e) = s.get("drift_tol") {
        k.drift_tol = e.value.parse("a tolerance")?;
    }
    Ok(k)
}

/// Parses a model file. Errors carry the 1-based line and column.
pub fn parse_model(text: &str) -> Result<ModelSpec, ParseError> {
    let sections = lex(text)?;
    let mut spec = ModelSpec::default();
    for s in &sections {
        match s.name {
            "algebra" => spec.algebra = Some(parse_algebra(s)?),
            "rep" => spec.rep = Some(parse_rep(s)?),
            "verify" => spec.verify = Some(parse_verify(s)?),
            "kontsevich" => spec.kontsevich = Some(parse_kontsevich(s)?),
            _ => unreachable!("lexer admits known sections only"),
        }
    }
    // Type constraints on the dimension vector.
    if let Some(rep) = &spec.rep {
        let s = sections.iter().find(|s| s.name == "rep").unwrap();
        let types = if !rep.types.is_empty() {
            Some(rep.types.clone())
        } else {
            spec.algebra.as_ref().filter(|a| a.fuse.is_empty() && a.types.len() == rep.alpha.len()).map(|a| a.types.clone())
        };
        if let (Some(types), Mode::Twisted) = (types, rep.mode) {
            let at = s.get("alpha").unwrap().value;
            for (i, (&d, t)) in rep.alpha.iter().zip(&types).enumerate() {
                if *t == VertexType::Sp && d % 2 == 1 {
                    return at.err(format!("Sp dimension must be even (entry {}, α = {d})", i + 1));
                }
            }
        }
    }
    Ok(spec)
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn type_list(ts: &[VertexType]) -> String {
    list(&ts.iter().map(|t| t.tag()).collect::<Vec<_>>())
}

/// Canonical text form; `parse_model` inverts it.
impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut header = |f: &mut fmt::Formatter<'_>, name: &str| {
            if !first {
                writeln!(f)?;
            }
            first = false;
            writeln!(f, "[{name}]")
        };
        if let Some(a) = &self.algebra {
            header(f, "algebra")?;
            writeln!(f, "kind = {}", a.kind.name())?;
            if a.kind.quiver_based() {
                writeln!(f, "vertices = {}", list(&a.vertices))?;
                if !a.types.is_empty() {
                    writeln!(f, "types = {}", type_list(&a.types))?;
                }
                for ar in &a.arrows {
                    writeln!(f, "arrow = {}: {} -> {}", ar.name, ar.tail, ar.head)?;
                }
                for (c, g) in &a.lambda {
                    writeln!(f, "lambda = {c}: {g}")?;
                }
                for (v, o) in &a.orderings {
                    writeln!(f, "ordering = {v}: {}", list(o))?;
                }
            }
            if let Some(g) = a.genus {
                writeln!(f, "genus = {g}")?;
            }
            if let Some(r) = a.boundary {
                writeln!(f, "boundary = {r}")?;
            }
            for (s, t) in &a.fuse {
                writeln!(f, "fuse = [{s}, {t}]")?;
            }
            for t in &a.tamper {
                writeln!(f, "tamper = [{}, {}]: {}", t.a, t.b, t.factor)?;
            }
        }
        if let Some(r) = &self.rep {
            header(f, "rep")?;
            writeln!(f, "alpha = {}", list(&r.alpha))?;
            writeln!(f, "mode = {}", if r.mode == Mode::Gl { "GL" } else { "twisted" })?;
            if !r.types.is_empty() {
                writeln!(f, "types = {}", type_list(&r.types))?;
            }
            writeln!(f, "seeds = {}", list(&r.seeds))?;
            writeln!(f, "trials = {}", r.trials)?;
        }
        if let Some(v) = &self.verify {
            header(f, "verify")?;
            writeln!(f, "suites = {}", list(&v.iter().map(|s| s.name()).collect::<Vec<_>>()))?;
        }
        if let Some(k) = &self.kontsevich {
            header(f, "kontsevich")?;
            match &k.lambda {
                Some(l) => writeln!(f, "lambda = {l}")?,
                None => writeln!(f, "lambda = original")?,
            }
            writeln!(f, "dt = {}", k.dt)?;
            writeln!(f, "steps = {}", k.steps)?;
            writeln!(f, "M = {}", k.max_power)?;
            writeln!(f, "sample_every = {}", k.sample_every)?;
            writeln!(f, "point = {}", if k.point == PointKind::Compact { "compact" } else { "sampled" })?;
            writeln!(f, "drift_tol = {}", k.drift_tol)?;
        }
        Ok(())
    }
}
