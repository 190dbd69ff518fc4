use num_traits::{One, Signed, Zero};

use crate::algebra::Algebra;
use crate::element::Element;
use crate::error::AlgError;
use crate::tensor::Tensor;
use crate::word::{Letter, Word};
use crate::Q;

pub fn render_word(alg: &Algebra, w: &Word) -> String {
    if w.is_empty() {
        return format!("e_{}", alg.base().label(w.start()));
    }
    w.letters()
        .iter()
        .map(|l| {
            let name = &alg.gen(l.gen).name;
            if l.inv {
                format!("{name}^-1")
            } else {
                name.clone()
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn push_term(out: &mut String, c: &Q, body: &str) {
    let neg = c.is_negative();
    let a = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if !a.is_one() {
        out.push_str(&a.to_string());
        out.push('*');
    }
    out.push_str(body);
}

/// Deterministic text form, e.g. `1/2*z*z - e_1`.
pub fn render_element(alg: &Algebra, x: &Element) -> String {
    let mut out = String::new();
    for (w, c) in x.iter() {
        push_term(&mut out, c, &render_word(alg, w));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn render_tensor<const N: usize>(alg: &Algebra, t: &Tensor<N>) -> String {
    let mut out = String::new();
    for (ws, c) in t.iter() {
        let body = ws.iter().map(|w| render_word(alg, w)).collect::<Vec<_>>().join(" ⊗ ");
        push_term(&mut out, c, &format!("({body})"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> AlgError {
        AlgError::Parse { col: self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        self.src[self.pos..].starts_with(s.as_bytes())
    }

    fn number(&mut self) -> Result<Q, AlgError> {
        let digits = |lx: &mut Self| {
            let s = lx.pos;
            while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_digit() {
                lx.pos += 1;
            }
            std::str::from_utf8(&lx.src[s..lx.pos]).unwrap().parse::<num_bigint::BigInt>()
        };
        let n = digits(self).map_err(|_| self.err("expected integer"))?;
        if self.pos < self.src.len() && self.src[self.pos] == b'/' {
            self.pos += 1;
            let d = digits(self).map_err(|_| self.err("expected denominator"))?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(Q::new(n, d));
        }
        Ok(Q::from_integer(n))
    }

    fn factor(&mut self, alg: &Algebra) -> Result<Element, AlgError> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(b) if b.is_ascii_alphabetic() => {}
            _ => return Err(self.err("expected generator or idempotent")),
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric()
                || self.src[self.pos] == b'_'
                || self.src[self.pos] == b'\'')
        {
            self.pos += 1;
        }
        let mut name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        let mut inv = false;
        loop {
            if self.starts_with("^*") {
                self.pos += 2;
                name.push_str("^*");
            } else if self.starts_with("^-1") {
                self.pos += 3;
                inv = true;
                break;
            } else {
                break;
            }
        }
        if let Ok(g) = alg.gen_id(&name) {
            let l = if inv { Letter::inverse(g) } else { Letter::new(g) };
            return alg.letter(l).map(Element::from_word).map_err(|e| AlgError::Parse {
                col: start + 1,
                msg: e.to_string(),
            });
        }
        if let Some(label) = name.strip_prefix("e_") {
            if !inv {
                if let Ok(s) = alg.base().index_of(label) {
                    return Ok(alg.idem(s));
                }
            }
        }
        Err(AlgError::Parse { col: start + 1, msg: format!("unknown symbol `{name}`") })
    }

    fn term(&mut self, alg: &Algebra) -> Result<Element, AlgError> {
        let mut coef = Q::one();
        let mut acc: Option<Element> = None;
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            coef = self.number()?;
            if !self.eat(b'*') {
                return Ok(alg.one().scale(&coef));
            }
        }
        loop {
            let f = self.factor(alg)?;
            acc = Some(match acc {
                None => f,
                Some(a) => &a * &f,
            });
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(acc.unwrap().scale(&coef))
    }
}

/// Parses the output of [`render_element`] (and any sum of such products).
pub fn parse_element(alg: &Algebra, s: &str) -> Result<Element, AlgError> {
    let mut lx = Lexer { src: s.as_bytes(), pos: 0 };
    if lx.peek() == Some(b'0') {
        let save = lx.pos;
        lx.pos += 1;
        if lx.peek().is_none() {
            return Ok(Element::zero());
        }
        lx.pos = save;
    }
    let mut out = Element::zero();
    let mut sign = Q::one();
    if lx.eat(b'-') {
        sign = -sign;
    }
    loop {
        let t = lx.term(alg)?;
        out.add_scaled(&t, &sign);
        if lx.eat(b'+') {
            sign = Q::one();
        } else if lx.eat(b'-') {
            sign = -Q::one();
        } else {
            break;
        }
    }
    if lx.peek().is_some() {
        return Err(lx.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a single word such as `a*b^-1` or `e_1`.
pub fn parse_word(alg: &Algebra, s: &str) -> Result<Word, AlgError> {
    let x = parse_element(alg, s)?;
    match x.as_monomial() {
        Some((w, c)) if c.is_one() => Ok(w.clone()),
        _ => Err(AlgError::Parse { col: 1, msg: format!("`{s}` is not a single word") }),
    }
}
