//! Polynomial displays in named 1-forms, e.g. `(2a1 - a2)c12 + b13b23`.
//!
//! Juxtaposition is the wedge product. Identifiers are a letter followed by
//! digits and an optional prime; `sqrt3` is a scalar. Parenthesised sums
//! distribute, so `a1(b12c12 + b13c13)` is two terms.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::{blade_indices, KForm};
use crate::scalars::{parse_rational, Field};

/// A sum of forms of possibly different degrees.
#[derive(Clone, Debug)]
struct Poly<F: Field> {
    dim: usize,
    parts: BTreeMap<usize, KForm<F>>,
}

impl<F: Field> Poly<F> {
    fn scalar(dim: usize, c: F) -> Self {
        let mut parts = BTreeMap::new();
        parts.insert(0, KForm::monomial(dim, &[], c).expect("degree zero"));
        Poly { dim, parts }
    }

    fn form(f: KForm<F>) -> Self {
        let mut parts = BTreeMap::new();
        parts.insert(f.degree(), f);
        Poly { dim: 0, parts }.with_dim()
    }

    fn with_dim(mut self) -> Self {
        self.dim = self.parts.values().next().map_or(0, KForm::dim);
        self
    }

    fn add(mut self, other: Poly<F>) -> Result<Self> {
        for (k, f) in other.parts {
            let merged = match self.parts.remove(&k) {
                Some(g) => g.add(&f)?,
                None => f,
            };
            self.parts.insert(k, merged);
        }
        Ok(self)
    }

    fn neg(mut self) -> Self {
        for f in self.parts.values_mut() {
            *f = f.scale(&-F::one());
        }
        self
    }

    fn mul(&self, other: &Poly<F>) -> Result<Self> {
        let mut out = Poly { dim: self.dim, parts: BTreeMap::new() };
        for a in self.parts.values() {
            for b in other.parts.values() {
                out = out.add(Poly::form(a.wedge(b)?))?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Sqrt3,
    Ident(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            _ if c.is_whitespace() => i += 1,
            '+' => {
                out.push((start, Tok::Plus));
                i += 1
            }
            '-' => {
                out.push((start, Tok::Minus));
                i += 1
            }
            '*' => {
                out.push((start, Tok::Star));
                i += 1
            }
            '(' => {
                out.push((start, Tok::LParen));
                i += 1
            }
            ')' => {
                out.push((start, Tok::RParen));
                i += 1
            }
            _ if c.is_ascii_digit() => {
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                out.push((start, Tok::Num(chars[start..i].iter().collect())));
            }
            _ if c.is_ascii_alphabetic() => {
                let rest: String = chars[i..].iter().take(5).collect();
                if rest == "sqrt3" {
                    out.push((start, Tok::Sqrt3));
                    i += 5;
                    continue;
                }
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '\'' {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
            }
            _ => return Err(Error::Parse { pos: start, msg: format!("unexpected `{c}`") }),
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    dim: usize,
    lookup: &'a dyn Fn(&str) -> Option<KForm<F>>,
    sqrt3: Option<F>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let pos = self.toks.get(self.pos).map_or(usize::MAX, |(p, _)| *p);
        Error::Parse { pos, msg: msg.into() }
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        let mut acc = Poly::scalar(self.dim, F::zero());
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = acc.add(if sign < 0 { t.neg() } else { t })?;
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => self.pos += 1,
                Some(Tok::Num(_) | Tok::Sqrt3 | Tok::Ident(_) | Tok::LParen) => {}
                _ => break,
            }
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<F>> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Num(s) => Ok(Poly::scalar(self.dim, F::from_rational(&parse_rational(&s)?))),
            Tok::Sqrt3 => match &self.sqrt3 {
                Some(r) => Ok(Poly::scalar(self.dim, r.clone())),
                None => {
                    self.pos -= 1;
                    Err(self.err("sqrt3 is not in the scalar field"))
                }
            },
            Tok::Ident(name) => match (self.lookup)(&name) {
                Some(f) => Ok(Poly::form(f)),
                None => {
                    self.pos -= 1;
                    Err(self.err(format!("unknown name `{name}`")))
                }
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a factor"))
            }
        }
    }
}

/// Parses a display into a homogeneous form of the given degree.
///
/// `lookup` resolves names to 1-forms; `sqrt3` is the value of `sqrt3` if
/// the field contains it.
pub fn parse_form<F: Field>(
    text: &str,
    dim: usize,
    degree: usize,
    lookup: &dyn Fn(&str) -> Option<KForm<F>>,
    sqrt3: Option<F>,
) -> Result<KForm<F>> {
    let mut p = Parser { toks: lex(text)?, pos: 0, dim, lookup, sqrt3 };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    let mut out = KForm::zero(dim, degree);
    for (k, f) in poly.parts {
        if f.is_zero() {
            continue;
        }
        if k != degree {
            return Err(Error::DegreeMismatch(k, degree));
        }
        out = f;
    }
    Ok(out)
}

/// Parses a display whose names are basis labels.
pub fn parse_named<F: Field>(text: &str, names: &[String], degree: usize, sqrt3: Option<F>) -> Result<KForm<F>> {
    let n = names.len();
    let lookup = |s: &str| names.iter().position(|m| m == s).map(|i| KForm::monomial(n, &[i], F::one()).unwrap());
    parse_form(text, n, degree, &lookup, sqrt3)
}

/// Renders a form with basis labels, e.g. `-2 b12∧c12 + a1∧c12`.
pub fn render<F: Field>(f: &KForm<F>, names: &[String]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, c) in f.sorted_terms() {
        let word = idx.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("∧");
        let neg = c.signum() == Some(-1);
        let mag = if neg { -c } else { c };
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        if mag != F::one() {
            out.push_str(&format!("({mag}) "));
        }
        out.push_str(&word);
    }
    out
}

/// Term-level differences between a computed and a printed form.
pub fn term_diff<F: Field>(computed: &KForm<F>, printed: &KForm<F>, names: &[String]) -> Value {
    let mut rows = Vec::new();
    let delta = printed.sub(computed).expect("same shape");
    for (b, _) in delta.terms() {
        let word = blade_indices(b).iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("∧");
        rows.push(json!({
            "term": word,
            "computed": computed.coeff(b).to_string(),
            "printed": printed.coeff(b).to_string(),
        }));
    }
    Value::Array(rows)
}
