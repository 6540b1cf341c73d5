//! The tuple notation for structure equations, e.g. `(0^2,12,13,14+23)` or
//! `(0,21,l.31,(1+l).41+32)`.
//!
//! Entry `k` lists `de^k`; a pair `ij` is `e^i∧e^j` in the written order.
//! Past dimension nine pairs are written `[i,j]`. Besides the core grammar
//! the parser accepts a leading minus inside parenthesised coefficients and
//! implicit multiplication such as `2l.41`, and treats `λ` as `l` and `−` as
//! `-`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::liealg::LieAlgebra;
use crate::scalars::{format_rational, Bindings, CoeffExpr, Rational};

/// One term `c·e^i∧e^j` with 1-based indices in written order.
pub type Term = (usize, usize, CoeffExpr);

/// Structure equations with symbolic coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamAlgebra {
    dim: usize,
    entries: Vec<Vec<Term>>,
}

impl ParamAlgebra {
    pub fn new(entries: Vec<Vec<Term>>) -> Result<Self> {
        let dim = entries.len();
        for terms in &entries {
            for (i, j, _) in terms {
                for &x in [i, j] {
                    if x == 0 || x > dim {
                        return Err(Error::IndexOutOfRange { index: x, dim });
                    }
                }
            }
        }
        Ok(ParamAlgebra { dim, entries })
    }

    pub fn from_algebra(g: &LieAlgebra<Rational>) -> Self {
        let entries = g
            .diffs()
            .iter()
            .map(|d| d.sorted_terms().into_iter().map(|(idx, c)| (idx[1] + 1, idx[0] + 1, CoeffExpr::lit(-c))).collect())
            .collect();
        ParamAlgebra { dim: g.dim(), entries }.normalized()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Vec<Term>] {
        &self.entries
    }

    pub fn params(&self) -> BTreeSet<String> {
        self.entries.iter().flatten().flat_map(|(_, _, c)| c.params()).collect()
    }

    pub fn substitute(&self, subs: &BTreeMap<String, CoeffExpr>) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|t| t.iter().map(|(i, j, c)| (*i, *j, c.substitute(subs))).collect())
            .collect();
        ParamAlgebra { dim: self.dim, entries }
    }

    /// Evaluates the coefficients; the result is checked for Jacobi.
    pub fn bind(&self, b: &Bindings) -> Result<LieAlgebra<Rational>> {
        LieAlgebra::new(self.bind_forms(b)?)
    }

    /// As [`bind`](Self::bind) but without the Jacobi check.
    pub fn bind_unchecked(&self, b: &Bindings) -> Result<LieAlgebra<Rational>> {
        LieAlgebra::new_unchecked(self.bind_forms(b)?)
    }

    fn bind_forms(&self, b: &Bindings) -> Result<Vec<KForm<Rational>>> {
        self.entries
            .iter()
            .map(|terms| {
                let mut f = KForm::zero(self.dim, 2);
                for (i, j, c) in terms {
                    f = f.add(&KForm::monomial(self.dim, &[i - 1, j - 1], c.eval(b)?)?)?;
                }
                Ok(f)
            })
            .collect()
    }

    /// Pairs written larger index first with signs absorbed, like terms
    /// collected, coefficients in a canonical form, terms ordered by pair.
    pub fn normalized(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|terms| {
                let mut grouped: BTreeMap<(usize, usize), Vec<CoeffExpr>> = BTreeMap::new();
                for (i, j, c) in terms {
                    if i == j {
                        continue;
                    }
                    let (hi, lo, c) = if i > j { (*i, *j, c.clone()) } else { (*j, *i, -c.clone()) };
                    grouped.entry((lo, hi)).or_default().push(c);
                }
                grouped
                    .into_iter()
                    .filter_map(|((lo, hi), cs)| {
                        let sum = cs.into_iter().reduce(|a, b| a + b).expect("nonempty");
                        canonical(&sum).map(|c| (hi, lo, c))
                    })
                    .collect()
            })
            .collect();
        ParamAlgebra { dim: self.dim, entries }
    }

    pub fn to_json(&self) -> Value {
        let diff: Vec<Value> = self
            .entries
            .iter()
            .map(|t| Value::Array(t.iter().map(|(i, j, c)| json!({"i": i, "j": j, "coeff": c.to_string()})).collect()))
            .collect();
        json!({"dim": self.dim, "params": self.params(), "diff": diff})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Schema("/dim".into(), "expected natural number".into()))? as usize;
        let diff = v
            .get("diff")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("/diff".into(), "expected array".into()))?;
        if diff.len() != dim {
            return Err(Error::Schema("/diff".into(), format!("expected {dim} entries, found {}", diff.len())));
        }
        let mut entries = Vec::with_capacity(dim);
        for (k, e) in diff.iter().enumerate() {
            let terms = e.as_array().ok_or_else(|| Error::Schema(format!("/diff/{k}"), "expected array".into()))?;
            let mut out = Vec::new();
            for (t, term) in terms.iter().enumerate() {
                let ptr = format!("/diff/{k}/{t}");
                let idx = |key: &str| {
                    term.get(key)
                        .and_then(Value::as_u64)
                        .filter(|&i| i >= 1 && i as usize <= dim)
                        .map(|i| i as usize)
                        .ok_or_else(|| Error::Schema(format!("{ptr}/{key}"), format!("expected index in 1..{dim}")))
                };
                let coeff = match term.get("coeff") {
                    None => CoeffExpr::one(),
                    Some(Value::String(s)) => parse_coeff(s)
                        .map_err(|e| Error::Schema(format!("{ptr}/coeff"), e.to_string()))?,
                    Some(Value::Number(n)) if n.is_i64() => CoeffExpr::lit(Rational::from_integer(n.as_i64().unwrap_or_default().into())),
                    Some(_) => return Err(Error::Schema(format!("{ptr}/coeff"), "expected expression string".into())),
                };
                out.push((idx("i")?, idx("j")?, coeff));
            }
            entries.push(out);
        }
        if let Some(params) = v.get("params") {
            let declared: Option<BTreeSet<String>> =
                params.as_array().and_then(|a| a.iter().map(|p| p.as_str().map(String::from)).collect());
            let declared = declared.ok_or_else(|| Error::Schema("/params".into(), "expected array of names".into()))?;
            let out = ParamAlgebra { dim, entries };
            if !out.params().is_subset(&declared) {
                return Err(Error::Schema("/params".into(), "undeclared parameter in coefficients".into()));
            }
            return Ok(out);
        }
        Ok(ParamAlgebra { dim, entries })
    }
}

/// Canonical form of a coefficient; `None` if it is identically zero.
fn canonical(e: &CoeffExpr) -> Option<CoeffExpr> {
    let Some((c0, lin)) = e.affine_form() else {
        return Some(e.clone());
    };
    let mut parts: Vec<(Rational, Option<String>)> = Vec::new();
    if !c0.is_zero() {
        parts.push((c0, None));
    }
    parts.extend(lin.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, Some(p))));
    let mono = |c: &Rational, p: &Option<String>| match p {
        None => CoeffExpr::lit(c.clone()),
        Some(p) if c.is_one() => CoeffExpr::param(p),
        Some(p) => CoeffExpr::lit(c.clone()) * CoeffExpr::param(p),
    };
    let mut it = parts.into_iter();
    let (c, p) = it.next()?;
    let first = if c.is_negative() && p.is_some() { -mono(&-c, &p) } else { mono(&c, &p) };
    Some(it.fold(first, |acc, (c, p)| if c.is_negative() { acc - mono(&-c, &p) } else { acc + mono(&c, &p) }))
}

fn split_sign(e: &CoeffExpr) -> (bool, CoeffExpr) {
    match e {
        CoeffExpr::Lit(r) if r.is_negative() => (true, CoeffExpr::lit(-r.clone())),
        CoeffExpr::Neg(x) => (true, (**x).clone()),
        _ => (false, e.clone()),
    }
}

fn is_plain(e: &CoeffExpr) -> bool {
    matches!(e, CoeffExpr::Lit(r) if !r.is_negative()) || matches!(e, CoeffExpr::Param(_))
}

impl fmt::Display for ParamAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.dim > 9;
        let mut out: Vec<String> = Vec::new();
        let mut zeros = 0;
        let flush = |out: &mut Vec<String>, zeros: &mut usize| {
            match *zeros {
                0 => {}
                1 => out.push("0".into()),
                k => out.push(format!("0^{k}")),
            }
            *zeros = 0;
        };
        for terms in &self.entries {
            if terms.is_empty() {
                zeros += 1;
                continue;
            }
            flush(&mut out, &mut zeros);
            let mut s = String::new();
            for (n, (i, j, c)) in terms.iter().enumerate() {
                let (neg, c) = split_sign(c);
                if neg {
                    s.push('-');
                } else if n > 0 {
                    s.push('+');
                }
                if c != CoeffExpr::one() {
                    if is_plain(&c) {
                        s.push_str(&c.to_string());
                    } else {
                        s.push_str(&format!("({c})"));
                    }
                    s.push('.');
                }
                if wide {
                    s.push_str(&format!("[{i},{j}]"));
                } else {
                    s.push_str(&format!("{i}{j}"));
                }
            }
            out.push(s);
        }
        flush(&mut out, &mut zeros);
        write!(f, "({})", out.join(","))
    }
}

/// Prints a concrete algebra in normalized notation.
pub fn print_algebra(g: &LieAlgebra<Rational>) -> String {
    ParamAlgebra::from_algebra(g).to_string()
}

pub fn parse(text: &str) -> Result<ParamAlgebra> {
    let mut p = Parser::new(text);
    let raw = p.algebra()?;
    let dim: usize = raw.iter().map(|e| if let RawEntry::Zeros(k) = e { *k } else { 1 }).sum();
    let mut entries = Vec::with_capacity(dim);
    for e in raw {
        match e {
            RawEntry::Zeros(k) => entries.extend(std::iter::repeat_with(Vec::new).take(k)),
            RawEntry::Sum(terms) => {
                let mut out = Vec::with_capacity(terms.len());
                for t in terms {
                    if t.compact && dim > 9 {
                        return Err(Error::Parse {
                            pos: t.pos,
                            msg: format!("dimension {dim} needs bracketed pairs like [10,1]"),
                        });
                    }
                    for x in [t.i, t.j] {
                        if x == 0 || x > dim {
                            return Err(Error::Parse {
                                pos: t.pos,
                                msg: format!("index {x} out of range for dimension {dim}"),
                            });
                        }
                    }
                    out.push((t.i, t.j, t.coeff));
                }
                entries.push(out);
            }
        }
    }
    Ok(ParamAlgebra { dim, entries })
}

/// Parses a standalone coefficient expression such as `(1+l)` or `-1/2`.
pub fn parse_coeff(text: &str) -> Result<CoeffExpr> {
    let mut p = Parser::new(text);
    let e = p.cadd()?;
    p.expect_end()?;
    Ok(e)
}

enum RawEntry {
    Zeros(usize),
    Sum(Vec<RawTerm>),
}

struct RawTerm {
    i: usize,
    j: usize,
    coeff: CoeffExpr,
    pos: usize,
    compact: bool,
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| {
                (
                    i,
                    match c {
                        '−' | '–' => '-',
                        'λ' => 'l',
                        c => c,
                    },
                )
            })
            .collect();
        Parser { chars, at: 0, len: text.chars().count() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|x| x.1)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.at + k).map(|x| x.1)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.len, |x| x.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(d) => self.err(format!("expected `{c}`, found `{d}`")),
                None => self.err(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    fn nat(&mut self) -> Result<usize> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.at].iter().map(|x| x.1).collect();
        s.parse().or_else(|_| self.err("number too large"))
    }

    fn algebra(&mut self) -> Result<Vec<RawEntry>> {
        self.expect('(')?;
        let mut entries = vec![self.entry()?];
        while self.eat(',') {
            entries.push(self.entry()?);
        }
        if self.peek().is_some() && self.peek() != Some(')') {
            return self.err(format!("expected `,` or `)`, found `{}`", self.peek().unwrap_or(' ')));
        }
        self.expect(')')?;
        self.expect_end()?;
        Ok(entries)
    }

    fn entry(&mut self) -> Result<RawEntry> {
        if self.peek() == Some('0') && matches!(self.peek_at(1), Some(',' | ')' | '^') | None) {
            self.at += 1;
            if self.eat('^') {
                let k = self.nat()?;
                if k == 0 {
                    return self.err("zero repeat count");
                }
                return Ok(RawEntry::Zeros(k));
            }
            return Ok(RawEntry::Zeros(1));
        }
        self.sum().map(RawEntry::Sum)
    }

    fn sum(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let neg = self.eat('-');
        terms.push(self.term(neg)?);
        loop {
            if self.eat('+') {
                terms.push(self.term(false)?);
            } else if self.eat('-') {
                terms.push(self.term(true)?);
            } else {
                return Ok(terms);
            }
        }
    }

    fn term(&mut self, neg: bool) -> Result<RawTerm> {
        let start = self.at;
        // A coefficient is whatever precedes a `.`; otherwise this is a bare pair.
        let coeff = match self.coeff() {
            Ok(c) if self.peek() == Some('.') => {
                self.at += 1;
                Some(c)
            }
            Ok(_) | Err(_) => {
                self.at = start;
                None
            }
        };
        let pos = self.pos();
        let (i, j, compact) = self.pair()?;
        let coeff = coeff.unwrap_or_else(CoeffExpr::one);
        let coeff = if neg { -coeff } else { coeff };
        Ok(RawTerm { i, j, coeff, pos, compact })
    }

    fn pair(&mut self) -> Result<(usize, usize, bool)> {
        if self.eat('[') {
            let i = self.nat()?;
            self.expect(',')?;
            let j = self.nat()?;
            self.expect(']')?;
            return Ok((i, j, false));
        }
        let digit = |p: &Self, k| p.peek_at(k).filter(|c: &char| c.is_ascii_digit());
        match (digit(self, 0), digit(self, 1)) {
            (Some(a), Some(b)) => {
                if digit(self, 2).is_some() {
                    self.at += 2;
                    return self.err("pairs are two digits; use [i,j] for larger indices");
                }
                self.at += 2;
                Ok((a.to_digit(10).unwrap_or(0) as usize, b.to_digit(10).unwrap_or(0) as usize, true))
            }
            _ => match self.peek() {
                Some(c) => self.err(format!("expected an index pair, found `{c}`")),
                None => self.err("expected an index pair, found end of input"),
            },
        }
    }

    fn coeff(&mut self) -> Result<CoeffExpr> {
        self.cmul()
    }

    fn cadd(&mut self) -> Result<CoeffExpr> {
        let mut e = if self.eat('-') { -self.cmul()? } else { self.cmul()? };
        loop {
            if self.eat('+') {
                e = e + self.cmul()?;
            } else if self.eat('-') {
                e = e - self.cmul()?;
            } else {
                return Ok(e);
            }
        }
    }

    fn cmul(&mut self) -> Result<CoeffExpr> {
        let mut e = self.catom()?;
        loop {
            // Juxtaposition multiplies, as in `2l` or `2(1+l)`.
            let implicit = self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_' || c == '(');
            if self.eat('*') || implicit {
                e = e * self.catom()?;
            } else {
                return Ok(e);
            }
        }
    }

    fn catom(&mut self) -> Result<CoeffExpr> {
        match self.peek() {
            Some('(') => {
                self.at += 1;
                let e = self.cadd()?;
                if self.peek() != Some(')') {
                    return self.err("unbalanced parenthesis");
                }
                self.at += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.rational(false),
            Some('-') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => {
                self.at += 1;
                self.rational(true)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.at;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.at += 1;
                }
                Ok(CoeffExpr::param(self.chars[start..self.at].iter().map(|x| x.1).collect::<String>()))
            }
            Some(c) => self.err(format!("malformed coefficient at `{c}`")),
            None => self.err("malformed coefficient: end of input"),
        }
    }

    fn rational(&mut self, neg: bool) -> Result<CoeffExpr> {
        let p = self.nat()?;
        let q = if self.peek() == Some('/') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
            self.nat()?
        } else {
            1
        };
        if q == 0 {
            return self.err("zero denominator");
        }
        let r = Rational::new((p as i64).into(), (q as i64).into());
        Ok(CoeffExpr::lit(if neg { -r } else { r }))
    }
}

/// Renders a rational for use inside the notation.
pub fn rational_token(r: &Rational) -> String {
    format_rational(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn parse_examples() {
        let a = parse("(0,21)").unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.entries()[1], vec![(2, 1, CoeffExpr::one())]);
        let r = parse("(0,21,l.31)").unwrap();
        assert_eq!(r.params(), ["l".to_string()].into());
        let err = parse("(0,31)").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 3, .. }), "{err}");
    }

    #[test]
    fn parse_table_tokens() {
        let a = parse("(0^2,12,13,14+23,24+15)").unwrap();
        assert_eq!(a.dim(), 6);
        let d = parse("(0,21,l.31,(1+l).41+32)").unwrap();
        let g = d.bind(&Bindings::new().with("l", int(2))).unwrap();
        assert_eq!(g.diff(3).coeff_of(&[3, 0]), int(3));
        let h = parse("(0, l1.21+31, -21+l1.31, l2.41, 2l1.51+32)").unwrap();
        assert_eq!(h.params().len(), 2);
        let q = parse("(0,21,-1/2.31)").unwrap();
        assert_eq!(q.entries()[2][0].2.constant(), Some(rat(-1, 2)));
        assert!(parse("(0,λ.21)").is_ok());
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(parse("(0,21"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse("(0,(1+l.21)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("(0,x*.21)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("(0^9,21)"), Err(Error::Parse { pos: 5, .. })));
        assert!(parse("(0^9,[2,1])").is_ok());
    }

    #[test]
    fn print_examples() {
        assert_eq!(parse("(0,12)").unwrap().normalized().to_string(), "(0,-21)");
        let r5 = "(0,21+31,31+41,41+51,51)";
        assert_eq!(parse(r5).unwrap().normalized().to_string(), r5);
        assert_eq!(parse("(0,21,l.31,(1+l).41+32)").unwrap().normalized().to_string(), "(0,21,l.31,(1+l).41+32)");
        assert_eq!(parse("(0^2,12)").unwrap().normalized().to_string(), "(0^2,-21)");
        assert_eq!(parse("(0^9,[2,1])").unwrap().normalized().to_string(), "(0^9,[2,1])");
    }

    #[test]
    fn json_round_trip() {
        let h3 = parse("(0^2,21)").unwrap();
        assert_eq!(ParamAlgebra::from_json(&h3.to_json()).unwrap(), h3);
        let d4 = parse("(0,21,l.31,(1+l).41+32)").unwrap();
        let v = d4.to_json();
        assert_eq!(v["diff"][3][0]["coeff"], "1+l");
        assert_eq!(ParamAlgebra::from_json(&v).unwrap(), d4);
        let bad = json!({"dim": 0, "diff": [[{"i": 1, "j": 2}]]});
        assert!(matches!(ParamAlgebra::from_json(&bad), Err(Error::Schema(p, _)) if p == "/diff"));
        let bad = json!({"dim": 2, "diff": [[], [{"i": 3, "j": 1}]]});
        assert!(matches!(ParamAlgebra::from_json(&bad), Err(Error::Schema(p, _)) if p == "/diff/1/0/i"));
    }

    #[test]
    fn from_algebra_prints_concrete_structure() {
        let g = parse("(0,21+31,31)").unwrap().bind(&Bindings::new()).unwrap();
        assert_eq!(print_algebra(&g), "(0,21+31,31)");
    }
}
