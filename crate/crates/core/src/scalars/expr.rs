use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{format_rational, Rational};
use crate::error::{Error, Result};

/// A coefficient expression over named parameters, such as `(1+l)` or `l1*l2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffExpr {
    Lit(Rational),
    Param(String),
    Neg(Box<CoeffExpr>),
    Add(Box<CoeffExpr>, Box<CoeffExpr>),
    Sub(Box<CoeffExpr>, Box<CoeffExpr>),
    Mul(Box<CoeffExpr>, Box<CoeffExpr>),
}

/// Rational values assigned to parameter names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings(BTreeMap<String, Rational>);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: Into<String>,
    {
        Bindings(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn with(mut self, name: impl Into<String>, value: Rational) -> Self {
        self.0.insert(name.into(), value);
        self
    }

    /// Adds a binding; a name may only be bound once.
    pub fn insert(&mut self, name: impl Into<String>, value: Rational) -> Result<()> {
        let name = name.into();
        if self.0.contains_key(&name) {
            return Err(Error::DuplicateBinding(name));
        }
        self.0.insert(name, value);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={}", format_rational(v))).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl CoeffExpr {
    pub fn lit(r: Rational) -> Self {
        CoeffExpr::Lit(r)
    }

    pub fn param(name: impl Into<String>) -> Self {
        CoeffExpr::Param(name.into())
    }

    pub fn one() -> Self {
        CoeffExpr::Lit(Rational::one())
    }

    pub fn eval(&self, b: &Bindings) -> Result<Rational> {
        Ok(match self {
            CoeffExpr::Lit(r) => r.clone(),
            CoeffExpr::Param(p) => b.get(p).cloned().ok_or_else(|| Error::UnboundParameter(p.clone()))?,
            CoeffExpr::Neg(x) => -x.eval(b)?,
            CoeffExpr::Add(x, y) => x.eval(b)? + y.eval(b)?,
            CoeffExpr::Sub(x, y) => x.eval(b)? - y.eval(b)?,
            CoeffExpr::Mul(x, y) => x.eval(b)? * y.eval(b)?,
        })
    }

    /// Free parameter names.
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut BTreeSet<String>) {
        match self {
            CoeffExpr::Lit(_) => {}
            CoeffExpr::Param(p) => {
                out.insert(p.clone());
            }
            CoeffExpr::Neg(x) => x.collect_params(out),
            CoeffExpr::Add(x, y) | CoeffExpr::Sub(x, y) | CoeffExpr::Mul(x, y) => {
                x.collect_params(out);
                y.collect_params(out);
            }
        }
    }

    /// Replaces parameters by expressions.
    pub fn substitute(&self, subs: &BTreeMap<String, CoeffExpr>) -> CoeffExpr {
        let rec = |x: &CoeffExpr| Box::new(x.substitute(subs));
        match self {
            CoeffExpr::Lit(_) => self.clone(),
            CoeffExpr::Param(p) => subs.get(p).cloned().unwrap_or_else(|| self.clone()),
            CoeffExpr::Neg(x) => CoeffExpr::Neg(rec(x)),
            CoeffExpr::Add(x, y) => CoeffExpr::Add(rec(x), rec(y)),
            CoeffExpr::Sub(x, y) => CoeffExpr::Sub(rec(x), rec(y)),
            CoeffExpr::Mul(x, y) => CoeffExpr::Mul(rec(x), rec(y)),
        }
    }

    /// Evaluates when the expression has no parameters.
    pub fn constant(&self) -> Option<Rational> {
        self.eval(&Bindings::new()).ok()
    }

    /// Coefficients of an expression that is affine in its parameters:
    /// returns `(c0, {p: cp})` with value `c0 + Σ cp·p`, or `None` if the
    /// expression is not affine.
    pub fn affine_form(&self) -> Option<(Rational, BTreeMap<String, Rational>)> {
        let params: Vec<String> = self.params().into_iter().collect();
        let zero = Bindings::from_pairs(params.iter().map(|p| (p.clone(), Rational::zero())));
        let c0 = self.eval(&zero).ok()?;
        let mut lin = BTreeMap::new();
        for p in &params {
            let unit = Bindings::from_pairs(
                params.iter().map(|q| (q.clone(), if q == p { Rational::one() } else { Rational::zero() })),
            );
            lin.insert(p.clone(), self.eval(&unit).ok()? - &c0);
        }
        // Check affinity at two further points.
        for shift in [2i64, -3] {
            let pt = Bindings::from_pairs(
                params
                    .iter()
                    .enumerate()
                    .map(|(k, q)| (q.clone(), Rational::from_integer((shift * (k as i64 + 1) + 1).into()))),
            );
            let expect = params.iter().fold(c0.clone(), |acc, q| acc + &lin[q] * pt.get(q).unwrap());
            if self.eval(&pt).ok()? != expect {
                return None;
            }
        }
        Some((c0, lin))
    }

    fn is_atom(&self) -> bool {
        match self {
            CoeffExpr::Lit(r) => !r.is_negative() && r.denom().is_one(),
            CoeffExpr::Param(_) => true,
            _ => false,
        }
    }
}

impl fmt::Display for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffExpr::Lit(r) => write!(f, "{}", format_rational(r)),
            CoeffExpr::Param(p) => write!(f, "{p}"),
            CoeffExpr::Neg(x) => {
                if x.is_atom() || matches!(**x, CoeffExpr::Mul(..)) {
                    write!(f, "-{x}")
                } else {
                    write!(f, "-({x})")
                }
            }
            CoeffExpr::Add(x, y) => {
                let rhs = y.to_string();
                if let Some(stripped) = rhs.strip_prefix('-') {
                    if matches!(**y, CoeffExpr::Neg(_) | CoeffExpr::Lit(_)) {
                        return write!(f, "{x}-{stripped}");
                    }
                }
                write!(f, "{x}+{rhs}")
            }
            CoeffExpr::Sub(x, y) => match **y {
                CoeffExpr::Add(..) | CoeffExpr::Sub(..) | CoeffExpr::Neg(_) => write!(f, "{x}-({y})"),
                CoeffExpr::Lit(ref r) if r.is_negative() => write!(f, "{x}-({y})"),
                _ => write!(f, "{x}-{y}"),
            },
            CoeffExpr::Mul(x, y) => {
                let wrap = |e: &CoeffExpr| match e {
                    CoeffExpr::Add(..) | CoeffExpr::Sub(..) | CoeffExpr::Neg(_) => format!("({e})"),
                    CoeffExpr::Lit(r) if r.is_negative() || !r.denom().is_one() => format!("({e})"),
                    _ => e.to_string(),
                };
                write!(f, "{}*{}", wrap(x), wrap(y))
            }
        }
    }
}

impl std::ops::Add for CoeffExpr {
    type Output = CoeffExpr;
    fn add(self, rhs: Self) -> Self {
        CoeffExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Sub for CoeffExpr {
    type Output = CoeffExpr;
    fn sub(self, rhs: Self) -> Self {
        CoeffExpr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Mul for CoeffExpr {
    type Output = CoeffExpr;
    fn mul(self, rhs: Self) -> Self {
        CoeffExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Neg for CoeffExpr {
    type Output = CoeffExpr;
    fn neg(self) -> Self {
        CoeffExpr::Neg(Box::new(self))
    }
}
