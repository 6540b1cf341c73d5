//! Infinite families of (2,3)-trivial algebras.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::tables::{violated, Constraint};
use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::notation::{ParamAlgebra, Term};
use crate::scalars::{int, Bindings, CoeffExpr, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `r_n`: a single Jordan block with eigenvalue one.
    R,
    /// `r_{n(k−1),λ}`: Jordan blocks `J(k−1,1) ⊕ J(n−k,λ)`.
    RJordan,
    /// `r_{n,λ(k)}`: `diag(1,λ₁,…,λ_{k−1}) ⊕ J(n−k−1,λ_k)`.
    RDiag,
    /// `d_{n,λ(n−3)}`, extending `(0^{n−2},21)`.
    D,
    F1,
    F2,
    F3,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::R, Family::RJordan, Family::RDiag, Family::D, Family::F1, Family::F2, Family::F3];

    pub fn name(&self) -> &'static str {
        match self {
            Family::R => "r_n",
            Family::RJordan => "r_{n(k-1),l}",
            Family::RDiag => "r_{n,l(k)}",
            Family::D => "d_{n,l(n-3)}",
            Family::F1 => "f1",
            Family::F2 => "f2",
            Family::F3 => "f3",
        }
    }

    /// Whether the family takes the block size `k`.
    pub fn uses_k(&self) -> bool {
        matches!(self, Family::RJordan | Family::RDiag)
    }

    /// Smallest dimension, given `k` where relevant.
    pub fn min_dim(&self, k: usize) -> usize {
        match self {
            Family::R => 3,
            Family::RJordan => k + 1,
            Family::RDiag => k + 3,
            Family::D | Family::F1 | Family::F2 => 4,
            Family::F3 => 5,
        }
    }

    fn check_size(&self, n: usize, k: Option<usize>) -> Result<usize> {
        let bad = |m: String| Err(Error::InvalidFamilySize(m));
        let k = match (self.uses_k(), k) {
            (true, None) => return bad(format!("{} needs k", self.name())),
            (true, Some(k)) => k,
            (false, _) => 0,
        };
        if *self == Family::RJordan && k < 3 {
            return bad(format!("{} needs k > 2, got {k}", self.name()));
        }
        if *self == Family::RDiag && k < 1 {
            return bad(format!("{} needs k ≥ 1", self.name()));
        }
        if n < self.min_dim(k) {
            return bad(format!("{} needs n ≥ {}, got {n}", self.name(), self.min_dim(k)));
        }
        if *self == Family::F3 && n.is_multiple_of(2) {
            return bad(format!("f3 needs odd n, got {n}"));
        }
        Ok(k)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('λ', "l");
        Ok(match key.as_str() {
            "r" | "r_n" => Family::R,
            "r-jordan" | "r_{n(k-1),l}" | "r_nk" => Family::RJordan,
            "r-diag" | "r_{n,l(k)}" | "r_nlk" => Family::RDiag,
            "d" | "d_{n,l(n-3)}" | "d_n" => Family::D,
            "f1" | "f1_n" => Family::F1,
            "f2" | "f2_n" => Family::F2,
            "f3" | "f3_n" => Family::F3,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family member with symbolic parameters and its admissibility conditions.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub family: Family,
    pub n: usize,
    pub k: Option<usize>,
    pub algebra: ParamAlgebra,
    pub constraints: Vec<Constraint>,
    /// Parameter names in order.
    pub params: Vec<String>,
    /// The nilpotent derived algebra's positive grading, for the `f` families.
    pub derived_grading: Option<Vec<u32>>,
}

fn t(i: usize, j: usize, c: CoeffExpr) -> Term {
    (i, j, c)
}

fn one() -> CoeffExpr {
    CoeffExpr::one()
}

fn lit(v: i64) -> CoeffExpr {
    CoeffExpr::lit(int(v))
}

fn lam(i: usize) -> String {
    format!("l{i}")
}

fn nonzero(label: String, exprs: Vec<CoeffExpr>) -> Constraint {
    Constraint { label, exprs }
}

/// Builds the symbolic member of `family` in dimension `n`.
pub fn family_member(family: Family, n: usize, k: Option<usize>) -> Result<FamilyMember> {
    let k = family.check_size(n, k)?;
    let p = |s: &str| CoeffExpr::param(s.to_string());
    let mut e: Vec<Vec<Term>> = vec![Vec::new(); n];
    let mut constraints = Vec::new();
    let mut params = Vec::new();
    let mut derived_grading = None;
    match family {
        Family::R => {
            for m in 2..n {
                e[m - 1] = vec![t(m, 1, one()), t(m + 1, 1, one())];
            }
            e[n - 1] = vec![t(n, 1, one())];
        }
        Family::RJordan => {
            for m in 2..k {
                e[m - 1] = vec![t(m, 1, one()), t(m + 1, 1, one())];
            }
            e[k - 1] = vec![t(k, 1, one())];
            for m in k + 1..n {
                e[m - 1] = vec![t(m, 1, p("l")), t(m + 1, 1, one())];
            }
            e[n - 1] = vec![t(n, 1, p("l"))];
            params.push("l".to_string());
            constraints.push(Constraint::parse("l != 0, -1, -2, -1/2")?);
        }
        Family::RDiag => {
            e[1] = vec![t(2, 1, one())];
            for i in 1..k {
                e[i + 1] = vec![t(i + 2, 1, p(&lam(i)))];
            }
            for m in k + 2..n {
                e[m - 1] = vec![t(m, 1, p(&lam(k))), t(m + 1, 1, one())];
            }
            e[n - 1] = vec![t(n, 1, p(&lam(k)))];
            params = (1..=k).map(lam).collect();
            constraints = r_diag_constraints(k);
        }
        Family::D => {
            e[1] = vec![t(2, 1, one())];
            for m in 3..n {
                e[m - 1] = vec![t(m, 1, p(&lam(m - 2)))];
            }
            e[n - 1] = vec![t(n, 1, one() + p("l1")), t(3, 2, one())];
            params = (1..=n - 3).map(lam).collect();
            constraints = d_constraints(n - 3);
        }
        Family::F1 => {
            e[1] = vec![t(2, 1, one())];
            e[2] = vec![t(3, 1, one())];
            for m in 4..=n {
                e[m - 1] = vec![t(m, 1, lit(m as i64 - 2)), t(m - 1, 2, one())];
            }
            derived_grading = Some((1..=n as u32 - 1).map(|i| i.saturating_sub(1).max(1)).collect());
        }
        Family::F2 => {
            e[1] = vec![t(2, 1, one())];
            e[2] = vec![t(3, 1, lit(2))];
            for m in 4..=n {
                let mut terms = vec![t(m, 1, lit(m as i64 - 1)), t(m - 1, 2, one())];
                if m >= 6 {
                    terms.push(t(m - 2, 3, one()));
                }
                e[m - 1] = terms;
            }
            derived_grading = Some((1..n as u32).collect());
        }
        Family::F3 => {
            e[1] = vec![t(2, 1, one())];
            e[2] = vec![t(3, 1, one())];
            for m in 4..n {
                e[m - 1] = vec![t(m, 1, lit(m as i64 - 2)), t(m - 1, 2, one())];
            }
            let half = (n - 1) / 2;
            let mut last = vec![t(n, 1, lit(n as i64 - 2)), t(n - 1, 2, one())];
            for j in 2..=half {
                let sign = if j % 2 == 0 { -1 } else { 1 };
                last.push(t(n + 1 - j, j + 1, lit(sign)));
            }
            e[n - 1] = last;
            derived_grading = Some((1..=n as u32 - 1).map(|i| i.saturating_sub(1).max(1)).collect());
        }
    }
    Ok(FamilyMember {
        family,
        n,
        k: family.uses_k().then_some(k),
        algebra: ParamAlgebra::new(e)?,
        constraints,
        params,
        derived_grading,
    })
}

fn r_diag_constraints(k: usize) -> Vec<Constraint> {
    let l = |i: usize| CoeffExpr::param(lam(i));
    let mut out = Vec::new();
    for i in 1..=k {
        out.push(nonzero(format!("{0} != 0, -1", lam(i)), vec![l(i), one() + l(i)]));
        out.push(nonzero(format!("{} + 2*{} != 0", lam(i), lam(k)), vec![l(i) + lit(2) * l(k)]));
    }
    out.push(nonzero(format!("1 + 2*{} != 0", lam(k)), vec![one() + lit(2) * l(k)]));
    for (i, j) in (1..=k).tuple_combinations() {
        out.push(nonzero(format!("{0}+{1} != 0, -1", lam(i), lam(j)), vec![l(i) + l(j), one() + l(i) + l(j)]));
    }
    for (i, j, m) in (1..=k).tuple_combinations() {
        out.push(nonzero(format!("{}+{}+{} != 0", lam(i), lam(j), lam(m)), vec![l(i) + l(j) + l(m)]));
    }
    out
}

fn d_constraints(m: usize) -> Vec<Constraint> {
    let l = |i: usize| CoeffExpr::param(lam(i));
    let half = CoeffExpr::lit(Rational::new(1.into(), 2.into()));
    let mut out = Vec::new();
    for i in 1..=m {
        out.push(nonzero(format!("{} != 0, -1", lam(i)), vec![l(i), one() + l(i)]));
    }
    out.push(nonzero("l1 != -2, -1/2".into(), vec![l(1) + lit(2), l(1) + half.clone()]));
    for i in 2..=m {
        out.push(nonzero(
            format!("l1 != -{0}, -1/2*(1+{0}), -2-{0}", lam(i)),
            vec![l(1) + l(i), l(1) + half.clone() * (one() + l(i)), l(1) + lit(2) + l(i)],
        ));
    }
    for (i, j) in (2..=m).tuple_combinations() {
        out.push(nonzero(
            format!("l1 != -{0}-{1}; {0}+{1}, 1+{0}+{1} != 0", lam(i), lam(j)),
            vec![l(1) + l(i) + l(j), l(i) + l(j), one() + l(i) + l(j)],
        ));
    }
    for (i, j, h) in (2..=m).tuple_combinations() {
        out.push(nonzero(format!("{}+{}+{} != 0", lam(i), lam(j), lam(h)), vec![l(i) + l(j) + l(h)]));
    }
    out
}

impl FamilyMember {
    /// Binds the parameters, rejecting values that break a printed condition.
    pub fn bind(&self, b: &Bindings) -> Result<LieAlgebra<Rational>> {
        if let Some(c) = violated(&self.constraints, b)? {
            return Err(Error::ConstraintViolation(c.label.clone()));
        }
        self.algebra.bind(b)
    }

    pub fn admissible(&self, b: &Bindings) -> Result<bool> {
        Ok(violated(&self.constraints, b)?.is_none())
    }
}

/// `family(name, n, params)`: the member with the given parameter values.
pub fn family(family: Family, n: usize, k: Option<usize>, b: &Bindings) -> Result<LieAlgebra<Rational>> {
    family_member(family, n, k)?.bind(b)
}
