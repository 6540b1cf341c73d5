//! Positive gradings of nilpotent algebras and the extensions they induce.

pub mod families;
pub mod tables;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalars::{Field, Rational};

/// Integer weights, one per basis vector, with `[k_i, k_j] ⊆ k_{i+j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Grading {
    weights: Vec<u32>,
}

impl Grading {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if let Some(p) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidGrading(format!("weight of e{} is zero", p + 1)));
        }
        Ok(Grading { weights })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    /// The weights share no common factor.
    pub fn is_primitive(&self) -> bool {
        self.weights.iter().fold(0u32, |g, &w| g.gcd(&w)) <= 1
    }

    /// Parses the compact table form, e.g. `1^223^2` for `(1,1,2,3,3)`.
    pub fn parse_compact(s: &str) -> Result<Self> {
        let bad = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let w = chars[i].to_digit(10).ok_or_else(|| bad(i, "expected a weight digit"))?;
            i += 1;
            let mut reps = 1;
            if chars.get(i) == Some(&'^') {
                reps = chars.get(i + 1).and_then(|c| c.to_digit(10)).ok_or_else(|| bad(i + 1, "expected an exponent"))?;
                i += 2;
            }
            out.extend(std::iter::repeat_n(w, reps as usize));
        }
        Grading::new(out)
    }

    /// Diagonal derivation acting by `w_i` on `e_i`.
    pub fn derivation<F: Field>(&self) -> Matrix<F> {
        Matrix::diagonal(&self.weights.iter().map(|&w| F::from_int(w as i64)).collect::<Vec<_>>())
    }
}

impl fmt::Display for Grading {
    /// Compact form when every weight is a single digit, else comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weights.iter().any(|&w| w > 9) {
            let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
            return write!(f, "({})", parts.join(","));
        }
        let mut i = 0;
        while i < self.weights.len() {
            let w = self.weights[i];
            let run = self.weights[i..].iter().take_while(|&&x| x == w).count();
            if run > 1 {
                write!(f, "{w}^{run}")?;
            } else {
                write!(f, "{w}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Every structure term is weight-homogeneous and all weights are positive.
pub fn validate_grading<F: Field>(k: &LieAlgebra<F>, w: &[u32]) -> Result<bool> {
    if w.len() != k.dim() {
        return Err(Error::DimensionMismatch(w.len(), k.dim()));
    }
    if w.contains(&0) {
        return Ok(false);
    }
    Ok(homogeneity_rows(k).iter().all(|&(i, j, t)| w[i] + w[j] == w[t]))
}

/// Triples `(i, j, k)` with `e^i∧e^j` occurring in `de^k`.
fn homogeneity_rows<F: Field>(k: &LieAlgebra<F>) -> Vec<(usize, usize, usize)> {
    let mut rows = Vec::new();
    for t in 0..k.dim() {
        for (idx, c) in k.diff(t).sorted_terms() {
            if !c.is_zero() {
                rows.push((idx[0], idx[1], t));
            }
        }
    }
    rows
}

/// Finds the positive grading of least total weight, breaking ties
/// lexicographically, or `None` when the homogeneity equations have no
/// positive solution.
pub fn find_positive_grading<F: Field>(k: &LieAlgebra<F>) -> Result<Option<Grading>> {
    if !k.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let n = k.dim();
    if n == 0 {
        return Ok(Some(Grading { weights: vec![] }));
    }
    let rows = homogeneity_rows(k);
    let eqs: Vec<Vec<Rational>> = rows
        .iter()
        .map(|&(i, j, t)| {
            let mut r = vec![Rational::zero(); n];
            r[i] += Rational::one();
            r[j] += Rational::one();
            r[t] -= Rational::one();
            r
        })
        .collect();
    // Pivot weights as linear forms in the free weights.
    let (pivots, free, pivot_forms) = if eqs.is_empty() {
        (vec![], (0..n).collect::<Vec<_>>(), vec![])
    } else {
        let (rref, pivots) = Matrix::from_rows(eqs).rref();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let forms: Vec<Vec<Rational>> =
            (0..pivots.len()).map(|r| free.iter().map(|&f| -rref[(r, f)].clone()).collect()).collect();
        (pivots, free, forms)
    };

    let nf = free.len();
    let mut ineqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for a in 0..nf {
        let mut e = vec![Rational::zero(); nf];
        e[a] = Rational::one();
        ineqs.push((e, Rational::one()));
    }
    for form in &pivot_forms {
        ineqs.push((form.clone(), Rational::one()));
    }
    if !fourier_motzkin_feasible(ineqs, nf) {
        return Ok(None);
    }

    let evaluate = |t: &[u32]| -> Option<Vec<u32>> {
        let mut w = vec![0u32; n];
        for (a, &f) in free.iter().enumerate() {
            w[f] = t[a];
        }
        for (r, &p) in pivots.iter().enumerate() {
            let v: Rational = pivot_forms[r].iter().zip(t).map(|(c, &x)| c * Rational::from_integer(x.into())).sum();
            if !v.is_integer() || v < Rational::one() {
                return None;
            }
            w[p] = v.to_integer().to_u32()?;
        }
        Some(w)
    };

    let np = pivots.len() as u64;
    let mut best: Option<(u64, Vec<u32>)> = None;
    let mut s = nf as u32;
    loop {
        if let Some((total, _)) = &best {
            if s as u64 + np > *total {
                break;
            }
        }
        for_each_composition(s, nf, &mut |t| {
            if let Some(w) = evaluate(t) {
                let total: u64 = w.iter().map(|&x| x as u64).sum();
                let better = match &best {
                    None => true,
                    Some((bt, bw)) => total < *bt || (total == *bt && w < *bw),
                };
                if better {
                    best = Some((total, w));
                }
            }
        });
        s += 1;
    }
    Ok(best.map(|(_, weights)| Grading { weights }))
}

/// Visits every way of writing `s` as an ordered sum of `parts` positive integers.
fn for_each_composition(s: u32, parts: usize, visit: &mut impl FnMut(&[u32])) {
    fn rec(rest: u32, slot: usize, buf: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
        if slot + 1 == buf.len() {
            buf[slot] = rest;
            visit(buf);
            return;
        }
        let remaining = (buf.len() - slot - 1) as u32;
        for v in 1..=rest.saturating_sub(remaining) {
            buf[slot] = v;
            rec(rest - v, slot + 1, buf, visit);
        }
    }
    if parts == 0 {
        if s == 0 {
            visit(&[]);
        }
        return;
    }
    if (s as usize) < parts {
        return;
    }
    let mut buf = vec![0; parts];
    rec(s, 0, &mut buf, visit);
}

/// Decides whether `{x : a·x ≥ b for every (a, b)}` is nonempty by exact
/// Fourier–Motzkin elimination.
pub fn fourier_motzkin_feasible(mut rows: Vec<(Vec<Rational>, Rational)>, nvars: usize) -> bool {
    for v in 0..nvars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (a, b) in rows {
            if a[v].is_positive() {
                pos.push((a, b));
            } else if a[v].is_negative() {
                neg.push((a, b));
            } else {
                rest.push((a, b));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let sp = ap[v].recip();
                let sn = -an[v].recip();
                let a: Vec<Rational> = ap.iter().zip(an).map(|(x, y)| x * &sp + y * &sn).collect();
                let b = bp * &sp + bn * &sn;
                rest.push((a, b));
            }
        }
        rest.sort();
        rest.dedup();
        rows = rest;
    }
    rows.iter().all(|(_, b)| !b.is_positive())
}

/// The extension `ℝA ⋉ k` with `[A, e_j] = w_j e_j`, basis `(A, e₁, …, e_n)`.
pub fn grading_extension<F: Field>(k: &LieAlgebra<F>, w: &[u32]) -> Result<LieAlgebra<F>> {
    if !validate_grading(k, w)? {
        return Err(Error::InvalidGrading(format!("{w:?} is not a positive grading")));
    }
    let g = Grading::new(w.to_vec())?;
    k.extend_by_derivation(&g.derivation())
}
