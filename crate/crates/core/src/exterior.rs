//! Sparse exterior algebra over an `n`-dimensional space and its dual.
//!
//! Basis monomials are stored as bitmasks (bit `i` set means index `i`,
//! zero-based), which caps the dimension at 64. The duality pairing uses the
//! determinant convention: `⟨e^{i₁…i_k}, e_{j₁…j_k}⟩ = det(δ_{i_a j_b})`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::Field;

pub const MAX_DIM: usize = 64;

/// A set of basis indices, as a bitmask.
pub type Blade = u64;

pub fn blade_indices(b: Blade) -> Vec<usize> {
    (0..MAX_DIM).filter(|&i| b >> i & 1 == 1).collect()
}

pub fn blade_of(indices: &[usize]) -> Blade {
    indices.iter().fold(0, |acc, &i| acc | 1 << i)
}

/// Sign of `e_A ∧ e_B` relative to `e_{A∪B}` for disjoint `A`, `B`.
pub fn wedge_sign(a: Blade, b: Blade) -> i8 {
    debug_assert_eq!(a & b, 0);
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> j).count_ones();
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Marker for elements of Λ^k V.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Primal;
/// Marker for elements of Λ^k V*.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dual;

/// A homogeneous element of an exterior algebra.
pub struct ExtElem<F, S> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Blade, F>,
    side: PhantomData<S>,
}

impl<F: Clone, S> Clone for ExtElem<F, S> {
    fn clone(&self) -> Self {
        ExtElem { dim: self.dim, degree: self.degree, terms: self.terms.clone(), side: PhantomData }
    }
}

impl<F: PartialEq, S> PartialEq for ExtElem<F, S> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.degree == other.degree && self.terms == other.terms
    }
}

/// Multivectors `p = Σ X_i ∧ Y_i`.
pub type KVector<F> = ExtElem<F, Primal>;
/// Exterior forms.
pub type KForm<F> = ExtElem<F, Dual>;

impl<F: Field, S> ExtElem<F, S> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension above {MAX_DIM}");
        ExtElem { dim, degree, terms: BTreeMap::new(), side: PhantomData }
    }

    /// `c · e_{i₁}∧…∧e_{i_k}` for zero-based indices in any order.
    pub fn monomial(dim: usize, indices: &[usize], c: F) -> Result<Self> {
        let mut out = Self::zero(dim, indices.len());
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i + 1, dim });
            }
        }
        if indices.iter().duplicates().next().is_some() {
            return Ok(out);
        }
        let inversions = indices.iter().tuple_combinations().filter(|(a, b)| a > b).count();
        let c = if inversions % 2 == 0 { c } else { -c };
        out.add_term(blade_of(indices), c);
        Ok(out)
    }

    /// Degree-one element from coordinates.
    pub fn from_vector(coords: &[F]) -> Self {
        let mut out = Self::zero(coords.len(), 1);
        for (i, c) in coords.iter().enumerate() {
            out.add_term(1 << i, c.clone());
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &F)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    /// Terms in lexicographic order of their index tuples.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, F)> {
        let mut v: Vec<(Vec<usize>, F)> = self.terms.iter().map(|(b, c)| (blade_indices(*b), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn coeff(&self, b: Blade) -> F {
        self.terms.get(&b).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeff_of(&self, indices: &[usize]) -> F {
        match Self::monomial(self.dim, indices, F::one()) {
            Ok(m) => m.terms.iter().next().map_or_else(F::zero, |(b, s)| self.coeff(*b) * s.clone()),
            Err(_) => F::zero(),
        }
    }

    /// Adds `c·e_b`, dropping the entry if it cancels.
    pub fn add_term(&mut self, b: Blade, c: F) {
        debug_assert_eq!(b.count_ones() as usize, self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(x) => {
                let v = x.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&b);
                } else {
                    *x = v;
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        if !s.is_zero() {
            for (b, c) in &self.terms {
                out.terms.insert(*b, c.clone() * s.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&(-F::one())))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = x.clone() * y.clone();
                out.add_term(a | b, if wedge_sign(*a, *b) > 0 { c } else { -c });
            }
        }
        Ok(out)
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> ExtElem<G, S> {
        let mut out = ExtElem::zero(self.dim, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    /// Dense coordinates in the lexicographic basis of Λ^k.
    pub fn to_coords(&self, basis: &ExtBasis) -> Vec<F> {
        assert_eq!((basis.dim, basis.degree), (self.dim, self.degree));
        let mut v = vec![F::zero(); basis.len()];
        for (b, c) in &self.terms {
            v[basis.index(*b)] = c.clone();
        }
        v
    }

    pub fn from_coords(basis: &ExtBasis, coords: &[F]) -> Self {
        let mut out = Self::zero(basis.dim, basis.degree);
        for (i, c) in coords.iter().enumerate() {
            out.add_term(basis.blades[i], c.clone());
        }
        out
    }

    /// Reinterprets the coefficients on the other side of the duality,
    /// using the basis and its dual basis.
    pub fn transpose_side<T>(&self) -> ExtElem<F, T> {
        ExtElem { dim: self.dim, degree: self.degree, terms: self.terms.clone(), side: PhantomData }
    }

    /// Pushes the element through a linear map of the base space
    /// (`f(e_j) = Σ_i m[i][j] e_i`), i.e. applies Λ^k f.
    pub fn apply_endo(&self, f: &Matrix<F>) -> Self {
        let images: Vec<Self> = (0..self.dim).map(|j| Self::from_vector(&f.column(j))).collect();
        let mut out = Self::zero(self.dim, self.degree);
        for (b, c) in &self.terms {
            let mut acc = ExtElem::<F, S>::zero(self.dim, 0);
            acc.add_term(0, c.clone());
            for i in blade_indices(*b) {
                acc = acc.wedge(&images[i]).expect("same dimension");
            }
            out = out.add(&acc).expect("same shape");
        }
        out
    }

    /// Extends a linear map of the base space as a derivation:
    /// `D(v₁∧…∧v_k) = Σ v₁∧…∧D v_a∧…∧v_k`.
    pub fn apply_derivation(&self, f: &Matrix<F>) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (b, c) in &self.terms {
            let idx = blade_indices(*b);
            for (pos, &i) in idx.iter().enumerate() {
                for r in 0..self.dim {
                    let m = &f[(r, i)];
                    if m.is_zero() {
                        continue;
                    }
                    if r != i && b >> r & 1 == 1 {
                        continue;
                    }
                    let mut new_idx = idx.clone();
                    new_idx[pos] = r;
                    let mono = Self::monomial(self.dim, &new_idx, c.clone() * m.clone()).expect("indices in range");
                    for (nb, nc) in mono.terms {
                        out.add_term(nb, nc);
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self, scalar: impl Fn(&F) -> Value) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(idx, c)| json!({"idx": idx.iter().map(|i| i + 1).collect::<Vec<_>>(), "coeff": scalar(&c)}))
            .collect();
        json!({"degree": self.degree, "terms": terms})
    }

    pub fn from_json(dim: usize, v: &Value, scalar: impl Fn(&Value) -> Result<F>) -> Result<Self> {
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Schema("/degree".into(), "expected natural number".into()))? as usize;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("/terms".into(), "expected array".into()))?;
        let mut out = Self::zero(dim, degree);
        for (t, term) in terms.iter().enumerate() {
            let idx = term
                .get("idx")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Schema(format!("/terms/{t}/idx"), "expected array".into()))?;
            let idx: Vec<usize> = idx
                .iter()
                .map(|x| x.as_u64().filter(|&i| i >= 1).map(|i| i as usize - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Schema(format!("/terms/{t}/idx"), "expected 1-based indices".into()))?;
            if idx.len() != degree {
                return Err(Error::Schema(format!("/terms/{t}/idx"), "index count differs from degree".into()));
            }
            let c = scalar(term.get("coeff").unwrap_or(&Value::Null))?;
            out = out.add(&Self::monomial(dim, &idx, c)?)?;
        }
        Ok(out)
    }
}

impl<F: Field> KForm<F> {
    /// The determinant pairing `⟨φ, v⟩`.
    pub fn pair(&self, v: &KVector<F>) -> Result<F> {
        if self.dim != v.dim {
            return Err(Error::DimensionMismatch(self.dim, v.dim));
        }
        if self.degree != v.degree {
            return Err(Error::DegreeMismatch(self.degree, v.degree));
        }
        Ok(self
            .terms
            .iter()
            .filter_map(|(b, c)| v.terms.get(b).map(|d| c.clone() * d.clone()))
            .fold(F::zero(), |a, b| a + b))
    }

    /// Evaluation on vectors: `φ(v₁,…,v_k) = ⟨φ, v₁∧…∧v_k⟩`.
    pub fn eval(&self, vectors: &[Vec<F>]) -> Result<F> {
        let mut acc = KVector::zero(self.dim, 0);
        acc.add_term(0, F::one());
        for v in vectors {
            acc = acc.wedge(&KVector::from_vector(v))?;
        }
        self.pair(&acc)
    }

    /// Pullback along a linear map: `(f*φ)(v₁,…) = φ(f v₁,…)`.
    pub fn pullback(&self, f: &Matrix<F>) -> Self {
        self.apply_endo(&f.transpose())
    }
}

impl<F: Field> KVector<F> {
    /// Interior product `p ⌟ c`, characterised by `⟨p⌟c, v⟩ = ⟨c, p∧v⟩`.
    pub fn contract(&self, c: &KForm<F>) -> Result<KForm<F>> {
        if self.dim != c.dim {
            return Err(Error::DimensionMismatch(self.dim, c.dim));
        }
        if self.degree > c.degree {
            return Err(Error::DegreeMismatch(self.degree, c.degree));
        }
        let mut out = KForm::zero(self.dim, c.degree - self.degree);
        for (p, x) in &self.terms {
            for (q, y) in &c.terms {
                if p & q != *p {
                    continue;
                }
                let rest = q & !p;
                let v = x.clone() * y.clone();
                out.add_term(rest, if wedge_sign(*p, rest) > 0 { v } else { -v });
            }
        }
        Ok(out)
    }
}

impl<F: Field, S> fmt::Debug for ExtElem<F, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field, S> fmt::Display for ExtElem<F, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(idx, c)| format!("({c})e{}", idx.iter().map(|i| (i + 1).to_string()).join("_")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The lexicographically ordered basis of Λ^k of an `n`-dimensional space.
#[derive(Clone, Debug)]
pub struct ExtBasis {
    dim: usize,
    degree: usize,
    blades: Vec<Blade>,
    index: HashMap<Blade, usize>,
}

impl ExtBasis {
    pub fn new(dim: usize, degree: usize) -> Self {
        let blades: Vec<Blade> = if degree > dim {
            vec![]
        } else {
            (0..dim).combinations(degree).map(|c| blade_of(&c)).collect()
        };
        let index = blades.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        ExtBasis { dim, degree, blades, index }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.blades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blades.is_empty()
    }

    pub fn blades(&self) -> &[Blade] {
        &self.blades
    }

    pub fn index(&self, b: Blade) -> usize {
        self.index[&b]
    }
}

/// Matrix of Λ^k f on the lexicographic basis of Λ^k.
pub fn induced_endo<F: Field>(f: &Matrix<F>, k: usize) -> Matrix<F> {
    let n = f.rows();
    let basis = ExtBasis::new(n, k);
    let cols: Vec<Vec<F>> = basis
        .blades()
        .iter()
        .map(|&b| {
            let mut e = KVector::zero(n, k);
            e.add_term(b, F::one());
            e.apply_endo(f).to_coords(&basis)
        })
        .collect();
    Matrix::from_columns(basis.len(), &cols)
}

/// Matrix of the derivation extension of `f` on Λ^k.
pub fn induced_derivation<F: Field>(f: &Matrix<F>, k: usize) -> Matrix<F> {
    let n = f.rows();
    let basis = ExtBasis::new(n, k);
    let cols: Vec<Vec<F>> = basis
        .blades()
        .iter()
        .map(|&b| {
            let mut e = KVector::zero(n, k);
            e.add_term(b, F::one());
            e.apply_derivation(f).to_coords(&basis)
        })
        .collect();
    Matrix::from_columns(basis.len(), &cols)
}

/// Gram matrix on Λ^k induced by a bilinear form `g` on the base:
/// `G_k(u₁∧…∧u_k, v₁∧…∧v_k) = det(g(u_a, v_b))`.
pub fn induced_gram<F: Field>(g: &Matrix<F>, k: usize) -> Matrix<F> {
    let n = g.rows();
    let basis = ExtBasis::new(n, k);
    let idx: Vec<Vec<usize>> = basis.blades().iter().map(|&b| blade_indices(b)).collect();
    let mut out = Matrix::zeros(basis.len(), basis.len());
    for (i, u) in idx.iter().enumerate() {
        for (j, v) in idx.iter().enumerate() {
            let block = Matrix::from_rows(u.iter().map(|&a| v.iter().map(|&b| g[(a, b)].clone()).collect()).collect());
            out[(i, j)] = if k == 0 { F::one() } else { block.det().expect("square") };
        }
    }
    out
}
