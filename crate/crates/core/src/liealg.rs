//! Lie algebras given by structure equations `de^k = Σ c e^i∧e^j`.
//!
//! Brackets follow `dα(X,Y) = −α([X,Y])`, so a coefficient `c` on `e^i∧e^j`
//! in `de^k` contributes `−c e_k` to `[e_i, e_j]`.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::{induced_derivation, ExtBasis, KForm};
use crate::linalg::{axpy, Matrix, Subspace};
use crate::report::{Check, Report, Status};
use crate::scalars::Field;

#[derive(Clone)]
pub struct LieAlgebra<F> {
    dim: usize,
    diff: Vec<KForm<F>>,
    /// `ad[i]` has columns `[e_i, e_j]`.
    ad: Vec<Matrix<F>>,
    names: Vec<String>,
}

/// Structural equality: same structure equations, labels ignored.
impl<F: PartialEq> PartialEq for LieAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.diff == other.diff
    }
}

/// A basis triple on which the Jacobiator is nonzero, read off from the first
/// term of a nonvanishing `d²e^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiWitness<F: Field> {
    pub target: usize,
    pub triple: (usize, usize, usize),
    pub d2: KForm<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    pub is_unimodular: bool,
}

/// An endomorphism checked against the Leibniz rule.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<F: Field> {
    matrix: Matrix<F>,
}

impl<F: Field> Derivation<F> {
    pub fn new(g: &LieAlgebra<F>, matrix: Matrix<F>) -> Result<Self> {
        g.is_derivation(&matrix)?;
        Ok(Derivation { matrix })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    /// Matrix of the pullback action on `Λ^k g*`, extended as a derivation,
    /// on the lexicographic basis. On 1-forms it is `α ↦ α∘D`.
    pub fn form_action(&self, k: usize) -> Matrix<F> {
        induced_derivation(&self.matrix.transpose(), k)
    }
}

/// Closed forms spanning a complement of the exact forms.
#[derive(Clone, Debug)]
pub struct CohomologyBasis<F: Field> {
    pub degree: usize,
    pub representatives: Vec<KForm<F>>,
    exact: Vec<Vec<F>>,
    reps: Vec<Vec<F>>,
}

impl<F: Field> CohomologyBasis<F> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Class coordinates of a closed form given as a coefficient vector.
    pub fn class_of(&self, z: &[F]) -> Option<Vec<F>> {
        if self.reps.is_empty() {
            return Some(vec![]);
        }
        let mut cols = self.exact.clone();
        cols.extend(self.reps.iter().cloned());
        let m = Matrix::from_columns(z.len(), &cols);
        m.solve(z).map(|x| x[self.exact.len()..].to_vec())
    }
}

/// Outcome of testing the structure theorem on one algebra.
#[derive(Clone, Debug)]
pub struct StructureData<F> {
    pub b2: usize,
    pub b3: usize,
    pub solvable: bool,
    pub derived_codim: usize,
    /// `(a₁, a₂, a₃)` when `g′` has codimension one.
    pub dets: Option<[F; 3]>,
}

impl<F: Field> StructureData<F> {
    pub fn is_23_trivial(&self) -> bool {
        self.b2 == 0 && self.b3 == 0
    }

    pub fn criterion(&self) -> bool {
        self.solvable && self.derived_codim == 1 && self.dets.as_ref().is_some_and(|d| d.iter().all(|x| !x.is_zero()))
    }
}

impl<F: Field> LieAlgebra<F> {
    /// Builds an algebra from `de^1, …, de^n`, rejecting it if Jacobi fails.
    pub fn new(diff: Vec<KForm<F>>) -> Result<Self> {
        let g = Self::new_unchecked(diff)?;
        if let Some(w) = g.jacobi_check() {
            let (i, j, k) = w.triple;
            return Err(Error::NotALieAlgebra(format!(
                "d²e^{} = {} (triple e{},e{},e{})",
                w.target + 1,
                w.d2,
                i + 1,
                j + 1,
                k + 1
            )));
        }
        Ok(g)
    }

    /// Builds an algebra without the Jacobi check.
    pub fn new_unchecked(diff: Vec<KForm<F>>) -> Result<Self> {
        let n = diff.len();
        for d in &diff {
            if d.dim() != n {
                return Err(Error::DimensionMismatch(d.dim(), n));
            }
            if d.degree() != 2 {
                return Err(Error::DegreeMismatch(d.degree(), 2));
            }
        }
        let ad = (0..n)
            .map(|i| {
                let mut m = Matrix::zeros(n, n);
                for (k, dk) in diff.iter().enumerate() {
                    for j in 0..n {
                        if i != j {
                            m[(k, j)] = -dk.coeff_of(&[i, j]);
                        }
                    }
                }
                m
            })
            .collect();
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        Ok(LieAlgebra { dim: n, diff, ad, names })
    }

    /// From 1-based `(i, j, c)` terms meaning `c·e^i∧e^j` in written order.
    pub fn from_terms(dim: usize, entries: &[Vec<(usize, usize, F)>]) -> Result<Self> {
        if entries.len() != dim {
            return Err(Error::DimensionMismatch(entries.len(), dim));
        }
        let mut diff = Vec::with_capacity(dim);
        for terms in entries {
            let mut d = KForm::zero(dim, 2);
            for (i, j, c) in terms {
                if *i == 0 || *i > dim || *j == 0 || *j > dim {
                    return Err(Error::IndexOutOfRange { index: (*i).max(*j), dim });
                }
                d = d.add(&KForm::monomial(dim, &[i - 1, j - 1], c.clone())?)?;
            }
            diff.push(d);
        }
        Self::new(diff)
    }

    pub fn abelian(n: usize) -> Self {
        Self::new_unchecked(vec![KForm::zero(n, 2); n]).expect("well-formed")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim);
        self.names = names;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `de^{k+1}` (zero-based `k`).
    pub fn diff(&self, k: usize) -> &KForm<F> {
        &self.diff[k]
    }

    pub fn diffs(&self) -> &[KForm<F>] {
        &self.diff
    }

    /// Matrix of `ad(e_i)`.
    pub fn ad(&self, i: usize) -> &Matrix<F> {
        &self.ad[i]
    }

    /// Matrix of `ad(x)` for a vector in coordinates.
    pub fn ad_of(&self, x: &[F]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.ad[i].scale(c));
            }
        }
        m
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.ad[i].mul_vec(y));
            }
        }
        out
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<F> {
        self.ad[i].column(j)
    }

    pub fn unit(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[i] = F::one();
        v
    }

    /// Chevalley–Eilenberg differential of a form.
    pub fn d(&self, phi: &KForm<F>) -> KForm<F> {
        let mut out = KForm::zero(self.dim, phi.degree() + 1);
        for (idx, c) in phi.sorted_terms() {
            for (a, &i) in idx.iter().enumerate() {
                let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != i).collect();
                let tail = KForm::monomial(self.dim, &rest, c.clone()).expect("in range");
                let term = self.diff[i].wedge(&tail).expect("same dimension");
                let term = if a % 2 == 0 { term } else { term.scale(&-F::one()) };
                out = out.add(&term).expect("same shape");
            }
        }
        out
    }

    /// Matrix of `d: Λ^k g* → Λ^{k+1} g*` on lexicographic bases.
    pub fn ce_differential(&self, k: usize) -> Matrix<F> {
        let src = ExtBasis::new(self.dim, k);
        let dst = ExtBasis::new(self.dim, k + 1);
        let cols: Vec<Vec<F>> = src
            .blades()
            .iter()
            .map(|&b| {
                let mut e = KForm::zero(self.dim, k);
                e.add_term(b, F::one());
                self.d(&e).to_coords(&dst)
            })
            .collect();
        if cols.is_empty() {
            return Matrix::zeros(dst.len(), 0);
        }
        Matrix::from_columns(dst.len(), &cols)
    }

    pub fn jacobi_check(&self) -> Option<JacobiWitness<F>> {
        for (k, dk) in self.diff.iter().enumerate() {
            let d2 = self.d(dk);
            if let Some((idx, _)) = d2.sorted_terms().into_iter().next() {
                return Some(JacobiWitness { target: k, triple: (idx[0], idx[1], idx[2]), d2 });
            }
        }
        None
    }

    fn rank_d(&self, k: usize) -> usize {
        if k > self.dim {
            return 0;
        }
        self.ce_differential(k).rank()
    }

    /// `b_k = dim ker d_k − rank d_{k−1}`.
    pub fn betti(&self, k: usize) -> usize {
        if k > self.dim {
            return 0;
        }
        let total = ExtBasis::new(self.dim, k).len();
        let prev = if k == 0 { 0 } else { self.rank_d(k - 1) };
        total - self.rank_d(k) - prev
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.dim).map(|k| self.rank_d(k)).collect();
        (0..=self.dim)
            .map(|k| {
                let total = ExtBasis::new(self.dim, k).len();
                total - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] }
            })
            .collect()
    }

    pub fn is_23_trivial(&self) -> bool {
        // b₂ = 0 needs ker d₂ = im d₁; share the rank of d₂.
        let r1 = self.rank_d(1);
        let r2 = self.rank_d(2);
        let n2 = ExtBasis::new(self.dim, 2).len();
        if n2 - r2 - r1 != 0 {
            return false;
        }
        let n3 = ExtBasis::new(self.dim, 3).len();
        n3 - self.rank_d(3) - r2 == 0
    }

    /// `[U, W]` for subspaces given by bases.
    pub fn bracket_span(&self, u: &[Vec<F>], w: &[Vec<F>]) -> Subspace<F> {
        let mut vs = Vec::new();
        for x in u {
            let adx = self.ad_of(x);
            for y in w {
                vs.push(adx.mul_vec(y));
            }
        }
        Subspace::span(self.dim, vs)
    }

    pub fn derived_algebra(&self) -> Subspace<F> {
        let mut vs = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                vs.push(self.bracket_basis(i, j));
            }
        }
        Subspace::span(self.dim, vs)
    }

    pub fn derived_series(&self) -> Vec<Subspace<F>> {
        let mut out = vec![Subspace::full(self.dim)];
        loop {
            let cur = out.last().expect("nonempty");
            let next = self.bracket_span(cur.basis(), cur.basis());
            if next.dim() == cur.dim() {
                return out;
            }
            let done = next.dim() == 0;
            out.push(next);
            if done {
                return out;
            }
        }
    }

    pub fn lower_central_series(&self) -> Vec<Subspace<F>> {
        let full = Subspace::<F>::full(self.dim);
        let mut out = vec![full.clone()];
        loop {
            let cur = out.last().expect("nonempty");
            let next = self.bracket_span(full.basis(), cur.basis());
            if next.dim() == cur.dim() {
                return out;
            }
            let done = next.dim() == 0;
            out.push(next);
            if done {
                return out;
            }
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.ad.iter().all(|m| m.trace().is_zero())
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(|s| s.dim() == 0)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(|s| s.dim() == 0)
    }

    pub fn classify(&self) -> Classification {
        let derived: Vec<usize> = self.derived_series().iter().map(Subspace::dim).collect();
        let lower: Vec<usize> = self.lower_central_series().iter().map(Subspace::dim).collect();
        Classification {
            is_solvable: derived.last() == Some(&0),
            is_nilpotent: lower.last() == Some(&0),
            derived_series_dims: derived,
            lower_central_dims: lower,
            is_unimodular: self.is_unimodular(),
        }
    }

    /// Checks `D[x,y] = [Dx,y] + [x,Dy]` on basis pairs; the error names the
    /// first failing pair (1-based).
    pub fn is_derivation(&self, d: &Matrix<F>) -> Result<()> {
        if d.rows() != self.dim || d.cols() != self.dim {
            return Err(Error::DimensionMismatch(d.rows(), self.dim));
        }
        let images: Vec<Vec<F>> = (0..self.dim).map(|j| d.column(j)).collect();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = d.mul_vec(&self.bracket_basis(i, j));
                let mut rhs = self.bracket(&images[i], &self.unit(j));
                axpy(&mut rhs, &F::one(), &self.bracket(&self.unit(i), &images[j]));
                if lhs != rhs {
                    return Err(Error::NotADerivation(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    /// The algebra `ℝA ⋉ k` on the basis `(A, e₁, …, e_n)` with `[A, e_i] = D e_i`.
    pub fn extend_by_derivation(&self, d: &Matrix<F>) -> Result<LieAlgebra<F>> {
        self.is_derivation(d)?;
        let n = self.dim + 1;
        let mut diff = vec![KForm::zero(n, 2)];
        for r in 0..self.dim {
            let mut f = KForm::zero(n, 2);
            for (idx, c) in self.diff[r].sorted_terms() {
                f = f.add(&KForm::monomial(n, &[idx[0] + 1, idx[1] + 1], c)?)?;
            }
            for i in 0..self.dim {
                let c = &d[(r, i)];
                if !c.is_zero() {
                    f = f.add(&KForm::monomial(n, &[0, i + 1], -c.clone())?)?;
                }
            }
            diff.push(f);
        }
        let mut names = vec!["A".to_string()];
        names.extend(self.names.iter().cloned());
        Ok(LieAlgebra::new(diff)?.with_names(names))
    }

    /// The subalgebra spanned by `basis`, expressed in that basis.
    pub fn subalgebra(&self, basis: &[Vec<F>]) -> Result<LieAlgebra<F>> {
        let m = basis.len();
        let coords = self.basis_solver(basis)?;
        let mut diff = vec![KForm::zero(m, 2); m];
        for a in 0..m {
            for b in a + 1..m {
                let br = self.bracket(&basis[a], &basis[b]);
                let c = coords(&br).ok_or(Error::NotASubalgebra)?;
                for (k, ck) in c.into_iter().enumerate() {
                    if !ck.is_zero() {
                        diff[k] = diff[k].add(&KForm::monomial(m, &[a, b], -ck)?)?;
                    }
                }
            }
        }
        LieAlgebra::new(diff)
    }

    /// Matrix of `f` restricted to an invariant subspace, in the given basis.
    pub fn restrict_endo(&self, f: &Matrix<F>, basis: &[Vec<F>]) -> Result<Matrix<F>> {
        let coords = self.basis_solver(basis)?;
        let cols: Vec<Vec<F>> = basis
            .iter()
            .map(|u| coords(&f.mul_vec(u)).ok_or_else(|| Error::InvariantFailure("subspace is not invariant".into())))
            .collect::<Result<_>>()?;
        if cols.is_empty() {
            return Ok(Matrix::zeros(0, 0));
        }
        Ok(Matrix::from_columns(basis.len(), &cols))
    }

    fn basis_solver<'a>(&self, basis: &'a [Vec<F>]) -> Result<impl Fn(&[F]) -> Option<Vec<F>> + 'a> {
        let n = self.dim;
        for u in basis {
            if u.len() != n {
                return Err(Error::DimensionMismatch(u.len(), n));
            }
        }
        let m = if basis.is_empty() { None } else { Some(Matrix::from_columns(n, basis)) };
        if let Some(m) = &m {
            if m.rank() != basis.len() {
                return Err(Error::InvariantFailure("basis vectors are dependent".into()));
            }
        }
        Ok(move |v: &[F]| match &m {
            None => v.iter().all(F::is_zero).then(Vec::new),
            Some(m) => m.solve(v),
        })
    }

    pub fn cohomology_basis(&self, i: usize) -> CohomologyBasis<F> {
        let n = ExtBasis::new(self.dim, i).len();
        self.cohomology_basis_ordered(i, &(0..n).collect::<Vec<_>>())
    }

    /// As [`cohomology_basis`](Self::cohomology_basis), but row-reducing with
    /// the coordinates of `Λ^i` taken in the given order, which changes which
    /// representatives are picked.
    pub fn cohomology_basis_ordered(&self, i: usize, order: &[usize]) -> CohomologyBasis<F> {
        let basis = ExtBasis::new(self.dim, i);
        let n = basis.len();
        assert_eq!(order.len(), n);
        let di = self.ce_differential(i);
        let permuted: Vec<Vec<F>> = order.iter().map(|&c| di.column(c)).collect();
        let closed: Vec<Vec<F>> = if permuted.is_empty() {
            vec![]
        } else {
            Matrix::from_columns(di.rows(), &permuted)
                .nullspace()
                .into_iter()
                .map(|z| {
                    let mut v = vec![F::zero(); n];
                    for (pos, &c) in order.iter().enumerate() {
                        v[c] = z[pos].clone();
                    }
                    v
                })
                .collect()
        };
        let exact: Vec<Vec<F>> = if i == 0 { vec![] } else { self.ce_differential(i - 1).column_space() };
        let mut span = Subspace::span(n, exact.clone());
        let mut reps = Vec::new();
        for z in closed {
            if !span.contains(&z) {
                span = span.sum(&Subspace::span(n, vec![z.clone()]));
                reps.push(z);
            }
        }
        let representatives = reps.iter().map(|z| KForm::from_coords(&basis, z)).collect();
        CohomologyBasis { degree: i, representatives, exact, reps }
    }

    /// Matrix of the action induced on `H^i` by the pullback of `D`.
    pub fn induced_cohomology_matrix(&self, d: &Derivation<F>, h: &CohomologyBasis<F>) -> Matrix<F> {
        let l = d.form_action(h.degree);
        let cols: Vec<Vec<F>> = h
            .reps
            .iter()
            .map(|z| h.class_of(&l.mul_vec(z)).expect("derivations preserve closed forms"))
            .collect();
        if cols.is_empty() {
            return Matrix::zeros(0, 0);
        }
        Matrix::from_columns(h.dim(), &cols)
    }

    /// Determinant of the induced action on `H^i` (the `a_i` of the extension).
    pub fn induced_cohomology_det(&self, d: &Derivation<F>, i: usize) -> F {
        let h = self.cohomology_basis(i);
        self.induced_cohomology_matrix(d, &h).det().expect("square")
    }

    /// Dimension of the classes in `H^i` killed by the induced action.
    pub fn invariant_cohomology_dim(&self, d: &Derivation<F>, i: usize) -> usize {
        let h = self.cohomology_basis(i);
        let m = self.induced_cohomology_matrix(d, &h);
        h.dim() - m.rank()
    }

    /// Solvability, codimension of `g′` and the determinants `a₁, a₂, a₃`
    /// of `ad_A` on `H^*(g′)`, for `A` a basis vector outside `g′`.
    pub fn structure_data(&self) -> StructureData<F> {
        let derived = self.derived_algebra();
        let codim = self.dim - derived.dim();
        let dets = if codim == 1 {
            let a = (0..self.dim).find(|&i| !derived.contains(&self.unit(i))).expect("codimension one");
            let basis = derived.basis().to_vec();
            let k = self.subalgebra(&basis).expect("g′ is an ideal");
            let dm = self.restrict_endo(self.ad(a), &basis).expect("g′ is an ideal");
            let d = Derivation::new(&k, dm).expect("ad restricts to a derivation");
            Some([1, 2, 3].map(|i| k.induced_cohomology_det(&d, i)))
        } else {
            None
        };
        StructureData { b2: self.betti(2), b3: self.betti(3), solvable: self.is_solvable(), derived_codim: codim, dets }
    }

    /// Checks that (2,3)-triviality agrees with the structural criterion.
    pub fn structure_theorem_check(&self) -> Report {
        let mut r = Report::new("structure-theorem");
        let anchor = "structure theorem for (2,3)-trivial algebras";
        if self.dim <= 1 {
            r.push(Check::new(
                "scope",
                anchor,
                Status::InfoDiff,
                json!({"dim": self.dim, "note": "dimension at most one: g′ = 0 and the criterion holds only vacuously"}),
            ));
        }
        let s = self.structure_data();
        let dets = s.dets.as_ref().map(|d| d.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        let witness = json!({
            "b2": s.b2, "b3": s.b3, "solvable": s.solvable,
            "derived_codim": s.derived_codim, "dets": dets,
        });
        r.push(Check::from_bool("solvable", anchor, s.solvable || !s.is_23_trivial(), witness.clone()));
        r.push(Check::from_bool("codim-one", anchor, s.derived_codim == 1 || !s.is_23_trivial(), witness.clone()));
        r.push(Check::from_bool("equivalence", anchor, s.criterion() == s.is_23_trivial() || self.dim == 0, witness));
        r
    }

    /// `B(x, y) = tr(ad x ad y)` on the basis.
    pub fn killing_form(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self.ad[i].mul(&self.ad[j]).expect("square").trace();
            }
        }
        m
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> LieAlgebra<G> {
        LieAlgebra::new_unchecked(self.diff.iter().map(|d| d.map_scalars(&f)).collect())
            .expect("same shape")
            .with_names(self.names.clone())
    }

    pub fn to_json(&self) -> Value {
        let diff: Vec<Value> = self
            .diff
            .iter()
            .map(|d| {
                Value::Array(
                    d.sorted_terms()
                        .into_iter()
                        .map(|(idx, c)| json!({"i": idx[0] + 1, "j": idx[1] + 1, "coeff": c.to_json_value()}))
                        .collect(),
                )
            })
            .collect();
        json!({"dim": self.dim, "field": F::field_tag(), "basis_names": self.names, "diff": diff})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Schema("/dim".into(), "expected natural number".into()))? as usize;
        if let Some(tag) = v.get("field") {
            check_field_tag::<F>(tag)?;
        }
        let diff = v
            .get("diff")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("/diff".into(), "expected array".into()))?;
        if diff.len() != dim {
            return Err(Error::Schema("/diff".into(), format!("expected {dim} entries, found {}", diff.len())));
        }
        let mut entries = Vec::with_capacity(dim);
        for (k, entry) in diff.iter().enumerate() {
            let terms = entry
                .as_array()
                .ok_or_else(|| Error::Schema(format!("/diff/{k}"), "expected array".into()))?;
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
                let (i, j) = (idx("i")?, idx("j")?);
                let c = F::from_json_value(term.get("coeff").unwrap_or(&Value::Null)).map_err(|e| match e {
                    Error::Schema(_, m) => Error::Schema(format!("{ptr}/coeff"), m),
                    e => e,
                })?;
                out.push((i, j, c));
            }
            entries.push(out);
        }
        let g = Self::from_terms(dim, &entries)?;
        match v.get("basis_names").and_then(Value::as_array) {
            Some(names) if names.len() == dim => {
                let names: Option<Vec<String>> = names.iter().map(|n| n.as_str().map(String::from)).collect();
                let names = names.ok_or_else(|| Error::Schema("/basis_names".into(), "expected strings".into()))?;
                Ok(g.with_names(names))
            }
            Some(_) => Err(Error::Schema("/basis_names".into(), "expected one name per basis vector".into())),
            None => Ok(g),
        }
    }
}

fn check_field_tag<F: Field>(tag: &Value) -> Result<()> {
    let ours = F::field_tag();
    if tag == &ours {
        return Ok(());
    }
    match (ours.get("d").and_then(Value::as_i64), tag.get("d").and_then(Value::as_i64)) {
        (Some(expected), Some(found)) => Err(Error::FieldMismatch { expected, found }),
        _ => Err(Error::Schema("/field".into(), format!("expected {ours}, found {tag}"))),
    }
}

impl<F: Field> fmt::Debug for LieAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}", self.dim)?;
        for (k, d) in self.diff.iter().enumerate() {
            write!(f, ", d{} = {}", self.names[k], d)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat, Rational};
    use num_traits::Signed;
    use proptest::prelude::*;

    type Q = Rational;

    fn alg(dim: usize, entries: &[&[(usize, usize, i64)]]) -> LieAlgebra<Q> {
        let e: Vec<Vec<(usize, usize, Q)>> =
            entries.iter().map(|t| t.iter().map(|&(i, j, c)| (i, j, int(c))).collect()).collect();
        LieAlgebra::from_terms(dim, &e).unwrap()
    }

    fn h3() -> LieAlgebra<Q> {
        alg(3, &[&[], &[], &[(2, 1, 1)]])
    }

    fn r3(l: Q) -> LieAlgebra<Q> {
        LieAlgebra::from_terms(3, &[vec![], vec![(2, 1, int(1))], vec![(3, 1, l)]]).unwrap()
    }

    fn diag(xs: &[Q]) -> Matrix<Q> {
        Matrix::diagonal(xs)
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn heisenberg_bracket() {
        let g = h3();
        assert_eq!(g.bracket_basis(0, 1), vec![int(0), int(0), int(1)]);
        assert_eq!(g.bracket_basis(1, 0), vec![int(0), int(0), int(-1)]);
        assert!(LieAlgebra::<Q>::abelian(3).bracket_basis(0, 1).iter().all(|x| x == &int(0)));
    }

    #[test]
    fn jacobi_witness() {
        let g = LieAlgebra::<Q>::new_unchecked(
            vec![
                KForm::zero(3, 2),
                KForm::monomial(3, &[1, 0], int(1)).unwrap(),
                KForm::monomial(3, &[2, 1], int(1)).unwrap(),
            ],
        )
        .unwrap();
        let w = g.jacobi_check().unwrap();
        assert_eq!(w.target, 2);
        assert_eq!(w.d2, KForm::monomial(3, &[2, 1, 0], int(-1)).unwrap());
        assert!(matches!(LieAlgebra::new(g.diffs().to_vec()), Err(Error::NotALieAlgebra(_))));
    }

    #[test]
    fn betti_examples() {
        assert_eq!(LieAlgebra::<Q>::abelian(4).betti(2), 6);
        let r3 = alg(3, &[&[], &[(2, 1, 1), (3, 1, 1)], &[(3, 1, 1)]]);
        assert_eq!(r3.betti_numbers(), vec![1, 1, 0, 0]);
        assert!(r3.is_23_trivial());
        assert!(self::r3(int(2)).is_23_trivial());
        assert!(!self::r3(int(-1)).is_23_trivial());
        assert!(!LieAlgebra::<Q>::abelian(5).is_23_trivial());
    }

    #[test]
    fn classification_examples() {
        let c = h3().classify();
        assert!(c.is_nilpotent && c.is_solvable && c.is_unimodular);
        assert_eq!(c.lower_central_dims, vec![3, 1, 0]);
        let c = r3(int(2)).classify();
        assert_eq!(c.derived_series_dims, vec![3, 2, 0]);
        assert!(c.is_solvable && !c.is_nilpotent && !c.is_unimodular);
        assert_eq!(r3(int(2)).ad(0).trace(), int(3));
    }

    #[test]
    fn derivation_examples() {
        let l = int(5);
        assert!(h3().is_derivation(&diag(&[int(1), l.clone(), int(1) + l])).is_ok());
        assert!(matches!(h3().is_derivation(&Matrix::identity(3)), Err(Error::NotADerivation(1, 2))));
        assert!(LieAlgebra::<Q>::abelian(3).is_derivation(&diag(&[int(1), int(7), int(-2)])).is_ok());
    }

    #[test]
    fn extension_examples() {
        let l = rat(2, 3);
        let g = LieAlgebra::<Q>::abelian(2).extend_by_derivation(&diag(&[int(1), l.clone()])).unwrap();
        assert_eq!(g, r3(l.clone()));
        let d4 = h3().extend_by_derivation(&diag(&[int(1), l.clone(), int(1) + l.clone()])).unwrap();
        // (0,21,l.31,(1+l).41+32) up to the sign of e4.
        assert_eq!(d4.diff(3).coeff_of(&[3, 0]), int(1) + l);
        assert_eq!(d4.diff(3).coeff_of(&[1, 2]).abs(), int(1));
        let ab = LieAlgebra::<Q>::abelian(2).extend_by_derivation(&Matrix::zeros(2, 2)).unwrap();
        assert_eq!(ab, LieAlgebra::abelian(3));
    }

    #[test]
    fn cohomology_examples() {
        let h = h3().cohomology_basis(2);
        assert_eq!(h.dim(), 2);
        let b = ExtBasis::new(3, 2);
        let e13 = KForm::monomial(3, &[0, 2], int(1)).unwrap().to_coords(&b);
        let e23 = KForm::monomial(3, &[1, 2], int(1)).unwrap().to_coords(&b);
        let e12 = KForm::monomial(3, &[0, 1], int(1)).unwrap().to_coords(&b);
        assert!(h.class_of(&e13).is_some() && h.class_of(&e23).is_some());
        assert_eq!(h.class_of(&e12).unwrap(), vec![int(0), int(0)]);
        let k = alg(4, &[&[], &[], &[(2, 1, 1)], &[(3, 1, 1)]]);
        assert_eq!(k.cohomology_basis(3).dim(), 2);
        assert_eq!(LieAlgebra::<Q>::abelian(3).cohomology_basis(1).dim(), 3);
    }

    #[test]
    fn induced_determinants_on_abelian() {
        let k = LieAlgebra::<Q>::abelian(3);
        let d = Derivation::new(&k, diag(&[int(1), int(2), int(3)])).unwrap();
        assert_eq!(k.induced_cohomology_det(&d, 1), int(6));
        assert_eq!(k.induced_cohomology_det(&d, 2), int(60));
        assert_eq!(k.induced_cohomology_det(&d, 3), int(6));
        assert_eq!(k.invariant_cohomology_dim(&d, 1), 0);
        let d = Derivation::new(&k, diag(&[int(1), int(2), int(-3)])).unwrap();
        assert_eq!(k.invariant_cohomology_dim(&d, 3), 1);
        let k2 = LieAlgebra::<Q>::abelian(2);
        assert_eq!(k2.invariant_cohomology_dim(&Derivation::new(&k2, Matrix::zeros(2, 2)).unwrap(), 1), 2);
        let l = int(3);
        let d = Derivation::new(&h3(), diag(&[int(1), l.clone(), int(1) + l])).unwrap();
        assert_eq!(h3().induced_cohomology_det(&d, 1), int(3));
    }

    #[test]
    fn structure_theorem_examples() {
        let g = alg(4, &[&[], &[(2, 1, 1)], &[(3, 1, 2)], &[(4, 1, 3)]]);
        let r = g.structure_theorem_check();
        assert!(r.passed());
        assert!(g.structure_data().criterion());
        let r = LieAlgebra::<Q>::abelian(1).structure_theorem_check();
        assert!(r.passed());
        assert_eq!(r.get("scope").unwrap().status, Status::InfoDiff);
    }

    #[test]
    fn json_round_trip() {
        let g = h3();
        let back = LieAlgebra::<Q>::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let bad = json!({"dim": 0, "diff": [[]]});
        assert!(matches!(LieAlgebra::<Q>::from_json(&bad), Err(Error::Schema(..))));
        let wrong_field = json!({"dim": 1, "field": {"kind": "quadratic", "d": 3}, "diff": [[]]});
        assert!(matches!(LieAlgebra::<crate::scalars::GaussRational>::from_json(&wrong_field), Err(Error::FieldMismatch { expected: -1, found: 3 })));
    }

    fn diag_algebra() -> impl Strategy<Value = (LieAlgebra<Q>, Matrix<Q>)> {
        // Triangular extensions of abelian or Heisenberg algebras with a
        // random diagonal derivation.
        (prop::bool::ANY, -3i64..=3, -3i64..=3, 1i64..=3).prop_map(|(heis, a, b, q)| {
            if heis {
                let l = rat(a, q);
                (h3(), diag(&[int(1), l.clone(), int(1) + l]))
            } else {
                (LieAlgebra::abelian(3), diag(&[int(1), rat(a, q), rat(b, q)]))
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn d_squared_vanishes_and_euler_characteristic((k, d) in diag_algebra()) {
            let g = k.extend_by_derivation(&d).unwrap();
            for j in 0..g.dim() {
                prop_assert!(g.ce_differential(j + 1).mul(&g.ce_differential(j)).unwrap().is_zero());
            }
            let b = g.betti_numbers();
            let chi: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            prop_assert_eq!(chi, 0);
        }

        #[test]
        fn pullback_commutes_with_d((k, d) in diag_algebra()) {
            let der = Derivation::new(&k, d).unwrap();
            for j in 0..k.dim() {
                let lhs = k.ce_differential(j).mul(&der.form_action(j)).unwrap();
                let rhs = der.form_action(j + 1).mul(&k.ce_differential(j)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn induced_det_is_representative_independent((k, d) in diag_algebra(), seed in 0u64..1000) {
            let der = Derivation::new(&k, d).unwrap();
            for i in 1..=3 {
                let n = ExtBasis::new(3, i).len();
                let mut order: Vec<usize> = (0..n).collect();
                order.rotate_left((seed as usize) % n.max(1));
                order.reverse();
                let a = k.induced_cohomology_matrix(&der, &k.cohomology_basis(i)).det().unwrap();
                let b = k.induced_cohomology_matrix(&der, &k.cohomology_basis_ordered(i, &order)).det().unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn abelian_betti_numbers_are_binomial() {
        for n in 0..=8 {
            let g = LieAlgebra::<Q>::abelian(n);
            for k in 0..=n {
                assert_eq!(g.betti(k), binom(n, k));
            }
        }
    }
}
