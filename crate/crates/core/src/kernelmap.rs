//! The Lie kernel `𝒫 = ker(Λ²g → g)`, functionals on it, and the linear
//! algebra behind multi-moment maps and orbit tests.

use crate::error::{Error, Result};
use crate::exterior::{induced_derivation, induced_gram, ExtBasis, KForm, KVector};
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::scalars::Field;

/// The Lie kernel, as a subspace of `Λ²g` in lexicographic coordinates.
#[derive(Clone, Debug)]
pub struct LieKernel<F: Field> {
    space: Subspace<F>,
    basis2: ExtBasis,
}

impl<F: Field> LieKernel<F> {
    pub fn new(g: &LieAlgebra<F>) -> Self {
        let n = g.dim();
        let basis2 = ExtBasis::new(n, 2);
        let cols: Vec<Vec<F>> = basis2
            .blades()
            .iter()
            .map(|&b| {
                let i = b.trailing_zeros() as usize;
                let j = 63 - b.leading_zeros() as usize;
                g.bracket_basis(i, j)
            })
            .collect();
        let space = if cols.is_empty() {
            Subspace::zero(0)
        } else {
            Subspace::span(basis2.len(), Matrix::from_columns(n, &cols).nullspace())
        };
        LieKernel { space, basis2 }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn ext_basis(&self) -> &ExtBasis {
        &self.basis2
    }

    /// The echelon basis as bivectors.
    pub fn basis(&self) -> Vec<KVector<F>> {
        self.space.basis().iter().map(|v| KVector::from_coords(&self.basis2, v)).collect()
    }

    pub fn contains(&self, p: &KVector<F>) -> bool {
        p.degree() == 2 && self.space.contains(&p.to_coords(&self.basis2))
    }

    /// The functional `p ↦ ⟨ω, p⟩` on `𝒫`.
    pub fn restrict(&self, omega: &KForm<F>) -> PFunctional<F> {
        let evals = self.basis().iter().map(|p| omega.pair(p).expect("same shape")).collect();
        PFunctional { rep: omega.clone(), evals }
    }
}

pub fn lie_kernel<F: Field>(g: &LieAlgebra<F>) -> LieKernel<F> {
    LieKernel::new(g)
}

/// A linear functional on `𝒫`, carried by a 2-form representative.
///
/// Equality compares values on a basis of `𝒫`, so representatives differing
/// by a form that vanishes on `𝒫` are equal.
#[derive(Clone, Debug)]
pub struct PFunctional<F: Field> {
    rep: KForm<F>,
    evals: Vec<F>,
}

impl<F: Field> PFunctional<F> {
    pub fn representative(&self) -> &KForm<F> {
        &self.rep
    }

    /// Values on the echelon basis of `𝒫`.
    pub fn values(&self) -> &[F] {
        &self.evals
    }

    pub fn eval(&self, p: &KVector<F>) -> Result<F> {
        self.rep.pair(p)
    }

    pub fn is_zero(&self) -> bool {
        self.evals.iter().all(F::is_zero)
    }
}

impl<F: Field> PartialEq for PFunctional<F> {
    fn eq(&self, other: &Self) -> bool {
        self.evals == other.evals
    }
}

pub fn restrict_to_p<F: Field>(g: &LieAlgebra<F>, omega: &KForm<F>) -> PFunctional<F> {
    LieKernel::new(g).restrict(omega)
}

/// `d_𝒫 β`: the differential of any representative.
pub fn d_p<F: Field>(g: &LieAlgebra<F>, beta: &PFunctional<F>) -> KForm<F> {
    g.d(&beta.rep)
}

/// `{A : β(ad_A p) = 0 for all p ∈ 𝒫}`, with `ad_A` acting on `Λ²g` as a
/// derivation.
pub fn stabilizer<F: Field>(g: &LieAlgebra<F>, kernel: &LieKernel<F>, beta: &PFunctional<F>) -> Subspace<F> {
    let n = g.dim();
    let phi = beta.rep.to_coords(&kernel.basis2);
    // β∘ad_A on Λ², one row vector per basis element A.
    let pulled: Vec<Vec<F>> = (0..n).map(|a| induced_derivation(g.ad(a), 2).transpose().mul_vec(&phi)).collect();
    let rows: Vec<Vec<F>> = kernel
        .space
        .basis()
        .iter()
        .map(|p| pulled.iter().map(|row| crate::linalg::dot(row, p)).collect())
        .collect();
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Subspace::span(n, Matrix::from_rows(rows).nullspace())
}

/// A complement of `s` in `g`: Killing-orthogonal when the Killing form is
/// nondegenerate, otherwise spanned by standard vectors.
pub fn complement<F: Field>(g: &LieAlgebra<F>, s: &Subspace<F>) -> Vec<Vec<F>> {
    let killing = g.killing_form();
    if killing.det().is_ok_and(|d| !d.is_zero()) {
        let m = s.orthogonal_complement(&killing);
        if m.dim() + s.dim() == g.dim() && m.intersection(s).dim() == 0 {
            return m.basis().to_vec();
        }
    }
    s.echelon_complement()
}

/// Whether `Ψ = d_𝒫β` restricted to a complement `m` of the stabilizer has
/// trivial kernel there.
pub fn two_plectic_check<F: Field>(g: &LieAlgebra<F>, kernel: &LieKernel<F>, beta: &PFunctional<F>) -> bool {
    let stab = stabilizer(g, kernel, beta);
    let m = complement(g, &stab);
    if m.is_empty() || beta.is_zero() {
        return false;
    }
    let psi = d_p(g, beta);
    let rows: Vec<Vec<F>> = m
        .iter()
        .map(|v| {
            let mut row = Vec::new();
            for x in 0..m.len() {
                for y in x + 1..m.len() {
                    row.push(psi.eval(&[v.clone(), m[x].clone(), m[y].clone()]).expect("degree three"));
                }
            }
            row
        })
        .collect();
    if rows[0].is_empty() {
        return false;
    }
    Matrix::from_rows(rows).rank() == m.len()
}

/// The component of `ω` orthogonal to `d(g*)` under the metric induced on
/// `Λ²g*` by the dual of `metric`.
pub fn orthogonal_p_representative<F: Field>(
    g: &LieAlgebra<F>,
    metric: &Matrix<F>,
    omega: &KForm<F>,
) -> Result<KForm<F>> {
    let n = g.dim();
    let dual = metric.inverse().ok_or(Error::DegenerateMetric)?;
    let gram = induced_gram(&dual, 2);
    let basis2 = ExtBasis::new(n, 2);
    let exact = g.ce_differential(1).column_space();
    let w = omega.to_coords(&basis2);
    if exact.is_empty() {
        return Ok(omega.clone());
    }
    let u = Matrix::from_columns(basis2.len(), &exact);
    let gu = gram.mul(&u)?;
    let normal = u.transpose().mul(&gu)?;
    let rhs = gu.transpose().mul_vec(&w);
    let x = normal.inverse().ok_or(Error::DegenerateMetric)?.mul_vec(&rhs);
    let shift = u.mul_vec(&x);
    let out: Vec<F> = w.into_iter().zip(shift).map(|(a, b)| a - b).collect();
    Ok(KForm::from_coords(&basis2, &out))
}

/// `{A : ⟨c, p∧A⟩ = 0 for all p ∈ 𝒫}`.
pub fn multimoment_kernel<F: Field>(g: &LieAlgebra<F>, kernel: &LieKernel<F>, c: &KForm<F>) -> Result<Subspace<F>> {
    let n = g.dim();
    if c.degree() != 3 {
        return Err(Error::DegreeMismatch(c.degree(), 3));
    }
    let mut rows = Vec::new();
    for p in kernel.basis() {
        let one = p.contract(c)?;
        rows.push((0..n).map(|a| one.coeff(1 << a)).collect::<Vec<F>>());
    }
    if rows.is_empty() {
        return Ok(Subspace::full(n));
    }
    Ok(Subspace::span(n, Matrix::from_rows(rows).nullspace()))
}

/// Whether `d(p⌟c) = 0`; `p` must lie in `𝒫`.
pub fn closed_contraction_check<F: Field>(
    g: &LieAlgebra<F>,
    kernel: &LieKernel<F>,
    c: &KForm<F>,
    p: &KVector<F>,
) -> Result<bool> {
    if !kernel.contains(p) {
        return Err(Error::NotInLieKernel);
    }
    Ok(g.d(&p.contract(c)?).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::scalars::{int, Bindings, Rational};
    use proptest::prelude::*;

    type Q = Rational;

    fn alg(s: &str) -> LieAlgebra<Q> {
        parse(s).unwrap().bind(&Bindings::new()).unwrap()
    }

    fn su2su2() -> LieAlgebra<Q> {
        alg("(23,31,12,56,64,45)")
    }

    #[test]
    fn kernel_dimensions() {
        assert_eq!(LieKernel::new(&LieAlgebra::<Q>::abelian(4)).dim(), 6);
        assert_eq!(LieKernel::new(&alg("(0,0,21)")).dim(), 2);
        assert_eq!(LieKernel::new(&su2su2()).dim(), 9);
    }

    #[test]
    fn exact_forms_restrict_to_zero() {
        let g = su2su2();
        let k = LieKernel::new(&g);
        for i in 0..6 {
            assert!(k.restrict(g.diff(i)).is_zero());
        }
    }

    #[test]
    fn su2_pair_orbit() {
        let g = su2su2();
        let k = LieKernel::new(&g);
        let beta: KForm<Q> = (0..3)
            .map(|i| KForm::monomial(6, &[i, i + 3], int(1)).unwrap())
            .reduce(|a, b| a.add(&b).unwrap())
            .unwrap();
        let beta = k.restrict(&beta);
        // The diagonal su(2) rotates both factors alike and fixes β.
        let stab = stabilizer(&g, &k, &beta);
        assert_eq!(stab.dim(), 3);
        assert!(stab.contains(&[int(1), int(0), int(0), int(1), int(0), int(0)]));
        let zero = k.restrict(&KForm::zero(6, 2));
        assert!(!two_plectic_check(&g, &k, &zero));
        assert!(d_p(&g, &zero).is_zero());
    }

    #[test]
    fn multimoment_kernel_of_zero_is_everything() {
        let g = su2su2();
        let k = LieKernel::new(&g);
        assert_eq!(multimoment_kernel(&g, &k, &KForm::zero(6, 3)).unwrap().dim(), 6);
    }

    #[test]
    fn orthogonal_representative() {
        let g = su2su2();
        let metric = Matrix::<Q>::identity(6);
        let out = orthogonal_p_representative(&g, &metric, g.diff(0)).unwrap();
        assert!(out.is_zero());
        let w = KForm::monomial(6, &[0, 3], int(1)).unwrap();
        assert_eq!(orthogonal_p_representative(&g, &metric, &w).unwrap(), w);
        let singular = Matrix::diagonal(&[int(0), int(1), int(1), int(1), int(1), int(1)]);
        assert!(matches!(orthogonal_p_representative(&g, &singular, &w), Err(Error::DegenerateMetric)));
    }

    #[test]
    fn contraction_requires_kernel_element() {
        let g = alg("(0,0,21)");
        let k = LieKernel::new(&g);
        let c = KForm::monomial(3, &[0, 1, 2], int(1)).unwrap();
        let p = KVector::monomial(3, &[0, 1], int(1)).unwrap();
        assert!(matches!(closed_contraction_check(&g, &k, &c, &p), Err(Error::NotInLieKernel)));
        let ab = LieAlgebra::<Q>::abelian(3);
        let ka = LieKernel::new(&ab);
        assert!(closed_contraction_check(&ab, &ka, &c, &p).unwrap());
    }

    // Closedness of p⌟c holds for fundamental fields of a symmetry, not for
    // left-invariant ones: h₃ ⊕ ℝ is a counterexample.
    #[test]
    fn left_invariant_contraction_can_fail() {
        let g = parse("(0,0,0,12)").unwrap().bind(&Bindings::new()).unwrap();
        let k = LieKernel::new(&g);
        let c = KForm::monomial(4, &[0, 2, 3], int(1)).unwrap();
        assert!(g.d(&c).is_zero());
        let p = KVector::monomial(4, &[0, 2], int(1)).unwrap();
        assert!(!closed_contraction_check(&g, &k, &c, &p).unwrap());
        assert_eq!(g.d(&p.contract(&c).unwrap()), KForm::monomial(4, &[0, 1], int(1)).unwrap());
    }

    fn coeffs(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-3i64..=3, n)
    }

    proptest! {
        #[test]
        fn dp_ignores_exact_shifts(b in coeffs(15), a in coeffs(6)) {
            let g = su2su2();
            let basis = ExtBasis::new(6, 2);
            let beta = KForm::from_coords(&basis, &b.iter().map(|&x| int(x)).collect::<Vec<_>>());
            let alpha = KForm::from_vector(&a.iter().map(|&x| int(x)).collect::<Vec<Q>>());
            let shifted = beta.add(&g.d(&alpha)).unwrap();
            let k = LieKernel::new(&g);
            prop_assert_eq!(k.restrict(&beta), k.restrict(&shifted));
            prop_assert_eq!(d_p(&g, &k.restrict(&beta)), g.d(&shifted));
        }

        #[test]
        fn stabilizer_is_a_subalgebra(b in coeffs(15)) {
            let g = su2su2();
            let k = LieKernel::new(&g);
            let beta = k.restrict(&KForm::from_coords(&ExtBasis::new(6, 2), &b.iter().map(|&x| int(x)).collect::<Vec<_>>()));
            let s = stabilizer(&g, &k, &beta);
            for x in s.basis() {
                for y in s.basis() {
                    prop_assert!(s.contains(&g.bracket(x, y)));
                }
            }
        }
    }
}
