//! Built-in algebras: su(3) and sp(2) from matrices, su(2)⊕su(2), g₂ from a
//! data file, the hypercomplex structure on su(3) and the nearly Kähler orbit
//! data.

pub mod display;
pub mod hkt;
pub mod nk;

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;
use crate::report::{Check, Report, Status};
use crate::scalars::{int, GaussRational, Rational};

pub use display::{parse_named, render, term_diff};

/// Environment variable naming the g₂ structure-constant file.
pub const G2_ENV: &str = "LIEKERNEL_G2_DATA";

/// Named complex matrices, one per basis vector.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub names: Vec<String>,
    pub matrices: Vec<Matrix<GaussRational>>,
}

impl MatrixRep {
    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    fn real_coords(m: &Matrix<GaussRational>) -> Vec<Rational> {
        let entries: Vec<&GaussRational> = (0..m.rows()).flat_map(|i| m.row(i).iter()).collect();
        entries.iter().map(|z| z.a().clone()).chain(entries.iter().map(|z| z.b().clone())).collect()
    }

    /// Structure equations from commutators: `de^k = −Σ c^k_ij e^i∧e^j`.
    pub fn algebra(&self) -> Result<LieAlgebra<Rational>> {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = self.matrices.iter().map(Self::real_coords).collect();
        let m = Matrix::from_columns(cols[0].len(), &cols);
        let mut diff = vec![KForm::zero(n, 2); n];
        for i in 0..n {
            for j in i + 1..n {
                let x = &self.matrices[i];
                let y = &self.matrices[j];
                let c = x.mul(y)?.sub(&y.mul(x)?);
                let coords = m.solve(&Self::real_coords(&c)).ok_or_else(|| {
                    Error::InvariantFailure(format!("[{}, {}] leaves the span", self.names[i], self.names[j]))
                })?;
                for (k, ck) in coords.into_iter().enumerate() {
                    if ck != int(0) {
                        diff[k] = diff[k].add(&KForm::monomial(n, &[i, j], -ck)?)?;
                    }
                }
            }
        }
        Ok(LieAlgebra::new(diff)?.with_names(self.names.clone()))
    }

    /// `(X, Y) ↦ −Re tr(XY)`.
    pub fn trace_form(&self) -> Matrix<Rational> {
        let n = self.dim();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let p = self.matrices[i].mul(&self.matrices[j]).expect("square");
                g[(i, j)] = -p.trace().a().clone();
            }
        }
        g
    }
}

fn elementary(size: usize, p: usize, q: usize) -> Matrix<GaussRational> {
    let mut m = Matrix::zeros(size, size);
    m[(p - 1, q - 1)] = GaussRational::rational(int(1));
    m
}

fn i_unit() -> GaussRational {
    GaussRational::root()
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub const SU3_NAMES: [&str; 8] = ["a1", "a2", "b12", "b13", "b23", "c12", "c13", "c23"];

/// The printed structure equations of su(3), in basis order.
pub const SU3_PRINTED: [&str; 8] = [
    "-2b12c12 - 2b13c13",
    "-2b13c13 - 2b23c23",
    "(2a1 - a2)c12 + b13b23 + c13c23",
    "(a1 + a2)c13 - b12b23 + c12c23",
    "(-a1 + 2a2)c23 + b12b13 + c12c13",
    "(-2a1 + a2)b12 - b13c23 - b23c13",
    "(-a1 - a2)b13 - b12c23 + b23c12",
    "(a1 - 2a2)b23 + b12c13 + b13c12",
];

/// `g = 2a1² − a1a2 + 2(a2² + …)` with `a·b = a⊗b + b⊗a`.
pub fn su3_printed_metric() -> Matrix<Rational> {
    let mut g = Matrix::diagonal(&vec![int(2); 8]);
    g[(0, 1)] = int(-1);
    g[(1, 0)] = int(-1);
    g
}

pub fn su3_matrices() -> MatrixRep {
    let e = |p, q| elementary(3, p, q);
    let i = i_unit();
    let mut mats = vec![e(1, 1).sub(&e(2, 2)).scale(&i), e(2, 2).sub(&e(3, 3)).scale(&i)];
    let pairs = [(1, 2), (1, 3), (2, 3)];
    for &(p, q) in &pairs {
        mats.push(e(p, q).sub(&e(q, p)));
    }
    for &(p, q) in &pairs {
        mats.push(e(p, q).add(&e(q, p)).scale(&i));
    }
    MatrixRep { names: names(&SU3_NAMES), matrices: mats }
}

/// su(3) from its matrices, checked against the printed equations.
pub fn build_su3() -> Result<(LieAlgebra<Rational>, MatrixRep)> {
    let rep = su3_matrices();
    let g = rep.algebra()?;
    check_printed(&g, &SU3_PRINTED.iter().enumerate().map(|(k, s)| (k, *s)).collect::<Vec<_>>())?;
    Ok((g, rep))
}

fn check_printed(g: &LieAlgebra<Rational>, printed: &[(usize, &str)]) -> Result<()> {
    for &(k, text) in printed {
        let p = parse_named::<Rational>(text, g.names(), 2, None)?;
        if &p != g.diff(k) {
            return Err(Error::InvariantFailure(format!(
                "d{} = {} but the printed form is {}",
                g.names()[k],
                render(g.diff(k), g.names()),
                text
            )));
        }
    }
    Ok(())
}

pub const SP2_NAMES: [&str; 10] = ["a1", "a2", "q", "r", "b11", "b12", "b22", "c11", "c12", "c22"];

/// The six printed structure equations of sp(2).
pub const SP2_PRINTED: [(&str, &str); 6] = [
    ("a1", "-2(4b11c11 + b12c12 + qr)"),
    ("b11", "2a1c11 + b12q - c12r"),
    ("b12", "(a1 + a2)c12 + 2(-b11 + b22)q - 2(c11 + c22)r"),
    ("c12", "-(a1 + a2)b12 + 2(b11 + b22)r + 2(-c11 + c22)q"),
    ("q", "(a1 - a2)r + 2(b11 - b22)b12 + 2(c11 - c22)c12"),
    ("r", "(-a1 + a2)q + 2(c11 + c22)b12 - 2(b11 + b22)c12"),
];

pub fn sp2_matrices() -> MatrixRep {
    let e = |p, q| elementary(4, p, q);
    let i = i_unit();
    let mut mats = vec![
        e(1, 1).sub(&e(3, 3)).scale(&i),
        e(2, 2).sub(&e(4, 4)).scale(&i),
        e(1, 2).sub(&e(2, 1)).add(&e(3, 4)).sub(&e(4, 3)),
        e(1, 2).add(&e(2, 1)).sub(&e(3, 4)).sub(&e(4, 3)).scale(&i),
    ];
    let kl = [(1, 1), (1, 2), (2, 2)];
    for &(k, l) in &kl {
        mats.push(e(k, 2 + l).add(&e(l, 2 + k)).sub(&e(2 + k, l)).sub(&e(2 + l, k)));
    }
    for &(k, l) in &kl {
        mats.push(e(k, 2 + l).add(&e(l, 2 + k)).add(&e(2 + k, l)).add(&e(2 + l, k)).scale(&i));
    }
    MatrixRep { names: names(&SP2_NAMES), matrices: mats }
}

pub fn build_sp2() -> Result<LieAlgebra<Rational>> {
    let g = sp2_matrices().algebra()?;
    let printed: Vec<(usize, &str)> =
        SP2_PRINTED.iter().map(|(n, s)| (g.index_of(n).expect("known name"), *s)).collect();
    check_printed(&g, &printed)?;
    Ok(g)
}

/// su(2)⊕su(2) with `de_i = e_{i+1}e_{i+2}` and `df_i = f_{i+1}f_{i+2}`.
pub fn build_su2su2() -> LieAlgebra<Rational> {
    let mut entries = vec![Vec::new(); 6];
    for block in [0, 3] {
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            entries[block + i].push((block + j + 1, block + k + 1, int(1)));
        }
    }
    LieAlgebra::from_terms(6, &entries)
        .expect("su(2)⊕su(2) satisfies Jacobi")
        .with_names(names(&["e1", "e2", "e3", "f1", "f2", "f3"]))
}

/// The six printed structure equations of g₂.
pub const G2_PRINTED: [(&str, &str); 6] = [
    ("b1", "(2a1 - a2)c1 + b3b2 + c3c2 + 2(b4b3 + c4c3) + b4b5 + c4c5"),
    ("c1", "(-2a1 + a2)b1 + c3b2 + c2b3 + 2(c4b3 + c3b4) + b4c5 + b5c4"),
    ("b3", "(-a1 + a2)c3 + b2b1 + c1c2 + 2(b1b4 + c1c4) + b4b6 + c4c6"),
    ("c3", "(a1 - a2)b3 + c2b1 + b2c1 + b4c6 + 2(b1c4 + b4c1) + b4c6 + b6c4"),
    ("b4", "a1c4 + 2(b3b1 + c1c3) + b5b1 + c5c1 + c6c3 + b6b3"),
    ("c4", "b4a1 + 2(b1c3 + b3c1) + c5b1 + c1b5 + c6b3 + c3b6"),
];

/// The bundled g₂ file shipped with the crate sources.
pub fn bundled_g2_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("g2.json")
}

/// An explicit path, else the environment variable, else the bundled file.
pub fn g2_data_path(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(G2_ENV).map(PathBuf::from))
        .unwrap_or_else(bundled_g2_path)
}

/// Loads g₂ from a structure-constant file; the constructor checks Jacobi.
pub fn load_g2(path: &Path) -> Result<LieAlgebra<Rational>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Unavailable(format!("g2 data at {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)?;
    let g = LieAlgebra::from_json(&v)?;
    if g.dim() != 14 {
        return Err(Error::Schema("/dim".into(), format!("g2 has dimension 14, found {}", g.dim())));
    }
    for n in ["a1", "b1", "c1", "b3", "c3", "b4", "c4"] {
        if g.index_of(n).is_none() {
            return Err(Error::Schema("/basis_names".into(), format!("missing `{n}`")));
        }
    }
    Ok(g)
}

/// Compares loaded g₂ constants with the printed equations term by term.
pub fn g2_printed_report(g: &LieAlgebra<Rational>) -> Report {
    let mut r = Report::new("g2");
    for (name, text) in G2_PRINTED {
        let k = g.index_of(name).expect("checked on load");
        let id = format!("g2.d{name}");
        let anchor = format!("g2 structure equation d{name}");
        let check = match parse_named::<Rational>(text, g.names(), 2, None) {
            Ok(p) if &p == g.diff(k) => Check::new(id, anchor, Status::Pass, json!({"computed": render(&p, g.names())})),
            Ok(p) => Check::new(
                id,
                anchor,
                Status::InfoDiff,
                json!({
                    "computed": render(g.diff(k), g.names()),
                    "printed": text,
                    "terms": term_diff(g.diff(k), &p, g.names()),
                }),
            ),
            Err(e) => Check::new(id, anchor, Status::Fail, json!({"error": e.to_string()})),
        };
        r.push(check);
    }
    r
}
