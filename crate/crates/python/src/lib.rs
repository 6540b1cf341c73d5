//! Python bindings. Rationals cross the boundary as strings such as "-1/3";
//! anything whose `str()` parses (ints, `fractions.Fraction`) is accepted.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use liekernel::catalog::render;
use liekernel::gradings::families::{family_member, Family};
use liekernel::gradings::tables::{table_entry as lookup, Table};
use liekernel::gradings::{find_positive_grading, grading_extension, validate_grading};
use liekernel::kernelmap::LieKernel;
use liekernel::liealg::LieAlgebra;
use liekernel::notation::{parse as parse_text, print_algebra};
use liekernel::scalars::{parse_rational, Bindings, Rational};
use liekernel::verify::{verify_paper as run_verify, Section, VerifyOptions};

fn err(e: liekernel::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bindings(params: Option<BTreeMap<String, Bound<'_, PyAny>>>) -> PyResult<Bindings> {
    let mut b = Bindings::new();
    for (name, v) in params.unwrap_or_default() {
        let r = parse_rational(v.str()?.to_str()?).map_err(err)?;
        b.insert(name, r).map_err(err)?;
    }
    Ok(b)
}

fn from_json(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

/// A Lie algebra over ℚ given by structure equations.
#[pyclass(module = "liekernel")]
struct Algebra {
    inner: LieAlgebra<Rational>,
}

#[pymethods]
impl Algebra {
    #[new]
    #[pyo3(signature = (text, params=None))]
    fn new(text: &str, params: Option<BTreeMap<String, Bound<'_, PyAny>>>) -> PyResult<Self> {
        let b = bindings(params)?;
        Ok(Algebra { inner: parse_text(text).and_then(|p| p.bind(&b)).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn betti(&self, k: usize) -> usize {
        self.inner.betti(k)
    }

    fn betti_numbers(&self) -> Vec<usize> {
        self.inner.betti_numbers()
    }

    fn is_23_trivial(&self) -> bool {
        self.inner.is_23_trivial()
    }

    fn is_solvable(&self) -> bool {
        self.inner.is_solvable()
    }

    fn is_nilpotent(&self) -> bool {
        self.inner.is_nilpotent()
    }

    fn is_unimodular(&self) -> bool {
        self.inner.is_unimodular()
    }

    /// `(a1, a2, a3)` as strings when the derived algebra has codimension one.
    fn dets(&self) -> Option<(String, String, String)> {
        self.inner.structure_data().dets.map(|[a, b, c]| (a.to_string(), b.to_string(), c.to_string()))
    }

    fn kernel_dim(&self) -> usize {
        LieKernel::new(&self.inner).dim()
    }

    /// Lie kernel basis written with e1..en.
    fn kernel_basis(&self) -> Vec<String> {
        let names: Vec<String> = (1..=self.inner.dim()).map(|i| format!("e{i}")).collect();
        LieKernel::new(&self.inner).basis().iter().map(|p| render(&p.transpose_side(), &names)).collect()
    }

    fn find_grading(&self) -> PyResult<Option<Vec<u32>>> {
        Ok(find_positive_grading(&self.inner).map_err(err)?.map(|g| g.weights().to_vec()))
    }

    fn validate_grading(&self, weights: Vec<u32>) -> PyResult<bool> {
        validate_grading(&self.inner, &weights).map_err(err)
    }

    /// The extension by a positive grading, found when not given.
    #[pyo3(signature = (weights=None))]
    fn extend(&self, weights: Option<Vec<u32>>) -> PyResult<Algebra> {
        let w = match weights {
            Some(w) => w,
            None => self.find_grading()?.ok_or_else(|| PyValueError::new_err("no positive grading"))?,
        };
        Ok(Algebra { inner: grading_extension(&self.inner, &w).map_err(err)? })
    }

    fn __str__(&self) -> String {
        print_algebra(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Algebra('{}')", print_algebra(&self.inner))
    }

    fn __eq__(&self, other: &Algebra) -> bool {
        self.inner == other.inner
    }
}

/// Normalized structure equations and the parameters they mention.
#[pyfunction]
fn parse(text: &str) -> PyResult<(String, Vec<String>)> {
    let p = parse_text(text).map_err(err)?.normalized();
    Ok((p.to_string(), p.params().into_iter().collect()))
}

#[pyfunction]
#[pyo3(signature = (name, n, k=None, params=None))]
fn family(name: &str, n: usize, k: Option<usize>, params: Option<BTreeMap<String, Bound<'_, PyAny>>>) -> PyResult<Algebra> {
    let m = family_member(Family::from_str(name).map_err(err)?, n, k).map_err(err)?;
    Ok(Algebra { inner: m.bind(&bindings(params)?).map_err(err)? })
}

/// A table entry at the given parameters, with whether they are admissible.
#[pyfunction]
#[pyo3(signature = (table, id, params=None))]
fn table_entry(table: &str, id: &str, params: Option<BTreeMap<String, Bound<'_, PyAny>>>) -> PyResult<(Algebra, bool)> {
    let e = lookup(Table::from_str(table).map_err(err)?, id, &bindings(params)?).map_err(err)?;
    Ok((Algebra { inner: e.algebra }, e.admissible))
}

/// Reports as plain Python data, one dict per section.
#[pyfunction]
#[pyo3(signature = (sections=None, g2_data=None))]
fn verify_paper(py: Python<'_>, sections: Option<Vec<String>>, g2_data: Option<PathBuf>) -> PyResult<Vec<Py<PyAny>>> {
    let sections = sections
        .unwrap_or_default()
        .iter()
        .map(|s| Section::from_str(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let reports = py.detach(|| run_verify(&sections, &VerifyOptions { g2_data }));
    reports.iter().map(|r| from_json(py, &r.to_json())).collect()
}

#[pymodule]
#[pyo3(name = "liekernel")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(table_entry, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    Ok(())
}
