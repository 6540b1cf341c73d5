//! Nearly Kähler six-manifolds as orbits in the dual of the Lie kernel.

use serde_json::json;

use super::display::{parse_named, render, term_diff};
use super::{build_sp2, build_su2su2, build_su3};
use crate::error::Result;
use crate::exterior::KForm;
use crate::kernelmap::{d_p, stabilizer, two_plectic_check, LieKernel, PFunctional};
use crate::liealg::LieAlgebra;
use crate::report::{Check, Report, Status};
use crate::scalars::{Field, Rational, Sqrt3};

type S = Sqrt3;

/// One row of the orbit table. Vectors are written with the lower-case
/// labels of their basis elements, so `(1/2)b11` stands for `B11/2`.
#[derive(Clone, Debug)]
pub struct NKOrbitSpec {
    pub name: &'static str,
    pub algebra: LieAlgebra<S>,
    pub beta: &'static str,
    pub expected_dp: &'static str,
    pub expected_stab_dim: usize,
    pub j_partial: Vec<(&'static str, &'static str)>,
}

fn lift(g: &LieAlgebra<Rational>) -> LieAlgebra<S> {
    g.map_scalars(S::from_rational)
}

pub fn su3_spec() -> Result<NKOrbitSpec> {
    Ok(NKOrbitSpec {
        name: "su3",
        algebra: lift(&build_su3()?.0),
        beta: "b12c12 + c13b13 + b23c23",
        expected_dp: "3(b12(b13c23 + b23c13) + c12(b13b23 + c13c23))",
        expected_stab_dim: 2,
        j_partial: vec![("b12", "c12"), ("c13", "b13"), ("b23", "c23")],
    })
}

pub fn sp2_spec() -> Result<NKOrbitSpec> {
    Ok(NKOrbitSpec {
        name: "sp2",
        algebra: lift(&build_sp2()?),
        beta: "a1b11 + b12r + c12q",
        expected_dp: "-3(a1(b12q - c12r) + 2b11(b12c12 + qr))",
        expected_stab_dim: 4,
        j_partial: vec![("a1", "(1/2)b11"), ("b12", "r"), ("c12", "q")],
    })
}

pub fn su2su2_spec() -> NKOrbitSpec {
    NKOrbitSpec {
        name: "su2su2",
        algebra: lift(&build_su2su2()),
        beta: "e1f1 + e2f2 + e3f3",
        expected_dp: "e1e2f3 + e2e3f1 + e3e1f2 - e1f2f3 - e2f3f1 - e3f1f2",
        expected_stab_dim: 0,
        j_partial: vec![
            ("e1", "(1/3)sqrt3(e1 + 2f1)"),
            ("e2", "(1/3)sqrt3(e2 + 2f2)"),
            ("e3", "(1/3)sqrt3(e3 + 2f3)"),
        ],
    }
}

pub fn g2_spec(g2: &LieAlgebra<Rational>) -> NKOrbitSpec {
    NKOrbitSpec {
        name: "g2",
        algebra: lift(g2),
        beta: "b1c1 + b3c3 + c4b4",
        expected_dp: "6(b1(b3c4 - c3b4) - c1(b3b4 + c3c4))",
        expected_stab_dim: 8,
        j_partial: vec![("b1", "c1"), ("b3", "c3"), ("c4", "b4")],
    }
}

/// Computed orbit data for a row.
#[derive(Clone, Debug)]
pub struct NKOrbit {
    pub beta: PFunctional<S>,
    pub dp: KForm<S>,
    pub stab_dim: usize,
    pub two_plectic: bool,
}

impl NKOrbitSpec {
    fn parse(&self, text: &str, degree: usize) -> Result<KForm<S>> {
        parse_named(text, self.algebra.names(), degree, Some(S::root()))
    }

    pub fn beta_form(&self) -> Result<KForm<S>> {
        self.parse(self.beta, 2)
    }

    pub fn orbit(&self) -> Result<NKOrbit> {
        let g = &self.algebra;
        let kernel = LieKernel::new(g);
        let beta = kernel.restrict(&self.beta_form()?);
        Ok(NKOrbit {
            dp: d_p(g, &beta),
            stab_dim: stabilizer(g, &kernel, &beta).dim(),
            two_plectic: two_plectic_check(g, &kernel, &beta),
            beta,
        })
    }

    /// `σ(X, JX)` for each listed pair, using the printed representative.
    pub fn sigma_values(&self) -> Result<Vec<S>> {
        let beta = self.beta_form()?;
        let vector = |t: &str| -> Result<Vec<S>> {
            let f = self.parse(t, 1)?;
            Ok((0..self.algebra.dim()).map(|i| f.coeff(1 << i)).collect())
        };
        self.j_partial.iter().map(|(x, jx)| beta.eval(&[vector(x)?, vector(jx)?])).collect()
    }
}

pub fn nk_verify(spec: &NKOrbitSpec) -> Report {
    let mut r = Report::new("nk");
    let id = |s: &str| format!("nk.{}.{s}", spec.name);
    let anchor = |s: &str| format!("nearly Kähler orbit of {}: {s}", spec.name);
    let orbit = match spec.orbit() {
        Ok(o) => o,
        Err(e) => {
            r.push(Check::new(id("beta"), anchor("β"), Status::Fail, json!({"error": e.to_string()})));
            return r;
        }
    };
    let names = spec.algebra.names();
    r.push(match spec.parse(spec.expected_dp, 3) {
        Ok(p) if p == orbit.dp => Check::new(id("dp"), anchor("d_P β"), Status::Pass, json!({"value": render(&p, names)})),
        Ok(p) => Check::new(
            id("dp"),
            anchor("d_P β"),
            Status::InfoDiff,
            json!({"computed": render(&orbit.dp, names), "printed": spec.expected_dp, "terms": term_diff(&orbit.dp, &p, names)}),
        ),
        Err(e) => Check::new(id("dp"), anchor("d_P β"), Status::Fail, json!({"error": e.to_string()})),
    });
    // The expected dimension is read off the printed orbit, so a mismatch is
    // a discrepancy with the table rather than a computational failure.
    let stab_status = if orbit.stab_dim == spec.expected_stab_dim { Status::Pass } else { Status::InfoDiff };
    r.push(Check::new(
        id("stabilizer"),
        anchor("stabilizer dimension"),
        stab_status,
        json!({"computed": orbit.stab_dim, "printed_orbit_implies": spec.expected_stab_dim,
               "orbit_dim": spec.algebra.dim() - orbit.stab_dim}),
    ));
    r.push(Check::from_bool(id("two_plectic"), anchor("2-plectic"), orbit.two_plectic, json!({})));
    let sigma = spec.sigma_values();
    let ok = sigma.as_ref().is_ok_and(|v| v.iter().all(|s| s.signum() == Some(1)));
    let witness = match &sigma {
        Ok(v) => json!({"sigma_x_jx": v.iter().map(ToString::to_string).collect::<Vec<_>>()}),
        Err(e) => json!({"error": e.to_string()}),
    };
    r.push(Check::from_bool(id("sigma"), anchor("σ(X, JX) > 0 on the listed pairs"), ok, witness));
    r.sort();
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su3_row() {
        let spec = su3_spec().unwrap();
        let o = spec.orbit().unwrap();
        assert_eq!(o.stab_dim, 2);
        assert!(o.two_plectic);
        let r = nk_verify(&spec);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn su2su2_stabilizer_is_diagonal() {
        let spec = su2su2_spec();
        let o = spec.orbit().unwrap();
        assert_eq!(o.stab_dim, 3);
        assert_eq!(nk_verify(&spec).get("nk.su2su2.stabilizer").unwrap().status, Status::InfoDiff);
    }

    #[test]
    fn sp2_and_g2_rows() {
        let r = nk_verify(&sp2_spec().unwrap());
        assert!(r.checks.iter().all(|c| c.status == Status::Pass), "{}", r.to_text());
        let g2 = crate::catalog::load_g2(&crate::catalog::bundled_g2_path()).unwrap();
        let r = nk_verify(&g2_spec(&g2));
        assert!(r.checks.iter().all(|c| c.status == Status::Pass), "{}", r.to_text());
    }
}
