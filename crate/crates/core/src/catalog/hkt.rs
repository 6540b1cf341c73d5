//! Joyce's hypercomplex structure on su(3) and the multi-moment data of its
//! three fundamental 2-forms.

use num_traits::{One, Zero};
use serde_json::json;

use super::display::{parse_form, render, term_diff};
use super::{build_su3, su3_printed_metric};
use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::kernelmap::{multimoment_kernel, LieKernel};
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::report::{Check, Report, Status};
use crate::scalars::{rat, Field, Sqrt3};

type S = Sqrt3;

#[derive(Clone, Debug)]
pub struct HKTData {
    pub algebra: LieAlgebra<S>,
    /// `−½ tr(XY)`.
    pub metric: Matrix<S>,
    pub i: Matrix<S>,
    pub j: Matrix<S>,
    pub k: Matrix<S>,
    pub omega_i: KForm<S>,
    pub omega_j: KForm<S>,
    pub omega_k: KForm<S>,
    /// `c = −I dω_I` under the resolved action sign.
    pub c: KForm<S>,
    pub sign: i8,
}

pub const OMEGA_I: &str = "-a1'a2' + b12c12 + b13c13 - b23c23";
pub const OMEGA_J: &str = "a2'b12 - a1'c12 - b13b23 - c13c23";
pub const OMEGA_K: &str = "a2'c12 + a1'b12 + b13c23 + b23c13";
pub const D_OMEGA_I: &str = "-sqrt3 a1'(b13c13 + b23c23) + a2'(2b12c12 + b13c13 - b23c23) \
    - b12b13c23 - b12b23c13 - b13b23c12 - c12c13c23";
pub const D_OMEGA_J: &str = "2a1'a2'c12 + a1'(b13c23 + b23c13) - a2'(b13b23 + c13c23) \
    - sqrt3 b12b13c13 - sqrt3 b12b23c23 + b13c12c13 - b23c12c23";
pub const D_OMEGA_K: &str = "-2a1'a2'b12 + a1'(b13b23 + b23c13) + a2'(b13c23 + b23c13) \
    + sqrt3 b13c12c13 + sqrt3 b23c12c23 + b12b13c13 - b12b23c23";
pub const I_D_OMEGA_I: &str = "a1(2b12c12 + b13c13 - b23c23) - a2(b12c12 - b13c13 - 2b23c23) \
    - b23c12c13 - b13c12c23 - b12c13c23 - b12b13b23";
pub const NU_I: &str = "-(1/2)sqrt3 a1a2 - (b12c12 + b23c23 - b13c13)";
pub const NU_J: &str = "(1/2)sqrt3(2(a1 + a2)b12 - (b23c13 + b13c23)) \
    + (1/14)(2(2a1 - a2)c12 - 5(b13b23 + c13c23))";
pub const NU_K: &str = "(1/14)sqrt3((3a1 + 2a2)c12 - 2(b13b23 + c13c23)) \
    - (1/2)(2(8a1 + 5a2)b12 - 11(b13c23 + b23c13))";

fn q(p: i64, d: i64) -> S {
    S::from_rational(&rat(p, d))
}

fn unit(n: usize, i: usize) -> Vec<S> {
    (0..n).map(|k| if k == i { S::one() } else { S::zero() }).collect()
}

/// Parses an su(3) display that may use `a1' = a1 − a2/2` and `a2' = (√3/2)a2`.
pub fn parse_su3(text: &str, degree: usize) -> Result<KForm<S>> {
    let names = super::SU3_NAMES;
    let lookup = |s: &str| -> Option<KForm<S>> {
        let one = |i: usize| KForm::monomial(8, &[i], S::one()).unwrap();
        match s {
            "a1'" => Some(one(0).add(&one(1).scale(&q(-1, 2))).unwrap()),
            "a2'" => Some(one(1).scale(&(S::root() * q(1, 2)))),
            _ => names.iter().position(|m| *m == s).map(one),
        }
    };
    parse_form(text, 8, degree, &lookup, Some(S::root()))
}

/// `(fφ)(X,Y,Z) = sign · φ(fX, fY, fZ)`.
pub fn act_on_3form(f: &Matrix<S>, phi: &KForm<S>, sign: i8) -> KForm<S> {
    let out = phi.pullback(f);
    if sign < 0 {
        out.scale(&-S::one())
    } else {
        out
    }
}

/// `ω(X,Y) = g(fX, Y)` as a 2-form.
pub fn fundamental_form(metric: &Matrix<S>, f: &Matrix<S>) -> Result<KForm<S>> {
    let n = metric.rows();
    let m = f.transpose().mul(metric)?;
    let mut out = KForm::zero(n, 2);
    for a in 0..n {
        for b in a + 1..n {
            if m[(a, b)] != -m[(b, a)].clone() {
                return Err(Error::InvariantFailure(format!("g(f·,·) is not skew on ({a}, {b})")));
            }
            out = out.add(&KForm::monomial(n, &[a, b], m[(a, b)].clone())?)?;
        }
    }
    Ok(out)
}

/// The vector `V = (A1 + 2A2)/√3`.
pub fn v_vector() -> Vec<S> {
    let s = S::root() * q(1, 3);
    let mut v = vec![S::zero(); 8];
    v[0] = s.clone();
    v[1] = s * q(2, 1);
    v
}

/// Builds I, J, K: `ad` of the su(2) generators on ℍ = ⟨B13, C13, B23, C23⟩,
/// `IV = A1`, `JV = B12`, `KV = C12` on ℝ ⊕ su(2), and the remaining values
/// on su(2) fixed by the quaternion relations applied to V.
pub fn build_hkt() -> Result<HKTData> {
    let (g, _) = build_su3()?;
    let g = g.map_scalars(S::from_rational);
    let n = 8;
    let v = v_vector();
    let (bi, bj, bk) = (unit(n, 0), unit(n, 2), unit(n, 5));
    let quat = [v.clone(), bi.clone(), bj.clone(), bk.clone()];
    let h: Vec<Vec<S>> = [3, 4, 6, 7].iter().map(|&i| unit(n, i)).collect();
    // Unknown columns I(q), J(q), K(q) for q in (𝐈, 𝐉, 𝐊). Each relation
    // applied to V names one unknown; every unknown must be named once.
    let neg = |x: &[S]| x.iter().map(|c| -c.clone()).collect::<Vec<S>>();
    let relations: [(usize, usize, Vec<S>); 9] = [
        (0, 1, neg(&v)),  // I² = −1: I𝐈 = −V
        (1, 2, neg(&v)),  // J𝐉 = −V
        (2, 3, neg(&v)),  // K𝐊 = −V
        (0, 2, bk.clone()), // IJ = K: I𝐉 = 𝐊
        (1, 3, bi.clone()), // JK = I: J𝐊 = 𝐈
        (2, 1, bj.clone()), // KI = J: K𝐈 = 𝐉
        (1, 1, neg(&bk)), // JI = −K: J𝐈 = −𝐊
        (2, 2, neg(&bi)), // KJ = −I: K𝐉 = −𝐈
        (0, 3, neg(&bj)), // IK = −J: I𝐊 = −𝐉
    ];
    let mut images: [[Option<Vec<S>>; 4]; 3] = Default::default();
    images[0][0] = Some(bi.clone());
    images[1][0] = Some(bj.clone());
    images[2][0] = Some(bk.clone());
    for (op, col, val) in relations {
        if images[op][col].replace(val).is_some() {
            return Err(Error::InvariantFailure("quaternionic completion is overdetermined".into()));
        }
    }
    let adv = [g.ad_of(&bi), g.ad_of(&bj), g.ad_of(&bk)];
    let old_basis: Vec<Vec<S>> = quat.iter().chain(h.iter()).cloned().collect();
    let p = Matrix::from_columns(n, &old_basis);
    let p_inv = p.inverse().ok_or_else(|| Error::InvariantFailure("V, 𝐈, 𝐉, 𝐊, ℍ is not a basis".into()))?;
    let mut ops = Vec::new();
    for (op, row) in images.iter().enumerate() {
        let mut cols: Vec<Vec<S>> = Vec::new();
        for img in row {
            cols.push(img.clone().ok_or_else(|| Error::InvariantFailure("completion is not unique".into()))?);
        }
        for x in &h {
            cols.push(adv[op].mul_vec(x));
        }
        ops.push(Matrix::from_columns(n, &cols).mul(&p_inv)?);
    }
    let (i, j, k) = (ops[0].clone(), ops[1].clone(), ops[2].clone());
    // The printed 2-forms are g(X·,·) for the half-trace form, in which the
    // B and C basis vectors are unit vectors.
    let metric = su3_printed_metric().map(S::from_rational).scale(&q(1, 2));
    let omega_i = fundamental_form(&metric, &i)?;
    let omega_j = fundamental_form(&metric, &j)?;
    let omega_k = fundamental_form(&metric, &k)?;
    let printed = parse_su3(I_D_OMEGA_I, 3)?;
    let d_i = g.d(&omega_i);
    let sign = [1i8, -1]
        .into_iter()
        .find(|&s| act_on_3form(&i, &d_i, s) == printed)
        .ok_or_else(|| Error::InvariantFailure("no action sign reproduces the printed I dω_I".into()))?;
    let c = act_on_3form(&i, &d_i, sign).scale(&-S::one());
    let data = HKTData { algebra: g, metric, i, j, k, omega_i, omega_j, omega_k, c, sign };
    if let Some(msg) = data.invariant_failures().into_iter().next() {
        return Err(Error::InvariantFailure(msg));
    }
    Ok(data)
}

impl HKTData {
    /// Names of the failing structural identities.
    pub fn invariant_failures(&self) -> Vec<String> {
        let n = self.algebra.dim();
        let id = Matrix::<S>::identity(n);
        let minus = id.scale(&-S::one());
        let mul = |a: &Matrix<S>, b: &Matrix<S>| a.mul(b).expect("square");
        let mut out = Vec::new();
        for (name, f) in [("I", &self.i), ("J", &self.j), ("K", &self.k)] {
            if mul(f, f) != minus {
                out.push(format!("{name}² = −Id"));
            }
            if mul(&f.transpose(), &mul(&self.metric, f)) != self.metric {
                out.push(format!("g({name}X, {name}Y) = g(X, Y)"));
            }
        }
        if mul(&self.i, &self.j) != self.k {
            out.push("IJ = K".into());
        }
        if mul(&self.j, &self.i) != self.k.scale(&-S::one()) {
            out.push("JI = −K".into());
        }
        for (name, f, w) in [("I", &self.i, &self.omega_i), ("J", &self.j, &self.omega_j), ("K", &self.k, &self.omega_k)] {
            if fundamental_form(&self.metric, f).ok().as_ref() != Some(w) {
                out.push(format!("ω_{name} = g({name}·,·)"));
            }
        }
        if !self.algebra.d(&self.c).is_zero() {
            out.push("dc = 0".into());
        }
        out
    }

    pub fn names(&self) -> &[String] {
        self.algebra.names()
    }
}

/// A printed display that disagrees with the computation is an info-diff;
/// the identities themselves are checked separately.
fn compare(id: &str, anchor: &str, computed: &KForm<S>, text: &str, names: &[String]) -> Check {
    match parse_su3(text, computed.degree()) {
        Ok(p) if &p == computed => Check::new(id, anchor, Status::Pass, json!({"value": render(computed, names)})),
        Ok(p) => Check::new(
            id,
            anchor,
            Status::InfoDiff,
            json!({"computed": render(computed, names), "printed": text, "terms": term_diff(computed, &p, names)}),
        ),
        Err(e) => Check::new(id, anchor, Status::Fail, json!({"error": e.to_string()})),
    }
}

pub fn hkt_verify() -> Report {
    let mut r = Report::new("hkt");
    let data = match build_hkt() {
        Ok(d) => d,
        Err(e) => {
            r.push(Check::new("hkt.build", "hypercomplex structure on su(3)", Status::Fail, json!({"error": e.to_string()})));
            return r;
        }
    };
    let names = data.names().to_vec();
    let g = &data.algebra;
    let fails = data.invariant_failures();
    r.push(Check::from_bool(
        "hkt.invariants",
        "quaternion relations, metric compatibility, fundamental forms",
        fails.is_empty(),
        json!({"failed": fails}),
    ));
    let v = v_vector();
    r.push(Check::from_bool(
        "hkt.iv",
        "I V = A1, J V = B12, K V = C12",
        data.i.mul_vec(&v) == unit(8, 0) && data.j.mul_vec(&v) == unit(8, 2) && data.k.mul_vec(&v) == unit(8, 5),
        json!({}),
    ));
    for (tag, form, text) in [("i", &data.omega_i, OMEGA_I), ("j", &data.omega_j, OMEGA_J), ("k", &data.omega_k, OMEGA_K)] {
        r.push(compare(&format!("hkt.omega_{tag}"), &format!("fundamental 2-form ω_{tag}"), form, text, &names));
    }
    let d = [g.d(&data.omega_i), g.d(&data.omega_j), g.d(&data.omega_k)];
    for (tag, form, text) in [("i", &d[0], D_OMEGA_I), ("j", &d[1], D_OMEGA_J), ("k", &d[2], D_OMEGA_K)] {
        r.push(compare(&format!("hkt.d_omega_{tag}"), &format!("exterior derivative dω_{tag}"), form, text, &names));
    }
    let acted: Vec<KForm<S>> = [&data.i, &data.j, &data.k]
        .iter()
        .zip(d.iter())
        .map(|(f, phi)| act_on_3form(f, phi, data.sign))
        .collect();
    let other = -data.sign;
    let other_matches = parse_su3(I_D_OMEGA_I, 3).is_ok_and(|p| act_on_3form(&data.i, &d[0], other) == p);
    r.push(Check::from_bool(
        "hkt.sign",
        "action of I on 3-forms",
        !other_matches,
        json!({"sign": data.sign, "rule": "(fφ)(X,Y,Z) = sign·φ(fX,fY,fZ)"}),
    ));
    r.push(Check::from_bool(
        "hkt.condition",
        "I dω_I = J dω_J = K dω_K",
        acted[0] == acted[1] && acted[1] == acted[2],
        json!({"value": render(&acted[0], &names)}),
    ));
    r.push(compare("hkt.common_value", "printed value of I dω_I", &acted[0], I_D_OMEGA_I, &names));
    r.push(Check::from_bool("hkt.dc", "c = −I dω_I is closed", g.d(&data.c).is_zero(), json!({})));
    r.sort();
    r
}

fn span(vs: Vec<Vec<S>>) -> Subspace<S> {
    Subspace::span(8, vs)
}

pub fn multimoment_su3_verify() -> Report {
    let mut r = Report::new("multimoment");
    let data = match build_hkt() {
        Ok(d) => d,
        Err(e) => {
            r.push(Check::new("multimoment.build", "hypercomplex structure on su(3)", Status::Fail, json!({"error": e.to_string()})));
            return r;
        }
    };
    let g = &data.algebra;
    let names = data.names().to_vec();
    let kernel = LieKernel::new(g);
    let v = v_vector();
    let expected = [
        ("i", span(vec![unit(8, 0), v.clone()]), "span{A1, V}"),
        ("j", span(vec![v.clone(), unit(8, 2)]), "span{V, B12}"),
        ("k", span(vec![v.clone(), unit(8, 5)]), "span{V, C12}"),
    ];
    let forms = [&data.omega_i, &data.omega_j, &data.omega_k];
    for ((tag, want, label), w) in expected.iter().zip(forms) {
        let got = multimoment_kernel(g, &kernel, &g.d(w));
        let witness = match &got {
            Ok(s) => json!({"dim": s.dim(), "expected": label}),
            Err(e) => json!({"error": e.to_string()}),
        };
        r.push(Check::from_bool(
            format!("multimoment.kernel_{tag}"),
            format!("kernel of the differential of ν_{tag}"),
            got.is_ok_and(|s| &s == want),
            witness,
        ));
    }
    for ((tag, text), w) in [("i", NU_I), ("j", NU_J), ("k", NU_K)].into_iter().zip(forms) {
        let id = format!("multimoment.nu_{tag}");
        let anchor = format!("value of ν_{tag} at the identity");
        let computed = kernel.restrict(w);
        let check = match parse_su3(text, 2) {
            Ok(p) => {
                let printed = kernel.restrict(&p);
                let status = if printed == computed { Status::Pass } else { Status::InfoDiff };
                json!({"printed": text, "omega": render(w, &names), "printed_minus_omega_on_p_zero": printed == computed})
                    .as_object()
                    .cloned()
                    .map(|m| Check::new(id.clone(), anchor.clone(), status, m.into()))
                    .expect("object")
            }
            Err(e) => Check::new(id, anchor, Status::Fail, json!({"error": e.to_string()})),
        };
        r.push(check);
    }
    r.sort();
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn joyce_structure() {
        let h = build_hkt().unwrap();
        assert!(h.invariant_failures().is_empty());
        // I = ad_{A1} on ℍ: B13 ↦ C13
        assert_eq!(h.i.mul_vec(&unit(8, 3)), unit(8, 6));
        assert_eq!(h.i.mul_vec(&v_vector()), unit(8, 0));
    }

    #[test]
    fn twice_acting_negates() {
        let h = build_hkt().unwrap();
        let phi = h.algebra.d(&h.omega_i);
        let twice = act_on_3form(&h.i, &act_on_3form(&h.i, &phi, 1), 1);
        assert_eq!(twice, phi.scale(&-S::one()));
        assert_eq!(act_on_3form(&Matrix::identity(8), &phi, 1), phi);
    }

    #[test]
    fn omega_i_on_a1_a2() {
        let h = build_hkt().unwrap();
        assert_eq!(h.omega_i.coeff_of(&[0, 1]), -S::root() * q(1, 2));
    }

    #[test]
    fn reports() {
        let r = hkt_verify();
        eprintln!("{}", r.to_text());
        assert!(r.passed());
        let m = multimoment_su3_verify();
        eprintln!("{}", m.to_text());
        assert!(m.passed());
    }
}
