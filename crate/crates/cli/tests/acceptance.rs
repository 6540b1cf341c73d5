//! Acceptance criteria, one line each.
//!
//! Runs without the libtest harness so that every criterion reports even
//! when an earlier one fails. Criteria listed in `KNOWN_RED` cannot hold as
//! stated: their assertions stay strict and print FAIL, and the run succeeds
//! only if exactly those fail.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde_json::Value;

use liekernel::catalog::hkt::{build_hkt, hkt_verify, multimoment_su3_verify};
use liekernel::catalog::nk::{g2_spec, sp2_spec, su2su2_spec, su3_spec, NKOrbitSpec};
use liekernel::catalog::{build_sp2, build_su2su2, build_su3, bundled_g2_path, load_g2, parse_named};
use liekernel::exterior::{ExtBasis, KForm, KVector};
use liekernel::gradings::families::{family_member, Family};
use liekernel::gradings::tables::{entries, table_entry, violated, Table, TableEntry};
use liekernel::gradings::{find_positive_grading, grading_extension, validate_grading, Grading};
use liekernel::kernelmap::{closed_contraction_check, d_p, LieKernel};
use liekernel::liealg::LieAlgebra;
use liekernel::linalg::{Matrix, Subspace};
use liekernel::notation::parse;
use liekernel::report::{Report, Status};
use liekernel::sampling::{rng_for, sample_bindings, sample_rational};
use liekernel::scalars::{int, rat, Bindings, Rational, Sqrt3};
use rand::Rng;
use liekernel::verify::{
    extension_dets, family_members, five_dim_tables, multiset_assignment, negative_scan, printed_derived, DET_GRID,
};

type Q = Rational;

const KNOWN_RED: [(usize, &str); 4] = [
    (3, "the printed dω_K has b23c13 where the computation gives c13c23"),
    (5, "β₃ on su(2)⊕su(2) is fixed by the diagonal su(2), so its stabilizer has dimension 3"),
    (6, "λ₃ = 0 in r''_{5,λ(3)} is excluded as a normal form; b₂ = b₃ = 0 there"),
    (11, "p⌟c need not be closed for left-invariant c: on (0,0,0,12), c = e134 and p = e1∧e3 give d(p⌟c) = e12"),
];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn alg(s: &str) -> LieAlgebra<Q> {
    parse(s).unwrap().bind(&Bindings::new()).unwrap()
}

fn admissible(e: &TableEntry) -> impl Fn(&Bindings) -> bool + '_ {
    move |b| matches!(violated(&e.constraints, b), Ok(None))
}

fn g2() -> Option<LieAlgebra<Q>> {
    load_g2(&bundled_g2_path()).ok()
}

fn all_pass(r: &Report, ids: &[&str]) -> Vec<String> {
    ids.iter()
        .filter(|id| r.get(id).map(|c| c.status) != Some(Status::Pass))
        .map(|id| format!("{id}: {}", r.get(id).map_or("missing".into(), |c| c.status.to_string())))
        .collect()
}

// ---------------------------------------------------------------------------
// 1

fn structure_validity() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    let (su3, _) = build_su3().unwrap();
    let mut catalog = vec![("su3", su3), ("sp2", build_sp2().unwrap()), ("su2su2", build_su2su2())];
    catalog.extend(g2().map(|g| ("g2", g)));
    for (name, g) in &catalog {
        count += 1;
        if g.jacobi_check().is_some() {
            bad.push(name.to_string());
        }
    }
    for e in [Table::T1, Table::T2, Table::T3].into_iter().flat_map(entries) {
        let samples = sample_bindings(&e.params(), 10, &format!("acceptance-jacobi/{}", e.id), admissible(&e));
        if samples.len() < 10 && !e.params().is_empty() {
            bad.push(format!("{}: only {} samples", e.id, samples.len()));
        }
        for b in samples {
            count += 1;
            if e.algebra().bind_unchecked(&b).unwrap().jacobi_check().is_some() {
                bad.push(format!("{} at {b:?}", e.id));
            }
        }
    }
    outcome(bad.is_empty(), format!("{count} algebras, g2 {}; {bad:?}", if catalog.len() == 4 { "present" } else { "absent" }))
}

// ---------------------------------------------------------------------------
// 2: su(3) brackets from a separate complex matrix computation.

type C = (Q, Q);

fn cmul(a: &C, b: &C) -> C {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn mat_mul(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold((Q::zero(), Q::zero()), |acc, k| {
                        let p = cmul(&a[i][k], &b[k][j]);
                        (acc.0 + p.0, acc.1 + p.1)
                    })
                })
                .collect()
        })
        .collect()
}

fn su3_basis() -> Vec<Vec<Vec<C>>> {
    let z = || (Q::zero(), Q::zero());
    let mut out = Vec::new();
    let unit = |entries: &[(usize, usize, i64, i64)]| {
        let mut m = vec![vec![z(), z(), z()]; 3];
        for &(p, q, re, im) in entries {
            m[p][q] = (int(re), int(im));
        }
        m
    };
    out.push(unit(&[(0, 0, 0, 1), (1, 1, 0, -1)]));
    out.push(unit(&[(1, 1, 0, 1), (2, 2, 0, -1)]));
    for (p, q) in [(0, 1), (0, 2), (1, 2)] {
        out.push(unit(&[(p, q, 1, 0), (q, p, -1, 0)]));
    }
    for (p, q) in [(0, 1), (0, 2), (1, 2)] {
        out.push(unit(&[(p, q, 0, 1), (q, p, 0, 1)]));
    }
    out
}

/// Coordinates in the basis via `−Re tr(XY)`, whose Gram matrix is
/// `[[2,−1],[−1,2]] ⊕ 2·I₆`.
fn su3_coords(z: &[Vec<C>], basis: &[Vec<Vec<C>>]) -> Vec<Q> {
    let pair = |x: &[Vec<C>], y: &[Vec<C>]| -> Q {
        let p = mat_mul(x, y);
        -(0..3).fold(Q::zero(), |acc, i| acc + &p[i][i].0)
    };
    let t: Vec<Q> = basis.iter().map(|x| pair(z, x)).collect();
    let third = rat(1, 3);
    let mut c = vec![
        (int(2) * &t[0] + &t[1]) * &third,
        (&t[0] + int(2) * &t[1]) * &third,
    ];
    c.extend(t[2..].iter().map(|x| x * rat(1, 2)));
    c
}

const SU3_NAMES: [&str; 8] = ["a1", "a2", "b12", "b13", "b23", "c12", "c13", "c23"];
const SU3_DISPLAY: [&str; 8] = [
    "-2b12c12 - 2b13c13",
    "-2b13c13 - 2b23c23",
    "(2a1 - a2)c12 + b13b23 + c13c23",
    "(a1 + a2)c13 - b12b23 + c12c23",
    "(-a1 + 2a2)c23 + b12b13 + c12c13",
    "(-2a1 + a2)b12 - b13c23 - b23c13",
    "(-a1 - a2)b13 - b12c23 + b23c12",
    "(a1 - 2a2)b23 + b12c13 + b13c12",
];

fn extdi() -> Outcome {
    let basis = su3_basis();
    let names: Vec<String> = SU3_NAMES.iter().map(|s| s.to_string()).collect();
    let mut oracle = vec![KForm::<Q>::zero(8, 2); 8];
    for i in 0..8 {
        for j in i + 1..8 {
            let ab = mat_mul(&basis[i], &basis[j]);
            let ba = mat_mul(&basis[j], &basis[i]);
            let z: Vec<Vec<C>> = (0..3)
                .map(|r| (0..3).map(|s| (&ab[r][s].0 - &ba[r][s].0, &ab[r][s].1 - &ba[r][s].1)).collect())
                .collect();
            for (k, c) in su3_coords(&z, &basis).into_iter().enumerate() {
                if !c.is_zero() {
                    oracle[k] = oracle[k].add(&KForm::monomial(8, &[i, j], -c).unwrap()).unwrap();
                }
            }
        }
    }
    let (g, _) = build_su3().unwrap();
    let mut bad = Vec::new();
    for k in 0..8 {
        let printed: KForm<Q> = parse_named(SU3_DISPLAY[k], &names, 2, None).unwrap();
        if printed != oracle[k] || g.diff(k) != &oracle[k] {
            bad.push(SU3_NAMES[k]);
        }
    }
    outcome(bad.is_empty(), format!("8 differentials; mismatches {bad:?}"))
}

// ---------------------------------------------------------------------------
// 3, 4

fn hkt() -> Outcome {
    let start = Instant::now();
    let h = build_hkt().unwrap();
    let neg = Matrix::<Sqrt3>::identity(8).scale(&-Sqrt3::one());
    let sq = |m: &Matrix<_>| m.mul(m).unwrap();
    let mut bad = Vec::new();
    if sq(&h.i) != neg || sq(&h.j) != neg || sq(&h.k) != neg {
        bad.push("squares".to_string());
    }
    if h.i.mul(&h.j).unwrap() != h.k || h.j.mul(&h.i).unwrap() != h.k.scale(&-Sqrt3::one()) {
        bad.push("IJ = K = -JI".to_string());
    }
    for (tag, f) in [("I", &h.i), ("J", &h.j), ("K", &h.k)] {
        if f.transpose().mul(&h.metric).unwrap().mul(f).unwrap() != h.metric {
            bad.push(format!("{tag} not orthogonal"));
        }
    }
    let r = hkt_verify();
    bad.extend(all_pass(
        &r,
        &[
            "hkt.invariants",
            "hkt.iv",
            "hkt.omega_i",
            "hkt.omega_j",
            "hkt.omega_k",
            "hkt.d_omega_i",
            "hkt.d_omega_j",
            "hkt.d_omega_k",
            "hkt.sign",
            "hkt.condition",
            "hkt.common_value",
            "hkt.dc",
        ],
    ));
    let t = start.elapsed();
    if t > Duration::from_secs(5) {
        bad.push(format!("took {t:?}"));
    }
    outcome(bad.is_empty(), format!("sign {}, {:.2?}; {bad:?}", h.sign, t))
}

fn multimoment() -> Outcome {
    let r = multimoment_su3_verify();
    let mut bad = all_pass(&r, &["multimoment.kernel_i", "multimoment.kernel_j", "multimoment.kernel_k"]);
    for tag in ["i", "j", "k"] {
        let id = format!("multimoment.nu_{tag}");
        if r.get(&id).map(|c| c.status) != Some(Status::InfoDiff) {
            bad.push(format!("{id} is not an info-diff record"));
        }
    }
    outcome(bad.is_empty(), format!("three kernels, three ν records; {bad:?}"))
}

// ---------------------------------------------------------------------------
// 5

fn nk() -> Outcome {
    let mut specs: Vec<(NKOrbitSpec, usize)> =
        vec![(su3_spec().unwrap(), 2), (sp2_spec().unwrap(), 4), (su2su2_spec(), 0)];
    if let Some(g) = g2() {
        specs.push((g2_spec(&g), 8));
    }
    let mut bad = Vec::new();
    let mut dims = Vec::new();
    for (spec, stab) in &specs {
        let o = spec.orbit().unwrap();
        let printed = parse_named(spec.expected_dp, spec.algebra.names(), 3, Some(Sqrt3::root())).unwrap();
        if o.dp != printed {
            bad.push(format!("{}: d_P β", spec.name));
        }
        if o.stab_dim != *stab {
            bad.push(format!("{}: stabilizer {} ≠ {stab}", spec.name, o.stab_dim));
        }
        if !o.two_plectic {
            bad.push(format!("{}: not 2-plectic", spec.name));
        }
        dims.push(o.stab_dim);
    }
    outcome(bad.is_empty(), format!("{} rows, stabilizers {dims:?}; {bad:?}", specs.len()))
}

// ---------------------------------------------------------------------------
// 6

fn scans() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut samples_total = 0;
    let mut negatives = 0;
    for e in five_dim_tables() {
        let samples = sample_bindings(&e.params(), 20, &format!("acceptance-positive/{}", e.id), admissible(&e));
        if samples.len() < 20 && !e.params().is_empty() {
            bad.push(format!("{}: only {} samples", e.id, samples.len()));
        }
        for b in samples {
            samples_total += 1;
            let g = e.algebra().bind(&b).unwrap();
            if (g.betti(1), g.betti(2), g.betti(3)) != (1, 0, 0) {
                bad.push(format!("{} at {b:?}", e.id));
            }
        }
        let s = negative_scan(&e);
        negatives += s.tested;
        for w in s.normal_form.iter().chain(&s.contradictions) {
            bad.push(format!("{} excluded but b2 = b3 = 0 at {}", e.id, w["at"]));
        }
        if !s.nonaffine.is_empty() {
            bad.push(format!("{}: constraints not scanned {:?}", e.id, s.nonaffine));
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(60) {
        bad.push(format!("took {t:?}"));
    }
    outcome(bad.is_empty(), format!("{samples_total} positive, {negatives} excluded samples, {:.2?}; {bad:?}", t))
}

// ---------------------------------------------------------------------------
// 7

fn determinants() -> Outcome {
    let with_dets: Vec<TableEntry> = five_dim_tables().into_iter().filter(|e| e.dets.is_some()).collect();
    let four: BTreeSet<&str> = with_dets.iter().filter(|e| e.table == Table::T2).map(|e| e.name).collect();
    let five = with_dets.iter().filter(|e| e.table == Table::T3).count();
    let mut bad = Vec::new();
    for want in ["r_{4,λ(2)}", "r_{4,λ}", "r'_{4,λ(2)}", "d_{4,λ}", "d'_{4,λ}"] {
        if !four.contains(want) {
            bad.push(format!("missing {want}"));
        }
    }
    if five < 11 {
        bad.push(format!("only {five} five-dimensional cases"));
    }
    let grid: Vec<Q> = DET_GRID.iter().map(|&(p, q)| rat(p, q)).collect();
    let distinct: BTreeSet<&Q> = grid.iter().collect();
    assert!(distinct.len() >= 8);
    let mut points = 0;
    for e in &with_dets {
        let printed = e.dets_exprs().unwrap();
        let params = e.params();
        let mut idx = vec![0usize; params.len()];
        loop {
            let b = Bindings::from_pairs(params.iter().cloned().zip(idx.iter().map(|&i| grid[i].clone())));
            if let Ok(g) = e.algebra().bind(&b) {
                points += 1;
                let got = extension_dets(&g).unwrap();
                for (i, p) in printed.iter().enumerate() {
                    if got[i] != p.eval(&b).unwrap() {
                        bad.push(format!("{} a{} at {b:?}", e.id, i + 1));
                    }
                }
            }
            let Some(pos) = idx.iter().rposition(|&i| i + 1 < grid.len()) else { break };
            idx[pos] += 1;
            idx[pos + 1..].iter_mut().for_each(|i| *i = 0);
        }
    }
    bad.truncate(10);
    outcome(bad.is_empty(), format!("{} families, {points} grid points; {bad:?}", with_dets.len()))
}

// ---------------------------------------------------------------------------
// 8

fn table1() -> Outcome {
    let t1 = entries(Table::T1);
    let mut bad = Vec::new();
    for e in &t1 {
        let k = e.algebra().bind(&Bindings::new()).unwrap();
        let printed = Grading::parse_compact(e.grading.unwrap()).unwrap();
        if multiset_assignment(&k, printed.weights()).is_none() {
            bad.push(format!("{}: printed grading", e.id));
        }
        let Some(w) = find_positive_grading(&k).unwrap() else {
            bad.push(format!("{}: no grading found", e.id));
            continue;
        };
        let ext = grading_extension(&k, w.weights()).unwrap();
        let n = ext.dim();
        let tail: Vec<Vec<Q>> = (1..n).map(|i| ext.unit(i)).collect();
        let derived_ok = ext.derived_algebra() == Subspace::span(n, tail.clone()) && ext.subalgebra(&tail).unwrap() == k;
        if !(ext.is_solvable() && derived_ok && ext.betti(2) == 0 && ext.betti(3) == 0) {
            bad.push(format!("{}: extension", e.id));
        }
    }
    // The worked example, with the opposite orientation of A and the last
    // entry's 24 read as 35.
    let k = alg("(0^2,12,13,14+23,24+15)");
    let w = find_positive_grading(&k).unwrap().unwrap();
    let d = w.derivation::<Q>().scale(&-Q::one());
    let example = k.extend_by_derivation(&d).unwrap();
    let example_ok = w.weights() == [1, 2, 3, 4, 5, 6]
        && example == alg("(0,12,2.13,3.14+23,4.15+24,5.16+25+34,6.17+35+26)")
        && example.is_23_trivial();
    if !example_ok {
        bad.push("worked example".into());
    }
    let signed = t1.iter().filter(|e| e.id.ends_with(['+', '-'])).count();
    outcome(
        bad.is_empty(),
        format!("{} entries ({signed} from ± rows), example reproduced: {example_ok}; {bad:?}", t1.len()),
    )
}

// ---------------------------------------------------------------------------
// 9

fn families() -> Outcome {
    let mut bad = Vec::new();
    let members = family_members(9);
    let mut tested = 0;
    for m in &members {
        let tag = format!("acceptance-family/{:?}/{}/{:?}", m.family, m.n, m.k);
        let samples = sample_bindings(&m.params, 5, &tag, |b| m.admissible(b).unwrap());
        if samples.len() < 5 && !m.params.is_empty() {
            bad.push(format!("{tag}: {} samples", samples.len()));
        }
        for b in samples {
            tested += 1;
            if !m.bind(&b).unwrap().is_23_trivial() {
                bad.push(format!("{tag} at {b:?}"));
            }
        }
        if let Some(printed) = printed_derived(m.family, m.n) {
            let g = m.bind(&Bindings::new()).unwrap();
            let tail: Vec<Vec<Q>> = (1..g.dim()).map(|i| g.unit(i)).collect();
            let ok = g.subalgebra(&tail).is_ok_and(|d| d == alg(&printed))
                && validate_grading(&alg(&printed), m.derived_grading.as_ref().unwrap()).unwrap();
            if !ok {
                bad.push(format!("{tag}: derived algebra"));
            }
        }
    }
    let kinds: BTreeSet<String> = members.iter().map(|m| format!("{:?}", m.family)).collect();
    if kinds.len() != 7 {
        bad.push(format!("families covered: {kinds:?}"));
    }
    let f1 = family_member(Family::F1, 5, None).unwrap().bind(&Bindings::new()).unwrap();
    let p5 = table_entry(Table::T3, "p5.lambda", &Bindings::new().with("l", int(1))).unwrap();
    if f1 != p5.algebra || !p5.admissible {
        bad.push("f1(5) ≠ p5 at λ = 1".into());
    }
    outcome(bad.is_empty(), format!("{} members, {tested} samples; {bad:?}", members.len()))
}

// ---------------------------------------------------------------------------
// 10

fn traceless(g: &LieAlgebra<Q>) -> bool {
    (0..g.dim()).all(|i| (0..g.dim()).fold(Q::zero(), |acc, j| acc + &g.bracket_basis(i, j)[j]).is_zero())
}

fn unimodular() -> Outcome {
    let mut bad = Vec::new();
    let mut on = 0;
    let mut off = 0;
    let line = LieAlgebra::<Q>::abelian(1);
    if !(traceless(&line) && line.betti(2) == 0 && line.betti(3) == 0) {
        bad.push("R".to_string());
    }
    for e in five_dim_tables() {
        let params = e.params();
        let locus = e.unimodular_substitution();
        if e.algebra().dim() <= 4 && locus.is_some() {
            bad.push(format!("{} has a unimodular locus in dimension ≤ 4", e.id));
        }
        let on_locus = |b: &Bindings| {
            locus.as_ref().is_some_and(|s| s.iter().all(|(p, x)| x.eval(b).ok().as_ref() == b.get(p)))
        };
        if let Some(s) = &locus {
            let (p, x) = s.iter().next().unwrap();
            let rest: Vec<String> = params.iter().filter(|q| *q != p).cloned().collect();
            let full = |b: &Bindings| b.clone().with(p.clone(), x.eval(b).unwrap());
            for b in sample_bindings(&rest, 10, &format!("acceptance-on/{}", e.id), |b| admissible(&e)(&full(b))) {
                on += 1;
                let g = e.algebra().bind(&full(&b)).unwrap();
                if !(traceless(&g) && g.is_23_trivial()) {
                    bad.push(format!("{} on locus at {b:?}", e.id));
                }
            }
        }
        for b in sample_bindings(&params, 10, &format!("acceptance-off/{}", e.id), |b| admissible(&e)(b) && !on_locus(b)) {
            off += 1;
            if traceless(&e.algebra().bind(&b).unwrap()) {
                bad.push(format!("{} unimodular off its locus at {b:?}", e.id));
            }
        }
    }
    outcome(bad.is_empty(), format!("{on} on-locus, {off} off-locus samples; {bad:?}"))
}

// ---------------------------------------------------------------------------
// 11

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_combination(vs: &[Vec<Q>], rng: &mut impl Rng) -> Vec<Q> {
    let n = vs.first().map_or(0, Vec::len);
    let mut out = vec![Q::zero(); n];
    for v in vs {
        let c = sample_rational(rng);
        for (o, x) in out.iter_mut().zip(v) {
            *o += &c * x;
        }
    }
    out
}

fn property_algebras() -> Vec<(String, LieAlgebra<Q>)> {
    let mut out = vec![
        ("su3".to_string(), build_su3().unwrap().0),
        ("sp2".into(), build_sp2().unwrap()),
        ("su2su2".into(), build_su2su2()),
    ];
    out.extend(g2().map(|g| ("g2".to_string(), g)));
    for e in [Table::T1, Table::T2, Table::T3].into_iter().flat_map(entries) {
        for b in sample_bindings(&e.params(), 2, &format!("acceptance-props/{}", e.id), admissible(&e)) {
            out.push((e.id.clone(), e.algebra().bind(&b).unwrap()));
        }
    }
    for m in family_members(8) {
        for b in sample_bindings(&m.params, 1, &format!("acceptance-props/{:?}/{}/{:?}", m.family, m.n, m.k), |b| {
            m.admissible(b).unwrap()
        }) {
            out.push((format!("{:?}{}", m.family, m.n), m.bind(&b).unwrap()));
        }
    }
    out
}

fn d_squared_zero(g: &LieAlgebra<Q>) -> bool {
    (0..g.dim().saturating_sub(1)).all(|k| g.ce_differential(k + 1).mul(&g.ce_differential(k)).unwrap().is_zero())
}

fn properties() -> Outcome {
    let pool = property_algebras();
    let mut bad = Vec::new();
    for (name, g) in &pool {
        if !d_squared_zero(g) {
            bad.push(format!("d² ≠ 0 on {name}"));
        }
        let n = g.dim();
        if LieKernel::new(g).dim() + g.derived_algebra().dim() != binomial(n, 2) {
            bad.push(format!("dim P + dim g' on {name}"));
        }
    }
    // d(p ⌟ c) = 0 for closed c and p in the Lie kernel.
    let mut rng = rng_for("acceptance-contraction");
    let small: Vec<&(String, LieAlgebra<Q>)> = pool.iter().filter(|(_, g)| g.dim() <= 8).collect();
    let mut triples = 0;
    let mut nonclosed = Vec::new();
    while triples < 100 {
        let (name, g) = small[rng.random_range(0..small.len())];
        let kernel = LieKernel::new(g);
        let closed = g.ce_differential(3).nullspace();
        if kernel.dim() == 0 || closed.is_empty() {
            continue;
        }
        let c = KForm::from_coords(&ExtBasis::new(g.dim(), 3), &random_combination(&closed, &mut rng));
        let p = KVector::from_coords(
            kernel.ext_basis(),
            &random_combination(kernel.space().basis(), &mut rng),
        );
        triples += 1;
        if !closed_contraction_check(g, &kernel, &c, &p).unwrap() {
            nonclosed.push(name.as_str());
        }
    }
    if !nonclosed.is_empty() {
        bad.push(format!("d(p⌟c) ≠ 0 in {} of {triples} triples, first on {}", nonclosed.len(), nonclosed[0]));
    }
    // d_P β does not depend on the representative.
    let mut rng = rng_for("acceptance-representative");
    for s in 0..50 {
        let (name, g) = small[s % small.len()];
        let n = g.dim();
        let b2 = ExtBasis::new(n, 2);
        let coords: Vec<Q> = (0..b2.len()).map(|_| sample_rational(&mut rng)).collect();
        let beta = KForm::from_coords(&b2, &coords);
        let coords: Vec<Q> = (0..n).map(|_| sample_rational(&mut rng)).collect();
        let alpha = KForm::from_coords(&ExtBasis::new(n, 1), &coords);
        let shifted = beta.add(&g.d(&alpha)).unwrap();
        let kernel = LieKernel::new(g);
        let (x, y) = (kernel.restrict(&beta), kernel.restrict(&shifted));
        if x.values() != y.values() || d_p(g, &x) != d_p(g, &y) {
            bad.push(format!("d_P depends on the representative on {name}"));
        }
    }
    for n in 1..=8 {
        let a = LieAlgebra::<Q>::abelian(n);
        if a.betti_numbers() != (0..=n).map(|k| binomial(n, k)).collect::<Vec<_>>() {
            bad.push(format!("betti of R^{n}"));
        }
    }
    bad.truncate(10);
    outcome(bad.is_empty(), format!("{} algebras, {triples} contraction triples, 50 shifts; {bad:?}", pool.len()))
}

// ---------------------------------------------------------------------------
// 12

fn end_to_end() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_liekernel")).args(["verify-paper", "--json"]).output().unwrap();
    let t = start.elapsed();
    let reports: Value = serde_json::from_slice(&out.stdout).unwrap();
    let status = |id: &str| -> Option<String> {
        reports.as_array()?.iter().flat_map(|r| r["checks"].as_array().cloned().unwrap_or_default()).find_map(|c| {
            (c["id"] == id).then(|| c["status"].as_str().unwrap_or("").to_string())
        })
    };
    let code = out.status.code();
    let nu = status("multimoment.nu_i");
    let dc3 = if g2().is_some() { status("extdi.g2.dc3") } else { Some("info-diff".into()) };
    let ok = code == Some(0)
        && t < Duration::from_secs(120)
        && nu.as_deref() == Some("info-diff")
        && dc3.as_deref() == Some("info-diff");
    outcome(ok, format!("exit {code:?} in {t:.2?}; ν_I {nu:?}, g2 dc3 {dc3:?}"))
}

type Criterion = (usize, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "structure validity", structure_validity),
        (2, "su(3) structure equations", extdi),
        (3, "hypercomplex structure on su(3)", hkt),
        (4, "multi-moment kernels", multimoment),
        (5, "nearly Kähler orbits", nk),
        (6, "positive and negative table scans", scans),
        (7, "determinant identities", determinants),
        (8, "positive gradings and extensions", table1),
        (9, "infinite families", families),
        (10, "unimodular (2,3)-trivial algebras", unimodular),
        (11, "property suites", properties),
        (12, "end-to-end verification", end_to_end),
    ];
    let mut failed = BTreeSet::new();
    for (n, name, f) in criteria {
        let start = Instant::now();
        let o = f();
        let known = KNOWN_RED.iter().find(|(k, _)| *k == n).map(|(_, why)| *why);
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {verdict}  {name} ({:.2?})  {}", start.elapsed(), o.detail);
        if let (false, Some(why)) = (o.ok, known) {
            println!("             known: {why}");
        }
        if !o.ok {
            failed.insert(n);
        }
    }
    let expected: BTreeSet<usize> = KNOWN_RED.iter().map(|(n, _)| *n).collect();
    if failed != expected {
        println!("failing criteria {failed:?}, expected exactly {expected:?}");
        std::process::exit(1);
    }
}
