//! Parameter scans over the classification tables and the infinite families.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::jacobi_check;
use crate::error::Result;
use crate::gradings::families::{family_member, Family, FamilyMember};
use crate::gradings::tables::{entries, violated, Table, TableEntry};
use crate::gradings::{find_positive_grading, grading_extension, validate_grading, Grading};
use crate::liealg::{Derivation, LieAlgebra};
use crate::linalg::Subspace;
use crate::notation::parse;
use crate::report::{Check, Report, Status};
use crate::sampling::sample_bindings;
use crate::scalars::{rat, Bindings, CoeffExpr, Rational};

fn bind_plain(text: &str) -> Result<LieAlgebra<Rational>> {
    parse(text)?.bind(&Bindings::new())
}

fn show(b: &Bindings) -> Value {
    Value::Object(b.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect())
}

fn admissible(e: &TableEntry) -> impl Fn(&Bindings) -> bool + '_ {
    move |b| matches!(violated(&e.constraints, b), Ok(None))
}

fn short_id(e: &TableEntry) -> String {
    e.id.to_ascii_lowercase()
}

fn finish(name: &str, checks: Vec<Check>) -> Report {
    let mut r = Report::new(name);
    checks.into_iter().for_each(|c| r.push(c));
    r.sort();
    r
}

/// `span{e₂, …, e_n}`.
fn tail_basis(n: usize) -> Vec<Vec<Rational>> {
    (1..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// The subalgebra `span{e₂,…,e_n}`, checked to be the derived algebra.
fn derived_tail(g: &LieAlgebra<Rational>) -> Option<LieAlgebra<Rational>> {
    let basis = tail_basis(g.dim());
    (g.derived_algebra() == Subspace::span(g.dim(), basis.clone())).then(|| g.subalgebra(&basis).ok()).flatten()
}

// ---------------------------------------------------------------------------
// First table: positive gradings and their extensions.

/// An assignment of the multiset `weights` to the basis that is a grading,
/// trying the written order first.
pub fn multiset_assignment(k: &LieAlgebra<Rational>, weights: &[u32]) -> Option<Vec<u32>> {
    if weights.len() != k.dim() {
        return None;
    }
    if validate_grading(k, weights).ok()? {
        return Some(weights.to_vec());
    }
    let mut sorted = weights.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .copied()
        .permutations(sorted.len())
        .unique()
        .find(|w| validate_grading(k, w).unwrap_or(false))
}

fn table1_checks(e: &TableEntry) -> Vec<Check> {
    let id = |s: &str| format!("gradings.{}.{s}", short_id(e));
    let what = format!("nilpotent algebra {}", e.structure);
    let k = match e.algebra().bind_unchecked(&Bindings::new()) {
        Ok(k) => k,
        Err(err) => return vec![Check::new(id("parse"), what, Status::Fail, json!({"error": err.to_string()}))],
    };
    let mut out = vec![jacobi_check(id("jacobi"), &what, &k)];
    let printed = Grading::parse_compact(e.grading.expect("first table rows carry gradings")).expect("table data");
    let assignment = multiset_assignment(&k, printed.weights());
    out.push(Check::from_bool(
        id("printed"),
        format!("printed grading {printed} of {}", e.structure),
        assignment.is_some(),
        json!({"weights": assignment}),
    ));
    let found = find_positive_grading(&k);
    let solver = found.as_ref().ok().cloned().flatten();
    out.push(Check::from_bool(
        id("solver"),
        format!("a positive grading of {} exists", e.structure),
        solver.as_ref().is_some_and(|g| validate_grading(&k, g.weights()).unwrap_or(false)),
        match &found {
            Ok(g) => json!({"grading": g.as_ref().map(ToString::to_string)}),
            Err(err) => json!({"error": err.to_string()}),
        },
    ));
    if let Some(g) = &solver {
        let mut a = g.weights().to_vec();
        let mut b = printed.weights().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        let status = if a == b { Status::Pass } else { Status::InfoDiff };
        out.push(Check::new(
            id("solver_vs_printed"),
            "solver's minimal grading against the printed one",
            status,
            json!({"solver": g.to_string(), "printed": printed.to_string()}),
        ));
    }
    let weights = assignment.or_else(|| solver.map(|g| g.weights().to_vec()));
    out.push(match weights.map(|w| grading_extension(&k, &w)) {
        Some(Ok(ext)) => {
            let derived_ok = derived_tail(&ext).is_some_and(|d| d == k);
            let ok = ext.jacobi_check().is_none() && ext.is_solvable() && derived_ok && ext.is_23_trivial();
            Check::from_bool(
                id("extension"),
                format!("(2,3)-trivial extension of {}", e.structure),
                ok,
                json!({"betti": ext.betti_numbers(), "derived_is_input": derived_ok}),
            )
        }
        Some(Err(err)) => Check::new(id("extension"), "grading extension", Status::Fail, json!({"error": err.to_string()})),
        None => Check::new(id("extension"), "grading extension", Status::Fail, json!({"error": "no grading"})),
    });
    out
}

const EXAMPLE_ALGEBRA: &str = "(0^2,12,13,14+23,24+15)";
const EXAMPLE_WEIGHTS: [u32; 6] = [1, 2, 3, 4, 5, 6];
const EXAMPLE_PRINTED: &str = "(0,12,2.13,3.14+23,4.15+24,5.16+25+34,6.17+24+26)";
/// The printed extension with its last `24` read as `35`, the image of the
/// `24` in `de⁶ = e²⁴ + e¹⁵`.
const EXAMPLE_CORRECTED: &str = "(0,12,2.13,3.14+23,4.15+24,5.16+25+34,6.17+35+26)";

fn example_checks() -> Vec<Check> {
    let k = bind_plain(EXAMPLE_ALGEBRA).expect("example parses");
    let grading = find_positive_grading(&k).ok().flatten();
    let mut out = vec![Check::from_bool(
        "gradings.example.grading",
        "example grading 123456",
        grading.as_ref().is_some_and(|g| g.weights() == EXAMPLE_WEIGHTS),
        json!({"grading": grading.map(|g| g.to_string())}),
    )];
    let d = Grading::new(EXAMPLE_WEIGHTS.to_vec()).expect("positive").derivation::<Rational>();
    // The display writes A = e₁ with [e_j, A] = w e_j, the opposite sign of
    // our extension; both orientations are isomorphic.
    let ext = grading_extension(&k, &EXAMPLE_WEIGHTS).expect("valid grading");
    let flipped = k.extend_by_derivation(&d.scale(&-Rational::one())).expect("derivation");
    let corrected = bind_plain(EXAMPLE_CORRECTED).expect("parses");
    out.push(Check::from_bool(
        "gradings.example.extension",
        "example extension, with de⁷ read as 6.17+35+26",
        corrected == flipped && ext.is_23_trivial() && flipped.is_23_trivial(),
        json!({"computed": crate::notation::print_algebra(&flipped), "betti": ext.betti_numbers()}),
    ));
    let printed = parse(EXAMPLE_PRINTED).and_then(|p| p.bind(&Bindings::new()));
    out.push(match printed {
        Ok(p) if p == flipped => Check::new("gradings.example.printed", "example extension as printed", Status::Pass, json!({})),
        Ok(_) => Check::new(
            "gradings.example.printed",
            "example extension as printed",
            Status::InfoDiff,
            json!({"printed": EXAMPLE_PRINTED, "computed": crate::notation::print_algebra(&flipped),
                   "note": "the 24 in the last entry should be 35, the shifted image of the 24 in the sixth entry"}),
        ),
        Err(err) => Check::new(
            "gradings.example.printed",
            "example extension as printed",
            Status::InfoDiff,
            json!({"printed": EXAMPLE_PRINTED, "error": err.to_string()}),
        ),
    });
    out
}

/// The first table's printed count of algebras.
pub const TABLE1_CLAIMED: usize = 50;

pub fn gradings_verify() -> Report {
    let t1 = entries(Table::T1);
    let mut checks: Vec<Check> = t1.par_iter().flat_map(table1_checks).collect();
    // A ± row names two algebras, and the claimed count includes both.
    let written: BTreeSet<String> = t1.iter().map(|e| e.printed.clone().unwrap_or_else(|| e.structure.clone())).collect();
    checks.push(Check::new(
        "gradings.table1.count",
        "number of algebras in the first table",
        if t1.len() == TABLE1_CLAIMED { Status::Pass } else { Status::InfoDiff },
        json!({"claimed": TABLE1_CLAIMED, "algebras": t1.len(), "rows_as_written": written.len()}),
    ));
    checks.extend(example_checks());
    finish("gradings", checks)
}

// ---------------------------------------------------------------------------
// Second and third tables: positive and negative scans.

pub const POSITIVE_SAMPLES: usize = 20;
pub const JACOBI_SAMPLES: usize = 10;
pub const NEGATIVE_SAMPLES: usize = 3;

pub fn five_dim_tables() -> Vec<TableEntry> {
    entries(Table::T2).into_iter().chain(entries(Table::T3)).collect()
}

fn positive_checks(e: &TableEntry) -> Vec<Check> {
    let id = |s: &str| format!("tables.{}.{s}", short_id(e));
    let pa = e.algebra();
    let samples = sample_bindings(&e.params(), POSITIVE_SAMPLES, &format!("positive/{}", e.id), admissible(e));
    let mut jacobi_bad = Vec::new();
    let mut betti_bad = Vec::new();
    for (n, b) in samples.iter().enumerate() {
        let g = match pa.bind_unchecked(b) {
            Ok(g) => g,
            Err(err) => {
                jacobi_bad.push(json!({"at": show(b), "error": err.to_string()}));
                continue;
            }
        };
        if g.jacobi_check().is_some() {
            if n < JACOBI_SAMPLES {
                jacobi_bad.push(show(b));
            }
            continue;
        }
        let betti = [g.betti(1), g.betti(2), g.betti(3)];
        if betti != [1, 0, 0] {
            betti_bad.push(json!({"at": show(b), "b1_b2_b3": betti}));
        }
    }
    let n = samples.len();
    let enough = n >= POSITIVE_SAMPLES || e.params().is_empty();
    vec![
        Check::from_bool(
            id("jacobi"),
            format!("Jacobi identity for {} at seeded samples", e.name),
            jacobi_bad.is_empty() && n > 0,
            json!({"samples": n.min(JACOBI_SAMPLES), "failures": jacobi_bad}),
        ),
        Check::from_bool(
            id("positive"),
            format!("{} has b1 = 1, b2 = b3 = 0 at admissible samples", e.name),
            betti_bad.is_empty() && enough,
            json!({"samples": n, "failures": betti_bad}),
        ),
    ]
}

/// Bindings that make `expr` vanish: the last parameter with a nonzero
/// coefficient is solved for, the others are sampled.
fn excluded_points(e: &TableEntry, expr: &CoeffExpr, tag: &str) -> Option<Vec<Bindings>> {
    let (c0, lin) = expr.affine_form()?;
    let (solved, coeff) = lin.iter().rev().find(|(_, c)| !c.is_zero())?;
    let others: Vec<String> = e.params().into_iter().filter(|p| p != solved).collect();
    let count = if others.is_empty() { 1 } else { NEGATIVE_SAMPLES };
    let points = sample_bindings(&others, count, tag, |_| true)
        .into_iter()
        .map(|b| {
            let mut rest = c0.clone();
            for (p, c) in &lin {
                if p != solved {
                    rest += c * b.get(p).expect("sampled");
                }
            }
            b.with(solved.clone(), -rest / coeff)
        })
        .collect();
    Some(points)
}

/// Excluded parameters that still give a Lie algebra, with `b₂ + b₃` there.
///
/// A point with `b₂ = b₃ = 0` is sorted by its determinants: all nonzero
/// means the exclusion is a normal-form choice rather than a cohomological
/// one, which the table does not distinguish.
pub struct NegativeScan {
    pub tested: usize,
    pub not_lie: usize,
    pub normal_form: Vec<Value>,
    pub contradictions: Vec<Value>,
    pub nonaffine: Vec<String>,
}

pub fn negative_scan(e: &TableEntry) -> NegativeScan {
    let pa = e.algebra();
    let mut out =
        NegativeScan { tested: 0, not_lie: 0, normal_form: vec![], contradictions: vec![], nonaffine: vec![] };
    for c in &e.constraints {
        for (i, expr) in c.exprs.iter().enumerate() {
            let Some(points) = excluded_points(e, expr, &format!("negative/{}/{}/{i}", e.id, c.label)) else {
                out.nonaffine.push(c.label.clone());
                continue;
            };
            for b in points {
                let Ok(g) = pa.bind(&b) else {
                    out.not_lie += 1;
                    continue;
                };
                out.tested += 1;
                if g.betti(2) + g.betti(3) > 0 {
                    continue;
                }
                let dets = extension_dets(&g).ok();
                let w = json!({"constraint": c.label, "at": show(&b),
                               "dets": dets.as_ref().map(|d| d.iter().map(ToString::to_string).collect::<Vec<_>>())});
                if dets.is_some_and(|d| d.iter().all(|x| !x.is_zero())) {
                    out.normal_form.push(w);
                } else {
                    out.contradictions.push(w);
                }
            }
        }
    }
    out
}

fn negative_check(e: &TableEntry) -> Option<Check> {
    if e.constraints.is_empty() {
        return None;
    }
    let s = negative_scan(e);
    let status = if !s.contradictions.is_empty() || !s.nonaffine.is_empty() || s.tested == 0 {
        Status::Fail
    } else if !s.normal_form.is_empty() {
        Status::InfoDiff
    } else {
        Status::Pass
    };
    Some(Check::new(
        format!("tables.{}.negative", short_id(e)),
        format!("excluded parameters of {} give b2 + b3 > 0", e.name),
        status,
        json!({"tested": s.tested, "not_lie": s.not_lie, "trivial_with_nonzero_dets": s.normal_form,
               "contradictions": s.contradictions, "nonaffine": s.nonaffine}),
    ))
}

pub fn tables_verify() -> Report {
    let t1 = entries(Table::T1);
    let mut checks: Vec<Check> = t1
        .par_iter()
        .filter_map(|e| {
            let k = e.algebra().bind_unchecked(&Bindings::new()).ok()?;
            Some(jacobi_check(format!("tables.{}.jacobi", short_id(e)), &e.structure, &k))
        })
        .collect();
    let rest = five_dim_tables();
    checks.extend(
        rest.par_iter()
            .flat_map(|e| {
                let mut v = positive_checks(e);
                v.extend(negative_check(e));
                v
            })
            .collect::<Vec<_>>(),
    );
    finish("tables", checks)
}

// ---------------------------------------------------------------------------
// Determinants of the extending derivation on the cohomology of k.

/// Values per parameter; eight points exceed every printed degree.
pub const DET_GRID: [(i64, i64); 8] = [(-3, 1), (-2, 1), (-1, 1), (-1, 2), (1, 3), (1, 1), (2, 1), (5, 2)];

/// `a₁, a₂, a₃` for `ad(e₁)` on `k = span{e₂,…,e_n}`.
pub fn extension_dets(g: &LieAlgebra<Rational>) -> Result<[Rational; 3]> {
    let basis = tail_basis(g.dim());
    let k = g.subalgebra(&basis)?;
    let d = Derivation::new(&k, g.restrict_endo(g.ad(0), &basis)?)?;
    Ok([1, 2, 3].map(|i| k.induced_cohomology_det(&d, i)))
}

fn determinant_check(e: &TableEntry) -> Option<Check> {
    let printed = e.dets_exprs()?;
    let params = e.params();
    let grid: Vec<Rational> = DET_GRID.iter().map(|&(p, q)| rat(p, q)).collect();
    let pa = e.algebra();
    let mut points = 0;
    let mut skipped = 0;
    let mut bad = Vec::new();
    for values in params.iter().map(|_| grid.iter()).multi_cartesian_product() {
        let b = Bindings::from_pairs(params.iter().cloned().zip(values.into_iter().cloned()));
        let Ok(g) = pa.bind(&b) else {
            skipped += 1;
            continue;
        };
        points += 1;
        let computed = match extension_dets(&g) {
            Ok(d) => d,
            Err(err) => {
                bad.push(json!({"at": show(&b), "error": err.to_string()}));
                continue;
            }
        };
        for (i, (c, p)) in computed.iter().zip(&printed).enumerate() {
            let want = p.eval(&b).expect("bound");
            if *c != want {
                bad.push(json!({"at": show(&b), "a": i + 1, "computed": c.to_string(), "printed": want.to_string()}));
            }
        }
    }
    Some(Check::from_bool(
        format!("determinants.{}", short_id(e)),
        format!("printed a1, a2, a3 for {}", e.name),
        bad.is_empty() && points > 0,
        json!({"points": points, "skipped_non_lie": skipped, "failures": bad.into_iter().take(5).collect::<Vec<_>>()}),
    ))
}

pub fn determinants_verify() -> Report {
    let checks = five_dim_tables().par_iter().filter_map(determinant_check).collect();
    finish("determinants", checks)
}

// ---------------------------------------------------------------------------
// Infinite families.

pub const FAMILY_MAX_DIM: usize = 9;
pub const FAMILY_SAMPLES: usize = 5;

fn family_key(f: Family) -> &'static str {
    match f {
        Family::R => "r",
        Family::RJordan => "r-jordan",
        Family::RDiag => "r-diag",
        Family::D => "d",
        Family::F1 => "f1",
        Family::F2 => "f2",
        Family::F3 => "f3",
    }
}

/// Every `(family, n, k)` with `n ≤ max_dim`.
pub fn family_members(max_dim: usize) -> Vec<FamilyMember> {
    let mut out = Vec::new();
    for f in Family::ALL {
        let ks: Vec<Option<usize>> = if f.uses_k() { (1..max_dim).map(Some).collect() } else { vec![None] };
        for n in 3..=max_dim {
            for &k in &ks {
                if let Ok(m) = family_member(f, n, k) {
                    out.push(m);
                }
            }
        }
    }
    out
}

fn member_id(m: &FamilyMember) -> String {
    match m.k {
        Some(k) => format!("families.{}.n{}.k{k}", family_key(m.family), m.n),
        None => format!("families.{}.n{}", family_key(m.family), m.n),
    }
}

fn member_check(m: &FamilyMember) -> Check {
    let id = member_id(m);
    let samples = sample_bindings(&m.params, FAMILY_SAMPLES, &id, |b| m.admissible(b).unwrap_or(false));
    let mut bad = Vec::new();
    for b in &samples {
        match m.algebra.bind(b) {
            Ok(g) if g.is_23_trivial() => {}
            Ok(g) => bad.push(json!({"at": show(b), "b2": g.betti(2), "b3": g.betti(3)})),
            Err(err) => bad.push(json!({"at": show(b), "error": err.to_string()})),
        }
    }
    let enough = samples.len() == FAMILY_SAMPLES || m.params.is_empty();
    Check::from_bool(
        format!("{id}.trivial"),
        format!("{} in dimension {} is (2,3)-trivial", m.family.name(), m.n),
        bad.is_empty() && enough && !samples.is_empty(),
        json!({"samples": samples.len(), "failures": bad}),
    )
}

/// The printed derived algebra of an `f` family member, in its own basis.
pub fn printed_derived(f: Family, n: usize) -> Option<String> {
    let m = n - 1;
    let mut e: Vec<String> = vec!["0".into(), "0".into()];
    match f {
        Family::F1 => (3..=m).for_each(|i| e.push(format!("{}1", i - 1))),
        Family::F2 => (3..=m).for_each(|i| {
            e.push(if i < 5 { format!("{}1", i - 1) } else { format!("{}1+{}2", i - 1, i - 2) })
        }),
        Family::F3 => {
            (3..m).for_each(|i| e.push(format!("{}1", i - 1)));
            let k = (n - 1) / 2;
            let mut last = format!("{}1", n - 2);
            for j in 2..=k {
                let sign = if j % 2 == 0 { '-' } else { '+' };
                last.push_str(&format!("{sign}{}{j}", n - j));
            }
            e.push(last);
        }
        _ => return None,
    }
    Some(format!("({})", e.join(",")))
}

fn derived_check(m: &FamilyMember) -> Option<Check> {
    let printed = printed_derived(m.family, m.n)?;
    let weights = m.derived_grading.clone()?;
    let id = format!("{}.derived", member_id(m));
    let g = m.algebra.bind(&Bindings::new());
    let want = bind_plain(&printed);
    let ok = match (&g, &want) {
        (Ok(g), Ok(want)) => {
            let d = derived_tail(g);
            d.as_ref() == Some(want) && validate_grading(want, &weights).unwrap_or(false)
        }
        _ => false,
    };
    Some(Check::from_bool(
        id,
        format!("derived algebra of {} in dimension {} and its grading", m.family.name(), m.n),
        ok,
        json!({"printed": printed, "grading": Grading::new(weights).map(|g| g.to_string()).ok()}),
    ))
}

fn f1_matches_p5() -> Check {
    let f1 = family_member(Family::F1, 5, None).and_then(|m| m.algebra.bind(&Bindings::new()));
    let p5 = crate::gradings::tables::table_entry(Table::T3, "p5.lambda", &Bindings::new().with("l", Rational::one()));
    let ok = matches!((&f1, &p5), (Ok(a), Ok(b)) if *a == b.algebra && b.admissible);
    Check::from_bool("families.f1.n5.equals_p5", "f1 in dimension 5 is p5 at l = 1", ok, json!({}))
}

pub fn families_verify() -> Report {
    let members = family_members(FAMILY_MAX_DIM);
    let mut checks: Vec<Check> = members
        .par_iter()
        .flat_map(|m| {
            let mut v = vec![member_check(m)];
            v.extend(derived_check(m));
            v
        })
        .collect();
    checks.push(f1_matches_p5());
    finish("families", checks)
}

// ---------------------------------------------------------------------------
// Unimodular (2,3)-trivial algebras.

pub const UNIMODULAR_SAMPLES: usize = 10;

fn unimodular_checks(e: &TableEntry) -> Vec<Check> {
    let id = |s: &str| format!("unimodular.{}.{s}", short_id(e));
    let pa = e.algebra();
    let params = e.params();
    let mut out = Vec::new();
    let locus = e.unimodular_substitution();
    if let Some(subs) = &locus {
        let (solved, expr): (&String, &CoeffExpr) = subs.iter().next().expect("one substitution");
        let others: Vec<String> = params.iter().filter(|p| *p != solved).cloned().collect();
        let complete = |b: &Bindings| -> Option<Bindings> {
            let v = expr.eval(b).ok()?;
            Some(b.clone().with(solved.clone(), v))
        };
        let samples: Vec<Bindings> = sample_bindings(&others, UNIMODULAR_SAMPLES, &format!("unimodular-on/{}", e.id), |b| {
            complete(b).is_some_and(|full| admissible(e)(&full))
        })
        .iter()
        .filter_map(complete)
        .collect();
        let bad: Vec<Value> = samples
            .iter()
            .filter(|b| !pa.bind(b).is_ok_and(|g| g.is_unimodular() && g.is_23_trivial()))
            .map(show)
            .collect();
        let (p, x) = e.unimodular.expect("locus");
        out.push(Check::from_bool(
            id("on_locus"),
            format!("{} with {p} = {x} is unimodular and (2,3)-trivial", e.name),
            bad.is_empty() && !samples.is_empty(),
            json!({"samples": samples.len(), "failures": bad}),
        ));
    }
    let on_locus = |b: &Bindings| -> bool {
        locus.as_ref().is_some_and(|subs| {
            subs.iter().all(|(p, x)| x.eval(b).ok().as_ref() == b.get(p))
        })
    };
    let samples = sample_bindings(&params, UNIMODULAR_SAMPLES, &format!("unimodular-off/{}", e.id), |b| {
        admissible(e)(b) && !on_locus(b)
    });
    let bad: Vec<Value> = samples.iter().filter(|b| pa.bind(b).map_or(true, |g| g.is_unimodular())).map(show).collect();
    out.push(Check::from_bool(
        id("off_locus"),
        if locus.is_some() {
            format!("{} away from its unimodular locus is not unimodular", e.name)
        } else {
            format!("{} is not unimodular", e.name)
        },
        bad.is_empty() && !samples.is_empty(),
        json!({"samples": samples.len(), "failures": bad}),
    ));
    out
}

pub fn unimodular_verify() -> Report {
    let all = five_dim_tables();
    let mut checks: Vec<Check> = all.par_iter().flat_map(unimodular_checks).collect();
    let r = LieAlgebra::<Rational>::abelian(1);
    checks.push(Check::from_bool(
        "unimodular.r1",
        "the line is unimodular and (2,3)-trivial",
        r.is_unimodular() && r.is_23_trivial(),
        json!({}),
    ));
    let low: Vec<&str> = all
        .iter()
        .filter(|e| e.algebra().dim() <= 4 && e.unimodular.is_some())
        .map(|e| e.name)
        .collect();
    let r2 = bind_plain("(0,21)").expect("parses");
    checks.push(Check::from_bool(
        "unimodular.low_dimension",
        "no (2,3)-trivial algebra of dimension two to four is unimodular",
        low.is_empty() && r2.is_23_trivial() && !r2.is_unimodular(),
        json!({"entries_with_locus": low}),
    ));
    finish("unimodular", checks)
}
