//! The verification suite: every printed identity recomputed, one report per
//! section.

mod scans;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::catalog::hkt::{hkt_verify, multimoment_su3_verify};
use crate::catalog::nk::{g2_spec, nk_verify, sp2_spec, su2su2_spec, su3_spec, NKOrbitSpec};
use crate::catalog::{
    build_su2su2, g2_data_path, g2_printed_report, load_g2, parse_named, render, sp2_matrices, su3_matrices,
    su3_printed_metric, term_diff, SP2_PRINTED, SU3_PRINTED,
};
use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::report::{Check, Report, Status};
use crate::scalars::Rational;

pub use scans::{
    determinants_verify, extension_dets, families_verify, family_members, five_dim_tables, gradings_verify,
    multiset_assignment, negative_scan, printed_derived, tables_verify, unimodular_verify, NegativeScan, DET_GRID,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Section {
    Extdi,
    Hkt,
    Multimoment,
    Nk,
    Gradings,
    Tables,
    Determinants,
    Families,
    Unimodular,
}

impl Section {
    pub const ALL: [Section; 9] = [
        Section::Extdi,
        Section::Hkt,
        Section::Multimoment,
        Section::Nk,
        Section::Gradings,
        Section::Tables,
        Section::Determinants,
        Section::Families,
        Section::Unimodular,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Section::Extdi => "extdi",
            Section::Hkt => "hkt",
            Section::Multimoment => "multimoment",
            Section::Nk => "nk",
            Section::Gradings => "gradings",
            Section::Tables => "tables",
            Section::Determinants => "determinants",
            Section::Families => "families",
            Section::Unimodular => "unimodular",
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Section {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Section::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown section `{s}`")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// g₂ data file; falls back to the environment variable, then the
    /// bundled file.
    pub g2_data: Option<PathBuf>,
}

/// The g₂ algebra, `Ok(None)` if its data file is absent.
fn g2(opts: &VerifyOptions) -> Result<Option<LieAlgebra<Rational>>> {
    match load_g2(&g2_data_path(opts.g2_data.as_deref())) {
        Ok(g) => Ok(Some(g)),
        Err(Error::Unavailable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn g2_unavailable(id: &str, anchor: &str, opts: &VerifyOptions) -> Check {
    Check::new(
        id,
        anchor,
        Status::Skip,
        json!({"reason": "g2 data unavailable", "path": g2_data_path(opts.g2_data.as_deref()).display().to_string()}),
    )
}

fn g2_broken(id: &str, anchor: &str, e: &Error) -> Check {
    Check::new(id, anchor, Status::Fail, json!({"error": e.to_string()}))
}

fn printed_equations(
    r: &mut Report,
    prefix: &str,
    g: &LieAlgebra<Rational>,
    printed: &[(&str, &str)],
) {
    for (name, text) in printed {
        let id = format!("{prefix}.d{name}");
        let anchor = format!("{prefix} structure equation d{name}");
        let k = g.index_of(name).expect("known basis name");
        r.push(match parse_named::<Rational>(text, g.names(), 2, None) {
            Ok(p) if &p == g.diff(k) => Check::new(id, anchor, Status::Pass, json!({"value": render(&p, g.names())})),
            Ok(p) => Check::new(
                id,
                anchor,
                Status::Fail,
                json!({"computed": render(g.diff(k), g.names()), "printed": text, "terms": term_diff(g.diff(k), &p, g.names())}),
            ),
            Err(e) => Check::new(id, anchor, Status::Fail, json!({"error": e.to_string()})),
        });
    }
}

fn jacobi(r: &mut Report, name: &str, g: &LieAlgebra<Rational>) {
    r.push(jacobi_check(format!("extdi.{name}.jacobi"), name, g));
}

pub(crate) fn jacobi_check(id: String, what: &str, g: &LieAlgebra<Rational>) -> Check {
    let w = g.jacobi_check();
    let witness = match &w {
        None => json!({"dim": g.dim()}),
        Some(w) => json!({"triple": [w.triple.0 + 1, w.triple.1 + 1, w.triple.2 + 1], "target": w.target + 1}),
    };
    Check::from_bool(id, format!("Jacobi identity for {what}"), w.is_none(), witness)
}

/// Structure equations of su(3) and sp(2) from matrix commutators, the su(3)
/// metric, Jacobi for the catalog algebras and the printed g₂ equations.
pub fn extdi_verify(opts: &VerifyOptions) -> Report {
    let mut r = Report::new("extdi");
    let su3 = su3_matrices();
    match su3.algebra() {
        Ok(g) => {
            let printed: Vec<(&str, &str)> = g.names().iter().map(String::as_str).zip(SU3_PRINTED).collect();
            printed_equations(&mut r, "extdi.su3", &g, &printed);
            r.push(Check::from_bool(
                "extdi.su3.metric",
                "su(3) metric equals minus the trace form",
                su3.trace_form() == su3_printed_metric(),
                json!({"a1a1": su3.trace_form()[(0, 0)].to_string(), "a1a2": su3.trace_form()[(0, 1)].to_string()}),
            ));
            jacobi(&mut r, "su3", &g);
        }
        Err(e) => r.push(Check::new("extdi.su3", "su(3) from matrices", Status::Fail, json!({"error": e.to_string()}))),
    }
    match sp2_matrices().algebra() {
        Ok(g) => {
            printed_equations(&mut r, "extdi.sp2", &g, &SP2_PRINTED);
            jacobi(&mut r, "sp2", &g);
        }
        Err(e) => r.push(Check::new("extdi.sp2", "sp(2) from matrices", Status::Fail, json!({"error": e.to_string()}))),
    }
    jacobi(&mut r, "su2su2", &build_su2su2());
    match g2(opts) {
        Ok(Some(g)) => {
            jacobi(&mut r, "g2", &g);
            r.extend(g2_printed_report(&g).relabel("extdi."));
        }
        Ok(None) => {
            r.push(g2_unavailable("extdi.g2.jacobi", "Jacobi identity for g2", opts));
            r.push(g2_unavailable("extdi.g2.equations", "printed g2 structure equations", opts));
        }
        Err(e) => r.push(g2_broken("extdi.g2.jacobi", "Jacobi identity for g2", &e)),
    }
    r.sort();
    r
}

pub fn nk_section(opts: &VerifyOptions) -> Report {
    let mut r = Report::new("nk");
    let mut specs: Vec<Result<NKOrbitSpec>> = vec![su3_spec(), sp2_spec(), Ok(su2su2_spec())];
    match g2(opts) {
        Ok(Some(g)) => specs.push(Ok(g2_spec(&g))),
        Ok(None) => r.push(g2_unavailable("nk.g2", "nearly Kähler orbit of g2", opts)),
        Err(e) => r.push(g2_broken("nk.g2", "nearly Kähler orbit of g2", &e)),
    }
    let reports: Vec<Report> = specs
        .into_par_iter()
        .map(|s| match s {
            Ok(s) => nk_verify(&s),
            Err(e) => {
                let mut r = Report::new("nk");
                r.push(Check::new("nk.build", "catalog algebra", Status::Fail, json!({"error": e.to_string()})));
                r
            }
        })
        .collect();
    for x in reports {
        r.extend(x);
    }
    r.sort();
    r
}

/// Runs one section and stamps its elapsed time.
pub fn run_section(section: Section, opts: &VerifyOptions) -> Report {
    let start = Instant::now();
    let mut r = match section {
        Section::Extdi => extdi_verify(opts),
        Section::Hkt => hkt_verify(),
        Section::Multimoment => multimoment_su3_verify(),
        Section::Nk => nk_section(opts),
        Section::Gradings => gradings_verify(),
        Section::Tables => tables_verify(),
        Section::Determinants => determinants_verify(),
        Section::Families => families_verify(),
        Section::Unimodular => unimodular_verify(),
    };
    r.suite = section.name().to_string();
    r.elapsed = start.elapsed();
    r
}

/// Runs the requested sections (all when empty) in the given order.
pub fn verify_paper(sections: &[Section], opts: &VerifyOptions) -> Vec<Report> {
    let chosen: Vec<Section> = if sections.is_empty() { Section::ALL.to_vec() } else { sections.to_vec() };
    chosen.iter().map(|&s| run_section(s, opts)).collect()
}

/// 0 if no check failed anywhere, else 1.
pub fn exit_code(reports: &[Report]) -> i32 {
    reports.iter().map(Report::exit_code).max().unwrap_or(0)
}
