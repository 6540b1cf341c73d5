use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use liekernel::catalog::nk::{g2_spec, nk_verify, sp2_spec, su2su2_spec, su3_spec, NKOrbitSpec};
use liekernel::catalog::{g2_data_path, load_g2, render};
use liekernel::gradings::families::{family_member, Family};
use liekernel::gradings::tables::{find_entry, violated, Table};
use liekernel::gradings::{find_positive_grading, grading_extension, validate_grading, Grading};
use liekernel::kernelmap::LieKernel;
use liekernel::liealg::LieAlgebra;
use liekernel::notation::{parse, print_algebra, ParamAlgebra};
use liekernel::report::Report;
use liekernel::scalars::{parse_rational, Bindings, Rational};
use liekernel::verify::{exit_code, verify_paper, Section, VerifyOptions};
use liekernel::Error;

#[derive(Parser)]
#[command(name = "liekernel", version, about = "Exact Lie algebra cohomology, Lie kernels and (2,3)-trivial algebras")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Parameter value, e.g. `l=-1/3`. Repeatable.
    #[arg(long = "param", global = true, value_name = "NAME=P/Q")]
    params: Vec<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct AlgebraArg {
    /// Structure equations such as "(0,21,l.31)".
    algebra: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse structure equations and print them normalized.
    Parse(AlgebraArg),
    /// Print an algebra with its parameters bound.
    Print(AlgebraArg),
    /// Betti numbers b0..bn.
    Betti(AlgebraArg),
    /// Jacobi identity, derived and lower central series, (2,3)-triviality.
    Check(AlgebraArg),
    /// Basis and dimension of the Lie kernel.
    Kernel(AlgebraArg),
    /// Orbit data for a catalog functional: su3, sp2, su2su2 or g2.
    Orbit {
        name: String,
        #[arg(long)]
        g2_data: Option<PathBuf>,
    },
    /// Find or validate a positive grading of a nilpotent algebra.
    Grading {
        algebra: String,
        #[arg(long, conflicts_with = "validate")]
        find: bool,
        /// Weights such as "1,1,2" or compact "1^22".
        #[arg(long)]
        validate: Option<String>,
    },
    /// The one-dimensional extension by a positive grading.
    Extend {
        algebra: String,
        /// Weights; found automatically when omitted.
        #[arg(long)]
        weights: Option<String>,
    },
    /// A member of an infinite family: r, r-jordan, r-diag, d, f1, f2, f3.
    Family {
        name: String,
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// An entry of a classification table, e.g. `table T3 p5.lambda --param l=1`.
    Table { table: String, id: String },
    /// Recompute the printed identities and report on each.
    VerifyPaper {
        #[arg(long = "section", value_name = "SECTION")]
        sections: Vec<String>,
        #[arg(long)]
        g2_data: Option<PathBuf>,
    },
}

type CliResult = Result<(Value, String, i32), Error>;

fn bindings(params: &[String]) -> Result<Bindings, Error> {
    let mut b = Bindings::new();
    for p in params {
        let (name, value) = p
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("--param expects NAME=P/Q, got `{p}`")))?;
        b.insert(name.trim(), parse_rational(value.trim())?)?;
    }
    Ok(b)
}

fn bound(text: &str, b: &Bindings) -> Result<LieAlgebra<Rational>, Error> {
    parse(text)?.bind(b)
}

fn weights(text: &str) -> Result<Vec<u32>, Error> {
    if text.contains(',') {
        text.split(',')
            .map(|w| w.trim().parse::<u32>().map_err(|_| Error::Usage(format!("bad weight `{w}`"))))
            .collect()
    } else {
        Ok(Grading::parse_compact(text)?.weights().to_vec())
    }
}

fn param_algebra_json(p: &ParamAlgebra) -> Value {
    json!({"algebra": p.to_string(), "dim": p.dim(), "params": p.params()})
}

fn check(g: &LieAlgebra<Rational>) -> (Value, String) {
    let c = g.classify();
    let sd = g.structure_data();
    let v = json!({
        "jacobi": g.jacobi_check().is_none(),
        "derived_series_dims": c.derived_series_dims,
        "lower_central_dims": c.lower_central_dims,
        "solvable": c.is_solvable,
        "nilpotent": c.is_nilpotent,
        "unimodular": c.is_unimodular,
        "b2": sd.b2,
        "b3": sd.b3,
        "23_trivial": sd.is_23_trivial(),
        "dets": sd.dets.as_ref().map(|d| d.iter().map(ToString::to_string).collect::<Vec<_>>()),
    });
    let text = format!(
        "jacobi: ok\nderived series: {:?}\nlower central series: {:?}\nsolvable: {}  nilpotent: {}  unimodular: {}\nb2 = {}, b3 = {}  (2,3)-trivial: {}",
        c.derived_series_dims,
        c.lower_central_dims,
        c.is_solvable,
        c.is_nilpotent,
        c.is_unimodular,
        sd.b2,
        sd.b3,
        sd.is_23_trivial()
    );
    (v, text)
}

fn orbit_spec(name: &str, g2_data: Option<PathBuf>) -> Result<NKOrbitSpec, Error> {
    match name {
        "su3" => su3_spec(),
        "sp2" => sp2_spec(),
        "su2su2" => Ok(su2su2_spec()),
        "g2" => Ok(g2_spec(&load_g2(&g2_data_path(g2_data.as_deref()))?)),
        _ => Err(Error::Usage(format!("unknown orbit `{name}`; expected su3, sp2, su2su2 or g2"))),
    }
}

fn run_verify(sections: &[String], g2_data: Option<PathBuf>) -> CliResult {
    let sections = sections.iter().map(|s| Section::from_str(s)).collect::<Result<Vec<_>, _>>()?;
    let reports = verify_paper(&sections, &VerifyOptions { g2_data });
    let code = exit_code(&reports);
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        Value::Array(reports.iter().map(Report::to_json).collect())
    };
    let text = reports.iter().map(Report::to_text).collect::<Vec<_>>().join("\n");
    Ok((json, text, code))
}

fn run(cli: Cli) -> CliResult {
    let b = bindings(&cli.params)?;
    match cli.cmd {
        Cmd::Parse(a) => {
            let p = parse(&a.algebra)?.normalized();
            Ok((param_algebra_json(&p), p.to_string(), 0))
        }
        Cmd::Print(a) => {
            let s = print_algebra(&bound(&a.algebra, &b)?);
            Ok((json!({"algebra": s}), s, 0))
        }
        Cmd::Betti(a) => {
            let betti = bound(&a.algebra, &b)?.betti_numbers();
            Ok((json!({"betti": betti}), format!("{betti:?}"), 0))
        }
        Cmd::Check(a) => {
            let (v, t) = check(&bound(&a.algebra, &b)?);
            Ok((v, t, 0))
        }
        Cmd::Kernel(a) => {
            let g = bound(&a.algebra, &b)?;
            let k = LieKernel::new(&g);
            let names: Vec<String> = (1..=g.dim()).map(|i| format!("e{i}")).collect();
            let basis: Vec<String> = k.basis().iter().map(|p| render(&p.transpose_side(), &names)).collect();
            let text = format!("dim P = {}\n{}", k.dim(), basis.join("\n"));
            Ok((json!({"dim": k.dim(), "basis": basis}), text, 0))
        }
        Cmd::Orbit { name, g2_data } => {
            let spec = orbit_spec(&name, g2_data)?;
            let o = spec.orbit()?;
            let dp = render(&o.dp, spec.algebra.names());
            let v = json!({"beta": spec.beta, "dp_beta": dp, "stabilizer_dim": o.stab_dim, "two_plectic": o.two_plectic});
            let text = format!(
                "beta = {}\nd_P beta = {dp}\nstabilizer dimension {}\n2-plectic: {}\n\n{}",
                spec.beta,
                o.stab_dim,
                o.two_plectic,
                nk_verify(&spec).to_text()
            );
            Ok((v, text, 0))
        }
        Cmd::Grading { algebra, find, validate } => {
            let k = bound(&algebra, &b)?;
            match (find, validate) {
                (_, Some(w)) => {
                    let w = weights(&w)?;
                    let ok = validate_grading(&k, &w)?;
                    Ok((json!({"weights": w, "valid": ok}), format!("{ok}"), if ok { 0 } else { 1 }))
                }
                _ => match find_positive_grading(&k)? {
                    Some(g) => Ok((json!({"weights": g.weights(), "compact": g.to_string()}), format!("{:?}", g.weights()), 0)),
                    None => Ok((json!({"weights": null}), "no positive grading".into(), 1)),
                },
            }
        }
        Cmd::Extend { algebra, weights: w } => {
            let k = bound(&algebra, &b)?;
            let w = match w {
                Some(w) => weights(&w)?,
                None => find_positive_grading(&k)?
                    .ok_or_else(|| Error::InvalidGrading("no positive grading".into()))?
                    .weights()
                    .to_vec(),
            };
            let g = grading_extension(&k, &w)?;
            let s = print_algebra(&g);
            Ok((json!({"algebra": s, "weights": w, "23_trivial": g.is_23_trivial()}), s, 0))
        }
        Cmd::Family { name, n, k } => {
            let m = family_member(Family::from_str(&name)?, n, k)?;
            if b.is_empty() && !m.params.is_empty() {
                let constraints: Vec<String> = m.constraints.iter().map(|c| c.label.clone()).collect();
                let text = format!("{}\nconstraints: {}", m.algebra, constraints.join("; "));
                return Ok((json!({"algebra": m.algebra.to_string(), "params": m.params, "constraints": constraints}), text, 0));
            }
            let g = m.bind(&b)?;
            let s = print_algebra(&g);
            Ok((json!({"algebra": s, "23_trivial": g.is_23_trivial()}), s, 0))
        }
        Cmd::Table { table, id } => {
            let e = find_entry(Table::from_str(&table)?, &id)?;
            if b.is_empty() && !e.params().is_empty() {
                return Ok((e.to_json(), e.structure.clone(), 0));
            }
            let g = e.algebra().bind(&b)?;
            let v = violated(&e.constraints, &b)?.map(|c| c.label.clone());
            let s = print_algebra(&g);
            let text = match &v {
                None => format!("{s}\nadmissible"),
                Some(c) => format!("{s}\nnot admissible: {c}"),
            };
            Ok((json!({"id": e.id, "algebra": s, "admissible": v.is_none(), "violated": v}), text, 0))
        }
        Cmd::VerifyPaper { sections, g2_data } => run_verify(&sections, g2_data),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_json = cli.json;
    match run(cli) {
        Ok((v, text, code)) => {
            let out = if as_json { serde_json::to_string_pretty(&v).expect("serializable") } else { text };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
