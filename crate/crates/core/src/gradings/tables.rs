//! The classification tables: nilpotent algebras of dimension at most six
//! with positive gradings, and the (2,3)-trivial algebras of dimensions three
//! to five with their parameter constraints.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::notation::{parse, parse_coeff, ParamAlgebra};
use crate::scalars::{Bindings, CoeffExpr, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table {
    /// Nilpotent algebras of dimension ≤ 6 with gradings.
    T1,
    /// (2,3)-trivial algebras of dimensions 3 and 4.
    T2,
    /// (2,3)-trivial algebras of dimension 5.
    T3,
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T1" | "1" => Ok(Table::T1),
            "T2" | "2" => Ok(Table::T2),
            "T3" | "3" => Ok(Table::T3),
            _ => Err(Error::UnknownTableEntry(s.to_string())),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Table::T1 => "T1",
            Table::T2 => "T2",
            Table::T3 => "T3",
        })
    }
}

/// A family of "expression ≠ value" conditions sharing one printed label.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub label: String,
    /// Each must be nonzero.
    pub exprs: Vec<CoeffExpr>,
}

impl Constraint {
    /// Parses `lhs != v1, v2, …`.
    pub fn parse(text: &str) -> Result<Self> {
        let (lhs, rhs) = text
            .split_once("!=")
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("constraint `{text}` lacks `!=`") })?;
        let lhs = parse_coeff(lhs)?;
        let exprs = rhs
            .split(',')
            .map(|v| Ok(lhs.clone() - parse_coeff(v)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Constraint { label: text.trim().to_string(), exprs })
    }

    pub fn holds(&self, b: &Bindings) -> Result<bool> {
        for e in &self.exprs {
            if e.eval(b)? == Rational::from_integer(0.into()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The first violated constraint, if any.
pub fn violated<'a>(constraints: &'a [Constraint], b: &Bindings) -> Result<Option<&'a Constraint>> {
    for c in constraints {
        if !c.holds(b)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    /// Stable id such as `T3.d5_2.lambda`.
    pub id: String,
    pub table: Table,
    /// Name as typeset, e.g. `d_{5(2),λ}`.
    pub name: &'static str,
    /// The structure equations used, with any `±` already expanded.
    pub structure: String,
    /// The structure as printed, when it differs from `structure`.
    pub printed: Option<String>,
    /// Printed grading in compact form (first table only).
    pub grading: Option<&'static str>,
    pub constraints: Vec<Constraint>,
    /// Printed determinants `a₁, a₂, a₃` of the extending derivation.
    pub dets: Option<[&'static str; 3]>,
    /// Substitution describing the unimodular subfamily, if there is one.
    pub unimodular: Option<(&'static str, &'static str)>,
}

impl TableEntry {
    pub fn algebra(&self) -> ParamAlgebra {
        parse(&self.structure).expect("table data parses")
    }

    pub fn params(&self) -> Vec<String> {
        self.algebra().params().into_iter().collect()
    }

    /// The unimodular locus as a substitution map.
    pub fn unimodular_substitution(&self) -> Option<BTreeMap<String, CoeffExpr>> {
        self.unimodular.map(|(p, e)| BTreeMap::from([(p.to_string(), parse_coeff(e).expect("table data parses"))]))
    }

    pub fn dets_exprs(&self) -> Option<[CoeffExpr; 3]> {
        self.dets.map(|d| d.map(|s| parse_coeff(s).expect("table data parses")))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "table": self.table.to_string(),
            "name": self.name,
            "structure": self.structure,
            "printed": self.printed,
            "grading": self.grading,
            "params": self.params(),
            "constraints": self.constraints.iter().map(|c| c.label.clone()).collect::<Vec<_>>(),
            "dets": self.dets,
        })
    }
}

/// Verdict of [`table_entry`]: the algebra and whether the bindings satisfy
/// the printed constraints.
#[derive(Clone, Debug)]
pub struct Instantiated {
    pub algebra: LieAlgebra<Rational>,
    pub admissible: bool,
    pub violated: Option<String>,
}

struct Raw {
    id: &'static str,
    name: &'static str,
    structure: &'static str,
    constraints: &'static [&'static str],
    dets: Option<[&'static str; 3]>,
    unimodular: Option<(&'static str, &'static str)>,
}

const fn raw(id: &'static str, name: &'static str, structure: &'static str, constraints: &'static [&'static str]) -> Raw {
    Raw { id, name, structure, constraints, dets: None, unimodular: None }
}

const T1_ROWS: &[(&[&str], &str)] = &[
    (&["(0)"], "1"),
    (&["(0^2)"], "1^2"),
    (&["(0^3)"], "1^3"),
    (&["(0^2,12)"], "1^22"),
    (&["(0^4)"], "1^4"),
    (&["(0^3,12)"], "1^32"),
    (&["(0^2,12,13)"], "1^223"),
    (&["(0^5)"], "1^5"),
    (&["(0^4,12)", "(0^4,12+34)"], "1^42"),
    (&["(0^3,12,13)"], "1^32^2"),
    (&["(0^3,12,14)"], "1^323"),
    (&["(0^3,12,13+24)"], "1^22^23"),
    (&["(0^2,12,13,23)"], "1^223^2"),
    (&["(0^2,12,13,14)"], "1^2234"),
    (&["(0^2,12,13,14+23)"], "12345"),
    (&["(0^6)"], "1^6"),
    (&["(0^5,12)", "(0^5,12+34)"], "1^52"),
    (&["(0^4,12,13)", "(0^4,13+42,14+23)", "(0^4,12,34)", "(0^4,12,14+23)"], "1^42^2"),
    (&["(0^4,12,15)"], "1^423"),
    (&["(0^3,12,13,23)"], "1^32^3"),
    (
        &[
            "(0^4,12,14+25)",
            "(0^4,12,15+34)",
            "(0^3,12,13,14)",
            "(0^3,12,23,14±35)",
            "(0^3,12,13,24)",
            "(0^3,12,13,14+35)",
        ],
        "1^32^23",
    ),
    (&["(0^3,12,14,24)"], "1^323^2"),
    (&["(0^3,12,14,15)"], "1^3234"),
    (&["(0^3,12,13+14,24)", "(0^3,12,13+42,14+23)", "(0^3,12,13,14+23)", "(0^3,12,14,13+42)"], "1^22^23^2"),
    (&["(0^3,12,14-23,15+34)"], "1^22^234"),
    (&["(0^2,12,13,23,14±25)", "(0^2,12,13,23,14)"], "1^223^24"),
    (&["(0^2,12,13,14,15)", "(0^2,12,13,14,34+52)"], "1^22345"),
    (&["(0^3,12,14,15+23)"], "1^23234"),
    (&["(0^3,12,14,15+24)"], "121345"),
    (&["(0^3,12,14,15+23+24)"], "123^245"),
    (&["(0^2,12,13,14+23,24+15)"], "123456"),
    (&["(0^2,12,13,14+23,34+52)"], "123457"),
    (&["(0^2,12,13,14,23+15)"], "134567"),
];

fn t2_rows() -> Vec<Raw> {
    vec![
        raw("r3", "r_3", "(0,21+31,31)", &[]),
        raw("r3.lambda", "r_{3,λ}", "(0,21,l.31)", &["l != -1, 0"]),
        raw("r3p.lambda", "r'_{3,λ}", "(0,l.21+31,-21+l.31)", &["l != 0"]),
        raw("r4", "r_4", "(0,21+31,31+41,41)", &[]),
        Raw {
            dets: Some(["l*l", "2*l*(1+l)*(1+l)", "1+2*l"]),
            ..raw("r4.lambda", "r_{4,λ}", "(0,21,l.31+41,l.41)", &["l != -1, -1/2, 0"])
        },
        Raw {
            dets: Some(["l1*l2", "(1+l1)*(1+l2)*(l1+l2)", "1+l1+l2"]),
            ..raw("r4.lambda2", "r_{4,λ(2)}", "(0,21,l1.31,l2.41)", &["l1 != -1, 0", "l2 != -1, 0", "l1+l2 != -1, 0"])
        },
        Raw {
            dets: Some(["l1*(1+l2*l2)", "2*l2*(1+(l1+l2)*(l1+l2))", "l1+2*l2"]),
            ..raw("r4p.lambda2", "r'_{4,λ(2)}", "(0,l1.21,l2.31+41,-31+l2.41)", &["l1 != 0", "l2 != -1/2*l1, 0"])
        },
        Raw {
            dets: Some(["l", "(2+l)*(1+2*l)", "2*(1+l)"]),
            ..raw("d4.lambda", "d_{4,λ}", "(0,21,l.31,(1+l).41+32)", &["l != -2, -1, -1/2, 0"])
        },
        Raw {
            dets: Some(["1+l*l", "1+9*l*l", "4*l"]),
            ..raw("d4p.lambda", "d'_{4,λ}", "(0,l.21+31,-21+l.31,2l.41+32)", &["l != 0"])
        },
        raw("h4", "h_4", "(0,21+31,31,2.41+32)", &[]),
    ]
}

fn t3_rows() -> Vec<Raw> {
    vec![
        raw("r5", "r_5", "(0,21+31,31+41,41+51,51)", &[]),
        Raw {
            dets: Some(["l*l*l", "8*l*l*l*(1+l)*(1+l)*(1+l)", "3*l*(1+2*l)*(1+2*l)*(1+2*l)"]),
            unimodular: Some(("l", "-1/3")),
            ..raw("r5_1.lambda", "r_{5(1),λ}", "(0,21,l.31+41,l.41+51,l.51)", &["l != -1, -1/2, 0"])
        },
        Raw {
            dets: Some(["l*l", "4*l*(1+l)*(1+l)*(1+l)*(1+l)", "(1+2*l)*(1+2*l)*(2+l)*(2+l)"]),
            ..raw("r5_2.lambda", "r_{5(2),λ}", "(0,21+31,31,l.41+51,l.51)", &["l != -2, -1, -1/2, 0"])
        },
        Raw {
            dets: Some([
                "l1*l2*l2",
                "2*l2*(1+l1)*(1+l2)*(1+l2)*(l1+l2)*(l1+l2)",
                "(1+l1+l2)*(1+l1+l2)*(1+2*l2)*(l1+2*l2)",
            ]),
            unimodular: Some(("l2", "-1/2*(1+l1)")),
            ..raw(
                "r5.lambda2",
                "r_{5,λ(2)}",
                "(0,21,l1.31,l2.41+51,l2.51)",
                &["l1 != -1, 0", "l2 != -1, 0", "l1+l2 != 0, -1", "1+2*l2 != 0", "l1+2*l2 != 0"],
            )
        },
        Raw {
            dets: Some([
                "l1*l2*l3",
                "(1+l1)*(1+l2)*(1+l3)*(l1+l2)*(l1+l3)*(l2+l3)",
                "(l1+l2+l3)*(1+l1+l2)*(1+l1+l3)*(1+l2+l3)",
            ]),
            unimodular: Some(("l3", "-1-l1-l2")),
            ..raw(
                "r5.lambda3",
                "r_{5,λ(3)}",
                "(0,21,l1.31,l2.41,l3.51)",
                &[
                    "l1 != -1, 0",
                    "l2 != -1, 0",
                    "l3 != -1, 0",
                    "l1+l2+l3 != 0",
                    "l1+l2 != -1, 0",
                    "l1+l3 != -1, 0",
                    "l2+l3 != -1, 0",
                ],
            )
        },
        Raw {
            dets: Some([
                "l1*l1*(1+l2*l2)",
                "4*l1*l2*(1+(l1+l2)*(l1+l2))*(1+(l1+l2)*(l1+l2))",
                "(l1+2*l2)*(l1+2*l2)*(1+(2*l1+l2)*(2*l1+l2))",
            ]),
            unimodular: Some(("l2", "-l1")),
            ..raw(
                "r5p.lambda2",
                "r'_{5,λ(2)}",
                "(0,l1.21+31,l1.31,l2.41+51,-41+l2.51)",
                &["l1 != 0", "l2 != 0", "l1+2*l2 != 0"],
            )
        },
        Raw {
            dets: Some([
                "l1*l2*(1+l3*l3)",
                "2*l3*(l1+l2)*(1+(l1+l3)*(l1+l3))*(1+(l2+l3)*(l2+l3))",
                "(l1+2*l3)*(l2+2*l3)*(1+(l1+l2+l3)*(l1+l2+l3))",
            ]),
            unimodular: Some(("l3", "-1/2*(l1+l2)")),
            ..raw(
                "r5p.lambda3",
                "r'_{5,λ(3)}",
                "(0,l1.21,l2.31,l3.41+51,-41+l3.51)",
                &["l1 != 0", "l2 != 0", "l3 != 0", "l1 != -l2", "l1 != -2*l3", "l2 != -2*l3"],
            )
        },
        Raw {
            dets: Some(["(1+l*l)*(1+l*l)", "64*l*l*l*l*(1+l*l)", "(1+9*l*l)*(1+9*l*l)"]),
            ..raw("r5pp.lambda", "r''_{5,λ}", "(0,l.21+31+41,-21+l.31+51,l.41+51,-41+l.51)", &["l != 0"])
        },
        Raw {
            dets: Some([
                "(1+l1*l1)*(l2*l2+l3*l3)",
                "4*l1*l2*((l1+l2)*(l1+l2)+(1+l3)*(1+l3))*((l1+l2)*(l1+l2)+(1-l3)*(1-l3))",
                "(l3*l3+(2*l1+l2)*(2*l1+l2))*(1+(l1+2*l2)*(l1+2*l2))",
            ]),
            unimodular: Some(("l2", "-l1")),
            ..raw(
                "r5pp.lambda3",
                "r''_{5,λ(3)}",
                "(0,l1.21+31,-21+l1.31,l2.41+l3.51,-l3.41+l2.51)",
                &["l1 != 0", "l2 != 0", "l3 != 0"],
            )
        },
        raw("d5_1", "d_{5(1)}", "(0,21,21+31,31+41,2.51+32)", &[]),
        raw("d5_2+", "d^+_{5(2)}", "(0,21,21+31,2.41,2.51+41+32)", &[]),
        raw("d5_2-", "d^-_{5(2)}", "(0,21,21+31,2.41,2.51-41+32)", &[]),
        Raw {
            dets: Some(["l*(1+l)", "(2+l)*(2+l)*(1+2*l)*(1+2*l)", "2*(1+l)*(3+2*l)*(2+3*l)"]),
            ..raw(
                "d5_1.lambda",
                "d_{5(1),λ}",
                "(0,21,l.31,(1+l).41,(1+l).51+32+41)",
                &["l != -2, -3/2, -1, -2/3, -1/2, 0"],
            )
        },
        Raw {
            dets: Some(["l", "9*(1+l)*(1+l)", "4*(3+l)*(3+l)"]),
            unimodular: Some(("l", "-4")),
            ..raw("d5_2.lambda", "d_{5(2),λ}", "(0,21,21+31,l.41,2.51+32)", &["l != -3, -1, 0"])
        },
        Raw {
            dets: Some([
                "l1*l2",
                "(1+l2)*(2+l1)*(l1+l2)*(1+2*l1)",
                "2*(1+l1)*(2+l2+l1)*(1+2*l1+l2)",
            ]),
            unimodular: Some(("l2", "-2*(1+l1)")),
            ..raw(
                "d5.lambda2",
                "d_{5,λ(2)}",
                "(0,21,l1.31,l2.41,(1+l1).51+32)",
                &["l1 != -2, -1/2, -1, 0", "l2 != 0, -1", "l1+l2 != -2, 0", "l2+2*l1 != -1"],
            )
        },
        Raw {
            dets: Some(["l", "2*(1+l)*(1+2*l)*(2+l)", "4*(1+l)*(1+l)*(3+l)"]),
            unimodular: Some(("l", "-3/2")),
            ..raw("d5_3.lambda", "d_{5(3),λ}", "(0,l.21,31,31+41,(1+l).51+32)", &["l != -3, -2, -1, -1/2, 0"])
        },
        Raw {
            dets: Some(["2*l*(1+l*l)", "(1+9*l*l)*(1+9*l*l)", "4*l*(1+25*l*l)"]),
            ..raw("d5p.lambda+", "d'^+_{5,λ}", "(0,l.21+31,-21+l.31,2l.41,2l.51+41+32)", &["l != 0"])
        },
        Raw {
            dets: Some(["2*l*(1+l*l)", "(1+9*l*l)*(1+9*l*l)", "4*l*(1+25*l*l)"]),
            ..raw("d5p.lambda-", "d'^-_{5,λ}", "(0,l.21+31,-21+l.31,2l.41,2l.51-41+32)", &["l != 0"])
        },
        Raw {
            dets: Some(["l2*(1+l1*l1)", "(1+9*l1*l1)*(1+(l1+l2)*(l1+l2))", "4*l1*(1+(3*l1+l2)*(3*l1+l2))"]),
            unimodular: Some(("l2", "-4*l1")),
            ..raw("d5p.lambda2", "d'_{5,λ(2)}", "(0,l1.21+31,-21+l1.31,l2.41,2l1.51+32)", &["l1 != 0", "l2 != 0"])
        },
        raw("p5", "p_5", "(0,21,21+31,2.41+32,3.51+42)", &[]),
        Raw {
            dets: Some(["l", "(1+2*l)*(3+l)", "6*(1+l)*(2+l)"]),
            unimodular: Some(("l", "-4/3")),
            ..raw("p5.lambda", "p_{5,λ}", "(0,21,l.31,(1+l).41+32,(2+l).51+42)", &["l != -3, -2, -1, -1/2, 0"])
        },
    ]
}

/// Printed structures that need a correction, keyed by entry id.
const PRINTED_OVERRIDES: &[(&str, &str)] = &[("T3.d5p.lambda2", "(0,l1.21+31,-21+l1.31,l2.41,2l1.51)")];

/// Expands a `±` into its two sign choices.
fn expand_pm(s: &str) -> Vec<(&'static str, String)> {
    if !s.contains('±') {
        return vec![("", s.to_string())];
    }
    vec![("+", s.replace('±', "+")), ("-", s.replace('±', "-"))]
}

fn build_table1() -> Vec<TableEntry> {
    let mut out = Vec::new();
    let mut n = 0;
    for (structs, grading) in T1_ROWS {
        for s in *structs {
            n += 1;
            for (suffix, structure) in expand_pm(s) {
                out.push(TableEntry {
                    id: format!("T1.{n:02}{suffix}"),
                    table: Table::T1,
                    name: "",
                    structure,
                    printed: (!suffix.is_empty()).then(|| s.to_string()),
                    grading: Some(grading),
                    constraints: vec![],
                    dets: None,
                    unimodular: None,
                });
            }
        }
    }
    out
}

fn build(table: Table, rows: Vec<Raw>) -> Vec<TableEntry> {
    rows.into_iter()
        .map(|r| {
            let id = format!("{table}.{}", r.id);
            let printed = PRINTED_OVERRIDES.iter().find(|(k, _)| *k == id).map(|(_, p)| p.to_string());
            TableEntry {
                id,
                table,
                name: r.name,
                structure: r.structure.to_string(),
                printed,
                grading: None,
                constraints: r.constraints.iter().map(|c| Constraint::parse(c).expect("table data parses")).collect(),
                dets: r.dets,
                unimodular: r.unimodular,
            }
        })
        .collect()
}

/// All entries of a table in printed order.
pub fn entries(table: Table) -> Vec<TableEntry> {
    match table {
        Table::T1 => build_table1(),
        Table::T2 => build(Table::T2, t2_rows()),
        Table::T3 => build(Table::T3, t3_rows()),
    }
}

pub fn all_entries() -> Vec<TableEntry> {
    [Table::T1, Table::T2, Table::T3].into_iter().flat_map(entries).collect()
}

/// Looks up an entry by full id (`T3.p5.lambda`) or by the part after the
/// table prefix.
pub fn find_entry(table: Table, id: &str) -> Result<TableEntry> {
    let full = if id.starts_with(&format!("{table}.")) { id.to_string() } else { format!("{table}.{id}") };
    entries(table).into_iter().find(|e| e.id == full).ok_or(Error::UnknownTableEntry(full))
}

/// Instantiates a table entry and evaluates its constraint column.
pub fn table_entry(table: Table, id: &str, b: &Bindings) -> Result<Instantiated> {
    let e = find_entry(table, id)?;
    let algebra = e.algebra().bind(b)?;
    let v = violated(&e.constraints, b)?;
    Ok(Instantiated { algebra, admissible: v.is_none(), violated: v.map(|c| c.label.clone()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn table_two_r4() {
        let inst = table_entry(Table::T2, "r4", &Bindings::new()).unwrap();
        assert!(inst.admissible);
        assert_eq!(inst.algebra, parse("(0,21+31,31+41,41)").unwrap().bind(&Bindings::new()).unwrap());
    }

    #[test]
    fn d52_at_minus_four() {
        let inst = table_entry(Table::T3, "T3.d5_2.lambda", &Bindings::new().with("l", int(-4))).unwrap();
        assert!(inst.admissible);
        assert!(inst.algebra.is_unimodular());
        assert!(inst.algebra.is_23_trivial());
    }

    #[test]
    fn r3_at_zero_names_constraint() {
        let inst = table_entry(Table::T2, "r3.lambda", &Bindings::new().with("l", int(0))).unwrap();
        assert!(!inst.admissible);
        assert_eq!(inst.violated.as_deref(), Some("l != -1, 0"));
    }

    #[test]
    fn errors() {
        assert!(matches!(table_entry(Table::T2, "nope", &Bindings::new()), Err(Error::UnknownTableEntry(_))));
        assert!(matches!(table_entry(Table::T2, "r3.lambda", &Bindings::new()), Err(Error::UnboundParameter(_))));
    }

    #[test]
    fn plus_minus_expansion() {
        let t1 = entries(Table::T1);
        assert!(t1.iter().any(|e| e.id.ends_with('+')));
        assert_eq!(t1.iter().filter(|e| e.structure.contains('±')).count(), 0);
        assert!(find_entry(Table::T3, "d5p.lambda-").is_ok());
    }

    #[test]
    fn constraint_parse() {
        let c = Constraint::parse("l2 != -1/2*l1, 0").unwrap();
        assert!(!c.holds(&Bindings::new().with("l1", int(2)).with("l2", int(-1))).unwrap());
        assert!(c.holds(&Bindings::new().with("l1", int(2)).with("l2", rat(1, 3))).unwrap());
    }
}
