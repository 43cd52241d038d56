//! The classification tables as data, with parameter sampling and an
//! end-to-end verification harness.

mod consistency;
mod sample;
mod verify;

pub use consistency::{
    all_configurations, consistency_report, weak_only_exceptions, ConsistencyReport, OccurrenceCheck,
};
pub use sample::{sample_row_instances, Assignment, SubRowSample, MAX_PER_FIELD, TARGET_PER_CASE};
pub use verify::{verify_all, verify_catalog, verify_row, InstanceVerdict, RowVerdict, VerificationReport};

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::lattice::{CatalogHit, Membership, RdpConfiguration};
use crate::parse::{parse_expr, parse_predicate, parse_ratio, Expr, ParseError, Predicate};

/// The shipped catalog.
pub const CATALOG_TOML: &str = include_str!("../../data/catalog.toml");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogError {
    /// Row id and field, or a line:column position in the file.
    pub location: String,
    pub msg: String,
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.msg)
    }
}

impl std::error::Error for CatalogError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowKind {
    Elliptic,
    QuasiElliptic,
}

#[derive(Clone, Debug)]
pub struct SubRow {
    pub label: String,
    pub condition_text: String,
    pub condition: Predicate,
    pub config: RdpConfiguration,
}

/// The symbolic part of a row with an equation.
#[derive(Clone, Debug)]
pub struct RowEquation {
    pub text: String,
    pub constraints_text: Option<String>,
    pub constraints: Predicate,
    /// Conditions absent from the printed row but needed for its fiber
    /// type; outside them the fiber degenerates further.
    pub nondegenerate_text: Option<String>,
    pub nondegenerate: Predicate,
    pub delta_text: String,
    pub delta: Expr,
    pub j_text: Option<String>,
    /// Numerator and denominator; `Delta` may occur in either.
    pub j: Option<(Expr, Expr)>,
    pub kind: RowKind,
    /// Parameters in order of first appearance in the equation.
    pub params: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CatalogRow {
    pub id: String,
    /// 2 to 6, or 0 for a configuration outside the tables.
    pub table: u32,
    pub p: u64,
    pub config: RdpConfiguration,
    pub equation: Option<RowEquation>,
    pub label: Option<String>,
    /// Expected Kodaira type of the fiber carrying the non-taut point.
    pub fiber: Option<String>,
    pub degree_two_only: bool,
    pub subrows: Vec<SubRow>,
}

impl CatalogRow {
    /// Every configuration the row realizes: the base and each sub-row.
    pub fn configurations(&self) -> Vec<&RdpConfiguration> {
        std::iter::once(&self.config).chain(self.subrows.iter().map(|s| &s.config)).collect()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    row: Vec<RawRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    id: String,
    table: u32,
    char: u64,
    config: String,
    equation: Option<String>,
    constraints: Option<String>,
    nondegenerate: Option<String>,
    delta: Option<String>,
    j: Option<String>,
    label: Option<String>,
    fiber: Option<String>,
    kind: Option<String>,
    #[serde(default)]
    degree_two_only: bool,
    #[serde(default)]
    subrows: Vec<RawSubRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubRow {
    label: String,
    condition: String,
    config: String,
}

fn err(location: impl Into<String>, msg: impl Into<String>) -> CatalogError {
    CatalogError { location: location.into(), msg: msg.into() }
}

fn located(id: &str, field: &str, e: ParseError) -> CatalogError {
    err(format!("{}.{}", id, field), e.to_string())
}

fn equation_params(id: &str, text: &str) -> Result<Vec<String>, CatalogError> {
    let (l, r) = text.split_once('=').ok_or_else(|| err(format!("{}.equation", id), "expected '='"))?;
    let mut out = Vec::new();
    for side in [l, r] {
        for p in parse_expr(side).map_err(|e| located(id, "equation", e))?.params() {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn check_params(id: &str, field: &str, used: Vec<String>, known: &[String]) -> Result<(), CatalogError> {
    match used.iter().find(|p| !known.contains(p)) {
        Some(p) => Err(err(format!("{}.{}", id, field), format!("unknown parameter {}", p))),
        None => Ok(()),
    }
}

fn config(id: &str, field: &str, text: &str, p: u64) -> Result<RdpConfiguration, CatalogError> {
    let c = RdpConfiguration::parse(text, p).map_err(|e| err(format!("{}.{}", id, field), e.to_string()))?;
    if c.rank() > 8 {
        return Err(err(format!("{}.{}", id, field), "rank exceeds 8"));
    }
    Ok(c)
}

fn convert(raw: RawRow) -> Result<CatalogRow, CatalogError> {
    let id = raw.id;
    if !matches!(raw.char, 2 | 3 | 5) {
        return Err(err(format!("{}.char", id), "characteristic must be 2, 3 or 5"));
    }
    let p = raw.char;
    let base = config(&id, "config", &raw.config, p)?;
    let equation = match raw.equation {
        None => {
            if !raw.degree_two_only {
                return Err(err(format!("{}.equation", id), "missing"));
            }
            if raw.delta.is_some() || raw.j.is_some() || raw.nondegenerate.is_some() || !raw.subrows.is_empty() {
                return Err(err(id.clone(), "degree-2-only rows carry no equation data"));
            }
            None
        }
        Some(text) => {
            if raw.degree_two_only {
                return Err(err(format!("{}.equation", id), "degree-2-only rows carry no equation"));
            }
            let params = equation_params(&id, &text)?;
            let kind = match raw.kind.as_deref() {
                Some("ell") => RowKind::Elliptic,
                Some("q-ell") => RowKind::QuasiElliptic,
                _ => return Err(err(format!("{}.kind", id), "expected \"ell\" or \"q-ell\"")),
            };
            let delta_text = raw.delta.ok_or_else(|| err(format!("{}.delta", id), "missing"))?;
            let delta = parse_expr(&delta_text).map_err(|e| located(&id, "delta", e))?;
            check_params(&id, "delta", delta.params(), &params)?;
            let is_zero = delta_text.trim() == "0";
            if is_zero != (kind == RowKind::QuasiElliptic) {
                return Err(err(format!("{}.delta", id), "Δ = 0 exactly for quasi-elliptic rows"));
            }
            if kind == RowKind::QuasiElliptic && p == 5 {
                return Err(err(format!("{}.kind", id), "no quasi-elliptic fibrations in characteristic 5"));
            }
            let j = match (&raw.j, kind) {
                (Some(text), RowKind::Elliptic) => {
                    let (n, d) = parse_ratio(text).map_err(|e| located(&id, "j", e))?;
                    let d = d.unwrap_or_else(|| parse_expr("1").expect("constant"));
                    check_params(&id, "j", n.params(), &params)?;
                    check_params(&id, "j", d.params(), &params)?;
                    Some((n, d))
                }
                (None, RowKind::QuasiElliptic) => None,
                (None, RowKind::Elliptic) => return Err(err(format!("{}.j", id), "missing")),
                (Some(_), RowKind::QuasiElliptic) => {
                    return Err(err(format!("{}.j", id), "j is undefined on quasi-elliptic rows"))
                }
            };
            let constraints = match &raw.constraints {
                Some(c) => parse_predicate(c).map_err(|e| located(&id, "constraints", e))?,
                None => Predicate::True,
            };
            check_params(&id, "constraints", constraints.params(), &params)?;
            let nondegenerate = match &raw.nondegenerate {
                Some(c) => parse_predicate(c).map_err(|e| located(&id, "nondegenerate", e))?,
                None => Predicate::True,
            };
            check_params(&id, "nondegenerate", nondegenerate.params(), &params)?;
            Some(RowEquation {
                text,
                constraints_text: raw.constraints,
                constraints,
                nondegenerate_text: raw.nondegenerate,
                nondegenerate,
                delta_text,
                delta,
                j_text: raw.j,
                j,
                kind,
                params,
            })
        }
    };
    let mut subrows = Vec::new();
    for (i, s) in raw.subrows.into_iter().enumerate() {
        let field = format!("subrows[{}]", i);
        let condition = parse_predicate(&s.condition).map_err(|e| located(&id, &field, e))?;
        if let Some(eq) = &equation {
            check_params(&id, &field, condition.params(), &eq.params)?;
        }
        let c = config(&id, &field, &s.config, p)?;
        subrows.push(SubRow { label: s.label, condition_text: s.condition, condition, config: c });
    }
    Ok(CatalogRow {
        id,
        table: raw.table,
        p,
        config: base,
        equation,
        label: raw.label,
        fiber: raw.fiber,
        degree_two_only: raw.degree_two_only,
        subrows,
    })
}

/// Parse a catalog file.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogRow>, CatalogError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let before = &text[..span.start.min(text.len())];
                let line = before.matches('\n').count() + 1;
                let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                format!("line {}, column {}", line, col)
            }
            None => "catalog".to_string(),
        };
        err(location, e.message().to_string())
    })?;
    let mut rows = Vec::new();
    for r in raw.row {
        let row = convert(r)?;
        if rows.iter().any(|x: &CatalogRow| x.id == row.id) {
            return Err(err(row.id, "duplicate id"));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The shipped catalog, parsed once. A malformed file aborts with its
/// location.
pub fn load_catalog() -> &'static [CatalogRow] {
    static CELL: OnceLock<Vec<CatalogRow>> = OnceLock::new();
    CELL.get_or_init(|| match parse_catalog(CATALOG_TOML) {
        Ok(rows) => rows,
        Err(e) => panic!("malformed catalog at {}", e),
    })
}

/// Lookup of configurations in a list of rows.
pub struct Catalog<'a> {
    pub rows: &'a [CatalogRow],
}

impl Catalog<'static> {
    pub fn shipped() -> Catalog<'static> {
        Catalog { rows: load_catalog() }
    }
}

impl Membership for Catalog<'_> {
    fn lookup(&self, config: &RdpConfiguration) -> Option<CatalogHit> {
        for row in self.rows.iter().filter(|r| r.p == config.p) {
            if row.config == *config {
                return Some(CatalogHit { row: row.id.clone(), degree_two_only: row.degree_two_only });
            }
            if let Some(s) = row.subrows.iter().find(|s| s.config == *config) {
                return Some(CatalogHit {
                    row: format!("{} ({})", row.id, s.label),
                    degree_two_only: row.degree_two_only,
                });
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_loads() {
        let rows = load_catalog();
        assert_eq!(rows.iter().filter(|r| r.p == 5).count(), 2);
        assert_eq!(rows.iter().filter(|r| r.degree_two_only).count(), 4);
        let x22 = rows.iter().find(|r| r.id == "T2-X22").unwrap();
        assert_eq!(x22.config.to_string(), "E8^0");
        let a4 = rows.iter().find(|r| r.id == "T4-4A").unwrap();
        assert_eq!(a4.subrows[3].config.to_string(), "D4^1+A3");
        for r in rows {
            for c in r.configurations() {
                assert!(c.rank() <= 8, "{}", r.id);
            }
        }
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse_catalog("[[row]]\nid = 1\n").unwrap_err();
        assert!(e.location.starts_with("line 2"), "{}", e);
        let bad = "[[row]]\nid = \"x\"\ntable = 2\nchar = 5\nconfig = \"E8^0\"\nequation = \"y^2 = x^3 + b*t^5*s\"\n\
                   delta = \"t^10*s^2\"\nj = \"0\"\nkind = \"ell\"\nsubrows = [{ label = \"l\", condition = \"a = 0\", config = \"E8^1\" }]\n";
        let e = parse_catalog(bad).unwrap_err();
        assert_eq!(e.location, "x.subrows[0]");
        assert_eq!(e.msg, "unknown parameter a");
    }

    #[test]
    fn membership_finds_subrows() {
        let cat = Catalog::shipped();
        let c = RdpConfiguration::parse("D4^1+A3", 2).unwrap();
        assert_eq!(cat.lookup(&c).unwrap().row, "T4-4A (4A. 5.)");
        let c = RdpConfiguration::parse("E7^0", 2).unwrap();
        assert!(cat.lookup(&c).unwrap().degree_two_only);
        assert!(cat.lookup(&RdpConfiguration::parse("E8^2", 2).unwrap()).is_none());
    }
}
