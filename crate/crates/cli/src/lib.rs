//! The `rdp` command line: argument parsing, dispatch and report rendering.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use rdp_core::catalog::{load_catalog, parse_catalog, verify_catalog, Catalog, VerificationReport};
use rdp_core::lattice::{check_conditions, classes_of, decide_occurrence, AdeType, Occurrence, Rationale, Witness};
use rdp_core::parse::{parse_config, parse_equation, parse_local_poly};
use rdp_core::pipeline::{analyze, SurfaceReport};
use rdp_core::singularity::{classify_rdp, tjurina_dimension};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "rdp", version, about = "Rational double points on del Pezzo surfaces of degree 1")]
pub struct Cli {
    /// Print the structured report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants, fibers and singular points of a Weierstrass equation.
    Classify {
        #[arg(long = "char")]
        p: u64,
        /// e.g. "y^2 + t*x*y = x^3 + t^5*s"
        #[arg(long)]
        eq: String,
    },
    /// Whether a configuration occurs on an RDP del Pezzo surface.
    CheckConfig {
        #[arg(long = "char")]
        p: u64,
        /// e.g. "E8^1", "D4^0+3A1", "2A3+2A1"
        config: String,
    },
    /// Re-derive the classification tables.
    VerifyTables {
        #[arg(long)]
        table: Option<u32>,
        #[arg(long = "char")]
        p: Option<u64>,
        /// A catalog file to verify instead of the shipped one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Embeddings of a root lattice in E8.
    Lattice {
        /// e.g. "D4+4A1"
        #[arg(long = "type")]
        ade: String,
        /// Report (E8+T[p]) for this p only.
        #[arg(long = "char")]
        p: Option<u64>,
    },
    /// Tjurina number of a polynomial at the origin.
    Tjurina {
        #[arg(long = "char")]
        p: u64,
        #[arg(long)]
        poly: String,
    },
}

/// Parse `args` (program name first) and run; reports go to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{}", text) } else { write!(out, "{}", text) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(Rendered { text, json, pass }) => {
            let body = if cli.json { json } else { text };
            let _ = writeln!(out, "{}", body.trim_end());
            if pass {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {}", msg);
            EXIT_INPUT
        }
    }
}

struct Rendered {
    text: String,
    json: String,
    pass: bool,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string_pretty(v).map_err(|e| e.to_string())
}

fn execute(cli: &Cli) -> Result<Rendered, String> {
    match &cli.command {
        Command::Classify { p, eq } => {
            let eq = parse_equation(eq, *p).map_err(|e| e.to_string())?;
            let report = analyze(&eq).map_err(|e| e.to_string())?;
            Ok(Rendered { text: classify_text(&report), json: to_json(&report)?, pass: true })
        }
        Command::CheckConfig { p, config } => {
            let c = parse_config(config, *p).map_err(|e| e.to_string())?;
            let occ = decide_occurrence(&c, &Catalog::shipped()).map_err(|e| e.to_string())?;
            let report = ConfigReport { configuration: c.to_string(), characteristic: *p, occurrence: occ };
            Ok(Rendered { text: config_text(&report), json: to_json(&report)?, pass: true })
        }
        Command::VerifyTables { table, p, catalog } => {
            let report = match catalog {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
                    let rows = parse_catalog(&text).map_err(|e| format!("{}: {}", path.display(), e))?;
                    verify_catalog(&rows, *table, *p)
                }
                None => verify_catalog(load_catalog(), *table, *p),
            };
            Ok(Rendered { text: verify_text(&report), json: to_json(&report)?, pass: report.pass })
        }
        Command::Lattice { ade, p } => {
            let ty: AdeType = ade.parse().map_err(|e: rdp_core::lattice::LatticeError| e.to_string())?;
            let report = lattice_report(&ty, *p);
            Ok(Rendered { text: lattice_text(&report), json: to_json(&report)?, pass: true })
        }
        Command::Tjurina { p, poly } => {
            let f = parse_local_poly(poly, *p).map_err(|e| e.to_string())?;
            let t = tjurina_dimension(&f).map_err(|e| e.to_string())?;
            let class = classify_rdp(&f).ok().map(|c| c.class.render(*p));
            let report = TjurinaReport { tjurina: t.dimension, truncation: t.truncation, class };
            let mut text = format!("tjurina: {}\n", report.tjurina);
            text += &format!("m^{} lies in the ideal\n", report.truncation);
            if let Some(c) = &report.class {
                text += &format!("rdp: {}\n", c);
            }
            Ok(Rendered { text, json: to_json(&report)?, pass: true })
        }
    }
}

fn classify_text(r: &SurfaceReport) -> String {
    let mut s = String::new();
    s += &format!("characteristic: {}\n", r.characteristic);
    s += &format!("equation: {}\n", r.equation);
    s += &format!("delta: {}\n", r.delta);
    s += &format!("j: {}\n", r.j);
    s += &format!("fibration: {}\n", r.kind);
    if let Some(fc) = &r.fibers {
        s += "fibers:\n";
        for f in &fc.fibers {
            s +=
                &format!("  {}  {}  v(Δ) = {}  components = {}\n", f.place, f.kodaira, f.delta_valuation, f.components);
        }
        let lattice = if fc.root_type.is_empty() { "0".to_string() } else { fc.root_type.to_string() };
        s += &format!("  root lattice {}, Σ v(Δ) = {}, Mordell–Weil rank {}\n", lattice, fc.euler_number, fc.mw_rank);
    }
    if r.singular_points.is_empty() {
        s += "singular points: none\n";
    } else {
        s += "singular points:\n";
        for pt in &r.singular_points {
            s += &format!("  {}  {}  tjurina {}", pt.base_point, pt.class, pt.tjurina);
            if pt.orbit > 1 {
                s += &format!("  ({} conjugates)", pt.orbit);
            }
            if let Some(place) = &pt.place {
                s += &format!("  on {}", place);
            }
            s += "\n";
        }
    }
    let config = if r.configuration.is_empty() { "smooth" } else { &r.configuration };
    s += &format!("configuration: {}\n", config);
    for m in &r.mismatches {
        s += &format!("warning: {}\n", m);
    }
    s
}

#[derive(Serialize)]
struct ConfigReport {
    configuration: String,
    characteristic: u64,
    #[serde(flatten)]
    occurrence: Occurrence,
}

fn config_text(r: &ConfigReport) -> String {
    let o = &r.occurrence;
    let verdict = match o.witness {
        Witness::DegreeOne => "yes",
        Witness::OnlyDegreeTwo => "yes (degree 2 only)",
        Witness::None => "no",
    };
    let why = match o.rationale {
        Rationale::TorsionTwo => "lattice criterion (E8+T[ℓ=2])",
        Rationale::WeakDelPezzo => "weak del Pezzo lattice criterion",
        Rationale::Catalog => "classification tables",
    };
    let mut s = format!(
        "configuration: {} (characteristic {})\noccurs: {}\nreason: {}\n",
        r.configuration, r.characteristic, verdict, why
    );
    if let Some(row) = &o.catalog_row {
        s += &format!("catalog row: {}\n", row);
    }
    s
}

fn verify_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    for v in &r.verdicts {
        let mark = if v.pass { "PASS" } else { "FAIL" };
        let what = if v.degree_two_only {
            "degree 2 only".to_string()
        } else {
            let skipped = v.instances.iter().filter(|i| i.skipped).count();
            let mut w = format!("{} instances", v.instances.len());
            if skipped > 0 {
                w += &format!(", {} skipped", skipped);
            }
            w
        };
        s += &format!("{}  {:<14} char {}  {}\n", mark, v.row, v.char, what);
        for w in &v.warnings {
            s += &format!("      warning: {}\n", w);
        }
        for i in v.instances.iter().filter(|i| !i.pass && !i.skipped) {
            s += &format!("      [{}] {}\n", i.case, i.assignment.describe());
            for d in &i.diff {
                s += &format!("        {}\n", d);
            }
        }
    }
    if let Some(c) = &r.consistency {
        for k in &c.checks {
            s += &format!(
                "consistency char {}: {} configurations, {} occur; {} with a non-taut summand, {} occur; {} errors\n",
                k.p,
                k.configurations,
                k.occurring,
                k.non_taut,
                k.non_taut_occurring,
                k.errors.len()
            );
            for e in &k.errors {
                s += &format!("      {}\n", e);
            }
        }
        if let Some(n) = c.e8_rows_char5 {
            s += &format!("elliptic E8 rows in characteristic 5: {}\n", n);
        }
        for o in &c.exception_overlap {
            s += &format!("non-occurring configuration listed in the tables: {}\n", o);
        }
    }
    let rows = r.verdicts.len();
    s += &format!("result: {} ({} rows)\n", if r.pass { "pass" } else { "FAIL" }, rows);
    s
}

#[derive(Serialize)]
struct ClassReport {
    basis: Vec<usize>,
    free_rank: usize,
    torsion: Vec<i64>,
    quotient: String,
}

#[derive(Serialize)]
struct FlagReport {
    p: u64,
    e8: bool,
    t_ell2: bool,
    t_p: bool,
}

#[derive(Serialize)]
struct LatticeReport {
    #[serde(rename = "type")]
    ade: String,
    rank: u32,
    determinant: i64,
    classes: Vec<ClassReport>,
    flags: Vec<FlagReport>,
}

/// `Z^r ⊕ Z/d1 ⊕ ...`, or 0.
pub fn quotient_text(free_rank: usize, torsion: &[i64]) -> String {
    let mut parts = Vec::new();
    match free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{}", r)),
    }
    parts.extend(torsion.iter().map(|d| format!("Z/{}", d)));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

fn lattice_report(ty: &AdeType, p: Option<u64>) -> LatticeReport {
    let classes = classes_of(ty)
        .into_iter()
        .map(|c| ClassReport {
            basis: c.basis.clone(),
            free_rank: c.free_rank,
            torsion: c.torsion.clone(),
            quotient: quotient_text(c.free_rank, &c.torsion),
        })
        .collect();
    let ps = match p {
        Some(p) => vec![p],
        None => vec![2, 3, 5, 7],
    };
    let flags = ps
        .into_iter()
        .map(|p| {
            let f = check_conditions(ty, p);
            FlagReport { p, e8: f.e8, t_ell2: f.t_ell2, t_p: f.t_p }
        })
        .collect();
    LatticeReport { ade: ty.to_string(), rank: ty.rank(), determinant: ty.determinant(), classes, flags }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn lattice_text(r: &LatticeReport) -> String {
    let mut s = format!("type: {} (rank {}, determinant {})\n", r.ade, r.rank, r.determinant);
    s += &format!("embedding classes in E8: {}\n", r.classes.len());
    for (i, c) in r.classes.iter().enumerate() {
        s += &format!("  class {}: E8/Γ ≅ {}\n", i + 1, c.quotient);
    }
    if let Some(f) = r.flags.first() {
        s += &format!("(E8): {}\n(E8+T[ℓ=2]): {}\n", yes(f.e8), yes(f.t_ell2));
    }
    for f in &r.flags {
        s += &format!("(E8+T[p={}]): {}\n", f.p, yes(f.t_p));
    }
    s
}

#[derive(Serialize)]
struct TjurinaReport {
    tjurina: usize,
    truncation: u32,
    class: Option<String>,
}
