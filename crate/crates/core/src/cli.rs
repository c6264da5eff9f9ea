//! Command-line front end.
//!
//! Every command produces either a [`Report`] or a list of [`Table`]s and
//! prints it as TSV or JSON. Exit codes: 0 on success, 1 on a domain error
//! or a failed cross-check, 2 on a usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::base::{fmt_q, parse_q, Rational};
use crate::cbf::{
    fibre_bound, mori_feasible, mu_star, n_of_x, regenerate_table_v, regenerate_table_vi_vii,
    s_star, PrimitiveVector, VKind,
};
use crate::dualgraph::{
    classify_pair, pullback_coefficients, recognize_duval, recognize_fibre_type,
    recognize_half_catalog, recognize_kodaira, render_coefficients, DualGraph, KodairaLabel,
};
use crate::duval::{
    delpezzo_catalog, delta_closed_form, e_o_closed_form, format_singularities,
    rank_one_consistent, table_i_grid, table_iv_literal, DuValRecord,
};
use crate::error::Error;
use crate::eulerform::{euler_degenerate_fibre, FibreComponentData};
use crate::fibration::{boundary_budget, floor_euler, typ_violations, Profile, TypRecord};
use crate::mordellweil::solve_section_config;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "logdgen",
    version,
    about = "Exact invariants of log surfaces and their fibrations"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regenerate a stored table and cross-check it.
    Tables {
        #[arg(value_enum, ignore_case = true)]
        which: TableId,
    },
    /// Analyse a dual graph given as JSON.
    Graph {
        file: PathBuf,
        #[arg(value_enum)]
        action: GraphAction,
    },
    /// Euler number of a degenerate fibre from its components.
    Euler { file: PathBuf },
    /// Canonical bundle formula coefficients and bounds.
    Cbf {
        #[command(subcommand)]
        action: CbfAction,
    },
    /// Section configurations of prescribed height.
    Mw { file: PathBuf },
    /// Check a conic fibration record such as "(4(I-2)_1; (II-1)_1)".
    Typ {
        record: String,
        #[arg(long, default_value = "BISECTION")]
        profile: String,
        #[arg(long, default_value_t = 0)]
        base_genus: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    I,
    Iv,
    V,
    Vi,
    Vii,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphAction {
    Recognize,
    Discrepancies,
    Classify,
}

#[derive(Debug, Subcommand)]
pub enum CbfAction {
    /// mu*, s*, c* of a quotient datum at multiplicity ell.
    Invariants {
        #[arg(value_parser = parse_kind)]
        kind: VKind,
        r: u64,
        a0: u64,
        a1: u64,
        a2: u64,
        ell: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
    },
    /// Bound on the number of singular fibres.
    Bound { d: u64, n_va: u64 },
    /// Smallest (u, v) in Mori's estimate, if any.
    Mori { s: String, b: u64, n: u64 },
    /// N(x) = lcm of all n with phi(n) <= x.
    Nx { x: u64 },
}

fn parse_kind(s: &str) -> Result<VKind, String> {
    s.to_ascii_uppercase()
        .parse()
        .map_err(|e: Error| e.to_string())
}

/// Result of a non-table command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Vec<NamedValue>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

impl Report {
    fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results: Vec::new(),
            status: "OK".to_string(),
        }
    }

    fn push(&mut self, name: impl Into<String>, value: impl ToString) {
        self.results.push(NamedValue {
            name: name.into(),
            value: value.to_string(),
        });
    }

    fn fail(mut self, kind: &str, msg: impl std::fmt::Display) -> Self {
        self.status = format!("{kind}: {msg}");
        self
    }

    fn error(self, e: &Error) -> Self {
        let kind = e.kind();
        self.fail(kind, e)
    }

    pub fn ok(&self) -> bool {
        self.status == "OK"
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serialises") + "\n",
            Format::Tsv => {
                let mut out = format!("command\t{}\n", self.command);
                for r in &self.results {
                    out.push_str(&format!("{}\t{}\n", r.name, r.value));
                }
                out.push_str(&format!("status\t{}\n", self.status));
                out
            }
        }
    }
}

/// A regenerated table together with its cross-check outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub table: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            table: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            checked: 0,
            mismatches: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn render_tsv(&self) -> String {
        let mut out = format!("# table {}\n{}\n", self.table, self.columns.join("\t"));
        for r in &self.rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        out.push_str(&format!("# checked {}\n", self.checked));
        for m in &self.mismatches {
            out.push_str(&format!("# MISMATCH {m}\n"));
        }
        out
    }
}

/// Runs the binary with the process arguments.
pub fn run_from_env() -> i32 {
    run(std::env::args_os())
}

/// Parses `args` (program name first), prints the output and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (text, code) = execute(&cli);
    print!("{text}");
    code
}

/// Output text and exit code of a parsed command line.
pub fn execute(cli: &Cli) -> (String, i32) {
    match &cli.command {
        Command::Tables { which } => {
            let tables = match tables(*which) {
                Ok(t) => t,
                Err(e) => {
                    let r =
                        Report::new("tables", json!({ "which": format!("{which:?}") })).error(&e);
                    return (r.render(cli.format), EXIT_DOMAIN);
                }
            };
            let code = if tables.iter().all(Table::ok) {
                EXIT_OK
            } else {
                EXIT_DOMAIN
            };
            let text = match cli.format {
                Format::Tsv => tables
                    .iter()
                    .map(Table::render_tsv)
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Json => {
                    let status = if code == EXIT_OK { "OK" } else { "Mismatch" };
                    let v = json!({ "command": "tables", "tables": tables, "status": status });
                    serde_json::to_string_pretty(&v).expect("tables serialise") + "\n"
                }
            };
            (text, code)
        }
        other => {
            let r = report(other);
            let code = if r.ok() { EXIT_OK } else { EXIT_DOMAIN };
            (r.render(cli.format), code)
        }
    }
}

fn report(cmd: &Command) -> Report {
    match cmd {
        Command::Graph { file, action } => cmd_graph(file, *action),
        Command::Euler { file } => cmd_euler(file),
        Command::Mw { file } => cmd_mw(file),
        Command::Cbf { action } => cmd_cbf(action),
        Command::Typ {
            record,
            profile,
            base_genus,
        } => cmd_typ(record, profile, *base_genus),
        Command::Tables { .. } => unreachable!("handled by execute"),
    }
}

fn read(file: &Path, r: &Report) -> Result<String, Report> {
    std::fs::read_to_string(file).map_err(|e| {
        r.clone()
            .fail("IoError", format!("{}: {e}", file.display()))
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, r: &Report) -> Result<T, Report> {
    serde_json::from_str(text).map_err(|e| r.clone().error(&Error::Parse(e.to_string())))
}

/// Builds the tables requested by `which`, in a fixed order.
pub fn tables(which: TableId) -> crate::Result<Vec<Table>> {
    Ok(match which {
        TableId::I => vec![table_i()],
        TableId::Iv => vec![table_iv()?],
        TableId::V => vec![table_v()?],
        TableId::Vi => vec![table_vi_vii(VKind::V1)?],
        TableId::Vii => vec![table_vi_vii(VKind::V2)?],
        TableId::All => vec![
            table_i(),
            table_iv()?,
            table_v()?,
            table_vi_vii(VKind::V1)?,
            table_vi_vii(VKind::V2)?,
        ],
    })
}

fn table_i() -> Table {
    let mut t = Table::new("I", &["case", "e_p", "o_p", "c_p", "delta_p"]);
    let rows: [[&str; 5]; 6] = [
        ["(1)", "rn", "rn", "n(r-1/r)", "(n^2-1)/(rn)"],
        ["(2)", "2n+2", "8n-4", "3(2n+3)/4", "n(n-1)/(2n-1)"],
        ["(3)", "n+3", "4n", "3", "(4n^2-1)/(4n)"],
        ["(4)", "7", "24", "16/3", "13/8"],
        ["(5)", "2n+1", "8(n-1)", "3n/2", "(4n^2+4n-9)/(8(n-1))"],
        ["(6)", "8", "48", "9/2", "167/48"],
    ];
    t.rows = rows
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect();
    for cover in table_i_grid(12, 6, 8) {
        let rec = DuValRecord::of(cover);
        t.checked += 1;
        let (e, o) = e_o_closed_form(&cover).expect("grid has index >= 2");
        if Some(&rec.delta_p) != delta_closed_form(&cover).as_ref() || rec.e_p != e || rec.o_p != o
        {
            t.mismatches.push(format!("{cover}"));
        }
    }
    t
}

fn table_iv() -> crate::Result<Table> {
    let mut t = Table::new(
        "IV",
        &["row", "degree", "singularities", "e_orb", "rank_one"],
    );
    let literal = table_iv_literal()?;
    for (computed, lit) in delpezzo_catalog().iter().zip(&literal) {
        t.checked += 1;
        t.rows.push(vec![
            computed.row.to_string(),
            computed.degree.to_string(),
            format_singularities(&computed.singularities),
            fmt_q(&computed.e_orb),
            rank_one_consistent(computed.degree, &computed.singularities).to_string(),
        ]);
        if computed.e_orb != lit.e_orb {
            t.mismatches.push(format!(
                "row {}: computed {} stored {}",
                lit.row,
                fmt_q(&computed.e_orb),
                fmt_q(&lit.e_orb)
            ));
        }
    }
    Ok(t)
}

fn table_v() -> crate::Result<Table> {
    let mut t = Table::new("V", &["fibre", "ell", "mu", "s"]);
    for m in [1, 2, 3, 5] {
        for row in regenerate_table_v(m)? {
            t.checked += 1;
            if !row.matches {
                t.mismatches.push(format!("{} at m = {m}", row.fibre));
            }
            // fixed columns are listed once, at m = 1
            if m == 1 || row.fibre.ends_with("I_b") && !row.fibre.starts_with("I*") {
                t.rows.push(vec![
                    row.fibre,
                    row.inv.ell.to_string(),
                    fmt_q(&row.inv.mu),
                    fmt_q(&row.inv.s),
                ]);
            }
        }
    }
    Ok(t)
}

fn table_vi_vii(kind: VKind) -> crate::Result<Table> {
    let name = if kind == VKind::V1 { "VI" } else { "VII" };
    let mut t = Table::new(
        name,
        &[
            "row", "vector", "c_star", "mu(r)", "s(r)", "mu(2r)", "s(2r)", "divisor",
        ],
    );
    for row in regenerate_table_vi_vii()?
        .into_iter()
        .filter(|r| r.kind == kind)
    {
        t.checked += 1;
        if !row.matches {
            t.mismatches.push(format!("row {}", row.row));
        }
        t.rows.push(vec![
            row.row.to_string(),
            row.vector,
            fmt_q(&row.c_star),
            fmt_q(&row.mu[0]),
            fmt_q(&row.s[0]),
            fmt_q(&row.mu[1]),
            fmt_q(&row.s[1]),
            row.divisor.to_string(),
        ]);
    }
    Ok(t)
}

fn cmd_graph(file: &Path, action: GraphAction) -> Report {
    let name = format!("{action:?}").to_lowercase();
    let r = Report::new(
        "graph",
        json!({ "file": file.display().to_string(), "action": name }),
    );
    let text = match read(file, &r) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let g = match DualGraph::from_json(&text) {
        Ok(g) => g,
        Err(e) => return r.error(&e),
    };
    let mut r = r;
    match action {
        GraphAction::Recognize => {
            let none = || "none".to_string();
            r.push(
                "duval",
                recognize_duval(&g).map_or_else(none, |t| t.to_string()),
            );
            r.push(
                "kodaira",
                recognize_kodaira(&g).map_or_else(none, |t| t.to_string()),
            );
            r.push(
                "half_catalog",
                recognize_half_catalog(&g).map_or_else(none, |t| t.to_string()),
            );
            r.push(
                "fibre_type",
                recognize_fibre_type(&g).map_or_else(none, |t| t.to_string()),
            );
            r
        }
        GraphAction::Discrepancies => match pullback_coefficients(&g) {
            Ok(a) => {
                for (id, v) in render_coefficients(&a) {
                    r.push(id, v);
                }
                r
            }
            Err(e) => r.error(&e),
        },
        GraphAction::Classify => match classify_pair(&g) {
            Ok(c) => {
                r.push("class", c);
                r
            }
            Err(e) => r.error(&e),
        },
    }
}

#[derive(Debug, Deserialize)]
struct EulerFile {
    components: Vec<EulerComponent>,
}

#[derive(Debug, Deserialize)]
struct EulerComponent {
    m: u64,
    #[serde(with = "crate::base::serde_q")]
    e_orb: Rational,
    #[serde(default, with = "crate::base::serde_q_vec")]
    deltas: Vec<Rational>,
}

fn cmd_euler(file: &Path) -> Report {
    let r = Report::new("euler", json!({ "file": file.display().to_string() }));
    let parsed: EulerFile = match read(file, &r).and_then(|t| parse_json(&t, &r)) {
        Ok(p) => p,
        Err(r) => return r,
    };
    let comps: crate::Result<Vec<FibreComponentData>> = parsed
        .components
        .into_iter()
        .map(|c| FibreComponentData::new(c.m, c.e_orb, c.deltas))
        .collect();
    let mut r = r;
    match comps {
        Ok(c) => {
            let total = euler_degenerate_fibre(&c);
            r.push("components", c.len());
            r.push("euler", fmt_q(&total));
            r.push("chi_zero", num_traits::Zero::is_zero(&total));
            r
        }
        Err(e) => r.error(&e),
    }
}

#[derive(Debug, Deserialize)]
struct MwFile {
    fibres: Vec<MwFibre>,
    chi: u64,
    #[serde(with = "crate::base::serde_q")]
    target: Rational,
    #[serde(default)]
    po_max: i64,
}

#[derive(Debug, Deserialize)]
struct MwFibre {
    #[serde(rename = "type")]
    label: String,
    components: usize,
}

fn cmd_mw(file: &Path) -> Report {
    let r = Report::new("mw", json!({ "file": file.display().to_string() }));
    let parsed: MwFile = match read(file, &r).and_then(|t| parse_json(&t, &r)) {
        Ok(p) => p,
        Err(r) => return r,
    };
    let mut r = r;
    r.inputs["target"] = json!(fmt_q(&parsed.target));
    r.inputs["chi"] = json!(parsed.chi);
    r.inputs["po_max"] = json!(parsed.po_max);
    let mut fibres = Vec::new();
    for f in &parsed.fibres {
        match f.label.parse::<KodairaLabel>() {
            Ok(l) => fibres.push((l, f.components)),
            Err(e) => return r.error(&e),
        }
    }
    r.inputs["fibres"] = json!(fibres
        .iter()
        .map(|(l, _)| l.to_string())
        .collect::<Vec<_>>());
    match solve_section_config(&parsed.target, &fibres, parsed.chi, parsed.po_max) {
        Ok(configs) => {
            r.push("count", configs.len());
            for (i, c) in configs.iter().enumerate() {
                let hits: Vec<String> = c.hits.iter().map(|h| h.to_string()).collect();
                r.push(
                    format!("config_{}", i + 1),
                    format!("po={} hits=[{}]", c.po, hits.join(",")),
                );
            }
            r
        }
        Err(e) => r.error(&e),
    }
}

fn cmd_cbf(action: &CbfAction) -> Report {
    match *action {
        CbfAction::Invariants {
            kind,
            r,
            a0,
            a1,
            a2,
            ell,
            b,
        } => {
            let mut rep = Report::new(
                "cbf invariants",
                json!({ "kind": kind.to_string(), "r": r, "a": [a0, a1, a2], "ell": ell, "b": b }),
            );
            let out = PrimitiveVector::new(kind, r, [a0, a1, a2]).and_then(|v| {
                let mu = mu_star(&v, ell)?;
                let s = s_star(b, ell, &mu)?;
                Ok((mu, s, v.c_star()?))
            });
            match out {
                Ok((mu, s, c)) => {
                    rep.push("mu", fmt_q(&mu));
                    rep.push("s", fmt_q(&s));
                    rep.push("c", fmt_q(&c));
                    rep
                }
                Err(e) => rep.error(&e),
            }
        }
        CbfAction::Bound { d, n_va } => {
            let mut rep = Report::new("cbf bound", json!({ "d": d, "n_va": n_va }));
            match fibre_bound(d, n_va) {
                Ok(v) => {
                    rep.push("bound", v);
                    rep
                }
                Err(e) => rep.error(&e),
            }
        }
        CbfAction::Mori { ref s, b, n } => {
            let mut rep = Report::new("cbf mori", json!({ "s": s, "b": b, "n": n }));
            match parse_q(s).and_then(|s| mori_feasible(&s, b, n)) {
                Ok(Some((u, v))) => {
                    rep.push("u", u);
                    rep.push("v", v);
                    rep
                }
                Ok(None) => {
                    rep.push("result", "INFEASIBLE");
                    rep
                }
                Err(e) => rep.error(&e),
            }
        }
        CbfAction::Nx { x } => {
            let mut rep = Report::new("cbf nx", json!({ "x": x }));
            match n_of_x(x) {
                Ok(v) => {
                    rep.push("N", v);
                    rep
                }
                Err(e) => rep.error(&e),
            }
        }
    }
}

fn cmd_typ(record: &str, profile: &str, base_genus: u32) -> Report {
    let r = Report::new(
        "typ",
        json!({ "record": record, "profile": profile, "base_genus": base_genus }),
    );
    let parsed = record
        .parse::<TypRecord>()
        .and_then(|rec| Ok((rec, profile.parse::<Profile>()?)));
    let (rec, profile) = match parsed {
        Ok(p) => p,
        Err(e) => return r.error(&e),
    };
    let mut r = r;
    r.inputs["record"] = json!(rec.to_string());
    let mut extra = BTreeMap::new();
    if let Ok(b) = boundary_budget(&rec, profile) {
        extra.insert("budget", fmt_q(&b));
    }
    if let Ok(f) = floor_euler(&rec, profile, base_genus) {
        extra.insert("floor_euler", f.to_string());
    }
    for (k, v) in extra {
        r.push(k, v);
    }
    let violations = typ_violations(&rec, profile, base_genus);
    r.push("accepted", violations.is_empty());
    if violations.is_empty() {
        r
    } else {
        r.fail("Rejected", violations.join("; "))
    }
}
