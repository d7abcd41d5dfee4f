//! Report records emitted by the subcommands and their tabular renderings.
//!
//! JSON output is the serde form of [`Report`]. CSV and pretty output share
//! one table per report; the column sets are listed in the README.

use opuc::general_wm::{ConjectureReport, GeneralSumRuleReport};
use opuc::sumrules::{NormRow, RuleId, SumRuleReport, NORM_EXPONENTS};
use opuc::C64;
use serde::{Deserialize, Serialize};

/// Output format selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub n: usize,
    pub m: usize,
    /// a_{n,m} per method, in the order of [`CoeffsReport::methods`].
    pub values: Vec<C64>,
    /// Largest pairwise difference between methods.
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffsReport {
    pub order: usize,
    pub methods: Vec<String>,
    pub rows: Vec<CoeffRow>,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub n: usize,
    pub c: C64,
    pub oracle: C64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentsReport {
    pub order: usize,
    pub rows: Vec<MomentRow>,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogMomentRow {
    pub m: usize,
    /// Closed form, available for m ≤ 4.
    pub closed: Option<C64>,
    /// General partition formula, available for m ≤ 8.
    pub general: Option<C64>,
    pub quadrature: C64,
    /// Largest distance of an available formula from the quadrature value.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogMomentsReport {
    pub order: usize,
    pub rows: Vec<LogMomentRow>,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumRuleEntry {
    pub report: SumRuleReport,
    /// Why the stated form of this rule is known to fail, if it does.
    pub quarantine: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumRuleRun {
    pub entries: Vec<SumRuleEntry>,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRow {
    pub identity: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentitiesReport {
    pub order: usize,
    pub rows: Vec<IdentityRow>,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub exponents: Vec<u32>,
    pub rows: Vec<NormRow>,
}

/// Everything a subcommand can emit, tagged by subcommand name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Coeffs(CoeffsReport),
    Moments(MomentsReport),
    Logmoments(LogMomentsReport),
    Sumrule(SumRuleRun),
    GeneralSumrule(GeneralSumRuleReport),
    Identities(IdentitiesReport),
    Conjecture(ConjectureReport),
    Diagnostics(DiagnosticsReport),
}

impl Report {
    /// The residual compared against `--tol`; `None` for reporting-only subcommands.
    pub fn max_residual(&self) -> Option<f64> {
        match self {
            Report::Coeffs(r) => Some(r.max_residual),
            Report::Moments(r) => Some(r.max_residual),
            Report::Logmoments(r) => Some(r.max_residual),
            Report::Sumrule(r) => Some(r.max_residual),
            Report::GeneralSumrule(r) => Some(r.residual),
            Report::Identities(r) => Some(r.max_residual),
            Report::Conjecture(_) | Report::Diagnostics(_) => None,
        }
    }

    /// True when a checked residual is above `tol` or not a number.
    pub fn exceeds(&self, tol: f64) -> bool {
        self.max_residual().is_some_and(|r| r.is_nan() || r > tol)
    }

    /// Renders the report in the requested format, newline-terminated.
    pub fn render(&self, format: Format) -> serde_json::Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Csv => self.table().csv(),
            Format::Pretty => self.table().pretty(),
        })
    }

    /// The flat table behind CSV and pretty output.
    pub fn table(&self) -> Table {
        match self {
            Report::Coeffs(r) => {
                let mut t = Table::new(&["n", "m", "method", "re", "im", "spread"]);
                for row in &r.rows {
                    for (method, v) in r.methods.iter().zip(&row.values) {
                        t.push(vec![
                            row.n.to_string(),
                            row.m.to_string(),
                            method.clone(),
                            num(v.re),
                            num(v.im),
                            num(row.spread),
                        ]);
                    }
                }
                t
            }
            Report::Moments(r) => {
                let mut t = Table::new(&["n", "c_re", "c_im", "oracle_re", "oracle_im", "residual"]);
                for row in &r.rows {
                    t.push(vec![
                        row.n.to_string(),
                        num(row.c.re),
                        num(row.c.im),
                        num(row.oracle.re),
                        num(row.oracle.im),
                        num(row.residual),
                    ]);
                }
                t
            }
            Report::Logmoments(r) => {
                let mut t = Table::new(&[
                    "m",
                    "closed_re",
                    "closed_im",
                    "general_re",
                    "general_im",
                    "quadrature_re",
                    "quadrature_im",
                    "residual",
                ]);
                for row in &r.rows {
                    let mut cells = vec![row.m.to_string()];
                    for v in [row.closed, row.general, Some(row.quadrature)] {
                        match v {
                            Some(v) => cells.extend([num(v.re), num(v.im)]),
                            None => cells.extend([String::new(), String::new()]),
                        }
                    }
                    cells.push(num(row.residual));
                    t.push(cells);
                }
                t
            }
            Report::Sumrule(r) => {
                let mut t = Table::new(&["rule", "form", "label", "part", "value"]);
                for e in &r.entries {
                    let rep = &e.report;
                    let head = |label: &str, value: f64| {
                        vec![
                            rule_name(rep.rule),
                            rep.form.clone(),
                            label.to_string(),
                            String::new(),
                            num(value),
                        ]
                    };
                    for (label, value) in [
                        ("lhs", rep.lhs),
                        ("rhs", rep.rhs),
                        ("ep", rep.ep),
                        ("cp", rep.cp),
                        ("bdy", rep.bdy),
                        ("residual", rep.residual),
                    ] {
                        t.push(head(label, value));
                    }
                    for s in &rep.series {
                        t.push(vec![
                            rule_name(rep.rule),
                            rep.form.clone(),
                            s.label.clone(),
                            s.part.name().to_string(),
                            num(s.value),
                        ]);
                    }
                }
                t
            }
            Report::GeneralSumrule(r) => {
                let mut t = Table::new(&["quantity", "l", "value"]);
                for (l, a) in r.weight.iter().enumerate() {
                    t.push(vec!["weight".into(), l.to_string(), num(*a)]);
                }
                for (l, w) in r.log_moments.iter().enumerate() {
                    t.push(vec!["log_moment".into(), l.to_string(), num(*w)]);
                }
                for (q, v) in [("lhs", r.lhs), ("rhs", r.rhs), ("residual", r.residual)] {
                    t.push(vec![q.into(), String::new(), num(v)]);
                }
                t
            }
            Report::Identities(r) => {
                let mut t = Table::new(&["identity", "residual"]);
                for row in &r.rows {
                    t.push(vec![row.identity.clone(), num(row.residual)]);
                }
                t
            }
            Report::Conjecture(r) => {
                let mut t = Table::new(&["n", "s", "residual", "literal_residual", "split_residual", "pass"]);
                for row in &r.rows {
                    t.push(vec![
                        r.n.to_string(),
                        row.s.to_string(),
                        num(row.residual),
                        num(row.literal_residual),
                        num(row.split_residual),
                        row.pass.to_string(),
                    ]);
                }
                t
            }
            Report::Diagnostics(r) => {
                let mut cols = vec!["operator".to_string()];
                cols.extend(NORM_EXPONENTS.iter().map(|p| format!("p{p}")));
                let mut t = Table {
                    columns: cols,
                    rows: Vec::new(),
                };
                for row in &r.rows {
                    let mut cells = vec![row.operator.clone()];
                    cells.extend(row.norms.iter().map(|&x| num(x)));
                    t.push(cells);
                }
                t
            }
        }
    }
}

fn rule_name(r: RuleId) -> String {
    r.name().to_string()
}

/// Shortest decimal that round-trips to the same f64, with −0 printed as 0.
fn num(x: f64) -> String {
    format!("{:?}", x + 0.0)
}

/// Header plus string rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// RFC 4180 CSV with a header line.
    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    /// Left-aligned columns separated by two spaces.
    pub fn pretty(&self) -> String {
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                std::iter::once(&self.columns[i])
                    .chain(self.rows.iter().map(|r| &r[i]))
                    .map(|c| c.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        std::iter::once(line(&self.columns))
            .chain(self.rows.iter().map(|r| line(r)))
            .collect()
    }
}
