//! Command-line front end for the `opuc` library.
//!
//! Every subcommand builds one [`Report`]. The binary renders it, and exits
//! with 2 when a checked residual is above `--tol`, or with 1 on bad input.

pub mod report;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use opuc::general_wm::{
    check_cosine_power_conjecture, general_sum_rule, shift_identity_residual, w_general, ShiftIdentity, MAX_W_ORDER,
};
use opuc::logmoments::{w0, w_closed};
use opuc::measures::{bs_measure, fourier_log_all, moment_oracle, TrigWeightPoly, DEFAULT_TOL, MAX_GRID, MIN_GRID};
use opuc::moments::moment_c;
use opuc::opuc_core::{coefficient, Method};
use opuc::sumrules::{
    condition_diagnostics, diagnostic_operators, quarantine_reason, reference_form, report_from, RuleId, NORM_EXPONENTS,
};
use opuc::{VerblunskySequence, C64};
use std::path::PathBuf;

pub use report::{Format, Report};

/// Highest order accepted by `coeffs`; the nested-sum methods grow exponentially.
pub const MAX_COEFF_ORDER: usize = 14;

#[derive(Debug, Parser)]
#[command(
    name = "opuc",
    version,
    about = "Orthogonal polynomials on the unit circle: formulas checked against quadrature"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct Common {
    /// Inline sequence spec, e.g. '{"kind":"explicit","values":[[0.5,0]]}'.
    #[arg(long, global = true, conflicts_with = "seq_file")]
    pub seq: Option<String>,
    /// Path to a JSON sequence spec.
    #[arg(long, global = true)]
    pub seq_file: Option<PathBuf>,
    /// Largest quadrature grid: a power of two in [256, 2^20].
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Residual threshold for exit status 2.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// a_{n,m} for n ≤ order by every method.
    Coeffs {
        /// Highest degree (default: support length).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Moments from the closed formula against quadrature.
    Moments {
        /// Highest moment index (default: twice the support length).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Logarithmic moments w_0..w_order: closed form, general formula and quadrature.
    Logmoments {
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// One sum rule (or `all`) against its quadrature integral.
    Sumrule {
        /// Rule id such as Z1 or Z41, or `all`.
        #[arg(long)]
        rule: String,
        /// Form name; `reference` picks the corrected form for quarantined rules.
        #[arg(long, default_value = "stated")]
        form: String,
    },
    /// ∫P log w against the general expansion for a cosine polynomial P.
    GeneralSumrule {
        /// Comma-separated cosine coefficients a_0,a_1,….
        #[arg(long, conflicts_with_all = ["rule", "n"])]
        weight: Option<String>,
        /// Take P from a named rule.
        #[arg(long, conflicts_with = "n")]
        rule: Option<String>,
        /// Take P = (1 − cosθ)^n.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Shift-operator norm identities swept over parameters up to `order`.
    Identities {
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Coefficient condition for (1 − cosθ)^n; reports, never fails.
    Conjecture {
        #[arg(long)]
        n: usize,
    },
    /// ℓᵖ norms of α and its shift differences.
    Diagnostics,
}

impl Common {
    /// Checks `--tol` and `--grid`.
    pub fn validate(&self) -> Result<()> {
        ensure!(
            self.tol.is_finite() && self.tol > 0.0,
            "--tol must be a positive number, got {}",
            self.tol
        );
        if let Some(g) = self.grid {
            ensure!(
                g.is_power_of_two() && (MIN_GRID..=MAX_GRID).contains(&g),
                "--grid must be a power of two in [{MIN_GRID}, {MAX_GRID}], got {g}"
            );
        }
        Ok(())
    }

    /// Tolerance handed to the converging quadratures.
    pub fn quadrature_tol(&self) -> f64 {
        self.tol.clamp(1e-13, DEFAULT_TOL)
    }

    /// The sequence named by `--seq` or `--seq-file`.
    pub fn sequence(&self) -> Result<VerblunskySequence> {
        let text = match (&self.seq, &self.seq_file) {
            (Some(s), _) => s.clone(),
            (None, Some(p)) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            (None, None) => bail!("this subcommand needs a sequence: pass --seq or --seq-file"),
        };
        Ok(VerblunskySequence::from_spec_json(&text)?)
    }
}

/// Validates the flags, applies `--grid`, and runs the subcommand.
pub fn execute(cli: &Cli) -> Result<Report> {
    let c = &cli.common;
    c.validate()?;
    if let Some(g) = c.grid {
        // The library reads its grid cap from the environment.
        std::env::set_var("OPUC_MAX_GRID", g.to_string());
    }
    let qtol = c.quadrature_tol();
    Ok(match &cli.command {
        Command::Coeffs { order } => {
            let seq = c.sequence()?;
            let order = order.unwrap_or(seq.len().max(1));
            ensure!(order <= MAX_COEFF_ORDER, "--order must be at most {MAX_COEFF_ORDER}");
            Report::Coeffs(coeffs(&seq, order)?)
        }
        Command::Moments { order } => {
            let seq = c.sequence()?;
            Report::Moments(moments(&seq, order.unwrap_or(2 * seq.len().max(1)), qtol)?)
        }
        Command::Logmoments { order } => {
            ensure!(*order <= MAX_W_ORDER, "--order must be at most {MAX_W_ORDER}");
            Report::Logmoments(logmoments(&c.sequence()?, *order, qtol)?)
        }
        Command::Sumrule { rule, form } => Report::Sumrule(sumrule(&c.sequence()?, rule, form, qtol)?),
        Command::GeneralSumrule { weight, rule, n } => {
            let p = match (weight, rule, n) {
                (Some(w), _, _) => parse_weight(w)?,
                (None, Some(r), _) => r.parse::<RuleId>()?.weight(),
                (None, None, Some(n)) => TrigWeightPoly::one_minus_cos(1).pow(*n as u32),
                (None, None, None) => bail!("general-sumrule needs --weight, --rule or --n"),
            };
            Report::GeneralSumrule(general_sum_rule(&c.sequence()?, &p, qtol)?)
        }
        Command::Identities { order } => {
            ensure!((1..=8).contains(order), "--order must be in 1..=8");
            Report::Identities(identities(&c.sequence()?, *order)?)
        }
        Command::Conjecture { n } => Report::Conjecture(check_cosine_power_conjecture(*n)?),
        Command::Diagnostics => {
            let seq = c.sequence()?;
            Report::Diagnostics(report::DiagnosticsReport {
                exponents: NORM_EXPONENTS.to_vec(),
                rows: condition_diagnostics(&seq),
            })
        }
    })
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

fn coeffs(seq: &VerblunskySequence, order: usize) -> Result<report::CoeffsReport> {
    let mut rows = Vec::new();
    for n in 0..=order {
        for m in 0..=n {
            let values = Method::ALL
                .iter()
                .map(|&method| coefficient(seq, n, m, method))
                .collect::<opuc::Result<Vec<C64>>>()?;
            let spread = max_of(values.iter().flat_map(|a| values.iter().map(move |b| (a - b).norm())));
            rows.push(report::CoeffRow { n, m, values, spread });
        }
    }
    Ok(report::CoeffsReport {
        order,
        methods: Method::ALL.iter().map(|m| m.name().to_string()).collect(),
        max_residual: max_of(rows.iter().map(|r| r.spread)),
        rows,
    })
}

fn moments(seq: &VerblunskySequence, order: usize, tol: f64) -> Result<report::MomentsReport> {
    let mu = bs_measure(seq);
    let rows = (0..=order)
        .map(|n| {
            let c = moment_c(seq, n);
            let oracle = moment_oracle(&mu, n as i64, tol)?;
            Ok(report::MomentRow {
                n,
                c,
                oracle,
                residual: (c - oracle).norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report::MomentsReport {
        order,
        max_residual: max_of(rows.iter().map(|r| r.residual)),
        rows,
    })
}

fn logmoments(seq: &VerblunskySequence, order: usize, tol: f64) -> Result<report::LogMomentsReport> {
    let quad = fourier_log_all(&bs_measure(seq), order, tol)?;
    let rows = (0..=order)
        .map(|m| {
            let (closed, general) = if m == 0 {
                let w = C64::new(w0(seq), 0.0);
                (Some(w), Some(w))
            } else {
                let closed = if m <= 4 { Some(w_closed(seq, m)?) } else { None };
                (closed, Some(w_general(seq, m)?))
            };
            let q = quad[m];
            let residual = max_of([closed, general].into_iter().flatten().map(|v| (v - q).norm()));
            Ok(report::LogMomentRow {
                m,
                closed,
                general,
                quadrature: q,
                residual,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report::LogMomentsReport {
        order,
        max_residual: max_of(rows.iter().map(|r| r.residual)),
        rows,
    })
}

fn sumrule(seq: &VerblunskySequence, rule: &str, form: &str, tol: f64) -> Result<report::SumRuleRun> {
    let rules: Vec<RuleId> = if rule.eq_ignore_ascii_case("all") {
        RuleId::ALL.to_vec()
    } else {
        vec![rule.parse()?]
    };
    let mut entries = Vec::with_capacity(rules.len());
    for r in rules {
        let f = if form == "reference" {
            reference_form(r)
        } else {
            opuc::sumrules::form(r, form)?
        };
        let lhs = opuc::sumrules::lhs(seq, r, tol)?;
        entries.push(report::SumRuleEntry {
            report: report_from(r, &f, lhs, opuc::sumrules::evaluate(seq, &f)),
            quarantine: quarantine_reason(r).map(str::to_string),
        });
    }
    Ok(report::SumRuleRun {
        max_residual: max_of(entries.iter().map(|e| e.report.residual)),
        entries,
    })
}

/// Parses "a0,a1,…" into a cosine polynomial.
pub fn parse_weight(text: &str) -> Result<TrigWeightPoly> {
    let coeffs = text
        .split(',')
        .enumerate()
        .map(|(i, s)| {
            let v: f64 = s
                .trim()
                .parse()
                .with_context(|| format!("--weight entry {i}: `{}` is not a number", s.trim()))?;
            ensure!(v.is_finite(), "--weight entry {i} is not finite");
            Ok(v)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(TrigWeightPoly::new(coeffs))
}

/// The identity instances checked by `identities` for parameters up to `order`.
pub fn identity_sweep(order: usize) -> Vec<(String, ShiftIdentity)> {
    let mut out = Vec::new();
    for k in 1..=order {
        out.push((
            format!("binomial-difference k={k}"),
            ShiftIdentity::BinomialDifference { k },
        ));
        out.push((format!("binomial-sum k={k}"), ShiftIdentity::BinomialSum { k }));
    }
    for m in 1..=order {
        for k in 1..=order {
            out.push((
                format!("mixed-difference m={m} k={k}"),
                ShiftIdentity::MixedDifference { m, k },
            ));
            out.push((format!("mixed-sum m={m} k={k}"), ShiftIdentity::MixedSum { m, k }));
        }
    }
    for m in 0..=order {
        for n in 0..m {
            for p in 0..=order {
                for q in 0..p {
                    out.push((
                        format!("shift-product m={m} n={n} p={p} q={q}"),
                        ShiftIdentity::ShiftProduct { m, n, p, q },
                    ));
                }
            }
        }
    }
    for (name, op) in diagnostic_operators() {
        out.push((
            format!("real-polynomial {name}"),
            ShiftIdentity::RealPolynomial { coeffs: op },
        ));
    }
    for n in 1..=order {
        let p = TrigWeightPoly::one_minus_cos(1).pow(n as u32);
        out.push((format!("factorized (1-cos)^{n}"), ShiftIdentity::Factorized { p }));
    }
    for r in RuleId::ALL {
        let p = r.weight();
        if p.at_zero().abs() < 1e-12 {
            out.push((format!("factorized {}", r.name()), ShiftIdentity::Factorized { p }));
        }
    }
    out
}

fn identities(seq: &VerblunskySequence, order: usize) -> Result<report::IdentitiesReport> {
    let alpha = seq.entries();
    let rows = identity_sweep(order)
        .into_iter()
        .map(|(identity, id)| {
            let residual = shift_identity_residual(alpha, &id).with_context(|| identity.clone())?;
            Ok(report::IdentityRow { identity, residual })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report::IdentitiesReport {
        order,
        max_residual: max_of(rows.iter().map(|r| r.residual)),
        rows,
    })
}
