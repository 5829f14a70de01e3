//! The `coinv` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::basis::{for_each_basis_element, hilbert_series, BasisElement, BasisVariant, WeylType};
use crate::combinat::{enumerate_partitions, set_braces, IndexSubset, Partition};
use crate::error::{Error, Result};
use crate::oracle::{hilbert_via_oracle, OracleConfig};
use crate::qpoly::QuvPolynomial;
use crate::smirnov::{enumerate_segmented_permutations, psi_inverse, sminv, split_set};
use crate::symfun::{
    frobenius_qsym_refined, frobenius_qsym_variant, hook_qbinomial_formula, latex_grouped, schur_expansion, sign_character_formula,
    FrobeniusData, QSymExpansion,
};
use crate::verify::{run_suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "coinv", version, about = "Bases, series and checks for (1,2) coinvariant rings")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Qsym,
    Schur,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List basis elements.
    Basis(BasisArgs),
    /// Hilbert series of a basis variant.
    Hilbert(HilbertArgs),
    /// Frobenius series in fundamental quasisymmetric or Schur form.
    Frobenius(FrobeniusArgs),
    /// Table of segmented permutations against basis elements.
    Bijection(BijectionArgs),
    /// Hook Schur coefficients: basis count against the q-binomial formula.
    Hook(HookArgs),
    /// Coefficients of h_mu.
    Hmu(HmuArgs),
    /// Run every property check up to n.
    Verify(VerifyArgs),
    /// Quotient dimensions by exact linear algebra.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "a12")]
    pub variant: BasisVariant,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "a12")]
    pub variant: BasisVariant,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct FrobeniusArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value = "a12")]
    pub variant: BasisVariant,
    #[arg(long, value_enum, default_value = "schur")]
    pub form: Form,
    /// Restrict to θ-degree k (requires --l).
    #[arg(long, requires = "l")]
    pub k: Option<u32>,
    /// Restrict to ξ-degree l (requires --k).
    #[arg(long, requires = "k")]
    pub l: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct BijectionArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct HookArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct HmuArgs {
    #[arg(long)]
    pub n: u32,
    /// Partition such as "2,1" (default: every partition of n).
    #[arg(long)]
    pub mu: Option<Partition>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: u32,
    /// Also run the oracle for type A n = 4 and type B n = 3.
    #[arg(long)]
    pub long: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: usize,
    /// a12 for the symmetric group, b12 for signed permutations.
    #[arg(long, default_value = "a12")]
    pub variant: BasisVariant,
    /// Largest x-degree examined (default: top q-degree + 2).
    #[arg(long)]
    pub max_x_degree: Option<u32>,
    /// Largest graded piece, in monomials.
    #[arg(long, default_value_t = 20_000)]
    pub piece_cap: usize,
    /// Allow the slow runs (type A n = 4, type B n = 3).
    #[arg(long)]
    pub long: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Parses `args` (program name first) and runs, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                if !rendered.contains("Usage:") {
                    let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                }
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Error::InvalidArgument("--jobs must be positive".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli.command))),
        None => dispatch(&cli.command),
    };
    match result {
        Ok(Outcome { text, failed }) => {
            let _ = out.write_all(text.as_bytes());
            if failed {
                EXIT_VERIFY_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}\n\n{}", Cli::command().render_usage());
            EXIT_INVALID
        }
    }
}

struct Outcome {
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, failed: false }
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Basis(a) => basis_cmd(a),
        Command::Hilbert(a) => hilbert_cmd(a),
        Command::Frobenius(a) => frobenius_cmd(a),
        Command::Bijection(a) => bijection_cmd(a),
        Command::Hook(a) => hook_cmd(a),
        Command::Hmu(a) => hmu_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Oracle(a) => oracle_cmd(a),
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("--n must be at least 1".into()));
    }
    Ok(())
}

fn check_filter(name: &str, value: Option<u32>, n: usize) -> Result<()> {
    match value {
        Some(v) if v as usize >= n => Err(Error::InvalidArgument(format!("--{name} {v} must be below n = {n}"))),
        _ => Ok(()),
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn unsupported(cmd: &str, f: Format) -> Error {
    Error::InvalidArgument(format!("{cmd} does not support --format {f:?}").to_lowercase())
}

fn subset_json(s: &IndexSubset) -> Value {
    json!(s.elements())
}

fn basis_cmd(a: &BasisArgs) -> Result<Outcome> {
    check_n(a.n)?;
    check_filter("k", a.k, a.n + 1)?;
    check_filter("l", a.l, a.n + 1)?;
    let mut elems: Vec<BasisElement> = Vec::new();
    for_each_basis_element(a.n, a.variant, |b| {
        if a.k.is_none_or(|k| b.deg_theta() == k) && a.l.is_none_or(|l| b.deg_xi() == l) {
            elems.push(b.clone());
        }
    })?;
    let text = match a.format {
        Format::Text => elems.iter().map(|b| b.monomial_string() + "\n").collect(),
        Format::Csv => {
            let mut s = String::from("monomial,deg_x,deg_theta,deg_xi,asc\n");
            for b in &elems {
                s.push_str(&format!(
                    "{},{},{},{},\"{}\"\n",
                    b.monomial_string(),
                    b.deg_x(),
                    b.deg_theta(),
                    b.deg_xi(),
                    set_braces(&b.ascent_set().elements())
                ));
            }
            s
        }
        Format::Json => {
            let items: Vec<Value> = elems
                .iter()
                .map(|b| {
                    json!({
                        "monomial": b.monomial_string(),
                        "alpha": b.alpha(),
                        "theta": b.theta(),
                        "xi": b.xi(),
                        "deg": [b.deg_x(), b.deg_theta(), b.deg_xi()],
                        "asc": subset_json(&b.ascent_set()),
                    })
                })
                .collect();
            json_text(&Value::Array(items))
        }
        f => return Err(unsupported("basis", f)),
    };
    Ok(Outcome::ok(text))
}

fn hilbert_cmd(a: &HilbertArgs) -> Result<Outcome> {
    check_n(a.n)?;
    let h = hilbert_series(a.n, a.variant)?;
    let text = match a.format {
        Format::Text => format!("{h}\n"),
        Format::Latex => format!("{}\n", latex_grouped(&h)),
        Format::Json => json_text(&h.to_json()),
        f => return Err(unsupported("hilbert", f)),
    };
    Ok(Outcome::ok(text))
}

fn qsym_text(f: &QSymExpansion, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => f.iter().map(|(s, c)| format!("Q{}: {c}\n", set_braces(&s.elements()))).collect(),
        Format::Latex => {
            let parts: Vec<String> = f
                .iter()
                .map(|(s, c)| {
                    let idx: Vec<String> = s.elements().iter().map(u32::to_string).collect();
                    format!("\\Big({}\\Big)Q_{{\\{{{}\\}},{}}}", latex_grouped(c), idx.join(","), f.n())
                })
                .collect();
            parts.join(" + ") + "\n"
        }
        Format::Json => {
            let items: Vec<Value> = f
                .iter()
                .map(|(s, c)| json!({"set": subset_json(s), "coeff": c.to_json()}))
                .collect();
            json_text(&Value::Array(items))
        }
        other => return Err(unsupported("frobenius", other)),
    })
}

fn frobenius_cmd(a: &FrobeniusArgs) -> Result<Outcome> {
    check_n(a.n as usize)?;
    let f = match (a.k, a.l) {
        (Some(k), Some(l)) => {
            if a.variant != BasisVariant::A12 {
                return Err(Error::InvalidArgument("--k/--l refine the a12 series only".into()));
            }
            if k + l >= a.n {
                return Err(Error::InvalidArgument("need k + l < n".into()));
            }
            frobenius_qsym_refined(a.n, k, l)?
        }
        _ => frobenius_qsym_variant(a.n, a.variant)?,
    };
    let text = match a.form {
        Form::Qsym => qsym_text(&f, a.format)?,
        Form::Schur => {
            let s = schur_expansion(&f)?;
            match a.format {
                Format::Text => format!("{s}\n"),
                Format::Latex => format!("{}\n", s.to_latex()),
                Format::Json => json_text(&serde_json::to_value(s.to_records()).expect("records serialize")),
                f => return Err(unsupported("frobenius", f)),
            }
        }
    };
    Ok(Outcome::ok(text))
}

/// Rows in table order: by split set (as a bitmask), then letters.
pub fn bijection_rows(n: usize) -> Result<Vec<BijectionRow>> {
    check_n(n)?;
    let mut sigmas = enumerate_segmented_permutations(n);
    sigmas.sort_by(|x, y| x.splits().mask().cmp(&y.splits().mask()).then_with(|| x.letters().cmp(y.letters())));
    sigmas
        .into_iter()
        .map(|sigma| {
            let b = psi_inverse(&sigma)?;
            Ok(BijectionRow {
                sigma: sigma.to_string(),
                basis_element: b.monomial_string(),
                k: sigma.ascents() as u32,
                l: sigma.descents() as u32,
                sminv: sminv(&sigma),
                split: split_set(&sigma)?.elements(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BijectionRow {
    pub sigma: String,
    pub basis_element: String,
    pub k: u32,
    pub l: u32,
    pub sminv: u32,
    pub split: Vec<u32>,
}

fn bijection_cmd(a: &BijectionArgs) -> Result<Outcome> {
    let rows = bijection_rows(a.n)?;
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("sigma,basis_element,k,l,sminv,split\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},\"{}\"\n",
                    r.sigma,
                    r.basis_element,
                    r.k,
                    r.l,
                    r.sminv,
                    set_braces(&r.split)
                ));
            }
            s
        }
        Format::Json => json_text(&serde_json::to_value(&rows).expect("rows serialize")),
        Format::Text => rows
            .iter()
            .map(|r| {
                format!(
                    "{}  <->  {}  k={} l={} sminv={} split={}\n",
                    r.sigma,
                    r.basis_element,
                    r.k,
                    r.l,
                    r.sminv,
                    set_braces(&r.split)
                )
            })
            .collect(),
        f => return Err(unsupported("bijection", f)),
    };
    Ok(Outcome::ok(text))
}

fn hook_cmd(a: &HookArgs) -> Result<Outcome> {
    let n = a.n;
    check_n(n as usize)?;
    for (name, v) in [("k", a.k), ("l", a.l), ("d", a.d)] {
        check_filter(name, v, n as usize)?;
    }
    let data = FrobeniusData::new(n)?;
    let mut rows = Vec::new();
    let mut failed = false;
    for k in 0..n {
        for l in 0..n - k {
            if a.k.is_some_and(|x| x != k) || a.l.is_some_and(|x| x != l) {
                continue;
            }
            for d in 0..n {
                if a.d.is_some_and(|x| x != d) {
                    continue;
                }
                let basis = data.hook_schur_coefficient(k, l, d)?;
                let formula = hook_qbinomial_formula(n, k, l, d)?;
                let hook_h = data.hook_h_coefficient(k, l, d)?;
                let mut agree = basis == formula;
                if d == 0 {
                    agree &= basis == sign_character_formula(n, k, l);
                }
                failed |= !agree;
                rows.push((k, l, d, hook_h, basis, formula, agree));
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::InvalidArgument("no (k, l) with k + l < n matches the filters".into()));
    }
    let text = match a.format {
        Format::Text => rows
            .iter()
            .map(|(k, l, d, h, b, f, ok)| {
                format!(
                    "k={k} l={l} d={d}  hook_h: {h}  schur(basis): {b}  formula: {f}  {}\n",
                    if *ok { "ok" } else { "MISMATCH" }
                )
            })
            .collect(),
        Format::Json => json_text(&Value::Array(
            rows.iter()
                .map(|(k, l, d, h, b, f, ok)| {
                    json!({"k": k, "l": l, "d": d, "hook_h": h.to_json(), "schur": b.to_json(), "formula": f.to_json(), "agree": ok})
                })
                .collect(),
        )),
        f => return Err(unsupported("hook", f)),
    };
    Ok(Outcome { text, failed })
}

fn hmu_cmd(a: &HmuArgs) -> Result<Outcome> {
    let n = a.n;
    check_n(n as usize)?;
    check_filter("k", a.k, n as usize)?;
    check_filter("l", a.l, n as usize)?;
    let mus = match &a.mu {
        Some(mu) if mu.size() != n => return Err(Error::InvalidArgument(format!("--mu {mu} is not a partition of {n}"))),
        Some(mu) => vec![mu.clone()],
        None => enumerate_partitions(n),
    };
    let data = FrobeniusData::new(n)?;
    let mut rows: Vec<(u32, u32, Partition, QuvPolynomial)> = Vec::new();
    for k in 0..n {
        for l in 0..n - k {
            if a.k.is_some_and(|x| x != k) || a.l.is_some_and(|x| x != l) {
                continue;
            }
            for mu in &mus {
                rows.push((k, l, mu.clone(), data.h_mu_coefficient(k, l, mu)?));
            }
        }
    }
    let text = match a.format {
        Format::Text => rows.iter().map(|(k, l, mu, c)| format!("k={k} l={l} mu={mu}: {c}\n")).collect(),
        Format::Json => json_text(&Value::Array(
            rows.iter()
                .map(|(k, l, mu, c)| json!({"k": k, "l": l, "mu": mu.parts(), "coeff": c.to_json()}))
                .collect(),
        )),
        f => return Err(unsupported("hmu", f)),
    };
    Ok(Outcome::ok(text))
}

fn verify_cmd(a: &VerifyArgs) -> Result<Outcome> {
    check_n(a.n as usize)?;
    let mut opts = VerifyOptions::new(a.n);
    if a.long {
        opts.oracle_n = 4;
    }
    let outcomes = run_suite(&opts)?;
    let failed = outcomes.iter().any(|o| !o.passed);
    let text = match a.format {
        Format::Text => {
            let mut s = String::new();
            for o in &outcomes {
                s.push_str(&format!("{:<16} {}\n", o.name, if o.passed { "PASS" } else { "FAIL" }));
                if let Some(w) = &o.witness {
                    s.push_str(&format!("  witness: {w}\n"));
                }
            }
            s
        }
        Format::Json => json_text(&serde_json::to_value(&outcomes).expect("outcomes serialize")),
        f => return Err(unsupported("verify", f)),
    };
    Ok(Outcome { text, failed })
}

fn oracle_cmd(a: &OracleArgs) -> Result<Outcome> {
    check_n(a.n)?;
    let kind = match a.variant {
        BasisVariant::A12 => WeylType::A,
        BasisVariant::B12 => WeylType::B,
        other => {
            return Err(Error::InvalidArgument(format!(
                "the oracle computes a12 or b12, not {}",
                other.name()
            )))
        }
    };
    let limit = match kind {
        WeylType::A => (3, 4),
        WeylType::B => (2, 3),
    };
    if a.n > limit.1 || (a.n > limit.0 && !a.long) {
        return Err(Error::InvalidArgument(format!(
            "oracle supports n <= {} for {} (n = {} with --long)",
            limit.0,
            a.variant.name(),
            limit.1
        )));
    }
    let n = a.n as u32;
    let top = match kind {
        WeylType::A => n * (n - 1) / 2,
        WeylType::B => n * n,
    };
    let mut config = OracleConfig::new(a.max_x_degree.unwrap_or(top + 2));
    config.piece_cap = a.piece_cap;
    let report = hilbert_via_oracle(a.n, kind, &config)?;
    let text = match a.format {
        Format::Text => {
            let mut s = String::new();
            for p in report.pieces.iter().filter(|p| p.quotient > 0) {
                s.push_str(&format!(
                    "degree ({},{},{})  ambient {}  ideal {}  quotient {}\n",
                    p.degree[0], p.degree[1], p.degree[2], p.ambient, p.ideal_rank, p.quotient
                ));
            }
            s.push_str(&format!("series: {}\n", report.series));
            s.push_str(&format!("complete: {}\n", report.complete));
            s
        }
        Format::Json => json_text(&report.to_json()),
        f => return Err(unsupported("oracle", f)),
    };
    Ok(Outcome::ok(text))
}
