//! Command-line surface. Exit statuses: 0 success, 1 failed `--assert`,
//! 2 domain or parse error, 3 non-convergence.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{Map, Value};

use crate::dr::{self, TestFn, Truncation};
use crate::error::{Error, Result};
use crate::exact::{self, LambdaConvention};
use crate::family::{Family, FamilyParams};
use crate::identity::{self, CaseFlags, IdentityReport, ReportRecord, SweepGrid, TheoremCase, TheoremId};
use crate::numerics::{self, rational_to_decimal, HPComplex, HPReal, DEFAULT_DIGITS, DIGITS_ENV, DISPLAY_DIGITS};
use crate::quadrature;
use crate::zeta::{self, EvalRequest, Function, Normalization};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERT: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "zetadr", version, about = "High-precision zeta family, delta-comb pairings and identity residuals")]
pub struct Cli {
    /// Working precision in decimal digits (at least 50).
    #[arg(long, global = true, env = DIGITS_ENV)]
    pub digits: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "plain")]
    pub format: Format,
    /// Write the payload to this file (atomically) instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one member of the zeta family.
    Eval(EvalArgs),
    /// Run one identity case three ways.
    Identity(IdentityArgs),
    /// Run an identity over a grid of q (outer) and b (inner) values.
    Sweep(SweepArgs),
    /// Exact Bernoulli number or polynomial value.
    Bernoulli(BernoulliArgs),
    /// Dump a delta comb or pair it with a test function.
    Dr(DrArgs),
    /// Real-line integral of a family's transform against its reference value.
    Ftr(FtrArgs),
    /// The full identity ledger as one markdown document.
    Report,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// gamma, gamma_b, zeta, zeta_b, hurwitz, hurwitz_b, lerch, lerch_b, eta, lambda
    #[arg(long = "fn")]
    pub function: String,
    /// `re` or `re,im`
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// gamma-normalized or unnormalized
    #[arg(long)]
    pub normalization: Option<String>,
    /// lambda convention: paper or standard
    #[arg(long)]
    pub convention: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AssertKind {
    /// value side against the closed form
    Rhs,
    /// DR side against the closed form
    Dr,
    /// value side against the DR side
    Value,
}

#[derive(Debug, Args)]
pub struct CaseArgs {
    #[arg(long = "n-start", default_value_t = 0)]
    pub n_start: u8,
    #[arg(long = "lambda-convention", default_value = "standard")]
    pub lambda_convention: String,
    /// Multiply the T2 closed form by 2π as printed.
    #[arg(long = "rhs-two-pi")]
    pub rhs_two_pi: bool,
    /// Normalization of the extended integrals on the T2/T4 value side.
    #[arg(long, default_value = "unnormalized")]
    pub normalization: String,
    /// Last m of the value-side series.
    #[arg(long, default_value_t = identity::DEFAULT_TRUNC)]
    pub trunc: usize,
    /// Turn one comparison into an exit-status gate.
    #[arg(long = "assert", value_enum)]
    pub assert_kind: Option<AssertKind>,
    #[arg(long, default_value = "1e-20")]
    pub tol: String,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long)]
    pub id: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub q: String,
    #[command(flatten)]
    pub case: CaseArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub id: String,
    /// Comma-separated b values.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub b: String,
    /// Comma-separated q values.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub q: String,
    #[command(flatten)]
    pub case: CaseArgs,
}

#[derive(Debug, Args)]
pub struct BernoulliArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    /// Bernoulli polynomial B_n(q) instead of the number.
    #[arg(long)]
    pub poly: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
}

#[derive(Debug, Args)]
pub struct DrArgs {
    /// gamma, egamma, rzf, erzf, hzf, ehzf, hlzf, ehlzf
    #[arg(long)]
    pub family: String,
    /// Index cap: last value of every index (dump) or of the geometric and
    /// independent indices (pairing).
    #[arg(long, default_value_t = 60)]
    pub trunc: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Emit the comb terms instead of pairing.
    #[arg(long)]
    pub dump: bool,
    /// one, eta, lambda-paper, lambda-standard, or exp:<c> for c^(-s)
    #[arg(long, default_value = "one")]
    pub phi: String,
    #[arg(long = "n-start", default_value_t = 0)]
    pub n_start: u8,
}

#[derive(Debug, Args)]
pub struct FtrArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub tau: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Quadrature tolerance; default 10^(-digits/2).
    #[arg(long)]
    pub tol: Option<String>,
}

/// Rendered output of a command.
enum Payload {
    /// One record; `plain` overrides the key/value listing when set.
    Fields { fields: Vec<(String, String)>, plain: Option<String> },
    Reports(Vec<ReportRecord>),
    Sweep(Vec<identity::SweepRecord>),
    /// A document emitted verbatim in every format.
    Text(String),
}

struct Outcome {
    payload: Payload,
    assert_failure: Option<String>,
}

impl From<Payload> for Outcome {
    fn from(payload: Payload) -> Self {
        Outcome { payload, assert_failure: None }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_convergence() {
        EXIT_CONVERGENCE
    } else {
        EXIT_DOMAIN
    }
}

/// Entry point for the binary.
pub fn main_exit() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = err.write_all(text.as_bytes());
                EXIT_DOMAIN
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let text = match render(&outcome.payload, cli.format) {
                Ok(t) => t,
                Err(e) => return fail(err, &e),
            };
            if let Err(e) = emit(&text, cli.output.as_deref(), out) {
                return fail(err, &e);
            }
            match outcome.assert_failure {
                Some(msg) => {
                    let _ = writeln!(err, "assertion failed: {msg}");
                    EXIT_ASSERT
                }
                None => EXIT_OK,
            }
        }
        Err(e) => fail(err, &e),
    }
}

fn fail(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    exit_code(e)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Resource(format!("writing output: {e}"));
    match path {
        None => out.write_all(text.as_bytes()).map_err(io),
        Some(p) => {
            let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.persist(p).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn digits(cli: &Cli) -> Result<u32> {
    match &cli.digits {
        Some(raw) => numerics::parse_digits(raw),
        None => Ok(DEFAULT_DIGITS),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let d = digits(cli)?;
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, d).map(Into::into),
        Command::Identity(a) => cmd_identity(a, d),
        Command::Sweep(a) => cmd_sweep(a, d),
        Command::Bernoulli(a) => cmd_bernoulli(a, d).map(Into::into),
        Command::Dr(a) => cmd_dr(a, d).map(Into::into),
        Command::Ftr(a) => cmd_ftr(a, d).map(Into::into),
        Command::Report => Ok(Payload::Text(identity::ledger_report(d)?).into()),
    }
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str, d: u32) -> Result<HPComplex> {
    match s.split_once(',') {
        Some((re, im)) => Ok(HPComplex::new(HPReal::parse(re, d)?, HPReal::parse(im, d)?)),
        None => Ok(HPComplex::from_real(HPReal::parse(s, d)?)),
    }
}

/// `one`, `eta`, `lambda-paper`, `lambda-standard` or `exp:<c>`.
pub fn parse_test_fn(s: &str) -> Result<TestFn> {
    let s = s.trim();
    match s {
        "one" => Ok(TestFn::One),
        "eta" => Ok(TestFn::EtaFactor),
        "lambda-paper" => Ok(TestFn::LambdaPaper),
        "lambda-standard" => Ok(TestFn::LambdaStandard),
        _ => {
            let c = s
                .strip_prefix("exp:")
                .or_else(|| s.strip_prefix("exp-scale:"))
                .ok_or_else(|| Error::Parse(format!("unknown test function {s:?}")))?;
            let c = exact::parse_rational(c)?;
            if c <= BigRational::zero() {
                return Err(Error::Domain("exp scale must be positive".into()));
            }
            Ok(TestFn::ExpScale(c))
        }
    }
}

fn show(x: &HPComplex) -> String {
    x.to_decimal(DISPLAY_DIGITS)
}

fn kv(k: &str, v: impl Into<String>) -> (String, String) {
    (k.to_string(), v.into())
}

fn cmd_eval(a: &EvalArgs, d: u32) -> Result<Payload> {
    let function: Function = a.function.parse()?;
    let s = parse_complex(&a.s, d)?;
    let mut req = EvalRequest::new(function, s.clone());
    if let Some(av) = &a.a {
        req = match exact::parse_rational(av) {
            Ok(r) => req.with_a_exact(r),
            Err(_) => req.with_a(parse_complex(av, d)?),
        };
    }
    if let Some(z) = &a.z {
        req = req.with_z(parse_complex(z, d)?);
    }
    if let Some(b) = &a.b {
        req = req.with_b(HPReal::parse(b, d)?);
    }
    if let Some(n) = &a.normalization {
        req = req.with_normalization(n.parse()?);
    }
    if let Some(c) = &a.convention {
        req = req.with_convention(c.parse()?);
    }
    let ev = zeta::evaluate(&req)?;
    let mut fields = vec![kv("function", function.as_str()), kv("s", show(&s))];
    if matches!(function, Function::ZetaB | Function::HurwitzB | Function::LerchB) {
        let n = req.normalization.unwrap_or(function.default_normalization());
        fields.push(kv("normalization", n.as_str()));
    }
    if let Some(c) = req.lambda_convention {
        fields.push(kv("convention", c.as_str()));
    }
    fields.push(kv("value", show(&ev.value)));
    if let Some(r) = &ev.exact {
        fields.push(kv("exact", r.to_string()));
    }
    fields.push(kv("abs_error_estimate", ev.abs_error_estimate.to_decimal(6)));
    fields.push(kv("route", ev.route.as_str()));
    fields.push(kv("digits", d.to_string()));
    Ok(Payload::Fields { fields, plain: None })
}

fn case_flags(c: &CaseArgs) -> Result<CaseFlags> {
    let normalization: Normalization = c.normalization.parse()?;
    Ok(CaseFlags {
        n_start: c.n_start,
        lambda_convention: c.lambda_convention.parse::<LambdaConvention>()?,
        rhs_two_pi: c.rhs_two_pi,
        extended_normalization: normalization,
    })
}

fn parse_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(exact::parse_rational).collect()
}

/// `None` when the chosen comparison is within `tol`.
fn check_assert(kind: AssertKind, tol: &HPReal, rep: &IdentityReport) -> Option<String> {
    let (label, res) = match kind {
        AssertKind::Rhs => ("|value side - closed form|", &rep.residual_value_vs_rhs),
        AssertKind::Dr => ("|DR side - closed form|", &rep.residual_dr_vs_rhs),
        AssertKind::Value => ("|value side - DR side|", &rep.residual_value_vs_dr),
    };
    let case = format!("{} (b = {}, q = {})", rep.case.id, rep.case.b, rep.case.q);
    match res {
        None => Some(format!("{case}: {label} unavailable")),
        Some(r) if r > tol => Some(format!("{case}: {label} = {} > {}", r.to_decimal(6), tol.to_decimal(6))),
        Some(_) => None,
    }
}

fn cmd_identity(a: &IdentityArgs, d: u32) -> Result<Outcome> {
    let id: TheoremId = a.id.parse()?;
    let case = TheoremCase::new(id, d)
        .with_b(exact::parse_rational(&a.b)?)
        .with_q(exact::parse_rational(&a.q)?)
        .with_flags(case_flags(&a.case)?)
        .with_trunc(a.case.trunc);
    let tol = HPReal::parse(&a.case.tol, d)?;
    let rep = identity::run_theorem(&case)?;
    let assert_failure = a.case.assert_kind.and_then(|k| check_assert(k, &tol, &rep));
    Ok(Outcome { payload: Payload::Reports(vec![rep.record(DISPLAY_DIGITS)]), assert_failure })
}

fn cmd_sweep(a: &SweepArgs, d: u32) -> Result<Outcome> {
    let id: TheoremId = a.id.parse()?;
    let grid = SweepGrid {
        id,
        q: parse_list(&a.q)?,
        b: parse_list(&a.b)?,
        flags: case_flags(&a.case)?,
        trunc: a.case.trunc,
        digits: d,
    };
    let tol = HPReal::parse(&a.case.tol, d)?;
    let points = identity::sweep(&grid);
    let mut failures = Vec::new();
    if let Some(kind) = a.case.assert_kind {
        for p in &points {
            match &p.outcome {
                Ok(rep) => failures.extend(check_assert(kind, &tol, rep)),
                Err(e) => failures.push(format!("{id} (b = {}, q = {}): {e}", p.b, p.q)),
            }
        }
    }
    let records = points.iter().map(|p| p.record(id, DISPLAY_DIGITS)).collect();
    let assert_failure = if failures.is_empty() { None } else { Some(failures.join("; ")) };
    Ok(Outcome { payload: Payload::Sweep(records), assert_failure })
}

fn cmd_bernoulli(a: &BernoulliArgs, d: u32) -> Result<Payload> {
    if a.n < 0 {
        return Err(Error::Domain(format!("n must be non-negative, got {}", a.n)));
    }
    let n = a.n as usize;
    let (value, mut fields) = if a.poly {
        let q = a.q.as_deref().ok_or_else(|| Error::Domain("--poly needs --q".into()))?;
        let q = exact::parse_rational(q)?;
        let v = exact::bernoulli_poly(n, &q)?;
        (v, vec![kv("n", n.to_string()), kv("q", q.to_string())])
    } else {
        (exact::bernoulli(n)?, vec![kv("n", n.to_string())])
    };
    fields.push(kv("value", value.to_string()));
    fields.push(kv("decimal", rational_to_decimal(&value, DISPLAY_DIGITS.min(d))));
    Ok(Payload::Fields { fields, plain: Some(format!("{value}\n")) })
}

fn family_params(d: u32, a: &Option<String>, b: &Option<String>, z: &Option<String>) -> Result<FamilyParams> {
    let mut p = FamilyParams::new(d);
    if let Some(a) = a {
        p = p.with_a(parse_complex(a, d)?);
    }
    if let Some(b) = b {
        p = p.with_b(HPReal::parse(b, d)?);
    }
    if let Some(z) = z {
        p = p.with_z(parse_complex(z, d)?);
    }
    Ok(p)
}

fn cmd_dr(a: &DrArgs, d: u32) -> Result<Payload> {
    let family: Family = a.family.parse()?;
    let params = family_params(d, &a.a, &a.b, &a.z)?;
    let comb = dr::build_dr(family, &params)?;
    if a.dump {
        return Ok(Payload::Text(comb.dump_json(a.trunc)? + "\n"));
    }
    let phi = parse_test_fn(&a.phi)?;
    let trunc = Truncation { geometric: a.trunc, factorial: a.trunc, ..Truncation::default() };
    let r = dr::inner_product(&comb, &phi, &trunc, a.n_start)?;
    let truncs: Vec<String> = r.truncations.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let fields = vec![
        kv("family", family.as_str()),
        kv("phi", phi.name()),
        kv("value", show(&r.value)),
        kv("value_with_2pi", show(&r.value_with_2pi)),
        kv("tail_bound", r.tail_bound.to_decimal(6)),
        kv("n_start", r.n_start.to_string()),
        kv("truncations", truncs.join(";")),
    ];
    Ok(Payload::Fields { fields, plain: None })
}

/// `Γ(s)·f(s)` for the family, when it has an independent closed route.
fn ftr_reference(family: Family, s: &HPComplex, p: &FamilyParams) -> Result<Option<HPComplex>> {
    if family.is_extended() && !p.b.is_zero() {
        return Ok(None);
    }
    let g = zeta::gamma(s)?;
    let f = match family.base() {
        Family::Gamma => return Ok(Some(g)),
        Family::Rzf => zeta::zeta(s)?,
        Family::Hzf => zeta::hurwitz(s, &p.a)?,
        _ => zeta::lerch(&p.z, s, &p.a)?,
    };
    Ok(Some(&g * &f))
}

fn cmd_ftr(a: &FtrArgs, d: u32) -> Result<Payload> {
    let family: Family = a.family.parse()?;
    let params = family_params(d, &a.a, &a.b, &a.z)?;
    let sigma = HPReal::parse(&a.sigma, d)?;
    let tau = HPReal::parse(&a.tau, d)?;
    let tol = match &a.tol {
        Some(t) => HPReal::parse(t, d)?,
        None => quadrature::default_tolerance(d),
    };
    let q = quadrature::ftr_check(family, &sigma, &tau, &params, &tol)?;
    let s = HPComplex::new(sigma, tau);
    let mut fields = vec![
        kv("family", family.as_str()),
        kv("s", show(&s)),
        kv("integral", show(&q.value)),
        kv("abs_error_estimate", q.abs_error_estimate.to_decimal(6)),
        kv("evaluations", q.evaluations.to_string()),
        kv("level", q.level.to_string()),
    ];
    match ftr_reference(family, &s, &params)? {
        Some(r) => {
            fields.push(kv("reference", show(&r)));
            fields.push(kv("difference", (&q.value - &r).abs().to_decimal(6)));
        }
        None => fields.push(kv("reference", "none (no independent closed form for b > 0)")),
    }
    Ok(Payload::Fields { fields, plain: None })
}

fn render(p: &Payload, f: Format) -> Result<String> {
    let json_err = |e: serde_json::Error| Error::Resource(e.to_string());
    Ok(match p {
        Payload::Text(t) => t.clone(),
        Payload::Fields { fields, plain } => match f {
            Format::Plain => match plain {
                Some(t) => t.clone(),
                None => fields.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
            },
            Format::Json => {
                let map: Map<String, Value> = fields.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                serde_json::to_string_pretty(&Value::Object(map)).map_err(json_err)? + "\n"
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Resource(e.to_string());
                w.write_record(fields.iter().map(|(k, _)| k)).map_err(io)?;
                w.write_record(fields.iter().map(|(_, v)| v)).map_err(io)?;
                let bytes = w.into_inner().map_err(|e| Error::Resource(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Error::Resource(e.to_string()))?
            }
            Format::Md => {
                let mut s = String::from("| field | value |\n|---|---|\n");
                for (k, v) in fields {
                    s.push_str(&format!("| {k} | {v} |\n"));
                }
                s
            }
        },
        Payload::Reports(recs) => match f {
            Format::Json => identity::to_json(recs)? + "\n",
            Format::Csv => identity::to_csv(recs)?,
            Format::Md => identity::to_markdown(recs),
            Format::Plain => recs.iter().map(plain_report).collect::<Vec<_>>().join("\n"),
        },
        Payload::Sweep(recs) => match f {
            Format::Json => identity::sweep_to_json(recs)? + "\n",
            Format::Csv => identity::sweep_to_csv(recs)?,
            Format::Md => identity::sweep_to_markdown(recs),
            Format::Plain => recs
                .iter()
                .map(|r| match r {
                    identity::SweepRecord::Report(rep) => plain_report(rep),
                    identity::SweepRecord::Failed { id, q, b, error } => format!("{id} (b = {b}, q = {q}) failed: {error}\n"),
                })
                .collect::<Vec<_>>()
                .join("\n"),
        },
    })
}

fn plain_report(r: &ReportRecord) -> String {
    let na = || "unavailable".to_string();
    let mut s = format!(
        "{} (b = {}, q = {}, n_start = {}, lambda = {})\n",
        r.id,
        r.b,
        r.q,
        r.flags.n_start,
        r.flags.lambda_convention.as_str()
    );
    let value = match (&r.value_side, &r.value_side_error) {
        (Some(v), _) => format!("{} (terms {}, converged {})", v.value, v.terms_used, v.converged),
        (None, Some(e)) => format!("failed: {e}"),
        _ => na(),
    };
    let drs = match (&r.dr_side, &r.dr_side_error) {
        (Some(v), _) => format!("{} (tail bound {})", v.value, v.tail_bound),
        (None, Some(e)) => format!("failed: {e}"),
        _ => na(),
    };
    s.push_str(&format!("  value side:  {value}\n"));
    s.push_str(&format!("  DR side:     {drs}\n"));
    s.push_str(&format!("  closed form: {}\n", r.paper_rhs));
    s.push_str(&format!("  |value - rhs|: {}\n", r.residual_value_vs_rhs.clone().unwrap_or_else(na)));
    s.push_str(&format!("  |DR - rhs|:    {}\n", r.residual_dr_vs_rhs.clone().unwrap_or_else(na)));
    s.push_str(&format!("  |value - DR|:  {}\n", r.residual_value_vs_dr.clone().unwrap_or_else(na)));
    for n in &r.notes {
        s.push_str(&format!("  note: {n}\n"));
    }
    s
}
