use super::{run_suite, ModeChoice, Status, SuiteConfig, SuiteReport, SCHEMA, SUITES};
use crate::algebra::{parse_ratfunc, RatFunc, Q, V};
use crate::error::Error;
use crate::lfactors::{default_mu_unit, CharacterTuple};
use crate::rootdata::{build_case, CaseDescriptor, Cocharacter, FieldKind};
use crate::wsformula::{ws_normalized, WSQuery};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "shintani",
    version,
    about = "Evaluate Whittaker-Shintani functions and verify the surrounding identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the normalized function at one cocharacter
    Eval(EvalArgs),
    /// Evaluate over a grid of cocharacters, one CSV/JSON row each
    Table(EvalArgs),
    /// Run an identity suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseArg {
    Split,
    Inert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Modular,
}

#[derive(Args, Debug, Clone)]
pub struct CaseArgs {
    #[arg(long = "case", value_enum)]
    pub case: Option<CaseArg>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// comma-separated expressions; default x1, x2, ...
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<String>,
    /// comma-separated expressions; default y1, y2, ...
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    /// mu(varpi); default u (split) or -1 (inert)
    #[arg(long = "mu-unit", allow_hyphen_values = true)]
    pub mu_unit: Option<String>,
    /// comma-separated integers; `table` takes a ';'-separated list
    #[arg(long = "lambda-v", allow_hyphen_values = true)]
    pub lambda_v: Option<String>,
    #[arg(long = "lambda-w", allow_hyphen_values = true)]
    pub lambda_w: Option<String>,
    /// substitute q_F = v^2
    #[arg(long)]
    pub q: Option<String>,
    /// JSON request document ('-' for stdin); overrides the other flags
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[command(flatten)]
    pub case: CaseArgs,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, default_value_t = crate::algebra::identity::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "max-rank")]
    pub max_rank: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

/// JSON request for `eval`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalRequest {
    pub schema: u32,
    pub case: CaseArg,
    pub n: usize,
    pub m: usize,
    #[serde(default)]
    pub chi: Option<Vec<String>>,
    #[serde(default)]
    pub eta: Option<Vec<String>>,
    #[serde(default)]
    pub mu_unit: Option<String>,
    #[serde(default)]
    pub lambda_v: Option<Vec<i64>>,
    #[serde(default)]
    pub lambda_w: Option<Vec<i64>>,
    #[serde(default)]
    pub q: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalRow {
    pub schema: u32,
    pub case: String,
    pub n: usize,
    pub m: usize,
    pub lambda_v: Vec<i64>,
    pub lambda_w: Vec<i64>,
    pub value: String,
    pub q: Option<String>,
    pub value_at_q: Option<String>,
    /// set when the value is a rational number
    pub numeric: Option<String>,
}

/// Failure kinds mapped to exit codes 2 and 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Usage(s) => CliError::Usage(s),
            other => CliError::Domain(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn field(c: CaseArg) -> FieldKind {
    match c {
        CaseArg::Split => FieldKind::Split,
        CaseArg::Inert => FieldKind::Inert,
    }
}

fn field_name(c: &CaseDescriptor) -> &'static str {
    if c.is_split() {
        "split"
    } else {
        "inert"
    }
}

fn resolve_case(a: &CaseArgs) -> CliResult<Option<CaseDescriptor>> {
    match (a.case, a.n, a.m) {
        (None, None, None) => Ok(None),
        (Some(k), Some(n), Some(m)) => build_case(field(k), n, m).map(Some).map_err(|e| CliError::Usage(e.to_string())),
        _ => usage("--case, --n and --m must be given together"),
    }
}

pub fn parse_int_vec(s: &str) -> CliResult<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad integer '{}'", t.trim()))))
        .collect()
}

fn parse_exprs(s: &[String]) -> CliResult<Vec<RatFunc>> {
    s.iter()
        .map(|t| parse_ratfunc(t.trim()).map_err(|e| CliError::Usage(format!("bad expression '{}': {}", t.trim(), e))))
        .collect()
}

fn split_list(s: &Option<String>) -> Option<Vec<String>> {
    s.as_ref().map(|t| if t.trim().is_empty() { vec![] } else { t.split(',').map(|x| x.to_string()).collect() })
}

struct Request {
    case: CaseDescriptor,
    chars: CharacterTuple,
    q: Option<(String, Q)>,
}

fn build_request(
    case: CaseDescriptor,
    chi: Option<Vec<String>>,
    eta: Option<Vec<String>>,
    mu: Option<String>,
    q: Option<String>,
) -> CliResult<Request> {
    let mut chars = CharacterTuple::symbolic(&case);
    if let Some(c) = chi {
        chars.chi = parse_exprs(&c)?;
    }
    if let Some(e) = eta {
        chars.eta = parse_exprs(&e)?;
    }
    chars.mu_unit = match mu {
        Some(s) => parse_exprs(&[s])?.remove(0),
        None => default_mu_unit(&case),
    };
    if chars.chi.len() != case.n_minus || chars.eta.len() != case.m_minus {
        return usage(format!(
            "expected {} chi and {} eta values, got {} and {}",
            case.n_minus,
            case.m_minus,
            chars.chi.len(),
            chars.eta.len()
        ));
    }
    let q = match q {
        None => None,
        Some(s) => match Q::parse(s.trim()) {
            Some(v) if !v.is_zero() => Some((s.trim().to_string(), v)),
            _ => return usage(format!("bad --q value '{}'", s)),
        },
    };
    Ok(Request { case, chars, q })
}

fn evaluate(req: &Request, lam: Cocharacter) -> CliResult<EvalRow> {
    let f = ws_normalized(&WSQuery::new(&req.case, req.chars.clone(), lam.clone()))?;
    let (q, value_at_q, numeric) = match &req.q {
        None => (None, None, f.as_constant().map(|c| c.to_string())),
        Some((s, qv)) => match f.subs_root(V, 2, qv).map_err(|e| CliError::Domain(e.to_string()))? {
            Some(g) => (Some(s.clone()), Some(g.to_string()), g.as_constant().map(|c| c.to_string())),
            None => (Some(s.clone()), None, None),
        },
    };
    Ok(EvalRow {
        schema: SCHEMA,
        case: field_name(&req.case).into(),
        n: req.case.n,
        m: req.case.m,
        lambda_v: lam.lambda_v,
        lambda_w: lam.lambda_w,
        value: f.to_string(),
        q,
        value_at_q,
        numeric,
    })
}

fn read_input(path: &str) -> CliResult<String> {
    let r = if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    r.map_err(|e| CliError::Usage(format!("cannot read {}: {}", path, e)))
}

fn eval_inputs(a: &EvalArgs) -> CliResult<(Request, Option<String>, Option<String>)> {
    if let Some(path) = &a.input {
        let doc: EvalRequest = serde_json::from_str(&read_input(path)?)
            .map_err(|e| CliError::Usage(format!("malformed request: {}", e)))?;
        if doc.schema != SCHEMA {
            return usage(format!("unsupported schema {}", doc.schema));
        }
        let case = build_case(field(doc.case), doc.n, doc.m).map_err(|e| CliError::Usage(e.to_string()))?;
        let join = |v: Option<Vec<i64>>| v.map(|v| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","));
        let req = build_request(case, doc.chi, doc.eta, doc.mu_unit, doc.q)?;
        return Ok((req, join(doc.lambda_v), join(doc.lambda_w)));
    }
    let Some(case) = resolve_case(&a.case)? else { return usage("--case, --n and --m are required") };
    let req = build_request(case, split_list(&a.chi), split_list(&a.eta), a.mu_unit.clone(), a.q.clone())?;
    Ok((req, a.lambda_v.clone(), a.lambda_w.clone()))
}

fn lambda_or_zero(s: Option<&str>, len: usize) -> CliResult<Vec<i64>> {
    match s {
        Some(t) => parse_int_vec(t),
        None => Ok(vec![0; len]),
    }
}

const CSV_HEADER: [&str; 9] = ["case", "n", "m", "lambda_v", "lambda_w", "value", "q", "value_at_q", "numeric"];

fn csv_rows(rows: &[EvalRow]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    let io = |e: csv::Error| CliError::Domain(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    let join = |v: &[i64]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
    for r in rows {
        w.write_record([
            r.case.clone(),
            r.n.to_string(),
            r.m.to_string(),
            join(&r.lambda_v),
            join(&r.lambda_w),
            r.value.clone(),
            r.q.clone().unwrap_or_default(),
            r.value_at_q.clone().unwrap_or_default(),
            r.numeric.clone().unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn run_eval(a: &EvalArgs) -> CliResult<String> {
    let (req, lv, lw) = eval_inputs(a)?;
    let lam = Cocharacter::new(
        lambda_or_zero(lv.as_deref(), req.case.n_minus)?,
        lambda_or_zero(lw.as_deref(), req.case.m_minus)?,
    );
    let row = evaluate(&req, lam)?;
    match a.format {
        Format::Json => Ok(to_json(&row)),
        Format::Csv => csv_rows(&[row]),
    }
}

#[derive(Serialize)]
struct TableDoc {
    schema: u32,
    rows: Vec<EvalRow>,
}

pub fn run_table(a: &EvalArgs) -> CliResult<String> {
    let (req, lv, lw) = eval_inputs(a)?;
    let grid = |s: Option<String>, len: usize| -> CliResult<Vec<Vec<i64>>> {
        match s {
            None => Ok(vec![vec![0; len]]),
            Some(t) if t.trim().is_empty() => Ok(vec![]),
            Some(t) => t.split(';').map(parse_int_vec).collect(),
        }
    };
    let gv = grid(lv, req.case.n_minus)?;
    let gw = grid(lw, req.case.m_minus)?;
    let mut rows = Vec::new();
    for a_v in &gv {
        for a_w in &gw {
            rows.push(evaluate(&req, Cocharacter::new(a_v.clone(), a_w.clone()))?);
        }
    }
    match a.format {
        Format::Json => Ok(to_json(&TableDoc { schema: SCHEMA, rows })),
        Format::Csv => csv_rows(&rows),
    }
}

fn report_csv(r: &SuiteReport) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    let io = |e: csv::Error| CliError::Domain(e.to_string());
    w.write_record(["suite", "name", "case", "status", "mode", "lhs", "rhs", "detail"]).map_err(io)?;
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        };
        let mode = match c.mode {
            crate::algebra::Mode::Symbolic => "symbolic".to_string(),
            crate::algebra::Mode::Modular { trials, seed } => format!("modular(trials={},seed={})", trials, seed),
        };
        w.write_record([
            r.suite.as_str(),
            &c.name,
            c.case.as_deref().unwrap_or(""),
            status,
            &mode,
            c.lhs.as_deref().unwrap_or(""),
            c.rhs.as_deref().unwrap_or(""),
            c.detail.as_deref().unwrap_or(""),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

pub fn run_verify(a: &VerifyArgs) -> CliResult<(String, SuiteReport)> {
    if a.suite != "all" && !SUITES.contains(&a.suite.as_str()) {
        return usage(format!("unknown suite '{}'; expected one of {} or all", a.suite, SUITES.join(", ")));
    }
    if a.trials == 0 {
        return usage("--trials must be positive");
    }
    let config = SuiteConfig {
        mode: match a.mode {
            None => ModeChoice::Auto,
            Some(ModeArg::Symbolic) => ModeChoice::Symbolic,
            Some(ModeArg::Modular) => ModeChoice::Modular,
        },
        trials: a.trials,
        seed: a.seed,
        max_rank: a.max_rank,
        cases: resolve_case(&a.case)?.map(|c| vec![c]),
        ..SuiteConfig::default()
    };
    let report = run_suite(&a.suite, &config)?;
    let out = match a.format {
        Format::Json => to_json(&report),
        Format::Csv => report_csv(&report)?,
    };
    Ok((out, report))
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    let res = match &cli.command {
        Command::Eval(a) => run_eval(a).map(|s| (s, true)),
        Command::Table(a) => run_table(a).map(|s| (s, true)),
        Command::Verify(a) => run_verify(a).map(|(s, r)| {
            let _ = writeln!(
                err,
                "{}: {} pass, {} fail, {} skipped in {:.2?}",
                r.suite,
                r.count(Status::Pass),
                r.count(Status::Fail),
                r.count(Status::Skipped),
                r.wall_time
            );
            (s, r.passed())
        }),
    };
    match res {
        Ok((s, ok)) => {
            let _ = out.write_all(s.as_bytes());
            if ok {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "usage error: {}", m);
            2
        }
        Err(CliError::Domain(m)) => {
            let _ = writeln!(err, "error: {}", m);
            1
        }
    }
}

pub fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = run(std::iter::once("shintani").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn eval_examples() {
        let (c, o, _) =
            call(&["eval", "--case", "split", "--n", "1", "--m", "1", "--lambda-v", "1", "--lambda-w", "0"]);
        assert_eq!(c, 0);
        let v: serde_json::Value = serde_json::from_str(&o).unwrap();
        assert_eq!(v["value"], "x1");
        assert_eq!(v["schema"], 1);
        let (c, o, _) = call(&["eval", "--case", "inert", "--n", "3", "--m", "1"]);
        assert_eq!(c, 0);
        let v: serde_json::Value = serde_json::from_str(&o).unwrap();
        assert_eq!(v["value"], "1");
        assert_eq!(v["numeric"], "1");
        let (c, _, e) = call(&["eval", "--case", "split", "--n", "2", "--m", "2", "--lambda-v", "0,1"]);
        assert_eq!(c, 1, "{}", e);
    }

    #[test]
    fn eval_numeric() {
        let (c, o, _) = call(&[
            "eval",
            "--case",
            "split",
            "--n",
            "1",
            "--m",
            "1",
            "--chi",
            "2",
            "--eta",
            "3",
            "--mu-unit",
            "1",
            "--lambda-v",
            "2",
            "--lambda-w",
            "-1",
            "--q",
            "9",
        ]);
        assert_eq!(c, 0);
        let v: serde_json::Value = serde_json::from_str(&o).unwrap();
        assert_eq!(v["numeric"], "4/3");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["eval", "--case", "split"]).0, 2);
        assert_eq!(call(&["verify", "--suite", "bogus"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["eval", "--case", "split", "--n", "2", "--m", "1"]).0, 2);
        assert_eq!(call(&["eval", "--input", "/nonexistent.json"]).0, 2);
    }

    #[test]
    fn table_csv() {
        let base = ["table", "--case", "split", "--n", "2", "--m", "2", "--format", "csv"];
        let (c, o, _) = call(&[&base[..], &["--lambda-v", ""]].concat());
        assert_eq!(c, 0);
        assert_eq!(o.lines().count(), 1);
        let args = [&base[..], &["--lambda-v", "0,0;1,0;1,1;2,1", "--lambda-w", "0,0"]].concat();
        let (c, o, _) = call(&args);
        assert_eq!(c, 0);
        assert_eq!(o.lines().count(), 5);
        assert_eq!(call(&args).1, o);
        let (_, o, _) = call(&[&base[..3], &["--n", "1", "--m", "1", "--format", "csv"]].concat());
        assert!(o.lines().nth(1).unwrap().contains(",1,"));
    }

    #[test]
    fn verify_trivial() {
        let (c, o, _) = call(&["verify", "--suite", "weyl_symmetry", "--case", "split", "--n", "1", "--m", "1"]);
        assert_eq!(c, 0);
        let v: serde_json::Value = serde_json::from_str(&o).unwrap();
        assert_eq!(v["schema"], 1);
    }
}
