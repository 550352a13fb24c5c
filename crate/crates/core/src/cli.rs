//! Command-line driver behind the `reflexff` binary.
//!
//! Every output is one JSON document with sorted keys, carrying the tool
//! version, the parameters of the run and the field. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O failure |
//! | 2 | malformed input or parameters |
//! | 3 | invariant violation in the input (dependent basis) |
//! | 4 | census operator not in `R(S) \ S` |
//! | 5 | enumeration guard exceeded |
//! | 10 | THEOREM VIOLATION |

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::{self, Coset, TraceReport, Verdict};
use crate::error::Error;
use crate::ffla::{FieldSpec, Matrix, MatrixJson};
use crate::opspace::{AnalysisReport, OperatorSpace, OperatorSpaceJson};
use crate::search::{self, Mode, SearchParams, SearchReport, DEFAULT_GUARD};

pub const GUARD_ENV: &str = "REFLEXFF_GUARD";
const TOOL: &str = "reflexff";
const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "reflexff", version, about = "Operator spaces over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reflexivity, closure dimension, mrk, rank distribution and LLD flag.
    Analyze { space: PathBuf },
    /// Writes the reflexive closure as a space file.
    Closure { space: PathBuf },
    /// Minimal rank with witness and rank distribution.
    Mrk { space: PathBuf },
    /// Incidence census of the coset g + S.
    Census { space: PathBuf, g: PathBuf },
    /// Evaluates the counting argument on a hypothetical rank profile.
    Trace(TraceArgs),
    /// Exhaustive or random verification of the 2n-2 bound.
    Search(SearchArgs),
    /// Builds a named family of spaces.
    #[command(subcommand)]
    Construct(Construct),
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    n: usize,
    /// `rank:count,rank:count,...`
    #[arg(long)]
    profile: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    dim_u: usize,
    #[arg(long)]
    dim_v: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Maximum number of subspaces an exhaustive run may visit.
    #[arg(long)]
    guard: Option<u64>,
    /// Keep every witness attaining the maximal mrk.
    #[arg(long)]
    extremal: bool,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Multiplication operators of GF(p^n) over GF(p).
    RegularRep {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Report to dump alongside the message, if any.
    pub dump: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, message, dump) = match e {
            Error::DependentBasis => (3, e.to_string(), None),
            Error::InSpace => (4, "g in S".to_string(), None),
            Error::NotInClosure(why) => (4, format!("g not in R(S): {why}"), None),
            Error::GuardExceeded { .. } => (5, e.to_string(), None),
            Error::TheoremViolation(_, ref report) => {
                let dump = serde_json::to_value(report).ok();
                (10, e.to_string(), dump)
            }
            _ => (2, e.to_string(), None),
        };
        Failure { code, message, dump }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 1, message: format!("{}: {e}", path.display()), dump: None }
}

fn malformed(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()), dump: None }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    serde_json::from_str(&text).map_err(|e| malformed(path, e))
}

pub fn load_space(path: &Path) -> Result<OperatorSpace, Failure> {
    let j: OperatorSpaceJson = read_json(path)?;
    OperatorSpace::from_json(&j).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_operator(path: &Path, field: &FieldSpec) -> Result<Matrix, Failure> {
    let j: MatrixJson = read_json(path)?;
    Matrix::from_json(field, &j).map_err(|e| malformed(path, e))
}

fn header(command: &str, params: Value, field: &FieldSpec) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "params": params,
        "field": field.to_json(),
    })
}

fn envelope(command: &str, params: Value, field: &FieldSpec, report: impl Serialize) -> Value {
    let mut v = header(command, params, field);
    v["report"] = serde_json::to_value(report).expect("reports serialize");
    v
}

/// Space file with a `generator` record; loaders ignore the extra key.
fn space_document(command: &str, params: Value, space: &OperatorSpace) -> Value {
    let mut v = serde_json::to_value(space.to_json()).expect("spaces serialize");
    let gen = header(command, params, space.field());
    v["generator"] = json!({
        "tool": gen["tool"],
        "version": gen["version"],
        "command": gen["command"],
        "params": gen["params"],
    });
    v
}

/// Result of a command before rendering.
enum Output {
    Analysis(Value, AnalysisReport),
    Space(Value, OperatorSpace),
    Mrk(Value),
    Census(Value, census::CensusReport),
    Trace(Value, TraceReport),
    Search(Value, SearchReport),
}

impl Output {
    fn json(&self) -> &Value {
        match self {
            Output::Analysis(v, _)
            | Output::Space(v, _)
            | Output::Mrk(v)
            | Output::Census(v, _)
            | Output::Trace(v, _)
            | Output::Search(v, _) => v,
        }
    }
}

fn resolve_guard(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(g) = flag {
        return Ok(g);
    }
    match std::env::var(GUARD_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Failure {
            code: 2,
            message: format!("{GUARD_ENV}={s} is not a nonnegative integer"),
            dump: None,
        }),
        Err(_) => Ok(DEFAULT_GUARD),
    }
}

fn path_param(p: &Path) -> Value {
    Value::String(p.display().to_string())
}

fn execute(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Analyze { space } => {
            let s = load_space(space)?;
            let report = s.analyze();
            let v = envelope("analyze", json!({ "space": path_param(space) }), s.field(), &report);
            Ok(Output::Analysis(v, report))
        }
        Command::Closure { space } => {
            let s = load_space(space)?;
            let closure = s.reflexive_closure();
            let v = space_document("closure", json!({ "space": path_param(space) }), &closure);
            Ok(Output::Space(v, closure))
        }
        Command::Mrk { space } => {
            let s = load_space(space)?;
            let (mrk, witness) = s.mrk()?;
            let report = json!({
                "mrk": mrk,
                "mrk_witness": witness,
                "rank_distribution": s.rank_distribution()?,
            });
            let v = envelope("mrk", json!({ "space": path_param(space) }), s.field(), report);
            Ok(Output::Mrk(v))
        }
        Command::Census { space, g } => {
            let s = load_space(space)?;
            let g_mat = load_operator(g, s.field())?;
            let report = Coset::new(&s, &g_mat)?.report()?;
            let params = json!({ "space": path_param(space), "g": path_param(g) });
            let v = envelope("census", params, s.field(), &report);
            Ok(Output::Census(v, report))
        }
        Command::Trace(a) => {
            let profile = census::parse_profile(&a.profile)?;
            let report = census::proof_trace(a.q, a.p, a.n, &profile)?;
            let field = FieldSpec::of_order(a.q)?;
            let params = json!({ "q": a.q, "p": a.p, "n": a.n, "profile": a.profile });
            let v = envelope("trace", params, &field, &report);
            Ok(Output::Trace(v, report))
        }
        Command::Search(a) => {
            let field = FieldSpec::of_order(a.q)?;
            let mode = match a.mode {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Random => Mode::Random,
            };
            let params = SearchParams {
                field: field.clone(),
                dim_u: a.dim_u,
                dim_v: a.dim_v,
                n: a.n,
                mode,
                samples: a.samples,
                seed: a.seed,
                jobs: a.jobs,
                guard: resolve_guard(a.guard)?,
                extremal: a.extremal,
            };
            let report = search::verify(&params)?;
            let echo = serde_json::to_value(&report.params).expect("params serialize");
            let v = envelope("search", echo, &field, &report);
            Ok(Output::Search(v, report))
        }
        Command::Construct(Construct::RegularRep { p, n }) => {
            let base = FieldSpec::new(*p, 1, None)?;
            let s = search::construct_regular_rep(&base, *n)?;
            let v = space_document("construct regular-rep", json!({ "p": p, "n": n }), &s);
            Ok(Output::Space(v, s))
        }
    }
}

fn render(out: &Output, pretty: bool) -> String {
    if !pretty {
        let mut s = serde_json::to_string(out.json()).expect("json");
        s.push('\n');
        return s;
    }
    match out {
        Output::Analysis(_, r) => pretty_analysis(r),
        Output::Space(_, s) => pretty_space(s),
        Output::Mrk(v) => serde_json::to_string_pretty(&v["report"]).expect("json") + "\n",
        Output::Census(_, r) => {
            let mut s = String::new();
            let _ = writeln!(s, "q={} p={} n={} dim_v={}", r.q, r.p, r.n, r.dim_v);
            let _ = writeln!(s, "|N| = {}", r.incidence_count);
            let _ = writeln!(s, "r = {}  m = {}  multiplicity(r) = {}", r.r, r.m, r.min_rank_multiplicity);
            s += &pretty_counts("rank", &r.rank_profile);
            s += &pretty_verdicts(&r.verdicts);
            for k in &r.skipped {
                let _ = writeln!(s, "skipped {}: {}", k.name, k.reason);
            }
            s
        }
        Output::Trace(_, r) => {
            let mut s = String::new();
            let _ = writeln!(s, "q={} p={} n={} r={} m={} |N|={}", r.q, r.p, r.n, r.r, r.m, r.incidence_count);
            s += &pretty_verdicts(&r.verdicts);
            for k in &r.skipped {
                let _ = writeln!(s, "skipped {}: {}", k.name, k.reason);
            }
            for n in &r.notes {
                let _ = writeln!(s, "note: {n}");
            }
            let _ = writeln!(s, "contradiction: {} {:?}", r.contradiction, r.contradicted_by);
            s
        }
        Output::Search(_, r) => {
            let mut s = String::new();
            let p = &r.params;
            let _ = writeln!(s, "q={} dim_u={} dim_v={} n={} mode={:?}", p.q, p.dim_u, p.dim_v, p.n, p.mode);
            let _ = writeln!(
                s,
                "examined {}  reflexive {}  non-reflexive {}",
                r.spaces_examined, r.reflexive_count, r.non_reflexive_count
            );
            let _ = writeln!(s, "max mrk (non-reflexive): {:?}", r.max_mrk_non_reflexive);
            s += &pretty_counts("mrk", &r.mrk_histogram);
            let _ = writeln!(
                s,
                "2n-2 = {} violations: {}",
                r.bound_2n_minus_2,
                r.bound_2n_minus_2_violations.len()
            );
            let _ = writeln!(s, "2n-3 status: {:?}", r.bound_2n_minus_3_status);
            s
        }
    }
}

fn pretty_counts(label: &str, m: &BTreeMap<usize, u64>) -> String {
    let mut s = format!("{label:>6} | count\n-------+------\n");
    for (k, v) in m {
        let _ = writeln!(s, "{k:>6} | {v}");
    }
    s
}

fn pretty_verdicts(vs: &[Verdict]) -> String {
    let mut s = String::new();
    for v in vs {
        let _ = writeln!(s, "{:<22} {:>5}  {} vs {}", v.name, if v.holds { "ok" } else { "FAIL" }, v.lhs, v.rhs);
    }
    s
}

fn pretty_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "GF({}) n={} p={} dim_v={}", r.q, r.n, r.p, r.dim_v);
    let _ = writeln!(s, "reflexive: {}  closure_dim: {}  lld: {}", r.reflexive, r.closure_dim, r.lld);
    match (r.mrk, &r.mrk_witness) {
        (Some(m), Some(w)) => {
            let _ = writeln!(s, "mrk: {m}  witness: {w:?}");
        }
        _ => s.push_str("mrk: undefined (zero space)\n"),
    }
    s + &pretty_counts("rank", &r.rank_distribution)
}

fn pretty_space(sp: &OperatorSpace) -> String {
    let mut s = format!(
        "{:?}  dim_u={} dim_v={} n={}\n",
        sp.field(),
        sp.dim_u(),
        sp.dim_v(),
        sp.dim()
    );
    for (i, m) in sp.basis().iter().enumerate() {
        let _ = writeln!(s, "f{i}:");
        for r in m.row_vecs() {
            let _ = writeln!(s, "  {r:?}");
        }
    }
    s
}

/// Parses `args` and runs the command, writing to the given streams.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let text = render(&out, cli.pretty);
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text).map_err(|e| io_failure(path, e)),
                None => stdout.write_all(text.as_bytes()).map_err(|e| io_failure(Path::new("<stdout>"), e)),
            };
            match written {
                Ok(()) => 0,
                Err(f) => {
                    let _ = writeln!(stderr, "error: {}", f.message);
                    f.code
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            if let Some(dump) = &f.dump {
                let _ = writeln!(stderr, "{dump}");
            }
            f.code
        }
    }
}
