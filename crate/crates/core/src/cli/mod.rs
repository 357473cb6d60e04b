//! Command-line front end.
//!
//! Exit codes: 0 when everything passed (or the command only reports data),
//! 1 when a report contains a violated claim, 2 for usage and resource errors.

pub mod progress;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curve::{
    build_f, build_g, build_h, count_affine, count_infinity, weil_lower_check, weil_upper_check,
    BiPoly, CurveError, Tau, WeilAudit,
};
use crate::field::{make_field, FieldCtx, FieldError, FieldInfo};
use crate::perm::{trace_class_reps_rel, SCAN_CAP};
use crate::prime::primes_in;
use crate::report::{emit_report, to_json_bytes, CampaignReport, ElemRender, Evidence, Format};
use crate::verify::{
    plan_baseline, plan_conjecture, plan_conjugation, plan_curve_suite, plan_lemma_2_2,
    plan_lemma_l_chain, plan_remark_4_3, plan_thm_1_1_desk, plan_thm_3_1, scan_case,
    CampaignPlan, ConjugationGrid, CurveGrid, Outcome, RunControl, VerifyError,
};
use progress::{append_case, open_progress, ProgressError};

pub const THREADS_ENV: &str = "RATPERM_THREADS";

#[derive(Parser, Debug)]
#[command(name = "ratperm", version, about = "Permutation scans and curve audits for x + 1/(x^p - x + b)")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,
    /// Progress file for resumable campaigns.
    #[arg(long, global = true)]
    progress: Option<PathBuf>,
    /// Lower the field-size cap for permutation scans.
    #[arg(long, global = true)]
    scan_cap: Option<u64>,
    /// Add wall time to campaign reports (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Stop after this many new cases (testing aid for resume).
    #[arg(long, global = true, hide = true)]
    stop_after: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Human,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Human => Format::Human,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Builtin {
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "G", alias = "g")]
    G,
    #[value(name = "H", alias = "h")]
    H,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Scan one map for bijectivity.
    Permcheck {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// b by element index.
        #[arg(long, conflicts_with = "b_trace", required_unless_present = "b_trace")]
        b_index: Option<u64>,
        /// The first b (by index) whose relative trace is this prime-field value.
        #[arg(long)]
        b_trace: Option<u64>,
        /// Frobenius level d in x^(p^d).
        #[arg(long, default_value_t = 1)]
        frob_level: usize,
    },
    /// Count affine and infinite points of a plane curve.
    Count {
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        poly_file: Option<PathBuf>,
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Index of b for F.
        #[arg(long)]
        b: Option<u64>,
        /// tau for G and H.
        #[arg(long)]
        tau: Option<u64>,
    },
    /// Curve campaign: counts, bound audits, fiber census, identity sweeps.
    WeilAudit {
        /// Fields for F as p:n.
        #[arg(long, value_delimiter = ',', value_parser = parse_field, default_value = "5:2,5:3")]
        f_fields: Vec<(u64, usize)>,
        #[arg(long, default_value_t = 97)]
        gh_p_max: u64,
        #[arg(long, default_value_t = 97)]
        symmetric_p_max: u64,
        #[arg(long, default_value_t = 13)]
        quadratic_p_max: u64,
    },
    /// Reproduce a stated result.
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
    /// Search the cubic or quartic case.
    Conjecture {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=4))]
        n: u64,
        /// Largest prime (default 19 for n = 3, 11 for n = 4).
        #[arg(long)]
        p_max: Option<u64>,
    },
    /// Print trace-class representatives.
    Reps {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        frob_level: usize,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Degree-5 extensions for small p: no class permutes.
    Thm11 {
        #[arg(long, value_delimiter = ',', default_value = "5,7,11,13")]
        p: Vec<u64>,
    },
    /// Quadratic extensions: permutes iff the trace is +-1.
    Thm31 {
        #[arg(long, default_value_t = 100)]
        p_max: u64,
        /// Every b of nonzero trace instead of b = 1..(p-1)/2.
        #[arg(long)]
        full_b: bool,
    },
    /// The quadratic criterion over F_{q^2}.
    Remark43 {
        #[arg(long, value_delimiter = ',', default_value = "9,25,27,49")]
        q: Vec<u64>,
    },
    /// p = 2 and p = 3 always permute.
    Baseline {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Separate bound for p = 3 (default: same as --n-max).
        #[arg(long)]
        n_max_p3: Option<usize>,
    },
    /// The quartic A(X,1) is not a square for t != 1.
    Lemma22 {
        #[arg(long, default_value_t = 100)]
        p_max: u64,
    },
    /// The gcd chain for Y^(p+1) - Y^2 + 4.
    #[command(name = "lemmaL", alias = "lemmal")]
    LemmaL {
        #[arg(long, default_value_t = 5)]
        p_min: u64,
        #[arg(long, default_value_t = 97)]
        p_max: u64,
    },
    /// Random trials of the b-conjugation identity.
    Conjugation {
        #[arg(long, value_delimiter = ',', value_parser = parse_field, default_value = "5:3,7:2")]
        fields: Vec<(u64, usize)>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

fn parse_field(s: &str) -> Result<(u64, usize), String> {
    let (p, n) = s.split_once(':').ok_or_else(|| format!("expected p:n, got {s}"))?;
    let p = p.trim().parse().map_err(|e| format!("{s}: {e}"))?;
    let n = n.trim().parse().map_err(|e| format!("{s}: {e}"))?;
    Ok((p, n))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Progress(#[from] ProgressError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("stopped after {computed} cases, {remaining} left; rerun with the same --progress file to resume")]
    Interrupted { computed: usize, remaining: usize },
}

/// Run with process stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{first}");
            return 2;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let c = &cli.common;
    let cap = match c.scan_cap {
        Some(v) if v > SCAN_CAP => {
            return Err(CliError::Usage(format!(
                "--scan-cap {v} exceeds the hard limit {SCAN_CAP}"
            )))
        }
        Some(0) => return Err(CliError::Usage("--scan-cap must be positive".into())),
        Some(v) => v,
        None => SCAN_CAP,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    match c.threads {
        Some(0) => return Err(CliError::Usage("--threads must be positive".into())),
        Some(t) => builder = builder.num_threads(t),
        None => {}
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let (mut ob, mut eb) = (Vec::new(), Vec::new());
    let res = pool.install(|| execute(cli, cap, &mut ob, &mut eb));
    out.write_all(&ob)?;
    err.write_all(&eb)?;
    res
}

fn execute(cli: &Cli, cap: u64, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let plan = match &cli.cmd {
        Command::Permcheck {
            p,
            n,
            b_index,
            b_trace,
            frob_level,
        } => return permcheck(cli, *p, *n, *b_index, *b_trace, *frob_level, cap, out),
        Command::Count {
            poly_file,
            builtin,
            p,
            n,
            b,
            tau,
        } => return count(cli, poly_file.as_ref(), *builtin, *p, *n, *b, *tau, out),
        Command::Reps { p, n, frob_level } => return reps(cli, *p, *n, *frob_level, out),
        Command::WeilAudit {
            f_fields,
            gh_p_max,
            symmetric_p_max,
            quadratic_p_max,
        } => plan_curve_suite(&CurveGrid {
            f_fields: f_fields.clone(),
            gh_p_max: *gh_p_max,
            symmetric_p_max: *symmetric_p_max,
            quadratic_p_max: *quadratic_p_max,
        })?,
        Command::Conjecture { n, p_max } => {
            let n = *n as usize;
            let p_max = p_max.unwrap_or(if n == 3 { 19 } else { 11 });
            plan_conjecture(&primes_in(5, p_max), n, cap)?
        }
        Command::Verify { which } => match which {
            VerifyCmd::Thm11 { p } => plan_thm_1_1_desk(p, cap)?,
            VerifyCmd::Thm31 { p_max, full_b } => plan_thm_3_1(*p_max, *full_b, cap)?,
            VerifyCmd::Remark43 { q } => plan_remark_4_3(q, cap)?,
            VerifyCmd::Baseline { n_max, n_max_p3 } => {
                plan_baseline(*n_max, n_max_p3.unwrap_or(*n_max), cap)?
            }
            VerifyCmd::Lemma22 { p_max } => plan_lemma_2_2(*p_max)?,
            VerifyCmd::LemmaL { p_min, p_max } => {
                plan_lemma_l_chain(&primes_in((*p_min).max(5), *p_max))?
            }
            VerifyCmd::Conjugation {
                fields,
                trials,
                seed,
            } => plan_conjugation(&ConjugationGrid {
                fields: fields.clone(),
                trials: *trials,
                seed: *seed,
            })?,
        },
    };
    run_campaign(cli, plan, out, err)
}

fn run_campaign(
    cli: &Cli,
    plan: CampaignPlan,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let c = &cli.common;
    let start = Instant::now();
    let mut file = None;
    let mut done = Default::default();
    if let Some(path) = &c.progress {
        let (record, f) = open_progress(path, &plan)?;
        done = record.completed;
        file = Some(f);
    }
    let mut sink = |case: &crate::report::CaseResult| match file.as_mut() {
        Some(f) => append_case(f, case),
        None => Ok(()),
    };
    let outcome = plan.execute(RunControl {
        done,
        stop_after: c.stop_after,
        batch: 0,
        on_case: Some(&mut sink),
    })?;
    let mut report = match outcome {
        Outcome::Complete(r) => r,
        Outcome::Interrupted {
            computed,
            remaining,
        } => return Err(CliError::Interrupted { computed, remaining }),
    };
    if c.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    out.write_all(&emit_report(&report, c.format.into()))?;
    for case in report.counterexamples() {
        writeln!(err, "CONJECTURE COUNTEREXAMPLE: {}", case.key)?;
    }
    Ok(exit_code(&report))
}

/// 1 iff some case contradicts a proven statement.
pub fn exit_code(report: &CampaignReport) -> i32 {
    i32::from(report.violated())
}

fn single_case_report(campaign: &str, case: crate::report::CaseResult) -> CampaignReport {
    CampaignReport::new(campaign, case.evidence, serde_json::json!({}), vec![case])
}

#[allow(clippy::too_many_arguments)]
fn permcheck(
    cli: &Cli,
    p: u64,
    n: usize,
    b_index: Option<u64>,
    b_trace: Option<u64>,
    level: usize,
    cap: u64,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let ctx = make_field(p, n)?;
    let b = match (b_index, b_trace) {
        (Some(i), _) => ctx.elem(i)?,
        (None, Some(t)) => {
            if t % p == 0 {
                return Err(CliError::Usage("--b-trace must be nonzero mod p".into()));
            }
            ctx.first_elem_with_trace_rel(&ctx.from_u64(t), level)?
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    let case = scan_case(&ctx, &b, level, cap)?;
    match Format::from(cli.common.format) {
        Format::Json => out.write_all(&to_json_bytes(&case))?,
        f => out.write_all(&emit_report(&single_case_report("permcheck", case), f))?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct CountOutput {
    field: FieldInfo,
    polynomial: String,
    degree: u32,
    affine: u64,
    infinity: u64,
    bounds: Vec<WeilAudit>,
}

#[allow(clippy::too_many_arguments)]
fn count(
    cli: &Cli,
    poly_file: Option<&PathBuf>,
    builtin: Option<Builtin>,
    p: u64,
    n: usize,
    b: Option<u64>,
    tau: Option<u64>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let ctx = make_field(p, n)?;
    let poly = match (poly_file, builtin) {
        (Some(path), _) => BiPoly::parse(&ctx, &std::fs::read_to_string(path)?)?,
        (None, Some(Builtin::F)) => {
            let i = b.ok_or_else(|| CliError::Usage("--builtin F needs --b".into()))?;
            build_f(&ctx, &ctx.elem(i)?)?
        }
        (None, Some(which)) => {
            let t = tau.ok_or_else(|| CliError::Usage("--builtin G/H needs --tau".into()))?;
            let t = Tau::new(p, t)?;
            match which {
                Builtin::G => build_g(&ctx, &t)?,
                _ => build_h(&ctx, &t)?,
            }
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    if poly.is_zero() {
        return Err(CliError::Usage("the zero polynomial has no curve".into()));
    }
    let affine = count_affine(&poly)?;
    let infinity = count_infinity(&poly)?;
    let degree = poly.degree().expect("nonzero");
    let q = ctx.order();
    let result = CountOutput {
        field: ctx.info(),
        polynomial: poly.to_string(),
        degree,
        affine,
        infinity,
        bounds: vec![
            weil_lower_check(affine, q, degree as u64, infinity),
            weil_upper_check(affine, q, degree as u64, infinity),
        ],
    };
    write_simple(cli, &result, &[
        ("p", p.to_string()),
        ("n", n.to_string()),
        ("degree", degree.to_string()),
        ("affine", affine.to_string()),
        ("infinity", infinity.to_string()),
        ("lower_bound_ok", result.bounds[0].passed.to_string()),
        ("upper_bound_ok", result.bounds[1].passed.to_string()),
    ], out)?;
    Ok(0)
}

/// JSON for `value`; CSV and human output from flat key/value pairs.
fn write_simple<T: Serialize>(
    cli: &Cli,
    value: &T,
    flat: &[(&str, String)],
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match Format::from(cli.common.format) {
        Format::Json => out.write_all(&to_json_bytes(value))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(flat.iter().map(|(k, _)| *k))
                .and_then(|_| w.write_record(flat.iter().map(|(_, v)| v.as_str())))
                .map_err(std::io::Error::other)?;
            out.write_all(&w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?)?;
        }
        Format::Human => {
            let width = flat.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in flat {
                writeln!(out, "{k:<width$}  {v}")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct RepsOutput {
    field: FieldInfo,
    frob_level: usize,
    evidence: Evidence,
    classes: Vec<RepLine>,
}

#[derive(Serialize)]
struct RepLine {
    trace: ElemRender,
    b: ElemRender,
}

fn reps(cli: &Cli, p: u64, n: usize, level: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    let ctx: FieldCtx = make_field(p, n)?;
    let classes = trace_class_reps_rel(&ctx, level).map_err(VerifyError::from)?;
    let lines: Vec<RepLine> = classes
        .iter()
        .map(|c| RepLine {
            trace: ElemRender::new(&ctx, &c.trace),
            b: ElemRender::new(&ctx, &c.b),
        })
        .collect();
    match Format::from(cli.common.format) {
        Format::Json => out.write_all(&to_json_bytes(&RepsOutput {
            field: ctx.info(),
            frob_level: level,
            evidence: Evidence::Exhaustive,
            classes: lines,
        }))?,
        Format::Csv => {
            writeln!(out, "trace_index,trace_coeffs,b_index,b_coeffs")?;
            for l in &lines {
                writeln!(
                    out,
                    "{},{:?},{},{:?}",
                    l.trace.index, l.trace.coeffs, l.b.index, l.b.coeffs
                )?;
            }
        }
        Format::Human => {
            writeln!(out, "trace  b")?;
            for l in &lines {
                writeln!(out, "{:<5}  {}", l.trace.index, l.b.index)?;
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["ratperm"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn permcheck_trace_one_permutes() {
        let (code, out, _) = call(&["permcheck", "--p", "5", "--n", "2", "--b-trace", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["is_permutation"], true);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["permcheck", "--p", "5"]).0, 2);
        assert_eq!(call(&["nonsense"]).0, 2);
        let (code, _, err) = call(&["permcheck", "--p", "6", "--n", "1", "--b-index", "1"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        assert_eq!(call(&["--scan-cap", "99999999999", "verify", "thm31"]).0, 2);
        assert_eq!(call(&["count", "--builtin", "G", "--p", "5"]).0, 2);
    }

    #[test]
    fn count_g_infinity() {
        let (code, out, _) = call(&["count", "--builtin", "G", "--p", "5", "--tau", "2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["infinity"], 3);
        assert_eq!(v["affine"], 1);
    }

    #[test]
    fn reps_formats() {
        let (code, out, _) = call(&["reps", "--p", "7", "--n", "2", "--format", "human"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
    }
}
