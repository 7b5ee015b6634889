mod args;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use plog_core::calculus::{antipode_identity, marker_change, marker_swap, path_split_chen, path_step_identity, shuffle_identity};
use plog_core::exactfield::{parse_point, ProjPoint};
use plog_core::numeval::{complete_config, default_panels, verify_identity, Evaluator, VerifyOptions};
use plog_core::reduction::{generic_points, lowered_swap_identity, reduce_symbol, split_shuffle, transposition, ReductionOutput};
use plog_core::symbols::doc::identity_to_json;
use plog_core::symbols::{parse_lincomb, parse_symbol, Identity, Layer};
use plog_core::weight4::{derive_conversions_with, phi_report_with, Conversions};
use plog_core::Error;

#[derive(Parser)]
#[command(name = "plog", version, about = "Multiple polylogarithm symbols: reduce, verify, evaluate")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Quotient,
}

impl From<Mode> for Layer {
    fn from(m: Mode) -> Layer {
        match m {
            Mode::Exact => Layer::Exact,
            Mode::Quotient => Layer::Quotient,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationKind {
    Shuffle,
    SplitShuffle,
    MarkerSwap,
    MarkerChange,
    LoweredSwap,
    Transposition,
    PathStep,
    Chen,
    Antipode,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rewrite [a0|a1..an//x|a_{n+1}] through symbols in at most n-2 variables.
    Reduce {
        #[arg(long)]
        n: usize,
        /// n+2 comma-separated points a0,a1,..,an,a_{n+1}; defaults to fresh variables.
        #[arg(long)]
        points: Option<String>,
        #[arg(long, value_enum, default_value = "quotient")]
        mode: Mode,
        #[arg(long, default_value = "inf")]
        marker: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an exact identity (or reduction) numerically at sampled points.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1e-2,1e-3,1e-4")]
        eps_sequence: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight-4 decomposition of [a|b,c,d,e|f] into (3,1) functions and Li_4.
    Phi {
        /// Include the term-by-term comparison with the reference table.
        #[arg(long = "compare-paper")]
        compare: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a combination of symbols at a point.
    Eval {
        #[arg(long)]
        expr: String,
        /// Variable binding name=value, e.g. z=1/2+1/3i.
        #[arg(long = "at")]
        at: Vec<String>,
        #[arg(long, default_value_t = 10)]
        digits: usize,
    },
    /// Emit a single exact or quotient relation as an identity file.
    Relations {
        #[arg(value_enum)]
        kind: RelationKind,
        #[arg(long)]
        symbol: String,
        /// Second symbol for `shuffle`.
        #[arg(long)]
        with: Option<String>,
        /// 1-based position(s).
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        /// Point for marker-change, path-step, chen.
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        split: Option<usize>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit 1 for semantic failures, 2 for bad input.
enum Failure {
    Semantic(anyhow::Error),
    Input(anyhow::Error),
}

type CmdResult = Result<(), Failure>;

fn input(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Input(e.into())
}

/// Core errors are input errors unless they reflect a failed computation.
fn core(e: Error) -> Failure {
    match e {
        Error::CancellationFailure { .. }
        | Error::SamplingExhausted(_)
        | Error::PathTooClose { .. }
        | Error::DivergenceWithoutEpsilon(_)
        | Error::DenominatorVanishes
        | Error::OutOfDomain(_) => Failure::Semantic(e.into()),
        _ => Failure::Input(e.into()),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> CmdResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| input(anyhow!("writing {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn reduce(n: usize, points: Option<String>, mode: Mode, marker: &str, out: &Option<PathBuf>) -> CmdResult {
    if n < 3 {
        return Err(input(anyhow!("--n must be at least 3, got {n}")));
    }
    let (a0, word, end) = match points {
        Some(p) => {
            let pts = args::parse_points(&p).map_err(input)?;
            if pts.len() != n + 2 {
                return Err(input(anyhow!("--points needs {} entries for n = {n}, got {}", n + 2, pts.len())));
            }
            (pts[0].clone(), pts[1..=n].to_vec(), pts[n + 1].clone())
        }
        None => {
            let (a0, w, e, _) = generic_points(n);
            (a0, w, e)
        }
    };
    let marker = parse_point(marker).map_err(core)?;
    let r = reduce_symbol(&a0, &word, &end, &marker, mode.into()).map_err(core)?;
    let mut max_vars = 0;
    for s in r.result.iter().flat_map(|(f, _)| f.iter()) {
        max_vars = max_vars.max(s.variable_count().map_err(core)?);
    }
    eprintln!(
        "reduced {} ({} layer): {} terms, leading coefficient {}, max variable_count {max_vars}",
        r.input,
        if matches!(mode, Mode::Exact) { "exact" } else { "quotient" },
        r.result.len(),
        r.leading_coeff
    );
    emit(out, &r.to_json())
}

fn load_identity(path: &Path) -> Result<Identity, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(anyhow!("reading {}: {e}", path.display())))?;
    let kind = serde_json::from_str::<serde_json::Value>(&text)
        .map_err(|e| input(anyhow!("{}: not JSON: {e}", path.display())))?
        .get("kind")
        .and_then(|k| k.as_str().map(str::to_string))
        .unwrap_or_default();
    match kind.as_str() {
        "identity" => plog_core::symbols::doc::identity_from_json(&text).map_err(core),
        "reduction" => Ok(ReductionOutput::from_json(&text).map_err(core)?.identity()),
        other => Err(input(anyhow!("{}: unsupported kind {other:?}", path.display()))),
    }
}

fn verify(file: &Path, opts: VerifyOptions, out: &Option<PathBuf>) -> CmdResult {
    let id = load_identity(file)?;
    if id.layer == Layer::Quotient {
        return Err(input(anyhow!(
            "{} holds only modulo products (quotient layer) and has no numeric meaning; \
             regenerate it with --mode exact",
            file.display()
        )));
    }
    let report = verify_identity(&id, &opts).map_err(core)?;
    emit(out, &report.to_json())?;
    eprintln!(
        "{}: {} trials, max residual {:.3e} (tol {:e})",
        if report.pass { "PASS" } else { "FAIL" },
        report.trials,
        report.max_residual,
        report.tol
    );
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Semantic(anyhow!("identity did not verify")))
    }
}

fn phi(compare: bool, seed: u64, out: &Option<PathBuf>) -> CmdResult {
    let conv = derive_conversions_with(seed).map_err(|e| input(anyhow!("conversion derivation failed: {e}")))?;
    let set = match &conv {
        Conversions::Closed(set) => Some(set),
        Conversions::Insufficient(r) => {
            eprintln!("conversions did not close ({} residual directions); degraded report", r.residual_basis.len());
            None
        }
    };
    let report = phi_report_with(set, compare).map_err(|e| input(anyhow!("phi pipeline failed: {e}")))?;
    eprintln!("{}", report.message);
    emit(out, &report.to_json())
}

fn eval(expr: &str, at: &[String], digits: usize) -> CmdResult {
    let l = parse_lincomb(expr).map_err(core)?;
    let assignment: BTreeMap<_, _> = at.iter().map(|b| args::parse_binding(b)).collect::<anyhow::Result<_>>().map_err(input)?;
    let ev = Evaluator::new(&l);
    if let Some(v) = ev.variables().into_iter().find(|v| !assignment.contains_key(v)) {
        return Err(input(anyhow!("no value given for {v} (use --at {v}=...)")));
    }
    if ev.needs_regularization() {
        return Err(Failure::Semantic(anyhow!("expression contains a divergent symbol")));
    }
    let mut cfg = complete_config(&ev, assignment, 0).map_err(core)?;
    cfg.panels = default_panels();
    let z = ev.eval(&cfg, None).map_err(core)?;
    let sign = if z.im < 0.0 { '-' } else { '+' };
    println!("{:.*} {sign} {:.*}i", digits, z.re, digits, z.im.abs());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn relations(
    kind: RelationKind,
    symbol: &str,
    with: Option<String>,
    i: Option<usize>,
    j: Option<usize>,
    at: Option<String>,
    split: Option<usize>,
    mode: Mode,
    out: &Option<PathBuf>,
) -> CmdResult {
    let s = parse_symbol(symbol).map_err(core)?;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| input(anyhow!("{flag} is required for this relation")));
    let point = || -> Result<ProjPoint, Failure> {
        parse_point(at.as_deref().ok_or_else(|| input(anyhow!("--at is required for this relation")))?).map_err(core)
    };
    let id = match kind {
        RelationKind::Shuffle => {
            let t = parse_symbol(&with.ok_or_else(|| input(anyhow!("--with is required for shuffle")))?).map_err(core)?;
            shuffle_identity(&s, &t)
        }
        RelationKind::SplitShuffle => split_shuffle(&s, need(split, "--split")?, mode.into()),
        RelationKind::MarkerSwap => marker_swap(&s, need(i, "--i")?),
        RelationKind::MarkerChange => marker_change(&s, &point()?),
        RelationKind::LoweredSwap => lowered_swap_identity(&s, need(i, "--i")?, mode.into()),
        RelationKind::Transposition => transposition(&s, need(i, "--i")?, need(j, "--j")?, mode.into()),
        RelationKind::PathStep => path_step_identity(&s, &point()?),
        RelationKind::Chen => Ok(path_split_chen(&s, &point()?)),
        RelationKind::Antipode => Ok(antipode_identity(&s)),
    }
    .map_err(core)?;
    emit(out, &identity_to_json(&id))
}

fn run(cli: Cli) -> CmdResult {
    match cli.cmd {
        Cmd::Reduce {
            n,
            points,
            mode,
            marker,
            out,
        } => reduce(n, points, mode, &marker, &out),
        Cmd::Verify {
            file,
            trials,
            tol,
            seed,
            eps_sequence,
            out,
        } => {
            let eps = args::parse_eps(&eps_sequence).map_err(input)?;
            if trials == 0 || !(tol > 0.0) {
                return Err(input(anyhow!("--trials must be positive and --tol > 0")));
            }
            verify(&file, VerifyOptions { trials, tol, seed, eps }, &out)
        }
        Cmd::Phi { compare, seed, out } => phi(compare, seed, &out),
        Cmd::Eval { expr, at, digits } => eval(&expr, &at, digits),
        Cmd::Relations {
            kind,
            symbol,
            with,
            i,
            j,
            at,
            split,
            mode,
            out,
        } => relations(kind, &symbol, with, i, j, at, split, mode, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Semantic(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
