//! The `seqmeter` command line.
//!
//! JSON goes to stdout wrapped with a run manifest; CSV is available for
//! tabular results; human-readable summaries go to stderr. Exit codes:
//! 0 ok, 1 check failed, 2 usage error, 3 budget exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bitseq::BitSequence;
use crate::bounds::{
    bw_lower_bound, corollary3_report_for, correlations_up_to, fermat_corollary_inputs,
    hall_corollary_inputs, iw_lower_bound, kerror_bound, table1, theorem2_threshold,
    theorem4_check, BoundReport, BOUND_COMPARISON,
};
use crate::codes::{build_span, find_periodic_peak, theorem1_threshold, PeakSearchOptions};
use crate::complexity::{
    kerror_linear_complexity, linear_complexity, linear_complexity_profile, max_order_complexity,
    max_order_complexity_profile,
};
use crate::correlation::{aperiodic_measure, periodic_measure, SearchOptions, DEFAULT_BUDGET};
use crate::error::Error;
use crate::generators::{
    fermat_threshold, gold_sequence, gold_sequence_default, hall_sextic, m_sequence, small_kasami,
    FermatSpec, HallSpec, LfsrSpec,
};
use crate::verify::{
    verify_all, verify_theorem1, verify_theorem2, CheckReport, Scale, VerifyOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "seqmeter",
    version,
    about = "Pseudorandomness measures of binary sequences"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Worker threads for the exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Maximum summand evaluations for one correlation search.
    #[arg(long, global = true, env = "SEQMETER_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Largest syndrome table built by the peak search.
    #[arg(long, global = true, default_value_t = crate::codes::DEFAULT_MAX_HASH_ENTRIES)]
    pub max_hash_entries: u128,
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Emit JSON on stdout.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV on stdout (tabular results only).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Additive constant in the Corollary 3 bound.
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub delta: f64,
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate one period (or more) of a sequence family.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Nth linear complexity (Berlekamp-Massey).
    Lc(ComplexityArgs),
    /// Nth maximum-order complexity.
    Moc(ComplexityArgs),
    /// Exhaustive K-error linear complexity (N <= 24).
    Kerror {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        /// Maximum number of flipped positions.
        #[arg(long)]
        k: usize,
    },
    /// Correlation measure of order k, aperiodic or periodic.
    Corr {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        periodic: bool,
    },
    /// Full periodic peak from a low-weight dual vector.
    Peaks {
        file: PathBuf,
        /// Largest order searched (defaults to the Hamming threshold).
        #[arg(long)]
        tmax: Option<usize>,
    },
    /// Correlation-based lower bounds and theorem checks.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Self-check suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Args, Debug)]
pub struct ComplexityArgs {
    pub file: PathBuf,
    /// Prefix length (default: the stored length, or 2T for periodic input).
    #[arg(long)]
    pub n: Option<usize>,
    /// Report the value for every prefix length.
    #[arg(long)]
    pub profile: bool,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Number of periods to write.
    #[arg(long, default_value_t = 2)]
    pub periods: usize,
    /// Write to a file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Maximal-length LFSR sequence of period 2^ell - 1.
    Msequence {
        #[arg(long)]
        ell: usize,
        /// Connection polynomial, bit j = c_j (hex or decimal).
        #[arg(long, value_parser = parse_u64)]
        taps: Option<u64>,
        /// Initial state, bit j = s_j.
        #[arg(long, value_parser = parse_u64, default_value = "1")]
        state: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Gold sequence from a preferred pair of m-sequences.
    Gold {
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        shift: usize,
        /// Preferred pair as two tap masks "A,B" (default: shipped pair).
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(u64, u64)>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Small-set Kasami sequence (even ell).
    KasamiSmall {
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        shift: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Hall's sextic residue sequence.
    Hall {
        /// Prime period T = 1 mod 6.
        #[arg(long = "t")]
        period: u64,
        /// Primitive root (default: the smallest).
        #[arg(long)]
        g: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Threshold sequence of the Fermat quotient, period p^2.
    Fermat {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Peak-order thresholds for the standard families.
    Table1 {
        #[arg(long, default_value_t = 20)]
        ell_max: usize,
    },
    /// Previous vs improved bounds for sequences with known correlation.
    Table2,
    /// Smallest t with C(floor(N/2), t) >= 2^L.
    Thm2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
    },
    /// Lower bound on L(S,N) when C_k < N/2 for all k < K.
    Cor3 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Side-by-side lower bounds for one sequence from C_1..C_K.
    Compare {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Correlation-to-complexity chain for Hall's sextic sequence.
    Hall {
        #[arg(long = "t")]
        period: u64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Correlation-to-complexity chain for the Fermat threshold sequence.
    Fermat {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Check a peak theorem on one sequence.
    Verify {
        theorem: Theorem,
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Lower bound on the F-error linear complexity.
    Kerror {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        flips: usize,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Theorem {
    Thm1,
    Thm2,
    Thm4,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Run every self-check.
    All {
        #[arg(long, value_enum, default_value_t = ScaleArg::Quick)]
        scale: ScaleArg,
        /// Directory of sequence files to check as well.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScaleArg {
    Quick,
    Full,
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("'{s}': {e}"))
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or("expected two masks 'A,B'")?;
    Ok((parse_u64(a.trim())?, parse_u64(b.trim())?))
}

/// Recorded with every JSON result.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub seed: u64,
    pub budget: u128,
    pub max_hash_entries: u128,
    pub jobs: usize,
    pub output: Option<String>,
    pub version: &'static str,
}

enum Outcome {
    Ok,
    CheckFailed,
}

struct Ctx<'a> {
    global: Global,
    manifest: RunManifest,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

type CliResult = std::result::Result<Outcome, Error>;

impl Ctx<'_> {
    fn search(&self) -> SearchOptions {
        SearchOptions {
            budget: self.global.budget,
            jobs: self.global.jobs.max(1),
        }
    }

    fn peaks(&self) -> PeakSearchOptions {
        PeakSearchOptions {
            jobs: self.global.jobs.max(1),
            max_hash_entries: self.global.max_hash_entries,
            ..Default::default()
        }
    }

    fn human(&mut self, text: impl AsRef<str>) {
        if !self.global.quiet {
            let _ = writeln!(self.err, "{}", text.as_ref());
        }
    }

    fn emit_json(&mut self, result: impl Serialize) -> Result<(), Error> {
        let doc = json!({ "manifest": self.manifest, "result": result });
        let text = serde_json::to_string_pretty(&doc).expect("serialisable");
        writeln!(self.out, "{text}").map_err(stdout_error)
    }

    fn emit_csv(&mut self, header: &[&str], rows: Vec<Vec<String>>) -> Result<(), Error> {
        let mut text = header.join(",");
        text.push('\n');
        for row in rows {
            text += &row
                .iter()
                .map(|c| csv_field(c))
                .collect::<Vec<_>>()
                .join(",");
            text.push('\n');
        }
        self.out.write_all(text.as_bytes()).map_err(stdout_error)
    }

    fn no_csv(&self) -> Result<(), Error> {
        if self.global.csv {
            return Err(Error::InvalidParameter(
                "CSV output is only available for tabular results".into(),
            ));
        }
        Ok(())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn stdout_error(source: std::io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn load(path: &Path) -> Result<BitSequence, Error> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })?;
        return BitSequence::parse(&text);
    }
    BitSequence::load(path)
}

/// Default analysis length: `2T` for periodic input, otherwise the stored
/// length.
fn default_n(s: &BitSequence, n: Option<usize>) -> usize {
    n.unwrap_or_else(|| s.period().map_or(s.len(), |t| 2 * t))
}

/// Runs the CLI with explicit streams and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let manifest = RunManifest {
        command: args
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
        seed: cli.global.seed,
        budget: cli.global.budget,
        max_hash_entries: cli.global.max_hash_entries,
        jobs: cli.global.jobs,
        output: output_path(&cli.command).map(|p| p.display().to_string()),
        version: env!("CARGO_PKG_VERSION"),
    };
    let mut ctx = Ctx {
        global: cli.global.clone(),
        manifest,
        out,
        err,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::CheckFailed) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            }
        }
    }
}

/// Runs the CLI on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    run_with(args, &mut out, &mut err)
}

fn output_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Gen(g) => match g {
            GenCommand::Msequence { out, .. }
            | GenCommand::Gold { out, .. }
            | GenCommand::KasamiSmall { out, .. }
            | GenCommand::Hall { out, .. }
            | GenCommand::Fermat { out, .. } => out.output.as_ref(),
        },
        _ => None,
    }
}

fn dispatch(ctx: &mut Ctx<'_>, cmd: Command) -> CliResult {
    if ctx.global.jobs == 0 {
        return Err(Error::InvalidParameter("--jobs must be at least 1".into()));
    }
    match cmd {
        Command::Gen(g) => gen(ctx, g),
        Command::Lc(a) => complexity(ctx, a, true),
        Command::Moc(a) => complexity(ctx, a, false),
        Command::Kerror { file, n, k } => {
            ctx.no_csv()?;
            let s = load(&file)?;
            let n = default_n(&s, n);
            let value = kerror_linear_complexity(&s, n, k)?;
            ctx.human(format!(
                "{k}-error linear complexity of the first {n} bits: {value}"
            ));
            if ctx.global.json {
                ctx.emit_json(json!({ "N": n, "K": k, "value": value }))?;
            }
            Ok(Outcome::Ok)
        }
        Command::Corr {
            file,
            k,
            n,
            periodic,
        } => {
            ctx.no_csv()?;
            let s = load(&file)?;
            let r = if periodic {
                periodic_measure(&s, k, &ctx.search())?
            } else {
                let n = n.unwrap_or(s.len());
                aperiodic_measure(&s, n, k, &ctx.search())?
            };
            ctx.human(format!(
                "{}_{k} = {} at U = {}, D = {} ({:?})",
                if periodic { "theta" } else { "C" },
                r.value,
                r.window,
                r.shifts,
                r.classification
            ));
            if ctx.global.json {
                ctx.emit_json(&r)?;
            }
            Ok(Outcome::Ok)
        }
        Command::Peaks { file, tmax } => {
            ctx.no_csv()?;
            let s = load(&file)?;
            let span = build_span(&s)?;
            let t_max = match tmax {
                Some(t) => t,
                None => theorem1_threshold(span.period(), span.dim())?,
            };
            let cert = find_periodic_peak(&span, t_max, &ctx.peaks())?;
            match &cert {
                Some(c) => ctx.human(format!(
                    "T = {}, L = {}: full peak of order {} at {} (theta = {}, verified: {})",
                    span.period(),
                    span.dim(),
                    c.order,
                    c.shifts,
                    c.verified_value,
                    c.verified
                )),
                None => ctx.human(format!(
                    "T = {}, L = {}: no dual vector of weight <= {t_max}",
                    span.period(),
                    span.dim()
                )),
            }
            if ctx.global.json {
                ctx.emit_json(json!({
                    "T": span.period(),
                    "L": span.dim(),
                    "tmax": t_max,
                    "found": cert.is_some(),
                    "certificate": cert,
                }))?;
            }
            Ok(Outcome::Ok)
        }
        Command::Bounds(b) => bounds(ctx, b),
        Command::Verify(VerifyCommand::All { scale, corpus }) => {
            let opts = VerifyOptions {
                scale: match scale {
                    ScaleArg::Quick => Scale::Quick,
                    ScaleArg::Full => Scale::Full,
                },
                seed: ctx.global.seed,
                search: ctx.search(),
                peaks: ctx.peaks(),
                corpus,
            };
            let reports = verify_all(&opts);
            report_checks(ctx, &reports)
        }
    }
}

fn report_checks(ctx: &mut Ctx<'_>, reports: &[CheckReport]) -> CliResult {
    for r in reports {
        ctx.human(format!(
            "{} {:<18} {:>8} ms  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.runtime_ms,
            r.detail
        ));
    }
    let passed = reports.iter().all(|r| r.passed);
    if ctx.global.json {
        ctx.emit_json(json!({ "passed": passed, "checks": reports }))?;
    } else if ctx.global.csv {
        let rows = reports
            .iter()
            .map(|r| {
                vec![
                    r.name.clone(),
                    r.passed.to_string(),
                    r.runtime_ms.to_string(),
                    r.detail.clone(),
                ]
            })
            .collect();
        ctx.emit_csv(&["name", "passed", "runtime_ms", "detail"], rows)?;
    }
    Ok(if passed {
        Outcome::Ok
    } else {
        Outcome::CheckFailed
    })
}

fn gen(ctx: &mut Ctx<'_>, g: GenCommand) -> CliResult {
    ctx.no_csv()?;
    let (s, out) = match g {
        GenCommand::Msequence {
            ell,
            taps,
            state,
            out,
        } => {
            let spec = match taps {
                Some(t) => LfsrSpec::new(ell, t, state)?,
                None => LfsrSpec::new(ell, LfsrSpec::default_for(ell)?.taps, state)?,
            };
            (m_sequence(&spec)?, out)
        }
        GenCommand::Gold {
            ell,
            shift,
            pair,
            out,
        } => {
            let s = match pair {
                Some(p) => gold_sequence(ell, p, shift)?,
                None => gold_sequence_default(ell, shift)?,
            };
            (s, out)
        }
        GenCommand::KasamiSmall { ell, shift, out } => (small_kasami(ell, shift)?, out),
        GenCommand::Hall { period, g, out } => (hall_sextic(&HallSpec::new(period, g)?)?, out),
        GenCommand::Fermat { p, out } => (fermat_threshold(&FermatSpec::new(p)?)?, out),
    };
    if out.periods == 0 {
        return Err(Error::InvalidParameter(
            "--periods must be at least 1".into(),
        ));
    }
    let written = s.periods(out.periods)?;
    let t = s.period().expect("generators declare a period");
    ctx.human(format!("period {t}, {} bits written", written.len()));
    if let Some(path) = &out.output {
        written.save(path)?;
    }
    if ctx.global.json {
        ctx.emit_json(json!({ "T": t, "bits": written.len(), "sequence": written.render() }))?;
    } else if out.output.is_none() {
        write!(ctx.out, "{}", written.render()).map_err(stdout_error)?;
    }
    Ok(Outcome::Ok)
}

fn complexity(ctx: &mut Ctx<'_>, a: ComplexityArgs, linear: bool) -> CliResult {
    let s = load(&a.file)?;
    let n = default_n(&s, a.n);
    let label = if linear { "L" } else { "M" };
    if a.profile {
        let p = if linear {
            linear_complexity_profile(&s, n)?
        } else {
            max_order_complexity_profile(&s, n)?
        };
        ctx.human(format!("{label}(S, N) for N = 1..{n}: {:?}", p.values));
        if ctx.global.json {
            ctx.emit_json(&p)?;
        } else if ctx.global.csv {
            let rows = p
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| vec![(i + 1).to_string(), v.to_string()])
                .collect();
            ctx.emit_csv(&["N", label], rows)?;
        }
        return Ok(Outcome::Ok);
    }
    ctx.no_csv()?;
    if linear {
        let r = linear_complexity(&s, n)?;
        ctx.human(format!("L(S, {n}) = {}, c = {:?}", r.value, r.coefficients));
        if ctx.global.json {
            ctx.emit_json(json!({ "N": n, "L": r.value, "coefficients": r.coefficients }))?;
        }
    } else {
        let m = max_order_complexity(&s, n)?;
        ctx.human(format!("M(S, {n}) = {m}"));
        if ctx.global.json {
            ctx.emit_json(json!({ "N": n, "M": m }))?;
        }
    }
    Ok(Outcome::Ok)
}

fn show_report(ctx: &mut Ctx<'_>, r: &BoundReport) -> Result<(), Error> {
    ctx.human(format!(
        "{}: {} ({})",
        r.name,
        match r.value {
            Some(v) if r.fired => format!("{v:.4}"),
            _ => "not fired".into(),
        },
        r.commentary
    ));
    if ctx.global.json {
        ctx.emit_json(r)?;
    }
    Ok(())
}

fn bounds(ctx: &mut Ctx<'_>, b: BoundsCommand) -> CliResult {
    match b {
        BoundsCommand::Table1 { ell_max } => {
            let rows = table1(ell_max)?;
            for r in &rows {
                ctx.human(format!(
                    "{:<14} ell={:>2}  T={:>8}  L={:>4}  t={:>3}  published={}{}",
                    r.family.name(),
                    r.ell,
                    r.period,
                    r.linear_complexity,
                    r.t,
                    r.published,
                    if r.matches_published {
                        ""
                    } else {
                        "  (differs)"
                    }
                ));
            }
            if ctx.global.json {
                ctx.emit_json(&rows)?;
            } else if ctx.global.csv {
                let csv = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.family.name().to_string(),
                            r.ell.to_string(),
                            r.period.to_string(),
                            r.linear_complexity.to_string(),
                            r.t.to_string(),
                            r.published.to_string(),
                            r.matches_published.to_string(),
                        ]
                    })
                    .collect();
                ctx.emit_csv(
                    &["family", "ell", "T", "L", "t", "published", "matches"],
                    csv,
                )?;
            }
        }
        BoundsCommand::Table2 => {
            for (name, old, new) in BOUND_COMPARISON {
                ctx.human(format!("{name:<38} previous: {old:<20} new: {new}"));
            }
            let rows: Vec<Vec<String>> = BOUND_COMPARISON
                .iter()
                .map(|(a, b, c)| vec![a.to_string(), b.to_string(), c.to_string()])
                .collect();
            if ctx.global.json {
                let v: Vec<Value> = BOUND_COMPARISON
                    .iter()
                    .map(|(a, b, c)| json!({ "sequence": a, "previous": b, "new": c }))
                    .collect();
                ctx.emit_json(v)?;
            } else if ctx.global.csv {
                ctx.emit_csv(&["sequence", "previous", "new"], rows)?;
            }
        }
        BoundsCommand::Thm2 { n, l } => {
            ctx.no_csv()?;
            let r = theorem2_threshold(n, l)?;
            match r {
                Some(th) => ctx.human(format!(
                    "t = {}: half peak at some order 1 < k <= {}",
                    th.t, th.k_bound
                )),
                None => ctx.human(format!(
                    "no t <= {} satisfies C(floor(N/2), t) >= 2^L",
                    n / 2
                )),
            }
            if ctx.global.json {
                ctx.emit_json(json!({ "N": n, "L": l, "found": r.is_some(), "t": r.map(|x| x.t), "k_bound": r.map(|x| x.k_bound) }))?;
            }
        }
        BoundsCommand::Cor3 { k, n } => {
            ctx.no_csv()?;
            crate::bounds::corollary3_bound(k, n, ctx.global.delta)?;
            let r = corollary3_report_for(k, n, ctx.global.delta);
            show_report(ctx, &r)?;
        }
        BoundsCommand::Compare { file, k, n } => {
            ctx.no_csv()?;
            let s = load(&file)?;
            let n = n.unwrap_or(s.len());
            let corr = correlations_up_to(&s, n, k, &ctx.search())?;
            let bw = bw_lower_bound(&corr, n)?;
            let iw = iw_lower_bound(&corr, n)?;
            let no_half = corr
                .iter()
                .find(|(_, &c)| 2 * c >= n as u64)
                .map_or(k + 1, |(&j, _)| j);
            let c3 = corollary3_report_for(no_half, n, ctx.global.delta);
            let l = linear_complexity(&s, n)?.value;
            let m = max_order_complexity(&s, n)?;
            ctx.human(format!("N = {n}: L = {l}, M = {m}, C = {corr:?}"));
            for r in [&bw, &iw, &c3] {
                ctx.human(format!(
                    "  {:<5} {}",
                    r.name,
                    r.value
                        .map_or("not fired".to_string(), |v| format!("{v:.3}"))
                ));
            }
            if ctx.global.json {
                let corr_map: BTreeMap<String, u64> =
                    corr.iter().map(|(k, v)| (k.to_string(), *v)).collect();
                ctx.emit_json(
                    json!({ "N": n, "L": l, "M": m, "C": corr_map, "bounds": [bw, iw, c3] }),
                )?;
            }
        }
        BoundsCommand::Hall { period, eps, n } => {
            ctx.no_csv()?;
            let h = hall_corollary_inputs(period, eps, n, ctx.global.delta)?;
            let r = h.report(ctx.global.delta);
            ctx.human(format!(
                "T = {}, N = {}: chain verified for k <= {} (asymptotic range k <= {})",
                h.period, h.n, h.verified_k_max, h.proof_k_max
            ));
            show_report(ctx, &r)?;
        }
        BoundsCommand::Fermat { p, eps, n } => {
            ctx.no_csv()?;
            let r = fermat_corollary_inputs(p, eps, n, ctx.global.delta)?;
            show_report(ctx, &r)?;
        }
        BoundsCommand::Verify { theorem, file, n } => {
            ctx.no_csv()?;
            let s = load(&file)?;
            let (ok, evidence) = match theorem {
                Theorem::Thm1 => {
                    if s.period().is_none() {
                        return Err(Error::MissingPeriod);
                    }
                    verify_theorem1(&s, &ctx.peaks())?
                }
                Theorem::Thm2 => {
                    let (fired, ok, ev) = verify_theorem2(&s, default_n(&s, n), &ctx.search())?;
                    (ok, json!({ "fired": fired, "evidence": ev }))
                }
                Theorem::Thm4 => {
                    let c = theorem4_check(&s, default_n(&s, n), &ctx.search())?;
                    ctx.human(c.report().commentary);
                    (c.holds, serde_json::to_value(&c).expect("serialisable"))
                }
            };
            ctx.human(format!(
                "{theorem:?}: {}",
                if ok { "holds" } else { "FAILED" }
            ));
            if ctx.global.json {
                ctx.emit_json(json!({ "theorem": format!("{theorem:?}").to_lowercase(), "passed": ok, "evidence": evidence }))?;
            }
            return Ok(if ok {
                Outcome::Ok
            } else {
                Outcome::CheckFailed
            });
        }
        BoundsCommand::Kerror { file, k, flips, n } => {
            ctx.no_csv()?;
            let s = load(&file)?;
            let n = n.unwrap_or(s.len());
            let r = kerror_bound(&s, n, k, flips, ctx.global.delta, &ctx.search())?;
            show_report(ctx, &r)?;
        }
    }
    Ok(Outcome::Ok)
}
