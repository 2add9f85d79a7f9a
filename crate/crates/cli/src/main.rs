//! `pascent`: enumerate p-ascent sequences, evaluate their generating
//! functions, count pattern avoiders, and run the verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification or cross-check fails,
//! 2 on a usage error. `PASCENT_THREADS` sets the worker thread count.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use pascent_core::gf;
use pascent_core::patterns::{self, Pattern, PatternError};
use pascent_core::sequence::{self, is_primitive, is_up_down};
use pascent_core::series::{TSeries, Var};
use pascent_core::verify::{self, SuiteParams, VerifyError};

#[derive(Parser)]
#[command(name = "pascent", version, about = "Exact enumeration and generating functions for p-ascent sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List p-ascent sequences of one length, lexicographically.
    Enumerate(EnumerateArgs),
    /// Count p-ascent sequences of one length.
    Count(FilterArgs),
    /// Write a generating function as series JSON.
    Series(SeriesArgs),
    /// Tabulate pattern-avoider counts for n = 1..N.
    Avoid(AvoidArgs),
    /// Apply the 10 -> 012 bijection on 2-ascent sequences, or its inverse.
    Bijection(BijectionArgs),
    /// Run verification suites and print JSON-lines reports.
    Verify(VerifyArgs),
    /// Print a scalar sequence in OEIS b-file format.
    Bfile(BfileArgs),
}

#[derive(Args)]
struct FilterArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    p: u32,
    #[arg(long)]
    n: usize,
    /// Keep only sequences avoiding this pattern (e.g. 012 or 21-2).
    #[arg(long)]
    pattern: Option<Pattern>,
    /// Keep only sequences with no two equal adjacent letters.
    #[arg(long)]
    primitive: bool,
    /// Keep only up-down sequences.
    #[arg(long)]
    updown: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Lines,
    Json,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    filter: FilterArgs,
    #[arg(long, value_enum, default_value = "lines")]
    format: ListFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GfName {
    A,
    R,
    P,
    #[value(name = "G1u")]
    G1u,
    #[value(name = "G1")]
    G1,
    G,
    H,
    Maxk,
}

#[derive(Args)]
struct GfArgs {
    #[arg(long, value_enum, ignore_case = true)]
    gf: GfName,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    p: u32,
    #[arg(long)]
    order: usize,
    /// Repetition bound, required for maxk.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: Option<u32>,
    /// Initial run length for G1 (r > 1 gives G_r).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    r: u32,
    /// u-degree bound for G1u and H (default: the order).
    #[arg(long)]
    udeg: Option<u32>,
    /// Specialize variables, e.g. u=1,z=1 or all=1.
    #[arg(long, value_parser = parse_assignments)]
    set: Option<Assignments>,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    gf: GfArgs,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Default, PartialEq, Eq)]
enum AvoidMode {
    #[default]
    Oracle,
    Closed,
    Both,
}

#[derive(Args)]
struct AvoidArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    p: u32,
    #[arg(long)]
    pattern: Pattern,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    primitive: bool,
    /// Use the closed form only.
    #[arg(long, group = "mode")]
    closed: bool,
    /// Use brute-force enumeration only (the default).
    #[arg(long, group = "mode")]
    oracle: bool,
    /// Print both columns and fail if they differ.
    #[arg(long, group = "mode")]
    both: bool,
}

impl AvoidArgs {
    fn mode(&self) -> AvoidMode {
        if self.closed {
            AvoidMode::Closed
        } else if self.both {
            AvoidMode::Both
        } else {
            AvoidMode::Oracle
        }
    }
}

#[derive(Args)]
struct BijectionArgs {
    /// Comma-separated letters, e.g. 0,1,1,2.
    #[arg(required_unless_present = "all")]
    word: Option<String>,
    /// Map a 012-avoider back to a 10-avoider.
    #[arg(long)]
    inverse: bool,
    /// List the whole correspondence for length n.
    #[arg(long, requires = "n")]
    all: bool,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all` for the full matrix.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    p: u32,
    #[arg(long, default_value_t = 8)]
    order: usize,
    /// Maximum enumeration length per p for `all`.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(4..))]
    budget: u64,
    /// Repetition bound for oracle_maxk.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["gf", "avoid"])))]
struct BfileArgs {
    #[arg(long, value_enum, ignore_case = true)]
    gf: Option<GfName>,
    /// Pattern whose avoiders are counted.
    #[arg(long)]
    avoid: Option<Pattern>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    p: u32,
    /// Last index for --gf.
    #[arg(long)]
    order: Option<usize>,
    /// Last index for --avoid.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: Option<u32>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    r: u32,
    #[arg(long)]
    udeg: Option<u32>,
    #[arg(long, value_parser = parse_assignments)]
    set: Option<Assignments>,
    #[arg(long)]
    primitive: bool,
    /// Use the closed form for --avoid.
    #[arg(long)]
    closed: bool,
}

/// Variable assignments from `--set`.
#[derive(Clone, Debug)]
struct Assignments(Vec<(Var, BigInt)>);

fn parse_assignments(s: &str) -> Result<Assignments, String> {
    let mut out: Vec<(Var, BigInt)> = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected name=value, got {part:?}"))?;
        let value: BigInt = value.trim().parse().map_err(|_| format!("bad integer in {part:?}"))?;
        let name = name.trim();
        if name == "all" {
            for v in Var::ALL {
                out.retain(|(w, _)| *w != v);
                out.push((v, value.clone()));
            }
            continue;
        }
        let var = Var::from_name(name).ok_or_else(|| format!("unknown variable {name:?} (use u, v, z, x or all)"))?;
        out.retain(|(w, _)| *w != var);
        out.push((var, value));
    }
    Ok(Assignments(out))
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Usage(String),
    Check(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(2));
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(&a, &mut out),
        Command::Count(a) => cmd_count(&a, &mut out),
        Command::Series(a) => cmd_series(&a, &mut out),
        Command::Avoid(a) => cmd_avoid(&a, &mut out),
        Command::Bijection(a) => cmd_bijection(&a, &mut out),
        Command::Verify(a) => cmd_verify(&a, &mut out),
        Command::Bfile(a) => cmd_bfile(&a, &mut out),
    };
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::Io)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("pascent: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("pascent: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("pascent: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("PASCENT_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn sequence_filter(a: &FilterArgs) -> impl Fn(&[u32]) -> bool + Sync + '_ {
    move |w: &[u32]| {
        (!a.primitive || is_primitive(w))
            && (!a.updown || is_up_down(w))
            && a.pattern.as_ref().is_none_or(|pat| !pat.occurs_in(w))
    }
}

fn cmd_enumerate(a: &EnumerateArgs, out: &mut impl Write) -> CmdResult {
    let filter = sequence_filter(&a.filter);
    let seqs = sequence::enumerate(a.filter.p, a.filter.n, Some(&filter));
    match a.format {
        ListFormat::Lines => {
            for s in seqs {
                let line: Vec<String> = s.letters().iter().map(u32::to_string).collect();
                writeln!(out, "{}", line.join(","))?;
            }
        }
        ListFormat::Json => {
            let all: Vec<Vec<u32>> = seqs.map(|s| s.into_letters()).collect();
            writeln!(out, "{}", serde_json::to_string(&all).expect("serializable"))?;
        }
    }
    Ok(())
}

fn cmd_count(a: &FilterArgs, out: &mut impl Write) -> CmdResult {
    let filter = sequence_filter(a);
    let n = sequence::count(a.p, a.n, Some(&filter));
    writeln!(out, "{n}")?;
    Ok(())
}

fn evaluate(g: &GfArgs) -> Result<TSeries, Failure> {
    let order = g.order;
    let udeg = g.udeg.unwrap_or(order as u32);
    let series = match g.gf {
        GfName::A => gf::eval_a(g.p, order),
        GfName::R => gf::eval_r(g.p, order),
        GfName::P => {
            if g.p != 1 {
                return Err(Failure::Usage("P is the p = 1 Fishburn series; omit --p or pass --p 1".into()));
            }
            gf::eval_p(order)
        }
        GfName::G1u => gf::eval_g1_u(g.p, order, udeg),
        GfName::G1 => gf::eval_gr(g.p, g.r, order).map_err(|e| Failure::Check(e.to_string()))?,
        GfName::G => gf::eval_g(g.p, order).map_err(|e| Failure::Check(e.to_string()))?,
        GfName::H => gf::eval_h(g.p, order, udeg),
        GfName::Maxk => {
            let k = g.k.ok_or_else(|| Failure::Usage("--gf maxk requires --k".into()))?;
            gf::eval_maxk(g.p, k, order)
        }
    };
    Ok(match &g.set {
        Some(Assignments(a)) => series.specialize(a),
        None => series,
    })
}

fn cmd_series(a: &SeriesArgs, out: &mut impl Write) -> CmdResult {
    let json = evaluate(&a.gf)?.to_json();
    match &a.out {
        Some(path) => fs::write(path, format!("{json}\n"))?,
        None => writeln!(out, "{json}")?,
    }
    Ok(())
}

fn closed_or_message(p: u32, pat: &Pattern, n: usize, primitive: bool) -> Result<BigInt, PatternError> {
    patterns::closed_count(p, pat, n, primitive)
}

fn cmd_avoid(a: &AvoidArgs, out: &mut impl Write) -> CmdResult {
    let mode = a.mode();
    let closed_supported = closed_or_message(a.p, &a.pattern, 1, a.primitive);
    if let Err(e) = &closed_supported {
        match mode {
            AvoidMode::Closed => return Err(Failure::Usage(e.to_string())),
            AvoidMode::Both => eprintln!("pascent: {e}; showing brute-force counts only"),
            AvoidMode::Oracle => {}
        }
    }
    let closed_ok = closed_supported.is_ok();
    let mut mismatch = None;
    for n in 1..=a.n {
        match mode {
            AvoidMode::Oracle => writeln!(out, "{n} {}", patterns::count_avoiders(a.p, &a.pattern, n, a.primitive))?,
            AvoidMode::Closed => {
                let c = closed_or_message(a.p, &a.pattern, n, a.primitive).map_err(|e| Failure::Usage(e.to_string()))?;
                writeln!(out, "{n} {c}")?;
            }
            AvoidMode::Both => {
                let brute = patterns::count_avoiders(a.p, &a.pattern, n, a.primitive);
                if closed_ok {
                    let c = closed_or_message(a.p, &a.pattern, n, a.primitive).expect("supported");
                    if c != brute && mismatch.is_none() {
                        mismatch = Some(n);
                    }
                    writeln!(out, "{n} {c} {brute}")?;
                } else {
                    writeln!(out, "{n} {brute}")?;
                }
            }
        }
    }
    match mismatch {
        Some(n) => Err(Failure::Check(format!("closed form and enumeration differ at n = {n}"))),
        None => Ok(()),
    }
}

fn parse_word(s: &str) -> Result<Vec<u32>, Failure> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = if s.contains(',') { s.split(',').collect() } else { s.split("").filter(|c| !c.is_empty()).collect() };
    parts
        .iter()
        .map(|x| x.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("bad letter {x:?} in {s:?}"))))
        .collect()
}

fn join(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_bijection(a: &BijectionArgs, out: &mut impl Write) -> CmdResult {
    let map = |w: &[u32]| {
        if a.inverse {
            patterns::bijection_012_to_10(w)
        } else {
            patterns::bijection_10_to_012(w)
        }
    };
    if a.all {
        let n = a.n.expect("clap enforces --n");
        let source = if a.inverse { "012" } else { "10" };
        let pat: Pattern = source.parse().expect("fixed pattern");
        for w in patterns::avoiders(2, &pat, n, false) {
            let img = map(&w).map_err(|e| Failure::Check(e.to_string()))?;
            writeln!(out, "{} {}", join(&w), join(&img))?;
        }
        return Ok(());
    }
    let w = parse_word(a.word.as_deref().unwrap_or_default())?;
    let img = map(&w).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{}", join(&img))?;
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut impl Write) -> CmdResult {
    let reports = if a.suite == "all" {
        verify::run_all(a.budget as usize)
    } else {
        let params = SuiteParams {
            p: a.p,
            order: a.order,
            k: a.k,
        };
        match verify::run_suite(&a.suite, &params) {
            Ok(r) => r,
            Err(e @ VerifyError::UnknownSuite(_)) => {
                let names: Vec<&str> = verify::suite_names().collect();
                return Err(Failure::Usage(format!("{e}; known suites: all, {}", names.join(", "))));
            }
            Err(e) => return Err(Failure::Usage(e.to_string())),
        }
    };
    for r in &reports {
        writeln!(out, "{}", r.to_json_line())?;
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} of {} checks failed", reports.len())));
    }
    Ok(())
}

fn cmd_bfile(a: &BfileArgs, out: &mut impl Write) -> CmdResult {
    let values: Vec<BigInt> = if let Some(name) = a.gf {
        let order = a.order.ok_or_else(|| Failure::Usage("--gf requires --order".into()))?;
        let g = GfArgs {
            gf: name,
            p: a.p,
            order,
            k: a.k,
            r: a.r,
            udeg: a.udeg,
            set: a.set.clone(),
        };
        let series = evaluate(&g)?;
        let coeffs = series.scalar_coeffs().ok_or_else(|| {
            Failure::Usage("series still has free variables; specialize them with --set (e.g. --set all=1)".into())
        })?;
        // index n is the coefficient of t^n, starting at n = 1
        coeffs.into_iter().skip(1).collect()
    } else {
        let pat = a.avoid.as_ref().expect("clap enforces one source");
        let n = a.n.ok_or_else(|| Failure::Usage("--avoid requires --n".into()))?;
        let mut v = Vec::with_capacity(n);
        for i in 1..=n {
            v.push(if a.closed {
                patterns::closed_count(a.p, pat, i, a.primitive).map_err(|e| Failure::Usage(e.to_string()))?
            } else {
                patterns::count_avoiders(a.p, pat, i, a.primitive)
            });
        }
        v
    };
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{} {v}", i + 1)?;
    }
    Ok(())
}
