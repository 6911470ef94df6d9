//! Command-line front end for `outerq`.

use std::io::{self, BufWriter, Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use outerq::constructions::{cycle_extremal, h_gadget, path_extremal, path_join, PathJoinSpec};
use outerq::enumeration::{counts, enumerate, EnumerationClass, Family};
use outerq::harness::{
    check_lemma, run_campaign_with, structural_check, verify_cycle_theorem, verify_path_theorem,
    verify_star_theorem, write_summary, CampaignConfig, LemmaName, StandardConstructions, Status,
    VerificationReport,
};
use outerq::recognition::{is_outerplanar, ForbiddenPattern};
use outerq::spectral::{eta_max, q_index, DEFAULT_SEP, DEFAULT_TOL};
use outerq::transforms::greedy_ascent;
use outerq::{graph6, Graph};

#[derive(Parser)]
#[command(
    name = "outerq",
    version,
    about = "Q-index extremal checks for outerplanar graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a candidate extremal graph (or a building block) as graph6.
    Construct(ConstructArgs),
    /// Q-index, Perron vector and max eta of graph6 input, one JSON object per line.
    Spectral(SpectralArgs),
    /// Stream one graph6 line per isomorphism class, or per-order counts as CSV.
    Enumerate(EnumerateArgs),
    /// Run greedy Q-increasing ascent from each seed and print the JSON trace.
    Ascend(AscendArgs),
    /// Compare the exhaustive argmax with the constructed extremal graph.
    Verify(VerifyArgs),
    /// Run one bound or move suite.
    Lemma(LemmaArgs),
    /// Run a batch of checks from a config file.
    Campaign(CampaignArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    /// Extremal graph for a forbidden cycle; needs --n and --pattern C<l>.
    Cycle,
    /// Extremal candidate for a forbidden path union; needs --n and --pattern <t>P<l>.
    Path,
    /// K1 joined to disjoint paths; needs --parts.
    Join,
    /// Attach K1 v (P_t u P_s) at vertex --u of the --graph6 input; needs --t and --s.
    Gadget,
}

#[derive(Args)]
struct ConstructArgs {
    kind: ConstructKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    pattern: Option<ForbiddenPattern>,
    /// Path orders, comma separated.
    #[arg(long, value_delimiter = ',')]
    parts: Vec<usize>,
    #[arg(long)]
    graph6: Option<PathBuf>,
    #[arg(long)]
    u: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// Print parameters as JSON instead of a bare graph6 line.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SpectralArgs {
    /// graph6 file, `-` for stdin.
    #[arg(long, default_value = "-")]
    graph6: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Outerplanar,
    All,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    pattern: Option<ForbiddenPattern>,
    #[arg(long, value_enum, default_value = "outerplanar")]
    family: FamilyArg,
    /// Include disconnected graphs.
    #[arg(long)]
    disconnected: bool,
    /// Emit `n,count` rows for every order up to --n.
    #[arg(long)]
    count_only: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AscendArgs {
    #[arg(long, default_value = "-")]
    graph6: PathBuf,
    #[arg(long)]
    pattern: Option<ForbiddenPattern>,
    #[arg(long, default_value_t = 1000)]
    max_steps: usize,
    #[arg(long, default_value_t = DEFAULT_SEP)]
    sep: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    /// `C<l>` patterns: argmax against the cycle construction.
    Cycle,
    /// `<t>P<l>` patterns: argmax against the path construction.
    Path,
    /// Patterns P4, 2K2, C3: argmax against the star.
    Star,
    /// Every winner has a universal vertex whose neighbourhood is a linear forest.
    Structural,
}

#[derive(Args)]
struct VerifyArgs {
    /// Order, or an inclusive range such as 5..9.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    #[arg(long)]
    pattern: ForbiddenPattern,
    /// Defaults to cycle for C<l> and path for <t>P<l>.
    #[arg(long, value_enum)]
    check: Option<CheckKind>,
    #[arg(long, default_value_t = DEFAULT_SEP)]
    sep: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LemmaArgs {
    /// One of obv, addedges, delta, qmu, perron, edgemove2, edgemove3,
    /// edgemove, edgeshift, claim41.
    name: LemmaName,
    /// Orders to cover (suite default when omitted).
    #[arg(long, value_parser = parse_range)]
    n: Option<RangeInclusive<usize>>,
    #[arg(long, default_value_t = DEFAULT_SEP)]
    sep: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CampaignArgs {
    config: PathBuf,
    /// Override the config's worker count (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    sep: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write `<check_id>.json` files and `summary.csv` here as well as printing.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(text: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid order '{s}'"))
    };
    let range = match text.split_once("..") {
        None => num(text)?..=num(text)?,
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
    };
    if range.is_empty() {
        return Err(format!("empty range '{text}'"));
    }
    Ok(range)
}

fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(graph6::decode_lines(&text)?)
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.with_context(|| format!("--{flag} is required here"))
}

fn construct(args: ConstructArgs) -> Result<()> {
    let (graph, info) = match args.kind {
        ConstructKind::Cycle => {
            let n = need(args.n, "n")?;
            let ForbiddenPattern::Cycle { len } = need(args.pattern, "pattern")? else {
                bail!("cycle construction needs a C<l> pattern");
            };
            let c = cycle_extremal(n, len)?;
            let info = json!({ "spec": c.spec.to_string(), "alpha": c.alpha, "r": c.r });
            (c.graph, info)
        }
        ConstructKind::Path => {
            let n = need(args.n, "n")?;
            let ForbiddenPattern::PathUnion { copies, len } = need(args.pattern, "pattern")? else {
                bail!("path construction needs a <t>P<l> pattern");
            };
            let p = path_extremal(n, copies, len)?;
            let info = json!({
                "spec": p.spec.to_string(),
                "a1": p.a1,
                "part": p.part,
                "alpha": p.alpha,
                "r": p.r,
                "printed": p.printed,
                "discrepancy_flag": p.discrepancy,
                "alternative_pair": p.alternative_pair,
            });
            (p.graph, info)
        }
        ConstructKind::Join => {
            if args.parts.is_empty() {
                bail!("--parts is required here");
            }
            let spec = PathJoinSpec::new(args.parts);
            (path_join(&spec)?, json!({ "spec": spec.to_string() }))
        }
        ConstructKind::Gadget => {
            let hosts = read_graphs(&need(args.graph6, "graph6")?)?;
            let [h] = hosts.as_slice() else {
                bail!(
                    "gadget construction needs exactly one host graph, got {}",
                    hosts.len()
                );
            };
            let (u, t, s) = (need(args.u, "u")?, need(args.t, "t")?, need(args.s, "s")?);
            (
                h_gadget(h, u, t, s)?,
                json!({ "host": graph6::encode(h), "u": u, "t": t, "s": s }),
            )
        }
    };
    let code = graph6::encode(&graph);
    if args.json {
        let mut info = info;
        info["graph6"] = json!(code);
        info["n"] = json!(graph.order());
        info["m"] = json!(graph.size());
        println!("{}", serde_json::to_string_pretty(&info)?);
    } else {
        println!("{code}");
    }
    Ok(())
}

fn spectral(args: SpectralArgs) -> Result<()> {
    let mut out = BufWriter::new(io::stdout().lock());
    for g in read_graphs(&args.graph6)? {
        let r = q_index(&g, args.tol)?;
        let eta = if g.order() > 1 && g.is_connected() {
            Some(eta_max(&g)?)
        } else {
            None
        };
        let line = json!({
            "graph6": graph6::encode(&g),
            "n": g.order(),
            "m": g.size(),
            "connected": g.is_connected(),
            "outerplanar": is_outerplanar(&g),
            "q": r.q,
            "residual": r.residual,
            "iterations": r.iterations,
            "eta_max": eta,
            "perron": r.x,
        });
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

fn enumerate_cmd(args: EnumerateArgs) -> Result<()> {
    let family = match args.family {
        FamilyArg::Outerplanar => Family::Outerplanar,
        FamilyArg::All => Family::All,
    };
    let sink: Box<dyn Write> = match &args.out {
        Some(p) => {
            Box::new(std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    if args.count_only {
        writeln!(out, "n,count")?;
        for (i, c) in counts(family, !args.disconnected, args.n, args.pattern)?
            .iter()
            .enumerate()
        {
            writeln!(out, "{},{c}", i + 1)?;
        }
    } else {
        let class = EnumerationClass {
            n: args.n,
            pattern: args.pattern,
            require_connected: !args.disconnected,
            family,
        };
        for g in enumerate(&class)? {
            writeln!(out, "{}", graph6::encode(&g))?;
        }
    }
    out.flush()?;
    Ok(())
}

fn ascend(args: AscendArgs) -> Result<()> {
    let mut out = BufWriter::new(io::stdout().lock());
    for g in read_graphs(&args.graph6)? {
        let a = greedy_ascent(&g, args.pattern, args.max_steps, args.sep)?;
        writeln!(out, "{}", serde_json::to_string(&a)?)?;
    }
    out.flush()?;
    Ok(())
}

/// Prints every report as one JSON line, optionally persists them, and maps
/// the worst status to the exit code.
fn emit(reports: &[VerificationReport], output: &OutputArgs) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    for r in reports {
        writeln!(out, "{}", serde_json::to_string(r)?)?;
    }
    if let Some(dir) = &output.out {
        for r in reports {
            r.write_to(dir)?;
        }
        write_summary(&dir.join("summary.csv"), reports)?;
    }
    Ok(exit_for(reports))
}

fn exit_for(reports: &[VerificationReport]) -> ExitCode {
    if reports.iter().any(|r| r.status == Status::Refuted) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let check = args.check.unwrap_or(match args.pattern {
        ForbiddenPattern::Cycle { .. } => CheckKind::Cycle,
        ForbiddenPattern::PathUnion { .. } => CheckKind::Path,
    });
    let mut reports = Vec::new();
    for n in args.n.clone() {
        let r = match (check, args.pattern) {
            (CheckKind::Cycle, ForbiddenPattern::Cycle { len }) => {
                verify_cycle_theorem(n, len, args.sep, &StandardConstructions)?
            }
            (CheckKind::Path, ForbiddenPattern::PathUnion { copies, len }) => {
                verify_path_theorem(n, copies, len, args.sep, &StandardConstructions)?
            }
            (CheckKind::Star, p) => verify_star_theorem(n, p, args.sep)?,
            (CheckKind::Structural, p) => structural_check(n, p, args.sep)?,
            (_, p) => bail!("pattern {p} does not fit the selected check"),
        };
        reports.push(r);
    }
    emit(&reports, &args.output)
}

fn lemma(args: LemmaArgs) -> Result<ExitCode> {
    let r = check_lemma(args.name, args.n, args.sep)?;
    emit(&[r], &args.output)
}

fn campaign(args: CampaignArgs) -> Result<ExitCode> {
    let mut config = CampaignConfig::from_file(&args.config)?;
    if let Some(j) = args.jobs {
        config.jobs = j;
    }
    if let Some(o) = args.out {
        config.out = o;
    }
    if let Some(s) = args.sep {
        config.sep = s;
    }
    let outcome = run_campaign_with(&config, &StandardConstructions)?;
    let mut err = io::stderr().lock();
    for r in &outcome.reports {
        let margin = r
            .margin
            .map(|m| format!("{m:.3e}"))
            .unwrap_or_else(|| "-".into());
        writeln!(
            err,
            "{:<28} {:<11} margin {margin:<10} {} ms",
            r.check_id, r.status, r.runtime_ms
        )?;
    }
    writeln!(err, "summary written to {}", outcome.summary.display())?;
    Ok(ExitCode::from(outcome.exit_code as u8))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct(a) => construct(a).map(|()| ExitCode::SUCCESS),
        Command::Spectral(a) => spectral(a).map(|()| ExitCode::SUCCESS),
        Command::Enumerate(a) => enumerate_cmd(a).map(|()| ExitCode::SUCCESS),
        Command::Ascend(a) => ascend(a).map(|()| ExitCode::SUCCESS),
        Command::Verify(a) => verify(a),
        Command::Lemma(a) => lemma(a),
        Command::Campaign(a) => campaign(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
