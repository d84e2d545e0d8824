//! `cover`: referee online unit-covering matches from the command line.
//!
//! Exit codes: 0 on success, 2 when a legality violation is detected
//! (an illegal algorithm decision or adversary assertion failure), 1 for
//! I/O and argument errors.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use unit_cover::bounds::bounds_report;
use unit_cover::harness::{run_match, HarnessError, MatchOutcome, MatchSource};
use unit_cover::instance::{generate_instance, InstanceKind};
use unit_cover::io::{parse_points, report_json, write_points, write_report};
use unit_cover::lattice::{verify_partition, LatticeKind};
use unit_cover::offline::{greedy_cover, opt_cover_exact, MAX_EXACT_POINTS};
use unit_cover::online::algorithm_by_id;
use unit_cover::svg::emit_svg;

#[derive(Parser)]
#[command(name = "cover", version, about = "Online unit covering: matches, duels, optima and bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an algorithm over a point file and score it against the exact
    /// optimum.
    Run(RunArgs),
    /// Pit an algorithm against an adaptive adversary.
    Duel(DuelArgs),
    /// Exact minimum number of balls covering a point file.
    Opt(OptArgs),
    /// Kissing-number and competitive-ratio bounds for one dimension.
    Bounds(BoundsArgs),
    /// Exhaustively verify that no unit disk meets more than the claimed
    /// number of lattice partition groups.
    VerifyPartition(VerifyArgs),
    /// Generate an instance file.
    Gen(GenArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Algorithm id: centered | grid | lattice-square | lattice-hex
    #[arg(long)]
    algo: String,
    /// Point file (header `dim k`, one point per line)
    #[arg(long)]
    input: PathBuf,
    /// Skip the exact optimum (required beyond the size cap)
    #[arg(long)]
    no_opt: bool,
    /// Write the match report as JSON
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write an SVG trace (dimension 2 only)
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct DuelArgs {
    /// Algorithm id: centered | grid | lattice-square | lattice-hex
    #[arg(long)]
    algo: String,
    /// Adversary id: planar4 | simplex | plus2 | lat-square | lat-hex
    #[arg(long)]
    adversary: String,
    /// Ambient dimension
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct OptArgs {
    #[arg(long)]
    input: PathBuf,
    /// Covering radius
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Greedy upper bound instead of the exact optimum (any size)
    #[arg(long)]
    greedy: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    dim: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// square | hex
    #[arg(long)]
    lattice: String,
    /// Search window radius (at least 4)
    #[arg(long, default_value_t = 6.0)]
    radius: f64,
    /// Worker threads for the candidate sweep (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    /// random | lattice-square | lattice-hex | pentagon | icosahedron
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Half-width of the lattice window
    #[arg(long, default_value_t = 3)]
    window: i64,
    /// Box bounds for random instances
    #[arg(long, default_value_t = 0.0)]
    lo: f64,
    #[arg(long, default_value_t = 4.0)]
    hi: f64,
    /// Output file (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn finish_match(
    outcome: &MatchOutcome,
    report: Option<&PathBuf>,
    svg: Option<&PathBuf>,
) -> anyhow::Result<()> {
    println!("{}", report_json(&outcome.report));
    if let Some(path) = report {
        write_report(&outcome.report, path)?;
    }
    if let Some(path) = svg {
        emit_svg(&outcome.transcript, outcome.opt_witness.as_ref(), path)?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run(args) => {
            let (dim, points) = parse_points(&args.input)?;
            let mut algo = algorithm_by_id(&args.algo, dim).map_err(HarnessError::from)?;
            let outcome = run_match(
                algo.as_mut(),
                dim,
                MatchSource::Points {
                    points: &points,
                    label: args.input.display().to_string(),
                    compute_opt: !args.no_opt,
                },
            )?;
            finish_match(&outcome, args.report.as_ref(), args.svg.as_ref())?;
        }
        Command::Duel(args) => {
            let mut algo = algorithm_by_id(&args.algo, args.dim).map_err(HarnessError::from)?;
            let mut adversary = unit_cover::adversary::adversary_by_id(&args.adversary, args.dim)
                .map_err(HarnessError::from)?;
            let outcome =
                run_match(algo.as_mut(), args.dim, MatchSource::Adversary(adversary.as_mut()))?;
            finish_match(&outcome, args.report.as_ref(), args.svg.as_ref())?;
        }
        Command::Opt(args) => {
            let (dim, points) = parse_points(&args.input)?;
            if args.greedy {
                let count = greedy_cover(&points, args.radius);
                println!(
                    "{}",
                    serde_json::json!({
                        "method": "greedy-upper-bound",
                        "dimension": dim,
                        "n_points": points.len(),
                        "count": count,
                    })
                );
            } else {
                if points.len() > MAX_EXACT_POINTS {
                    anyhow::bail!(
                        "{} points exceed the exact cap of {MAX_EXACT_POINTS}; \
                         rerun with --greedy for an upper bound",
                        points.len()
                    );
                }
                let result = opt_cover_exact(&points, args.radius)?;
                let clusters: Vec<Vec<usize>> = result.clusters.clone();
                println!(
                    "{}",
                    serde_json::json!({
                        "method": "exact",
                        "dimension": dim,
                        "n_points": points.len(),
                        "count": result.count,
                        "clusters": clusters,
                    })
                );
            }
        }
        Command::Bounds(args) => {
            let report = bounds_report(args.dim);
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::VerifyPartition(args) => {
            let kind = LatticeKind::parse(&args.lattice)?;
            if let Some(jobs) = args.jobs {
                configure_threads(jobs)?;
            }
            let max_groups = verify_partition(kind, args.radius)?;
            println!(
                "{}",
                serde_json::json!({
                    "lattice": args.lattice,
                    "search_radius": args.radius,
                    "max_groups_per_unit_disk": max_groups,
                })
            );
        }
        Command::Gen(args) => {
            let kind = InstanceKind::parse(&args.kind, args.n, args.dim, args.window, args.lo, args.hi)?;
            let points = generate_instance(&kind, args.seed)?;
            let dim = points.first().map(|p| p.dim()).unwrap_or(args.dim);
            match args.output {
                Some(path) => write_points(&path, dim, &points)?,
                None => print!("{}", unit_cover::io::format_points(dim, &points)),
            }
        }
    }
    Ok(())
}

fn configure_threads(jobs: usize) -> anyhow::Result<()> {
    unit_cover::configure_thread_pool(jobs)?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the error path too
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<HarnessError>()
                .map(HarnessError::exit_code)
                .unwrap_or(1);
            ExitCode::from(code as u8)
        }
    }
}
