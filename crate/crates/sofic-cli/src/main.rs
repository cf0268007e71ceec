//! `sofic`: command-line front end for sofic shifts, sofic relations and
//! sofically presented systems.
//!
//! Exit codes: 0 when a verdict was produced (negative verdicts included),
//! 1 on errors, 2 when a semi-algorithm exhausted its bound.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Bounds, Ctx, Emit, SystemSource};
use report::{Outcome, Report, EXIT_ERROR};
use sofic::symbolic::Side;

#[derive(Parser, Debug)]
#[command(name = "sofic", version, about = "Sofic shifts, sofic relations and sofically presented systems")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Window bound for expansivity.
    #[arg(long, global = true, default_value_t = 4)]
    kmax: usize,
    /// Factor bound for the transitive closure.
    #[arg(long, global = true, default_value_t = 8)]
    mmax: usize,
    /// Truncation depth for distance brackets.
    #[arg(long, global = true, default_value_t = 6)]
    depth: usize,
    /// Seed recorded in reports of randomized runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Include wall time in JSON reports (reports are otherwise byte-stable).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    N,
    Z,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::N => Side::N,
            SideArg::Z => Side::Z,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EmitArg {
    Summary,
    SoficPair,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a sofic shift is an SFT and list its minimal forbidden words.
    CheckSft {
        file: PathBuf,
        /// Length bound for listing when the set is infinite.
        #[arg(long, default_value_t = 8)]
        list_len: usize,
    },
    /// List the minimal forbidden words of a sofic shift.
    MinForbidden {
        file: PathBuf,
        /// Length bound for listing when the set is infinite.
        #[arg(long, default_value_t = 8)]
        list_len: usize,
    },
    /// Compose two sofic relations.
    Compose {
        r: PathBuf,
        s: PathBuf,
        /// Restrict the result to the square of this shift.
        #[arg(long)]
        restrict: Option<PathBuf>,
        /// Write the presentation here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterate R ∪ R∘R ∪ … on X until transitive (bound: --mmax).
    TransitiveClosure {
        r: PathBuf,
        x: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a relation is an equivalence relation on a shift.
    Equivalence { r: PathBuf, x: PathBuf },
    /// Decide or semi-decide expansivity of Y/Z (bound: --kmax).
    Expansive { y: PathBuf, z: PathBuf },
    /// Topological entropy of a sofic shift.
    Entropy { file: PathBuf },
    /// Certified distance brackets between two eventually periodic points.
    MetricBracket {
        /// Numerator and relation files of a sofic pair.
        #[arg(num_args = 0..=2)]
        pair: Vec<PathBuf>,
        /// Use the binary subdivision of the interval.
        #[arg(long)]
        interval: bool,
        /// Use an explicit graph-system file.
        #[arg(long)]
        system: Option<PathBuf>,
        /// First point, `left;core;right` (ℤ) or `core;right` (ℕ).
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Second point.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Upper bound on the topological dimension of Y/Z.
    DimensionBound { y: PathBuf, z: PathBuf },
    /// Kernel of a hyperbolic toral automorphism.
    ToralKernel {
        /// Matrix entries `a,b,c,d`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Digit count of the cover alphabet.
        #[arg(long)]
        digits: Option<usize>,
        /// Restrict to the square of this cover.
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The golden-mean kernel K = closure(K_L) ∘ closure(K_R).
    GoldenPipeline {
        /// Print the minimal forbidden patterns.
        #[arg(long)]
        emit_patterns: bool,
    },
    /// Composition table of L, R, R∘R, L∘R on the golden mean shift.
    MultTable,
    /// Classify the β-shift and β-kernel.
    BetaClassify {
        /// d*_β(1) as `u:v` for u v^∞.
        #[arg(long, conflicts_with = "beta")]
        dstar: Option<String>,
        /// β as `a+b*sqrt(d)` or `phi`.
        #[arg(long)]
        beta: Option<String>,
        /// Digits of the greedy expansion to compute.
        #[arg(long, default_value_t = 32)]
        prefix: usize,
    },
    /// Automatic space of a simplicial complex and its suspension.
    Simplicial {
        /// Facets such as `12,13,23`.
        #[arg(long, conflicts_with = "file")]
        facets: Option<String>,
        /// File with one facet per line.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Build the suspension on this side.
        #[arg(long, value_enum, ignore_case = true)]
        suspend: Option<SideArg>,
        #[arg(long, value_enum, default_value = "summary")]
        emit: EmitArg,
        /// Write PREFIX.sofic and PREFIX.rel instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of a presentation.
    DotExport { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckSft { .. } => "check-sft",
            Command::MinForbidden { .. } => "min-forbidden",
            Command::Compose { .. } => "compose",
            Command::TransitiveClosure { .. } => "transitive-closure",
            Command::Equivalence { .. } => "equivalence",
            Command::Expansive { .. } => "expansive",
            Command::Entropy { .. } => "entropy",
            Command::MetricBracket { .. } => "metric-bracket",
            Command::DimensionBound { .. } => "dimension-bound",
            Command::ToralKernel { .. } => "toral-kernel",
            Command::GoldenPipeline { .. } => "golden-pipeline",
            Command::MultTable => "mult-table",
            Command::BetaClassify { .. } => "beta-classify",
            Command::Simplicial { .. } => "simplicial",
            Command::DotExport { .. } => "dot-export",
        }
    }
}

fn run(cmd: &Command, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    match cmd {
        Command::CheckSft { file, list_len } => commands::check_sft(ctx, file, *list_len),
        Command::MinForbidden { file, list_len } => commands::min_forbidden(ctx, file, *list_len),
        Command::Compose { r, s, restrict, out } => commands::compose(ctx, r, s, restrict.as_deref(), out.as_deref()),
        Command::TransitiveClosure { r, x, out } => commands::transitive_closure(ctx, r, x, out.as_deref()),
        Command::Equivalence { r, x } => commands::equivalence(ctx, r, x),
        Command::Expansive { y, z } => commands::expansive(ctx, y, z),
        Command::Entropy { file } => commands::entropy_cmd(ctx, file),
        Command::MetricBracket {
            pair,
            interval,
            system,
            x,
            y,
        } => {
            let source = match (pair.as_slice(), interval, system) {
                ([], true, None) => SystemSource::Interval,
                ([], false, Some(p)) => SystemSource::Explicit(p.clone()),
                ([a, b], false, None) => SystemSource::Pair(a.clone(), b.clone()),
                _ => anyhow::bail!("give exactly one of --interval, --system FILE, or Y and Z files"),
            };
            commands::metric_bracket(ctx, source, x, y)
        }
        Command::DimensionBound { y, z } => commands::dimension_bound(ctx, y, z),
        Command::ToralKernel {
            matrix,
            digits,
            cover,
            out,
        } => commands::toral_kernel_cmd(ctx, matrix, *digits, cover.as_deref(), out.as_deref()),
        Command::GoldenPipeline { emit_patterns } => commands::golden(*emit_patterns),
        Command::MultTable => commands::mult_table(),
        Command::BetaClassify { dstar, beta, prefix } => {
            commands::beta_classify(ctx, dstar.as_deref(), beta.as_deref(), *prefix)
        }
        Command::Simplicial {
            facets,
            file,
            suspend,
            emit,
            out,
        } => {
            let emit = match emit {
                EmitArg::Summary => Emit::Summary,
                EmitArg::SoficPair => Emit::SoficPair,
            };
            commands::simplicial(ctx, facets.as_deref(), file.as_deref(), suspend.map(Into::into), emit, out.as_deref())
        }
        Command::DotExport { file } => commands::dot_export(ctx, file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx {
        bounds: Bounds {
            kmax: cli.kmax,
            mmax: cli.mmax,
            depth: cli.depth,
        },
        inputs: Vec::new(),
    };
    let start = Instant::now();
    let outcome = match run(&cli.command, &mut ctx) {
        Ok(o) => o,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    if cli.json {
        let report = Report {
            operation: cli.command.name(),
            inputs: &ctx.inputs,
            verdict: &outcome.verdict,
            witnesses: &outcome.witnesses,
            details: &outcome.details,
            exit_code: outcome.exit,
            seed: cli.seed,
            timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.exit as u8)
}
