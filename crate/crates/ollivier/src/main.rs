use clap::{Args, Parser, Subcommand, ValueEnum};
use ollivier::counterexamples::Family;
use ollivier::report::OutputFormat;
use ollivier::run::{run, CommandKind, MethodArg, RunConfig};
use std::path::PathBuf;

/// Exact Ollivier curvature of graph edges, cross-checked four ways.
#[derive(Parser)]
#[command(name = "ollivier", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file: one edge per line, two whitespace-separated labels,
    /// '#' comments and blank lines ignored
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Positional form of --input
    #[arg(value_name = "PATH")]
    path: Option<PathBuf>,

    /// Restrict to a single edge given as two labels
    #[arg(long, value_name = "U,V")]
    edge: Option<String>,

    /// Worker threads
    #[arg(long, value_name = "N", default_value_t = default_jobs())]
    jobs: usize,

    /// Maximum free core vertices for the brute-force route
    #[arg(long = "brute-budget", value_name = "N", default_value_t = 12)]
    brute_budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodOpt {
    Auto,
    FullLp,
    ReducedLp,
    ClosedForm,
    BruteForce,
    BmBipartite,
    BmGirth5,
    Forman,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyOpt {
    Bipartite,
    Girth5,
}

#[derive(Subcommand)]
enum Command {
    /// Per-edge Wasserstein distance and curvature
    Curvature {
        #[command(flatten)]
        input: InputArgs,
        /// Computation route
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodOpt,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Run every applicable method per edge and check exact agreement
    Compare {
        #[command(flatten)]
        input: InputArgs,
        /// Compare over all connected graphs on up to N vertices (max 8)
        /// instead of an input file
        #[arg(long, value_name = "N", conflicts_with = "input")]
        corpus: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Serialize the core-neighbourhood partition of each edge as JSON
    Partition {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Build a counterexample family instance and verify the refutation
    Counterexample {
        /// Which refuted formula to target
        #[arg(long, value_enum)]
        family: FamilyOpt,
        /// Family size parameter (|U| or |P|)
        #[arg(long, value_name = "N")]
        param: usize,
        /// Also write the instance's edge list to this path
        #[arg(long = "emit-graph", value_name = "PATH")]
        emit_graph: Option<PathBuf>,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn parse_edge_filter(spec: &str) -> Option<(String, String)> {
    let (a, b) = spec.split_once(',')?;
    if a.is_empty() || b.is_empty() {
        return None;
    }
    Some((a.to_string(), b.to_string()))
}

fn apply_input(cfg: &mut RunConfig, args: &InputArgs) -> Result<(), String> {
    cfg.input = args.input.clone().or_else(|| args.path.clone());
    cfg.jobs = args.jobs.max(1);
    cfg.brute_budget = args.brute_budget.max(1);
    if let Some(spec) = &args.edge {
        match parse_edge_filter(spec) {
            Some(pair) => cfg.edge_filter = Some(pair),
            None => return Err(format!("bad --edge '{spec}', expected 'U,V'")),
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let mut cfg;
    let build_err = match cli.command {
        Command::Curvature {
            input,
            method,
            format,
        } => {
            cfg = RunConfig::new(CommandKind::Curvature);
            cfg.method = match method {
                MethodOpt::Auto => MethodArg::Auto,
                MethodOpt::FullLp => MethodArg::FullLp,
                MethodOpt::ReducedLp => MethodArg::ReducedLp,
                MethodOpt::ClosedForm => MethodArg::ClosedForm,
                MethodOpt::BruteForce => MethodArg::BruteForce,
                MethodOpt::BmBipartite => MethodArg::BmBipartite,
                MethodOpt::BmGirth5 => MethodArg::BmGirth5,
                MethodOpt::Forman => MethodArg::Forman,
            };
            cfg.format = match format {
                FormatArg::Json => OutputFormat::Json,
                FormatArg::Csv => OutputFormat::Csv,
            };
            apply_input(&mut cfg, &input)
        }
        Command::Compare {
            input,
            corpus,
            format,
        } => {
            cfg = RunConfig::new(CommandKind::Compare);
            cfg.corpus_max = corpus;
            cfg.format = match format {
                FormatArg::Json => OutputFormat::Json,
                FormatArg::Csv => OutputFormat::Csv,
            };
            apply_input(&mut cfg, &input)
        }
        Command::Partition { input } => {
            cfg = RunConfig::new(CommandKind::Partition);
            apply_input(&mut cfg, &input)
        }
        Command::Counterexample {
            family,
            param,
            emit_graph,
        } => {
            cfg = RunConfig::new(CommandKind::Counterexample);
            cfg.family = Some(match family {
                FamilyOpt::Bipartite => Family::Bipartite,
                FamilyOpt::Girth5 => Family::Girth5,
            });
            cfg.parameter = Some(param);
            cfg.emit_graph = emit_graph;
            Ok(())
        }
    };
    if let Err(msg) = build_err {
        eprintln!("ollivier: {msg}");
        std::process::exit(ollivier::run::EXIT_IO);
    }

    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(&cfg, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
