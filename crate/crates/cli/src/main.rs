mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Word graphs, like-based interaction graphs and user segmentation for
/// question-and-answer social network corpora.
#[derive(Debug, Parser)]
#[command(name = "qanet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Inputs and parameters shared by the analysis subcommands. Flags
/// override values read from `--config`.
#[derive(Debug, Args)]
struct RunArgs {
    /// `key = value` run configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// Corpus file (JSON lines, one profile per line)
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    neg_lexicon: Option<PathBuf>,
    #[arg(long)]
    pos_lexicon: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Selection keeps words with centrality strictly above this
    #[arg(long)]
    threshold: Option<f64>,
    /// Maximum number of selected words per polarity
    #[arg(long)]
    cap: Option<usize>,
    /// Most-liked questions per profile used for interaction edges
    #[arg(long)]
    top_k: Option<usize>,
    /// Power-iteration convergence tolerance
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Answer count splitting the likes/answers correlation bands
    #[arg(long)]
    correlation_split: Option<usize>,
    /// Label file (`label: <name>` header, one id per line); repeatable
    #[arg(long = "labels")]
    labels: Vec<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolarityArg {
    Neg,
    Pos,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-user question and word averages
    Stats(RunArgs),
    /// Word graphs, centrality scores and selected words for both lexicons
    Words(RunArgs),
    /// Interaction graph edge list
    Graph(RunArgs),
    /// Reciprocity, degree, overlap, ratio and clustering metrics
    Metrics(RunArgs),
    /// Group labels and per-group report
    Segment(RunArgs),
    /// Mean counts of selected words among profiles using one word
    Cooccur {
        #[arg(long)]
        word: String,
        /// Word set the counted words come from
        #[arg(long, value_enum, default_value = "neg")]
        polarity: PolarityArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Weighted word-graph edges around one word
    Neighborhood {
        #[arg(long)]
        word: String,
        /// Lexicon whose word graph is used
        #[arg(long, value_enum, default_value = "neg")]
        polarity: PolarityArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Generate a synthetic corpus with planted groups
    Synth(commands::SynthArgs),
    /// Simulate a snowball crawl over a ground-truth corpus
    CrawlSim(commands::CrawlArgs),
    /// Run every stage and write all reports
    Pipeline(RunArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Stats(a) => commands::run_stages(&a, qanet::Stage::Stats),
        Command::Words(a) => commands::run_stages(&a, qanet::Stage::Select),
        Command::Graph(a) => commands::run_stages(&a, qanet::Stage::Interaction),
        Command::Metrics(a) => commands::run_stages(&a, qanet::Stage::Metrics),
        Command::Segment(a) => commands::run_stages(&a, qanet::Stage::Segmentation),
        Command::Pipeline(a) => commands::run_stages(&a, qanet::Stage::Reports),
        Command::Cooccur {
            word,
            polarity,
            run,
        } => commands::cooccur(&run, &word, polarity),
        Command::Neighborhood {
            word,
            polarity,
            run,
        } => commands::neighborhood(&run, &word, polarity),
        Command::Synth(a) => commands::synth(&a),
        Command::CrawlSim(a) => commands::crawl_sim(&a),
    };
    match result {
        Ok(written) => {
            for p in written {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            for p in &e.partial {
                eprintln!("partial output: {}", p.display());
            }
            ExitCode::FAILURE
        }
    }
}
