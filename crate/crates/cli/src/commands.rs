use std::path::{Path, PathBuf};

use clap::Args;
use qanet::corpus::{load_corpus, load_lexicon, write_corpus, Corpus, Lexicon, Polarity};
use qanet::pipeline::{analyze_words, to_bytes, write_user_labels, OutputDir};
use qanet::segmentation::{write_label_file, GroupLabel, LabelFile};
use qanet::synth::{pick_seeds, split_words, GenParams, QuestionCount};
use qanet::wordgraph::{
    cooccurrence_distribution, word_neighborhood, write_frequency_csv, write_neighborhood_csv,
};
use qanet::{run_until, Error, PipelineConfig, PipelineError, SplitMix64, Stage, UserId};

use crate::{PolarityArg, RunArgs};

type CmdResult = Result<Vec<PathBuf>, PipelineError>;

fn tagged<T>(stage: Stage, r: qanet::Result<T>) -> Result<T, PipelineError> {
    r.map_err(|e| PipelineError::new(stage, e))
}

fn config(a: &RunArgs) -> Result<PipelineConfig, PipelineError> {
    let mut cfg = PipelineConfig::default();
    if let Some(path) = &a.config {
        tagged(Stage::Config, cfg.apply_file(path))?;
    }
    let set = |target: &mut PathBuf, v: &Option<PathBuf>| {
        if let Some(v) = v {
            *target = v.clone();
        }
    };
    set(&mut cfg.corpus, &a.corpus);
    set(&mut cfg.neg_lexicon, &a.neg_lexicon);
    set(&mut cfg.pos_lexicon, &a.pos_lexicon);
    set(&mut cfg.out_dir, &a.out);
    cfg.threshold = a.threshold.unwrap_or(cfg.threshold);
    cfg.cap = a.cap.unwrap_or(cfg.cap);
    cfg.top_k = a.top_k.unwrap_or(cfg.top_k);
    cfg.tol = a.tol.unwrap_or(cfg.tol);
    cfg.max_iter = a.max_iter.unwrap_or(cfg.max_iter);
    cfg.correlation_split = a.correlation_split.unwrap_or(cfg.correlation_split);
    if !a.labels.is_empty() {
        cfg.label_files = a.labels.clone();
    }
    tagged(Stage::Config, cfg.validate())?;
    Ok(cfg)
}

pub fn run_stages(a: &RunArgs, last: Stage) -> CmdResult {
    run_until(&config(a)?, last)
}

fn load_for(
    cfg: &PipelineConfig,
    polarity: PolarityArg,
) -> Result<(Lexicon, Corpus), PipelineError> {
    let (path, polarity) = match polarity {
        PolarityArg::Neg => (&cfg.neg_lexicon, Polarity::Negative),
        PolarityArg::Pos => (&cfg.pos_lexicon, Polarity::Positive),
    };
    let lex = tagged(Stage::LoadLexicon, load_lexicon(path, polarity))?;
    let corpus = tagged(Stage::LoadCorpus, load_corpus(&cfg.corpus))?;
    Ok((lex, corpus))
}

/// Output file name fragment for a user-supplied word.
fn file_safe(word: &str) -> String {
    word.chars()
        .map(|c| if c.is_alphanumeric() { c } else { '_' })
        .collect()
}

fn finish(out: OutputDir, stage: Stage, r: qanet::Result<()>) -> CmdResult {
    match r {
        Ok(()) => Ok(out.written().to_vec()),
        Err(source) => Err(PipelineError {
            stage,
            source,
            partial: out.mark_partial(),
        }),
    }
}

pub fn cooccur(a: &RunArgs, word: &str, polarity: PolarityArg) -> CmdResult {
    let cfg = config(a)?;
    let (lex, corpus) = load_for(&cfg, polarity)?;
    let words = tagged(Stage::Select, analyze_words(&corpus, &lex, &cfg))?;
    let freq = tagged(
        Stage::Cooccur,
        cooccurrence_distribution(&corpus, word, &words.selected),
    )?;
    let bytes = tagged(Stage::Cooccur, to_bytes(|w| write_frequency_csv(&freq, w)))?;
    let mut out = tagged(Stage::Cooccur, OutputDir::create(&cfg.out_dir))?;
    let r = out
        .write(&format!("cooccur_{}.csv", file_safe(&freq.core)), &bytes)
        .map(drop);
    finish(out, Stage::Cooccur, r)
}

pub fn neighborhood(a: &RunArgs, word: &str, polarity: PolarityArg) -> CmdResult {
    let cfg = config(a)?;
    let (lex, corpus) = load_for(&cfg, polarity)?;
    let words = tagged(Stage::Centrality, analyze_words(&corpus, &lex, &cfg))?;
    let core = word.to_lowercase();
    let n = tagged(
        Stage::Neighborhood,
        word_neighborhood(&words.graph, &core, &words.scores),
    )?;
    let bytes = tagged(
        Stage::Neighborhood,
        to_bytes(|w| write_neighborhood_csv(&n, w)),
    )?;
    let mut out = tagged(Stage::Neighborhood, OutputDir::create(&cfg.out_dir))?;
    let r = out
        .write(&format!("neighborhood_{}.csv", file_safe(&core)), &bytes)
        .map(drop);
    finish(out, Stage::Neighborhood, r)
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// `key = value` generator configuration
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n_users: Option<usize>,
    /// Group fractions, e.g. `HN:0.1,HP:0.2,PN:0.2,OTHR:0.5`
    #[arg(long)]
    mix: Option<String>,
    /// Questions per user: `12` or an inclusive range `5-20`
    #[arg(long)]
    questions: Option<QuestionCount>,
    /// Mean likes per question
    #[arg(long)]
    like_rate: Option<f64>,
    /// Comma-separated negative vocabulary
    #[arg(long)]
    neg_vocab: Option<String>,
    /// Comma-separated positive vocabulary
    #[arg(long)]
    pos_vocab: Option<String>,
    /// Negative vocabulary as a lexicon file
    #[arg(long, conflicts_with = "neg_vocab")]
    neg_vocab_file: Option<PathBuf>,
    /// Positive vocabulary as a lexicon file
    #[arg(long, conflicts_with = "pos_vocab")]
    pos_vocab_file: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    /// Output directory
    #[arg(long)]
    out: PathBuf,
}

fn vocab_file(path: &Path, polarity: Polarity) -> qanet::Result<Vec<String>> {
    Ok(load_lexicon(path, polarity)?
        .words()
        .map(str::to_owned)
        .collect())
}

pub fn synth(a: &SynthArgs) -> CmdResult {
    let stage = Stage::Generate;
    let mut p = match &a.config {
        Some(path) => tagged(Stage::Config, GenParams::load(path))?,
        None => GenParams::default(),
    };
    p.rng_seed = a.seed;
    p.n_users = a.n_users.unwrap_or(p.n_users);
    if let Some(mix) = &a.mix {
        p.group_mix = qanet::synth::parse_mix(mix)
            .map_err(|m| PipelineError::new(Stage::Config, Error::InvalidParameter(m)))?;
    }
    p.questions_per_user = a.questions.unwrap_or(p.questions_per_user);
    p.like_rate = a.like_rate.unwrap_or(p.like_rate);
    if let Some(v) = &a.neg_vocab {
        p.neg_vocab = split_words(v);
    }
    if let Some(v) = &a.pos_vocab {
        p.pos_vocab = split_words(v);
    }
    if let Some(f) = &a.neg_vocab_file {
        p.neg_vocab = tagged(Stage::LoadLexicon, vocab_file(f, Polarity::Negative))?;
    }
    if let Some(f) = &a.pos_vocab_file {
        p.pos_vocab = tagged(Stage::LoadLexicon, vocab_file(f, Polarity::Positive))?;
    }

    let (corpus, planted) = tagged(stage, qanet::generate_corpus(&p))?;
    let mut out = tagged(stage, OutputDir::create(&a.out))?;
    let r = (|| {
        out.write("corpus.jsonl", &to_bytes(|w| write_corpus(&corpus, w))?)?;
        out.write(
            "planted_labels.csv",
            &to_bytes(|w| write_user_labels(&planted, w))?,
        )?;
        for g in GroupLabel::ALL {
            let lf = LabelFile {
                name: g.to_string(),
                ids: planted
                    .iter()
                    .filter(|(_, &l)| l == g)
                    .map(|(id, _)| id.clone())
                    .collect(),
            };
            out.write(
                &format!("labels_{g}.txt"),
                &to_bytes(|w| write_label_file(&lf, w))?,
            )?;
        }
        Ok(())
    })();
    finish(out, stage, r)
}

#[derive(Debug, Args)]
pub struct CrawlArgs {
    /// Ground-truth corpus
    #[arg(long)]
    corpus: PathBuf,
    /// Seed of the random seed-user choice
    #[arg(long)]
    seed: u64,
    /// Number of random seed users
    #[arg(long, default_value_t = 2, conflicts_with = "seed_ids")]
    seeds: usize,
    /// Explicit comma-separated seed users instead of random ones
    #[arg(long)]
    seed_ids: Option<String>,
    /// Maximum number of profiles to crawl
    #[arg(long)]
    budget: usize,
    /// Output directory
    #[arg(long)]
    out: PathBuf,
}

pub fn crawl_sim(a: &CrawlArgs) -> CmdResult {
    let stage = Stage::Crawl;
    let gt = tagged(Stage::LoadCorpus, load_corpus(&a.corpus))?;
    let seeds: Vec<UserId> = match &a.seed_ids {
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(UserId::new)
            .collect(),
        None => pick_seeds(&gt, a.seeds, &mut SplitMix64::new(a.seed)),
    };
    let sample = tagged(stage, qanet::snowball_sample(&gt, &seeds, a.budget))?;
    let mut out = tagged(stage, OutputDir::create(&a.out))?;
    let lines = |ids: &mut dyn Iterator<Item = &UserId>| {
        ids.map(|id| format!("{id}\n"))
            .collect::<String>()
            .into_bytes()
    };
    let r = (|| {
        out.write(
            "sample.jsonl",
            &to_bytes(|w| write_corpus(&sample.corpus, w))?,
        )?;
        out.write("crawl_order.txt", &lines(&mut sample.crawl_order.iter()))?;
        out.write("frontier.txt", &lines(&mut sample.frontier.iter()))?;
        Ok(())
    })();
    finish(out, stage, r)
}
