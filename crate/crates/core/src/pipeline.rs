//! The staged end-to-end run: word selection for both polarities, corpus
//! statistics, the interaction graph and its metrics, then segmentation.
//!
//! Every stage writes its outputs before the next one starts. Files are
//! written to a temporary name and renamed into place. If a stage fails,
//! the files already written by the run are renamed with a `.partial`
//! suffix and the error is tagged with the failing stage.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::load_key_values;
use crate::corpus::{corpus_stats, load_corpus, load_lexicon, Corpus, Lexicon, Polarity};
use crate::error::{Error, Result};
use crate::interaction::{
    build_interaction_graph, compute_metrics, split_graph, to_simple, DEFAULT_TOP_K,
};
use crate::segmentation::{
    group_report, label_users, labeled_report, load_label_file, write_group_csv, GroupLabel,
    SegmentationInputs,
};
use crate::wordgraph::{
    build_bipartite, eigenvector_centrality, project_words, select_top_words, write_wordset,
    CentralityScores, WordGraph, WordSet,
};

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub corpus: PathBuf,
    pub neg_lexicon: PathBuf,
    pub pos_lexicon: PathBuf,
    pub out_dir: PathBuf,
    pub tol: f64,
    pub max_iter: usize,
    pub threshold: f64,
    pub cap: usize,
    pub top_k: usize,
    /// Answer count separating the two likes/answers correlation bands.
    pub correlation_split: usize,
    pub label_files: Vec<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            corpus: PathBuf::new(),
            neg_lexicon: PathBuf::new(),
            pos_lexicon: PathBuf::new(),
            out_dir: PathBuf::new(),
            tol: 1e-10,
            max_iter: 10_000,
            threshold: 0.5,
            cap: 80,
            top_k: DEFAULT_TOP_K,
            correlation_split: 50,
            label_files: Vec::new(),
        }
    }
}

impl PipelineConfig {
    /// Applies a `key = value` file on top of `self`. Relative paths are
    /// resolved against the file's directory.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let base = path.parent().unwrap_or(Path::new("."));
        for (key, (line, value)) in load_key_values(path)? {
            let bad = || Error::parse(path, line, format!("bad value `{value}` for `{key}`"));
            match key.as_str() {
                "corpus" => self.corpus = base.join(&value),
                "neg_lexicon" => self.neg_lexicon = base.join(&value),
                "pos_lexicon" => self.pos_lexicon = base.join(&value),
                "out" | "out_dir" => self.out_dir = base.join(&value),
                "tol" => self.tol = value.parse().map_err(|_| bad())?,
                "max_iter" => self.max_iter = value.parse().map_err(|_| bad())?,
                "threshold" => self.threshold = value.parse().map_err(|_| bad())?,
                "cap" => self.cap = value.parse().map_err(|_| bad())?,
                "top_k" => self.top_k = value.parse().map_err(|_| bad())?,
                "correlation_split" => self.correlation_split = value.parse().map_err(|_| bad())?,
                "labels" | "label_files" => {
                    self.label_files = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| base.join(s))
                        .collect()
                }
                other => return Err(Error::parse(path, line, format!("unknown key `{other}`"))),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("corpus", &self.corpus),
            ("neg_lexicon", &self.neg_lexicon),
            ("pos_lexicon", &self.pos_lexicon),
            ("out", &self.out_dir),
        ] {
            if p.as_os_str().is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "`{name}` path is required"
                )));
            }
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "tol must lie in (0, 1), got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter(
                "max_iter must be at least 1".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.threshold) {
            return Err(Error::InvalidParameter(format!(
                "threshold must lie in [0, 1), got {}",
                self.threshold
            )));
        }
        if self.cap == 0 {
            return Err(Error::InvalidParameter("cap must be at least 1".into()));
        }
        if self.top_k == 0 {
            return Err(Error::InvalidParameter("top_k must be at least 1".into()));
        }
        Ok(())
    }
}

/// Pipeline stages in execution order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Config,
    LoadLexicon,
    LoadCorpus,
    Bipartite,
    Project,
    Centrality,
    Select,
    Stats,
    Interaction,
    Metrics,
    Segmentation,
    Reports,
    Cooccur,
    Neighborhood,
    Generate,
    Crawl,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Config => "config",
            Stage::LoadLexicon => "load_lexicon",
            Stage::LoadCorpus => "load_corpus",
            Stage::Bipartite => "bipartite",
            Stage::Project => "project",
            Stage::Centrality => "centrality",
            Stage::Select => "select",
            Stage::Stats => "stats",
            Stage::Interaction => "interaction",
            Stage::Metrics => "metrics",
            Stage::Segmentation => "segmentation",
            Stage::Reports => "reports",
            Stage::Cooccur => "cooccur",
            Stage::Neighborhood => "neighborhood",
            Stage::Generate => "generate",
            Stage::Crawl => "crawl",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A failed run: the stage, the cause, and the outputs left behind with a
/// `.partial` suffix.
#[derive(Debug)]
pub struct PipelineError {
    pub stage: Stage,
    pub source: Error,
    pub partial: Vec<PathBuf>,
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.stage, self.source)
    }
}

impl PipelineError {
    pub fn new(stage: Stage, source: Error) -> Self {
        PipelineError {
            stage,
            source,
            partial: Vec::new(),
        }
    }
}

impl std::error::Error for PipelineError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

/// Writes `bytes` to `path` via a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// An output directory that remembers what it has written.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    written: Vec<PathBuf>,
}

impl OutputDir {
    pub fn create(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root).map_err(|e| Error::io(&root, e))?;
        Ok(OutputDir {
            root,
            written: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.root.join(name);
        write_atomic(&path, bytes)?;
        let mut stale = path.clone().into_os_string();
        stale.push(".partial");
        let _ = fs::remove_file(stale);
        self.written.push(path.clone());
        Ok(path)
    }

    /// Renames every written file to `<name>.partial`.
    pub fn mark_partial(self) -> Vec<PathBuf> {
        self.written
            .into_iter()
            .filter_map(|p| {
                let mut to = p.clone().into_os_string();
                to.push(".partial");
                let to = PathBuf::from(to);
                fs::rename(&p, &to).ok().map(|_| to)
            })
            .collect()
    }
}

/// Word graph, centrality scores and selected words for one lexicon.
#[derive(Clone, Debug)]
pub struct WordAnalysis {
    pub graph: WordGraph,
    pub scores: CentralityScores,
    pub selected: WordSet,
}

pub fn analyze_words(c: &Corpus, lex: &Lexicon, cfg: &PipelineConfig) -> Result<WordAnalysis> {
    let graph = project_words(&build_bipartite(c, lex));
    let scores = eigenvector_centrality(&graph, cfg.tol, cfg.max_iter)?;
    let selected = select_top_words(&scores, lex.polarity(), cfg.threshold, cfg.cap)?;
    Ok(WordAnalysis {
        graph,
        scores,
        selected,
    })
}

pub fn to_bytes(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    f(&mut out)?;
    Ok(out)
}

pub fn json_bytes(value: &impl serde::Serialize) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// Runs every stage and returns the paths written, in write order.
pub fn run_pipeline(cfg: &PipelineConfig) -> std::result::Result<Vec<PathBuf>, PipelineError> {
    run_until(cfg, Stage::Reports)
}

/// Runs the stages up to and including `last`. The word stages
/// (`bipartite` to `select`) always run as a unit.
pub fn run_until(
    cfg: &PipelineConfig,
    last: Stage,
) -> std::result::Result<Vec<PathBuf>, PipelineError> {
    let fail = |stage, source| PipelineError {
        stage,
        source,
        partial: Vec::new(),
    };
    cfg.validate().map_err(|e| fail(Stage::Config, e))?;
    let mut out = OutputDir::create(&cfg.out_dir).map_err(|e| fail(Stage::Config, e))?;
    match run_stages(cfg, last, &mut out) {
        Ok(()) => Ok(out.written().to_vec()),
        Err((stage, source)) => Err(PipelineError {
            stage,
            source,
            partial: out.mark_partial(),
        }),
    }
}

fn run_stages(
    cfg: &PipelineConfig,
    last: Stage,
    out: &mut OutputDir,
) -> std::result::Result<(), (Stage, Error)> {
    let at = |stage: Stage| move |e: Error| (stage, e);

    let neg_lex =
        load_lexicon(&cfg.neg_lexicon, Polarity::Negative).map_err(at(Stage::LoadLexicon))?;
    let pos_lex =
        load_lexicon(&cfg.pos_lexicon, Polarity::Positive).map_err(at(Stage::LoadLexicon))?;
    let corpus = load_corpus(&cfg.corpus).map_err(at(Stage::LoadCorpus))?;
    if corpus.sampled().next().is_none() {
        return Err((Stage::LoadCorpus, Error::EmptyCorpus));
    }
    if last <= Stage::LoadCorpus {
        return Ok(());
    }

    let mut selected = Vec::new();
    for lex in [&neg_lex, &pos_lex] {
        let tag = match lex.polarity() {
            Polarity::Negative => "neg",
            Polarity::Positive => "pos",
        };
        let bipartite = build_bipartite(&corpus, lex);
        let graph = project_words(&bipartite);
        let bytes = to_bytes(|w| graph.write_edges_csv(w)).map_err(at(Stage::Project))?;
        out.write(&format!("wordgraph_{tag}.csv"), &bytes)
            .map_err(at(Stage::Project))?;

        let scores =
            eigenvector_centrality(&graph, cfg.tol, cfg.max_iter).map_err(at(Stage::Centrality))?;
        let bytes = to_bytes(|w| scores.write_csv(w)).map_err(at(Stage::Centrality))?;
        out.write(&format!("centrality_{tag}.csv"), &bytes)
            .map_err(at(Stage::Centrality))?;

        let words = select_top_words(&scores, lex.polarity(), cfg.threshold, cfg.cap)
            .map_err(at(Stage::Select))?;
        let bytes = to_bytes(|w| write_wordset(&words, w)).map_err(at(Stage::Select))?;
        out.write(&format!("words_{tag}.txt"), &bytes)
            .map_err(at(Stage::Select))?;
        selected.push((words, scores.zero_count(), bipartite.nnz()));
    }
    let (neg_words, neg_zero, _) = &selected[0];
    let (pos_words, pos_zero, _) = &selected[1];
    if last <= Stage::Select {
        return Ok(());
    }

    let stats = corpus_stats(&corpus, neg_words, pos_words).map_err(at(Stage::Stats))?;
    let bytes = json_bytes(&stats).map_err(at(Stage::Stats))?;
    out.write("corpus_stats.json", &bytes)
        .map_err(at(Stage::Stats))?;
    if last <= Stage::Stats {
        return Ok(());
    }

    let graph = build_interaction_graph(&corpus, neg_words, cfg.top_k);
    let bytes = to_bytes(|w| graph.write_edges_csv(w)).map_err(at(Stage::Interaction))?;
    out.write("interaction_edges.csv", &bytes)
        .map_err(at(Stage::Interaction))?;
    if last <= Stage::Interaction {
        return Ok(());
    }

    let metrics =
        compute_metrics(&corpus, &graph, cfg.correlation_split).map_err(at(Stage::Metrics))?;
    for (name, bytes) in metrics.files().map_err(at(Stage::Metrics))? {
        out.write(&name, &bytes).map_err(at(Stage::Metrics))?;
    }
    if last <= Stage::Metrics {
        return Ok(());
    }

    let split = split_graph(&graph);
    let simple = to_simple(&graph);
    let inputs = SegmentationInputs {
        neg_words,
        pos_words,
        split: &split,
        simple: &simple,
    };
    let labels = label_users(&corpus, neg_words, pos_words);
    let bytes = to_bytes(|w| write_user_labels(&labels, w)).map_err(at(Stage::Segmentation))?;
    out.write("user_labels.csv", &bytes)
        .map_err(at(Stage::Segmentation))?;
    let groups = group_report(&corpus, &labels, &inputs).map_err(at(Stage::Segmentation))?;
    let bytes = to_bytes(|w| write_group_csv(&groups.rows, w)).map_err(at(Stage::Segmentation))?;
    out.write("groups.csv", &bytes)
        .map_err(at(Stage::Segmentation))?;

    let mut labeled = Vec::new();
    for path in &cfg.label_files {
        let lf = load_label_file(path).map_err(at(Stage::Segmentation))?;
        labeled.push(labeled_report(&corpus, &lf, &inputs).map_err(at(Stage::Segmentation))?);
    }
    if !labeled.is_empty() {
        let bytes = to_bytes(|w| write_group_csv(labeled.iter().map(|r| &r.row), w))
            .map_err(at(Stage::Segmentation))?;
        out.write("labeled_groups.csv", &bytes)
            .map_err(at(Stage::Segmentation))?;
        let bytes = to_bytes(|buf| {
            let mut w = csv::Writer::from_writer(buf);
            w.write_record(["label", "user"])?;
            for r in &labeled {
                for id in &r.unresolved {
                    w.write_record([r.row.group.as_str(), id.as_str()])?;
                }
            }
            w.flush().map_err(|e| Error::io("<labels>", e))
        })
        .map_err(at(Stage::Segmentation))?;
        out.write("labeled_unresolved.csv", &bytes)
            .map_err(at(Stage::Segmentation))?;
    }
    if last <= Stage::Segmentation {
        return Ok(());
    }

    let mut summary = String::new();
    let mut line = |k: &str, v: String| {
        summary.push_str(k);
        summary.push_str(": ");
        summary.push_str(&v);
        summary.push('\n');
    };
    line("profiles", corpus.len().to_string());
    line("fully_sampled", stats.users.to_string());
    line("neg_lexicon_words", neg_lex.len().to_string());
    line("pos_lexicon_words", pos_lex.len().to_string());
    line("neg_zero_centrality", neg_zero.to_string());
    line("pos_zero_centrality", pos_zero.to_string());
    line("neg_selected", neg_words.len().to_string());
    line("pos_selected", pos_words.len().to_string());
    line("interaction_nodes", graph.node_count().to_string());
    line("interaction_edges", graph.edge_count().to_string());
    let opt = |x: Option<f64>| x.map_or_else(|| "null".to_owned(), crate::fixed);
    let s = &metrics.summary;
    line("reciprocity", opt(s.reciprocity.mean));
    line("reciprocity_neg", opt(s.reciprocity.neg));
    line("reciprocity_nonneg", opt(s.reciprocity.nonneg));
    line("clustering_global", crate::fixed(s.clustering.global));
    line(
        "clustering_mean_local",
        crate::fixed(s.clustering.mean_local),
    );
    for (g, row) in GroupLabel::ALL.iter().zip(&groups.rows) {
        line(&format!("group_{g}"), row.count.to_string());
    }
    for r in &labeled {
        line(&format!("labeled_{}", r.row.group), r.row.count.to_string());
        line(
            &format!("labeled_{}_unresolved", r.row.group),
            r.unresolved.len().to_string(),
        );
    }
    out.write("summary.txt", summary.as_bytes())
        .map_err(at(Stage::Reports))?;
    Ok(())
}

/// `user,label` rows in user id order.
pub fn write_user_labels(
    labels: &BTreeMap<crate::corpus::UserId, GroupLabel>,
    writer: impl std::io::Write,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["user", "label"])?;
    for (id, g) in labels {
        w.write_record([id.as_str(), g.as_str()])?;
    }
    w.flush().map_err(|e| Error::io("<labels>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_overrides_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let cfg_path = dir.path().join("run.conf");
        fs::write(
            &cfg_path,
            "corpus = c.jsonl\nthreshold = 0.25\ncap = 10\nlabels = a.txt, b.txt\n",
        )
        .unwrap();
        let mut cfg = PipelineConfig::default();
        cfg.apply_file(&cfg_path).unwrap();
        assert_eq!(cfg.corpus, dir.path().join("c.jsonl"));
        assert_eq!(cfg.threshold, 0.25);
        assert_eq!(cfg.cap, 10);
        assert_eq!(cfg.top_k, 15);
        assert_eq!(cfg.label_files.len(), 2);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn missing_lexicon_is_tagged_and_leaves_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = PipelineConfig {
            corpus: dir.path().join("c.jsonl"),
            neg_lexicon: dir.path().join("missing.txt"),
            pos_lexicon: dir.path().join("missing.txt"),
            out_dir: dir.path().join("out"),
            ..PipelineConfig::default()
        };
        let err = run_pipeline(&cfg).unwrap_err();
        assert_eq!(err.stage, Stage::LoadLexicon);
        assert!(err.to_string().starts_with("[load_lexicon] "));
        assert!(err.partial.is_empty());
    }

    #[test]
    fn failure_renames_written_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = OutputDir::create(dir.path().join("o")).unwrap();
        out.write("a.csv", b"x\n").unwrap();
        let partial = out.mark_partial();
        assert_eq!(partial, [dir.path().join("o/a.csv.partial")]);
        assert!(!dir.path().join("o/a.csv").exists());
        assert_eq!(fs::read(&partial[0]).unwrap(), b"x\n");
    }
}
