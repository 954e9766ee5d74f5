use std::io::Write;

use super::{CentralityScores, Projection, WordSet};
use crate::corpus::{tokenize, Corpus};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct NeighborEdge {
    pub neighbor: String,
    pub weight: u64,
    pub centrality: f64,
}

/// Edges incident to one core word, sized by centrality for plotting.
#[derive(Clone, Debug, PartialEq)]
pub struct Neighborhood {
    pub core: String,
    pub core_centrality: f64,
    /// Heaviest edge first; equal weights in word order.
    pub edges: Vec<NeighborEdge>,
}

pub fn word_neighborhood(
    w: &Projection,
    core: &str,
    scores: &CentralityScores,
) -> Result<Neighborhood> {
    let i = w
        .index_of(core)
        .ok_or_else(|| Error::UnknownWord(core.to_owned()))?;
    let mut edges: Vec<NeighborEdge> = w
        .neighbors(i)
        .iter()
        .map(|&(j, weight)| {
            let neighbor = w.label(j as usize);
            NeighborEdge {
                neighbor: neighbor.to_owned(),
                weight,
                centrality: scores.get(neighbor).unwrap_or(0.0),
            }
        })
        .collect();
    edges.sort_by(|a, b| {
        b.weight
            .cmp(&a.weight)
            .then_with(|| a.neighbor.cmp(&b.neighbor))
    });
    Ok(Neighborhood {
        core: core.to_owned(),
        core_centrality: scores.get(core).unwrap_or(0.0),
        edges,
    })
}

/// `core,neighbor,weight,neighbor_centrality`; the first row is the core
/// itself with weight 0 so its own size is available to the plot.
pub fn write_neighborhood_csv(n: &Neighborhood, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["core", "neighbor", "weight", "neighbor_centrality"])?;
    w.write_record([&n.core, &n.core, "0", &crate::fixed(n.core_centrality)])?;
    for e in &n.edges {
        w.write_record([
            &n.core,
            &e.neighbor,
            &e.weight.to_string(),
            &crate::fixed(e.centrality),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<neighborhood>", e))?;
    Ok(())
}

/// Mean occurrence count of each selected word over the profiles that use a
/// core word. Entry order is the word set's order.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyVector {
    pub core: String,
    pub profiles: usize,
    pub entries: Vec<(String, f64)>,
}

pub fn cooccurrence_distribution(c: &Corpus, core: &str, ws: &WordSet) -> Result<FrequencyVector> {
    if ws.is_empty() {
        return Err(Error::InvalidParameter("word set is empty".into()));
    }
    let core = core.to_lowercase();
    let words: Vec<&str> = ws.words().collect();
    let mut totals = vec![0u64; words.len()];
    let mut profiles = 0usize;
    for profile in c.sampled() {
        let tokens: Vec<String> = profile
            .questions
            .iter()
            .flat_map(|q| tokenize(&q.text))
            .collect();
        if !tokens.contains(&core) {
            continue;
        }
        profiles += 1;
        for t in &tokens {
            if let Some(k) = words.iter().position(|w| w == t) {
                totals[k] += 1;
            }
        }
    }
    if profiles == 0 {
        return Err(Error::NoMatchingProfile(core));
    }
    let entries = words
        .iter()
        .zip(&totals)
        .map(|(w, &t)| ((*w).to_owned(), t as f64 / profiles as f64))
        .collect();
    Ok(FrequencyVector {
        core,
        profiles,
        entries,
    })
}

/// `rank,word,mean_count`.
pub fn write_frequency_csv(f: &FrequencyVector, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["rank", "word", "mean_count"])?;
    for (rank, (word, mean)) in f.entries.iter().enumerate() {
        w.write_record([&(rank + 1).to_string(), word, &crate::fixed(*mean)])?;
    }
    w.flush().map_err(|e| Error::io("<cooccurrence>", e))?;
    Ok(())
}
