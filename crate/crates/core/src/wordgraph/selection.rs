use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::Path;

use super::CentralityScores;
use crate::corpus::{Polarity, Vocabulary};
use crate::error::{Error, Result};

/// Selected words with their centrality, highest first.
#[derive(Clone, Debug, PartialEq)]
pub struct WordSet {
    pub polarity: Polarity,
    pub threshold: f64,
    pub cap: usize,
    entries: Vec<(String, f64)>,
    lookup: HashSet<String>,
}

impl WordSet {
    /// A word set taken verbatim (score 1 each), for vocabularies that were
    /// not produced by centrality selection.
    pub fn from_words<I, S>(polarity: Polarity, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut entries: Vec<(String, f64)> = Vec::new();
        let mut lookup = HashSet::new();
        for w in words {
            let w = w.into();
            if lookup.insert(w.clone()) {
                entries.push((w, 1.0));
            }
        }
        WordSet {
            polarity,
            threshold: 0.0,
            cap: entries.len(),
            entries,
            lookup,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.lookup.contains(word)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(w, _)| w.as_str())
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }
}

impl Vocabulary for WordSet {
    fn contains_word(&self, word: &str) -> bool {
        self.contains(word)
    }
}

/// Keeps nonzero scores strictly above `threshold`, then at most `cap` of
/// them, ordered by descending score with ties broken lexicographically.
pub fn select_top_words(
    scores: &CentralityScores,
    polarity: Polarity,
    threshold: f64,
    cap: usize,
) -> Result<WordSet> {
    let mut candidates: Vec<(String, f64)> = scores
        .iter()
        .filter(|&(_, s)| s > 0.0 && s > threshold)
        .map(|(w, s)| (w.to_owned(), s))
        .collect();
    candidates.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    candidates.truncate(cap);
    if candidates.is_empty() {
        return Err(Error::EmptySelection { threshold });
    }
    let lookup = candidates.iter().map(|(w, _)| w.clone()).collect();
    Ok(WordSet {
        polarity,
        threshold,
        cap,
        entries: candidates,
        lookup,
    })
}

/// Text format: `#`-header lines carrying polarity, threshold and cap, then
/// one `word<TAB>score` line per word in selection order.
pub fn write_wordset(ws: &WordSet, mut writer: impl Write) -> Result<()> {
    let io = |e| Error::io("<wordset>", e);
    writeln!(writer, "# polarity: {}", ws.polarity).map_err(io)?;
    writeln!(writer, "# threshold: {}", ws.threshold).map_err(io)?;
    writeln!(writer, "# cap: {}", ws.cap).map_err(io)?;
    for (w, s) in &ws.entries {
        writeln!(writer, "{w}\t{}", crate::fixed(*s)).map_err(io)?;
    }
    Ok(())
}

pub fn load_wordset(path: impl AsRef<Path>) -> Result<WordSet> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_wordset(std::io::BufReader::new(file), path)
}

pub fn read_wordset(reader: impl BufRead, origin: &Path) -> Result<WordSet> {
    let mut polarity = None;
    let mut threshold = 0.0;
    let mut cap = None;
    let mut entries = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io(origin, e))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            let Some((key, value)) = header.split_once(':') else {
                continue;
            };
            let value = value.trim();
            let bad = |m: String| Error::parse(origin, lineno, m);
            match key.trim() {
                "polarity" => polarity = Some(value.parse::<Polarity>().map_err(bad)?),
                "threshold" => {
                    threshold = value
                        .parse()
                        .map_err(|_| bad(format!("bad threshold `{value}`")))?
                }
                "cap" => {
                    cap = Some(
                        value
                            .parse()
                            .map_err(|_| bad(format!("bad cap `{value}`")))?,
                    )
                }
                _ => {}
            }
            continue;
        }
        let (word, score) = match line.split_once('\t') {
            Some((w, s)) => {
                let s: f64 = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(origin, lineno, format!("bad score `{s}`")))?;
                (w.trim(), s)
            }
            None => (line, 1.0),
        };
        entries.push((word.to_lowercase(), score));
    }
    let polarity =
        polarity.ok_or_else(|| Error::parse(origin, 1, "missing `# polarity:` header"))?;
    let lookup: HashSet<String> = entries.iter().map(|(w, _)| w.clone()).collect();
    Ok(WordSet {
        polarity,
        threshold,
        cap: cap.unwrap_or(entries.len()),
        entries,
        lookup,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn scores(pairs: &[(&str, f64)]) -> CentralityScores {
        CentralityScores::from_pairs(pairs.iter().map(|&(w, s)| (w, s)))
    }

    #[test]
    fn threshold_is_strict() {
        let s = scores(&[("a", 1.0), ("b", 0.6), ("c", 0.5), ("d", 0.0)]);
        let ws = select_top_words(&s, Polarity::Negative, 0.5, 80).unwrap();
        assert_eq!(ws.words().collect::<Vec<_>>(), ["a", "b"]);
    }

    #[test]
    fn cap_limits_output() {
        let pairs: Vec<(String, f64)> = (0..200)
            .map(|i| (format!("w{i:03}"), 0.6 + i as f64 / 1000.0))
            .collect();
        let s = CentralityScores::from_pairs(pairs);
        let ws = select_top_words(&s, Polarity::Negative, 0.5, 80).unwrap();
        assert_eq!(ws.len(), 80);
        assert_eq!(ws.words().next(), Some("w199"));
    }

    #[test]
    fn ties_are_lexicographic() {
        let s = scores(&[("b", 0.9), ("a", 0.9), ("c", 1.0)]);
        let ws = select_top_words(&s, Polarity::Positive, 0.5, 80).unwrap();
        assert_eq!(ws.words().collect::<Vec<_>>(), ["c", "a", "b"]);
    }

    #[test]
    fn zero_scores_never_selected() {
        let s = scores(&[("a", 0.0), ("b", 0.0)]);
        assert!(matches!(
            select_top_words(&s, Polarity::Negative, -1.0, 10),
            Err(Error::EmptySelection { .. })
        ));
    }

    #[test]
    fn empty_selection_is_an_error() {
        let s = scores(&[("a", 0.4)]);
        assert!(select_top_words(&s, Polarity::Negative, 0.5, 80).is_err());
    }

    #[test]
    fn file_round_trip() {
        let s = scores(&[("ugly", 1.0), ("fat", 0.75)]);
        let ws = select_top_words(&s, Polarity::Negative, 0.5, 80).unwrap();
        let mut buf = Vec::new();
        write_wordset(&ws, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# polarity: negative\n# threshold: 0.5\n# cap: 80\nugly\t"));
        let back = read_wordset(buf.as_slice(), Path::new("ws.txt")).unwrap();
        assert_eq!(back, ws);
    }

    proptest! {
        #[test]
        fn raising_cap_only_extends(
            raw in proptest::collection::vec(0.0f64..1.0, 1..60),
            cap in 1usize..40,
            extra in 0usize..40,
        ) {
            let s = CentralityScores::from_pairs(
                raw.iter().enumerate().map(|(i, &v)| (format!("w{i}"), v)),
            );
            let small = select_top_words(&s, Polarity::Negative, 0.3, cap);
            let large = select_top_words(&s, Polarity::Negative, 0.3, cap + extra);
            if let (Ok(small), Ok(large)) = (small, large) {
                prop_assert!(large.entries().starts_with(small.entries()));
                prop_assert!(small.entries().iter().all(|&(_, v)| v > 0.3));
            }
        }
    }
}
