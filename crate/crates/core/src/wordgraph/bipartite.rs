use crate::corpus::{tokenize, Corpus, Lexicon, UserId};

/// Binary word×user incidence matrix `B`, stored row-wise (one sorted list of
/// user columns per word).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    words: Vec<String>,
    users: Vec<UserId>,
    rows: Vec<Vec<u32>>,
}

impl BipartiteGraph {
    /// Builds `B` from explicit row lists. Column indices are sorted and
    /// deduplicated; panics if one is out of range.
    pub fn from_rows(words: Vec<String>, users: Vec<UserId>, rows: Vec<Vec<u32>>) -> Self {
        assert_eq!(words.len(), rows.len(), "one row per word");
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_unstable();
                r.dedup();
                assert!(
                    r.last().is_none_or(|&u| (u as usize) < users.len()),
                    "user column out of range"
                );
                r
            })
            .collect();
        BipartiteGraph { words, users, rows }
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn users(&self) -> &[UserId] {
        &self.users
    }

    /// Sorted user columns where word `w` has a 1.
    pub fn row(&self, w: usize) -> &[u32] {
        &self.rows[w]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn get(&self, w: usize, u: usize) -> bool {
        self.rows[w].binary_search(&(u as u32)).is_ok()
    }

    /// Column lists: for each user, the sorted words present on the profile.
    pub fn columns(&self) -> Vec<Vec<u32>> {
        let mut cols = vec![Vec::new(); self.users.len()];
        for (w, row) in self.rows.iter().enumerate() {
            for &u in row {
                cols[u as usize].push(w as u32);
            }
        }
        cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// `B[w][u] = 1` iff some question on `u`'s profile contains lexicon word `w`.
/// Rows follow the lexicon's word order; columns the corpus's fully sampled
/// profiles in owner order.
pub fn build_bipartite(c: &Corpus, lex: &Lexicon) -> BipartiteGraph {
    let words: Vec<String> = lex.words().map(str::to_owned).collect();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); words.len()];
    let mut users = Vec::new();
    for (col, profile) in c.sampled().enumerate() {
        users.push(profile.owner.clone());
        let mut present: Vec<usize> = profile
            .questions
            .iter()
            .flat_map(|q| tokenize(&q.text))
            .filter_map(|t| words.binary_search(&t).ok())
            .collect();
        present.sort_unstable();
        present.dedup();
        for w in present {
            rows[w].push(col as u32);
        }
    }
    BipartiteGraph { words, users, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Polarity, Profile, Question};

    fn lex(words: &[&str]) -> Lexicon {
        Lexicon::new(Polarity::Negative, words).unwrap()
    }

    #[test]
    fn hand_constructed_incidence() {
        let c: Corpus = [
            Profile::new(UserId::new("u1"), vec![Question::new("ugly fat", vec![])]),
            Profile::new(UserId::new("u2"), vec![Question::new("ugly", vec![])]),
        ]
        .into_iter()
        .collect();
        let b = build_bipartite(&c, &lex(&["ugly", "fat", "hate"]));
        // lexicon order is alphabetical: fat, hate, ugly
        assert_eq!(b.words(), ["fat", "hate", "ugly"]);
        let dense: Vec<Vec<bool>> = (0..3)
            .map(|w| (0..2).map(|u| b.get(w, u)).collect())
            .collect();
        assert_eq!(
            dense,
            vec![vec![true, false], vec![false, false], vec![true, true]]
        );
    }

    #[test]
    fn empty_corpus_has_zero_incidence() {
        let b = build_bipartite(&Corpus::new(), &lex(&["ugly"]));
        assert_eq!(b.nnz(), 0);
        assert!(b.users().is_empty());
    }

    #[test]
    fn repeated_word_is_a_single_entry() {
        let c: Corpus = [Profile::new(
            UserId::new("u1"),
            vec![
                Question::new("ugly ugly ugly", vec![]),
                Question::new("ugly ugly", vec![]),
            ],
        )]
        .into_iter()
        .collect();
        let b = build_bipartite(&c, &lex(&["ugly"]));
        assert_eq!(b.row(0), [0]);
    }
}
