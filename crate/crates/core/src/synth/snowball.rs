use std::collections::{BTreeMap, BTreeSet};

use super::rng::SplitMix64;
use crate::corpus::{Corpus, Profile, UserId};
use crate::error::{Error, Result};

/// The observable part of a ground-truth corpus after a breadth-first crawl.
#[derive(Clone, Debug)]
pub struct SampledCorpus {
    /// Crawled profiles (fully sampled) plus frontier stubs.
    pub corpus: Corpus,
    pub crawl_order: Vec<UserId>,
    /// Ids seen in a crawled liker list but never crawled.
    pub frontier: BTreeSet<UserId>,
}

impl SampledCorpus {
    pub fn crawled(&self) -> impl Iterator<Item = &UserId> {
        self.crawl_order.iter()
    }
}

/// Breadth-first crawl from `seeds` along "liked one of my answers" links.
///
/// Crawling a user reveals their complete profile with every liker id; the
/// likers form the next level. Each level is visited in id order. Stops after
/// `budget` crawls or when no uncrawled id remains.
pub fn snowball_sample(
    ground_truth: &Corpus,
    seeds: &[UserId],
    budget: usize,
) -> Result<SampledCorpus> {
    if seeds.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one seed is required".into(),
        ));
    }
    if budget == 0 {
        return Err(Error::InvalidParameter(
            "crawl budget must be at least 1".into(),
        ));
    }
    for s in seeds {
        let p = ground_truth
            .get(s)
            .ok_or_else(|| Error::UnknownSeed(s.to_string()))?;
        if p.total_likes() == 0 {
            return Err(Error::UnlikedSeed(s.to_string()));
        }
    }

    let mut crawled: BTreeMap<UserId, Profile> = BTreeMap::new();
    let mut crawl_order = Vec::new();
    let mut seen: BTreeSet<UserId> = seeds.iter().cloned().collect();
    let mut level: Vec<UserId> = seen.iter().cloned().collect();

    'crawl: while !level.is_empty() {
        let mut next = BTreeSet::new();
        for id in &level {
            if crawl_order.len() == budget {
                break 'crawl;
            }
            let mut profile = match ground_truth.get(id) {
                Some(p) => p.clone(),
                None => Profile::new(id.clone(), Vec::new()),
            };
            profile.fully_sampled = true;
            for liker in profile.questions.iter().flat_map(|q| &q.likers) {
                if seen.insert(liker.clone()) {
                    next.insert(liker.clone());
                }
            }
            crawl_order.push(id.clone());
            crawled.insert(id.clone(), profile);
        }
        level = next.into_iter().collect();
    }

    let frontier: BTreeSet<UserId> = seen
        .into_iter()
        .filter(|id| !crawled.contains_key(id))
        .collect();
    let mut corpus: Corpus = crawled.into_values().collect();
    for id in &frontier {
        corpus.insert(Profile::stub(id.clone()))?;
    }
    Ok(SampledCorpus {
        corpus,
        crawl_order,
        frontier,
    })
}

/// `k` distinct random users with at least one like, in id order.
pub fn pick_seeds(ground_truth: &Corpus, k: usize, rng: &mut SplitMix64) -> Vec<UserId> {
    let mut candidates: Vec<UserId> = ground_truth
        .profiles()
        .filter(|p| p.total_likes() > 0)
        .map(|p| p.owner.clone())
        .collect();
    rng.shuffle(&mut candidates);
    candidates.truncate(k);
    candidates.sort();
    candidates
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Question;

    fn id(s: &str) -> UserId {
        UserId::new(s)
    }

    fn profile(owner: &str, likers: &[&str]) -> Profile {
        Profile::new(
            id(owner),
            vec![Question::new("q", likers.iter().map(|s| id(s)).collect())],
        )
    }

    #[test]
    fn triangle_fully_crawled() {
        let gt: Corpus = [
            profile("a", &["b", "c"]),
            profile("b", &["a", "c"]),
            profile("c", &["a", "b"]),
        ]
        .into_iter()
        .collect();
        let s = snowball_sample(&gt, &[id("a")], 3).unwrap();
        assert_eq!(s.crawl_order, [id("a"), id("b"), id("c")]);
        assert!(s.frontier.is_empty());
        assert!(s.corpus.profiles().all(|p| p.fully_sampled));
    }

    #[test]
    fn chain_with_budget_two() {
        let gt: Corpus = [
            profile("a", &["b"]),
            profile("b", &["c"]),
            profile("c", &[]),
        ]
        .into_iter()
        .collect();
        let s = snowball_sample(&gt, &[id("a")], 2).unwrap();
        assert_eq!(s.crawl_order, [id("a"), id("b")]);
        assert_eq!(s.frontier, BTreeSet::from([id("c")]));
        assert!(!s.corpus.get(&id("c")).unwrap().fully_sampled);
        assert_eq!(s.corpus.len(), 3);
    }

    #[test]
    fn levels_visited_in_id_order() {
        let gt: Corpus = [
            profile("a", &["d", "b"]),
            profile("b", &["e"]),
            profile("d", &["c"]),
            profile("c", &[]),
            profile("e", &[]),
        ]
        .into_iter()
        .collect();
        let s = snowball_sample(&gt, &[id("a")], 10).unwrap();
        assert_eq!(s.crawl_order, [id("a"), id("b"), id("d"), id("c"), id("e")]);
    }

    #[test]
    fn seed_errors() {
        let gt: Corpus = [profile("a", &["b"]), profile("b", &[])]
            .into_iter()
            .collect();
        assert!(matches!(
            snowball_sample(&gt, &[id("zz")], 2),
            Err(Error::UnknownSeed(_))
        ));
        assert!(matches!(
            snowball_sample(&gt, &[id("b")], 2),
            Err(Error::UnlikedSeed(_))
        ));
        assert!(snowball_sample(&gt, &[], 2).is_err());
        assert!(snowball_sample(&gt, &[id("a")], 0).is_err());
    }

    #[test]
    fn seeds_have_likes() {
        let gt: Corpus = [
            profile("a", &["b"]),
            profile("b", &[]),
            profile("c", &["a"]),
        ]
        .into_iter()
        .collect();
        let mut rng = SplitMix64::new(5);
        let seeds = pick_seeds(&gt, 5, &mut rng);
        assert_eq!(seeds, [id("a"), id("c")]);
    }
}
