//! Seeded synthetic corpora with planted groups, and a snowball-crawl
//! simulator over them.

mod generate;
mod params;
mod rng;
mod snowball;

pub use generate::{generate_corpus, group_quotas, user_ids};
pub use params::{parse_mix, split_words, GenParams, QuestionCount, MIX_TOLERANCE};
pub use rng::SplitMix64;
pub use snowball::{pick_seeds, snowball_sample, SampledCorpus};
