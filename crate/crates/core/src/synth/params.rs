use std::path::Path;
use std::str::FromStr;

use crate::config::load_key_values;
use crate::corpus::{load_lexicon, tokenize, Polarity};
use crate::error::{Error, Result};
use crate::segmentation::GroupLabel;

/// Answered questions per generated profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuestionCount {
    Fixed(u64),
    /// Uniform over `lo..=hi`.
    Uniform(u64, u64),
}

impl QuestionCount {
    pub fn bounds(self) -> (u64, u64) {
        match self {
            QuestionCount::Fixed(n) => (n, n),
            QuestionCount::Uniform(lo, hi) => (lo, hi),
        }
    }
}

impl FromStr for QuestionCount {
    type Err = String;

    /// `12` or `5-20` (also `5..20`, inclusive).
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad question count `{s}`"))
        };
        if let Some((lo, hi)) = s.split_once("..").or_else(|| s.split_once('-')) {
            let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty question range `{s}`"));
            }
            Ok(QuestionCount::Uniform(lo, hi))
        } else {
            Ok(QuestionCount::Fixed(parse(s)?))
        }
    }
}

/// Parameters of the synthetic corpus generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub n_users: usize,
    /// Fractions for HN, HP, PN, OTHR, in that order.
    pub group_mix: [f64; 4],
    pub questions_per_user: QuestionCount,
    /// Mean likes per question.
    pub like_rate: f64,
    pub neg_vocab: Vec<String>,
    pub pos_vocab: Vec<String>,
    pub rng_seed: u64,
}

pub const MIX_TOLERANCE: f64 = 1e-12;

/// Smallest question count that can satisfy each label.
pub(crate) fn min_questions(label: GroupLabel) -> u64 {
    match label {
        GroupLabel::HN => 3,
        GroupLabel::PN => 5,
        GroupLabel::HP => 11,
        GroupLabel::OTHR => 0,
    }
}

impl GenParams {
    pub fn mix_of(&self, label: GroupLabel) -> f64 {
        self.group_mix[GroupLabel::ALL.iter().position(|&g| g == label).unwrap()]
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_users == 0 {
            return Err(Error::InvalidParameter("n_users must be at least 1".into()));
        }
        if self.group_mix.iter().any(|&f| !(0.0..=1.0).contains(&f)) {
            return Err(Error::InvalidParameter(format!(
                "group fractions must lie in [0, 1], got {:?}",
                self.group_mix
            )));
        }
        let sum: f64 = self.group_mix.iter().sum();
        if (sum - 1.0).abs() > MIX_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "group mix sums to {sum}, not 1"
            )));
        }
        if !(self.like_rate.is_finite() && self.like_rate >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "bad like_rate {}",
                self.like_rate
            )));
        }
        for w in self.neg_vocab.iter().chain(&self.pos_vocab) {
            if tokenize(w) != [w.as_str()] {
                return Err(Error::Infeasible(format!(
                    "vocabulary word `{w}` is not a single token"
                )));
            }
        }
        if let Some(w) = self.neg_vocab.iter().find(|w| self.pos_vocab.contains(w)) {
            return Err(Error::Infeasible(format!("`{w}` is in both vocabularies")));
        }
        let (_, hi) = self.questions_per_user.bounds();
        for label in GroupLabel::ALL {
            if self.mix_of(label) == 0.0 {
                continue;
            }
            let need = min_questions(label);
            if hi < need {
                return Err(Error::Infeasible(format!(
                    "{label} users need at least {need} questions but at most {hi} are allowed"
                )));
            }
            let needs_neg = matches!(label, GroupLabel::HN | GroupLabel::PN);
            let needs_pos = matches!(label, GroupLabel::HP | GroupLabel::PN);
            if needs_neg && self.neg_vocab.is_empty() {
                return Err(Error::Infeasible(format!(
                    "{label} users need a negative vocabulary"
                )));
            }
            if needs_pos && self.pos_vocab.is_empty() {
                return Err(Error::Infeasible(format!(
                    "{label} users need a positive vocabulary"
                )));
            }
        }
        Ok(())
    }

    /// Reads a `key = value` file. Keys: `n_users`, `mix` (e.g.
    /// `HN:0.1,HP:0.2,PN:0.2,OTHR:0.5`), `questions` (`12` or `5-20`),
    /// `like_rate`, `neg_vocab`/`pos_vocab` (comma-separated words) or
    /// `neg_vocab_file`/`pos_vocab_file` (lexicon files, relative to the
    /// config), and `seed`.
    pub fn load(path: &Path) -> Result<Self> {
        let kv = load_key_values(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut p = GenParams::default();
        for (key, (line, value)) in &kv {
            let bad = |m: String| Error::parse(path, *line, m);
            match key.as_str() {
                "n_users" => {
                    p.n_users = value
                        .parse()
                        .map_err(|_| bad(format!("bad n_users `{value}`")))?
                }
                "mix" => p.group_mix = parse_mix(value).map_err(bad)?,
                "questions" | "questions_per_user" => {
                    p.questions_per_user = value.parse().map_err(bad)?
                }
                "like_rate" => {
                    p.like_rate = value
                        .parse()
                        .map_err(|_| bad(format!("bad like_rate `{value}`")))?
                }
                "neg_vocab" => p.neg_vocab = split_words(value),
                "pos_vocab" => p.pos_vocab = split_words(value),
                "neg_vocab_file" => {
                    p.neg_vocab = load_lexicon(base.join(value), Polarity::Negative)?
                        .words()
                        .map(str::to_owned)
                        .collect()
                }
                "pos_vocab_file" => {
                    p.pos_vocab = load_lexicon(base.join(value), Polarity::Positive)?
                        .words()
                        .map(str::to_owned)
                        .collect()
                }
                "seed" | "rng_seed" => {
                    p.rng_seed = value
                        .parse()
                        .map_err(|_| bad(format!("bad seed `{value}`")))?
                }
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        Ok(p)
    }
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n_users: 100,
            group_mix: [0.1, 0.2, 0.2, 0.5],
            questions_per_user: QuestionCount::Uniform(5, 20),
            like_rate: 2.0,
            neg_vocab: Vec::new(),
            pos_vocab: Vec::new(),
            rng_seed: 0,
        }
    }
}

pub fn split_words(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(|w| w.trim().to_lowercase())
        .filter(|w| !w.is_empty())
        .collect()
}

/// `HN:0.1,HP:0.2,PN:0.2,OTHR:0.5`; omitted groups get 0.
pub fn parse_mix(value: &str) -> std::result::Result<[f64; 4], String> {
    let mut mix = [0.0; 4];
    for part in value.split(',').filter(|p| !p.trim().is_empty()) {
        let (label, frac) = part
            .split_once(':')
            .or_else(|| part.split_once('='))
            .ok_or_else(|| format!("bad mix entry `{part}`"))?;
        let label: GroupLabel = label.parse()?;
        let frac: f64 = frac
            .trim()
            .parse()
            .map_err(|_| format!("bad fraction `{frac}`"))?;
        mix[GroupLabel::ALL.iter().position(|&g| g == label).unwrap()] = frac;
    }
    Ok(mix)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> GenParams {
        GenParams {
            neg_vocab: vec!["ugly".into()],
            pos_vocab: vec!["nice".into()],
            ..GenParams::default()
        }
    }

    #[test]
    fn question_count_syntax() {
        assert_eq!(
            "12".parse::<QuestionCount>().unwrap(),
            QuestionCount::Fixed(12)
        );
        assert_eq!(
            "5-20".parse::<QuestionCount>().unwrap(),
            QuestionCount::Uniform(5, 20)
        );
        assert_eq!(
            "5..=20".parse::<QuestionCount>().unwrap(),
            QuestionCount::Uniform(5, 20)
        );
        assert!("9-3".parse::<QuestionCount>().is_err());
    }

    #[test]
    fn mix_syntax() {
        assert_eq!(parse_mix("HN:1.0").unwrap(), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(parse_mix("othr:0.5, hp:0.5").unwrap(), [0.0, 0.5, 0.0, 0.5]);
        assert!(parse_mix("XX:1").is_err());
    }

    #[test]
    fn mix_must_sum_to_one() {
        let p = GenParams {
            group_mix: [0.5, 0.5, 0.5, 0.0],
            ..params()
        };
        assert!(p.validate().is_err());
        assert!(params().validate().is_ok());
    }

    #[test]
    fn too_few_questions_for_hn() {
        let p = GenParams {
            group_mix: [1.0, 0.0, 0.0, 0.0],
            questions_per_user: QuestionCount::Fixed(2),
            ..params()
        };
        assert!(matches!(p.validate(), Err(Error::Infeasible(_))));
    }

    #[test]
    fn overlapping_vocabularies_rejected() {
        let p = GenParams {
            pos_vocab: vec!["ugly".into()],
            ..params()
        };
        assert!(matches!(p.validate(), Err(Error::Infeasible(_))));
    }

    #[test]
    fn loads_config_file() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("neg.txt"), "ugly\nfat\n").unwrap();
        let cfg = dir.path().join("gen.conf");
        std::fs::write(
            &cfg,
            "n_users = 50\nmix = HN:0.2,OTHR:0.8\nquestions = 4-9\nlike_rate = 1.5\nneg_vocab_file = neg.txt\npos_vocab = nice, cute\nseed = 42\n",
        )
        .unwrap();
        let p = GenParams::load(&cfg).unwrap();
        assert_eq!(p.n_users, 50);
        assert_eq!(p.group_mix, [0.2, 0.0, 0.0, 0.8]);
        assert_eq!(p.questions_per_user, QuestionCount::Uniform(4, 9));
        assert_eq!(p.neg_vocab, ["fat", "ugly"]);
        assert_eq!(p.pos_vocab, ["nice", "cute"]);
        assert_eq!(p.rng_seed, 42);
    }
}
