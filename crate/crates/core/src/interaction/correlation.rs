use serde::Serialize;

use crate::corpus::Corpus;
use crate::rounded_opt;

/// Pearson correlation of answered questions vs total likes per profile,
/// split at a question count. `None` where a side has fewer than two
/// profiles or zero variance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LikesAnswersCorrelation {
    pub split: usize,
    pub profiles_below: usize,
    pub profiles_above: usize,
    #[serde(serialize_with = "rounded_opt")]
    pub below: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub above: Option<f64>,
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Profiles with fewer than `split` answered questions go below, the rest above.
pub fn likes_answers_correlation(c: &Corpus, split: usize) -> LikesAnswersCorrelation {
    let mut below: Vec<(f64, f64)> = Vec::new();
    let mut above: Vec<(f64, f64)> = Vec::new();
    for p in c.sampled() {
        let point = (p.questions.len() as f64, p.total_likes() as f64);
        if p.questions.len() < split {
            below.push(point);
        } else {
            above.push(point);
        }
    }
    let corr = |pts: &[(f64, f64)]| {
        let (xs, ys): (Vec<f64>, Vec<f64>) = pts.iter().copied().unzip();
        pearson(&xs, &ys)
    };
    LikesAnswersCorrelation {
        split,
        profiles_below: below.len(),
        profiles_above: above.len(),
        below: corr(&below),
        above: corr(&above),
    }
}
