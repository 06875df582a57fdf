use crate::error::{Error, Result};

/// Scores paired with binary labels (`true` = anomalous / positive).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScoredSet {
    scores: Vec<f64>,
    labels: Vec<bool>,
}

impl ScoredSet {
    pub fn new(scores: Vec<f64>, labels: Vec<bool>) -> Result<Self> {
        if scores.len() != labels.len() {
            return Err(Error::param(
                "labels",
                format!("{} scores but {} labels", scores.len(), labels.len()),
            ));
        }
        if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
            return Err(Error::param("scores", format!("non-finite score at index {i}")));
        }
        Ok(Self { scores, labels })
    }

    pub fn push(&mut self, score: f64, label: bool) {
        self.scores.push(score);
        self.labels.push(label);
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn positives(&self) -> usize {
        self.labels.iter().filter(|&&l| l).count()
    }

    /// `(score, label)` sorted by score, descending.
    fn sorted_desc(&self) -> Vec<(f64, bool)> {
        let mut v: Vec<_> = self.scores.iter().copied().zip(self.labels.iter().copied()).collect();
        v.sort_by(|a, b| b.0.total_cmp(&a.0));
        v
    }
}

/// Groups of equal score in a sorted slice, as `(positives, negatives)`.
fn tie_groups(sorted: &[(f64, bool)]) -> impl Iterator<Item = (u64, u64)> + '_ {
    let mut i = 0;
    std::iter::from_fn(move || {
        if i >= sorted.len() {
            return None;
        }
        let s = sorted[i].0;
        let (mut p, mut n) = (0u64, 0u64);
        while i < sorted.len() && sorted[i].0 == s {
            if sorted[i].1 {
                p += 1;
            } else {
                n += 1;
            }
            i += 1;
        }
        Some((p, n))
    })
}

/// Mann–Whitney estimate of ROC AUC; ties between a positive and a negative
/// count one half.
pub fn auroc(set: &ScoredSet) -> Result<f64> {
    let pos = set.positives() as u64;
    let neg = set.len() as u64 - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::Degenerate(format!(
            "AUROC needs both classes ({pos} positives, {neg} negatives)"
        )));
    }
    let sorted = set.sorted_desc();
    // Walking from the top, every positive beats the negatives not yet seen.
    let mut neg_seen = 0u64;
    let mut twice_wins = 0u128;
    for (p, n) in tie_groups(&sorted) {
        let below = neg - neg_seen - n;
        twice_wins += u128::from(p) * u128::from(2 * below + n);
        neg_seen += n;
    }
    Ok(twice_wins as f64 / (2.0 * pos as f64 * neg as f64))
}

/// Average precision: `Σ (R_n - R_{n-1}) P_n` over distinct score thresholds.
pub fn average_precision(set: &ScoredSet) -> Result<f64> {
    let pos = set.positives() as u64;
    if pos == 0 {
        return Err(Error::Degenerate("average precision needs at least one positive".into()));
    }
    let sorted = set.sorted_desc();
    let (mut tp, mut fp) = (0u64, 0u64);
    let mut ap = 0.0;
    for (p, n) in tie_groups(&sorted) {
        tp += p;
        fp += n;
        if p > 0 {
            ap += (p as f64 / pos as f64) * (tp as f64 / (tp + fp) as f64);
        }
    }
    Ok(ap)
}
