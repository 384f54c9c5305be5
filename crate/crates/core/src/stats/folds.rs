use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::StatsError;
use crate::corpus::Label;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldAssignment {
    pub k: usize,
    /// Fold of each item, in input order.
    pub folds: Vec<usize>,
}

impl FoldAssignment {
    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.folds.len()).filter(|&i| self.folds[i] == fold).collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.folds.len()).filter(|&i| self.folds[i] != fold).collect()
    }

    /// SHA-256 over `k` and the fold vector.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.k as u64).to_le_bytes());
        for &f in &self.folds {
            h.update((f as u64).to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// Per-class index lists, each shuffled by its own stream off `seed`.
fn shuffled_classes(labels: &[Label], seed: u64) -> [Vec<usize>; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes = [Vec::new(), Vec::new()];
    for (i, l) in labels.iter().enumerate() {
        classes[usize::from(!l.is_positive())].push(i);
    }
    for c in &mut classes {
        c.shuffle(&mut rng);
    }
    classes
}

/// Stratified k-fold assignment. Each class is shuffled and dealt round-robin,
/// continuing from the fold where the previous class stopped so fold sizes
/// stay within one item of each other.
///
/// Every class needs at least `k` members, except for leave-one-out (`k = n`).
pub fn stratified_kfold(labels: &[Label], k: usize, seed: u64) -> Result<FoldAssignment, StatsError> {
    let n = labels.len();
    if k < 2 {
        return Err(StatsError::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    let classes = shuffled_classes(labels, seed);
    if n < k {
        return Err(StatsError::InvalidArgument(format!("k = {k} exceeds the {n} items")));
    }
    if k != n {
        for (c, members) in classes.iter().enumerate() {
            if members.len() < k {
                return Err(StatsError::TooFewPerClass {
                    class: if c == 0 { 1 } else { -1 },
                    count: members.len(),
                    k,
                });
            }
        }
    }
    let mut folds = vec![0; n];
    let mut offset = 0;
    for members in &classes {
        for (j, &i) in members.iter().enumerate() {
            folds[i] = (offset + j) % k;
        }
        offset = (offset + members.len()) % k;
    }
    Ok(FoldAssignment { k, folds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    /// Training indices in per-class shuffled order, positives first. Taking a
    /// per-class prefix gives nested subsamples.
    pub train: Vec<usize>,
    pub test: Vec<usize>,
    train_pos: usize,
}

impl Split {
    /// Stratified subsample holding `fraction` of each training class. Subsamples
    /// nest: a smaller fraction is always a subset of a larger one.
    pub fn train_subsample(&self, fraction: f64) -> Result<Vec<usize>, StatsError> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(StatsError::InvalidArgument(format!("fraction must lie in (0, 1], got {fraction}")));
        }
        let (pos, neg) = self.train.split_at(self.train_pos);
        let take = |len: usize| ((len as f64 * fraction).round() as usize).clamp(1.min(len), len);
        let mut out: Vec<usize> = pos[..take(pos.len())].iter().chain(&neg[..take(neg.len())]).copied().collect();
        out.sort_unstable();
        Ok(out)
    }
}

/// Stratified holdout split with `test_fraction` of each class held out.
pub fn stratified_split(labels: &[Label], test_fraction: f64, seed: u64) -> Result<Split, StatsError> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(StatsError::InvalidArgument(format!(
            "test fraction must lie in (0, 1), got {test_fraction}"
        )));
    }
    let classes = shuffled_classes(labels, seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    let mut train_pos = 0;
    for (c, members) in classes.iter().enumerate() {
        let n_test = (members.len() as f64 * test_fraction).round() as usize;
        if n_test == 0 || n_test == members.len() {
            return Err(StatsError::TooFewPerClass {
                class: if c == 0 { 1 } else { -1 },
                count: members.len(),
                k: 2,
            });
        }
        test.extend_from_slice(&members[..n_test]);
        train.extend_from_slice(&members[n_test..]);
        if c == 0 {
            train_pos = train.len();
        }
    }
    test.sort_unstable();
    Ok(Split { train, test, train_pos })
}
