use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{content_tokens, TextFeatError};
use crate::corpus::Sentence;

pub const DEFAULT_UNIGRAM_K: usize = 50;
const TOLERANCE: f64 = 1e-9;
const MAX_ITER: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnigramModel {
    pub vocabulary: BTreeMap<String, usize>,
    /// `k` unit-norm, mutually orthogonal axes over the vocabulary.
    pub axes: Vec<Vec<f64>>,
    /// Variance captured by each axis.
    pub eigenvalues: Vec<f64>,
    pub mean: Vec<f64>,
}

impl UnigramModel {
    pub fn k(&self) -> usize {
        self.axes.len()
    }

    /// Sorted, de-duplicated vocabulary columns present in `sentence`.
    fn presence(&self, sentence: &Sentence) -> Vec<usize> {
        let mut cols: Vec<usize> = content_tokens(sentence).filter_map(|t| self.vocabulary.get(&t).copied()).collect();
        cols.sort_unstable();
        cols.dedup();
        cols
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

fn orthogonalize(v: &mut [f64], axes: &[Vec<f64>]) {
    for a in axes {
        let p = dot(v, a);
        v.iter_mut().zip(a).for_each(|(x, y)| *x -= p * y);
    }
}

/// Vocabularies up to this size get a materialized covariance matrix.
const DENSE_LIMIT: usize = 2048;

/// Covariance of the centered binary matrix,
/// `C = (XᵀX − n μμᵀ) / (n − 1)`, dense for small vocabularies and applied
/// straight from the sparse rows otherwise.
enum Covariance<'a> {
    Dense { d: usize, c: Vec<f64> },
    Sparse { rows: &'a [Vec<usize>], mean: &'a [f64] },
}

impl<'a> Covariance<'a> {
    fn new(rows: &'a [Vec<usize>], mean: &'a [f64]) -> Self {
        let d = mean.len();
        if d > DENSE_LIMIT {
            return Covariance::Sparse { rows, mean };
        }
        let n = rows.len() as f64;
        let mut c = vec![0.0; d * d];
        for row in rows {
            for &i in row {
                for &j in row {
                    c[i * d + j] += 1.0;
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                c[i * d + j] = (c[i * d + j] - n * mean[i] * mean[j]) / (n - 1.0);
            }
        }
        Covariance::Dense { d, c }
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        match self {
            Covariance::Dense { d, c } => c.chunks_exact(*d).map(|row| dot(row, v)).collect(),
            Covariance::Sparse { rows, mean } => {
                let n = rows.len() as f64;
                let mut out = vec![0.0; v.len()];
                for row in rows.iter() {
                    let xv: f64 = row.iter().map(|&j| v[j]).sum();
                    for &j in row {
                        out[j] += xv;
                    }
                }
                let mv = dot(mean, v);
                for (o, m) in out.iter_mut().zip(mean.iter()) {
                    *o = (*o - n * m * mv) / (n - 1.0);
                }
                out
            }
        }
    }
}

/// Binary unigram presence, mean-centered, reduced to its top `k` principal axes
/// by power iteration with deflation.
pub fn fit_unigrams(train: &[&Sentence], k: usize) -> Result<UnigramModel, TextFeatError> {
    if train.len() < 2 {
        return Err(TextFeatError::TooFewSentences(train.len()));
    }
    let mut vocabulary = BTreeMap::new();
    for s in train {
        for t in content_tokens(s) {
            vocabulary.entry(t).or_insert(0);
        }
    }
    for (i, col) in vocabulary.values_mut().enumerate() {
        *col = i;
    }
    let d = vocabulary.len();
    let max_k = d.min(train.len() - 1);
    if k == 0 || k > max_k {
        return Err(TextFeatError::InvalidK { k, max: max_k });
    }

    let mut model = UnigramModel {
        vocabulary,
        axes: Vec::with_capacity(k),
        eigenvalues: Vec::with_capacity(k),
        mean: vec![0.0; d],
    };
    let rows: Vec<Vec<usize>> = train.iter().map(|s| model.presence(s)).collect();
    let n = rows.len() as f64;
    for &j in rows.iter().flatten() {
        model.mean[j] += 1.0 / n;
    }
    let total_variance: f64 = model.mean.iter().map(|m| m * (1.0 - m) * n / (n - 1.0)).sum();
    if !(total_variance > TOLERANCE) {
        return Err(TextFeatError::DegenerateMatrix);
    }

    let cov = Covariance::new(&rows, &model.mean);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..k {
        let mut v: Vec<f64> = (0..d).map(|_| rng.random::<f64>() - 0.5).collect();
        orthogonalize(&mut v, &model.axes);
        normalize(&mut v);
        for _ in 0..MAX_ITER {
            let mut next = cov.apply(&v);
            // deflation by projection: the operator is restricted to the complement
            orthogonalize(&mut next, &model.axes);
            if normalize(&mut next) <= TOLERANCE {
                // remaining spectrum is zero; any orthonormal completion will do
                break;
            }
            let delta = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            v = next;
            if delta < TOLERANCE {
                break;
            }
        }
        orthogonalize(&mut v, &model.axes);
        normalize(&mut v);
        let (imax, _) = v
            .iter()
            .enumerate()
            .fold((0, 0.0), |(bi, bv), (i, &x)| if x.abs() > bv { (i, x.abs()) } else { (bi, bv) });
        if v[imax] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        model.eigenvalues.push(dot(&v, &cov.apply(&v)));
        model.axes.push(v);
    }
    Ok(model)
}

/// Projects the centered presence vector onto the model's axes. Unknown tokens are ignored.
pub fn project_unigrams(model: &UnigramModel, sentence: &Sentence) -> Vec<f64> {
    let present = model.presence(sentence);
    model
        .axes
        .iter()
        .map(|a| present.iter().map(|&j| a[j]).sum::<f64>() - dot(a, &model.mean))
        .collect()
}
