use serde::{Deserialize, Serialize};

use super::StatsError;
use crate::corpus::Label;

pub const DEFAULT_BINS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    ChiSquared,
    InfoGain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedFeature {
    pub name: String,
    /// Column in the input matrix.
    pub index: usize,
    pub merit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRanking {
    pub method: RankMethod,
    pub bins: usize,
    /// Non-increasing merit.
    pub features: Vec<RankedFeature>,
}

impl FeatureRanking {
    pub fn top(&self, n: usize) -> &[RankedFeature] {
        &self.features[..n.min(self.features.len())]
    }
}

/// Equal-width binning over the observed range. A constant column lands in bin 0.
pub fn discretize(values: &[f64], bins: usize) -> Vec<usize> {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let width = hi - lo;
    values
        .iter()
        .map(|&v| {
            if !(width > 0.0) {
                0
            } else {
                (((v - lo) / width * bins as f64) as usize).min(bins - 1)
            }
        })
        .collect()
}

/// bins × 2 counts; column 0 is the sarcastic class.
fn contingency(binned: &[usize], labels: &[Label], bins: usize) -> Vec<[f64; 2]> {
    let mut table = vec![[0.0; 2]; bins];
    for (&b, l) in binned.iter().zip(labels) {
        table[b][usize::from(!l.is_positive())] += 1.0;
    }
    table
}

fn h(probs: impl Iterator<Item = f64>) -> f64 {
    probs.filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum()
}

pub fn entropy_bits(labels: &[Label]) -> f64 {
    let n = labels.len() as f64;
    let pos = labels.iter().filter(|l| l.is_positive()).count() as f64;
    h([pos / n, (n - pos) / n].into_iter())
}

fn check(labels: &[Label], n: usize, bins: usize) -> Result<(), StatsError> {
    if labels.len() != n {
        return Err(StatsError::LengthMismatch(n, labels.len()));
    }
    if bins < 2 {
        return Err(StatsError::InvalidArgument(format!("bins must be at least 2, got {bins}")));
    }
    let pos = labels.iter().filter(|l| l.is_positive()).count();
    if pos == 0 || pos == labels.len() {
        return Err(StatsError::DegenerateLabels);
    }
    Ok(())
}

/// Pearson chi-squared statistic of the binned feature against the label.
pub fn chi_squared_merit(values: &[f64], labels: &[Label], bins: usize) -> Result<f64, StatsError> {
    check(labels, values.len(), bins)?;
    let table = contingency(&discretize(values, bins), labels, bins);
    let n = labels.len() as f64;
    let col = [
        table.iter().map(|r| r[0]).sum::<f64>(),
        table.iter().map(|r| r[1]).sum::<f64>(),
    ];
    let mut chi2 = 0.0;
    for row in &table {
        let rs = row[0] + row[1];
        if rs == 0.0 {
            continue;
        }
        for j in 0..2 {
            let e = rs * col[j] / n;
            chi2 += (row[j] - e).powi(2) / e;
        }
    }
    Ok(chi2)
}

/// `H(Y) − H(Y | X)` in bits over the binned feature.
pub fn info_gain_merit(values: &[f64], labels: &[Label], bins: usize) -> Result<f64, StatsError> {
    check(labels, values.len(), bins)?;
    let table = contingency(&discretize(values, bins), labels, bins);
    let n = labels.len() as f64;
    let conditional: f64 = table
        .iter()
        .filter(|r| r[0] + r[1] > 0.0)
        .map(|r| {
            let rs = r[0] + r[1];
            rs / n * h(r.iter().map(|c| c / rs))
        })
        .sum();
    Ok(entropy_bits(labels) - conditional)
}

/// `Σ p(x,y) log2(p(x,y) / p(x)p(y))`; equal to [`info_gain_merit`] up to rounding.
pub fn mutual_information_bits(values: &[f64], labels: &[Label], bins: usize) -> Result<f64, StatsError> {
    check(labels, values.len(), bins)?;
    let table = contingency(&discretize(values, bins), labels, bins);
    let n = labels.len() as f64;
    let py = [
        table.iter().map(|r| r[0]).sum::<f64>() / n,
        table.iter().map(|r| r[1]).sum::<f64>() / n,
    ];
    let mut mi = 0.0;
    for r in &table {
        let px = (r[0] + r[1]) / n;
        for j in 0..2 {
            let pxy = r[j] / n;
            if pxy > 0.0 {
                mi += pxy * (pxy / (px * py[j])).log2();
            }
        }
    }
    Ok(mi)
}

fn rank(
    rows: &[Vec<f64>],
    labels: &[Label],
    names: &[String],
    bins: usize,
    method: RankMethod,
) -> Result<FeatureRanking, StatsError> {
    check(labels, rows.len(), bins)?;
    let d = names.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != d) {
        return Err(StatsError::LengthMismatch(bad.len(), d));
    }
    let mut features = Vec::with_capacity(d);
    let mut column = vec![0.0; rows.len()];
    for (index, name) in names.iter().enumerate() {
        for (c, r) in column.iter_mut().zip(rows) {
            *c = r[index];
        }
        let merit = match method {
            RankMethod::ChiSquared => chi_squared_merit(&column, labels, bins)?,
            RankMethod::InfoGain => info_gain_merit(&column, labels, bins)?,
        };
        features.push(RankedFeature {
            name: name.clone(),
            index,
            merit,
        });
    }
    features.sort_by(|a, b| b.merit.total_cmp(&a.merit).then(a.index.cmp(&b.index)));
    Ok(FeatureRanking { method, bins, features })
}

pub fn rank_chi_squared(
    rows: &[Vec<f64>],
    labels: &[Label],
    names: &[String],
    bins: usize,
) -> Result<FeatureRanking, StatsError> {
    rank(rows, labels, names, bins, RankMethod::ChiSquared)
}

pub fn rank_info_gain(
    rows: &[Vec<f64>],
    labels: &[Label],
    names: &[String],
    bins: usize,
) -> Result<FeatureRanking, StatsError> {
    rank(rows, labels, names, bins, RankMethod::InfoGain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn labels(n: usize) -> Vec<Label> {
        (0..n).map(|i| if i % 3 == 0 { Label::Sarcastic } else { Label::NonSarcastic }).collect()
    }

    #[test]
    fn perfect_association() {
        let y = labels(90);
        let x: Vec<f64> = y.iter().map(|l| l.sign() as f64).collect();
        assert!((chi_squared_merit(&x, &y, 2).unwrap() - 90.0).abs() < 1e-9);
        assert!((info_gain_merit(&x, &y, 2).unwrap() - entropy_bits(&y)).abs() < 1e-12);
    }

    #[test]
    fn independent_feature_has_little_information() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let y: Vec<Label> = (0..1000).map(|_| if rng.random::<bool>() { Label::Sarcastic } else { Label::NonSarcastic }).collect();
        let x: Vec<f64> = (0..1000).map(|_| rng.random::<f64>()).collect();
        assert!(info_gain_merit(&x, &y, DEFAULT_BINS).unwrap() <= 0.05);
    }

    #[test]
    fn two_routes_agree() {
        let y = labels(60);
        let x: Vec<f64> = (0..60).map(|i| ((i * 7) % 11) as f64 + if i % 3 == 0 { 3.0 } else { 0.0 }).collect();
        let a = info_gain_merit(&x, &y, 5).unwrap();
        let b = mutual_information_bits(&x, &y, 5).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn ranking_is_sorted_with_index_ties() {
        let y = labels(30);
        let rows: Vec<Vec<f64>> = y.iter().map(|l| vec![0.0, l.sign() as f64, 1.0]).collect();
        let names: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
        let r = rank_chi_squared(&rows, &y, &names, DEFAULT_BINS).unwrap();
        let order: Vec<&str> = r.features.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(order, ["B", "A", "C"]);
    }

    #[test]
    fn degenerate_labels() {
        let y = vec![Label::Sarcastic; 4];
        assert_eq!(
            chi_squared_merit(&[1.0, 2.0, 3.0, 4.0], &y, 2),
            Err(StatsError::DegenerateLabels)
        );
    }

    #[test]
    fn binning_edges() {
        assert_eq!(discretize(&[0.0, 0.5, 1.0], 2), vec![0, 1, 1]);
        assert_eq!(discretize(&[2.0, 2.0], 10), vec![0, 0]);
    }
}
