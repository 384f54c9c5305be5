use serde::{Deserialize, Serialize};

const MIN_STD: f64 = 1e-12;

/// Per-feature z-scoring with training moments (population standard deviation).
/// Constant features pass through unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Scaler {
    pub fn fit(rows: &[Vec<f64>]) -> Self {
        let d = rows.first().map_or(0, Vec::len);
        let n = rows.len() as f64;
        let mut mean = vec![0.0; d];
        for r in rows {
            mean.iter_mut().zip(r).for_each(|(m, x)| *m += x / n);
        }
        let mut std = vec![0.0; d];
        for r in rows {
            std.iter_mut().zip(r.iter().zip(&mean)).for_each(|(s, (x, m))| *s += (x - m) * (x - m) / n);
        }
        std.iter_mut().for_each(|s| *s = s.sqrt());
        Scaler { mean, std }
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.mean.iter().zip(&self.std))
            .map(|(x, (m, s))| if *s > MIN_STD { (x - m) / s } else { *x })
            .collect()
    }

    pub fn transform(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.transform_row(r)).collect()
    }
}
