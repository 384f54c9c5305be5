use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{EvalError, ModelBundle};
use crate::corpus::{Corpus, Label, Lexicons};
use crate::dataset::{precompute, FeatureConfig};
use crate::learn::ClassifierConfig;
use crate::stats::{classification_metrics, stratified_split, Metrics};
use crate::svg::Svg;

pub const DEFAULT_FRACTIONS: [f64; 4] = [0.7, 0.8, 0.9, 1.0];
const TEST_FRACTION: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationRow {
    pub feature_config: FeatureConfig,
    pub fraction: f64,
    pub train_size: usize,
    pub metrics: Metrics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationReport {
    pub classifier: ClassifierConfig,
    pub seed: u64,
    pub test_size: usize,
    pub rows: Vec<AblationRow>,
}

/// Fixed stratified 80:20 split; each configuration is trained on nested
/// stratified subsamples of the training part and scored on the same test part.
pub fn run_ablation(
    corpus: &Corpus,
    lexicons: Option<&Lexicons>,
    configs: &[FeatureConfig],
    classifier: &ClassifierConfig,
    fractions: &[f64],
    seed: u64,
    unigram_k: usize,
) -> Result<AblationReport, EvalError> {
    let labels = corpus.labels();
    let split = stratified_split(&labels, TEST_FRACTION, seed)?;
    let gold: Vec<Label> = split.test.iter().map(|&i| labels[i]).collect();
    let mut rows = Vec::new();
    for &config in configs {
        let pre = precompute(corpus, lexicons, config)?;
        for &fraction in fractions {
            let train = split.train_subsample(fraction)?;
            let bundle = ModelBundle::fit(&pre, &labels, &train, lexicons, classifier, unigram_k)?;
            let predictions = bundle.predict(&pre, &split.test)?;
            rows.push(AblationRow {
                feature_config: config,
                fraction,
                train_size: train.len(),
                metrics: classification_metrics(&predictions, &gold)?,
            });
        }
    }
    Ok(AblationReport {
        classifier: classifier.clone(),
        seed,
        test_size: split.test.len(),
        rows,
    })
}

impl AblationReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("config,fraction,train_size,weighted_f,kappa\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{:.6},{:.6}",
                r.feature_config, r.fraction, r.train_size, r.metrics.weighted.f1, r.metrics.kappa
            );
        }
        out
    }

    /// Weighted F against training fraction, one polyline per configuration.
    pub fn to_svg(&self) -> Vec<u8> {
        let (left, top, w, h) = (50.0, 20.0, 360.0, 220.0);
        let mut svg = Svg::new(left + w + 130.0, top + h + 40.0);
        let (fmin, fmax) = self.rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), r| {
            (a.min(r.fraction), b.max(r.fraction))
        });
        let span = if fmax > fmin { fmax - fmin } else { 1.0 };
        let px = |f: f64| left + (f - fmin) / span * w;
        let py = |v: f64| top + (1.0 - v) * h;
        svg.line("axis", left, top + h, left + w, top + h, "");
        svg.line("axis", left, top, left, top + h, "");
        for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
            svg.text("tick", left - 4.0, py(tick) + 4.0, "end", &format!("{tick:.2}"));
        }
        let mut configs: Vec<FeatureConfig> = Vec::new();
        for r in &self.rows {
            if !configs.contains(&r.feature_config) {
                configs.push(r.feature_config);
            }
        }
        for (ci, c) in configs.iter().enumerate() {
            let pts: Vec<(f64, f64)> = self
                .rows
                .iter()
                .filter(|r| r.feature_config == *c)
                .map(|r| (px(r.fraction), py(r.metrics.weighted.f1)))
                .collect();
            let d: String = pts
                .iter()
                .enumerate()
                .map(|(i, (x, y))| format!("{}{x:.2},{y:.2}", if i == 0 { "M" } else { " L" }))
                .collect();
            svg.path(&format!("curve c{ci}"), &d, "");
            for (x, y) in &pts {
                svg.circle(&format!("point c{ci}"), *x, *y, 3.0, &c.to_string());
            }
            svg.text("legend", left + w + 10.0, top + 14.0 * (ci as f64 + 1.0), "start", &c.to_string());
        }
        for r in self.rows.iter().filter(|r| Some(&r.feature_config) == configs.first()) {
            svg.text("tick", px(r.fraction), top + h + 16.0, "middle", &format!("{:.0}%", r.fraction * 100.0));
        }
        svg.finish(
            ".axis{stroke:#333}.c0{stroke:#4f81bd;fill:#4f81bd}\
             .c1{stroke:#c0504d;fill:#c0504d}.c2{stroke:#9bbb59;fill:#9bbb59}.c3{stroke:#8064a2;fill:#8064a2}\
             .c4{stroke:#f79646;fill:#f79646}path.curve{fill:none;stroke-width:2}text{font:11px sans-serif}",
        )
    }
}
