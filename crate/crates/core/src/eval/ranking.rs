use super::EvalError;
use crate::corpus::{Corpus, Lexicons};
use crate::dataset::{assemble_averaged, is_gaze_feature, FeatureConfig};
use crate::learn::TrainConfig;
use crate::stats::{rank_chi_squared, rank_info_gain, FeatureRanking, RankMethod};
use crate::svg::Svg;

/// Ranks the averaged features of the whole corpus. Ranking is descriptive,
/// so the lexical models are fitted on every sentence.
pub fn rank_features(
    corpus: &Corpus,
    lexicons: Option<&Lexicons>,
    config: FeatureConfig,
    unigram_k: usize,
    train: &TrainConfig,
    method: RankMethod,
    bins: usize,
) -> Result<FeatureRanking, EvalError> {
    let m = assemble_averaged(corpus, lexicons, config, unigram_k, train)?;
    let rows: Vec<Vec<f64>> = m.rows.iter().map(|r| r.values.clone()).collect();
    let labels: Vec<_> = m.rows.iter().map(|r| r.label).collect();
    Ok(match method {
        RankMethod::ChiSquared => rank_chi_squared(&rows, &labels, &m.schema.names, bins)?,
        RankMethod::InfoGain => rank_info_gain(&rows, &labels, &m.schema.names, bins)?,
    })
}

/// Horizontal bars for the top `n` features; gaze features in a second colour.
pub fn render_ranking_svg(ranking: &FeatureRanking, n: usize) -> Vec<u8> {
    let top = ranking.top(n);
    let max = top.first().map_or(1.0, |f| f.merit.max(f64::MIN_POSITIVE));
    let (left, bar_h, width) = (90.0, 18.0, 420.0);
    let mut svg = Svg::new(left + width + 80.0, 30.0 + bar_h * top.len() as f64 + 10.0);
    let title = match ranking.method {
        RankMethod::ChiSquared => "chi-squared merit",
        RankMethod::InfoGain => "information gain (bits)",
    };
    svg.text("title", left, 18.0, "start", title);
    for (i, f) in top.iter().enumerate() {
        let y = 28.0 + bar_h * i as f64;
        let class = if is_gaze_feature(&f.name) { "bar gaze" } else { "bar text" };
        svg.text("label", left - 6.0, y + bar_h * 0.7, "end", &f.name);
        svg.rect(class, left, y + 2.0, width * f.merit / max, bar_h - 4.0);
        svg.text("value", left + width * f.merit / max + 4.0, y + bar_h * 0.7, "start", &format!("{:.3}", f.merit));
    }
    svg.finish(
        ".bar.gaze{fill:#c0504d}.bar.text{fill:#4f81bd}text{font:11px sans-serif}",
    )
}
