//! Saliency graphs: fixated words as vertices, one directed edge per ordered
//! word pair crossed by at least one saccade. Complex gaze features are the
//! largest and second-largest weighted out-degrees under six weight schemes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Sentence, Trial};
use crate::gaze::{check_alignment, derive_saccades, GazeError};
use crate::svg::Svg;

#[derive(Debug, Error, PartialEq)]
pub enum SaliencyError {
    #[error(transparent)]
    Gaze(#[from] GazeError),
    #[error("saliency graph has no vertices")]
    EmptyGraph,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct EdgeStats {
    pub forward_count: u32,
    pub forward_distance: u32,
    pub regressive_count: u32,
    pub regressive_distance: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SaliencyGraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeMap<(usize, usize), EdgeStats>,
    /// Total fixation duration per fixated word (ms).
    pub word_duration: BTreeMap<usize, f64>,
    /// Saccades folded into `edges`, before collapsing repeated pairs.
    pub saccade_count: usize,
}

pub fn build_saliency_graph(trial: &Trial, sentence: &Sentence) -> Result<SaliencyGraph, SaliencyError> {
    check_alignment(trial, sentence)?;
    let mut g = SaliencyGraph::default();
    for f in &trial.fixations {
        g.vertices.insert(f.word_index);
        *g.word_duration.entry(f.word_index).or_insert(0.0) += f.duration;
    }
    for s in derive_saccades(trial) {
        let e = g.edges.entry((s.from_word, s.to_word)).or_default();
        let d = s.word_distance() as u32;
        if s.is_regression() {
            e.regressive_count += 1;
            e.regressive_distance += d;
        } else {
            e.forward_count += 1;
            e.forward_distance += d;
        }
        g.saccade_count += 1;
    }
    Ok(g)
}

/// Directed edges per vertex.
pub fn edge_density(g: &SaliencyGraph) -> Result<f64, SaliencyError> {
    if g.vertices.is_empty() {
        return Err(SaliencyError::EmptyGraph);
    }
    Ok(g.edges.len() as f64 / g.vertices.len() as f64)
}

/// Per-edge weight used to score vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScheme {
    /// Fixation duration of the source word.
    SourceDuration,
    /// Fixation duration of the target word.
    TargetDuration,
    ForwardCount,
    ForwardDistance,
    RegressiveCount,
    RegressiveDistance,
}

impl WeightScheme {
    pub const ALL: [WeightScheme; 6] = [
        WeightScheme::SourceDuration,
        WeightScheme::TargetDuration,
        WeightScheme::ForwardCount,
        WeightScheme::ForwardDistance,
        WeightScheme::RegressiveCount,
        WeightScheme::RegressiveDistance,
    ];

    fn weight(self, g: &SaliencyGraph, from: usize, to: usize, e: &EdgeStats) -> f64 {
        match self {
            WeightScheme::SourceDuration => g.word_duration[&from],
            WeightScheme::TargetDuration => g.word_duration[&to],
            WeightScheme::ForwardCount => e.forward_count as f64,
            WeightScheme::ForwardDistance => e.forward_distance as f64,
            WeightScheme::RegressiveCount => e.regressive_count as f64,
            WeightScheme::RegressiveDistance => e.regressive_distance as f64,
        }
    }
}

/// Largest and second-largest weighted out-degree over all vertices.
/// Vertices without out-edges score zero; a single-vertex graph has a
/// second-largest degree of zero.
pub fn weighted_degree_extremes(g: &SaliencyGraph, scheme: WeightScheme) -> (f64, f64) {
    let mut scores: BTreeMap<usize, f64> = g.vertices.iter().map(|&v| (v, 0.0)).collect();
    for (&(from, to), e) in &g.edges {
        *scores.get_mut(&from).expect("edge endpoint is a vertex") += scheme.weight(g, from, to, e);
    }
    let mut sorted: Vec<f64> = scores.into_values().collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    (
        sorted.first().copied().unwrap_or(0.0),
        sorted.get(1).copied().unwrap_or(0.0),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexGazeFeatures {
    pub ed: f64,
    pub f1h: f64,
    pub f1s: f64,
    pub f2h: f64,
    pub f2s: f64,
    pub psh: f64,
    pub pss: f64,
    pub psdh: f64,
    pub psds: f64,
    pub rsh: f64,
    pub rss: f64,
    pub rsdh: f64,
    pub rsds: f64,
}

impl ComplexGazeFeatures {
    pub const NAMES: [&'static str; 13] = [
        "ED", "F1H", "F1S", "F2H", "F2S", "PSH", "PSS", "PSDH", "PSDS", "RSH", "RSS", "RSDH", "RSDS",
    ];

    pub fn to_array(&self) -> [f64; 13] {
        [
            self.ed, self.f1h, self.f1s, self.f2h, self.f2s, self.psh, self.pss, self.psdh, self.psds,
            self.rsh, self.rss, self.rsdh, self.rsds,
        ]
    }
}

pub fn complex_gaze_features(g: &SaliencyGraph) -> Result<ComplexGazeFeatures, SaliencyError> {
    let ed = edge_density(g)?;
    let [f1, f2, ps, psd, rs, rsd] = WeightScheme::ALL.map(|s| weighted_degree_extremes(g, s));
    Ok(ComplexGazeFeatures {
        ed,
        f1h: f1.0,
        f1s: f1.1,
        f2h: f2.0,
        f2s: f2.1,
        psh: ps.0,
        pss: ps.1,
        psdh: psd.0,
        psds: psd.1,
        rsh: rs.0,
        rss: rs.1,
        rsdh: rsd.0,
        rsds: rsd.1,
    })
}

/// Graph drawing: fixated words on a baseline with circle area tracking
/// total fixation duration; forward edges arc above the line, regressions
/// below, each labelled with its saccade count.
pub fn render_saliency_svg(g: &SaliencyGraph, sentence: &Sentence) -> Vec<u8> {
    const LEFT: f64 = 40.0;
    const COL: f64 = 80.0;
    const MID: f64 = 170.0;
    const MAX_R: f64 = 20.0;
    let n = sentence.tokens.len().max(1);
    let mut svg = Svg::new(LEFT * 2.0 + COL * n as f64, MID * 2.0);
    let x = |w: usize| LEFT + COL * (w as f64 - 0.5);
    let max_dur = g.word_duration.values().cloned().fold(1.0_f64, f64::max);

    svg.raw(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>"#,
    );
    for (&(from, to), e) in &g.edges {
        let (x1, x2) = (x(from), x(to));
        let span = (x2 - x1).abs();
        let regressive = to < from;
        let lift = (20.0 + span * 0.35) * if regressive { 1.0 } else { -1.0 };
        let d = format!(
            "M {x1:.2} {MID:.2} Q {:.2} {:.2} {x2:.2} {MID:.2}",
            (x1 + x2) / 2.0,
            MID + 2.0 * lift
        );
        let class = if regressive { "edge regression" } else { "edge" };
        svg.path(class, &d, r#" marker-end="url(#arrow)""#);
        let count = e.forward_count + e.regressive_count;
        svg.text("edge-label", (x1 + x2) / 2.0, MID + lift, "middle", &count.to_string());
    }
    for (i, tok) in sentence.tokens.iter().enumerate() {
        let w = i + 1;
        if let Some(&d) = g.word_duration.get(&w) {
            let r = MAX_R * (d / max_dur).sqrt();
            svg.circle("vertex", x(w), MID, r, &format!("{tok}: {d:.0} ms"));
        }
        svg.text("word", x(w), MID + MAX_R + 18.0, "middle", tok);
    }
    svg.finish(
        ".edge{fill:none;stroke:#1f77b4}.regression{stroke:#d62728}.vertex{fill:#ff7f0e;fill-opacity:0.6}\
         text{font-family:sans-serif;font-size:12px}",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Fixation, Label};

    fn t_star() -> (Trial, Sentence) {
        let words = [1, 2, 4, 2, 5];
        let durs = [200.0, 250.0, 300.0, 350.0, 220.0];
        let xs = [50.0, 150.0, 350.0, 150.0, 450.0];
        let fx = (0..5)
            .map(|i| Fixation {
                word_index: words[i],
                duration: durs[i],
                x: xs[i],
            })
            .collect();
        (
            Trial::new(1, "P1", fx).unwrap(),
            Sentence::new(1, "w1 w2 w3 w4 w5", Label::Sarcastic).unwrap(),
        )
    }

    fn graph_from(edges: &[(usize, usize)], n: usize) -> SaliencyGraph {
        let mut g = SaliencyGraph::default();
        for v in 1..=n {
            g.vertices.insert(v);
            g.word_duration.insert(v, 100.0);
        }
        for &(a, b) in edges {
            let e = g.edges.entry((a, b)).or_default();
            if b > a {
                e.forward_count += 1;
                e.forward_distance += (b - a) as u32;
            } else {
                e.regressive_count += 1;
                e.regressive_distance += (a - b) as u32;
            }
        }
        g
    }

    #[test]
    fn reference_graph() {
        let (t, s) = t_star();
        let g = build_saliency_graph(&t, &s).unwrap();
        assert_eq!(g.vertices.iter().copied().collect::<Vec<_>>(), vec![1, 2, 4, 5]);
        assert_eq!(
            g.edges.keys().copied().collect::<Vec<_>>(),
            vec![(1, 2), (2, 4), (2, 5), (4, 2)]
        );
        assert_eq!(
            g.word_duration.iter().map(|(&k, &v)| (k, v)).collect::<Vec<_>>(),
            vec![(1, 200.0), (2, 600.0), (4, 300.0), (5, 220.0)]
        );
        assert_eq!(edge_density(&g).unwrap(), 1.0);
    }

    #[test]
    fn reference_complex_features() {
        let (t, s) = t_star();
        let g = build_saliency_graph(&t, &s).unwrap();
        let f = complex_gaze_features(&g).unwrap();
        assert_eq!((f.f1h, f.f1s), (1200.0, 300.0));
        assert_eq!((f.f2h, f.f2s), (600.0, 600.0));
        assert_eq!((f.psh, f.pss, f.psdh, f.psds), (2.0, 1.0, 5.0, 1.0));
        assert_eq!((f.rsh, f.rss, f.rsdh, f.rsds), (1.0, 0.0, 2.0, 0.0));
        assert_eq!(f.ed, 1.0);
    }

    #[test]
    fn single_fixation_graph() {
        let s = Sentence::new(1, "a b", Label::Sarcastic).unwrap();
        let t = Trial::new(
            1,
            "P1",
            vec![Fixation {
                word_index: 2,
                duration: 90.0,
                x: 10.0,
            }],
        )
        .unwrap();
        let g = build_saliency_graph(&t, &s).unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert!(g.edges.is_empty());
        assert_eq!(edge_density(&g).unwrap(), 0.0);
        let f = complex_gaze_features(&g).unwrap();
        assert_eq!((f.f1h, f.f1s), (0.0, 0.0));
    }

    #[test]
    fn density_of_complete_graph() {
        let g = graph_from(&[(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)], 3);
        assert_eq!(edge_density(&g).unwrap(), 2.0);
    }

    #[test]
    fn empty_graph_errors() {
        assert_eq!(edge_density(&SaliencyGraph::default()), Err(SaliencyError::EmptyGraph));
        assert!(complex_gaze_features(&SaliencyGraph::default()).is_err());
    }

    #[test]
    fn single_edge_has_zero_second_degree() {
        let g = graph_from(&[(1, 3)], 3);
        let f = complex_gaze_features(&g).unwrap();
        for s in [f.f1s, f.f2s, f.pss, f.psds, f.rss, f.rsds] {
            assert_eq!(s, 0.0);
        }
        assert_eq!(f.psh, 1.0);
        assert_eq!(f.psdh, 2.0);
    }

    #[test]
    fn all_vertices_tie() {
        let g = graph_from(&[(1, 2), (2, 3), (3, 1)], 3);
        let (h, s) = weighted_degree_extremes(&g, WeightScheme::SourceDuration);
        assert_eq!((h, s), (100.0, 100.0));
    }

    #[test]
    fn saliency_svg_is_deterministic() {
        let (t, s) = t_star();
        let g = build_saliency_graph(&t, &s).unwrap();
        let a = render_saliency_svg(&g, &s);
        assert_eq!(a, render_saliency_svg(&g, &s));
        let text = String::from_utf8(a).unwrap();
        assert_eq!(text.matches("class=\"vertex\"").count(), 4);
        assert_eq!(text.matches("<path class=\"edge").count(), 4);
    }
}
