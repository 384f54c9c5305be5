use std::fmt::Write;

use super::EvalReport;

/// Precision, recall and F for each class and their weighted average, plus kappa.
pub fn metrics_table(reports: &[&EvalReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} {:<14} | {:>5} {:>5} {:>5} | {:>5} {:>5} {:>5} | {:>5} {:>5} {:>5} | {:>6}",
        "Model", "Features", "P(1)", "R(1)", "F(1)", "P(-1)", "R(-1)", "F(-1)", "P", "R", "F", "Kappa"
    );
    for r in reports {
        let m = &r.metrics;
        let pct = |v: f64| format!("{:.1}", 100.0 * v);
        let _ = writeln!(
            out,
            "{:<8} {:<14} | {:>5} {:>5} {:>5} | {:>5} {:>5} {:>5} | {:>5} {:>5} {:>5} | {:>6.3}",
            r.classifier.kind.to_string(),
            r.feature_config.to_string(),
            pct(m.sarcastic.precision),
            pct(m.sarcastic.recall),
            pct(m.sarcastic.f1),
            pct(m.non_sarcastic.precision),
            pct(m.non_sarcastic.recall),
            pct(m.non_sarcastic.f1),
            pct(m.weighted.precision),
            pct(m.weighted.recall),
            pct(m.weighted.f1),
            m.kappa
        );
    }
    out
}
