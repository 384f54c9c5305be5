use serde::{Deserialize, Serialize};

use super::special::{chi_squared_sf, ln_gamma};
use super::StatsError;
use crate::corpus::Label;

pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum McNemarMethod {
    /// Chi-squared with continuity correction, one degree of freedom.
    #[default]
    ContinuityCorrected,
    /// Two-sided exact binomial test on the discordant pairs.
    ExactBinomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McNemarResult {
    /// Pairs where A is wrong and B is right.
    pub b: usize,
    /// Pairs where A is right and B is wrong.
    pub c: usize,
    pub chi2: f64,
    pub p: f64,
    /// `b / c`; `None` when `c = 0`.
    pub odds_ratio: Option<f64>,
    pub odds_ratio_infinite: bool,
    /// No discordant pairs: the test is undefined and `p` is set to 1.
    pub no_discordant: bool,
    pub method: McNemarMethod,
    pub alpha: f64,
    pub significant: bool,
}

fn exact_binomial_p(b: usize, c: usize) -> f64 {
    let n = b + c;
    let k = b.min(c);
    let ln_n_fact = ln_gamma(n as f64 + 1.0);
    let tail: f64 = (0..=k)
        .map(|i| {
            (ln_n_fact - ln_gamma(i as f64 + 1.0) - ln_gamma((n - i) as f64 + 1.0) - n as f64 * 2f64.ln()).exp()
        })
        .sum();
    (2.0 * tail).min(1.0)
}

pub fn mcnemar(
    pred_a: &[Label],
    pred_b: &[Label],
    gold: &[Label],
    alpha: f64,
    method: McNemarMethod,
) -> Result<McNemarResult, StatsError> {
    if pred_a.len() != gold.len() {
        return Err(StatsError::LengthMismatch(pred_a.len(), gold.len()));
    }
    if pred_b.len() != gold.len() {
        return Err(StatsError::LengthMismatch(pred_b.len(), gold.len()));
    }
    let mut b = 0;
    let mut c = 0;
    for ((&a, &bb), &g) in pred_a.iter().zip(pred_b).zip(gold) {
        match (a == g, bb == g) {
            (false, true) => b += 1,
            (true, false) => c += 1,
            _ => {}
        }
    }
    Ok(mcnemar_from_counts(b, c, alpha, method))
}

/// McNemar's test from the discordant counts directly.
pub fn mcnemar_from_counts(b: usize, c: usize, alpha: f64, method: McNemarMethod) -> McNemarResult {
    let no_discordant = b + c == 0;
    let diff = (b as f64 - c as f64).abs();
    let chi2 = if no_discordant {
        0.0
    } else {
        (diff - 1.0).max(0.0).powi(2) / (b + c) as f64
    };
    let p = if no_discordant {
        1.0
    } else {
        match method {
            McNemarMethod::ContinuityCorrected => chi_squared_sf(chi2, 1.0).unwrap_or(1.0),
            McNemarMethod::ExactBinomial => exact_binomial_p(b, c),
        }
    };
    let (odds_ratio, odds_ratio_infinite) = if c == 0 {
        (None, b > 0)
    } else {
        (Some(b as f64 / c as f64), false)
    };
    McNemarResult {
        b,
        c,
        chi2,
        p,
        odds_ratio,
        odds_ratio_infinite,
        no_discordant,
        method,
        alpha,
        significant: p < alpha,
    }
}
