//! Multi-instance logistic regression.
//!
//! Each instance gets `p_i = σ(w·x_i + b)`. Under the standard multi-instance
//! assumption a bag is positive iff some instance is, which the noisy-OR
//! combination `P = 1 − Π(1 − p_i)` encodes. The arithmetic-mean variant
//! `P = mean(p_i)` is available as an alternative.

use serde::{Deserialize, Serialize};

use super::optim::{minimize, ProxSettings};
use super::{label_from_probability, sigmoid, softplus, LearnError, LinearModel, TrainConfig};
use crate::corpus::Label;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MilrCombine {
    #[default]
    NoisyOr,
    ArithmeticMean,
}

impl std::str::FromStr for MilrCombine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "noisy-or" => Ok(MilrCombine::NoisyOr),
            "arithmetic-mean" => Ok(MilrCombine::ArithmeticMean),
            other => Err(format!("unknown MILR combination `{other}`")),
        }
    }
}

/// Probability that the bag is positive.
pub fn bag_probability(model: &LinearModel, bag: &[Vec<f64>], combine: MilrCombine) -> f64 {
    match combine {
        MilrCombine::NoisyOr => {
            // ln Π(1 − p_i) = −Σ softplus(z_i)
            let s: f64 = bag.iter().map(|x| -softplus(model.decision(x))).sum();
            -s.exp_m1()
        }
        MilrCombine::ArithmeticMean => {
            bag.iter().map(|x| model.probability(x)).sum::<f64>() / bag.len() as f64
        }
    }
}

pub fn predict_bag(model: &LinearModel, bag: &[Vec<f64>], combine: MilrCombine) -> Label {
    label_from_probability(bag_probability(model, bag, combine))
}

/// Negative mean bag log-likelihood plus `λ/2 ‖w‖²`, parameters `[w.., b]`.
pub struct MilrObjective<'a> {
    pub bags: &'a [Vec<Vec<f64>>],
    pub labels: &'a [Label],
    pub l2: f64,
    pub combine: MilrCombine,
}

impl MilrObjective<'_> {
    fn data_term(&self, params: &[f64], want_grad: bool) -> (f64, Vec<f64>) {
        let d = params.len() - 1;
        let nb = self.bags.len() as f64;
        let mut loss = 0.0;
        let mut grad = if want_grad { vec![0.0; d + 1] } else { Vec::new() };
        let decision = |x: &[f64]| x.iter().zip(params).map(|(a, w)| a * w).sum::<f64>() + params[d];

        for (bag, &label) in self.bags.iter().zip(self.labels) {
            let z: Vec<f64> = bag.iter().map(|x| decision(x)).collect();
            // dL/dz_i for the bag log-likelihood L
            let mut dz = vec![0.0; z.len()];
            match self.combine {
                MilrCombine::NoisyOr => {
                    let s: f64 = z.iter().map(|&zi| -softplus(zi)).sum();
                    if label.is_positive() {
                        // L = ln(1 − e^S), dL/dz_i = σ(z_i) / (e^{−S} − 1)
                        let denom = (-s).exp_m1();
                        loss -= (-s.exp_m1()).ln();
                        for (g, &zi) in dz.iter_mut().zip(&z) {
                            *g = sigmoid(zi) / denom;
                        }
                    } else {
                        loss -= s;
                        for (g, &zi) in dz.iter_mut().zip(&z) {
                            *g = -sigmoid(zi);
                        }
                    }
                }
                MilrCombine::ArithmeticMean => {
                    let m = z.len() as f64;
                    let p: Vec<f64> = z.iter().map(|&zi| sigmoid(zi)).collect();
                    let bag_p = (p.iter().sum::<f64>() / m).clamp(1e-300, 1.0 - 1e-16);
                    let (ll, coef) = if label.is_positive() {
                        (bag_p.ln(), 1.0 / bag_p)
                    } else {
                        ((1.0 - bag_p).ln(), -1.0 / (1.0 - bag_p))
                    };
                    loss -= ll;
                    for (g, &pi) in dz.iter_mut().zip(&p) {
                        *g = coef * pi * (1.0 - pi) / m;
                    }
                }
            }
            if want_grad {
                for (x, &g) in bag.iter().zip(&dz) {
                    for (gj, a) in grad.iter_mut().zip(x) {
                        *gj -= g * a;
                    }
                    grad[d] -= g;
                }
            }
        }
        grad.iter_mut().for_each(|g| *g /= nb);
        (loss / nb, grad)
    }

    pub fn value_and_gradient(&self, params: &[f64]) -> (f64, Vec<f64>) {
        let d = params.len() - 1;
        let (mut v, mut g) = self.data_term(params, true);
        for j in 0..d {
            v += 0.5 * self.l2 * params[j] * params[j];
            g[j] += self.l2 * params[j];
        }
        (v, g)
    }

    pub fn value(&self, params: &[f64]) -> f64 {
        self.value_and_gradient(params).0
    }
}

pub fn train_milr(
    bags: &[Vec<Vec<f64>>],
    labels: &[Label],
    config: &TrainConfig,
    combine: MilrCombine,
) -> Result<LinearModel, LearnError> {
    config.validate()?;
    if bags.is_empty() {
        return Err(LearnError::EmptyTraining);
    }
    if bags.len() != labels.len() {
        return Err(LearnError::DimensionMismatch {
            expected: bags.len(),
            found: labels.len(),
        });
    }
    if bags.iter().any(|b| b.is_empty()) {
        return Err(LearnError::InvalidConfig("bag without instances".into()));
    }
    let d = bags[0][0].len();
    for inst in bags.iter().flatten() {
        if inst.len() != d {
            return Err(LearnError::DimensionMismatch {
                expected: d,
                found: inst.len(),
            });
        }
    }
    let pos = labels.iter().filter(|l| l.is_positive()).count();
    if pos == 0 || pos == labels.len() {
        return Err(LearnError::SingleClassTraining);
    }

    let objective = MilrObjective {
        bags,
        labels,
        l2: config.l2,
        combine,
    };
    let mut mask = vec![true; d + 1];
    mask[d] = false;
    let settings = ProxSettings {
        initial_step: config.learning_rate,
        l2: config.l2,
        penalized: &mask,
        epochs: config.epochs,
    };
    let (theta, _) = minimize(|p, g| objective.data_term(p, g), vec![0.0; d + 1], &settings)?;
    let model = LinearModel::from_params(&theta);
    if !model.is_finite() {
        return Err(LearnError::Diverged { epoch: config.epochs });
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_instance_bag_matches_instance() {
        let m = LinearModel {
            weights: vec![0.7, -0.2],
            bias: 0.1,
        };
        let x = vec![0.3, 1.5];
        for c in [MilrCombine::NoisyOr, MilrCombine::ArithmeticMean] {
            let p = bag_probability(&m, std::slice::from_ref(&x), c);
            assert!((p - m.probability(&x)).abs() < 1e-15);
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let bags: Vec<Vec<Vec<f64>>> = (0..3)
            .map(|i| {
                (0..(2 + i))
                    .map(|_| (0..3).map(|_| rng.random_range(-1.5..1.5)).collect())
                    .collect()
            })
            .collect();
        let labels = vec![Label::Sarcastic, Label::NonSarcastic, Label::Sarcastic];
        for combine in [MilrCombine::NoisyOr, MilrCombine::ArithmeticMean] {
            let obj = MilrObjective {
                bags: &bags,
                labels: &labels,
                l2: 0.05,
                combine,
            };
            let p: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
            let (_, g) = obj.value_and_gradient(&p);
            let eps = 1e-5;
            for j in 0..p.len() {
                let mut hi = p.clone();
                let mut lo = p.clone();
                hi[j] += eps;
                lo[j] -= eps;
                let fd = (obj.value(&hi) - obj.value(&lo)) / (2.0 * eps);
                assert!((fd - g[j]).abs() <= 1e-6, "{combine:?} coord {j}: {fd} vs {}", g[j]);
            }
        }
    }

    #[test]
    fn combine_parses() {
        assert_eq!("noisy-or".parse::<MilrCombine>(), Ok(MilrCombine::NoisyOr));
        assert_eq!("arithmetic-mean".parse::<MilrCombine>(), Ok(MilrCombine::ArithmeticMean));
        assert!("max".parse::<MilrCombine>().is_err());
    }
}
