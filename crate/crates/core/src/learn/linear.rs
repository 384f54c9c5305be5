use serde::{Deserialize, Serialize};

use super::optim::{minimize, ProxSettings};
use super::{check_training, label_from_probability, target, LearnError, TrainConfig};
use crate::corpus::Label;

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^z)` without overflow.
pub fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LinearModel {
    pub fn zeros(dim: usize) -> Self {
        LinearModel {
            weights: vec![0.0; dim],
            bias: 0.0,
        }
    }

    pub fn decision(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }

    pub fn probability(&self, x: &[f64]) -> f64 {
        sigmoid(self.decision(x))
    }

    /// Sign of the decision value; zero maps to the majority class.
    pub fn predict(&self, x: &[f64]) -> Label {
        if self.decision(x) > 0.0 {
            Label::Sarcastic
        } else {
            Label::NonSarcastic
        }
    }

    pub fn negated(&self) -> Self {
        LinearModel {
            weights: self.weights.iter().map(|w| -w).collect(),
            bias: -self.bias,
        }
    }

    pub(crate) fn from_params(p: &[f64]) -> Self {
        let (w, b) = p.split_at(p.len() - 1);
        LinearModel {
            weights: w.to_vec(),
            bias: b[0],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.bias.is_finite() && self.weights.iter().all(|w| w.is_finite())
    }
}

/// Mean logistic loss plus `λ/2 ‖w‖²` (bias unpenalized), over parameters
/// laid out as `[w.., b]`.
pub struct LogisticObjective<'a> {
    pub x: &'a [Vec<f64>],
    pub y: &'a [Label],
    pub l2: f64,
}

impl LogisticObjective<'_> {
    fn data_term(&self, params: &[f64], want_grad: bool) -> (f64, Vec<f64>) {
        let d = params.len() - 1;
        let n = self.x.len() as f64;
        let mut loss = 0.0;
        let mut grad = if want_grad { vec![0.0; d + 1] } else { Vec::new() };
        for (xi, &yi) in self.x.iter().zip(self.y) {
            let z = xi.iter().zip(params).map(|(a, w)| a * w).sum::<f64>() + params[d];
            let t = target(yi);
            // -[t ln σ(z) + (1-t) ln(1-σ(z))] = softplus(z) - t z
            loss += softplus(z) - t * z;
            if want_grad {
                let r = sigmoid(z) - t;
                for (g, a) in grad.iter_mut().zip(xi) {
                    *g += r * a;
                }
                grad[d] += r;
            }
        }
        grad.iter_mut().for_each(|g| *g /= n);
        (loss / n, grad)
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

/// L2-regularized logistic regression by full-batch proximal gradient descent.
pub fn train_logreg(x: &[Vec<f64>], y: &[Label], config: &TrainConfig) -> Result<LinearModel, LearnError> {
    config.validate()?;
    let d = check_training(x, y)?;
    let objective = LogisticObjective { x, y, l2: config.l2 };
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

impl LinearModel {
    pub fn predict_with_probability(&self, x: &[f64]) -> (Label, f64) {
        let p = self.probability(x);
        (label_from_probability(p), p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn separable(n: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<Label>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = Vec::new();
        let mut y = Vec::new();
        while x.len() < n {
            let a: f64 = rng.random_range(-3.0..3.0);
            let b: f64 = rng.random_range(-3.0..3.0);
            let m = a + 0.5 * b;
            if m.abs() < 0.3 {
                continue;
            }
            x.push(vec![a, b]);
            y.push(if m > 0.0 { Label::Sarcastic } else { Label::NonSarcastic });
        }
        (x, y)
    }

    #[test]
    fn separable_data_is_fit() {
        let (x, y) = separable(200, 1);
        let cfg = TrainConfig {
            l2: 1e-4,
            epochs: 2000,
            ..TrainConfig::default()
        };
        let m = train_logreg(&x, &y, &cfg).unwrap();
        let correct = x.iter().zip(&y).filter(|(xi, yi)| m.predict(xi) == **yi).count();
        assert!(correct as f64 / x.len() as f64 >= 0.99);
    }

    #[test]
    fn gradient_matches_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x: Vec<Vec<f64>> = (0..12)
            .map(|_| (0..5).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect();
        let y: Vec<Label> = (0..12)
            .map(|i| if i % 3 == 0 { Label::Sarcastic } else { Label::NonSarcastic })
            .collect();
        let obj = LogisticObjective { x: &x, y: &y, l2: 0.1 };
        let p: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (_, g) = obj.value_and_gradient(&p);
        let eps = 1e-5;
        for j in 0..p.len() {
            let mut hi = p.clone();
            let mut lo = p.clone();
            hi[j] += eps;
            lo[j] -= eps;
            let fd = (obj.value(&hi) - obj.value(&lo)) / (2.0 * eps);
            assert!((fd - g[j]).abs() <= 1e-6, "coord {j}: {fd} vs {}", g[j]);
        }
    }

    #[test]
    fn huge_penalty_shrinks_to_prior() {
        let (x, y) = separable(100, 2);
        let cfg = TrainConfig {
            l2: 1e6,
            epochs: 2000,
            ..TrainConfig::default()
        };
        let m = train_logreg(&x, &y, &cfg).unwrap();
        assert!(m.weights.iter().all(|w| w.abs() < 1e-5));
        let prior = y.iter().filter(|l| l.is_positive()).count() as f64 / y.len() as f64;
        assert!((m.probability(&[0.0, 0.0]) - prior).abs() < 1e-4);
    }

    #[test]
    fn single_class_rejected() {
        let x = vec![vec![1.0], vec![2.0]];
        let y = vec![Label::Sarcastic, Label::Sarcastic];
        assert_eq!(
            train_logreg(&x, &y, &TrainConfig::default()),
            Err(LearnError::SingleClassTraining)
        );
    }

    #[test]
    fn negation_flips_predictions() {
        let m = LinearModel {
            weights: vec![0.5, -1.0],
            bias: 0.2,
        };
        let x = [1.0, 0.1];
        assert_eq!(m.predict(&x), m.negated().predict(&x).flip());
    }

    #[test]
    fn sigmoid_and_softplus_are_stable() {
        assert_eq!(sigmoid(-1000.0), 0.0);
        assert_eq!(sigmoid(1000.0), 1.0);
        assert!((softplus(1000.0) - 1000.0).abs() < 1e-12);
        assert!(softplus(-1000.0) >= 0.0);
    }
}
