use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_training, label_from_probability, sigmoid, softplus, target, DivergenceGuard, LearnError, TrainConfig};
use crate::corpus::Label;

/// One hidden sigmoid layer feeding a sigmoid output unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpModel {
    /// `hidden[h]` holds the input weights of hidden unit `h`.
    pub hidden: Vec<Vec<f64>>,
    pub hidden_bias: Vec<f64>,
    pub output: Vec<f64>,
    pub output_bias: f64,
}

impl MlpModel {
    pub fn init(inputs: usize, hidden_units: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut u = || rng.random_range(-0.5..0.5);
        let hidden = (0..hidden_units).map(|_| (0..inputs).map(|_| u()).collect()).collect();
        let hidden_bias = (0..hidden_units).map(|_| u()).collect();
        let output = (0..hidden_units).map(|_| u()).collect();
        let output_bias = u();
        MlpModel {
            hidden,
            hidden_bias,
            output,
            output_bias,
        }
    }

    fn hidden_activations(&self, x: &[f64]) -> Vec<f64> {
        self.hidden
            .iter()
            .zip(&self.hidden_bias)
            .map(|(w, b)| sigmoid(w.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() + b))
            .collect()
    }

    fn output_logit(&self, a: &[f64]) -> f64 {
        self.output.iter().zip(a).map(|(w, v)| w * v).sum::<f64>() + self.output_bias
    }

    pub fn probability(&self, x: &[f64]) -> f64 {
        sigmoid(self.output_logit(&self.hidden_activations(x)))
    }

    pub fn predict(&self, x: &[f64]) -> Label {
        label_from_probability(self.probability(x))
    }

    /// Flattened parameters: hidden weights row-major, hidden biases, output
    /// weights, output bias.
    pub fn to_params(&self) -> Vec<f64> {
        let mut p: Vec<f64> = self.hidden.iter().flatten().copied().collect();
        p.extend(&self.hidden_bias);
        p.extend(&self.output);
        p.push(self.output_bias);
        p
    }

    pub fn with_params(&self, p: &[f64]) -> Self {
        let h = self.hidden.len();
        let d = self.hidden.first().map_or(0, Vec::len);
        let mut it = p.iter().copied();
        let hidden = (0..h).map(|_| it.by_ref().take(d).collect()).collect();
        let hidden_bias = it.by_ref().take(h).collect();
        let output = it.by_ref().take(h).collect();
        let output_bias = it.next().expect("parameter vector too short");
        MlpModel {
            hidden,
            hidden_bias,
            output,
            output_bias,
        }
    }

    /// Mean cross-entropy plus `λ/2` times the squared weights (biases
    /// excluded), and its gradient in [`to_params`](Self::to_params) layout.
    pub fn loss_and_gradient(&self, x: &[Vec<f64>], y: &[Label], l2: f64) -> (f64, Vec<f64>) {
        let h = self.hidden.len();
        let d = self.hidden.first().map_or(0, Vec::len);
        let n = x.len() as f64;
        let mut g_hidden = vec![vec![0.0; d]; h];
        let mut g_hidden_bias = vec![0.0; h];
        let mut g_out = vec![0.0; h];
        let mut g_out_bias = 0.0;
        let mut loss = 0.0;

        for (xi, &yi) in x.iter().zip(y) {
            let a = self.hidden_activations(xi);
            let z = self.output_logit(&a);
            let t = target(yi);
            loss += softplus(z) - t * z;
            let delta = sigmoid(z) - t;
            g_out_bias += delta;
            for k in 0..h {
                g_out[k] += delta * a[k];
                let dk = delta * self.output[k] * a[k] * (1.0 - a[k]);
                g_hidden_bias[k] += dk;
                for (g, v) in g_hidden[k].iter_mut().zip(xi) {
                    *g += dk * v;
                }
            }
        }

        let mut reg = 0.0;
        for k in 0..h {
            for (g, &w) in g_hidden[k].iter_mut().zip(&self.hidden[k]) {
                reg += w * w;
                *g = *g / n + l2 * w;
            }
            g_hidden_bias[k] /= n;
            let w = self.output[k];
            reg += w * w;
            g_out[k] = g_out[k] / n + l2 * w;
        }
        g_out_bias /= n;

        let mut grad: Vec<f64> = g_hidden.into_iter().flatten().collect();
        grad.extend(g_hidden_bias);
        grad.extend(g_out);
        grad.push(g_out_bias);
        (loss / n + 0.5 * l2 * reg, grad)
    }
}

/// Full-batch gradient descent with a fixed learning rate.
pub fn train_mlp(x: &[Vec<f64>], y: &[Label], config: &TrainConfig) -> Result<MlpModel, LearnError> {
    config.validate()?;
    let d = check_training(x, y)?;
    let mut model = MlpModel::init(d, config.hidden_units, config.seed);
    let mut params = model.to_params();
    let mut guard = DivergenceGuard::default();
    for epoch in 0..config.epochs {
        let (loss, grad) = model.loss_and_gradient(x, y, config.l2);
        guard.observe(epoch, loss)?;
        for (p, g) in params.iter_mut().zip(&grad) {
            *p -= config.learning_rate * g;
        }
        model = model.with_params(&params);
    }
    if model.to_params().iter().any(|p| !p.is_finite()) {
        return Err(LearnError::Diverged { epoch: config.epochs });
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_round_trip() {
        let m = MlpModel::init(3, 4, 1);
        let p = m.to_params();
        assert_eq!(p.len(), 3 * 4 + 4 + 4 + 1);
        assert_eq!(m.with_params(&p), m);
    }

    #[test]
    fn init_is_bounded_and_seeded() {
        let m = MlpModel::init(5, 3, 9);
        assert!(m.to_params().iter().all(|v| (-0.5..0.5).contains(v)));
        assert_eq!(m, MlpModel::init(5, 3, 9));
        assert_ne!(m, MlpModel::init(5, 3, 10));
    }
}
