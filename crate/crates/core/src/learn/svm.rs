//! Linear SVM by Pegasos-style stochastic sub-gradient descent on the primal
//! hinge objective. The bias is folded in as a weight on a constant input and
//! is penalized along with the other weights.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_training, LearnError, LinearModel, TrainConfig};
use crate::corpus::Label;

fn margin_input(model: &LinearModel, x: &[f64], y: Label) -> f64 {
    y.sign() as f64 * model.decision(x)
}

/// `λ/2 (‖w‖² + b²) + mean hinge loss`.
pub fn svm_objective(model: &LinearModel, x: &[Vec<f64>], y: &[Label], l2: f64) -> f64 {
    let hinge: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, &yi)| (1.0 - margin_input(model, xi, yi)).max(0.0))
        .sum::<f64>()
        / x.len() as f64;
    let norm2: f64 = model.weights.iter().map(|w| w * w).sum::<f64>() + model.bias * model.bias;
    0.5 * l2 * norm2 + hinge
}

/// Trains and returns the model together with the objective trace.
///
/// Step `t` uses `η = 1/(λ t)` followed by projection onto the ball of
/// radius `1/√λ`. After each epoch the average of that epoch's iterates is
/// scored on the full objective and kept if it beats the best so far; the
/// returned model is that best epoch average and `trace[e]` is its objective
/// after epoch `e`, so the trace never rises.
pub fn train_svm_traced(
    x: &[Vec<f64>],
    y: &[Label],
    config: &TrainConfig,
) -> Result<(LinearModel, Vec<f64>), LearnError> {
    config.validate()?;
    let d = check_training(x, y)?;
    let lambda = config.l2;
    let radius = 1.0 / lambda.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..x.len()).collect();

    // w[d] is the bias weight
    let mut w = vec![0.0; d + 1];
    let mut t: u64 = 0;
    let mut trace = Vec::with_capacity(config.epochs);
    let mut best = LinearModel::zeros(d);
    let mut best_obj = f64::INFINITY;

    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        let mut sum = vec![0.0; d + 1];
        let mut steps = 0usize;
        for batch in order.chunks(config.batch_size) {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let mut step = vec![0.0; d + 1];
            for &i in batch {
                let yi = y[i].sign() as f64;
                let z = x[i].iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() + w[d];
                if yi * z < 1.0 {
                    for (s, a) in step.iter_mut().zip(&x[i]) {
                        *s += yi * a;
                    }
                    step[d] += yi;
                }
            }
            let shrink = 1.0 - eta * lambda;
            let scale = eta / batch.len() as f64;
            for j in 0..=d {
                w[j] = shrink * w[j] + scale * step[j];
            }
            let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > radius {
                let k = radius / norm;
                w.iter_mut().for_each(|v| *v *= k);
            }
            for j in 0..=d {
                sum[j] += w[j];
            }
            steps += 1;
        }
        let avg: Vec<f64> = sum.iter().map(|s| s / steps as f64).collect();
        let epoch_avg = LinearModel::from_params(&avg);
        let obj = svm_objective(&epoch_avg, x, y, lambda);
        if !obj.is_finite() {
            return Err(LearnError::Diverged { epoch: trace.len() });
        }
        if obj < best_obj {
            best_obj = obj;
            best = epoch_avg;
        }
        trace.push(best_obj);
    }
    Ok((best, trace))
}

pub fn train_svm(x: &[Vec<f64>], y: &[Label], config: &TrainConfig) -> Result<LinearModel, LearnError> {
    train_svm_traced(x, y, config).map(|(m, _)| m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn margin_data(seed: u64) -> (Vec<Vec<f64>>, Vec<Label>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = Vec::new();
        let mut y = Vec::new();
        for i in 0..100 {
            let pos = i % 2 == 0;
            let c = if pos { 3.0 } else { -3.0 };
            x.push(vec![c + rng.random_range(-1.0..1.0), rng.random_range(-2.0..2.0)]);
            y.push(if pos { Label::Sarcastic } else { Label::NonSarcastic });
        }
        (x, y)
    }

    fn svm_config() -> TrainConfig {
        TrainConfig {
            l2: 1e-4,
            epochs: 100,
            batch_size: 1,
            ..TrainConfig::default()
        }
    }

    #[test]
    fn separable_with_margin_reaches_zero_hinge() {
        let (x, y) = margin_data(4);
        let (m, _) = train_svm_traced(&x, &y, &svm_config()).unwrap();
        let hinge: f64 = x
            .iter()
            .zip(&y)
            .map(|(xi, &yi)| (1.0 - yi.sign() as f64 * m.decision(xi)).max(0.0))
            .sum::<f64>()
            / x.len() as f64;
        assert!(hinge <= 1e-3, "hinge {hinge}");
    }

    #[test]
    fn deterministic_under_seed() {
        let (x, y) = margin_data(9);
        let a = train_svm(&x, &y, &svm_config()).unwrap();
        let b = train_svm(&x, &y, &svm_config()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_class_rejected() {
        let x = vec![vec![0.0], vec![1.0]];
        let y = vec![Label::NonSarcastic; 2];
        assert_eq!(train_svm(&x, &y, &svm_config()), Err(LearnError::SingleClassTraining));
    }
}
