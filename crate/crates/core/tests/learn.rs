use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use sarcaze::corpus::Label;
use sarcaze::learn::{
    bag_probability, sigmoid, train_logreg, train_milr, train_mlp, train_svm_traced, ClassifierConfig, ClassifierKind,
    LinearModel, LogisticObjective, MilrCombine, MilrObjective, MlpModel, TrainConfig, TrainedModel,
};

fn label(positive: bool) -> Label {
    if positive {
        Label::Sarcastic
    } else {
        Label::NonSarcastic
    }
}

fn random_batch(rng: &mut ChaCha8Rng, n: usize, d: usize) -> (Vec<Vec<f64>>, Vec<Label>) {
    let x = (0..n).map(|_| (0..d).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
    let y = (0..n).map(|i| label(i % 2 == 0)).collect();
    (x, y)
}

/// Central differences with step 1e-5; returns the largest relative error.
fn fd_check(params: &[f64], grad: &[f64], f: impl Fn(&[f64]) -> f64) -> f64 {
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for j in 0..params.len() {
        let mut p = params.to_vec();
        p[j] += h;
        let up = f(&p);
        p[j] -= 2.0 * h;
        let down = f(&p);
        let numeric = (up - down) / (2.0 * h);
        worst = worst.max((numeric - grad[j]).abs() / numeric.abs().max(grad[j].abs()).max(1e-3));
    }
    worst
}

#[test]
fn logistic_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (x, y) = random_batch(&mut rng, 12, 5);
    let obj = LogisticObjective { x: &x, y: &y, l2: 0.1 };
    let params: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
    let (_, g) = obj.value_and_gradient(&params);
    assert!(fd_check(&params, &g, |p| obj.value(p)) < 1e-5);
}

#[test]
fn mlp_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (x, y) = random_batch(&mut rng, 8, 3);
    let net = MlpModel::init(3, 4, 11);
    let params = net.to_params();
    let (_, g) = net.loss_and_gradient(&x, &y, 0.01);
    let err = fd_check(&params, &g, |p| net.with_params(p).loss_and_gradient(&x, &y, 0.01).0);
    assert!(err < 1e-5, "relative error {err}");
}

#[test]
fn milr_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bags: Vec<Vec<Vec<f64>>> = (0..3)
        .map(|b| random_batch(&mut rng, 2 + b, 4).0)
        .collect();
    let labels = vec![Label::Sarcastic, Label::NonSarcastic, Label::Sarcastic];
    let params: Vec<f64> = (0..5).map(|_| rng.random_range(-0.5..0.5)).collect();
    for combine in [MilrCombine::NoisyOr, MilrCombine::ArithmeticMean] {
        let obj = MilrObjective { bags: &bags, labels: &labels, l2: 0.05, combine };
        let (_, g) = obj.value_and_gradient(&params);
        let err = fd_check(&params, &g, |p| obj.value(p));
        assert!(err < 1e-5, "{combine:?}: relative error {err}");
    }
}

#[test]
fn mlp_learns_xor() {
    let x = vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]];
    let y = vec![label(false), label(true), label(true), label(false)];
    let solved = [1u64, 2, 3]
        .iter()
        .filter(|&&seed| {
            let config = TrainConfig {
                hidden_units: 4,
                epochs: 20_000,
                seed,
                l2: 1e-6,
                ..TrainConfig::default()
            };
            let m = train_mlp(&x, &y, &config).unwrap();
            x.iter().zip(&y).all(|(xi, &yi)| m.predict(xi) == yi)
        })
        .count();
    assert!(solved >= 1, "no seed solved XOR");
}

/// Positive bags hold one instance near +5 among noise near −5.
fn planted_bags(seed: u64) -> (Vec<Vec<Vec<f64>>>, Vec<Label>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signal = Normal::new(5.0, 1.0).unwrap();
    let noise = Normal::new(-5.0, 1.0).unwrap();
    let mut bags = Vec::new();
    let mut labels = Vec::new();
    for positive in [true, false] {
        for _ in 0..20 {
            let mut bag: Vec<Vec<f64>> = (0..5).map(|_| vec![noise.sample(&mut rng)]).collect();
            if positive {
                let slot = rng.random_range(0..5);
                bag[slot] = vec![signal.sample(&mut rng)];
            }
            bags.push(bag);
            labels.push(label(positive));
        }
    }
    (bags, labels)
}

#[test]
fn milr_recovers_planted_instances() {
    let (bags, labels) = planted_bags(3);
    let model = train_milr(&bags, &labels, &TrainConfig::default(), MilrCombine::NoisyOr).unwrap();
    let (test_bags, test_labels) = planted_bags(4);
    let correct = test_bags
        .iter()
        .zip(&test_labels)
        .filter(|(b, &l)| sarcaze::learn::predict_bag(&model, b, MilrCombine::NoisyOr) == l)
        .count();
    assert!(correct as f64 / test_bags.len() as f64 >= 0.9, "{correct}/40");
}

#[test]
fn svm_epoch_objective_never_rises() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let mut x = Vec::new();
    let mut y = Vec::new();
    for i in 0..200 {
        let positive = i % 2 == 0;
        let shift = if positive { 1.5 } else { -1.5 };
        x.push(vec![shift + normal.sample(&mut rng), normal.sample(&mut rng)]);
        y.push(label(positive));
    }
    let config = TrainConfig { epochs: 100, l2: 1e-2, ..TrainConfig::default() };
    let (_, trace) = train_svm_traced(&x, &y, &config).unwrap();
    for w in trace.windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "objective rose: {trace:?}");
    }
}

#[test]
fn every_trainer_is_bit_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (x, y) = random_batch(&mut rng, 40, 4);
    let bags: Vec<Vec<Vec<f64>>> = x.chunks(2).map(|c| c.to_vec()).collect();
    let bag_y: Vec<Label> = y.iter().step_by(2).copied().collect();
    let bag_y: Vec<Label> = bag_y.iter().enumerate().map(|(i, _)| label(i % 3 == 0)).collect();
    for kind in ClassifierKind::ALL {
        let mut config = ClassifierConfig::new(kind);
        config.train.epochs = 50;
        let fit = || {
            let m = if kind == ClassifierKind::Milr {
                TrainedModel::fit(&config, &bags, &bag_y).unwrap()
            } else {
                TrainedModel::fit_vectors(&config, &x, &y).unwrap()
            };
            serde_json::to_string(&m).unwrap()
        };
        assert_eq!(fit(), fit(), "{kind}");
    }
}

#[test]
fn large_penalty_drives_weights_to_prior() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (x, _) = random_batch(&mut rng, 40, 3);
    let y: Vec<Label> = (0..40).map(|i| label(i < 10)).collect();
    let config = TrainConfig { l2: 1e6, ..TrainConfig::default() };
    let m = train_logreg(&x, &y, &config).unwrap();
    assert!(m.weights.iter().all(|w| w.abs() < 1e-5));
    assert!((sigmoid(m.bias) - 0.25).abs() < 1e-3, "bias {}", m.bias);
}

proptest! {
    #[test]
    fn negated_model_flips_decisions(
        w in prop::collection::vec(-3f64..3.0, 3),
        b in -3f64..3.0,
        x in prop::collection::vec(-3f64..3.0, 3),
    ) {
        let m = LinearModel { weights: w, bias: b };
        let d = m.decision(&x);
        prop_assume!(d != 0.0);
        prop_assert_eq!(m.predict(&x), m.negated().predict(&x).flip());
    }

    #[test]
    fn bag_probability_is_monotone(
        zs in prop::collection::vec(-6f64..6.0, 1..6),
        which in any::<prop::sample::Index>(),
        bump in 0f64..4.0,
        mean in any::<bool>(),
    ) {
        // one-feature instances with unit weight make z_i the instance logit
        let m = LinearModel { weights: vec![1.0], bias: 0.0 };
        let combine = if mean { MilrCombine::ArithmeticMean } else { MilrCombine::NoisyOr };
        let bag: Vec<Vec<f64>> = zs.iter().map(|&z| vec![z]).collect();
        let mut raised = bag.clone();
        raised[which.index(zs.len())][0] += bump;
        prop_assert!(bag_probability(&m, &raised, combine) >= bag_probability(&m, &bag, combine));
        if zs.len() == 1 {
            prop_assert!((bag_probability(&m, &bag, combine) - sigmoid(zs[0])).abs() < 1e-12);
        }
    }
}
