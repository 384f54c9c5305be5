use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    predict_bag, predict_gnb, train_gnb, train_logreg, train_milr, train_mlp, train_svm, GnbModel, LearnError,
    LinearModel, MilrCombine, MlpModel, TrainConfig,
};
use crate::corpus::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifierKind {
    Gnb,
    Logreg,
    Svm,
    Mlp,
    Milr,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 5] = [Self::Gnb, Self::Logreg, Self::Svm, Self::Mlp, Self::Milr];

    pub fn name(self) -> &'static str {
        match self {
            Self::Gnb => "gnb",
            Self::Logreg => "logreg",
            Self::Svm => "svm",
            Self::Mlp => "mlp",
            Self::Milr => "milr",
        }
    }

    /// Every classifier except naive Bayes sees z-scored inputs.
    pub fn wants_scaling(self) -> bool {
        self != Self::Gnb
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassifierKind {
    type Err = LearnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| LearnError::InvalidConfig(format!("unknown classifier `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    pub kind: ClassifierKind,
    pub train: TrainConfig,
    pub combine: MilrCombine,
}

impl ClassifierConfig {
    pub fn new(kind: ClassifierKind) -> Self {
        ClassifierConfig {
            kind,
            train: TrainConfig::default(),
            combine: MilrCombine::default(),
        }
    }
}

/// A fitted classifier of any kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TrainedModel {
    Gnb(GnbModel),
    Logreg(LinearModel),
    Svm(LinearModel),
    Mlp(MlpModel),
    Milr { model: LinearModel, combine: MilrCombine },
}

impl TrainedModel {
    /// Trains on bags. Single-vector learners see each bag's instance mean.
    pub fn fit(config: &ClassifierConfig, bags: &[Vec<Vec<f64>>], y: &[Label]) -> Result<Self, LearnError> {
        if config.kind == ClassifierKind::Milr {
            return Ok(TrainedModel::Milr {
                model: train_milr(bags, y, &config.train, config.combine)?,
                combine: config.combine,
            });
        }
        let x: Vec<Vec<f64>> = bags.iter().map(|b| mean(b)).collect();
        Self::fit_vectors(config, &x, y)
    }

    pub fn fit_vectors(config: &ClassifierConfig, x: &[Vec<f64>], y: &[Label]) -> Result<Self, LearnError> {
        Ok(match config.kind {
            ClassifierKind::Gnb => TrainedModel::Gnb(train_gnb(x, y)?),
            ClassifierKind::Logreg => TrainedModel::Logreg(train_logreg(x, y, &config.train)?),
            ClassifierKind::Svm => TrainedModel::Svm(train_svm(x, y, &config.train)?),
            ClassifierKind::Mlp => TrainedModel::Mlp(train_mlp(x, y, &config.train)?),
            ClassifierKind::Milr => {
                let bags: Vec<Vec<Vec<f64>>> = x.iter().map(|v| vec![v.clone()]).collect();
                TrainedModel::Milr {
                    model: train_milr(&bags, y, &config.train, config.combine)?,
                    combine: config.combine,
                }
            }
        })
    }

    pub fn kind(&self) -> ClassifierKind {
        match self {
            TrainedModel::Gnb(_) => ClassifierKind::Gnb,
            TrainedModel::Logreg(_) => ClassifierKind::Logreg,
            TrainedModel::Svm(_) => ClassifierKind::Svm,
            TrainedModel::Mlp(_) => ClassifierKind::Mlp,
            TrainedModel::Milr { .. } => ClassifierKind::Milr,
        }
    }

    pub fn predict_vector(&self, x: &[f64]) -> Label {
        match self {
            TrainedModel::Gnb(m) => predict_gnb(m, x),
            TrainedModel::Logreg(m) | TrainedModel::Svm(m) => m.predict(x),
            TrainedModel::Mlp(m) => m.predict(x),
            TrainedModel::Milr { model, combine } => predict_bag(model, &[x.to_vec()], *combine),
        }
    }

    /// MILR combines its instances; other models classify the instance mean.
    pub fn predict_bag(&self, bag: &[Vec<f64>]) -> Label {
        match self {
            TrainedModel::Milr { model, combine } => predict_bag(model, bag, *combine),
            _ => self.predict_vector(&mean(bag)),
        }
    }
}

fn mean(bag: &[Vec<f64>]) -> Vec<f64> {
    let n = bag.len() as f64;
    let mut m = vec![0.0; bag.first().map_or(0, Vec::len)];
    for inst in bag {
        m.iter_mut().zip(inst).for_each(|(a, b)| *a += b / n);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_round_trip() {
        for k in ClassifierKind::ALL {
            assert_eq!(k.name().parse::<ClassifierKind>().unwrap(), k);
        }
        assert!("knn".parse::<ClassifierKind>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = vec![vec![0.0], vec![1.0], vec![3.0], vec![4.0]];
        let y = [Label::NonSarcastic, Label::NonSarcastic, Label::Sarcastic, Label::Sarcastic];
        for k in ClassifierKind::ALL {
            let m = TrainedModel::fit_vectors(&ClassifierConfig::new(k), &x, &y).unwrap();
            let back: TrainedModel = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
            assert_eq!(back, m);
            assert_eq!(back.kind(), k);
            assert_eq!(m.predict_vector(&[4.0]), Label::Sarcastic, "{k}");
        }
    }
}
