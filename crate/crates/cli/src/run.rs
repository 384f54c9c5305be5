use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use sarcaze::corpus::{parse_sentences, parse_trials, validate_corpus, Corpus, CorpusError, Label, Lexicons};
use sarcaze::dataset::{assemble_averaged, is_gaze_feature, precompute, DatasetError, FeatureConfig};
use sarcaze::eval::{
    metrics_table, rank_features, render_ranking_svg, run_ablation, run_comparison, run_crossval, run_ttest_table,
    EvalError, EvalOptions, EvalReport, ModelBundle,
};
use sarcaze::gaze::render_scanpath_svg;
use sarcaze::learn::{ClassifierConfig, ClassifierKind, LearnError, MilrCombine, TrainConfig};
use sarcaze::saliency::{build_saliency_graph, render_saliency_svg};
use sarcaze::stats::{classification_metrics, McNemarMethod, Metrics, RankMethod};
use sarcaze::synth::{generate, SynthConfig, SynthError};

use crate::args::{Cli, Command, CorpusArgs, Format, McNemarFlavor, Method, ModelArgs, OutArgs};
use crate::CliError;

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        if e.is_numeric() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Data(e.to_string())
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        EvalError::from(e).into()
    }
}

impl From<LearnError> for CliError {
    fn from(e: LearnError) -> Self {
        EvalError::from(e).into()
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        match e {
            SynthError::InvalidConfig(m) => CliError::Usage(m),
            other => CliError::Data(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_bytes(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Data(format!("writing output: {e}"));
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(io)?;
            }
            fs::write(p, bytes).map_err(io)
        }
        None => std::io::stdout().write_all(bytes).map_err(io),
    }
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("report serializes");
    v.push(b'\n');
    v
}

/// JSON by default; the text rendering when `--format table` and one exists.
fn emit<T: Serialize>(out: &OutArgs, value: &T, table: Option<String>) -> Result<(), CliError> {
    let bytes = match (out.format, table) {
        (Format::Table, Some(t)) => t.into_bytes(),
        (Format::Json, _) => to_json(value),
        (f, _) => return Err(CliError::Usage(format!("--format {f:?} is not available for this command").to_lowercase())),
    };
    write_bytes(out.out.as_deref(), &bytes)
}

struct Loaded {
    corpus: Corpus,
    lexicons: Option<Lexicons>,
}

fn load(args: &CorpusArgs, config: Option<FeatureConfig>) -> Result<Loaded, CliError> {
    if let Some(c) = config {
        if c.uses_gaze() && args.fixations.is_none() {
            return Err(CliError::Usage(format!("--fixations is required for the `{c}` configuration")));
        }
        if c.sarcasm && args.lexicons.is_none() {
            return Err(CliError::Usage(format!("--lexicons is required for the `{c}` configuration")));
        }
    }
    let sentences = parse_sentences(&read(&args.sentences)?)?;
    let trials = match &args.fixations {
        Some(p) => parse_trials(&read(p)?)?,
        None => Vec::new(),
    };
    let (corpus, _) = validate_corpus(sentences, trials)?;
    let lexicons = args.lexicons.as_deref().map(Lexicons::load_dir).transpose()?;
    Ok(Loaded { corpus, lexicons })
}

fn feature_config(name: &str) -> Result<FeatureConfig, CliError> {
    name.parse().map_err(|e: DatasetError| CliError::Usage(e.to_string()))
}

fn classifier(kind: &str, m: &ModelArgs) -> Result<ClassifierConfig, CliError> {
    let kind: ClassifierKind = kind.parse().map_err(|e: LearnError| CliError::Usage(e.to_string()))?;
    let combine: MilrCombine = m.milr_combine.parse().map_err(CliError::Usage)?;
    let defaults = TrainConfig::default();
    let train = TrainConfig {
        seed: m.seed,
        epochs: m.epochs.unwrap_or(defaults.epochs),
        l2: m.l2.unwrap_or(defaults.l2),
        ..defaults
    };
    train.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(ClassifierConfig { kind, train, combine })
}

fn ranking_text(r: &sarcaze::stats::FeatureRanking) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>4}  {:<8} {:>12}  gaze", "rank", "feature", "merit");
    for (i, f) in r.features.iter().enumerate() {
        let _ = writeln!(
            s,
            "{:>4}  {:<8} {:>12.4}  {}",
            i + 1,
            f.name,
            f.merit,
            if is_gaze_feature(&f.name) { "yes" } else { "" }
        );
    }
    s
}

#[derive(Serialize)]
struct Prediction {
    sentence_id: u32,
    gold: Label,
    prediction: Label,
}

#[derive(Serialize)]
struct PredictOutput {
    schema_hash: String,
    predictions: Vec<Prediction>,
    metrics: Metrics,
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { corpus, out } => {
            let sentences = parse_sentences(&read(&corpus.sentences)?)?;
            let trials = match &corpus.fixations {
                Some(p) => parse_trials(&read(p)?)?,
                None => Vec::new(),
            };
            let (_, report) = validate_corpus(sentences, trials)?;
            if let Some(dir) = &corpus.lexicons {
                Lexicons::load_dir(dir)?;
            }
            emit(&out, &report, None)
        }
        Command::Features { corpus, model, out } => {
            let config = feature_config(&model.config)?;
            let data = load(&corpus, Some(config))?;
            let train = classifier(&model.classifier, &model)?.train;
            let m = assemble_averaged(&data.corpus, data.lexicons.as_ref(), config, model.unigram_k, &train)?;
            match out.format {
                Format::Csv => write_bytes(out.out.as_deref(), &m.to_csv()),
                _ => emit(&out, &m, None),
            }
        }
        Command::Train { corpus, model, out } => {
            let config = feature_config(&model.config)?;
            let clf = classifier(&model.classifier, &model)?;
            let data = load(&corpus, Some(config))?;
            let pre = precompute(&data.corpus, data.lexicons.as_ref(), config)?;
            let all: Vec<usize> = (0..pre.len()).collect();
            let labels = data.corpus.labels();
            let bundle = ModelBundle::fit(&pre, &labels, &all, data.lexicons.as_ref(), &clf, model.unigram_k)?;
            emit(&out, &bundle, None)
        }
        Command::Predict { model, corpus, out } => {
            let bundle: ModelBundle = serde_json::from_slice(&read(&model)?)
                .map_err(|e| CliError::Data(format!("{}: {e}", model.display())))?;
            let data = load(&corpus, Some(bundle.feature_config))?;
            let pre = precompute(&data.corpus, data.lexicons.as_ref(), bundle.feature_config)?;
            let all: Vec<usize> = (0..pre.len()).collect();
            let predicted = bundle.predict(&pre, &all)?;
            let gold = data.corpus.labels();
            let metrics = classification_metrics(&predicted, &gold).map_err(EvalError::from)?;
            let predictions = pre
                .sentences
                .iter()
                .zip(gold.iter().zip(&predicted))
                .map(|(s, (&g, &p))| Prediction {
                    sentence_id: s.id,
                    gold: g,
                    prediction: p,
                })
                .collect();
            let output = PredictOutput {
                schema_hash: bundle.schema.hash.clone(),
                predictions,
                metrics,
            };
            emit(&out, &output, None)
        }
        Command::Crossval {
            corpus,
            model,
            k,
            jobs,
            out,
        } => {
            let config = feature_config(&model.config)?;
            let clf = classifier(&model.classifier, &model)?;
            let data = load(&corpus, Some(config))?;
            let opts = EvalOptions {
                k,
                seed: model.seed,
                unigram_k: model.unigram_k,
                jobs,
            };
            let report = run_crossval(&data.corpus, data.lexicons.as_ref(), config, &clf, &opts)?;
            emit(&out, &report, Some(metrics_table(&[&report])))
        }
        Command::Compare {
            corpus,
            model,
            runs,
            k,
            alpha,
            mcnemar,
            jobs,
            out,
        } => {
            if runs.len() < 2 {
                return Err(CliError::Usage("compare needs at least two --run CLASSIFIER:CONFIG".into()));
            }
            let mut specs = Vec::new();
            for r in &runs {
                let (kind, config) = r
                    .split_once(':')
                    .ok_or_else(|| CliError::Usage(format!("--run `{r}` is not CLASSIFIER:CONFIG")))?;
                specs.push((classifier(kind, &model)?, feature_config(config)?));
            }
            let needs_gaze = specs.iter().find(|(_, c)| c.uses_gaze()).map(|(_, c)| *c);
            let needs_lex = specs.iter().find(|(_, c)| c.sarcasm).map(|(_, c)| *c);
            let data = load(&corpus, needs_gaze.or(needs_lex))?;
            if let Some(c) = needs_lex {
                if data.lexicons.is_none() {
                    return Err(CliError::Usage(format!("--lexicons is required for the `{c}` configuration")));
                }
            }
            let opts = EvalOptions {
                k,
                seed: model.seed,
                unigram_k: model.unigram_k,
                jobs,
            };
            let reports = specs
                .iter()
                .map(|(clf, config)| run_crossval(&data.corpus, data.lexicons.as_ref(), *config, clf, &opts))
                .collect::<Result<Vec<EvalReport>, _>>()?;
            let refs: Vec<&EvalReport> = reports.iter().collect();
            let method = match mcnemar {
                McNemarFlavor::Corrected => McNemarMethod::ContinuityCorrected,
                McNemarFlavor::Exact => McNemarMethod::ExactBinomial,
            };
            let cmp = run_comparison(&refs, alpha, method)?;
            let mut table = metrics_table(&refs);
            for p in &cmp.pairs {
                let m = &p.mcnemar;
                let odds = match (m.odds_ratio, m.odds_ratio_infinite) {
                    (Some(o), _) => format!("{o:.2}"),
                    (None, true) => "inf".into(),
                    (None, false) => "n/a".into(),
                };
                let _ = writeln!(
                    table,
                    "{} vs {}: b={} c={} chi2={:.3} p={:.3e} odds={} {}",
                    p.a,
                    p.b,
                    m.b,
                    m.c,
                    m.chi2,
                    m.p,
                    odds,
                    if m.significant { "significant" } else { "not significant" }
                );
            }
            emit(&out, &cmp, Some(table))
        }
        Command::Ablation {
            corpus,
            model,
            configs,
            fractions,
            out,
        } => {
            let names = if configs.is_empty() { vec![model.config.clone()] } else { configs };
            let configs = names.iter().map(|n| feature_config(n)).collect::<Result<Vec<_>, _>>()?;
            let clf = classifier(&model.classifier, &model)?;
            let strictest = configs
                .iter()
                .find(|c| c.uses_gaze())
                .or_else(|| configs.iter().find(|c| c.sarcasm))
                .copied();
            let data = load(&corpus, strictest)?;
            if configs.iter().any(|c| c.sarcasm) && data.lexicons.is_none() {
                return Err(CliError::Usage("--lexicons is required for sarcasm-block configurations".into()));
            }
            let report = run_ablation(
                &data.corpus,
                data.lexicons.as_ref(),
                &configs,
                &clf,
                &fractions,
                model.seed,
                model.unigram_k,
            )?;
            match (&out.out, out.format) {
                (Some(dir), Format::Json) => {
                    write_bytes(Some(&dir.join("ablation.json")), &to_json(&report))?;
                    write_bytes(Some(&dir.join("ablation.csv")), report.to_csv().as_bytes())?;
                    write_bytes(Some(&dir.join("ablation.svg")), &report.to_svg())
                }
                (_, Format::Csv) => write_bytes(out.out.as_deref(), report.to_csv().as_bytes()),
                _ => emit(&out, &report, Some(report.to_csv())),
            }
        }
        Command::Ttest { corpus, alpha, out } => {
            let data = load(&corpus, Some(FeatureConfig::GAZE))?;
            let table = run_ttest_table(&data.corpus, alpha)?;
            emit(&out, &table, Some(table.to_text()))
        }
        Command::Rank {
            corpus,
            model,
            method,
            bins,
            svg,
            out,
        } => {
            let config = feature_config(&model.config)?;
            let train = classifier(&model.classifier, &model)?.train;
            let data = load(&corpus, Some(config))?;
            let method = match method {
                Method::Chi2 => RankMethod::ChiSquared,
                Method::InfoGain => RankMethod::InfoGain,
            };
            let ranking = rank_features(
                &data.corpus,
                data.lexicons.as_ref(),
                config,
                model.unigram_k,
                &train,
                method,
                bins,
            )?;
            if let Some(path) = &svg {
                write_bytes(Some(path), &render_ranking_svg(&ranking, 20))?;
            }
            emit(&out, &ranking, Some(ranking_text(&ranking)))
        }
        Command::Render {
            corpus,
            sentence_id,
            participant,
            out,
        }
        | Command::RenderGraph {
            corpus,
            sentence_id,
            participant,
            out,
        } if corpus.fixations.is_none() => {
            let _ = (sentence_id, participant, out);
            Err(CliError::Usage("--fixations is required for rendering".into()))
        }
        Command::Render {
            corpus,
            sentence_id,
            participant,
            out,
        } => {
            let data = load(&corpus, None)?;
            let (trial, sentence) = find_trial(&data.corpus, sentence_id, &participant)?;
            write_bytes(out.as_deref(), &render_scanpath_svg(trial, sentence))
        }
        Command::RenderGraph {
            corpus,
            sentence_id,
            participant,
            out,
        } => {
            let data = load(&corpus, None)?;
            let (trial, sentence) = find_trial(&data.corpus, sentence_id, &participant)?;
            let graph = build_saliency_graph(trial, sentence).map_err(|e| CliError::Data(e.to_string()))?;
            write_bytes(out.as_deref(), &render_saliency_svg(&graph, sentence))
        }
        Command::Synth {
            seed,
            out,
            sentences,
            sarcastic,
            participants,
            duration_ratio,
            regression_boost,
            noise_std,
        } => {
            let defaults = SynthConfig::default();
            let config = SynthConfig {
                seed,
                n_sentences: sentences,
                n_sarcastic: sarcastic,
                n_participants: participants,
                duration_ratio,
                regression_boost: regression_boost.unwrap_or(defaults.regression_boost),
                noise_std: noise_std.unwrap_or(defaults.noise_std),
                ..defaults
            };
            let corpus = generate(&config)?;
            corpus.write_dir(&out)?;
            let (_, report) = validate_corpus(corpus.sentences, corpus.trials)?;
            write_bytes(None, &to_json(&report))
        }
    }
}

fn find_trial<'a>(
    corpus: &'a Corpus,
    sentence_id: u32,
    participant: &str,
) -> Result<(&'a sarcaze::corpus::Trial, &'a sarcaze::corpus::Sentence), CliError> {
    let sentence = corpus
        .sentence(sentence_id)
        .ok_or_else(|| CliError::Data(format!("no sentence {sentence_id}")))?;
    let trial = corpus
        .trial(sentence_id, participant)
        .ok_or_else(|| CliError::Data(format!("no trial for sentence {sentence_id}, participant {participant}")))?;
    Ok((trial, sentence))
}
