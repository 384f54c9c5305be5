use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sarcaze", version, about = "Sarcasm detection from eye-movement and textual features")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Chi2,
    InfoGain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum McNemarFlavor {
    Corrected,
    Exact,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Sentences CSV (`sentence_id,label,text[,polarity,aspect]`).
    #[arg(long)]
    pub sentences: PathBuf,
    /// Fixations CSV; required by gaze and reading-time configurations.
    #[arg(long)]
    pub fixations: Option<PathBuf>,
    /// Directory holding positive.txt, negative.txt and implicit_phrases.tsv.
    #[arg(long)]
    pub lexicons: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// unigram | sarcasm | gaze | gaze+sarcasm | reading-time
    #[arg(long, default_value = "gaze+sarcasm")]
    pub config: String,
    /// gnb | logreg | svm | mlp | milr
    #[arg(long, default_value = "milr")]
    pub classifier: String,
    #[arg(long, env = "SARCAZE_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Principal components kept from the unigram matrix.
    #[arg(long, default_value_t = 50)]
    pub unigram_k: usize,
    /// noisy-or | arithmetic-mean
    #[arg(long, default_value = "noisy-or")]
    pub milr_combine: String,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub l2: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output file (directory for commands writing several files); stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and check a corpus; prints the validation report.
    Validate {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Dump the feature matrix (`--format csv` or json with schema).
    Features {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Train on the whole corpus and write a model bundle.
    Train {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classify a corpus with a trained model bundle.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Stratified k-fold cross-validation.
    Crossval {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cross-validate several CLASSIFIER:CONFIG runs on shared folds and compare them pairwise.
    Compare {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// e.g. `milr:gaze+sarcasm`; at least two.
        #[arg(long = "run", required = true, num_args = 1)]
        runs: Vec<String>,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "corrected")]
        mcnemar: McNemarFlavor,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Training-size ablation on a stratified 80:20 split.
    Ablation {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Feature configurations to trace; defaults to `--config`.
        #[arg(long = "configs", value_delimiter = ',')]
        configs: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.7, 0.8, 0.9, 1.0])]
        fractions: Vec<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Per-participant Welch t-test of reading time, sarcastic vs non-sarcastic.
    Ttest {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Rank features by chi-squared or information gain.
    Rank {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value = "chi2")]
        method: Method,
        #[arg(long, default_value_t = 10)]
        bins: usize,
        /// Also write a bar chart of the top 20 features.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Draw one trial's scanpath as SVG.
    Render {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        sentence_id: u32,
        #[arg(long)]
        participant: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw one trial's saliency graph as SVG.
    RenderGraph {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        sentence_id: u32,
        #[arg(long)]
        participant: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic corpus with gaze logs and lexicons.
    Synth {
        #[arg(long, env = "SARCAZE_SEED", default_value_t = 11)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1000)]
        sentences: usize,
        #[arg(long, default_value_t = 350)]
        sarcastic: usize,
        #[arg(long, default_value_t = 7)]
        participants: usize,
        #[arg(long, default_value_t = 1.5)]
        duration_ratio: f64,
        #[arg(long)]
        regression_boost: Option<f64>,
        #[arg(long)]
        noise_std: Option<f64>,
    },
}
