//! `train-predictor`: per-platform popularity model training.

use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;

use popcmt_core::corpus::load_corpus;
use popcmt_core::predictor::{build_features, save, train, Example, TrainConfig};
use popcmt_core::seeds::{streams, substream};
use popcmt_core::types::{Label, Platform};

use crate::config::BackendsFile;
use crate::exit::{Classify, CliResult, EXIT_OK};

#[derive(Debug, Args)]
pub struct TrainPredictorArgs {
    /// Labeled training corpus.
    #[arg(long)]
    pub train: PathBuf,
    /// Labeled validation corpus.
    #[arg(long)]
    pub val: PathBuf,
    /// Platform whose engagement culture this model learns.
    #[arg(long)]
    pub platform: String,
    /// Output model path (JSON).
    #[arg(long)]
    pub out: PathBuf,
    /// Backends config (embedder).
    #[arg(long)]
    pub backends: PathBuf,
    #[arg(long, default_value_t = 50)]
    pub epochs: usize,
    #[arg(long, default_value_t = 32)]
    pub batch_size: usize,
    #[arg(long, default_value_t = 0.01)]
    pub learning_rate: f64,
    #[arg(long, default_value_t = 128)]
    pub hidden: usize,
    #[arg(long, default_value_t = 0.1)]
    pub tau: f64,
    #[arg(long, default_value_t = 0.5)]
    pub lambda_scl: f64,
    #[arg(long)]
    pub seed: u64,
}

/// Labeled (features, class) pairs for one platform.
fn collect_examples(
    corpus: &popcmt_core::corpus::Corpus,
    platform: &Platform,
    embedder: &dyn popcmt_core::backends::EmbedderBackend,
) -> CliResult<Vec<Example>> {
    let mut examples = Vec::new();
    for item in corpus.items.iter().filter(|i| &i.platform == platform) {
        for comment in corpus.comments_for(&item.id) {
            let class = match comment.label {
                Some(Label::Popular) => 1u8,
                Some(Label::NonPopular) => 0u8,
                None => continue,
            };
            let features = build_features(item, comment, embedder).core_err()?;
            examples.push((features.values, class));
        }
    }
    Ok(examples)
}

pub fn run(args: &TrainPredictorArgs) -> CliResult<i32> {
    let backends = BackendsFile::load(&args.backends).config_err()?;
    let embedder = backends.embedder().config_err()?;
    let platform = Platform::from(args.platform.as_str());

    let train_corpus = load_corpus(&args.train).data_err()?;
    let val_corpus = load_corpus(&args.val).data_err()?;
    let train_set = collect_examples(&train_corpus, &platform, embedder.as_ref())?;
    let val_set = collect_examples(&val_corpus, &platform, embedder.as_ref())?;
    if train_set.is_empty() {
        return Err(anyhow!(
            "no labeled comments for platform {} in {}",
            platform,
            args.train.display()
        ))
        .data_err();
    }

    let cfg = TrainConfig {
        epochs: args.epochs,
        batch_size: args.batch_size,
        learning_rate: args.learning_rate,
        hidden_dim: args.hidden,
        temperature: args.tau,
        lambda_scl: args.lambda_scl,
        seed: substream(args.seed, streams::TRAINING),
    };
    let mut outcome = train(&train_set, &val_set, &cfg).core_err()?;
    outcome.model.train_meta.platform = platform.as_str().to_string();
    outcome.model.train_meta.seed = args.seed;
    save(&outcome.model, &args.out).data_err()?;
    eprintln!(
        "trained on {} examples (best epoch {}, val f1 {:.4}); saved {}",
        train_set.len(),
        outcome.best_epoch,
        outcome.best_val_f1,
        args.out.display()
    );
    Ok(EXIT_OK)
}
