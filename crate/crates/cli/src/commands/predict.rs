//! `predict`: popularity probabilities for candidate comments.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::Args;

use popcmt_core::corpus::load_corpus;
use popcmt_core::predictor::{load, predict};
use popcmt_core::types::Comment;

use crate::config::{load_candidates, BackendsFile};
use crate::exit::{Classify, CliResult, EXIT_OK};
use crate::provenance;
use crate::reports::{write_report, PopReport, PopRow, POP_REPORT_VERSION};

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Trained model JSON.
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub candidates: PathBuf,
    /// Corpus supplying the content metadata candidates refer to.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Backends config (embedder; must match the one used in training).
    #[arg(long)]
    pub backends: PathBuf,
    #[arg(long)]
    pub report: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run(args: &PredictArgs) -> CliResult<i32> {
    if !args.model.exists() {
        return Err(anyhow!(
            "predictor model not found at {}; train one with `popcmt train-predictor`",
            args.model.display()
        ))
        .data_err();
    }
    let model = load(&args.model).data_err()?;
    let backends = BackendsFile::load(&args.backends).config_err()?;
    let embedder = backends.embedder().config_err()?;
    let corpus = load_corpus(&args.corpus).data_err()?;
    let candidates = load_candidates(&args.candidates).data_err()?;

    let mut rows = Vec::with_capacity(candidates.len());
    let mut total = 0.0;
    for candidate in &candidates {
        let item = corpus
            .item(&candidate.content_id)
            .with_context(|| format!("candidate {} references unknown content", candidate.id))
            .data_err()?;
        let comment = Comment {
            id: candidate.id.clone(),
            content_id: candidate.content_id.clone(),
            text: candidate.text.clone(),
            like_count: 0,
            publish_time: item.publish_time,
            label: None,
        };
        let probability = predict(&model, item, &comment, embedder.as_ref())
            .with_context(|| format!("candidate {}", candidate.id))
            .core_err()?;
        total += probability;
        rows.push(PopRow {
            id: candidate.id.clone(),
            probability,
        });
    }

    let mean = if rows.is_empty() {
        0.0
    } else {
        total / rows.len() as f64
    };
    let mut backend_ids = BTreeMap::new();
    backend_ids.insert("embedder".to_string(), embedder.identifier());
    backend_ids.insert(
        "model".to_string(),
        format!(
            "predictor/{}@{}",
            model.train_meta.platform, model.train_meta.seed
        ),
    );
    let report = PopReport {
        schema_version: POP_REPORT_VERSION.to_string(),
        provenance: provenance::build(&model.train_meta, args.seed, backend_ids),
        candidates: rows,
        mean_probability: mean,
        mean_probability_x100: mean * 100.0,
    };
    write_report(&args.report, &report).data_err()?;
    eprintln!(
        "predicted {} candidates (mean {:.4})",
        report.candidates.len(),
        mean
    );
    Ok(EXIT_OK)
}
