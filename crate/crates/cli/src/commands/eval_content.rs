//! `eval-content`: weighted multi-reference similarity metrics against an
//! item's popular comments.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;

use popcmt_core::content_quality::{
    weighted_max_score, Metric, TokenizerConfig, WeightingConfig,
};
use popcmt_core::corpus::load_corpus;
use popcmt_core::types::{Comment, Label};

use crate::config::{load_candidates, BackendsFile};
use crate::exit::{Classify, CliResult, EXIT_OK};
use crate::provenance;
use crate::reports::{write_report, ContentReport, ContentRow, CONTENT_REPORT_VERSION};

#[derive(Debug, Args)]
pub struct EvalContentArgs {
    /// Candidates JSONL: {id, content_id, text} per line.
    #[arg(long)]
    pub candidates: PathBuf,
    /// Labeled corpus providing the popular references.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Comma-separated subset of bleu1,meteor,embedf1.
    #[arg(long, default_value = "bleu1,meteor,embedf1")]
    pub metrics: String,
    /// Backends config (embedder needed for embedf1).
    #[arg(long)]
    pub backends: PathBuf,
    /// Output report path.
    #[arg(long)]
    pub report: PathBuf,
    /// Root seed echoed into provenance (metrics themselves are seedless).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_metrics(text: &str) -> anyhow::Result<Vec<Metric>> {
    text.split(',')
        .map(|m| match m.trim() {
            "bleu1" => Ok(Metric::Bleu1),
            "meteor" => Ok(Metric::Meteor),
            "embedf1" => Ok(Metric::EmbedF1),
            other => bail!("unknown metric {other:?}"),
        })
        .collect()
}

pub fn run(args: &EvalContentArgs) -> CliResult<i32> {
    let metrics = parse_metrics(&args.metrics).config_err()?;
    let backends = BackendsFile::load(&args.backends).config_err()?;
    let embedder = backends.embedder().config_err()?;
    let corpus = load_corpus(&args.corpus).data_err()?;
    let candidates = load_candidates(&args.candidates).data_err()?;

    let tokenizer = TokenizerConfig::default();
    let weighting = WeightingConfig::default();

    let mut rows = Vec::with_capacity(candidates.len());
    for candidate in &candidates {
        let references: Vec<Comment> = corpus
            .comments_for(&candidate.content_id)
            .into_iter()
            .filter(|c| c.label == Some(Label::Popular))
            .cloned()
            .collect();
        let mut row = ContentRow {
            id: candidate.id.clone(),
            content_id: candidate.content_id.clone(),
            bleu1: None,
            meteor: None,
            embed_f1: None,
            argmax_ref: BTreeMap::new(),
            weights_used: Vec::new(),
        };
        for &metric in &metrics {
            let scored = weighted_max_score(
                &candidate.text,
                &references,
                metric,
                &tokenizer,
                &weighting,
                embedder.as_ref(),
            )
            .with_context(|| format!("candidate {}", candidate.id))
            .core_err()?;
            let (slot, name) = match metric {
                Metric::Bleu1 => (&mut row.bleu1, "bleu1"),
                Metric::Meteor => (&mut row.meteor, "meteor"),
                Metric::EmbedF1 => (&mut row.embed_f1, "embed_f1"),
            };
            *slot = Some(scored.score);
            row.argmax_ref.insert(name.to_string(), scored.argmax_ref);
            row.weights_used = scored.weights;
        }
        rows.push(row);
    }

    let mut backend_ids = BTreeMap::new();
    backend_ids.insert("embedder".to_string(), embedder.identifier());
    let report = ContentReport {
        schema_version: CONTENT_REPORT_VERSION.to_string(),
        provenance: provenance::build(
            &(&args.metrics, &tokenizer, &weighting),
            args.seed,
            backend_ids,
        ),
        candidates: rows,
    };
    write_report(&args.report, &report).data_err()?;
    eprintln!("evaluated {} candidates", report.candidates.len());
    Ok(EXIT_OK)
}
