//! `split`: stratified train/val/test partition of a labeled corpus.

use std::path::PathBuf;

use anyhow::Context;
use clap::Args;

use popcmt_core::corpus::{read_corpus, write_corpus, CorpusFormat};
use popcmt_core::labeling::{split_dataset, SplitConfig, StratifyKey};
use popcmt_core::seeds::{streams, substream};
use popcmt_core::types::{Comment, ContentItem};

use crate::exit::{Classify, CliResult, EXIT_OK};

#[derive(Debug, Args)]
pub struct SplitArgs {
    /// Input labeled corpus.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Comma-separated train,val,test fractions.
    #[arg(long, default_value = "0.8,0.1,0.1")]
    pub ratios: String,
    /// Root seed; the split stream is derived from it.
    #[arg(long)]
    pub seed: u64,
    /// Output directory for train.jsonl / val.jsonl / test.jsonl.
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Stratify by publication month.
    #[arg(long, default_value_t = true)]
    pub by_time: bool,
    /// Stratify by content category.
    #[arg(long, default_value_t = true)]
    pub by_category: bool,
}

fn parse_ratios(text: &str) -> anyhow::Result<[f64; 3]> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .context("ratios must be three comma-separated numbers")?;
    if parts.len() != 3 {
        anyhow::bail!("expected exactly three ratios, got {}", parts.len());
    }
    Ok([parts[0], parts[1], parts[2]])
}

pub fn run(args: &SplitArgs) -> CliResult<i32> {
    let ratios = parse_ratios(&args.ratios).config_err()?;
    let mut stratify_by = Vec::new();
    if args.by_time {
        stratify_by.push(StratifyKey::PublishTime);
    }
    if args.by_category {
        stratify_by.push(StratifyKey::Category);
    }
    let cfg = SplitConfig {
        ratios,
        stratify_by,
        seed: substream(args.seed, streams::LABELING_SPLIT),
    };

    let (items, comments) = read_corpus(&args.input, CorpusFormat::JsonLines).data_err()?;
    let outcome = split_dataset(&items, &cfg).core_err()?;
    for warning in &outcome.warnings {
        eprintln!(
            "warning: stratum {} has only {} item(s)",
            warning.stratum, warning.size
        );
    }

    std::fs::create_dir_all(&args.out_dir).data_err()?;
    for (name, split_items) in [
        ("train", &outcome.train),
        ("val", &outcome.val),
        ("test", &outcome.test),
    ] {
        let split_comments: Vec<Comment> = comments
            .iter()
            .filter(|c| split_items.iter().any(|i| i.id == c.content_id))
            .cloned()
            .collect();
        let sorted_items: Vec<ContentItem> = {
            let mut v = split_items.clone();
            v.sort_by(|a, b| a.id.cmp(&b.id));
            v
        };
        write_corpus(
            &args.out_dir.join(format!("{name}.jsonl")),
            &sorted_items,
            &split_comments,
        )
        .data_err()?;
        eprintln!(
            "{name}: {} items, {} comments",
            sorted_items.len(),
            split_comments.len()
        );
    }
    Ok(EXIT_OK)
}
