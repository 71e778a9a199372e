//! `label`: assign popularity labels to a raw corpus.

use std::path::PathBuf;

use clap::Args;

use popcmt_core::corpus::{read_corpus, write_corpus, CorpusFormat};
use popcmt_core::labeling::{label_corpus, LabelingConfig};

use crate::exit::{Classify, CliResult, EXIT_OK};

#[derive(Debug, Args)]
pub struct LabelArgs {
    /// Input corpus (JSON Lines).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output labeled corpus.
    #[arg(long)]
    pub out: PathBuf,
    /// Popular gate: only the top-N comments by likes qualify.
    #[arg(long, default_value_t = 15)]
    pub top_rank: usize,
    /// Relative threshold: strictly above this fraction of the top likes.
    #[arg(long = "rel", default_value_t = 0.10)]
    pub relative_threshold: f64,
    /// Absolute threshold: at least this many likes.
    #[arg(long = "abs", default_value_t = 2000)]
    pub absolute_threshold: u64,
    /// Negatives must have at most this many likes.
    #[arg(long, default_value_t = 10)]
    pub negative_max_likes: u64,
    /// Cap on negatives per item.
    #[arg(long, default_value_t = 10)]
    pub negatives_per_item: usize,
    /// Local-calendar offset (hours east of UTC) for same-day checks.
    #[arg(long, default_value_t = 8)]
    pub utc_offset: i32,
}

pub fn run(args: &LabelArgs) -> CliResult<i32> {
    let cfg = LabelingConfig {
        top_rank: args.top_rank,
        relative_threshold: args.relative_threshold,
        absolute_threshold: args.absolute_threshold,
        negative_max_likes: args.negative_max_likes,
        negatives_per_item: args.negatives_per_item,
        utc_offset_hours: args.utc_offset,
        ..LabelingConfig::default()
    };
    let (items, comments) = read_corpus(&args.input, CorpusFormat::JsonLines).data_err()?;
    let labeled = label_corpus(&items, &comments, &cfg);
    let popular = labeled
        .iter()
        .filter(|c| c.label == Some(popcmt_core::Label::Popular))
        .count();
    let negative = labeled
        .iter()
        .filter(|c| c.label == Some(popcmt_core::Label::NonPopular))
        .count();
    write_corpus(&args.out, &items, &labeled).data_err()?;
    eprintln!(
        "labeled {} comments across {} items: {popular} popular, {negative} non-popular",
        labeled.len(),
        items.len()
    );
    Ok(EXIT_OK)
}
