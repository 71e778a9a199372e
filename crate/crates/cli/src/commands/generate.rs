//! `generate`: run the style-resonant generation pipeline for one item.

use std::path::PathBuf;

use clap::Args;

use popcmt_core::corpus::load_corpus;
use popcmt_core::resonance::{
    generate_comment, PipelineConfig, PlannerConfig, RetrievalConfig, SuperpositionConfig,
};
use popcmt_core::content_quality::WeightingConfig;
use popcmt_core::seeds::{streams, substream};
use popcmt_core::types::ContentItem;

use crate::config::BackendsFile;
use crate::exit::{Classify, CliResult, EXIT_OK};

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Content item JSON (single object).
    #[arg(long)]
    pub context: PathBuf,
    /// Labeled corpus to draw popular comments from.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Backends config (embedder, generator, judges).
    #[arg(long)]
    pub backends: PathBuf,
    /// Trace output path (JSON).
    #[arg(long)]
    pub trace: PathBuf,
    /// Final comment text output path.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub n_candidates: usize,
    #[arg(long, default_value_t = 0.05)]
    pub noise_std: f64,
    #[arg(long, default_value_t = 20)]
    pub retrieval_k: usize,
    /// Single polish pass over the collapsed candidate.
    #[arg(long, default_value_t = false)]
    pub refine: bool,
}

pub fn run(args: &GenerateArgs) -> CliResult<i32> {
    let backends = BackendsFile::load(&args.backends).config_err()?;
    let embedder = backends.embedder().config_err()?;
    let generator = backends.generator().config_err()?;
    let judge = backends.primary_judge().config_err()?;

    let context_text = std::fs::read_to_string(&args.context).data_err()?;
    let context: ContentItem = serde_json::from_str(&context_text).data_err()?;
    let corpus = load_corpus(&args.corpus).data_err()?;

    let cfg = PipelineConfig {
        retrieval: RetrievalConfig {
            k: args.retrieval_k,
            min_similarity: 0.0,
        },
        planner: PlannerConfig::default(),
        superposition: SuperpositionConfig {
            n_candidates: args.n_candidates,
            noise_std: args.noise_std,
            seed: substream(args.seed, streams::SUPERPOSITION),
        },
        weighting: WeightingConfig::default(),
        exemplar_count: 3,
        refine: args.refine,
    };

    let (text, trace) = generate_comment(
        &context,
        &corpus,
        embedder.as_ref(),
        judge.as_ref(),
        generator.as_ref(),
        &cfg,
    )
    .core_err()?;

    let mut trace_json = serde_json::to_string_pretty(&trace).data_err()?;
    trace_json.push('\n');
    std::fs::write(&args.trace, trace_json).data_err()?;
    std::fs::write(&args.out, format!("{text}\n")).data_err()?;
    eprintln!(
        "generated from {} candidates (selected #{}, coherence {:.4})",
        trace.candidates.len(),
        trace.selected_index,
        trace.candidates[trace.selected_index].coherence
    );
    Ok(EXIT_OK)
}
