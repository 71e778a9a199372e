//! `simulate`: agent-based engagement scores for candidate comments.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::Context;
use clap::Args;

use popcmt_core::corpus::load_corpus;
use popcmt_core::seeds::{streams, substream};
use popcmt_core::simulation::{
    build_audience, compute_interested_share, elicit_determinants, elicit_share_directly,
    simulate_engagement, AggregationMode, DemographicPriors, EsiConfig, ShareMode,
};
use popcmt_core::types::ContentItem;

use crate::config::{load_candidates, load_esi, BackendsFile};
use crate::exit::{Classify, CliResult, EXIT_OK};
use crate::provenance;
use crate::reports::{write_report, UbsReport, UbsRow, UBS_REPORT_VERSION};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub candidates: PathBuf,
    #[arg(long)]
    pub corpus: PathBuf,
    /// Demographic priors JSON.
    #[arg(long)]
    pub priors: PathBuf,
    /// Exposure (ESI) config JSON.
    #[arg(long)]
    pub esi: PathBuf,
    /// Backends config; judges[0] plays every agent.
    #[arg(long)]
    pub judge: PathBuf,
    #[arg(long)]
    pub report: PathBuf,
    #[arg(long, default_value_t = 40)]
    pub n_agents: usize,
    #[arg(long)]
    pub seed: u64,
    /// Also report the like-threshold counting aggregate.
    #[arg(long, default_value_t = false)]
    pub counting: bool,
    #[arg(long, default_value_t = 4)]
    pub in_flight: usize,
}

/// Item-level interested share under the configured mode.
pub fn interested_share_for(
    item: &ContentItem,
    esi: &EsiConfig,
    judge: &dyn popcmt_core::backends::JudgeBackend,
) -> popcmt_core::Result<f64> {
    match esi.mode {
        ShareMode::Linear => {
            let determinants = elicit_determinants(item, judge)?;
            let base = esi.base_for(item.platform.as_str(), &item.category);
            Ok(compute_interested_share(base, esi, &determinants))
        }
        ShareMode::JudgeDirect => elicit_share_directly(item, judge, esi),
    }
}

pub fn run(args: &SimulateArgs) -> CliResult<i32> {
    let backends = BackendsFile::load(&args.judge).config_err()?;
    let judge = backends.primary_judge().config_err()?;
    let esi = load_esi(&args.esi).config_err()?;
    let priors = DemographicPriors::load(&args.priors).core_err()?;
    let corpus = load_corpus(&args.corpus).data_err()?;
    let candidates = load_candidates(&args.candidates).data_err()?;

    let mode = if args.counting {
        AggregationMode::WithCounting
    } else {
        AggregationMode::WeightedMean
    };
    let audience_seed = substream(args.seed, streams::AUDIENCE);

    let mut rows = Vec::with_capacity(candidates.len());
    let mut total = 0.0;
    for candidate in &candidates {
        let item = corpus
            .item(&candidate.content_id)
            .with_context(|| format!("candidate {} references unknown content", candidate.id))
            .data_err()?;
        let p_interested = interested_share_for(item, &esi, judge.as_ref()).core_err()?;
        let roster =
            build_audience(&priors, p_interested, args.n_agents, audience_seed).core_err()?;
        let outcome = simulate_engagement(
            item,
            &candidate.text,
            &roster,
            judge.as_ref(),
            mode,
            args.in_flight,
        )
        .with_context(|| format!("candidate {}", candidate.id))
        .core_err()?;
        total += outcome.ubs;
        rows.push(UbsRow {
            id: candidate.id.clone(),
            ubs: outcome.ubs,
            counting_ubs: outcome.counting_ubs,
            p_interested,
            per_subgroup: outcome.per_subgroup,
        });
    }

    let mean = if rows.is_empty() {
        0.0
    } else {
        total / rows.len() as f64
    };
    let mut backend_ids = BTreeMap::new();
    backend_ids.insert("judge".to_string(), judge.identifier());
    let report = UbsReport {
        schema_version: UBS_REPORT_VERSION.to_string(),
        provenance: provenance::build(&(&esi, &priors, args.n_agents), args.seed, backend_ids),
        candidates: rows,
        mean_ubs: mean,
    };
    write_report(&args.report, &report).data_err()?;
    eprintln!(
        "simulated {} candidates (mean ubs {:.2})",
        report.candidates.len(),
        mean
    );
    Ok(EXIT_OK)
}
