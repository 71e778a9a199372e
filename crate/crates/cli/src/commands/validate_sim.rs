//! `validate-sim`: within-item ranking agreement between simulated
//! engagement and real like counts.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;

use popcmt_core::corpus::load_corpus;
use popcmt_core::seeds::{streams, substream};
use popcmt_core::simulation::{build_audience, validate_simulator, DemographicPriors};

use crate::commands::simulate::interested_share_for;
use crate::config::{load_esi, BackendsFile};
use crate::exit::{Classify, CliResult, EXIT_OK};
use crate::provenance;
use crate::reports::{write_report, NdcgReport, NDCG_REPORT_VERSION};

#[derive(Debug, Args)]
pub struct ValidateSimArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub priors: PathBuf,
    #[arg(long)]
    pub esi: PathBuf,
    #[arg(long)]
    pub judge: PathBuf,
    #[arg(long)]
    pub report: PathBuf,
    #[arg(long, default_value_t = 40)]
    pub n_agents: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub in_flight: usize,
}

pub fn run(args: &ValidateSimArgs) -> CliResult<i32> {
    let backends = BackendsFile::load(&args.judge).config_err()?;
    let judge = backends.primary_judge().config_err()?;
    let esi = load_esi(&args.esi).config_err()?;
    let priors = DemographicPriors::load(&args.priors).core_err()?;
    let corpus = load_corpus(&args.corpus).data_err()?;

    let audience_seed = substream(args.seed, streams::AUDIENCE);
    let outcome = validate_simulator(
        &corpus,
        |item| {
            let p = interested_share_for(item, &esi, judge.as_ref())?;
            build_audience(&priors, p, args.n_agents, audience_seed)
        },
        judge.as_ref(),
        args.in_flight,
    )
    .core_err()?;

    let mut backend_ids = BTreeMap::new();
    backend_ids.insert("judge".to_string(), judge.identifier());
    let report = NdcgReport {
        schema_version: NDCG_REPORT_VERSION.to_string(),
        provenance: provenance::build(&(&esi, &priors, args.n_agents), args.seed, backend_ids),
        mean_ndcg: outcome.mean_ndcg,
        items_evaluated: outcome.items_evaluated,
        items_skipped: outcome.items_skipped,
        per_item: outcome.per_item,
    };
    write_report(&args.report, &report).data_err()?;
    eprintln!(
        "mean ndcg {:.4} over {} items ({} skipped)",
        report.mean_ndcg, report.items_evaluated, report.items_skipped
    );
    Ok(EXIT_OK)
}
