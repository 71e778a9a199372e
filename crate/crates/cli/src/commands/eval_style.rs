//! `eval-style`: panel-judged stylistic dimension scores.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::Context;
use clap::Args;

use popcmt_core::corpus::load_corpus;
use popcmt_core::style_judge::{score_style, JudgePanel};

use crate::config::{load_candidates, BackendsFile};
use crate::exit::{Classify, CliResult, EXIT_OK};
use crate::provenance;
use crate::reports::{write_report, StyleReport, StyleRow, STYLE_REPORT_VERSION};

#[derive(Debug, Args)]
pub struct EvalStyleArgs {
    #[arg(long)]
    pub candidates: PathBuf,
    #[arg(long)]
    pub corpus: PathBuf,
    /// Backends config; all entries under "judges" form the panel.
    #[arg(long)]
    pub judges: PathBuf,
    #[arg(long)]
    pub report: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Concurrent judge calls.
    #[arg(long, default_value_t = 4)]
    pub in_flight: usize,
}

pub fn run(args: &EvalStyleArgs) -> CliResult<i32> {
    let backends = BackendsFile::load(&args.judges).config_err()?;
    let judges = backends.judges().config_err()?;
    let corpus = load_corpus(&args.corpus).data_err()?;
    let candidates = load_candidates(&args.candidates).data_err()?;

    let judge_refs: Vec<&dyn popcmt_core::backends::JudgeBackend> =
        judges.iter().map(|j| j.as_ref()).collect();
    let mut panel = JudgePanel::new(judge_refs).config_err()?;
    panel.in_flight = args.in_flight;

    let mut rows = Vec::with_capacity(candidates.len());
    for candidate in &candidates {
        let item = corpus
            .item(&candidate.content_id)
            .with_context(|| format!("candidate {} references unknown content", candidate.id))
            .data_err()?;
        let judgement = score_style(&candidate.text, item, &panel)
            .with_context(|| format!("candidate {}", candidate.id))
            .core_err()?;
        rows.push(StyleRow {
            id: candidate.id.clone(),
            le: judgement.scores.le,
            ci: judgement.scores.ci,
            er: judgement.scores.er,
            sci: judgement.scores.sci,
            srs: judgement.scores.srs,
            dropped_judges: judgement.dropped,
        });
    }

    let mut backend_ids = BTreeMap::new();
    for (idx, judge) in judges.iter().enumerate() {
        backend_ids.insert(format!("judge{idx}"), judge.identifier());
    }
    let report = StyleReport {
        schema_version: STYLE_REPORT_VERSION.to_string(),
        provenance: provenance::build(&args.in_flight, args.seed, backend_ids),
        candidates: rows,
    };
    write_report(&args.report, &report).data_err()?;
    eprintln!("styled {} candidates", report.candidates.len());
    Ok(EXIT_OK)
}
