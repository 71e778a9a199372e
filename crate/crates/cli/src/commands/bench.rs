//! `bench`: the consolidated six-column benchmark over candidate sets.
//!
//! For every candidate set the report carries one row with the means of
//! BLEU-1, METEOR, embedding F1, SRS, popularity prediction and the
//! simulated engagement score, all on the 0-100 scale, plus the
//! per-dimension style breakdown. Candidate-level failures are collected
//! instead of aborting the run; a nonempty error list marks the report
//! partial (exit code 5).

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;

use popcmt_core::content_quality::{weighted_max_score, Metric};
use popcmt_core::corpus::{load_corpus, Corpus};
use popcmt_core::predictor::{load as load_model, predict, PredictorModel};
use popcmt_core::seeds::{streams, substream};
use popcmt_core::simulation::{build_audience, simulate_engagement, AggregationMode};
use popcmt_core::style_judge::{score_style, JudgePanel};
use popcmt_core::types::{Comment, Label};

use crate::commands::simulate::interested_share_for;
use crate::config::{load_candidates, BenchConfig, Candidate};
use crate::exit::{Classify, CliResult, EXIT_OK, EXIT_PARTIAL};
use crate::provenance;
use crate::reports::{
    write_report, BenchError, BenchReport, BenchRow, SrsDimensions, BENCH_REPORT_VERSION,
};

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Consolidated bench config (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output report path.
    #[arg(long)]
    pub report: PathBuf,
}

#[derive(Default)]
struct Accumulator {
    bleu1: f64,
    meteor: f64,
    embed_f1: f64,
    le: f64,
    ci: f64,
    er: f64,
    sci: f64,
    srs: f64,
    popularity: f64,
    ubs: f64,
    count: usize,
}

struct CandidateScores {
    bleu1: f64,
    meteor: f64,
    embed_f1: f64,
    style: popcmt_core::style_judge::StyleScores,
    popularity: f64,
    ubs: f64,
}

#[allow(clippy::too_many_arguments)]
fn evaluate_candidate(
    candidate: &Candidate,
    corpus: &Corpus,
    model: &PredictorModel,
    cfg: &BenchConfig,
    priors: &popcmt_core::simulation::DemographicPriors,
    embedder: &dyn popcmt_core::backends::EmbedderBackend,
    panel: &JudgePanel,
    sim_judge: &dyn popcmt_core::backends::JudgeBackend,
    audience_seed: u64,
) -> Result<CandidateScores, (String, anyhow::Error)> {
    let item = corpus
        .item(&candidate.content_id)
        .ok_or_else(|| ("lookup".to_string(), anyhow!("unknown content {}", candidate.content_id)))?;
    let references: Vec<Comment> = corpus
        .comments_for(&candidate.content_id)
        .into_iter()
        .filter(|c| c.label == Some(Label::Popular))
        .cloned()
        .collect();

    let metric = |m: Metric| {
        weighted_max_score(
            &candidate.text,
            &references,
            m,
            &cfg.tokenizer,
            &cfg.weighting,
            embedder,
        )
        .map(|s| s.score)
        .map_err(|e| ("content-quality".to_string(), e.into()))
    };
    let bleu1 = metric(Metric::Bleu1)?;
    let meteor = metric(Metric::Meteor)?;
    let embed_f1 = metric(Metric::EmbedF1)?;

    let style = score_style(&candidate.text, item, panel)
        .map_err(|e| ("style".to_string(), e.into()))?
        .scores;

    let comment = Comment {
        id: candidate.id.clone(),
        content_id: candidate.content_id.clone(),
        text: candidate.text.clone(),
        like_count: 0,
        publish_time: item.publish_time,
        label: None,
    };
    let popularity = predict(model, item, &comment, embedder)
        .map_err(|e| ("predict".to_string(), e.into()))?;

    let p_interested = interested_share_for(item, &cfg.esi, sim_judge)
        .map_err(|e| ("exposure".to_string(), e.into()))?;
    let roster = build_audience(priors, p_interested, cfg.n_agents, audience_seed)
        .map_err(|e| ("audience".to_string(), e.into()))?;
    let ubs = simulate_engagement(
        item,
        &candidate.text,
        &roster,
        sim_judge,
        AggregationMode::WeightedMean,
        cfg.in_flight,
    )
    .map_err(|e| ("simulate".to_string(), e.into()))?
    .ubs;

    Ok(CandidateScores {
        bleu1,
        meteor,
        embed_f1,
        style,
        popularity,
        ubs,
    })
}

pub fn run(args: &BenchArgs) -> CliResult<i32> {
    let cfg = BenchConfig::load(&args.config).config_err()?;
    if !cfg.model.exists() {
        return Err(anyhow!(
            "predictor model not found at {}; train one with `popcmt train-predictor`",
            cfg.model.display()
        ))
        .data_err();
    }
    let model = load_model(&cfg.model).data_err()?;
    let embedder = cfg.backends.embedder().config_err()?;
    let judges = cfg.backends.judges().config_err()?;
    let judge_refs: Vec<&dyn popcmt_core::backends::JudgeBackend> =
        judges.iter().map(|j| j.as_ref()).collect();
    let mut panel = JudgePanel::new(judge_refs).config_err()?;
    panel.in_flight = cfg.in_flight;
    let sim_judge = judges[0].as_ref();
    let corpus = load_corpus(&cfg.corpus).data_err()?;
    let priors = popcmt_core::simulation::DemographicPriors::load(&cfg.priors).core_err()?;
    let audience_seed = substream(cfg.seed, streams::AUDIENCE);

    let mut rows = Vec::new();
    let mut errors: Vec<BenchError> = Vec::new();
    for set in &cfg.candidate_sets {
        let candidates = load_candidates(&set.path).data_err()?;
        let mut acc = Accumulator::default();
        for candidate in &candidates {
            match evaluate_candidate(
                candidate,
                &corpus,
                &model,
                &cfg,
                &priors,
                embedder.as_ref(),
                &panel,
                sim_judge,
                audience_seed,
            ) {
                Ok(scores) => {
                    acc.bleu1 += scores.bleu1;
                    acc.meteor += scores.meteor;
                    acc.embed_f1 += scores.embed_f1;
                    acc.le += scores.style.le;
                    acc.ci += scores.style.ci;
                    acc.er += scores.style.er;
                    acc.sci += scores.style.sci;
                    acc.srs += scores.style.srs;
                    acc.popularity += scores.popularity;
                    acc.ubs += scores.ubs;
                    acc.count += 1;
                }
                Err((stage, err)) => errors.push(BenchError {
                    set: set.name.clone(),
                    candidate_id: candidate.id.clone(),
                    stage,
                    message: format!("{err:#}"),
                }),
            }
        }
        let n = acc.count.max(1) as f64;
        rows.push(BenchRow {
            name: set.name.clone(),
            bleu1: 100.0 * acc.bleu1 / n,
            meteor: 100.0 * acc.meteor / n,
            f1: 100.0 * acc.embed_f1 / n,
            srs: acc.srs / n,
            popularity_prediction: 100.0 * acc.popularity / n,
            ubs: acc.ubs / n,
            srs_dimensions: SrsDimensions {
                le: acc.le / n,
                ci: acc.ci / n,
                er: acc.er / n,
                sci: acc.sci / n,
            },
            candidates_evaluated: acc.count,
        });
    }

    let mut backend_ids = BTreeMap::new();
    backend_ids.insert("embedder".to_string(), embedder.identifier());
    for (idx, judge) in judges.iter().enumerate() {
        backend_ids.insert(format!("judge{idx}"), judge.identifier());
    }
    backend_ids.insert(
        "model".to_string(),
        format!(
            "predictor/{}@{}",
            model.train_meta.platform, model.train_meta.seed
        ),
    );
    let partial = !errors.is_empty();
    let report = BenchReport {
        schema_version: BENCH_REPORT_VERSION.to_string(),
        provenance: provenance::build(&cfg, cfg.seed, backend_ids),
        rows,
        errors,
    };
    write_report(&args.report, &report).data_err()?;
    for row in &report.rows {
        eprintln!(
            "{}: bleu1 {:.2} meteor {:.2} f1 {:.2} srs {:.2} pop {:.2} ubs {:.2} (n={})",
            row.name,
            row.bleu1,
            row.meteor,
            row.f1,
            row.srs,
            row.popularity_prediction,
            row.ubs,
            row.candidates_evaluated
        );
    }
    if partial {
        eprintln!("{} candidate(s) failed; report is partial", report.errors.len());
        return Ok(EXIT_PARTIAL);
    }
    Ok(EXIT_OK)
}
