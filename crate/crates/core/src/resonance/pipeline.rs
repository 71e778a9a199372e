//! The four-stage generation pipeline: retrieve similar popular comments,
//! build the resonance field from their style decompositions, plan the
//! candidate style, superpose realizations, and collapse to the most
//! coherent one. Every run returns a full trace for auditability.

use serde::{Deserialize, Serialize};

use crate::backends::{EmbedderBackend, GenParams, GeneratorBackend, JudgeBackend};
use crate::content_quality::{reference_weights, WeightingConfig};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::types::{CandidatePlan, Comment, ContentItem, Label, ResonanceField};
use crate::vector;

use super::decompose::decompose_style;
use super::field::build_resonance_field;
use super::planner::{plan_alignment, PlannerConfig};
use super::prompts;
use super::superpose::{collapse, superpose, SuperpositionConfig};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RetrievalConfig {
    #[serde(default = "default_k")]
    pub k: usize,
    /// Cosine floor for retrieved comments; 0 disables the floor.
    #[serde(default)]
    pub min_similarity: f64,
}

fn default_k() -> usize {
    20
}

impl Default for RetrievalConfig {
    fn default() -> Self {
        RetrievalConfig {
            k: default_k(),
            min_similarity: 0.0,
        }
    }
}

impl RetrievalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("retrieval k must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.min_similarity) {
            return Err(Error::InvalidConfig(
                "min_similarity must lie in [0,1]".into(),
            ));
        }
        Ok(())
    }
}

/// A retrieved comment with its context similarity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Retrieved {
    pub comment: Comment,
    pub similarity: f64,
}

/// Top-k popular comments ranked by cosine between the query context
/// embedding and each comment's parent-item context embedding. Ties break
/// by like count descending, then id.
pub fn retrieve_similar(
    context: &ContentItem,
    corpus: &Corpus,
    embedder: &dyn EmbedderBackend,
    cfg: &RetrievalConfig,
) -> Result<Vec<Retrieved>> {
    cfg.validate()?;
    let popular: Vec<&Comment> = corpus
        .comments
        .iter()
        .filter(|c| c.label == Some(Label::Popular))
        .collect();
    if popular.is_empty() {
        return Err(Error::empty_pool("corpus has no popular comments"));
    }

    // one batch: query context plus every parent context
    let mut texts = vec![context.context_text()];
    let mut parent_ids: Vec<&str> = Vec::new();
    for comment in &popular {
        let parent = corpus
            .item(&comment.content_id)
            .ok_or_else(|| Error::DanglingReference {
                comment_id: comment.id.clone(),
                content_id: comment.content_id.clone(),
            })?;
        parent_ids.push(&parent.id);
        texts.push(parent.context_text());
    }
    let embeddings = embedder.embed(&texts)?;
    let query = &embeddings[0];

    let mut scored: Vec<Retrieved> = popular
        .iter()
        .zip(embeddings[1..].iter())
        .map(|(comment, parent_embedding)| {
            let similarity = vector::cosine(query, parent_embedding).unwrap_or(0.0);
            Retrieved {
                comment: (*comment).clone(),
                similarity,
            }
        })
        .filter(|r| cfg.min_similarity == 0.0 || r.similarity >= cfg.min_similarity)
        .collect();
    if scored.is_empty() {
        return Err(Error::empty_pool(format!(
            "no popular comment reaches similarity {}",
            cfg.min_similarity
        )));
    }
    scored.sort_by(|a, b| {
        b.similarity
            .partial_cmp(&a.similarity)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.comment.like_count.cmp(&a.comment.like_count))
            .then(a.comment.id.cmp(&b.comment.id))
    });
    scored.truncate(cfg.k);
    Ok(scored)
}

/// All knobs of one generation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    #[serde(default)]
    pub retrieval: RetrievalConfig,
    #[serde(default)]
    pub planner: PlannerConfig,
    pub superposition: SuperpositionConfig,
    #[serde(default)]
    pub weighting: WeightingConfig,
    /// Exemplar comments to embed in the generation prompt.
    #[serde(default = "default_exemplar_count")]
    pub exemplar_count: usize,
    /// Single refinement pass over the collapsed candidate.
    #[serde(default)]
    pub refine: bool,
}

fn default_exemplar_count() -> usize {
    3
}

/// Full audit record of one run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenerationTrace {
    pub schema_version: String,
    pub content_id: String,
    pub retrieved: Vec<RetrievedTrace>,
    pub field: ResonanceField,
    pub plan: CandidatePlan,
    pub candidates: Vec<CandidateTrace>,
    pub selected_index: usize,
    pub refined: bool,
    pub final_text: String,
    pub prompt_version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RetrievedTrace {
    pub comment_id: String,
    pub similarity: f64,
    pub like_count: u64,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateTrace {
    pub text: String,
    pub noise_seed: u64,
    pub coherence: f64,
}

pub const TRACE_SCHEMA_VERSION: &str = "trace-v1";

/// Run the whole pipeline for one content item. Errors carry the stage
/// they occurred in.
pub fn generate_comment(
    context: &ContentItem,
    corpus: &Corpus,
    embedder: &dyn EmbedderBackend,
    judge: &dyn JudgeBackend,
    generator: &dyn GeneratorBackend,
    cfg: &PipelineConfig,
) -> Result<(String, GenerationTrace)> {
    // stage 1: retrieval
    let retrieved = retrieve_similar(context, corpus, embedder, &cfg.retrieval)
        .map_err(|e| e.at_stage("retrieve"))?;

    // stage 2: decomposition of every retrieved comment against its item
    let mut decompositions = Vec::with_capacity(retrieved.len());
    for r in &retrieved {
        let parent = corpus
            .item(&r.comment.content_id)
            .expect("verified during retrieval");
        let decomposition = decompose_style(&r.comment.text, parent, judge, embedder)
            .map_err(|e| e.at_stage("decompose"))?;
        decompositions.push(decomposition);
    }

    // engagement weights over the retrieved comments
    let like_counts: Vec<u64> = retrieved.iter().map(|r| r.comment.like_count).collect();
    let weights = reference_weights(&like_counts, &cfg.weighting);

    // stage 2b: field aggregation
    let field = build_resonance_field(&decompositions, Some(&weights))
        .map_err(|e| e.at_stage("field"))?;

    // stage 3: planning over pools seeded from the field and retrieval
    let pools = build_pools(&field, &decompositions, cfg.planner.orientation_pool_size);
    let plan = plan_alignment(&field, &pools, &cfg.planner).map_err(|e| e.at_stage("plan"))?;

    // stage 4: superposition and collapse
    let exemplars: Vec<String> = retrieved
        .iter()
        .take(cfg.exemplar_count)
        .map(|r| r.comment.text.clone())
        .collect();
    let candidates = superpose(
        &field,
        &plan,
        context,
        &exemplars,
        generator,
        judge,
        embedder,
        &cfg.superposition,
    )
    .map_err(|e| e.at_stage("superpose"))?;
    let (selected, coherences) = collapse(&candidates, &field).map_err(|e| e.at_stage("collapse"))?;
    let selected_index = candidates
        .iter()
        .position(|c| c.noise_seed == selected.noise_seed)
        .unwrap_or(0);

    let mut final_text = selected.text.clone();
    let mut refined = false;
    if cfg.refine {
        let polish = prompts::refine_prompt(&final_text);
        final_text = generator
            .complete(&polish, &GenParams::default())
            .map_err(|e| e.at_stage("refine"))?;
        refined = true;
    }

    let trace = GenerationTrace {
        schema_version: TRACE_SCHEMA_VERSION.to_string(),
        content_id: context.id.clone(),
        retrieved: retrieved
            .iter()
            .zip(&weights)
            .map(|(r, &weight)| RetrievedTrace {
                comment_id: r.comment.id.clone(),
                similarity: r.similarity,
                like_count: r.comment.like_count,
                weight,
            })
            .collect(),
        field,
        plan,
        candidates: candidates
            .iter()
            .zip(&coherences)
            .map(|(c, &coherence)| CandidateTrace {
                text: c.text.clone(),
                noise_seed: c.noise_seed,
                coherence,
            })
            .collect(),
        selected_index,
        refined,
        final_text: final_text.clone(),
        prompt_version: prompts::GENERATION_PROMPT_VERSION.to_string(),
    };
    Ok((final_text, trace))
}

/// Per-dimension orientation pools: the field direction first, then the
/// strongest distinct orientations seen in retrieval order.
fn build_pools(
    field: &ResonanceField,
    decompositions: &[[crate::types::StyleComponent; 4]],
    pool_size: usize,
) -> [Vec<Vec<f64>>; 4] {
    std::array::from_fn(|d| {
        let mut pool: Vec<Vec<f64>> = vec![field.components[d].orientation.clone()];
        for decomposition in decompositions {
            if pool.len() >= pool_size {
                break;
            }
            let orientation = &decomposition[d].orientation;
            if vector::is_zero(orientation) {
                continue;
            }
            if pool.iter().any(|existing| existing == orientation) {
                continue;
            }
            pool.push(orientation.clone());
        }
        pool
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{StubConstant, StubHash, StubTemplate};
    use crate::types::{Modality, Platform};

    fn item(id: &str, title: &str) -> ContentItem {
        ContentItem {
            id: id.into(),
            platform: Platform::NewsA,
            category: "tech".into(),
            title: title.into(),
            keywords: vec!["gadgets".into()],
            description: "a description".into(),
            publish_time: 0,
            modality: Modality::Text,
        }
    }

    fn popular(id: &str, content_id: &str, text: &str, likes: u64) -> Comment {
        Comment {
            id: id.into(),
            content_id: content_id.into(),
            text: text.into(),
            like_count: likes,
            publish_time: 0,
            label: Some(Label::Popular),
        }
    }

    fn fixture_corpus() -> Corpus {
        Corpus::new(
            vec![
                item("a1", "new phone released today"),
                item("a2", "new phone east review"),
                item("a3", "gardening in winter"),
            ],
            vec![
                popular("c1", "a1", "this phone slaps hard", 900),
                popular("c2", "a2", "phone good screen better", 500),
                popular("c3", "a3", "my plants disagree entirely", 50),
            ],
        )
    }

    #[test]
    fn single_popular_comment_is_retrieved() {
        let corpus = Corpus::new(
            vec![item("a1", "solo")],
            vec![popular("c1", "a1", "only one", 10)],
        );
        let got = retrieve_similar(
            &item("q", "solo query"),
            &corpus,
            &StubHash::new(32),
            &RetrievalConfig {
                k: 1,
                min_similarity: 0.0,
            },
        )
        .unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].comment.id, "c1");
    }

    #[test]
    fn self_context_ranks_first() {
        // query equal to a1's context embeds identically, cosine 1
        let corpus = fixture_corpus();
        let got = retrieve_similar(
            &item("q", "new phone released today"),
            &corpus,
            &StubHash::new(64),
            &RetrievalConfig::default(),
        )
        .unwrap();
        assert_eq!(got[0].comment.id, "c1");
        assert!((got[0].similarity - 1.0).abs() < 1e-9);
    }

    #[test]
    fn high_similarity_floor_empties_the_pool() {
        let corpus = fixture_corpus();
        let err = retrieve_similar(
            &item("q", "unrelated cooking topic entirely"),
            &corpus,
            &StubHash::new(64),
            &RetrievalConfig {
                k: 5,
                min_similarity: 0.9,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmptyPool { .. }));
    }

    #[test]
    fn no_popular_comments_is_empty_pool() {
        let mut corpus = fixture_corpus();
        for c in corpus.comments.iter_mut() {
            c.label = None;
        }
        let err = retrieve_similar(
            &item("q", "anything"),
            &corpus,
            &StubHash::new(32),
            &RetrievalConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmptyPool { .. }));
    }

    fn pipeline_cfg(seed: u64) -> PipelineConfig {
        PipelineConfig {
            retrieval: RetrievalConfig {
                k: 3,
                min_similarity: 0.0,
            },
            planner: PlannerConfig::default(),
            superposition: SuperpositionConfig {
                n_candidates: 4,
                noise_std: 0.0,
                seed,
            },
            weighting: WeightingConfig::default(),
            exemplar_count: 2,
            refine: false,
        }
    }

    #[test]
    fn full_stub_pipeline_is_deterministic() {
        let corpus = fixture_corpus();
        let context = item("q", "new phone announced");
        let embedder = StubHash::new(64);
        let judge = StubConstant::new("70");
        let generator = StubTemplate::new(vec![]);
        let cfg = pipeline_cfg(42);
        let (text_a, trace_a) =
            generate_comment(&context, &corpus, &embedder, &judge, &generator, &cfg).unwrap();
        let (text_b, trace_b) =
            generate_comment(&context, &corpus, &embedder, &judge, &generator, &cfg).unwrap();
        assert_eq!(text_a, text_b);
        assert_eq!(
            serde_json::to_string(&trace_a).unwrap(),
            serde_json::to_string(&trace_b).unwrap()
        );
        assert!(!text_a.is_empty());
        assert_eq!(trace_a.candidates.len(), 4);
    }

    #[test]
    fn zero_popular_corpus_fails_at_the_retrieve_stage() {
        let corpus = Corpus::new(vec![item("a1", "t")], vec![]);
        let err = generate_comment(
            &item("q", "t"),
            &corpus,
            &StubHash::new(32),
            &StubConstant::new("70"),
            &StubTemplate::new(vec![]),
            &pipeline_cfg(1),
        )
        .unwrap_err();
        match err {
            Error::Stage { stage, .. } => assert_eq!(stage, "retrieve"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_candidate_zero_noise_collapses_to_itself() {
        let corpus = fixture_corpus();
        let mut cfg = pipeline_cfg(7);
        cfg.superposition.n_candidates = 1;
        let (text, trace) = generate_comment(
            &item("q", "new phone"),
            &corpus,
            &StubHash::new(64),
            &StubConstant::new("55"),
            &StubTemplate::new(vec![]),
            &cfg,
        )
        .unwrap();
        assert_eq!(trace.candidates.len(), 1);
        assert_eq!(trace.selected_index, 0);
        assert_eq!(text, trace.candidates[0].text);
    }

    #[test]
    fn trace_serializes_with_schema_version() {
        let corpus = fixture_corpus();
        let (_, trace) = generate_comment(
            &item("q", "new phone"),
            &corpus,
            &StubHash::new(32),
            &StubConstant::new("66"),
            &StubTemplate::new(vec![]),
            &pipeline_cfg(3),
        )
        .unwrap();
        let json = serde_json::to_value(&trace).unwrap();
        assert_eq!(json["schema_version"], TRACE_SCHEMA_VERSION);
        assert_eq!(json["retrieved"].as_array().unwrap().len(), 3);
    }
}
