//! Popularity labeling and leakage-safe dataset splitting.
//!
//! A comment is labeled popular when it sits in the top-`top_rank` by
//! likes and its like count clears either the relative threshold (strictly
//! above `relative_threshold` times the top comment) or the absolute
//! threshold (at least `absolute_threshold` likes). Negatives are same-day
//! low-engagement comments, capped per item. Splits are stratified by
//! publication month and category so later content never leaks topics into
//! earlier training data.

use std::collections::BTreeMap;

use chrono::{Datelike, TimeZone, Utc};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{Comment, ContentItem, Label, Platform};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingConfig {
    /// Only the top-N comments by likes can be popular.
    #[serde(default = "default_top_rank")]
    pub top_rank: usize,
    /// Relative disjunct: like count strictly above this fraction of the
    /// top comment's likes.
    #[serde(default = "default_relative_threshold")]
    pub relative_threshold: f64,
    /// Absolute disjunct: like count at or above this value.
    #[serde(default = "default_absolute_threshold")]
    pub absolute_threshold: u64,
    /// Negatives must have at most this many likes.
    #[serde(default = "default_negative_max_likes")]
    pub negative_max_likes: u64,
    /// At most this many negatives per item.
    #[serde(default = "default_negatives_per_item")]
    pub negatives_per_item: usize,
    /// Local-calendar offset for "same day", hours east of UTC.
    #[serde(default = "default_utc_offset_hours")]
    pub utc_offset_hours: i32,
    /// Per-platform overrides of the calendar offset.
    #[serde(default)]
    pub platform_utc_offsets: BTreeMap<String, i32>,
}

fn default_top_rank() -> usize {
    15
}

fn default_relative_threshold() -> f64 {
    0.10
}

fn default_absolute_threshold() -> u64 {
    2000
}

fn default_negative_max_likes() -> u64 {
    10
}

fn default_negatives_per_item() -> usize {
    10
}

fn default_utc_offset_hours() -> i32 {
    8
}

impl Default for LabelingConfig {
    fn default() -> Self {
        LabelingConfig {
            top_rank: default_top_rank(),
            relative_threshold: default_relative_threshold(),
            absolute_threshold: default_absolute_threshold(),
            negative_max_likes: default_negative_max_likes(),
            negatives_per_item: default_negatives_per_item(),
            utc_offset_hours: default_utc_offset_hours(),
            platform_utc_offsets: BTreeMap::new(),
        }
    }
}

impl LabelingConfig {
    fn offset_for(&self, platform: &Platform) -> i32 {
        self.platform_utc_offsets
            .get(platform.as_str())
            .copied()
            .unwrap_or(self.utc_offset_hours)
    }
}

/// Local calendar day number for a UTC timestamp under an hour offset.
fn local_day(epoch_seconds: i64, offset_hours: i32) -> i64 {
    (epoch_seconds + offset_hours as i64 * 3600).div_euclid(86_400)
}

/// Assign popularity labels for one item's comment section.
///
/// Returns the popular and non-popular sets; everything else stays
/// unlabeled. The two sets are always disjoint.
pub fn label_item(
    item: &ContentItem,
    comments: &[Comment],
    cfg: &LabelingConfig,
) -> (Vec<Comment>, Vec<Comment>) {
    // ranking order: likes desc, publish_time asc, id lexicographic
    let mut ranked: Vec<&Comment> = comments.iter().collect();
    ranked.sort_by(|a, b| {
        b.like_count
            .cmp(&a.like_count)
            .then(a.publish_time.cmp(&b.publish_time))
            .then(a.id.cmp(&b.id))
    });

    let top_likes = ranked.first().map(|c| c.like_count).unwrap_or(0);
    let relative_floor = cfg.relative_threshold * top_likes as f64;

    let mut popular: Vec<Comment> = Vec::new();
    for comment in ranked.iter().take(cfg.top_rank) {
        let clears_relative = (comment.like_count as f64) > relative_floor;
        let clears_absolute = comment.like_count >= cfg.absolute_threshold;
        if clears_relative || clears_absolute {
            let mut labeled = (*comment).clone();
            labeled.label = Some(Label::Popular);
            popular.push(labeled);
        }
    }

    let offset = cfg.offset_for(&item.platform);
    let item_day = local_day(item.publish_time, offset);
    let mut negatives: Vec<&Comment> = comments
        .iter()
        .filter(|c| {
            c.like_count <= cfg.negative_max_likes
                && local_day(c.publish_time, offset) == item_day
                && !popular.iter().any(|p| p.id == c.id)
        })
        .collect();
    negatives.sort_by(|a, b| a.publish_time.cmp(&b.publish_time).then(a.id.cmp(&b.id)));
    negatives.truncate(cfg.negatives_per_item);
    let non_popular: Vec<Comment> = negatives
        .into_iter()
        .map(|c| {
            let mut labeled = c.clone();
            labeled.label = Some(Label::NonPopular);
            labeled
        })
        .collect();

    (popular, non_popular)
}

/// Label a whole corpus in place: every comment gets its item's verdict
/// (or `None` when it is neither popular nor a selected negative).
pub fn label_corpus(
    items: &[ContentItem],
    comments: &[Comment],
    cfg: &LabelingConfig,
) -> Vec<Comment> {
    let mut labeled: Vec<Comment> = comments
        .iter()
        .map(|c| {
            let mut clean = c.clone();
            clean.label = None;
            clean
        })
        .collect();
    for item in items {
        let section: Vec<Comment> = comments
            .iter()
            .filter(|c| c.content_id == item.id)
            .cloned()
            .collect();
        let (popular, non_popular) = label_item(item, &section, cfg);
        for p in popular {
            if let Some(slot) = labeled.iter_mut().find(|c| c.id == p.id) {
                slot.label = Some(Label::Popular);
            }
        }
        for n in non_popular {
            if let Some(slot) = labeled.iter_mut().find(|c| c.id == n.id) {
                slot.label = Some(Label::NonPopular);
            }
        }
    }
    labeled
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StratifyKey {
    PublishTime,
    Category,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitConfig {
    /// Train/val/test fractions; must sum to 1.
    #[serde(default = "default_ratios")]
    pub ratios: [f64; 3],
    #[serde(default = "default_stratify_by")]
    pub stratify_by: Vec<StratifyKey>,
    pub seed: u64,
}

fn default_ratios() -> [f64; 3] {
    [0.8, 0.1, 0.1]
}

fn default_stratify_by() -> Vec<StratifyKey> {
    vec![StratifyKey::PublishTime, StratifyKey::Category]
}

impl SplitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ratios.iter().any(|r| *r <= 0.0) {
            return Err(Error::InvalidConfig("split ratios must be positive".into()));
        }
        let total: f64 = self.ratios.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "split ratios must sum to 1, got {total}"
            )));
        }
        Ok(())
    }
}

/// Non-fatal observations from a split run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitWarning {
    pub stratum: String,
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct SplitOutcome {
    pub train: Vec<ContentItem>,
    pub val: Vec<ContentItem>,
    pub test: Vec<ContentItem>,
    pub warnings: Vec<SplitWarning>,
}

fn stratum_key(item: &ContentItem, keys: &[StratifyKey]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for key in keys {
        match key {
            StratifyKey::PublishTime => {
                let dt = Utc
                    .timestamp_opt(item.publish_time, 0)
                    .single()
                    .unwrap_or_else(|| Utc.timestamp_opt(0, 0).single().expect("epoch"));
                parts.push(format!("{:04}-{:02}", dt.year(), dt.month()));
            }
            StratifyKey::Category => parts.push(item.category.clone()),
        }
    }
    if parts.is_empty() {
        "all".to_string()
    } else {
        parts.join("|")
    }
}

/// Largest-remainder apportionment of `n` into three parts matching
/// `ratios`; remainders tie-break toward the earlier split.
fn apportion(n: usize, ratios: &[f64; 3]) -> [usize; 3] {
    let mut counts = [0usize; 3];
    let mut fractions: Vec<(usize, f64)> = Vec::with_capacity(3);
    let mut assigned = 0usize;
    for (i, r) in ratios.iter().enumerate() {
        let exact = r * n as f64;
        counts[i] = exact.floor() as usize;
        assigned += counts[i];
        fractions.push((i, exact - exact.floor()));
    }
    fractions.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    for k in 0..(n - assigned) {
        counts[fractions[k % 3].0] += 1;
    }
    counts
}

/// Partition items into train/val/test, stratified and deterministic.
///
/// Within every stratum the three counts match the ratios to within one
/// item. Strata smaller than 3 items are reported as warnings, not errors.
pub fn split_dataset(items: &[ContentItem], cfg: &SplitConfig) -> Result<SplitOutcome> {
    cfg.validate()?;
    if items.len() < 10 {
        return Err(Error::InsufficientItems {
            required: 10,
            actual: items.len(),
        });
    }

    let mut strata: BTreeMap<String, Vec<&ContentItem>> = BTreeMap::new();
    for item in items {
        strata
            .entry(stratum_key(item, &cfg.stratify_by))
            .or_default()
            .push(item);
    }

    let mut outcome = SplitOutcome {
        train: Vec::new(),
        val: Vec::new(),
        test: Vec::new(),
        warnings: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (key, mut members) in strata {
        if members.len() < 3 {
            outcome.warnings.push(SplitWarning {
                stratum: key.clone(),
                size: members.len(),
            });
        }
        // canonical order first so the shuffle depends only on the seed,
        // not on input permutation
        members.sort_by(|a, b| a.id.cmp(&b.id));
        members.shuffle(&mut rng);
        let [n_train, n_val, _] = apportion(members.len(), &cfg.ratios);
        for (idx, item) in members.into_iter().enumerate() {
            if idx < n_train {
                outcome.train.push(item.clone());
            } else if idx < n_train + n_val {
                outcome.val.push(item.clone());
            } else {
                outcome.test.push(item.clone());
            }
        }
    }
    Ok(outcome)
}
