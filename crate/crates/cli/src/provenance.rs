//! Report provenance: every report embeds enough to reproduce itself from
//! the same corpus — a hash of the effective config, the root seed, backend
//! identifiers, and prompt/rubric versions. No wall-clock values, so equal
//! runs produce byte-identical reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub config_hash: String,
    pub seed: u64,
    pub backends: BTreeMap<String, String>,
    pub rubric_version: String,
    pub prompt_versions: BTreeMap<String, String>,
}

/// SHA-256 over the serde representation of the effective configuration.
/// serde_json maps are key-sorted, so the hash is canonical.
pub fn config_hash<T: Serialize>(config: &T) -> String {
    let value = serde_json::to_value(config).unwrap_or(serde_json::Value::Null);
    let canonical = serde_json::to_string(&value).unwrap_or_default();
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn build<T: Serialize>(
    effective_config: &T,
    seed: u64,
    backends: BTreeMap<String, String>,
) -> Provenance {
    let mut prompt_versions = BTreeMap::new();
    prompt_versions.insert(
        "generation".to_string(),
        popcmt_core::resonance::GENERATION_PROMPT_VERSION.to_string(),
    );
    prompt_versions.insert(
        "persona".to_string(),
        popcmt_core::simulation::PERSONA_PROMPT_VERSION.to_string(),
    );
    prompt_versions.insert(
        "determinants".to_string(),
        popcmt_core::simulation::DETERMINANT_PROMPT_VERSION.to_string(),
    );
    Provenance {
        config_hash: config_hash(effective_config),
        seed,
        backends,
        rubric_version: popcmt_core::style_judge::RUBRIC_VERSION.to_string(),
        prompt_versions,
    }
}
