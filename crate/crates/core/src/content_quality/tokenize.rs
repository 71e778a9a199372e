//! Text tokenization for the similarity metrics.
//!
//! The corpus mixes alphabetic and CJK text, so the default `Mixed` mode
//! segments alphanumeric runs as words while splitting CJK runs per
//! character. Punctuation is kept, one token per character; whitespace is
//! dropped.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TokenizerMode {
    /// Alphanumeric runs (CJK chars join runs like any letter).
    UnicodeWords,
    /// Every non-whitespace character is its own token.
    CjkChar,
    /// Alphanumeric runs, but CJK characters always split per character.
    Mixed,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TokenizerConfig {
    #[serde(default = "default_mode")]
    pub mode: TokenizerMode,
    #[serde(default = "default_lowercase")]
    pub lowercase: bool,
}

fn default_mode() -> TokenizerMode {
    TokenizerMode::Mixed
}

fn default_lowercase() -> bool {
    true
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            mode: default_mode(),
            lowercase: default_lowercase(),
        }
    }
}

/// CJK ranges that get per-character segmentation in `Mixed` mode:
/// Han ideographs (URO, extension A, compatibility), kana, and hangul
/// syllables.
fn is_cjk(c: char) -> bool {
    matches!(c,
        '\u{4E00}'..='\u{9FFF}'
        | '\u{3400}'..='\u{4DBF}'
        | '\u{F900}'..='\u{FAFF}'
        | '\u{3040}'..='\u{309F}'
        | '\u{30A0}'..='\u{30FF}'
        | '\u{AC00}'..='\u{D7AF}'
    )
}

/// Deterministic segmentation; the concatenation of tokens covers every
/// non-whitespace character of the input.
pub fn tokenize(text: &str, cfg: &TokenizerConfig) -> Vec<String> {
    let mut tokens: Vec<String> = Vec::new();
    let mut run = String::new();

    let flush = |run: &mut String, tokens: &mut Vec<String>| {
        if !run.is_empty() {
            tokens.push(std::mem::take(run));
        }
    };

    for c in text.chars() {
        if c.is_whitespace() {
            flush(&mut run, &mut tokens);
            continue;
        }
        let splits_alone = match cfg.mode {
            TokenizerMode::CjkChar => true,
            TokenizerMode::UnicodeWords => !c.is_alphanumeric(),
            TokenizerMode::Mixed => !c.is_alphanumeric() || is_cjk(c),
        };
        if splits_alone {
            flush(&mut run, &mut tokens);
            tokens.push(c.to_string());
        } else {
            run.push(c);
        }
    }
    flush(&mut run, &mut tokens);

    if cfg.lowercase {
        tokens.iter().map(|t| t.to_lowercase()).collect()
    } else {
        tokens
    }
}
