//! JSON-Lines corpus I/O.
//!
//! One object per line with a `kind` discriminator: `content` records and
//! `comment` records. Reading verifies referential integrity of every
//! comment's `content_id`.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{Comment, ContentItem};

/// Supported corpus encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorpusFormat {
    JsonLines,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Record {
    Content(ContentItem),
    Comment(Comment),
}

/// An in-memory corpus with id indexes over items and comment sections.
/// Ids are indexed at construction; records must not be re-identified
/// after that.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub items: Vec<ContentItem>,
    pub comments: Vec<Comment>,
    item_index: HashMap<String, usize>,
    section_index: HashMap<String, Vec<usize>>,
}

impl Corpus {
    pub fn new(items: Vec<ContentItem>, comments: Vec<Comment>) -> Self {
        let item_index = items
            .iter()
            .enumerate()
            .map(|(idx, item)| (item.id.clone(), idx))
            .collect();
        let mut section_index: HashMap<String, Vec<usize>> = HashMap::new();
        for (idx, comment) in comments.iter().enumerate() {
            section_index
                .entry(comment.content_id.clone())
                .or_default()
                .push(idx);
        }
        Corpus {
            items,
            comments,
            item_index,
            section_index,
        }
    }

    pub fn item(&self, id: &str) -> Option<&ContentItem> {
        self.item_index.get(id).map(|&idx| &self.items[idx])
    }

    /// Comments attached to one item, in corpus order.
    pub fn comments_for(&self, content_id: &str) -> Vec<&Comment> {
        self.section_index
            .get(content_id)
            .map(|indices| indices.iter().map(|&idx| &self.comments[idx]).collect())
            .unwrap_or_default()
    }
}

/// Read a corpus file, validating types and referential integrity.
pub fn read_corpus(path: &Path, format: CorpusFormat) -> Result<(Vec<ContentItem>, Vec<Comment>)> {
    let CorpusFormat::JsonLines = format;
    let file = File::open(path)?;
    let reader = BufReader::new(file);

    let mut items: Vec<ContentItem> = Vec::new();
    let mut comments: Vec<Comment> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: Record = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        match record {
            Record::Content(item) => {
                if item.id.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "content id must be nonempty".into(),
                    });
                }
                if items.iter().any(|existing| existing.id == item.id) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("duplicate content id {}", item.id),
                    });
                }
                items.push(item);
            }
            Record::Comment(comment) => comments.push(comment),
        }
    }

    for comment in &comments {
        if !items.iter().any(|i| i.id == comment.content_id) {
            return Err(Error::DanglingReference {
                comment_id: comment.id.clone(),
                content_id: comment.content_id.clone(),
            });
        }
    }
    Ok((items, comments))
}

/// Write a corpus file: all content records first, then all comments.
pub fn write_corpus(path: &Path, items: &[ContentItem], comments: &[Comment]) -> Result<()> {
    let file = File::create(path)?;
    let mut writer = BufWriter::new(file);
    for item in items {
        let line = serde_json::to_string(&Record::Content(item.clone()))
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        writeln!(writer, "{line}")?;
    }
    for comment in comments {
        let line = serde_json::to_string(&Record::Comment(comment.clone()))
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        writeln!(writer, "{line}")?;
    }
    writer.flush()?;
    Ok(())
}

/// Convenience wrapper returning an indexed corpus.
pub fn load_corpus(path: &Path) -> Result<Corpus> {
    let (items, comments) = read_corpus(path, CorpusFormat::JsonLines)?;
    Ok(Corpus::new(items, comments))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Label, Modality, Platform};

    pub(crate) fn item(id: &str) -> ContentItem {
        ContentItem {
            id: id.to_string(),
            platform: Platform::NewsA,
            category: "tech".into(),
            title: format!("title {id}"),
            keywords: vec!["k1".into(), "k2".into()],
            description: "desc".into(),
            publish_time: 1_700_000_000,
            modality: Modality::Text,
        }
    }

    pub(crate) fn comment(id: &str, content_id: &str, likes: u64) -> Comment {
        Comment {
            id: id.to_string(),
            content_id: content_id.to_string(),
            text: format!("comment {id}"),
            like_count: likes,
            publish_time: 1_700_000_100,
            label: None,
        }
    }

    #[test]
    fn minimal_fixture_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        let items = vec![item("a1")];
        let comments = vec![comment("c1", "a1", 5), comment("c2", "a1", 0)];
        write_corpus(&path, &items, &comments).unwrap();
        let (got_items, got_comments) = read_corpus(&path, CorpusFormat::JsonLines).unwrap();
        assert_eq!(got_items, items);
        assert_eq!(got_comments, comments);
    }

    #[test]
    fn dangling_reference_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        write_corpus(&path, &[item("a1")], &[comment("c9", "missing", 1)]).unwrap();
        let err = read_corpus(&path, CorpusFormat::JsonLines).unwrap_err();
        assert!(matches!(err, Error::DanglingReference { .. }));
    }

    #[test]
    fn empty_file_is_empty_corpus() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        std::fs::write(&path, "").unwrap();
        let (items, comments) = read_corpus(&path, CorpusFormat::JsonLines).unwrap();
        assert!(items.is_empty());
        assert!(comments.is_empty());
    }

    #[test]
    fn parse_error_carries_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        std::fs::write(&path, "{\"kind\":\"content\"").unwrap();
        match read_corpus(&path, CorpusFormat::JsonLines).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn labels_survive_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        let mut c = comment("c1", "a1", 5000);
        c.label = Some(Label::Popular);
        write_corpus(&path, &[item("a1")], &[c.clone()]).unwrap();
        let (_, comments) = read_corpus(&path, CorpusFormat::JsonLines).unwrap();
        assert_eq!(comments[0].label, Some(Label::Popular));
    }

    #[test]
    fn duplicate_content_id_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        write_corpus(&path, &[item("a1"), item("a1")], &[]).unwrap();
        assert!(matches!(
            read_corpus(&path, CorpusFormat::JsonLines),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
