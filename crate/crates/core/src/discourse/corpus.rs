use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use super::DiscourseMode;
use crate::ingest::{normalize_text, tokenize, Token};
use crate::{Error, Result};

/// One labeled sentence, as stored in a corpus line.
#[derive(Debug, Clone)]
pub struct CorpusSentence {
    pub index: u64,
    pub text: String,
    pub mode: DiscourseMode,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone)]
pub struct CorpusDocument {
    pub id: String,
    /// Sorted by `index`.
    pub sentences: Vec<CorpusSentence>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DocKey {
    Text(String),
    Number(i64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Line {
    text: String,
    mode: String,
    doc: DocKey,
    index: u64,
}

/// Parses JSONL with one `{"text", "mode", "doc", "index"}` object per
/// line. Sentences are grouped by `doc` and ordered by `index`, so line
/// order does not matter.
pub fn parse_corpus(text: &str, source_name: &str) -> Result<Vec<CorpusDocument>> {
    let mut docs: BTreeMap<String, BTreeMap<u64, CorpusSentence>> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let line: Line = serde_json::from_str(raw).map_err(|e| Error::parse(source_name, line_no, e.to_string()))?;
        let mode: DiscourseMode = line.mode.parse().map_err(|e: String| Error::parse(source_name, line_no, e))?;
        let doc = match line.doc {
            DocKey::Text(s) => s,
            DocKey::Number(n) => n.to_string(),
        };
        let text = normalize_text(&line.text);
        let sentence = CorpusSentence {
            index: line.index,
            tokens: tokenize(&text),
            text,
            mode,
        };
        if docs.entry(doc.clone()).or_default().insert(line.index, sentence).is_some() {
            return Err(Error::parse(source_name, line_no, format!("duplicate sentence {} in doc {doc:?}", line.index)));
        }
    }
    Ok(docs
        .into_iter()
        .map(|(id, sentences)| CorpusDocument {
            id,
            sentences: sentences.into_values().collect(),
        })
        .collect())
}

pub fn read_corpus(path: &Path) -> Result<Vec<CorpusDocument>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(&text, &path.display().to_string())
}

pub(crate) fn corpus_hash(corpus: &[CorpusDocument]) -> String {
    let mut hasher = Sha256::new();
    for doc in corpus {
        for s in &doc.sentences {
            hasher.update(format!("{}\t{}\t{}\t{}\n", doc.id, s.index, s.mode, s.text).as_bytes());
        }
    }
    hex::encode(hasher.finalize())
}
