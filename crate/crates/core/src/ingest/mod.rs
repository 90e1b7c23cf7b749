//! Text ingestion: normalization, paragraph and sentence splitting,
//! tokenization and syllable counting.
//!
//! All offsets are byte offsets into the *normalized* text, which is the one
//! piece of text every downstream artifact refers to.

mod segment;
mod syllables;
mod tokenize;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use segment::{segment_sentences, segment_sentences_with, Abbreviations};
pub use syllables::count_syllables;
pub use tokenize::tokenize;

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    Word,
    Number,
    Punctuation,
    QuoteMark,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub kind: TokenKind,
    pub start: usize,
    pub end: usize,
    /// At least one for words, zero for every other kind.
    pub syllables: u32,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }

    /// Words and numbers, i.e. everything a reader would pronounce.
    pub fn is_lexical(&self) -> bool {
        matches!(self.kind, TokenKind::Word | TokenKind::Number)
    }

    pub fn is_capitalized(&self) -> bool {
        self.kind == TokenKind::Word && self.surface.chars().next().is_some_and(char::is_uppercase)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParagraphSpan {
    pub index: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceSpan {
    pub index: usize,
    pub paragraph: usize,
    pub start: usize,
    pub end: usize,
    pub tokens: Vec<Token>,
}

impl SentenceSpan {
    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word())
    }
}

/// An ingested article. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    /// Hex SHA-256 of `text`.
    pub id: String,
    pub title: Option<String>,
    pub text: String,
    pub paragraphs: Vec<ParagraphSpan>,
    pub sentences: Vec<SentenceSpan>,
    /// Number of word tokens. Numbers and punctuation are not counted.
    pub word_count: usize,
    pub syllable_count: usize,
}

impl Document {
    pub fn new(raw: &str, title: Option<String>) -> Self {
        Self::with_abbreviations(raw, title, Abbreviations::bundled())
    }

    pub fn from_bytes(raw: &[u8], title: Option<String>) -> Result<Self> {
        let text = std::str::from_utf8(raw)?;
        Ok(Self::new(text, title))
    }

    pub fn with_abbreviations(raw: &str, title: Option<String>, abbreviations: &Abbreviations) -> Self {
        let text = normalize_text(raw);
        let paragraphs = split_paragraphs(&text);

        let mut sentences = Vec::new();
        for para in &paragraphs {
            let para_text = &text[para.start..para.end];
            for range in segment_sentences_with(para_text, abbreviations) {
                let start = para.start + range.start;
                let end = para.start + range.end;
                let tokens = tokenize(&text[start..end])
                    .into_iter()
                    .map(|mut t| {
                        t.start += start;
                        t.end += start;
                        t
                    })
                    .collect();
                sentences.push(SentenceSpan {
                    index: sentences.len(),
                    paragraph: para.index,
                    start,
                    end,
                    tokens,
                });
            }
        }

        let (word_count, syllable_count) = sentences
            .iter()
            .flat_map(|s| s.words())
            .fold((0, 0), |(w, sy), t| (w + 1, sy + t.syllables as usize));

        Document {
            id: content_hash(&text),
            title,
            text,
            paragraphs,
            sentences,
            word_count,
            syllable_count,
        }
    }

    pub fn sentence_text(&self, index: usize) -> &str {
        let s = &self.sentences[index];
        &self.text[s.start..s.end]
    }
}

pub fn content_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Maps typographic quotes to ASCII and CRLF to LF. Idempotent.
pub fn normalize_text(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut chars = raw.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\u{2018}' | '\u{2019}' | '\u{201A}' | '\u{201B}' | '\u{2032}' => out.push('\''),
            '\u{201C}' | '\u{201D}' | '\u{201E}' | '\u{201F}' | '\u{2033}' => out.push('"'),
            '\r' if chars.peek() == Some(&'\n') => {}
            _ => out.push(c),
        }
    }
    out
}

/// Like [`normalize_text`] but starts from raw bytes.
pub fn normalize_bytes(raw: &[u8]) -> Result<String> {
    Ok(normalize_text(std::str::from_utf8(raw)?))
}

/// Splits on runs of blank (whitespace-only) lines. Spans are trimmed to
/// their first and last non-whitespace character.
pub fn split_paragraphs(text: &str) -> Vec<ParagraphSpan> {
    let mut spans = Vec::new();
    let mut current: Option<(usize, usize)> = None;
    let mut offset = 0;

    for line in text.split_inclusive('\n') {
        let line_start = offset;
        offset += line.len();
        let trimmed_start = line.len() - line.trim_start().len();
        if line.trim().is_empty() {
            if let Some((s, e)) = current.take() {
                spans.push((s, e));
            }
            continue;
        }
        let content_end = line_start + line.trim_end().len();
        match current.as_mut() {
            Some((_, e)) => *e = content_end,
            None => current = Some((line_start + trimmed_start, content_end)),
        }
    }
    if let Some(span) = current {
        spans.push(span);
    }

    spans
        .into_iter()
        .enumerate()
        .map(|(index, (start, end))| ParagraphSpan { index, start, end })
        .collect()
}
