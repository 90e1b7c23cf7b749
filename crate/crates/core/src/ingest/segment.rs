use std::collections::HashSet;
use std::ops::Range;
use std::path::Path;

use once_cell::sync::Lazy;

use crate::resources;
use crate::{Error, Result};

/// Period-terminated tokens that never end a sentence, stored lowercase with
/// their final period (`"dr."`, `"u.s."`).
#[derive(Debug, Clone, Default)]
pub struct Abbreviations(HashSet<String>);

static BUNDLED: Lazy<Abbreviations> = Lazy::new(|| Abbreviations::parse(resources::ABBREVIATIONS));

impl Abbreviations {
    pub fn bundled() -> &'static Abbreviations {
        &BUNDLED
    }

    pub fn parse(text: &str) -> Self {
        Abbreviations(
            resources::entries(text)
                .map(|(_, w)| {
                    let mut w = w.to_lowercase();
                    if !w.ends_with('.') {
                        w.push('.');
                    }
                    w
                })
                .collect(),
        )
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&text))
    }

    pub fn contains(&self, candidate: &str) -> bool {
        self.0.contains(&candidate.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']')
}

/// Splits paragraph text into sentence byte ranges using the bundled
/// abbreviation list. See [`segment_sentences_with`].
pub fn segment_sentences(text: &str) -> Vec<Range<usize>> {
    segment_sentences_with(text, Abbreviations::bundled())
}

/// A sentence ends after a run of `.`, `!` or `?` (plus any closing quotes
/// or brackets) when whitespace follows and the next visible character is
/// uppercase or an opening quote. No break happens inside an open double
/// quotation, after a listed abbreviation, or after a single-letter initial.
///
/// The returned ranges are trimmed of surrounding whitespace, disjoint,
/// ordered, and together cover every non-whitespace character of `text`.
pub fn segment_sentences_with(text: &str, abbreviations: &Abbreviations) -> Vec<Range<usize>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let n = chars.len();
    let byte_at = |i: usize| chars.get(i).map_or(text.len(), |&(b, _)| b);

    let mut cuts = Vec::new();
    let mut in_quote = false;
    let mut i = 0;
    while i < n {
        let c = chars[i].1;
        if c == '"' {
            in_quote = !in_quote;
            i += 1;
            continue;
        }
        if !is_terminator(c) {
            i += 1;
            continue;
        }

        let run_start = i;
        let mut j = i;
        while j < n && is_terminator(chars[j].1) {
            j += 1;
        }
        let single_period = j - run_start == 1 && c == '.';
        while j < n && is_closer(chars[j].1) {
            if chars[j].1 == '"' {
                in_quote = !in_quote;
            }
            j += 1;
        }
        i = j;

        if j >= n || !chars[j].1.is_whitespace() || in_quote {
            continue;
        }
        let mut k = j;
        while k < n && chars[k].1.is_whitespace() {
            k += 1;
        }
        if k >= n {
            continue;
        }
        let next = chars[k].1;
        if !(next.is_uppercase() || next == '"' || next == '\'') {
            continue;
        }
        if single_period && is_abbreviation(text, byte_at(run_start), abbreviations) {
            continue;
        }
        cuts.push(byte_at(j));
        i = k;
    }

    let mut ranges = Vec::with_capacity(cuts.len() + 1);
    let mut start = 0;
    for end in cuts.into_iter().chain(std::iter::once(text.len())) {
        if let Some(r) = trim_range(text, start..end) {
            ranges.push(r);
        }
        start = end;
    }
    ranges
}

/// `period` is the byte offset of a lone `.`.
fn is_abbreviation(text: &str, period: usize, abbreviations: &Abbreviations) -> bool {
    let before = &text[..period];
    let word_start = before
        .rfind(char::is_whitespace)
        .map_or(0, |p| p + before[p..].chars().next().map_or(1, char::len_utf8));
    let word = before[word_start..].trim_start_matches(['"', '\'', '(', '[']);
    if word.is_empty() {
        return false;
    }
    let mut letters = word.chars();
    if let (Some(first), None) = (letters.next(), letters.next()) {
        if first.is_uppercase() {
            return true;
        }
    }
    let candidate = format!("{word}.");
    abbreviations.contains(&candidate)
}

fn trim_range(text: &str, range: Range<usize>) -> Option<Range<usize>> {
    let slice = &text[range.clone()];
    let lead = slice.len() - slice.trim_start().len();
    let trimmed = slice.trim();
    (!trimmed.is_empty()).then(|| range.start + lead..range.start + lead + trimmed.len())
}
