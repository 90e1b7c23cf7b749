//! Word lists bundled with the engine.
//!
//! Every list is a plain UTF-8 file under `data/`, one entry per line, with
//! `#` starting a comment. They are compiled into the binary so analyses are
//! reproducible without any files on disk.

use std::collections::{HashMap, HashSet};

use once_cell::sync::Lazy;

pub const ABBREVIATIONS: &str = include_str!("../data/abbreviations.txt");
pub const HONORIFICS: &str = include_str!("../data/honorifics.txt");
pub const STOPWORDS: &str = include_str!("../data/stopwords.txt");
pub const LEXICON: &str = include_str!("../data/lexicon.tsv");
pub const NEGATORS: &str = include_str!("../data/negators.txt");
pub const INTENSIFIERS: &str = include_str!("../data/intensifiers.tsv");
pub const REPORTING_VERBS: &str = include_str!("../data/reporting_verbs.txt");
pub const OPINION_CUES: &str = include_str!("../data/opinion_cues.txt");
pub const MODALS: &str = include_str!("../data/modals.txt");
pub const SENSORY_ADJECTIVES: &str = include_str!("../data/sensory_adjectives.txt");
pub const PAST_IRREGULAR: &str = include_str!("../data/past_irregular.txt");

/// Yields `(line_number, content)` for every non-blank, non-comment line.
/// Trailing `#` comments are stripped; line numbers are 1-based.
pub fn entries(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = match line.find('#') {
            Some(0) => return None,
            Some(pos) if line[..pos].ends_with(char::is_whitespace) => &line[..pos],
            _ => line,
        };
        let content = content.trim();
        (!content.is_empty()).then_some((i + 1, content))
    })
}

/// Parses a one-entry-per-line list into a lowercased set.
pub fn word_set(text: &str) -> HashSet<String> {
    entries(text).map(|(_, w)| w.to_lowercase()).collect()
}

pub static ABBREVIATION_SET: Lazy<HashSet<String>> = Lazy::new(|| word_set(ABBREVIATIONS));
pub static HONORIFIC_SET: Lazy<HashSet<String>> = Lazy::new(|| word_set(HONORIFICS));
pub static STOPWORD_SET: Lazy<HashSet<String>> = Lazy::new(|| word_set(STOPWORDS));
pub static REPORTING_VERB_SET: Lazy<HashSet<String>> = Lazy::new(|| word_set(REPORTING_VERBS));
pub static OPINION_CUE_SET: Lazy<HashSet<String>> = Lazy::new(|| word_set(OPINION_CUES));
pub static MODAL_SET: Lazy<HashSet<String>> = Lazy::new(|| word_set(MODALS));
pub static SENSORY_SET: Lazy<HashSet<String>> = Lazy::new(|| word_set(SENSORY_ADJECTIVES));
pub static PAST_IRREGULAR_SET: Lazy<HashSet<String>> = Lazy::new(|| word_set(PAST_IRREGULAR));

/// Parses `word<TAB>number` lines.
pub fn weighted_words(text: &str, source_name: &str) -> crate::Result<HashMap<String, f64>> {
    let mut out = HashMap::new();
    for (line, content) in entries(text) {
        let mut cols = content.split('\t');
        let (Some(word), Some(value), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(crate::Error::parse(source_name, line, "expected 2 tab-separated columns"));
        };
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| crate::Error::parse(source_name, line, format!("not a number: {value:?}")))?;
        out.insert(word.trim().to_lowercase(), value);
    }
    Ok(out)
}
