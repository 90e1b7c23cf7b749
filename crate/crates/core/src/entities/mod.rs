//! Characters ("who"), topic keywords ("what"), sentence markers and
//! word-cloud counts.

mod characters;
mod lda;
mod stemmer;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

pub use characters::{extract_characters, Character};
pub use lda::{lda_fit, top_keywords, LdaParams, TopicModel};
pub use stemmer::stem;

use crate::ingest::{Document, Token};
use crate::resources::STOPWORD_SET;
use crate::Result;

/// Word-cloud entries kept after sorting.
pub const WORDCLOUD_LIMIT: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Keyword {
    pub stem: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Topic {
    pub id: usize,
    /// Highest weight first.
    pub keywords: Vec<Keyword>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarkerKind {
    Character,
    Keyword,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marker {
    pub sentence: usize,
    pub kind: MarkerKind,
    /// Character id or topic id.
    pub ref_id: usize,
    pub stack_position: usize,
}

/// Stem of a content word: a word token whose lowercase form is not a
/// stopword.
pub fn content_stem(token: &Token, stopwords: &HashSet<String>) -> Option<String> {
    (token.is_word() && !stopwords.contains(&token.lower)).then(|| stem(&token.lower))
}

/// One bag of content stems per paragraph, for per-article LDA.
pub fn paragraph_bags(doc: &Document) -> Vec<Vec<String>> {
    let mut bags = vec![Vec::new(); doc.paragraphs.len()];
    for s in &doc.sentences {
        bags[s.paragraph].extend(s.tokens.iter().filter_map(|t| content_stem(t, &STOPWORD_SET)));
    }
    bags
}

/// Turns a fitted model into topics carrying their top `n` keywords.
pub fn topics_from_model(model: &TopicModel, n: usize) -> Result<Vec<Topic>> {
    (0..model.k)
        .map(|id| {
            let keywords = top_keywords(model, id, n)?
                .into_iter()
                .map(|(stem, weight)| Keyword { stem, weight })
                .collect();
            Ok(Topic { id, keywords })
        })
        .collect()
}

/// Attaches character and keyword markers to sentences.
///
/// A sentence gets one character marker per character whose canonical name
/// or alias occurs in it, and one keyword marker per topic with a keyword
/// among its stems. Within a sentence the stack is characters by id, then
/// topics by id.
pub fn assign_markers(doc: &Document, characters: &[Character], topics: &[Topic]) -> Vec<Marker> {
    let mut per_sentence: BTreeMap<usize, Vec<(MarkerKind, usize)>> = BTreeMap::new();

    for c in characters {
        for &s in &c.mention_sentences {
            per_sentence.entry(s).or_default().push((MarkerKind::Character, c.id));
        }
    }

    for s in &doc.sentences {
        let stems: HashSet<String> = s.tokens.iter().filter_map(|t| content_stem(t, &STOPWORD_SET)).collect();
        for topic in topics {
            if topic.keywords.iter().any(|k| stems.contains(&k.stem)) {
                per_sentence.entry(s.index).or_default().push((MarkerKind::Keyword, topic.id));
            }
        }
    }

    per_sentence
        .into_iter()
        .flat_map(|(sentence, mut refs)| {
            refs.sort();
            refs.dedup();
            refs.into_iter().enumerate().map(move |(stack_position, (kind, ref_id))| Marker {
                sentence,
                kind,
                ref_id,
                stack_position,
            })
        })
        .collect()
}

/// Stem frequencies for the word cloud: lowercase content words, stemmed
/// with `stemmer`, most frequent first, ties alphabetical, at most 50.
pub fn wordcloud_counts(doc: &Document, stopwords: &HashSet<String>, stemmer: impl Fn(&str) -> String) -> Vec<(String, usize)> {
    let mut counts: HashMap<String, usize> = HashMap::new();
    for t in doc.sentences.iter().flat_map(|s| &s.tokens) {
        if t.is_word() && !stopwords.contains(&t.lower) {
            *counts.entry(stemmer(&t.lower)).or_default() += 1;
        }
    }
    let mut ranked: Vec<(String, usize)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(WORDCLOUD_LIMIT);
    ranked
}
