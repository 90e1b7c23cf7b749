use std::collections::HashSet;

use once_cell::sync::Lazy;
use regex::Regex;
use serde::{Deserialize, Serialize};

use super::DiscourseMode;
use crate::ingest::{Token, TokenKind};
use crate::resources::{
    MODAL_SET, OPINION_CUE_SET, PAST_IRREGULAR_SET, REPORTING_VERB_SET, SENSORY_SET, STOPWORD_SET,
};

/// Bumped whenever the dense layout or a feature's meaning changes.
pub const FEATURE_VERSION: u32 = 1;

/// Token counts above this saturate in the dense vector.
const TOKEN_COUNT_SCALE: f64 = 50.0;

pub const FEATURE_NAMES: [&str; 17] = [
    "quoted_token_fraction",
    "has_reporting_verb",
    "first_person",
    "opinion_cue_count",
    "modal_count",
    "sensory_cue_count",
    "past_tense_fraction",
    "date_or_year_present",
    "refers_to_earlier_entity",
    "numeric_density",
    "sentence_position",
    "token_count",
    "prev_narration",
    "prev_argument",
    "prev_quote",
    "prev_description",
    "prev_background",
];

const FIRST_PERSON: [&str; 10] = ["i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves"];

static DATE_WORD: Lazy<Regex> = Lazy::new(|| {
    Regex::new(concat!(
        r"^(?:1[5-9]\d\d|20\d\d)s?$|",
        r"^(?:january|february|march|april|june|july|august|september|sept|october|november|december|",
        r"jan|feb|aug|sep|oct|nov|dec|",
        r"monday|tuesday|wednesday|thursday|friday|saturday|sunday|yesterday|today|tomorrow)$"
    ))
    .expect("valid regex")
});

/// Years (`1997`, `1990s`), month and weekday names, and relative days.
pub fn is_date_word(lower: &str) -> bool {
    DATE_WORD.is_match(lower)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    /// Word tokens inside balanced quote-mark pairs over all word tokens.
    pub quoted_token_fraction: f64,
    pub has_reporting_verb: bool,
    pub first_person: bool,
    pub opinion_cue_count: u32,
    pub modal_count: u32,
    pub sensory_cue_count: u32,
    pub past_tense_fraction: f64,
    pub date_or_year_present: bool,
    pub refers_to_earlier_entity: bool,
    /// Number tokens over word and number tokens.
    pub numeric_density: f64,
    pub sentence_position: f64,
    pub token_count: u32,
    pub prev_mode: Option<DiscourseMode>,
}

impl FeatureVector {
    /// Dense values in [`FEATURE_NAMES`] order.
    pub fn to_dense(&self) -> Vec<f64> {
        let flag = |b: bool| if b { 1.0 } else { 0.0 };
        let mut v = vec![
            self.quoted_token_fraction,
            flag(self.has_reporting_verb),
            flag(self.first_person),
            self.opinion_cue_count as f64,
            self.modal_count as f64,
            self.sensory_cue_count as f64,
            self.past_tense_fraction,
            flag(self.date_or_year_present),
            flag(self.refers_to_earlier_entity),
            self.numeric_density,
            self.sentence_position,
            (self.token_count as f64 / TOKEN_COUNT_SCALE).min(1.0),
        ];
        v.extend(DiscourseMode::ALL.iter().map(|&m| flag(self.prev_mode == Some(m))));
        debug_assert_eq!(v.len(), FEATURE_NAMES.len());
        v
    }
}

/// Where a sentence sits in its document.
#[derive(Debug, Clone, Copy)]
pub struct SentenceContext<'a> {
    pub index: usize,
    pub count: usize,
    pub prev_mode: Option<DiscourseMode>,
    pub earlier_entities: &'a HashSet<String>,
}

/// Remembers capitalized names seen mid-sentence so later sentences can be
/// checked for references back to them.
#[derive(Debug, Clone, Default)]
pub struct EntityTracker {
    seen: HashSet<String>,
}

fn is_entity_word(t: &Token) -> bool {
    t.is_capitalized() && !STOPWORD_SET.contains(&t.lower) && !DATE_WORD.is_match(&t.lower)
}

impl EntityTracker {
    pub fn introduced(&self) -> &HashSet<String> {
        &self.seen
    }

    pub fn observe(&mut self, tokens: &[Token]) {
        let mut words = tokens.iter().filter(|t| t.is_word());
        words.next();
        self.seen.extend(words.filter(|t| is_entity_word(t)).map(|t| t.surface.clone()));
    }
}

/// Marks every token that sits strictly between a pair of matching quote
/// marks. `"` and `'` pair independently; an unmatched trailing mark opens
/// nothing.
fn quoted_mask(tokens: &[Token]) -> Vec<bool> {
    let mut mask = vec![false; tokens.len()];
    for quote in ["\"", "'"] {
        let marks: Vec<usize> = tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| t.kind == TokenKind::QuoteMark && t.surface == quote)
            .map(|(i, _)| i)
            .collect();
        for pair in marks.chunks_exact(2) {
            mask[pair[0] + 1..pair[1]].iter_mut().for_each(|m| *m = true);
        }
    }
    mask
}

fn is_past_tense(word: &str) -> bool {
    (word.len() > 3 && word.ends_with("ed")) || PAST_IRREGULAR_SET.contains(word)
}

/// Computes the feature vector of one sentence. First person, opinion cues,
/// modals and sensory cues are only counted outside quotations.
pub fn extract_features(tokens: &[Token], ctx: &SentenceContext<'_>) -> FeatureVector {
    let word_total = tokens.iter().filter(|t| t.is_word()).count();
    if word_total == 0 {
        return FeatureVector::default();
    }
    let mask = quoted_mask(tokens);

    let mut f = FeatureVector {
        prev_mode: ctx.prev_mode,
        sentence_position: if ctx.count > 1 { ctx.index as f64 / (ctx.count - 1) as f64 } else { 0.0 },
        ..FeatureVector::default()
    };

    let first_word = tokens.iter().position(Token::is_word);
    let mut quoted = 0usize;
    let mut past = 0usize;
    let mut numbers = 0usize;
    for (i, t) in tokens.iter().enumerate() {
        match t.kind {
            TokenKind::Number => {
                numbers += 1;
                f.date_or_year_present |= DATE_WORD.is_match(&t.lower);
            }
            TokenKind::Word => {
                let w = t.lower.as_str();
                // Capitalized "May" past the first word is the month.
                let month_may = t.surface == "May" && Some(i) != first_word;
                f.has_reporting_verb |= REPORTING_VERB_SET.contains(w);
                f.date_or_year_present |= month_may || DATE_WORD.is_match(w);
                f.refers_to_earlier_entity |= is_entity_word(t) && ctx.earlier_entities.contains(&t.surface);
                if is_past_tense(w) {
                    past += 1;
                }
                if mask[i] {
                    quoted += 1;
                    continue;
                }
                f.first_person |= FIRST_PERSON.contains(&w) && t.surface != "US";
                f.opinion_cue_count += OPINION_CUE_SET.contains(w) as u32;
                f.modal_count += (MODAL_SET.contains(w) && !month_may) as u32;
                f.sensory_cue_count += SENSORY_SET.contains(w) as u32;
            }
            _ => {}
        }
    }

    let words = word_total as f64;
    f.quoted_token_fraction = quoted as f64 / words;
    f.past_tense_fraction = past as f64 / words;
    f.token_count = (word_total + numbers) as u32;
    f.numeric_density = numbers as f64 / (word_total + numbers) as f64;
    f
}
