//! Lexicon-based sentiment and subjectivity, and Flesch reading ease.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::ingest::Token;
use crate::resources;
use crate::{Error, Result};

/// Sentences whose polarity magnitude exceeds this are flagged as extreme.
pub const EXTREME_POLARITY: f64 = 0.5;
/// A lexicon hit up to this many words after a negator is negated.
pub const NEGATION_WINDOW: usize = 2;
pub const NEGATION_FACTOR: f64 = -0.5;

#[derive(Debug, Clone, Default)]
pub struct SentimentLexicon {
    entries: HashMap<String, (f64, f64)>,
    negators: HashSet<String>,
    intensifiers: HashMap<String, f64>,
}

static BUNDLED: Lazy<SentimentLexicon> = Lazy::new(|| {
    let (lexicon, _) = SentimentLexicon::parse(resources::LEXICON, "lexicon.tsv").expect("bundled lexicon is valid");
    lexicon
});

static BUNDLED_INTENSIFIERS: Lazy<HashMap<String, f64>> = Lazy::new(|| {
    resources::weighted_words(resources::INTENSIFIERS, "intensifiers.tsv").expect("bundled intensifiers are valid")
});

impl SentimentLexicon {
    pub fn bundled() -> &'static SentimentLexicon {
        &BUNDLED
    }

    pub fn new(
        entries: HashMap<String, (f64, f64)>,
        negators: HashSet<String>,
        intensifiers: HashMap<String, f64>,
    ) -> Result<Self> {
        for (lemma, &(p, s)) in &entries {
            if !(-1.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&s) {
                return Err(Error::Config(format!("lexicon entry {lemma:?} out of range: ({p}, {s})")));
            }
        }
        for (word, &m) in &intensifiers {
            if !(m > 0.0 && m <= 2.0) {
                return Err(Error::Config(format!("intensifier {word:?} multiplier {m} outside (0, 2]")));
            }
            if negators.contains(word) {
                return Err(Error::Config(format!("{word:?} is both a negator and an intensifier")));
            }
        }
        Ok(SentimentLexicon {
            entries,
            negators,
            intensifiers,
        })
    }

    /// Parses `lemma<TAB>polarity<TAB>subjectivity` rows and attaches the
    /// bundled negators and intensifiers. Returns the lexicon and the number
    /// of duplicate lemmas (the last row for a lemma wins).
    pub fn parse(text: &str, source_name: &str) -> Result<(Self, usize)> {
        let mut entries = HashMap::new();
        let mut duplicates = 0;
        for (line, content) in resources::entries(text) {
            let cols: Vec<&str> = content.split('\t').collect();
            if cols.len() != 3 {
                return Err(Error::parse(source_name, line, format!("expected 3 tab-separated columns, found {}", cols.len())));
            }
            let number = |s: &str, what: &str| -> Result<f64> {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::parse(source_name, line, format!("{what} is not a number: {s:?}")))
            };
            let polarity = number(cols[1], "polarity")?;
            let subjectivity = number(cols[2], "subjectivity")?;
            if !(-1.0..=1.0).contains(&polarity) {
                return Err(Error::parse(source_name, line, format!("polarity {polarity} outside [-1, 1]")));
            }
            if !(0.0..=1.0).contains(&subjectivity) {
                return Err(Error::parse(source_name, line, format!("subjectivity {subjectivity} outside [0, 1]")));
            }
            let lemma = cols[0].trim().to_lowercase();
            if entries.insert(lemma, (polarity, subjectivity)).is_some() {
                duplicates += 1;
            }
        }
        let lexicon = SentimentLexicon::new(entries, resources::word_set(resources::NEGATORS), BUNDLED_INTENSIFIERS.clone())?;
        Ok((lexicon, duplicates))
    }

    pub fn load(path: &Path) -> Result<(Self, usize)> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_negator(&self, word: &str) -> bool {
        self.negators.contains(word)
    }

    pub fn intensifier(&self, word: &str) -> Option<f64> {
        self.intensifiers.get(word).copied()
    }

    /// Looks up a lowercased word, falling back to stripping `-s`, `-ed`
    /// and `-ing` (with the usual `e`-restoration and consonant undoubling).
    pub fn lookup(&self, word: &str) -> Option<(f64, f64)> {
        if let Some(&hit) = self.entries.get(word) {
            return Some(hit);
        }
        suffix_candidates(word).find_map(|c| self.entries.get(&c).copied())
    }
}

fn undouble(stem: &str) -> Option<String> {
    let b = stem.as_bytes();
    let n = b.len();
    (n >= 3 && b[n - 1] == b[n - 2] && !b"aeiouy".contains(&b[n - 1])).then(|| stem[..n - 1].to_string())
}

fn suffix_candidates(word: &str) -> impl Iterator<Item = String> {
    let mut out = Vec::new();
    if let Some(stem) = word.strip_suffix("ing").filter(|s| s.len() >= 2) {
        out.push(stem.to_string());
        out.push(format!("{stem}e"));
        out.extend(undouble(stem));
    } else if let Some(stem) = word.strip_suffix("ed").filter(|s| s.len() >= 2) {
        out.push(stem.to_string());
        out.push(format!("{stem}e"));
        out.extend(undouble(stem));
        if let Some(y) = stem.strip_suffix('i') {
            out.push(format!("{y}y"));
        }
    } else if let Some(stem) = word.strip_suffix("ies").filter(|s| s.len() >= 2) {
        out.push(format!("{stem}y"));
    } else if let Some(stem) = word.strip_suffix('s').filter(|s| s.len() >= 2 && !s.ends_with('s')) {
        out.push(stem.to_string());
        if let Some(e) = stem.strip_suffix('e') {
            out.push(e.to_string());
        }
    }
    out.into_iter()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentenceSentiment {
    pub polarity: f64,
    pub subjectivity: f64,
    /// `|polarity| > 0.5`.
    pub extreme: bool,
}

impl SentenceSentiment {
    pub fn new(polarity: f64, subjectivity: f64) -> Self {
        SentenceSentiment {
            polarity,
            subjectivity,
            extreme: polarity.abs() > EXTREME_POLARITY,
        }
    }
}

/// Scores one tokenized sentence.
///
/// Every word with a lexicon entry contributes its polarity, multiplied by
/// -0.5 when a negator is among the two preceding words and by the
/// intensifier's multiplier when the word right before it is an
/// intensifier. Polarity is the mean contribution, clamped to [-1, 1];
/// subjectivity is the mean subjectivity of the same hits. A sentence with
/// no hits scores (0, 0).
pub fn sentence_sentiment(tokens: &[Token], lexicon: &SentimentLexicon) -> SentenceSentiment {
    let words: Vec<&str> = tokens.iter().filter(|t| t.is_word()).map(|t| t.lower.as_str()).collect();

    let mut polarity_sum = 0.0;
    let mut subjectivity_sum = 0.0;
    let mut hits = 0usize;
    for (i, word) in words.iter().enumerate() {
        let Some((mut polarity, subjectivity)) = lexicon.lookup(word) else {
            continue;
        };
        let window = &words[i.saturating_sub(NEGATION_WINDOW)..i];
        if window.iter().any(|w| lexicon.is_negator(w)) {
            polarity *= NEGATION_FACTOR;
        }
        if let Some(multiplier) = i.checked_sub(1).and_then(|j| lexicon.intensifier(words[j])) {
            polarity *= multiplier;
        }
        polarity_sum += polarity;
        subjectivity_sum += subjectivity;
        hits += 1;
    }

    if hits == 0 {
        return SentenceSentiment::new(0.0, 0.0);
    }
    let n = hits as f64;
    SentenceSentiment::new((polarity_sum / n).clamp(-1.0, 1.0), (subjectivity_sum / n).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArticleMetrics {
    /// Signed mean of sentence polarities.
    pub article_polarity: f64,
    pub article_subjectivity: f64,
    pub flesch_score: f64,
}

impl ArticleMetrics {
    pub fn compute(sentences: &[SentenceSentiment], word_count: usize, syllable_count: usize) -> Result<Self> {
        let flesch_score = flesch_reading_ease(word_count, sentences.len(), syllable_count)?;
        let (article_polarity, article_subjectivity) = if sentences.is_empty() {
            (0.0, 0.0)
        } else {
            let n = sentences.len() as f64;
            (
                sentences.iter().map(|s| s.polarity).sum::<f64>() / n,
                sentences.iter().map(|s| s.subjectivity).sum::<f64>() / n,
            )
        };
        Ok(ArticleMetrics {
            article_polarity,
            article_subjectivity,
            flesch_score,
        })
    }
}

/// Unclamped Flesch reading ease:
/// `206.835 - 1.015 * words/sentences - 84.6 * syllables/words`.
pub fn flesch_raw(word_count: usize, sentence_count: usize, syllable_count: usize) -> Result<f64> {
    if sentence_count == 0 {
        return Err(Error::Metric("Flesch reading ease needs at least one sentence".into()));
    }
    if word_count == 0 {
        return Err(Error::Metric("Flesch reading ease needs at least one word".into()));
    }
    let words = word_count as f64;
    Ok(206.835 - 1.015 * (words / sentence_count as f64) - 84.6 * (syllable_count as f64 / words))
}

/// Flesch reading ease clamped to [0, 100].
pub fn flesch_reading_ease(word_count: usize, sentence_count: usize, syllable_count: usize) -> Result<f64> {
    Ok(flesch_raw(word_count, sentence_count, syllable_count)?.clamp(0.0, 100.0))
}
