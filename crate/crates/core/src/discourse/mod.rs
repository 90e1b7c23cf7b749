//! Per-sentence discourse mode labeling.
//!
//! Two labelers share one feature extractor: a fixed rule cascade that is
//! always available, and a linear model trained with averaged perceptron
//! updates when a labeled corpus is supplied. Both label a document greedily
//! from left to right, feeding each sentence's label into the next
//! sentence's features.

mod corpus;
mod eval;
mod features;
mod model;
mod rules;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use corpus::{parse_corpus, read_corpus, CorpusDocument, CorpusSentence};
pub use eval::{evaluate, evaluate_with, score_predictions, ClassScores, EvalReport};
pub use features::{extract_features, is_date_word, EntityTracker, FeatureVector, SentenceContext, FEATURE_NAMES, FEATURE_VERSION};
pub use model::{classify, train, DiscourseModel, TrainingMetadata, MODEL_FORMAT_VERSION};
pub use rules::{rule_baseline, NUMERIC_DENSITY_THRESHOLD, QUOTE_FRACTION_THRESHOLD};

use crate::ingest::Token;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiscourseMode {
    Narration,
    Argument,
    Quote,
    Description,
    Background,
}

impl DiscourseMode {
    /// Declaration order; used for histograms, radar axes and model rows.
    pub const ALL: [DiscourseMode; 5] = [
        DiscourseMode::Narration,
        DiscourseMode::Argument,
        DiscourseMode::Quote,
        DiscourseMode::Description,
        DiscourseMode::Background,
    ];

    /// Preference order when model scores tie.
    pub const TIE_BREAK: [DiscourseMode; 5] = [
        DiscourseMode::Narration,
        DiscourseMode::Description,
        DiscourseMode::Quote,
        DiscourseMode::Background,
        DiscourseMode::Argument,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DiscourseMode::Narration => "Narration",
            DiscourseMode::Argument => "Argument",
            DiscourseMode::Quote => "Quote",
            DiscourseMode::Description => "Description",
            DiscourseMode::Background => "Background",
        }
    }
}

impl fmt::Display for DiscourseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DiscourseMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DiscourseMode::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown discourse mode {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelSource {
    Rule,
    Model,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscourseLabel {
    pub mode: DiscourseMode,
    pub confidence: f64,
    pub source: LabelSource,
}

/// Which labeler to run over a document.
#[derive(Debug, Clone, Copy)]
pub enum Labeler<'a> {
    Rules,
    Model(&'a DiscourseModel),
}

/// Labels a sequence of tokenized sentences left to right.
pub fn label_sequence<'t, I>(sentences: I, labeler: Labeler<'_>) -> Result<Vec<DiscourseLabel>>
where
    I: IntoIterator<Item = &'t [Token]>,
    I::IntoIter: ExactSizeIterator,
{
    let sentences = sentences.into_iter();
    let count = sentences.len();
    let mut tracker = EntityTracker::default();
    let mut labels: Vec<DiscourseLabel> = Vec::with_capacity(count);
    for (index, tokens) in sentences.enumerate() {
        let ctx = SentenceContext {
            index,
            count,
            prev_mode: labels.last().map(|l| l.mode),
            earlier_entities: tracker.introduced(),
        };
        let features = extract_features(tokens, &ctx);
        let label = match labeler {
            Labeler::Rules => rule_baseline(&features),
            Labeler::Model(model) => classify(&features, model)?,
        };
        tracker.observe(tokens);
        labels.push(label);
    }
    Ok(labels)
}
