use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;

use super::corpus::{corpus_hash, CorpusDocument};
use super::features::{extract_features, EntityTracker, SentenceContext, FEATURE_NAMES, FEATURE_VERSION};
use super::{DiscourseLabel, DiscourseMode, FeatureVector, LabelSource};
use crate::{Error, Result};

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMetadata {
    pub seed: u64,
    pub epochs: u32,
    pub corpus_hash: String,
    pub examples: usize,
}

/// Multiclass linear model: one weight row and bias per discourse mode,
/// rows in [`DiscourseMode::ALL`] order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscourseModel {
    pub format_version: u32,
    pub feature_version: u32,
    pub feature_names: Vec<String>,
    pub classes: Vec<DiscourseMode>,
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
    pub metadata: TrainingMetadata,
}

impl DiscourseModel {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let model: DiscourseModel = serde_json::from_str(&text)?;
        model.check()?;
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json + "\n").map_err(|e| Error::io(path, e))
    }

    /// Verifies the model matches this build's feature extraction.
    pub fn check(&self) -> Result<()> {
        if self.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Model(format!("unsupported model format {}", self.format_version)));
        }
        if self.feature_version != FEATURE_VERSION {
            return Err(Error::Model(format!(
                "model built for feature version {}, this build extracts version {FEATURE_VERSION}",
                self.feature_version
            )));
        }
        if self.classes != DiscourseMode::ALL {
            return Err(Error::Model("class list must be the five discourse modes in canonical order".into()));
        }
        if self.weights.len() != self.classes.len() || self.bias.len() != self.classes.len() {
            return Err(Error::Model("one weight row and bias per class required".into()));
        }
        let dim = self.feature_names.len();
        if let Some(row) = self.weights.iter().find(|r| r.len() != dim) {
            return Err(Error::Model(format!("weight row has {} entries, expected {dim}", row.len())));
        }
        if self.feature_names.iter().map(String::as_str).ne(FEATURE_NAMES) {
            return Err(Error::Model(format!(
                "model has {dim} features, extractor produces {} ({})",
                FEATURE_NAMES.len(),
                FEATURE_NAMES.join(", ")
            )));
        }
        Ok(())
    }

    fn scores(&self, x: &[f64]) -> Vec<f64> {
        self.weights
            .iter()
            .zip(&self.bias)
            .map(|(w, b)| b + w.iter().zip(x).map(|(wi, xi)| wi * xi).sum::<f64>())
            .collect()
    }
}

/// Highest score wins; ties go to the earlier mode in [`DiscourseMode::TIE_BREAK`].
fn argmax(scores: &[f64]) -> DiscourseMode {
    let mut best = DiscourseMode::TIE_BREAK[0];
    for &m in &DiscourseMode::TIE_BREAK[1..] {
        if scores[m.index()] > scores[best.index()] {
            best = m;
        }
    }
    best
}

fn softmax_at(scores: &[f64], i: usize) -> f64 {
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = scores.iter().map(|s| (s - max).exp()).sum();
    (scores[i] - max).exp() / total
}

pub fn classify(features: &FeatureVector, model: &DiscourseModel) -> Result<DiscourseLabel> {
    let x = features.to_dense();
    let dim = model.feature_names.len();
    if x.len() != dim || model.weights.iter().any(|w| w.len() != dim) || model.weights.len() != DiscourseMode::ALL.len() {
        return Err(Error::Model(format!("feature dimension {} does not match model dimension {dim}", x.len())));
    }
    let scores = model.scores(&x);
    let mode = argmax(&scores);
    Ok(DiscourseLabel {
        mode,
        confidence: softmax_at(&scores, mode.index()),
        source: LabelSource::Model,
    })
}

/// Builds (dense features, gold class) pairs, using gold labels as the
/// previous-mode context.
pub(crate) fn training_examples(corpus: &[CorpusDocument]) -> Vec<(Vec<f64>, DiscourseMode)> {
    let mut out = Vec::new();
    for doc in corpus {
        let mut tracker = EntityTracker::default();
        let count = doc.sentences.len();
        for (i, s) in doc.sentences.iter().enumerate() {
            let ctx = SentenceContext {
                index: i,
                count,
                prev_mode: i.checked_sub(1).map(|j| doc.sentences[j].mode),
                earlier_entities: tracker.introduced(),
            };
            out.push((extract_features(&s.tokens, &ctx).to_dense(), s.mode));
            tracker.observe(&s.tokens);
        }
    }
    out
}

/// Trains an averaged perceptron. Example order is shuffled each epoch with
/// a ChaCha8 stream seeded by `seed`, so equal inputs give bit-identical
/// weights.
pub fn train(corpus: &[CorpusDocument], epochs: u32, seed: u64) -> Result<DiscourseModel> {
    let examples = training_examples(corpus);
    if examples.is_empty() {
        return Err(Error::Train("corpus has no sentences".into()));
    }
    let mut distinct: Vec<DiscourseMode> = examples.iter().map(|(_, m)| *m).collect();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::Train(format!("corpus needs at least 2 distinct labels, found {}", distinct.len())));
    }
    if epochs == 0 {
        return Err(Error::Train("epochs must be at least 1".into()));
    }

    let classes = DiscourseMode::ALL.len();
    let dim = FEATURE_NAMES.len();
    let mut weights = vec![vec![0.0; dim]; classes];
    let mut bias = vec![0.0; classes];
    let mut weight_sums = vec![vec![0.0; dim]; classes];
    let mut bias_sums = vec![0.0; classes];
    let mut steps = 0u64;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..examples.len()).collect();
    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let (x, gold) = &examples[i];
            let scores: Vec<f64> = weights
                .iter()
                .zip(&bias)
                .map(|(w, b)| b + w.iter().zip(x).map(|(wi, xi)| wi * xi).sum::<f64>())
                .collect();
            let predicted = argmax(&scores);
            if predicted != *gold {
                let (g, p) = (gold.index(), predicted.index());
                for (j, &xj) in x.iter().enumerate() {
                    weights[g][j] += xj;
                    weights[p][j] -= xj;
                }
                bias[g] += 1.0;
                bias[p] -= 1.0;
            }
            for c in 0..classes {
                for j in 0..dim {
                    weight_sums[c][j] += weights[c][j];
                }
                bias_sums[c] += bias[c];
            }
            steps += 1;
        }
    }

    let n = steps as f64;
    Ok(DiscourseModel {
        format_version: MODEL_FORMAT_VERSION,
        feature_version: FEATURE_VERSION,
        feature_names: FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
        classes: DiscourseMode::ALL.to_vec(),
        weights: weight_sums.into_iter().map(|row| row.into_iter().map(|v| v / n).collect()).collect(),
        bias: bias_sums.into_iter().map(|v| v / n).collect(),
        metadata: TrainingMetadata {
            seed,
            epochs,
            corpus_hash: corpus_hash(corpus),
            examples: examples.len(),
        },
    })
}
