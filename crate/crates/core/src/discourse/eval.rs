use serde::{Deserialize, Serialize};

use super::corpus::CorpusDocument;
use super::{label_sequence, DiscourseMode, DiscourseModel, Labeler};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassScores {
    pub mode: DiscourseMode,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Gold sentences of this class.
    pub support: usize,
    /// Set when the class never occurs in the gold labels; its F1 is 0.
    pub absent_from_gold: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    /// One row per mode, in [`DiscourseMode::ALL`] order.
    pub per_class: Vec<ClassScores>,
    /// Unweighted mean of the five F1 scores.
    pub macro_f1: f64,
    pub accuracy: f64,
    /// Accuracy of always predicting the most frequent gold class.
    pub majority_rate: f64,
    pub sentences: usize,
}

/// One-vs-rest precision, recall and F1 from parallel gold/predicted lists.
pub fn score_predictions(gold: &[DiscourseMode], predicted: &[DiscourseMode]) -> Result<EvalReport> {
    if gold.is_empty() {
        return Err(Error::Eval("corpus has no sentences".into()));
    }
    if gold.len() != predicted.len() {
        return Err(Error::Eval(format!("{} gold labels but {} predictions", gold.len(), predicted.len())));
    }
    let n = gold.len();
    let mut confusion = [[0usize; 5]; 5];
    for (g, p) in gold.iter().zip(predicted) {
        confusion[g.index()][p.index()] += 1;
    }

    let per_class: Vec<ClassScores> = DiscourseMode::ALL
        .iter()
        .map(|&mode| {
            let c = mode.index();
            let tp = confusion[c][c];
            let support: usize = confusion[c].iter().sum();
            let predicted: usize = confusion.iter().map(|row| row[c]).sum();
            let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
            let precision = ratio(tp, predicted);
            let recall = ratio(tp, support);
            let f1 = if support == 0 || precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            };
            ClassScores {
                mode,
                precision,
                recall,
                f1,
                support,
                absent_from_gold: support == 0,
            }
        })
        .collect();

    let correct: usize = (0..5).map(|c| confusion[c][c]).sum();
    let majority = per_class.iter().map(|c| c.support).max().unwrap_or(0);
    Ok(EvalReport {
        macro_f1: per_class.iter().map(|c| c.f1).sum::<f64>() / per_class.len() as f64,
        accuracy: correct as f64 / n as f64,
        majority_rate: majority as f64 / n as f64,
        per_class,
        sentences: n,
    })
}

/// Labels every corpus document greedily with `model` and scores the
/// result against the gold modes.
pub fn evaluate(model: &DiscourseModel, corpus: &[CorpusDocument]) -> Result<EvalReport> {
    evaluate_with(Labeler::Model(model), corpus)
}

pub fn evaluate_with(labeler: Labeler<'_>, corpus: &[CorpusDocument]) -> Result<EvalReport> {
    let mut gold = Vec::new();
    let mut predicted = Vec::new();
    for doc in corpus {
        let labels = label_sequence(doc.sentences.iter().map(|s| s.tokens.as_slice()), labeler)?;
        gold.extend(doc.sentences.iter().map(|s| s.mode));
        predicted.extend(labels.iter().map(|l| l.mode));
    }
    score_predictions(&gold, &predicted)
}
