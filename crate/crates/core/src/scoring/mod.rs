//! Article summary levels, radar-chart aggregates and misleading-news
//! pattern detection.

mod patterns;
mod thresholds;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use patterns::{detect_patterns, Evidence, Finding, PatternKind, PatternReport, Severity};
pub use thresholds::{Thresholds, THRESHOLDS_VERSION};

use crate::discourse::DiscourseMode;
use crate::metrics::{ArticleMetrics, SentenceSentiment};

/// Grades are rounded to this many decimals before binning so that
/// floating-point noise never moves a value across a bin edge.
const GRADE_DECIMALS: i32 = 9;

fn round_grade(v: f64) -> f64 {
    let scale = 10f64.powi(GRADE_DECIMALS);
    (v * scale).round() / scale
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscourseHistogram {
    /// Always holds all five modes.
    pub counts: BTreeMap<DiscourseMode, usize>,
}

impl DiscourseHistogram {
    pub fn from_modes(modes: impl IntoIterator<Item = DiscourseMode>) -> Self {
        let mut counts: BTreeMap<DiscourseMode, usize> = DiscourseMode::ALL.iter().map(|&m| (m, 0)).collect();
        for m in modes {
            *counts.entry(m).or_default() += 1;
        }
        DiscourseHistogram { counts }
    }

    pub fn get(&self, mode: DiscourseMode) -> usize {
        self.counts.get(&mode).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WritingStyle {
    Rigorous,
    Balanced,
    Literative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SentimentLevel {
    Calm,
    Regular,
    Emotional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReadabilityLevel {
    Easy,
    Medium,
    Hard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReliabilityLevel {
    Low,
    Medium,
    High,
}

/// Picks the level of the half-open bin `[edges[i], edges[i+1])` holding
/// `grade`; the last bin is closed.
fn bin<L: Copy>(grade: f64, edges: [f64; 2], levels: [L; 3]) -> L {
    if grade < edges[0] {
        levels[0]
    } else if grade < edges[1] {
        levels[1]
    } else {
        levels[2]
    }
}

impl WritingStyle {
    pub fn from_grade(grade: f64) -> Self {
        bin(grade, [0.2, 0.4], [WritingStyle::Rigorous, WritingStyle::Balanced, WritingStyle::Literative])
    }
}

impl SentimentLevel {
    pub fn from_grade(grade: f64) -> Self {
        bin(grade, [0.1, 0.2], [SentimentLevel::Calm, SentimentLevel::Regular, SentimentLevel::Emotional])
    }
}

impl ReadabilityLevel {
    /// Flesch semantics: a higher score is easier to read.
    pub fn from_grade(grade: f64) -> Self {
        bin(grade, [30.0, 70.0], [ReadabilityLevel::Hard, ReadabilityLevel::Medium, ReadabilityLevel::Easy])
    }
}

impl ReliabilityLevel {
    pub fn from_grade(grade: f64) -> Self {
        bin(grade, [40.0, 70.0], [ReliabilityLevel::Low, ReliabilityLevel::Medium, ReliabilityLevel::High])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Graded<L> {
    pub level: L,
    pub grade: f64,
}

/// `(argument + quote - description - background) / max(narration, 1)`,
/// clamped to [0, 1].
pub fn writing_style(histogram: &DiscourseHistogram) -> Graded<WritingStyle> {
    use DiscourseMode::*;
    let signed = histogram.get(Argument) as f64 + histogram.get(Quote) as f64
        - histogram.get(Description) as f64
        - histogram.get(Background) as f64;
    let grade = round_grade((signed / histogram.get(Narration).max(1) as f64).clamp(0.0, 1.0));
    Graded {
        level: WritingStyle::from_grade(grade),
        grade,
    }
}

/// Bins the magnitude of the article polarity.
pub fn sentiment_level(article_polarity: f64) -> Graded<SentimentLevel> {
    let grade = round_grade(article_polarity.abs().clamp(0.0, 1.0));
    Graded {
        level: SentimentLevel::from_grade(grade),
        grade,
    }
}

pub fn readability_level(flesch_score: f64) -> Graded<ReadabilityLevel> {
    let grade = round_grade(flesch_score.clamp(0.0, 100.0));
    Graded {
        level: ReadabilityLevel::from_grade(grade),
        grade,
    }
}

/// `100 - (|polarity| + subjectivity) * 100`, clamped to [0, 100].
pub fn reliability(article_polarity: f64, article_subjectivity: f64) -> Graded<ReliabilityLevel> {
    let grade = round_grade((100.0 - (article_polarity.abs() + article_subjectivity) * 100.0).clamp(0.0, 100.0));
    Graded {
        level: ReliabilityLevel::from_grade(grade),
        grade,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArticleSummary {
    pub writing_style: Graded<WritingStyle>,
    pub sentiment: Graded<SentimentLevel>,
    pub readability: Graded<ReadabilityLevel>,
    pub reliability: Graded<ReliabilityLevel>,
}

impl ArticleSummary {
    pub fn compute(histogram: &DiscourseHistogram, metrics: &ArticleMetrics) -> Self {
        ArticleSummary {
            writing_style: writing_style(histogram),
            sentiment: sentiment_level(metrics.article_polarity),
            readability: readability_level(metrics.flesch_score),
            reliability: reliability(metrics.article_polarity, metrics.article_subjectivity),
        }
    }

    /// True when every stored level is the one its stored grade bins to.
    pub fn levels_match_grades(&self) -> bool {
        WritingStyle::from_grade(self.writing_style.grade) == self.writing_style.level
            && SentimentLevel::from_grade(self.sentiment.grade) == self.sentiment.level
            && ReadabilityLevel::from_grade(self.readability.grade) == self.readability.level
            && ReliabilityLevel::from_grade(self.reliability.grade) == self.reliability.level
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadarData {
    /// Sentence counts for strong-negative (`<= -0.5`), negative
    /// (`(-0.5, -0.1]`), neutral (`(-0.1, 0.1)`), positive (`[0.1, 0.5)`)
    /// and strong-positive (`>= 0.5`) polarity.
    pub sentiment_axes: [usize; 5],
    /// Sentence share per mode in [`DiscourseMode::ALL`] order.
    pub discourse_axes: [f64; 5],
}

pub fn polarity_bin(p: f64) -> usize {
    if p <= -0.5 {
        0
    } else if p <= -0.1 {
        1
    } else if p < 0.1 {
        2
    } else if p < 0.5 {
        3
    } else {
        4
    }
}

pub fn radar_data(sentiments: &[SentenceSentiment], histogram: &DiscourseHistogram) -> RadarData {
    let mut sentiment_axes = [0usize; 5];
    for s in sentiments {
        sentiment_axes[polarity_bin(s.polarity)] += 1;
    }
    let total = histogram.total();
    let mut discourse_axes = [0.0; 5];
    if total > 0 {
        for m in DiscourseMode::ALL {
            discourse_axes[m.index()] = histogram.get(m) as f64 / total as f64;
        }
    }
    RadarData {
        sentiment_axes,
        discourse_axes,
    }
}
