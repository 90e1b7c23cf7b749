use serde::{Deserialize, Serialize};

use super::Thresholds;
use crate::discourse::DiscourseMode;
use crate::entities::Character;
use crate::metrics::{ArticleMetrics, SentenceSentiment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternKind {
    SentimentDominance,
    SentimentOscillation,
    HighSubjectivity,
    EasyRead,
    ArgumentHeavy,
    CharacterSentimentBias,
    EmotionalQuotes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Alert,
}

impl PatternKind {
    pub const ALL: [PatternKind; 7] = [
        PatternKind::SentimentDominance,
        PatternKind::SentimentOscillation,
        PatternKind::HighSubjectivity,
        PatternKind::EasyRead,
        PatternKind::ArgumentHeavy,
        PatternKind::CharacterSentimentBias,
        PatternKind::EmotionalQuotes,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PatternKind::SentimentDominance => "sentiment-dominance",
            PatternKind::SentimentOscillation => "sentiment-oscillation",
            PatternKind::HighSubjectivity => "high-subjectivity",
            PatternKind::EasyRead => "easy-read",
            PatternKind::ArgumentHeavy => "argument-heavy",
            PatternKind::CharacterSentimentBias => "character-sentiment-bias",
            PatternKind::EmotionalQuotes => "emotional-quotes",
        }
    }
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Alert => "alert",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Evidence {
    Sentences(Vec<usize>),
    Characters(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: PatternKind,
    pub severity: Severity,
    pub evidence: Evidence,
    pub detail: String,
}

/// Findings ordered by kind, at most one per kind.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PatternReport {
    pub findings: Vec<Finding>,
}

impl PatternReport {
    pub fn get(&self, kind: PatternKind) -> Option<&Finding> {
        self.findings.iter().find(|f| f.kind == kind)
    }
}

fn share(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 / whole as f64
    }
}

/// Runs the seven detectors over an analyzed article.
///
/// `sentiments` and `modes` are per sentence and must have equal length.
/// Sentences with `|polarity| >= emotional_polarity` are the emotional set
/// E used by the dominance and oscillation detectors.
pub fn detect_patterns(
    sentiments: &[SentenceSentiment],
    modes: &[DiscourseMode],
    characters: &[Character],
    metrics: &ArticleMetrics,
    t: &Thresholds,
) -> PatternReport {
    assert_eq!(sentiments.len(), modes.len(), "one mode per sentence");
    let mut findings = Vec::new();
    let n = sentiments.len();

    let emotional: Vec<usize> = (0..n).filter(|&i| sentiments[i].polarity.abs() >= t.emotional_polarity).collect();
    let positive: Vec<usize> = emotional.iter().copied().filter(|&i| sentiments[i].polarity > 0.0).collect();
    let negative: Vec<usize> = emotional.iter().copied().filter(|&i| sentiments[i].polarity < 0.0).collect();
    if emotional.len() >= t.min_emotional_sentences {
        let e = emotional.len();
        let (dominant, sign) = if positive.len() >= negative.len() { (&positive, "positive") } else { (&negative, "negative") };
        if share(dominant.len(), e) >= t.dominance_share {
            findings.push(Finding {
                kind: PatternKind::SentimentDominance,
                severity: Severity::Alert,
                evidence: Evidence::Sentences(dominant.clone()),
                detail: format!("{} of {e} emotional sentences are {sign}", dominant.len()),
            });
        }
        if share(positive.len(), e) >= t.oscillation_share && share(negative.len(), e) >= t.oscillation_share {
            findings.push(Finding {
                kind: PatternKind::SentimentOscillation,
                severity: Severity::Alert,
                evidence: Evidence::Sentences(emotional.clone()),
                detail: format!("emotional sentences swing between {} positive and {} negative", positive.len(), negative.len()),
            });
        }
    }

    if metrics.article_subjectivity >= t.subjectivity_warning {
        let severity = if metrics.article_subjectivity >= t.subjectivity_alert { Severity::Alert } else { Severity::Warning };
        let evidence = (0..n).filter(|&i| sentiments[i].subjectivity >= t.subjectivity_warning).collect();
        findings.push(Finding {
            kind: PatternKind::HighSubjectivity,
            severity,
            evidence: Evidence::Sentences(evidence),
            detail: format!("article subjectivity {:.2}", metrics.article_subjectivity),
        });
    }

    if metrics.flesch_score > t.easy_read_flesch {
        findings.push(Finding {
            kind: PatternKind::EasyRead,
            severity: Severity::Info,
            evidence: Evidence::Sentences(Vec::new()),
            detail: format!("reading ease {:.1}", metrics.flesch_score),
        });
    }

    let arguments: Vec<usize> = (0..n).filter(|&i| modes[i] == DiscourseMode::Argument).collect();
    if n > 0 && share(arguments.len(), n) >= t.argument_share {
        findings.push(Finding {
            kind: PatternKind::ArgumentHeavy,
            severity: Severity::Warning,
            detail: format!("{} of {n} sentences are arguments", arguments.len()),
            evidence: Evidence::Sentences(arguments),
        });
    }

    let mut biased: Vec<(usize, f64)> = Vec::new();
    for c in characters {
        let mentions: Vec<usize> = c.mention_sentences.iter().copied().filter(|&i| i < n).collect();
        if mentions.len() < t.character_min_mentions {
            continue;
        }
        let mean = mentions.iter().map(|&i| sentiments[i].polarity).sum::<f64>() / mentions.len() as f64;
        if mean.abs() >= t.character_bias_polarity {
            biased.push((c.id, mean));
        }
    }
    if !biased.is_empty() {
        let opposed = biased.iter().any(|b| b.1 > 0.0) && biased.iter().any(|b| b.1 < 0.0);
        let detail = biased
            .iter()
            .map(|(id, mean)| format!("character {id} mean polarity {mean:+.2}"))
            .collect::<Vec<_>>()
            .join("; ");
        findings.push(Finding {
            kind: PatternKind::CharacterSentimentBias,
            severity: if opposed { Severity::Alert } else { Severity::Warning },
            evidence: Evidence::Characters(biased.iter().map(|b| b.0).collect()),
            detail,
        });
    }

    let quotes: Vec<usize> = (0..n).filter(|&i| modes[i] == DiscourseMode::Quote).collect();
    let extreme_quotes: Vec<usize> = quotes.iter().copied().filter(|&i| sentiments[i].extreme).collect();
    if quotes.len() >= t.min_quote_sentences && share(extreme_quotes.len(), quotes.len()) >= t.emotional_quote_share {
        findings.push(Finding {
            kind: PatternKind::EmotionalQuotes,
            severity: Severity::Alert,
            detail: format!("{} of {} quotes carry extreme sentiment", extreme_quotes.len(), quotes.len()),
            evidence: Evidence::Sentences(extreme_quotes),
        });
    }

    findings.sort_by_key(|f| f.kind);
    PatternReport { findings }
}
