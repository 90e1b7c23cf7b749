//! The end-to-end pipeline and the analysis JSON it produces.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::discourse::{label_sequence, DiscourseLabel, DiscourseMode, DiscourseModel, LabelSource, Labeler};
use crate::entities::{
    assign_markers, extract_characters, lda_fit, paragraph_bags, stem, topics_from_model, wordcloud_counts, Character,
    LdaParams, Marker, MarkerKind, Topic, TopicModel,
};
use crate::ingest::{normalize_text, Document, ParagraphSpan};
use crate::metrics::{sentence_sentiment, ArticleMetrics, SentimentLexicon};
use crate::resources::STOPWORD_SET;
use crate::scoring::{detect_patterns, radar_data, ArticleSummary, DiscourseHistogram, Evidence, PatternReport, RadarData, Thresholds};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub seed: u64,
    /// Number of LDA topics fitted per article.
    pub topics: usize,
    /// Dirichlet prior on document-topic mixtures; `50 / topics` when unset.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub iterations: usize,
    pub keywords_per_topic: usize,
    /// Sentiment lexicon TSV; the bundled lexicon when unset.
    pub lexicon_path: Option<PathBuf>,
    /// Trained discourse model; the rule baseline when unset.
    pub model_path: Option<PathBuf>,
    pub thresholds: Thresholds,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            seed: 0,
            topics: 3,
            alpha: None,
            beta: 0.01,
            iterations: 500,
            keywords_per_topic: 5,
            lexicon_path: None,
            model_path: None,
            thresholds: Thresholds::default(),
        }
    }
}

impl AnalysisConfig {
    pub fn lda_params(&self) -> LdaParams {
        LdaParams {
            k: self.topics,
            alpha: self.alpha.unwrap_or(50.0 / self.topics.max(1) as f64),
            beta: self.beta,
            iterations: self.iterations,
            seed: self.seed,
        }
    }
}

/// Per-request changes to an [`Analyzer`]'s config. Paths and thresholds
/// are fixed when the analyzer is built.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigOverrides {
    pub seed: Option<u64>,
    pub topics: Option<usize>,
    pub iterations: Option<usize>,
    pub keywords_per_topic: Option<usize>,
}

impl ConfigOverrides {
    pub fn is_empty(&self) -> bool {
        *self == ConfigOverrides::default()
    }

    pub fn apply(&self, config: &mut AnalysisConfig) {
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(k) = self.topics {
            config.topics = k;
        }
        if let Some(n) = self.iterations {
            config.iterations = n;
        }
        if let Some(n) = self.keywords_per_topic {
            config.keywords_per_topic = n;
        }
    }
}

/// Everything needed to replay an analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub topics: usize,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub keywords_per_topic: usize,
    /// `"bundled"` or the SHA-256 of the lexicon file.
    pub lexicon: String,
    /// `"rules"` or `"model:<corpus hash>"`.
    pub discourse_labeler: String,
    pub thresholds_version: u32,
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentMeta {
    /// Content hash of the normalized text.
    pub id: String,
    pub title: Option<String>,
    pub word_count: usize,
    pub syllable_count: usize,
    pub sentence_count: usize,
    pub paragraph_count: usize,
    pub paragraphs: Vec<ParagraphSpan>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceRecord {
    pub index: usize,
    pub paragraph: usize,
    /// Byte offsets into `AnalysisResult::text`.
    pub span: [usize; 2],
    pub text: String,
    pub polarity: f64,
    pub subjectivity: f64,
    pub extreme: bool,
    pub mode: DiscourseMode,
    pub confidence: f64,
    pub source: LabelSource,
    /// Stack order, bottom first.
    pub markers: Vec<Marker>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub article_polarity: f64,
    pub article_subjectivity: f64,
    pub flesch_score: f64,
    pub histogram: DiscourseHistogram,
    pub radar: RadarData,
}

impl Stats {
    pub fn metrics(&self) -> ArticleMetrics {
        ArticleMetrics {
            article_polarity: self.article_polarity,
            article_subjectivity: self.article_subjectivity,
            flesch_score: self.flesch_score,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordCount {
    pub stem: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisResult {
    pub schema_version: u32,
    /// Hash of the document id and the config echo.
    pub id: String,
    pub document: DocumentMeta,
    /// Normalized article text; every span refers to it.
    pub text: String,
    pub sentences: Vec<SentenceRecord>,
    pub characters: Vec<Character>,
    pub topics: Vec<Topic>,
    pub topic_model: Option<TopicModel>,
    pub stats: Stats,
    pub summary: ArticleSummary,
    pub patterns: PatternReport,
    pub wordcloud: Vec<WordCount>,
    pub config: ConfigEcho,
}

/// Pipeline with its lexicon and discourse model loaded once.
#[derive(Debug, Clone)]
pub struct Analyzer {
    config: AnalysisConfig,
    lexicon: Option<SentimentLexicon>,
    lexicon_tag: String,
    model: Option<DiscourseModel>,
}

const MAX_TOPICS: usize = 50;

fn check_config(config: &AnalysisConfig) -> Result<()> {
    config.thresholds.validate()?;
    if config.topics == 0 || config.keywords_per_topic == 0 || config.iterations == 0 {
        return Err(Error::Config("topics, keywords_per_topic and iterations must be at least 1".into()));
    }
    if config.topics > MAX_TOPICS || config.iterations > 100_000 {
        return Err(Error::Config(format!("at most {MAX_TOPICS} topics and 100000 iterations")));
    }
    if config.beta.is_nan() || config.beta <= 0.0 || config.alpha.is_some_and(|a| a.is_nan() || a <= 0.0) {
        return Err(Error::Config("alpha and beta must be positive".into()));
    }
    Ok(())
}

fn file_hash(path: &std::path::Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

impl Analyzer {
    pub fn new(config: AnalysisConfig) -> Result<Self> {
        check_config(&config)?;
        let (lexicon, lexicon_tag) = match &config.lexicon_path {
            Some(path) => (Some(SentimentLexicon::load(path)?.0), file_hash(path)?),
            None => (None, "bundled".to_string()),
        };
        let model = config.model_path.as_deref().map(DiscourseModel::load).transpose()?;
        Ok(Analyzer {
            config,
            lexicon,
            lexicon_tag,
            model,
        })
    }

    /// A copy with `overrides` applied, sharing the loaded lexicon and model.
    pub fn with_overrides(&self, overrides: &ConfigOverrides) -> Result<Self> {
        let mut config = self.config.clone();
        overrides.apply(&mut config);
        check_config(&config)?;
        Ok(Analyzer {
            config,
            ..self.clone()
        })
    }

    pub fn config(&self) -> &AnalysisConfig {
        &self.config
    }

    fn lexicon(&self) -> &SentimentLexicon {
        self.lexicon.as_ref().unwrap_or_else(|| SentimentLexicon::bundled())
    }

    fn echo(&self) -> ConfigEcho {
        let params = self.config.lda_params();
        ConfigEcho {
            seed: self.config.seed,
            topics: params.k,
            alpha: params.alpha,
            beta: params.beta,
            iterations: params.iterations,
            keywords_per_topic: self.config.keywords_per_topic,
            lexicon: self.lexicon_tag.clone(),
            discourse_labeler: match &self.model {
                Some(m) => format!("model:{}", m.metadata.corpus_hash),
                None => "rules".into(),
            },
            thresholds_version: self.config.thresholds.version,
            thresholds: self.config.thresholds.clone(),
        }
    }

    /// Runs ingest, sentiment, discourse, characters and topics, then
    /// scoring. Deterministic for a given text, title and config.
    pub fn analyze(&self, text: &str, title: Option<String>) -> Result<AnalysisResult> {
        if normalize_text(text).trim().is_empty() {
            return Err(Error::Analyze("text is empty".into()));
        }
        let doc = Document::new(text, title);
        let lexicon = self.lexicon();

        let sentiments: Vec<_> = doc.sentences.iter().map(|s| sentence_sentiment(&s.tokens, lexicon)).collect();
        let metrics = ArticleMetrics::compute(&sentiments, doc.word_count, doc.syllable_count)
            .map_err(|e| Error::Analyze(format!("text has no words to score ({e})")))?;

        let labeler = match &self.model {
            Some(m) => Labeler::Model(m),
            None => Labeler::Rules,
        };
        let labels: Vec<DiscourseLabel> = label_sequence(doc.sentences.iter().map(|s| s.tokens.as_slice()), labeler)?;
        let modes: Vec<DiscourseMode> = labels.iter().map(|l| l.mode).collect();

        let characters = extract_characters(&doc);
        let (topic_model, topics) = match lda_fit(&paragraph_bags(&doc), self.config.lda_params()) {
            Ok(model) => {
                let topics = topics_from_model(&model, self.config.keywords_per_topic)?;
                (Some(model), topics)
            }
            Err(Error::Topic(_)) => (None, Vec::new()),
            Err(e) => return Err(e),
        };
        let markers = assign_markers(&doc, &characters, &topics);

        let histogram = DiscourseHistogram::from_modes(modes.iter().copied());
        let radar = radar_data(&sentiments, &histogram);
        let summary = ArticleSummary::compute(&histogram, &metrics);
        let patterns = detect_patterns(&sentiments, &modes, &characters, &metrics, &self.config.thresholds);
        let wordcloud = wordcloud_counts(&doc, &STOPWORD_SET, stem)
            .into_iter()
            .map(|(stem, count)| WordCount { stem, count })
            .collect();

        let mut by_sentence: HashMap<usize, Vec<Marker>> = HashMap::new();
        for m in markers {
            by_sentence.entry(m.sentence).or_default().push(m);
        }
        let sentences = doc
            .sentences
            .iter()
            .zip(sentiments.iter().zip(&labels))
            .map(|(s, (sent, label))| SentenceRecord {
                index: s.index,
                paragraph: s.paragraph,
                span: [s.start, s.end],
                text: doc.text[s.start..s.end].to_string(),
                polarity: sent.polarity,
                subjectivity: sent.subjectivity,
                extreme: sent.extreme,
                mode: label.mode,
                confidence: label.confidence,
                source: label.source,
                markers: by_sentence.remove(&s.index).unwrap_or_default(),
            })
            .collect();

        let config = self.echo();
        let id = analysis_id(&doc.id, &config)?;
        Ok(AnalysisResult {
            schema_version: SCHEMA_VERSION,
            id,
            document: DocumentMeta {
                id: doc.id.clone(),
                title: doc.title.clone(),
                word_count: doc.word_count,
                syllable_count: doc.syllable_count,
                sentence_count: doc.sentences.len(),
                paragraph_count: doc.paragraphs.len(),
                paragraphs: doc.paragraphs.clone(),
            },
            text: doc.text,
            sentences,
            characters,
            topics,
            topic_model,
            stats: Stats {
                article_polarity: metrics.article_polarity,
                article_subjectivity: metrics.article_subjectivity,
                flesch_score: metrics.flesch_score,
                histogram,
                radar,
            },
            summary,
            patterns,
            wordcloud,
            config,
        })
    }
}

fn analysis_id(document_id: &str, config: &ConfigEcho) -> Result<String> {
    let mut hasher = Sha256::new();
    hasher.update(document_id.as_bytes());
    hasher.update(b"\n");
    hasher.update(serde_json::to_vec(config)?);
    Ok(hex::encode(hasher.finalize())[..32].to_string())
}

/// Analyzes `text` with a freshly loaded [`Analyzer`].
pub fn analyze(text: &str, title: Option<String>, config: &AnalysisConfig) -> Result<AnalysisResult> {
    Analyzer::new(config.clone())?.analyze(text, title)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

impl AnalysisResult {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let result: AnalysisResult = serde_json::from_str(text)?;
        result.validate()?;
        Ok(result)
    }

    /// Checks the cross-field invariants of a result: counts agree, every
    /// marker and piece of evidence resolves, and the summary re-derives
    /// from the stats.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(invalid(format!("schema version {} (expected {SCHEMA_VERSION})", self.schema_version)));
        }
        let n = self.sentences.len();
        if self.document.sentence_count != n {
            return Err(invalid("document.sentence_count differs from sentence records"));
        }
        if self.document.paragraph_count != self.document.paragraphs.len() {
            return Err(invalid("document.paragraph_count differs from paragraph spans"));
        }
        if self.stats.histogram.total() != n {
            return Err(invalid("histogram total differs from sentence count"));
        }
        if self.stats.radar.sentiment_axes.iter().sum::<usize>() != n {
            return Err(invalid("radar sentiment total differs from sentence count"));
        }
        let share_sum: f64 = self.stats.radar.discourse_axes.iter().sum();
        if n > 0 && (share_sum - 1.0).abs() > 1e-9 {
            return Err(invalid(format!("discourse shares sum to {share_sum}")));
        }

        let character_ids: BTreeSet<usize> = self.characters.iter().map(|c| c.id).collect();
        let topic_ids: BTreeSet<usize> = self.topics.iter().map(|t| t.id).collect();
        let mut carried: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut prev_end = 0;
        for (i, s) in self.sentences.iter().enumerate() {
            if s.index != i {
                return Err(invalid(format!("sentence {i} has index {}", s.index)));
            }
            let [start, end] = s.span;
            if start >= end || start < prev_end || self.text.get(start..end) != Some(s.text.as_str()) {
                return Err(invalid(format!("sentence {i} span does not match the text")));
            }
            prev_end = end;
            if !(-1.0..=1.0).contains(&s.polarity) || !(0.0..=1.0).contains(&s.subjectivity) {
                return Err(invalid(format!("sentence {i} scores out of range")));
            }
            if s.extreme != (s.polarity.abs() > crate::metrics::EXTREME_POLARITY) {
                return Err(invalid(format!("sentence {i} extreme flag inconsistent")));
            }
            for (pos, m) in s.markers.iter().enumerate() {
                if m.sentence != i || m.stack_position != pos {
                    return Err(invalid(format!("sentence {i} marker stack out of order")));
                }
                let known = match m.kind {
                    MarkerKind::Character => character_ids.contains(&m.ref_id),
                    MarkerKind::Keyword => topic_ids.contains(&m.ref_id),
                };
                if !known {
                    return Err(invalid(format!("sentence {i} marker refers to unknown {:?} {}", m.kind, m.ref_id)));
                }
                if m.kind == MarkerKind::Character {
                    carried.entry(m.ref_id).or_default().push(i);
                }
            }
            let order: Vec<_> = s.markers.iter().map(|m| (m.kind, m.ref_id)).collect();
            if order.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(format!("sentence {i} markers not in stacking order")));
            }
        }
        for c in &self.characters {
            if carried.get(&c.id).map(Vec::as_slice).unwrap_or(&[]) != c.mention_sentences.as_slice() {
                return Err(invalid(format!("character {} mentions differ from its markers", c.id)));
            }
        }

        let recomputed = ArticleSummary::compute(&self.stats.histogram, &self.stats.metrics());
        if recomputed != self.summary || !self.summary.levels_match_grades() {
            return Err(invalid("summary does not re-derive from stats"));
        }

        for f in &self.patterns.findings {
            let ok = match &f.evidence {
                Evidence::Sentences(ids) => ids.iter().all(|&i| i < n),
                Evidence::Characters(ids) => ids.iter().all(|id| character_ids.contains(id)),
            };
            if !ok {
                return Err(invalid(format!("{:?} evidence does not resolve", f.kind)));
            }
        }
        let kinds: BTreeSet<_> = self.patterns.findings.iter().map(|f| f.kind).collect();
        if kinds.len() != self.patterns.findings.len() {
            return Err(invalid("more than one finding of a kind"));
        }

        if self.wordcloud.len() > crate::entities::WORDCLOUD_LIMIT {
            return Err(invalid("word cloud longer than its limit"));
        }
        if let Some(tm) = &self.topic_model {
            for row in tm.phi.iter().chain(&tm.theta) {
                if (row.iter().sum::<f64>() - 1.0).abs() > 1e-9 || row.iter().any(|&p| p < 0.0) {
                    return Err(invalid("topic model rows are not distributions"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "Mayor Anna Novak opened the new bridge on Monday. \"This bridge is a wonderful gift,\" Novak said.\n\nCritics called the project reckless. I think the costs were terrible. In 2015 Novak had promised a cheaper plan.";

    #[test]
    fn end_to_end() {
        let result = analyze(TEXT, Some("Bridge".into()), &AnalysisConfig::default()).unwrap();
        result.validate().unwrap();
        assert_eq!(result.sentences.len(), 5);
        assert_eq!(result.document.paragraph_count, 2);
        assert_eq!(result.characters[0].canonical, "Anna Novak");
        let modes: Vec<_> = result.sentences.iter().map(|s| s.mode).collect();
        use DiscourseMode::*;
        assert_eq!(modes, vec![Narration, Quote, Argument, Argument, Background]);
        assert_eq!(result.topics.len(), 3);
    }

    #[test]
    fn empty_text_is_rejected() {
        assert!(matches!(analyze("", None, &AnalysisConfig::default()), Err(Error::Analyze(_))));
        assert!(matches!(analyze(" \n\t ", None, &AnalysisConfig::default()), Err(Error::Analyze(_))));
        assert!(matches!(analyze("?!", None, &AnalysisConfig::default()), Err(Error::Analyze(_))));
    }

    #[test]
    fn missing_lexicon_is_io_error() {
        let config = AnalysisConfig {
            lexicon_path: Some("/no/such/lexicon.tsv".into()),
            ..Default::default()
        };
        assert!(matches!(analyze(TEXT, None, &config), Err(Error::Io { .. })));
    }

    #[test]
    fn stopword_only_text_has_no_topics() {
        let result = analyze("It is what it is.", None, &AnalysisConfig::default()).unwrap();
        assert!(result.topics.is_empty());
        assert!(result.topic_model.is_none());
        result.validate().unwrap();
    }

    #[test]
    fn deterministic_json() {
        let a = analyze(TEXT, None, &AnalysisConfig::default()).unwrap().to_json().unwrap();
        let b = analyze(TEXT, None, &AnalysisConfig::default()).unwrap().to_json().unwrap();
        assert_eq!(a, b);
        let other_seed = AnalysisConfig {
            seed: 1,
            ..Default::default()
        };
        let c = analyze(TEXT, None, &other_seed).unwrap();
        assert_ne!(AnalysisResult::from_json(&a).unwrap().id, c.id);
    }

    #[test]
    fn tampered_summary_fails_validation() {
        let mut result = analyze(TEXT, None, &AnalysisConfig::default()).unwrap();
        result.summary.reliability.grade = 12.0;
        assert!(matches!(result.validate(), Err(Error::Invalid(_))));
    }
}
