//! Linguistic analysis engine for news articles.
//!
//! The pipeline turns plain article text into a [`Document`], scores every
//! sentence for sentiment, subjectivity and discourse mode, extracts the
//! characters and topic keywords the article is built around, and rolls
//! everything up into an [`AnalysisResult`]: summary levels, radar data,
//! word-cloud counts and the misleading-news pattern findings.
//!
//! ```
//! use sirenless_core::{analyze, AnalysisConfig};
//!
//! let result = analyze("Officials said the bridge reopened. Traffic moved again.", None, &AnalysisConfig::default()).unwrap();
//! assert_eq!(result.sentences.len(), 2);
//! ```

pub mod analysis;
pub mod discourse;
pub mod entities;
mod error;
pub mod ingest;
pub mod metrics;
pub mod resources;
pub mod scoring;
pub mod store;

pub use analysis::{analyze, AnalysisConfig, AnalysisResult, Analyzer, ConfigOverrides, SCHEMA_VERSION};
pub use discourse::{DiscourseLabel, DiscourseMode, DiscourseModel, LabelSource};
pub use entities::{Character, Marker, MarkerKind, Topic, TopicModel};
pub use error::{Error, Result};
pub use ingest::{Document, ParagraphSpan, SentenceSpan, Token, TokenKind};
pub use metrics::{ArticleMetrics, SentenceSentiment, SentimentLexicon};
pub use scoring::{ArticleSummary, DiscourseHistogram, PatternReport, RadarData, Thresholds};
pub use store::AnalysisStore;
