use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const THRESHOLDS_VERSION: u32 = 1;

/// Tunable cut-offs for the pattern detectors.
///
/// Only the subjectivity warning (0.2) and the readability cut-off (30)
/// come from observed misleading-news articles; the rest are this engine's
/// own choices. Overrides are read from a TOML file of `name = number`
/// pairs plus `version = 1`; omitted names keep their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub version: u32,
    /// A sentence is emotional when `|polarity|` reaches this.
    pub emotional_polarity: f64,
    /// Emotional sentences needed before dominance/oscillation is judged.
    pub min_emotional_sentences: usize,
    /// Share of emotional sentences with one sign that counts as dominance.
    pub dominance_share: f64,
    /// Minimum share of each sign that counts as oscillation.
    pub oscillation_share: f64,
    pub subjectivity_warning: f64,
    pub subjectivity_alert: f64,
    /// Flesch scores above this read easily.
    pub easy_read_flesch: f64,
    pub argument_share: f64,
    pub character_min_mentions: usize,
    pub character_bias_polarity: f64,
    pub min_quote_sentences: usize,
    /// Share of quotes that must be extreme (`|p| > 0.5`).
    pub emotional_quote_share: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            version: THRESHOLDS_VERSION,
            emotional_polarity: 0.3,
            min_emotional_sentences: 5,
            dominance_share: 0.75,
            oscillation_share: 0.30,
            subjectivity_warning: 0.2,
            subjectivity_alert: 0.4,
            easy_read_flesch: 30.0,
            argument_share: 0.25,
            character_min_mentions: 3,
            character_bias_polarity: 0.25,
            min_quote_sentences: 5,
            emotional_quote_share: 0.4,
        }
    }
}

impl Thresholds {
    pub fn parse(text: &str) -> Result<Self> {
        let t: Thresholds = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != THRESHOLDS_VERSION {
            return Err(Error::Config(format!("unsupported thresholds version {}", self.version)));
        }
        let shares = [
            ("dominance_share", self.dominance_share),
            ("oscillation_share", self.oscillation_share),
            ("argument_share", self.argument_share),
            ("emotional_quote_share", self.emotional_quote_share),
            ("emotional_polarity", self.emotional_polarity),
            ("character_bias_polarity", self.character_bias_polarity),
            ("subjectivity_warning", self.subjectivity_warning),
            ("subjectivity_alert", self.subjectivity_alert),
        ];
        for (name, v) in shares {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} = {v} outside [0, 1]")));
            }
        }
        if !(0.0..=100.0).contains(&self.easy_read_flesch) {
            return Err(Error::Config(format!("easy_read_flesch = {} outside [0, 100]", self.easy_read_flesch)));
        }
        if self.subjectivity_alert < self.subjectivity_warning {
            return Err(Error::Config("subjectivity_alert is below subjectivity_warning".into()));
        }
        Ok(())
    }
}
