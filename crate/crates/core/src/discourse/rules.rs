use super::{DiscourseLabel, DiscourseMode, FeatureVector, LabelSource};

pub const QUOTE_FRACTION_THRESHOLD: f64 = 0.5;
pub const NUMERIC_DENSITY_THRESHOLD: f64 = 0.2;
pub const MODAL_THRESHOLD: u32 = 2;

/// Deterministic rule cascade; the first matching rule wins.
///
/// 1. Mostly quoted, or partly quoted with a reporting verb: Quote.
/// 2. An opinion cue, first person, or two or more modals: Argument.
/// 3. A date or year plus a name introduced earlier: Background.
/// 4. Dense with numbers, or a sensory adjective: Description.
/// 5. Otherwise Narration.
pub fn rule_baseline(f: &FeatureVector) -> DiscourseLabel {
    let mode = if f.quoted_token_fraction >= QUOTE_FRACTION_THRESHOLD
        || (f.quoted_token_fraction > 0.0 && f.has_reporting_verb)
    {
        DiscourseMode::Quote
    } else if f.opinion_cue_count >= 1 || f.first_person || f.modal_count >= MODAL_THRESHOLD {
        DiscourseMode::Argument
    } else if f.date_or_year_present && f.refers_to_earlier_entity {
        DiscourseMode::Background
    } else if f.numeric_density >= NUMERIC_DENSITY_THRESHOLD || f.sensory_cue_count >= 1 {
        DiscourseMode::Description
    } else {
        DiscourseMode::Narration
    };
    DiscourseLabel {
        mode,
        confidence: 1.0,
        source: LabelSource::Rule,
    }
}
