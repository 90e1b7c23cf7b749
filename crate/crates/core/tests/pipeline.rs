mod common;

use std::time::Instant;

use sirenless_core::{analyze, AnalysisConfig, AnalysisResult, AnalysisStore, Error};

const TITLE: &str = "Harbor Bridge Vote Splits Riverton Council";

fn fixture_result() -> AnalysisResult {
    let text = common::read_fixture("articles/harbor-bridge.txt");
    analyze(&text, Some(TITLE.into()), &AnalysisConfig::default()).unwrap()
}

#[test]
fn fixture_article_matches_committed_json() {
    let expected = common::read_fixture("articles/harbor-bridge.expected.json");
    let result = fixture_result();
    result.validate().unwrap();
    assert!(result.document.word_count >= 950, "{} words", result.document.word_count);
    assert_eq!(result.to_json().unwrap(), expected);
    assert_eq!(AnalysisResult::from_json(&expected).unwrap(), result);
}

#[test]
fn fixture_article_is_deterministic_and_fast() {
    let text = common::read_fixture("articles/harbor-bridge.txt");
    let start = Instant::now();
    let a = analyze(&text, None, &AnalysisConfig::default()).unwrap().to_json().unwrap();
    let elapsed = start.elapsed();
    let b = analyze(&text, None, &AnalysisConfig::default()).unwrap().to_json().unwrap();
    assert_eq!(a, b);
    assert!(elapsed.as_secs_f64() < 2.0, "took {elapsed:?}");
}

#[test]
fn invariants_hold_on_fixture() {
    let r = fixture_result();
    let n = r.sentences.len();
    assert_eq!(r.stats.histogram.total(), n);
    assert_eq!(r.stats.radar.sentiment_axes.iter().sum::<usize>(), n);
    assert_eq!(r.summary, sirenless_core::ArticleSummary::compute(&r.stats.histogram, &r.stats.metrics()));
    let mean = r.sentences.iter().map(|s| s.polarity).sum::<f64>() / n as f64;
    assert!((r.stats.article_polarity - mean).abs() <= 1e-12);
    assert!(r.wordcloud.len() <= 50);
    assert_eq!(r.config.seed, 0);
    assert_eq!(r.config.topics, 3);
}

#[test]
fn errors() {
    assert!(matches!(analyze("", None, &AnalysisConfig::default()), Err(Error::Analyze(_))));
    let config = AnalysisConfig {
        lexicon_path: Some("/missing/lexicon.tsv".into()),
        ..Default::default()
    };
    assert!(matches!(analyze("Some text here.", None, &config), Err(Error::Io { .. })));
}

#[test]
fn store_round_trip_is_lossless_and_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let store = AnalysisStore::open(dir.path()).unwrap();
    let r = fixture_result();
    store.put(&r).unwrap();
    let again = fixture_result();
    assert_eq!(again.id, r.id);
    store.put(&again).unwrap();
    assert_eq!(store.list().unwrap().len(), 1);
    assert_eq!(store.get(&r.id).unwrap().unwrap(), r);
}
