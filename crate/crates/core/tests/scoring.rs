mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sirenless_core::scoring::{
    detect_patterns, radar_data, readability_level, reliability, sentiment_level, writing_style, Evidence,
    PatternKind, ReadabilityLevel, ReliabilityLevel, SentimentLevel, Severity, WritingStyle,
};
use sirenless_core::{ArticleMetrics, Character, DiscourseHistogram, DiscourseMode, SentenceSentiment, Thresholds};
use DiscourseMode::*;

/// `[lo, hi)` intervals, the last one closed, as written in the summary table.
fn which<L: Copy>(grade: f64, table: &[(f64, f64, L)]) -> Vec<L> {
    let last = table.len() - 1;
    table
        .iter()
        .enumerate()
        .filter(|(i, (lo, hi, _))| grade >= *lo && (grade < *hi || (*i == last && grade <= *hi)))
        .map(|(_, (_, _, l))| *l)
        .collect()
}

#[test]
fn bins_partition_their_domains() {
    let style = [(0.0, 0.2, WritingStyle::Rigorous), (0.2, 0.4, WritingStyle::Balanced), (0.4, 1.0, WritingStyle::Literative)];
    let sentiment = [(0.0, 0.1, SentimentLevel::Calm), (0.1, 0.2, SentimentLevel::Regular), (0.2, 1.0, SentimentLevel::Emotional)];
    let readability = [(0.0, 30.0, ReadabilityLevel::Hard), (30.0, 70.0, ReadabilityLevel::Medium), (70.0, 100.0, ReadabilityLevel::Easy)];
    let rel = [(0.0, 40.0, ReliabilityLevel::Low), (40.0, 70.0, ReliabilityLevel::Medium), (70.0, 100.0, ReliabilityLevel::High)];

    for i in 0..=1000 {
        let g = i as f64 / 1000.0;
        assert_eq!(which(g, &style), vec![WritingStyle::from_grade(g)], "style {g}");
        assert_eq!(which(g, &sentiment), vec![SentimentLevel::from_grade(g)], "sentiment {g}");
        assert_eq!(sentiment_level(-g).level, SentimentLevel::from_grade(g));
    }
    for i in 0..=100_000 {
        let g = i as f64 / 1000.0;
        assert_eq!(which(g, &readability), vec![ReadabilityLevel::from_grade(g)], "readability {g}");
        assert_eq!(which(g, &rel), vec![ReliabilityLevel::from_grade(g)], "reliability {g}");
    }
}

fn hist(n: usize, a: usize, q: usize, d: usize, b: usize) -> DiscourseHistogram {
    let modes = [(Narration, n), (Argument, a), (Quote, q), (Description, d), (Background, b)];
    DiscourseHistogram::from_modes(modes.iter().flat_map(|&(m, c)| std::iter::repeat_n(m, c)))
}

#[test]
fn table_fixtures() {
    let g = writing_style(&hist(10, 2, 1, 1, 0));
    assert_eq!((g.level, g.grade), (WritingStyle::Balanced, 0.2));
    assert_eq!(writing_style(&hist(10, 0, 0, 0, 0)).level, WritingStyle::Rigorous);
    let g = writing_style(&hist(5, 5, 0, 0, 0));
    assert_eq!((g.level, g.grade), (WritingStyle::Literative, 1.0));

    assert_eq!(sentiment_level(0.05).level, SentimentLevel::Calm);
    assert_eq!(sentiment_level(-0.15).level, SentimentLevel::Regular);
    assert_eq!(sentiment_level(0.2).level, SentimentLevel::Emotional);

    assert_eq!(readability_level(59.635).level, ReadabilityLevel::Medium);
    assert_eq!(readability_level(100.0).level, ReadabilityLevel::Easy);
    assert_eq!(readability_level(0.0).level, ReadabilityLevel::Hard);

    let r = reliability(0.1, 0.3);
    assert_eq!((r.level, r.grade), (ReliabilityLevel::Medium, 60.0));
    assert_eq!(reliability(0.0, 0.0).level, ReliabilityLevel::High);
    let r = reliability(0.5, 0.6);
    assert_eq!((r.level, r.grade), (ReliabilityLevel::Low, 0.0));
}

#[test]
fn radar_examples() {
    let s: Vec<_> = [-0.6, 0.0, 0.3].iter().map(|&p| SentenceSentiment::new(p, 0.0)).collect();
    let r = radar_data(&s, &hist(3, 0, 0, 0, 0));
    assert_eq!(r.sentiment_axes, [1, 0, 1, 1, 0]);
    assert_eq!(r.discourse_axes, [1.0, 0.0, 0.0, 0.0, 0.0]);
    let r = radar_data(&[], &hist(0, 0, 0, 0, 0));
    assert_eq!((r.sentiment_axes, r.discourse_axes), ([0; 5], [0.0; 5]));
}

struct Case {
    polarities: Vec<f64>,
    modes: Vec<DiscourseMode>,
    characters: Vec<Character>,
    subjectivity: f64,
    flesch: f64,
}

impl Case {
    fn calm(n: usize) -> Self {
        Case {
            polarities: vec![0.0; n],
            modes: vec![Narration; n],
            characters: Vec::new(),
            subjectivity: 0.0,
            flesch: 10.0,
        }
    }

    fn run(&self) -> sirenless_core::PatternReport {
        let sents: Vec<_> = self.polarities.iter().map(|&p| SentenceSentiment::new(p, self.subjectivity)).collect();
        let metrics = ArticleMetrics {
            article_polarity: 0.0,
            article_subjectivity: self.subjectivity,
            flesch_score: self.flesch,
        };
        detect_patterns(&sents, &self.modes, &self.characters, &metrics, &Thresholds::default())
    }

    fn fires(&self, kind: PatternKind) -> bool {
        self.run().get(kind).is_some()
    }
}

fn person(id: usize, mentions: Vec<usize>) -> Character {
    Character {
        id,
        canonical: format!("P{id}"),
        aliases: vec![],
        mention_sentences: mentions,
    }
}

#[test]
fn each_detector_has_a_positive_and_a_negative_case() {
    let mut c = Case::calm(6);
    c.polarities = vec![0.6; 6];
    let f = c.run();
    let f = f.get(PatternKind::SentimentDominance).unwrap();
    assert_eq!((f.severity, &f.evidence), (Severity::Alert, &Evidence::Sentences((0..6).collect())));
    c.polarities = vec![0.6, 0.6, 0.6, -0.6, -0.6, 0.0];
    assert!(!c.fires(PatternKind::SentimentDominance));

    let mut c = Case::calm(8);
    c.polarities = (0..8).map(|i| if i % 2 == 0 { 0.5 } else { -0.5 }).collect();
    assert!(c.fires(PatternKind::SentimentOscillation));
    c.polarities = vec![0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, -0.5];
    assert!(!c.fires(PatternKind::SentimentOscillation));

    let mut c = Case::calm(3);
    c.subjectivity = 0.45;
    assert_eq!(c.run().get(PatternKind::HighSubjectivity).unwrap().severity, Severity::Alert);
    c.subjectivity = 0.19;
    assert!(!c.fires(PatternKind::HighSubjectivity));

    let mut c = Case::calm(3);
    c.flesch = 30.5;
    assert!(c.fires(PatternKind::EasyRead));
    c.flesch = 30.0;
    assert!(!c.fires(PatternKind::EasyRead));

    let mut c = Case::calm(4);
    c.modes = vec![Argument, Narration, Narration, Narration];
    assert!(c.fires(PatternKind::ArgumentHeavy));
    c.modes = vec![Argument, Narration, Narration, Narration, Narration];
    c.polarities.push(0.0);
    assert!(!c.fires(PatternKind::ArgumentHeavy));

    let mut c = Case::calm(6);
    c.polarities = vec![0.4, 0.4, 0.4, -0.4, -0.4, -0.4];
    c.characters = vec![person(0, vec![0, 1, 2]), person(1, vec![3, 4, 5])];
    let r = c.run();
    let f = r.get(PatternKind::CharacterSentimentBias).unwrap();
    assert_eq!((f.severity, &f.evidence), (Severity::Alert, &Evidence::Characters(vec![0, 1])));
    c.characters = vec![person(0, vec![0, 1]), person(1, vec![0, 3, 5])];
    assert!(!c.fires(PatternKind::CharacterSentimentBias));

    let mut c = Case::calm(5);
    c.modes = vec![Quote; 5];
    c.polarities = vec![0.8, -0.9, 0.0, 0.1, 0.2];
    assert_eq!(c.run().get(PatternKind::EmotionalQuotes).unwrap().evidence, Evidence::Sentences(vec![0, 1]));
    c.polarities = vec![0.8, 0.0, 0.0, 0.1, 0.2];
    assert!(!c.fires(PatternKind::EmotionalQuotes));

    assert!(Case::calm(6).run().findings.is_empty());
}

#[test]
fn engine_agrees_with_brute_force_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let t = Thresholds::default();
    let mut fired = std::collections::BTreeSet::new();
    for _ in 0..1000 {
        let case = common::random_pattern_case(&mut rng);
        let engine = detect_patterns(&case.sentiments, &case.modes, &case.characters, &case.metrics, &t);
        let oracle = common::oracle_patterns(&case, &t);
        assert_eq!(common::comparable(&engine.findings), common::comparable(&oracle));
        fired.extend(engine.findings.iter().map(|f| f.kind));
    }
    assert_eq!(fired.len(), 7, "every detector fires somewhere in the sample");
}
