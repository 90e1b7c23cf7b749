//! Helpers shared by the integration tests: fixture paths, generators for
//! synthetic corpora, and an independent re-implementation of the pattern
//! rules.
#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sirenless_core::discourse::{parse_corpus, CorpusDocument};
use sirenless_core::scoring::{Evidence, Finding, PatternKind, Severity};
use sirenless_core::{ArticleMetrics, Character, DiscourseMode, SentenceSentiment, Thresholds};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    let path = fixture(rel);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// `(word, syllables)` rows of the reference list.
pub fn syllable_reference() -> Vec<(String, u32)> {
    read_fixture("syllables.tsv")
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (w, n) = l.split_once('\t').expect("word<TAB>count");
            (w.to_string(), n.parse().expect("count"))
        })
        .collect()
}

// Synthetic discourse corpus. Each mode has a cue-bearing template and a
// harder variant without the usual cue, so the task is learnable but not
// trivially separable.

const SUBJECTS: &[&str] = &["The council", "The company", "The agency", "Local officials", "The committee", "The school board"];
const VERBS: &[&str] = &["approved", "reviewed", "rejected", "delayed", "funded", "debated"];
const OBJECTS: &[&str] = &["the new budget", "a housing plan", "the road project", "a water contract", "the final report"];
const FIRST: &[&str] = &["Anna", "Victor", "Maya", "Omar", "Lena", "Paul"];
const LAST: &[&str] = &["Adams", "Baker", "Carter", "Diaz", "Evans", "Foster", "Garcia", "Hughes"];
const OPINION: &[&str] = &["reckless", "wrong", "absurd", "brilliant", "dangerous", "misguided"];
const SENSORY: &[&str] = &["cold", "dark", "crowded", "quiet", "dusty", "bright", "narrow", "smoky"];
const PLACES: &[&str] = &["hall", "street", "station", "office", "market"];
const CLAUSES: &[&str] = &["We will finish this work soon", "Nobody expected such a result", "The plan protects every family", "This decision changes nothing"];
const WEEKDAYS: &[&str] = &["Monday", "Tuesday", "Friday"];

fn pick<'a>(rng: &mut ChaCha8Rng, xs: &[&'a str]) -> &'a str {
    xs.choose(rng).copied().unwrap()
}

fn synthetic_sentence(rng: &mut ChaCha8Rng, mode: DiscourseMode, names: &mut Vec<String>) -> String {
    let hard = rng.gen_bool(0.2);
    let subj = pick(rng, SUBJECTS);
    let verb = pick(rng, VERBS);
    let obj = pick(rng, OBJECTS);
    let known = names.choose(rng).cloned();
    match mode {
        DiscourseMode::Narration => {
            if rng.gen_bool(0.5) {
                let name = format!("{} {}", pick(rng, FIRST), pick(rng, LAST));
                names.push(name.split(' ').nth(1).unwrap().to_string());
                format!("{subj} {verb} {obj} after a meeting with {name}.")
            } else {
                format!("{subj} {verb} {obj} on {}.", pick(rng, WEEKDAYS))
            }
        }
        DiscourseMode::Argument => {
            if hard {
                format!("Frankly {obj} is a {} idea.", pick(rng, &["poor", "costly", "late"]))
            } else if rng.gen_bool(0.5) {
                format!("I think {obj} is {}.", pick(rng, OPINION))
            } else {
                format!("{subj} should and must reconsider {obj}.")
            }
        }
        DiscourseMode::Quote => {
            let speaker = known.unwrap_or_else(|| pick(rng, LAST).to_string());
            if hard {
                format!("{speaker} described {obj} as \"{}\" in a memo.", pick(rng, &["overdue", "fair", "rushed"]))
            } else {
                format!("\"{},\" {speaker} said.", pick(rng, CLAUSES))
            }
        }
        DiscourseMode::Description => {
            if hard {
                format!("The {} had tall windows and wooden floors.", pick(rng, PLACES))
            } else if rng.gen_bool(0.5) {
                format!("The {} was {} and {}.", pick(rng, PLACES), pick(rng, SENSORY), pick(rng, SENSORY))
            } else {
                format!("Costs rose {} percent to {} dollars in {} towns.", rng.gen_range(2..40), rng.gen_range(100..900), rng.gen_range(3..20))
            }
        }
        DiscourseMode::Background => {
            let who = known.unwrap_or_else(|| pick(rng, LAST).to_string());
            if hard {
                format!("Years earlier {who} had {verb} {obj}.")
            } else {
                format!("In {} {who} had {verb} {obj}.", rng.gen_range(1980..2020))
            }
        }
    }
}

/// JSONL corpus of `docs` documents with ten sentences each.
pub fn synthetic_corpus_jsonl(docs: usize, seed: u64) -> String {
    use DiscourseMode::*;
    let weights = [(Narration, 40), (Argument, 20), (Quote, 15), (Description, 15), (Background, 10)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    for d in 0..docs {
        let mut names = Vec::new();
        for i in 0..10 {
            let mode = weights.choose_weighted(&mut rng, |w| w.1).unwrap().0;
            let text = synthetic_sentence(&mut rng, mode, &mut names);
            let line = serde_json::json!({ "doc": format!("s{seed}-{d}"), "index": i, "text": text, "mode": mode.as_str() });
            out.push_str(&line.to_string());
            out.push('\n');
        }
    }
    out
}

pub fn synthetic_corpus(docs: usize, seed: u64) -> Vec<CorpusDocument> {
    parse_corpus(&synthetic_corpus_jsonl(docs, seed), "synthetic").expect("generated corpus parses")
}

// Generative LDA corpus: each document draws most words from one topic's
// word set and the rest from the others.

pub fn topic_word_sets(k: usize) -> Vec<Vec<String>> {
    const SETS: [&[&str]; 3] = [
        &["farmer", "harvest", "wheat", "tractor", "barn", "soil", "cattle", "orchard", "seed", "plow"],
        &["banker", "bond", "loan", "stock", "credit", "broker", "equity", "deposit", "ledger", "yield"],
        &["striker", "goal", "referee", "stadium", "keeper", "league", "penalty", "coach", "match", "pitch"],
    ];
    SETS[..k].iter().map(|s| s.iter().map(|w| w.to_string()).collect()).collect()
}

pub fn generative_corpus(sets: &[Vec<String>], docs: usize, len: usize, seed: u64) -> Vec<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..docs)
        .map(|d| {
            let main = d % sets.len();
            (0..len)
                .map(|_| {
                    let topic = if rng.gen_bool(0.9) { main } else { rng.gen_range(0..sets.len()) };
                    sets[topic].choose(&mut rng).unwrap().clone()
                })
                .collect()
        })
        .collect()
}

/// Mean over topics of the largest share of a topic's top words that
/// come from a single generating set.
pub fn keyword_purity(top: &[Vec<String>], sets: &[Vec<String>]) -> f64 {
    let per_topic = top.iter().map(|words| {
        let best = sets.iter().map(|s| words.iter().filter(|w| s.contains(w)).count()).max().unwrap_or(0);
        best as f64 / words.len() as f64
    });
    per_topic.sum::<f64>() / top.len() as f64
}

// Pattern oracle: the documented detector rules, evaluated by brute force.

pub struct PatternCase {
    pub sentiments: Vec<SentenceSentiment>,
    pub modes: Vec<DiscourseMode>,
    pub characters: Vec<Character>,
    pub metrics: ArticleMetrics,
}

/// Values on a 0.05 grid so that threshold boundaries are hit exactly.
fn grid(rng: &mut ChaCha8Rng, lo: i32, hi: i32) -> f64 {
    rng.gen_range(lo..=hi) as f64 * 0.05
}

pub fn random_pattern_case(rng: &mut ChaCha8Rng) -> PatternCase {
    let n = rng.gen_range(0..40usize);
    let spread = rng.gen_range(4..=20);
    let sentiments = (0..n).map(|_| SentenceSentiment::new(grid(rng, -spread, spread), grid(rng, 0, 20))).collect();
    let mode_bias = rng.gen_range(0..5usize);
    let modes = (0..n)
        .map(|_| {
            if rng.gen_bool(0.4) {
                DiscourseMode::ALL[mode_bias]
            } else {
                DiscourseMode::ALL[rng.gen_range(0..5)]
            }
        })
        .collect();
    let characters = (0..rng.gen_range(0..5usize))
        .map(|id| {
            let mut mentions: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.25)).collect();
            mentions.dedup();
            Character {
                id,
                canonical: format!("Person {id}"),
                aliases: Vec::new(),
                mention_sentences: mentions,
            }
        })
        .collect();
    let metrics = ArticleMetrics {
        article_polarity: grid(rng, -20, 20),
        article_subjectivity: grid(rng, 0, 20),
        flesch_score: rng.gen_range(0..=20) as f64 * 5.0,
    };
    PatternCase {
        sentiments,
        modes,
        characters,
        metrics,
    }
}

pub fn oracle_patterns(c: &PatternCase, t: &Thresholds) -> Vec<Finding> {
    let n = c.sentiments.len();
    let pol = |i: usize| c.sentiments[i].polarity;
    let mut out = Vec::new();
    let push = |out: &mut Vec<Finding>, kind, severity, evidence| {
        out.push(Finding {
            kind,
            severity,
            evidence,
            detail: String::new(),
        })
    };

    let e: Vec<usize> = (0..n).filter(|&i| pol(i).abs() >= t.emotional_polarity).collect();
    let pos: Vec<usize> = e.iter().copied().filter(|&i| pol(i) > 0.0).collect();
    let neg: Vec<usize> = e.iter().copied().filter(|&i| pol(i) < 0.0).collect();
    if e.len() >= t.min_emotional_sentences {
        let frac = |v: &Vec<usize>| v.len() as f64 / e.len() as f64;
        for side in [&pos, &neg] {
            if frac(side) >= t.dominance_share && side.len() * 2 >= e.len() {
                push(&mut out, PatternKind::SentimentDominance, Severity::Alert, Evidence::Sentences(side.clone()));
                break;
            }
        }
        if frac(&pos) >= t.oscillation_share && frac(&neg) >= t.oscillation_share {
            push(&mut out, PatternKind::SentimentOscillation, Severity::Alert, Evidence::Sentences(e.clone()));
        }
    }

    let subj = c.metrics.article_subjectivity;
    if subj >= t.subjectivity_warning {
        let sev = if subj >= t.subjectivity_alert { Severity::Alert } else { Severity::Warning };
        let ev = (0..n).filter(|&i| c.sentiments[i].subjectivity >= t.subjectivity_warning).collect();
        push(&mut out, PatternKind::HighSubjectivity, sev, Evidence::Sentences(ev));
    }

    if c.metrics.flesch_score > t.easy_read_flesch {
        push(&mut out, PatternKind::EasyRead, Severity::Info, Evidence::Sentences(vec![]));
    }

    let args: Vec<usize> = (0..n).filter(|&i| c.modes[i] == DiscourseMode::Argument).collect();
    if n > 0 && args.len() as f64 / n as f64 >= t.argument_share {
        push(&mut out, PatternKind::ArgumentHeavy, Severity::Warning, Evidence::Sentences(args));
    }

    let mut flagged = Vec::new();
    let mut signs = (false, false);
    for ch in &c.characters {
        if ch.mention_sentences.len() < t.character_min_mentions {
            continue;
        }
        let mean = ch.mention_sentences.iter().map(|&i| pol(i)).sum::<f64>() / ch.mention_sentences.len() as f64;
        if mean.abs() >= t.character_bias_polarity {
            flagged.push(ch.id);
            if mean > 0.0 {
                signs.0 = true;
            } else {
                signs.1 = true;
            }
        }
    }
    if !flagged.is_empty() {
        let sev = if signs.0 && signs.1 { Severity::Alert } else { Severity::Warning };
        push(&mut out, PatternKind::CharacterSentimentBias, sev, Evidence::Characters(flagged));
    }

    let quotes: Vec<usize> = (0..n).filter(|&i| c.modes[i] == DiscourseMode::Quote).collect();
    let extreme: Vec<usize> = quotes.iter().copied().filter(|&i| pol(i).abs() > 0.5).collect();
    if quotes.len() >= t.min_quote_sentences && extreme.len() as f64 / quotes.len() as f64 >= t.emotional_quote_share {
        push(&mut out, PatternKind::EmotionalQuotes, Severity::Alert, Evidence::Sentences(extreme));
    }
    out
}

/// Findings with the free-text detail dropped, for comparison.
pub fn comparable(findings: &[Finding]) -> Vec<(PatternKind, Severity, Evidence)> {
    let mut v: Vec<_> = findings.iter().map(|f| (f.kind, f.severity, f.evidence.clone())).collect();
    v.sort_by_key(|x| x.0);
    v
}

fn case(polarities: &[f64], modes: &[DiscourseMode], characters: Vec<Character>, subjectivity: f64, flesch: f64) -> PatternCase {
    PatternCase {
        sentiments: polarities.iter().map(|&p| SentenceSentiment::new(p, subjectivity)).collect(),
        modes: modes.to_vec(),
        characters,
        metrics: ArticleMetrics {
            article_polarity: 0.0,
            article_subjectivity: subjectivity,
            flesch_score: flesch,
        },
    }
}

fn mentioned(id: usize, mention_sentences: Vec<usize>) -> Character {
    Character {
        id,
        canonical: format!("Person {id}"),
        aliases: Vec::new(),
        mention_sentences,
    }
}

/// One constructed input that should trigger each detector and one that
/// should not.
pub fn detector_fixtures() -> Vec<(PatternKind, PatternCase, PatternCase)> {
    use DiscourseMode::*;
    let n6 = [Narration; 6];
    let n8 = [Narration; 8];
    let swing: Vec<f64> = (0..8).map(|i| if i % 2 == 0 { 0.5 } else { -0.5 }).collect();
    vec![
        (
            PatternKind::SentimentDominance,
            case(&[0.6; 6], &n6, vec![], 0.0, 10.0),
            case(&[0.6, 0.6, 0.6, -0.6, -0.6, 0.0], &n6, vec![], 0.0, 10.0),
        ),
        (
            PatternKind::SentimentOscillation,
            case(&swing, &n8, vec![], 0.0, 10.0),
            case(&[0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, -0.5], &n8, vec![], 0.0, 10.0),
        ),
        (
            PatternKind::HighSubjectivity,
            case(&[0.0; 3], &[Narration; 3], vec![], 0.45, 10.0),
            case(&[0.0; 3], &[Narration; 3], vec![], 0.19, 10.0),
        ),
        (
            PatternKind::EasyRead,
            case(&[0.0; 3], &[Narration; 3], vec![], 0.0, 30.5),
            case(&[0.0; 3], &[Narration; 3], vec![], 0.0, 30.0),
        ),
        (
            PatternKind::ArgumentHeavy,
            case(&[0.0; 4], &[Argument, Narration, Narration, Narration], vec![], 0.0, 10.0),
            case(&[0.0; 5], &[Argument, Narration, Narration, Narration, Narration], vec![], 0.0, 10.0),
        ),
        (
            PatternKind::CharacterSentimentBias,
            case(&[0.4, 0.4, 0.4, -0.4, -0.4, -0.4], &n6, vec![mentioned(0, vec![0, 1, 2]), mentioned(1, vec![3, 4, 5])], 0.0, 10.0),
            case(&[0.4, 0.4, 0.4, -0.4, -0.4, -0.4], &n6, vec![mentioned(0, vec![0, 1]), mentioned(1, vec![0, 3, 5])], 0.0, 10.0),
        ),
        (
            PatternKind::EmotionalQuotes,
            case(&[0.8, -0.9, 0.0, 0.1, 0.2], &[Quote; 5], vec![], 0.0, 10.0),
            case(&[0.8, 0.0, 0.0, 0.1, 0.2], &[Quote; 5], vec![], 0.0, 10.0),
        ),
    ]
}
