use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::discourse::is_date_word;
use crate::ingest::{Document, Token, TokenKind};
use crate::resources::{HONORIFIC_SET, STOPWORD_SET};

/// A person or organization the article talks about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub id: usize,
    /// Longest surface form.
    pub canonical: String,
    /// Other surface forms, sorted; each is a token subsequence of `canonical`.
    pub aliases: Vec<String>,
    /// Sentences where the canonical form or an alias occurs, ascending.
    pub mention_sentences: Vec<usize>,
}

impl Character {
    pub fn forms(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.canonical.as_str()).chain(self.aliases.iter().map(String::as_str))
    }
}

fn is_name_token(t: &Token) -> bool {
    t.is_capitalized() && !STOPWORD_SET.contains(&t.lower) && !is_date_word(&t.lower)
}

fn is_honorific(t: &Token) -> bool {
    t.is_capitalized() && HONORIFIC_SET.contains(&t.lower)
}

struct Mention {
    tokens: Vec<String>,
    sentence: usize,
    position: usize,
    after_honorific: bool,
}

/// Runs of adjacent capitalized tokens in one sentence. A period right
/// after an honorific (`Mr.`) does not break a run. Returns token index
/// ranges into `tokens`.
fn capitalized_runs(tokens: &[Token]) -> Vec<Vec<usize>> {
    let mut runs = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        if is_name_token(t) {
            current.push(i);
            if is_honorific(t) && tokens.get(i + 1).is_some_and(|p| p.surface == ".") {
                i += 2;
                continue;
            }
        } else if !current.is_empty() {
            runs.push(std::mem::take(&mut current));
        }
        i += 1;
    }
    if !current.is_empty() {
        runs.push(current);
    }
    runs
}

/// Surfaces seen capitalized somewhere other than the first word of a
/// sentence.
fn mid_sentence_capitals(doc: &Document) -> HashSet<&str> {
    doc.sentences
        .iter()
        .flat_map(|s| s.tokens.iter().filter(|t| t.kind == TokenKind::Word).skip(1))
        .filter(|t| is_name_token(t))
        .map(|t| t.surface.as_str())
        .collect()
}

fn collect_mentions(doc: &Document) -> Vec<Mention> {
    let mid = mid_sentence_capitals(doc);
    let mut mentions = Vec::new();
    for s in &doc.sentences {
        let first_word = s.tokens.iter().position(|t| t.kind == TokenKind::Word);
        for run in capitalized_runs(&s.tokens) {
            let mut run = run.as_slice();
            let mut after_honorific = false;
            while let Some((&head, rest)) = run.split_first() {
                if !is_honorific(&s.tokens[head]) {
                    break;
                }
                after_honorific = true;
                run = rest;
            }
            if let Some((&head, rest)) = run.split_first() {
                let sentence_initial = Some(head) == first_word;
                if sentence_initial && !after_honorific && !mid.contains(s.tokens[head].surface.as_str()) {
                    run = rest;
                }
            }
            let Some(&first) = run.first() else { continue };
            mentions.push(Mention {
                tokens: run.iter().map(|&i| s.tokens[i].surface.clone()).collect(),
                sentence: s.index,
                position: s.tokens[first].start,
                after_honorific,
            });
        }
    }
    mentions
}

fn contains_sequence(haystack: &[String], needle: &[String]) -> bool {
    !needle.is_empty() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// True when the word tokens of `tokens` contain `form` (space-separated
/// surface words) as a contiguous, case-sensitive run.
pub(crate) fn sentence_mentions(tokens: &[Token], form: &[&str]) -> bool {
    let words: Vec<&str> = tokens.iter().filter(|t| t.kind == TokenKind::Word).map(|t| t.surface.as_str()).collect();
    !form.is_empty() && words.windows(form.len()).any(|w| w == form)
}

/// Sentence indices where any form of `character` occurs.
pub(crate) fn mention_sentences(doc: &Document, forms: &[&str]) -> Vec<usize> {
    let split: Vec<Vec<&str>> = forms.iter().map(|f| f.split(' ').collect()).collect();
    doc.sentences
        .iter()
        .filter(|s| split.iter().any(|f| sentence_mentions(&s.tokens, f)))
        .map(|s| s.index)
        .collect()
}

/// Mention count, earliest `(sentence, byte offset)`, and whether any
/// mention followed an honorific.
type FormStats = (usize, (usize, usize), bool);

struct Group {
    canonical: Vec<String>,
    forms: Vec<Vec<String>>,
    mentions: usize,
    first: (usize, usize),
    after_honorific: bool,
}

/// Finds the characters of a document with capitalization heuristics.
///
/// Candidate mentions are maximal runs of capitalized words (leading
/// honorifics removed). A run's sentence-initial word is kept only when the
/// same word also appears capitalized mid-sentence elsewhere, or the run
/// follows an honorific. Mentions whose words occur inside a longer mention
/// merge into it; the longest mention is the canonical name. One-word names
/// seen only once are dropped unless introduced by an honorific. Ids follow
/// first-mention order.
pub fn extract_characters(doc: &Document) -> Vec<Character> {
    let mentions = collect_mentions(doc);

    let mut forms: HashMap<&[String], FormStats> = HashMap::new();
    for m in &mentions {
        let entry = forms.entry(m.tokens.as_slice()).or_insert((0, (m.sentence, m.position), false));
        entry.0 += 1;
        entry.1 = entry.1.min((m.sentence, m.position));
        entry.2 |= m.after_honorific;
    }
    let mut ordered: Vec<(&[String], FormStats)> = forms.into_iter().collect();
    ordered.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.1 .1.cmp(&b.1 .1)).then(a.0.cmp(b.0)));

    let mut groups: Vec<Group> = Vec::new();
    for (form, (count, first, honorific)) in ordered {
        let home = groups
            .iter_mut()
            .filter(|g| contains_sequence(&g.canonical, form))
            .min_by_key(|g| g.first);
        match home {
            Some(g) => {
                g.forms.push(form.to_vec());
                g.mentions += count;
                g.first = g.first.min(first);
                g.after_honorific |= honorific;
            }
            None => groups.push(Group {
                canonical: form.to_vec(),
                forms: vec![form.to_vec()],
                mentions: count,
                first,
                after_honorific: honorific,
            }),
        }
    }

    groups.retain(|g| !(g.mentions == 1 && g.canonical.len() == 1 && !g.after_honorific));
    groups.sort_by_key(|g| g.first);

    groups
        .into_iter()
        .enumerate()
        .map(|(id, g)| {
            let canonical = g.canonical.join(" ");
            let mut aliases: Vec<String> = g.forms.iter().map(|f| f.join(" ")).filter(|f| *f != canonical).collect();
            aliases.sort();
            aliases.dedup();
            let mut all: Vec<&str> = vec![canonical.as_str()];
            all.extend(aliases.iter().map(String::as_str));
            let mention_sentences = mention_sentences(doc, &all);
            Character {
                id,
                canonical,
                aliases,
                mention_sentences,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(text: &str) -> Vec<(String, Vec<String>)> {
        extract_characters(&Document::new(text, None)).into_iter().map(|c| (c.canonical, c.aliases)).collect()
    }

    #[test]
    fn merge_aliases() {
        assert_eq!(
            names("President Donald Trump met Xi Jinping. Trump smiled."),
            vec![("Donald Trump".into(), vec!["Trump".into()]), ("Xi Jinping".into(), vec![])]
        );
    }

    #[test]
    fn lowercase_text_has_no_characters() {
        assert!(names("the cat sat on the mat").is_empty());
    }

    #[test]
    fn honorific_rescue_and_single_mention_drop() {
        assert_eq!(names("London called. Mr. Lee replied."), vec![("Lee".into(), vec![])]);
    }

    #[test]
    fn sentence_initial_words_need_support() {
        // "Yesterday" never appears mid-sentence; "Merkel" does.
        let chars = names("Yesterday Merkel spoke. Critics blamed Merkel. Merkel left.");
        assert_eq!(chars, vec![("Merkel".into(), vec![])]);
    }

    #[test]
    fn mention_sentences_cover_aliases() {
        let doc = Document::new("On Monday Angela Merkel arrived. Officials greeted Merkel. Nobody else came. Merkel left.", None);
        let chars = extract_characters(&doc);
        assert_eq!(chars.len(), 1);
        assert_eq!(chars[0].canonical, "Angela Merkel");
        assert_eq!(chars[0].mention_sentences, vec![0, 1, 3]);
    }

    #[test]
    fn ids_follow_first_mention() {
        let chars = extract_characters(&Document::new(
            "Officials met Boris Johnson in Paris. Later Emmanuel Macron joined Boris Johnson. Paris was calm.",
            None,
        ));
        let order: Vec<_> = chars.iter().map(|c| (c.id, c.canonical.as_str())).collect();
        assert_eq!(order, vec![(0, "Boris Johnson"), (1, "Paris"), (2, "Emmanuel Macron")]);
    }
}
