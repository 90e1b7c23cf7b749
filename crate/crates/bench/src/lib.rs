//! Inputs shared by the pipeline benchmarks.

/// A news-like article of roughly `words` words, built from a fixed set of
/// sentences so runs are comparable.
pub fn sample_article(words: usize) -> String {
    const SENTENCES: &[&str] = &[
        "The city council met on Tuesday to debate the new transit budget.",
        "\"We cannot keep delaying repairs,\" Mayor Elena Ruiz said.",
        "Critics argue the plan is reckless and far too expensive.",
        "In 2019 the council had rejected a similar proposal.",
        "The old station is dark, cold and quiet after sunset.",
        "I think residents deserve a clear answer before winter.",
        "Ruiz said the vote would take place next month.",
        "Ticket prices rose by 12 percent last year.",
    ];
    let mut out = String::new();
    let mut count = 0;
    let mut i = 0;
    while count < words {
        let s = SENTENCES[i % SENTENCES.len()];
        if !out.is_empty() {
            out.push_str(if i % 4 == 0 { "\n\n" } else { " " });
        }
        out.push_str(s);
        count += s.split_whitespace().count();
        i += 1;
    }
    out
}
