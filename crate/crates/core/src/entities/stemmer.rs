/// Suffix-stripping stemmer.
///
/// One suffix rule is applied, longest match first (`-ingly`, `-edly`,
/// `-tions`, `-tion`, `-ings`, plural forms, `-ing`, `-ed`, `-ly`, `-s`),
/// and only when at least three characters containing a vowel remain. A
/// doubled final consonant left by `-ing`/`-ed` is undoubled, then a final
/// silent `e` is dropped so `move`, `moved` and `moving` share a stem.
pub fn stem(word: &str) -> String {
    let word = word.to_lowercase();
    let mut out = strip_suffix(&word).unwrap_or(word);
    if out.len() > 3 && out.ends_with('e') && !out.ends_with("ee") && out.is_ascii() {
        out.pop();
    }
    out
}

fn has_vowel(s: &str) -> bool {
    s.chars().any(|c| matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y'))
}

fn viable(stem: &str) -> bool {
    stem.chars().count() >= 3 && has_vowel(stem)
}

fn undouble(mut stem: String) -> String {
    let b = stem.as_bytes();
    let n = b.len();
    if n >= 4 && b[n - 1] == b[n - 2] && !b"aeiouylsz".contains(&b[n - 1]) {
        stem.pop();
    }
    stem
}

fn strip_suffix(word: &str) -> Option<String> {
    const RULES: [(&str, &str, bool); 11] = [
        ("ingly", "", true),
        ("edly", "", true),
        ("tions", "t", false),
        ("ings", "", true),
        ("sses", "ss", false),
        ("tion", "t", false),
        ("ies", "y", false),
        ("ied", "y", false),
        ("ing", "", true),
        ("ed", "", true),
        ("ly", "", false),
    ];
    for (suffix, replacement, undoubles) in RULES {
        if let Some(base) = word.strip_suffix(suffix) {
            if !viable(base) || (suffix == "ly" && base.ends_with('i')) {
                return None;
            }
            let stem = format!("{base}{replacement}");
            return Some(if undoubles { undouble(stem) } else { stem });
        }
    }
    for suffix in ["xes", "ches", "shes", "zes"] {
        if let Some(base) = word.strip_suffix("es").filter(|_| word.ends_with(suffix)) {
            return viable(base).then(|| base.to_string());
        }
    }
    let base = word.strip_suffix('s')?;
    if base.ends_with('s') || base.ends_with('u') || base.ends_with('i') || !viable(base) {
        return None;
    }
    Some(base.to_string())
}
