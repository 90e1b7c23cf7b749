fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Heuristic English syllable count.
///
/// Counts maximal groups of `a e i o u y`, drops a final silent `e` (one
/// that follows a consonant) unless that leaves nothing, and adds one back
/// for a final consonant + `le` as in "table". Never returns less than 1.
pub fn count_syllables(word: &str) -> u32 {
    let chars: Vec<char> = word.chars().flat_map(char::to_lowercase).collect();
    let mut groups = 0u32;
    let mut prev_vowel = false;
    for &c in &chars {
        let v = is_vowel(c);
        if v && !prev_vowel {
            groups += 1;
        }
        prev_vowel = v;
    }

    let n = chars.len();
    if n >= 2 && chars[n - 1] == 'e' && !is_vowel(chars[n - 2]) && groups > 1 {
        groups -= 1;
    }
    if n >= 3 && chars[n - 2..] == ['l', 'e'] && chars[n - 3].is_alphabetic() && !is_vowel(chars[n - 3]) {
        groups += 1;
    }
    groups.max(1)
}
