use super::{count_syllables, Token, TokenKind};

/// Splits a sentence into tokens with byte offsets relative to `text`.
///
/// A word is a run of letters and digits; an apostrophe or hyphen joins it
/// only when another letter or digit follows, so `don't` and `well-known`
/// are single tokens. A run with no letters is a number, and `.`/`,` between
/// digits stay inside it (`3.5`, `1,000`). `"` and `'` on their own are quote
/// marks; every other non-space character is a one-character punctuation
/// token.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let n = chars.len();
    let byte_at = |i: usize| chars.get(i).map_or(text.len(), |&(b, _)| b);

    let mut tokens = Vec::new();
    let mut i = 0;
    while i < n {
        let c = chars[i].1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = if c.is_alphanumeric() {
            let mut has_letter = c.is_alphabetic();
            i += 1;
            while i < n {
                let c = chars[i].1;
                let next_alnum = chars.get(i + 1).is_some_and(|&(_, d)| d.is_alphanumeric());
                let next_digit = chars.get(i + 1).is_some_and(|&(_, d)| d.is_ascii_digit());
                if c.is_alphanumeric() {
                    has_letter |= c.is_alphabetic();
                    i += 1;
                } else if (matches!(c, '\'' | '-') && next_alnum)
                    || (matches!(c, '.' | ',') && !has_letter && next_digit && chars[i - 1].1.is_ascii_digit())
                {
                    i += 1;
                } else {
                    break;
                }
            }
            if has_letter {
                TokenKind::Word
            } else {
                TokenKind::Number
            }
        } else {
            i += 1;
            if matches!(c, '"' | '\'') {
                TokenKind::QuoteMark
            } else {
                TokenKind::Punctuation
            }
        };

        let (s, e) = (byte_at(start), byte_at(i));
        let surface = &text[s..e];
        let lower = surface.to_lowercase();
        let syllables = if kind == TokenKind::Word { count_syllables(&lower) } else { 0 };
        tokens.push(Token {
            surface: surface.to_string(),
            lower,
            kind,
            start: s,
            end: e,
            syllables,
        });
    }
    tokens
}
