//! Line tokenizer for the textual notation.
//!
//! ASCII-first with kanji accepted everywhere: numbers may be written
//! with ASCII digits or kanji numerals, symbols by glyph or romaji alias.
//! A run of `|` bars is a tally count unless it immediately follows a
//! number, symbol, unit word, alias, or closing paren; then the first bar
//! is the division bar (乙|甲 is 甲 ÷ 乙) and any remaining bars are
//! tallies for the dividend.
//!
//! Unknown ASCII identifiers lex as alias names so that every prefix of
//! a valid document tokenizes; unknown CJK glyphs are lex errors with a
//! position.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{parse_decimal, pow10, rat_int, Rational};
use crate::symbol::{IrohaLabel, Symbol};

/// Dimensionless decimal-fraction words of the notation (distinct from
/// the length units of the same names).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitWord {
    Bu,
    Rin,
    Mo,
    Ko,
}

impl UnitWord {
    /// Decimal places below the ones row: bu 1, rin 2, mo 3, ko 0.
    pub fn places(self) -> u32 {
        match self {
            UnitWord::Bu => 1,
            UnitWord::Rin => 2,
            UnitWord::Mo => 3,
            UnitWord::Ko => 0,
        }
    }

    pub fn value(self) -> Rational {
        pow10(-(self.places() as i32))
    }

    pub fn ascii(self) -> &'static str {
        match self {
            UnitWord::Bu => "bu",
            UnitWord::Rin => "rin",
            UnitWord::Mo => "mo",
            UnitWord::Ko => "ko",
        }
    }

    pub fn kanji(self) -> char {
        match self {
            UnitWord::Bu => '分',
            UnitWord::Rin => '厘',
            UnitWord::Mo => '毛',
            UnitWord::Ko => '個',
        }
    }

    pub fn from_places(places: u32) -> Option<UnitWord> {
        match places {
            0 => Some(UnitWord::Ko),
            1 => Some(UnitWord::Bu),
            2 => Some(UnitWord::Rin),
            3 => Some(UnitWord::Mo),
            _ => None,
        }
    }

    fn from_ascii(s: &str) -> Option<UnitWord> {
        match s {
            "bu" => Some(UnitWord::Bu),
            "rin" => Some(UnitWord::Rin),
            "mo" => Some(UnitWord::Mo),
            "ko" => Some(UnitWord::Ko),
            _ => None,
        }
    }

    fn from_kanji(c: char) -> Option<UnitWord> {
        match c {
            '分' => Some(UnitWord::Bu),
            '厘' => Some(UnitWord::Rin),
            '毛' => Some(UnitWord::Mo),
            '個' => Some(UnitWord::Ko),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Number(Rational),
    TallyRun(u32),
    Sym(Symbol),
    Unit(UnitWord),
    Iroha(IrohaLabel),
    Rt,
    Divider,
    Zero,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Colon,
    AliasName(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

const KANJI_DIGITS: &str = "〇一二三四五六七八九";

pub fn kanji_digit_value(c: char) -> Option<u32> {
    KANJI_DIGITS.chars().position(|d| d == c).map(|i| i as u32)
}

pub fn kanji_digit(v: u32) -> char {
    KANJI_DIGITS.chars().nth(v as usize).expect("digit in 0..=9")
}

fn is_kanji_numeral(c: char) -> bool {
    kanji_digit_value(c).is_some() || c == '十'
}

/// True after tokens that can stand in divisor position before a bar.
fn ends_divisor(kind: &TokenKind) -> bool {
    matches!(
        kind,
        TokenKind::Number(_)
            | TokenKind::Unit(_)
            | TokenKind::Sym(_)
            | TokenKind::AliasName(_)
            | TokenKind::RParen
    )
}

pub fn tokenize(text: &str, line_no: usize, alias_names: &BTreeSet<String>) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out: Vec<Token> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let lex_err = |msg: String| Error::Lex { line: line_no, col, msg };
        if c == ' ' || c == '\t' {
            i += 1;
            continue;
        }
        if c == '|' {
            if out.last().map(|t| ends_divisor(&t.kind)).unwrap_or(false) {
                out.push(Token { kind: TokenKind::Divider, line: line_no, col });
                i += 1;
            } else {
                let mut n = 0;
                while i < chars.len() && chars[i] == '|' {
                    n += 1;
                    i += 1;
                }
                out.push(Token { kind: TokenKind::TallyRun(n), line: line_no, col });
            }
            continue;
        }
        if let Some(kind) = match c {
            '=' => Some(TokenKind::Eq),
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            '{' => Some(TokenKind::LBrace),
            '}' => Some(TokenKind::RBrace),
            ';' => Some(TokenKind::Semi),
            ':' => Some(TokenKind::Colon),
            _ => None,
        } {
            out.push(Token { kind, line: line_no, col });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let mut lexeme: String = chars[start..i].iter().collect();
            if lexeme.ends_with('.') {
                lexeme.pop();
            }
            if lexeme.starts_with('.') {
                lexeme.insert(0, '0');
            }
            let value = parse_decimal(&lexeme).ok_or_else(|| lex_err(format!("bad number {lexeme:?}")))?;
            out.push(Token { kind: TokenKind::Number(value), line: line_no, col });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let colon_follows = chars[i..].iter().find(|&&d| d != ' ' && d != '\t') == Some(&':');
            let kind = if word == "rt" {
                TokenKind::Rt
            } else if word == "zero" {
                TokenKind::Zero
            } else if colon_follows && IrohaLabel::from_alias(&word).is_some() {
                TokenKind::Iroha(IrohaLabel::from_alias(&word).expect("checked"))
            } else if let Some(u) = UnitWord::from_ascii(&word) {
                TokenKind::Unit(u)
            } else if let Some(s) = Symbol::from_alias(&word) {
                TokenKind::Sym(s)
            } else {
                TokenKind::AliasName(word)
            };
            out.push(Token { kind, line: line_no, col });
            continue;
        }
        // CJK region: registered alias names munch longest-first, then
        // the fixed glyph inventory
        if let Some(name) = alias_names
            .iter()
            .filter(|n| {
                let nc: Vec<char> = n.chars().collect();
                nc.len() > 1 && chars[i..].starts_with(&nc)
            })
            .max_by_key(|n| n.chars().count())
        {
            out.push(Token { kind: TokenKind::AliasName(name.clone()), line: line_no, col });
            i += name.chars().count();
            continue;
        }
        if let Some(s) = Symbol::from_glyph(c) {
            out.push(Token { kind: TokenKind::Sym(s), line: line_no, col });
            i += 1;
            continue;
        }
        if let Some(l) = IrohaLabel::from_glyph(c) {
            let colon_follows = chars[i + 1..].iter().find(|&&d| d != ' ' && d != '\t') == Some(&':');
            if !colon_follows {
                return Err(lex_err(format!("unknown glyph '{c}'")));
            }
            out.push(Token { kind: TokenKind::Iroha(l), line: line_no, col });
            i += 1;
            continue;
        }
        if is_kanji_numeral(c) {
            let start = i;
            while i < chars.len() && is_kanji_numeral(chars[i]) {
                i += 1;
            }
            let value = parse_kanji_numeral(&chars[start..i])
                .ok_or_else(|| lex_err(format!("malformed numeral {:?}", chars[start..i].iter().collect::<String>())))?;
            out.push(Token { kind: TokenKind::Number(value), line: line_no, col });
            continue;
        }
        if let Some(u) = UnitWord::from_kanji(c) {
            out.push(Token { kind: TokenKind::Unit(u), line: line_no, col });
            i += 1;
            continue;
        }
        return Err(lex_err(format!("unknown glyph '{c}'")));
    }
    Ok(out)
}

/// Kanji numeral forms: positional digit strings (二〇七 is 207) and the
/// conventional tens forms 十, X十, X十Y.
fn parse_kanji_numeral(glyphs: &[char]) -> Option<Rational> {
    if let Some(pos) = glyphs.iter().position(|&c| c == '十') {
        let (left, right) = (&glyphs[..pos], &glyphs[pos + 1..]);
        let tens = match left {
            [] => 1,
            [d] => match kanji_digit_value(*d) {
                Some(v) if v > 0 => v,
                _ => return None,
            },
            _ => return None,
        };
        let ones = match right {
            [] => 0,
            [d] => match kanji_digit_value(*d) {
                Some(v) if v > 0 => v,
                _ => return None,
            },
            _ => return None,
        };
        return Some(rat_int((tens * 10 + ones) as i64));
    }
    let mut acc = Rational::zero();
    for &c in glyphs {
        acc = acc * rat_int(10) + rat_int(kanji_digit_value(c)? as i64);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn lex(s: &str) -> Vec<TokenKind> {
        tokenize(s, 1, &BTreeSet::new()).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn tally_runs_and_dividers() {
        assert_eq!(lex("||甲"), vec![TokenKind::TallyRun(2), TokenKind::Sym(Symbol::from_glyph('甲').unwrap())]);
        assert_eq!(
            lex("乙|甲"),
            vec![
                TokenKind::Sym(Symbol::from_alias("otsu").unwrap()),
                TokenKind::Divider,
                TokenKind::Sym(Symbol::from_alias("kou").unwrap()),
            ]
        );
        // after a divider, further bars are dividend tallies
        assert_eq!(
            lex("乙|||甲"),
            vec![
                TokenKind::Sym(Symbol::from_alias("otsu").unwrap()),
                TokenKind::Divider,
                TokenKind::TallyRun(2),
                TokenKind::Sym(Symbol::from_alias("kou").unwrap()),
            ]
        );
        assert_eq!(lex("2|甲")[1], TokenKind::Divider);
    }

    #[test]
    fn radical_and_unit_words() {
        assert_eq!(
            lex("rt(5 bu)"),
            vec![
                TokenKind::Rt,
                TokenKind::LParen,
                TokenKind::Number(rat_int(5)),
                TokenKind::Unit(UnitWord::Bu),
                TokenKind::RParen,
            ]
        );
        assert_eq!(lex("五分"), vec![TokenKind::Number(rat_int(5)), TokenKind::Unit(UnitWord::Bu)]);
    }

    #[test]
    fn numbers_ascii_and_kanji() {
        assert_eq!(lex("0.5"), vec![TokenKind::Number(rat(1, 2))]);
        assert_eq!(lex("2.07"), vec![TokenKind::Number(rat(207, 100))]);
        assert_eq!(lex("二〇七"), vec![TokenKind::Number(rat_int(207))]);
        assert_eq!(lex("十"), vec![TokenKind::Number(rat_int(10))]);
        assert_eq!(lex("二十三"), vec![TokenKind::Number(rat_int(23))]);
        assert!(tokenize("十十", 1, &BTreeSet::new()).is_err());
    }

    #[test]
    fn iroha_needs_colon_and_i_falls_back_to_boar() {
        assert_eq!(
            lex("i: dai"),
            vec![
                TokenKind::Iroha(IrohaLabel::from_alias("i").unwrap()),
                TokenKind::Colon,
                TokenKind::Sym(Symbol::DAI),
            ]
        );
        assert_eq!(lex("i"), vec![TokenKind::Sym(Symbol::from_glyph('亥').unwrap())]);
        assert_eq!(lex("ro")[0], TokenKind::AliasName("ro".to_string()));
    }

    #[test]
    fn alias_munch_is_longest_first() {
        let names: BTreeSet<String> = ["中徑".to_string(), "中小径和".to_string()].into();
        let toks = tokenize("中小径和/2", 1, &names).unwrap();
        assert_eq!(toks[0].kind, TokenKind::AliasName("中小径和".to_string()));
        // a bare symbol glyph is still a symbol, not an alias prefix
        let toks = tokenize("中/2", 1, &names).unwrap();
        assert_eq!(toks[0].kind, TokenKind::Sym(Symbol::CHU));
    }

    #[test]
    fn unknown_glyphs_error_with_position() {
        let err = tokenize("dai + 人", 1, &BTreeSet::new()).unwrap_err();
        assert!(matches!(err, Error::Lex { line: 1, col: 7, .. }));
        // unknown ascii identifiers lex as alias names (totality)
        assert_eq!(lex("mystery")[0], TokenKind::AliasName("mystery".to_string()));
    }

    #[test]
    fn prefixes_of_valid_text_tokenize() {
        let doc = "zero{ i: dai/rt(2); ro: -dai/2; -sho }";
        for n in 0..=doc.chars().count() {
            let prefix: String = doc.chars().take(n).collect();
            tokenize(&prefix, 1, &BTreeSet::new()).unwrap();
        }
    }
}
