//! The fixed symbol inventory of the notation.
//!
//! Twenty-five glyphs: the three size names that serve as unknowns, the
//! ten celestial stems for main elements, and the twelve zodiac signs for
//! auxiliary lines. Symbol order (size names, then stems, then zodiac,
//! each in canonical sequence) drives monomial ordering and therefore
//! every deterministic print order in the crate.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolRole {
    SizeName,
    MainElement,
    AuxiliaryLine,
}

/// Index into the fixed table; ordering follows table position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

struct Entry {
    glyph: char,
    alias: &'static str,
    role: SymbolRole,
}

const TABLE: &[Entry] = &[
    // size names (the unknowns)
    Entry { glyph: '大', alias: "dai", role: SymbolRole::SizeName },
    Entry { glyph: '中', alias: "chu", role: SymbolRole::SizeName },
    Entry { glyph: '小', alias: "sho", role: SymbolRole::SizeName },
    // celestial stems
    Entry { glyph: '甲', alias: "kou", role: SymbolRole::MainElement },
    Entry { glyph: '乙', alias: "otsu", role: SymbolRole::MainElement },
    Entry { glyph: '丙', alias: "hei", role: SymbolRole::MainElement },
    Entry { glyph: '丁', alias: "tei", role: SymbolRole::MainElement },
    Entry { glyph: '戊', alias: "bo", role: SymbolRole::MainElement },
    Entry { glyph: '己', alias: "ki", role: SymbolRole::MainElement },
    // 庚 and 癸 take kun readings: their on readings collide with 甲 and 己
    Entry { glyph: '庚', alias: "kanoe", role: SymbolRole::MainElement },
    Entry { glyph: '辛', alias: "shin", role: SymbolRole::MainElement },
    Entry { glyph: '壬', alias: "jin", role: SymbolRole::MainElement },
    Entry { glyph: '癸', alias: "mizunoto", role: SymbolRole::MainElement },
    // zodiac signs
    Entry { glyph: '子', alias: "ne", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '丑', alias: "ushi", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '寅', alias: "tora", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '卯', alias: "u", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '辰', alias: "tatsu", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '巳', alias: "mi", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '午', alias: "uma", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '未', alias: "hitsuji", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '申', alias: "saru", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '酉', alias: "tori", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '戌', alias: "inu", role: SymbolRole::AuxiliaryLine },
    Entry { glyph: '亥', alias: "i", role: SymbolRole::AuxiliaryLine },
];

impl Symbol {
    pub const DAI: Symbol = Symbol(0);
    pub const CHU: Symbol = Symbol(1);
    pub const SHO: Symbol = Symbol(2);

    pub fn glyph(self) -> char {
        TABLE[self.0 as usize].glyph
    }

    pub fn alias(self) -> &'static str {
        TABLE[self.0 as usize].alias
    }

    pub fn role(self) -> SymbolRole {
        TABLE[self.0 as usize].role
    }

    pub fn from_glyph(glyph: char) -> Option<Symbol> {
        TABLE.iter().position(|e| e.glyph == glyph).map(|i| Symbol(i as u8))
    }

    pub fn from_alias(alias: &str) -> Option<Symbol> {
        TABLE.iter().position(|e| e.alias == alias).map(|i| Symbol(i as u8))
    }

    pub fn all() -> impl Iterator<Item = Symbol> {
        (0..TABLE.len() as u8).map(Symbol)
    }
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.glyph())
    }
}

const IROHA: &[(char, &str)] = &[
    ('イ', "i"),
    ('ロ', "ro"),
    ('ハ', "ha"),
    ('ニ', "ni"),
    ('ホ', "ho"),
    ('ヘ', "he"),
    ('ト', "to"),
    ('チ', "chi"),
    ('リ', "ri"),
];

/// Term label in iroha order; index runs 1 through 9 (イ through リ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrohaLabel(u8);

impl IrohaLabel {
    pub const MAX: u8 = 9;

    pub fn from_index(index: u8) -> Option<IrohaLabel> {
        (1..=Self::MAX).contains(&index).then_some(IrohaLabel(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn glyph(self) -> char {
        IROHA[self.0 as usize - 1].0
    }

    pub fn alias(self) -> &'static str {
        IROHA[self.0 as usize - 1].1
    }

    pub fn from_glyph(glyph: char) -> Option<IrohaLabel> {
        IROHA.iter().position(|&(g, _)| g == glyph).map(|i| IrohaLabel(i as u8 + 1))
    }

    pub fn from_alias(alias: &str) -> Option<IrohaLabel> {
        IROHA.iter().position(|&(_, a)| a == alias).map(|i| IrohaLabel(i as u8 + 1))
    }
}
