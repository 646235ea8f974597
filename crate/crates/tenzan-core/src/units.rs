//! Edo length units and mixed-unit quantity text.
//!
//! Values are stored exactly in shaku; the five units descend by tens
//! (1 shaku = 10 sun = 100 bu = 1000 rin = 10000 mo). Quantity text is
//! groups of digits each closed by a unit name. A group sits so its
//! last digit lands on its named unit ("10 sun" is 1 shaku); when that
//! would overlap digits already placed, the group instead continues
//! downward from the previous group and the name must fall inside it
//! ("2 sun 0 7 bu" puts 0 at bu and 7 at rin). Both of the source
//! answers ("2 sun 0 7 bu", "2 bu 07 mo") only read consistently, one
//! exactly ten times the other, under this placement.
//!
//! Formatting truncates, never rounds; a truncated nonzero remainder is
//! marked with a trailing ellipsis, the texts' "has a remainder" sign.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::notation::token::UnitWord;
use crate::radical::Radical;
use crate::rational::{pow10, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Shaku,
    Sun,
    Bu,
    Rin,
    Mo,
}

impl Unit {
    pub const ALL: [Unit; 5] = [Unit::Shaku, Unit::Sun, Unit::Bu, Unit::Rin, Unit::Mo];

    /// Decimal place below shaku: shaku 0, sun 1, bu 2, rin 3, mo 4.
    pub fn place(self) -> u32 {
        match self {
            Unit::Shaku => 0,
            Unit::Sun => 1,
            Unit::Bu => 2,
            Unit::Rin => 3,
            Unit::Mo => 4,
        }
    }

    /// Size in shaku.
    pub fn scale(self) -> Rational {
        pow10(-(self.place() as i32))
    }

    pub fn ascii(self) -> &'static str {
        match self {
            Unit::Shaku => "shaku",
            Unit::Sun => "sun",
            Unit::Bu => "bu",
            Unit::Rin => "rin",
            Unit::Mo => "mo",
        }
    }

    pub fn from_place(p: u32) -> Option<Unit> {
        Unit::ALL.get(p as usize).copied()
    }

    pub fn from_name(s: &str) -> Option<Unit> {
        match s {
            "shaku" | "尺" => Some(Unit::Shaku),
            "sun" | "寸" => Some(Unit::Sun),
            "bu" | "分" => Some(Unit::Bu),
            "rin" | "厘" => Some(Unit::Rin),
            "mo" | "毛" => Some(Unit::Mo),
            _ => None,
        }
    }
}

/// An exact length. `approx` records that a formatting of this value
/// truncated a nonzero remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    /// Value in shaku.
    pub value: Radical,
    pub display_unit: Unit,
    pub approx: bool,
}

impl Quantity {
    pub fn new(value: Radical, display_unit: Unit) -> Quantity {
        Quantity { value, display_unit, approx: false }
    }

    /// The value measured in the display unit.
    pub fn in_display_unit(&self) -> Radical {
        self.value.scale(&pow10(self.display_unit.place() as i32))
    }
}

/// The decimal-fraction reading of a unit word: 5 bu is 1/2, 5 ko is 5.
pub fn fraction_word_value(n: &Rational, word: UnitWord) -> Rational {
    n * word.value()
}

pub fn parse_quantity(text: &str) -> Result<Quantity> {
    let bad = |msg: &str| Error::Quantity(format!("{msg} in {text:?}"));
    let mut value = Rational::zero();
    let mut display: Option<Unit> = None;
    let mut pending: Vec<u32> = Vec::new();
    let mut filled_end: Option<i64> = None;
    for tok in text.split_whitespace() {
        if tok.bytes().all(|b| b.is_ascii_digit()) && !tok.is_empty() {
            pending.extend(tok.bytes().map(|b| (b - b'0') as u32));
            continue;
        }
        let unit = Unit::from_name(tok).ok_or_else(|| Error::UnknownUnit(tok.to_string()))?;
        if pending.is_empty() {
            return Err(bad("unit without digits"));
        }
        let len = pending.len() as i64;
        let named = unit.place() as i64;
        // last digit on the named unit, unless that overlaps digits
        // already placed; then continue downward from them
        let start = if filled_end.is_none_or(|f| named - len + 1 > f) {
            named - len + 1
        } else {
            let start = filled_end.expect("checked") + 1;
            if !(start..start + len).contains(&named) {
                return Err(Error::UnitOrder(format!(
                    "unit {} out of order in {text:?}",
                    unit.ascii()
                )));
            }
            start
        };
        // start may go negative: tens and hundreds of shaku are plain
        // number places with no unit name of their own
        if start + len - 1 > Unit::Mo.place() as i64 {
            return Err(bad("digit below mo"));
        }
        for (i, d) in pending.iter().enumerate() {
            value += Rational::from_integer(BigInt::from(*d)) * pow10(-((start + i as i64) as i32));
        }
        filled_end = Some(start + len - 1);
        display.get_or_insert(unit);
        pending.clear();
    }
    if !pending.is_empty() {
        return Err(bad("trailing digits without a unit"));
    }
    let display_unit = display.ok_or_else(|| bad("no digits"))?;
    Ok(Quantity::new(Radical::from_rational(value), display_unit))
}

/// Mixed-unit text with `places` digits below the leading unit,
/// truncated; a nonzero cut remainder appends the approximation mark.
pub fn format_quantity(q: &Quantity, places: u32) -> String {
    assert!(places >= 1, "places must be at least 1");
    if q.value.is_zero() {
        return "0 sun".to_string();
    }
    let neg = q.value.sign() < 0;
    let mag = q.value.abs();
    // leading unit: the largest whose count is nonzero, else mo
    let lead = Unit::ALL
        .into_iter()
        .find(|u| mag.trunc_scaled(u.place()) > BigInt::zero())
        .unwrap_or(Unit::Mo);
    let k0 = lead.place();
    let n = places.min(Unit::Mo.place() - k0);
    let mut parts = vec![format!("{} {}", mag.trunc_scaled(k0), lead.ascii())];
    let mut digits = Vec::new();
    for j in 1..=n {
        let d = mag.trunc_scaled(k0 + j) - mag.trunc_scaled(k0 + j - 1) * BigInt::from(10);
        let unit = Unit::from_place(k0 + j).expect("place at most mo");
        digits.push((d.to_u32().expect("single digit"), unit));
    }
    let cut = Radical::from_rational(Rational::new(
        mag.trunc_scaled(k0 + n),
        BigInt::from(10).pow(k0 + n),
    ));
    let exact = mag.sub(&cut).is_zero();
    if exact {
        while digits.last().is_some_and(|(d, _)| *d == 0) {
            digits.pop();
        }
    }
    parts.extend(digits.iter().map(|(d, u)| format!("{d} {}", u.ascii())));
    let mut out = parts.join(" ");
    if neg {
        out.insert(0, '-');
    }
    if !exact {
        out.push_str(" …");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{big, rat, rat_int};

    fn val(text: &str) -> Rational {
        parse_quantity(text).unwrap().value.as_rational().unwrap()
    }

    #[test]
    fn quantities_from_both_answers() {
        assert_eq!(val("1 shaku"), rat_int(1));
        // book answer for a large circle of one shaku
        assert_eq!(val("2 sun 0 7 bu"), rat(207, 1000));
        assert_eq!(parse_quantity("2 sun 0 7 bu").unwrap().display_unit, Unit::Sun);
        // book answer at one-sun scale, exactly one tenth of the above
        assert_eq!(val("2 bu 07 mo"), rat(207, 10000));
        assert_eq!(val("10 sun"), rat_int(1));
        assert_eq!(val("23 sun"), rat(23, 10));
        assert_eq!(val("25 shaku"), rat_int(25));
        assert_eq!(val("2 shaku 5 bu"), rat(205, 100));
        assert_eq!(val("0 sun"), rat_int(0));
    }

    #[test]
    fn unit_telescoping() {
        for k in ["1", "7", "23"] {
            assert_eq!(val(&format!("{k} sun")), val(&format!("{k} bu")) * rat_int(10));
        }
    }

    #[test]
    fn malformed_quantities() {
        assert!(matches!(parse_quantity("2 bu 3 sun"), Err(Error::UnitOrder(_))));
        assert!(matches!(parse_quantity("2 sun 3 sun"), Err(Error::UnitOrder(_))));
        assert!(matches!(parse_quantity("5 ri"), Err(Error::UnknownUnit(_))));
        assert!(matches!(parse_quantity("5"), Err(Error::Quantity(_))));
        assert!(matches!(parse_quantity(""), Err(Error::Quantity(_))));
        assert!(matches!(parse_quantity("sun"), Err(Error::Quantity(_))));
        assert!(matches!(parse_quantity("2 mo 5 mo"), Err(Error::UnitOrder(_))));
        assert!(matches!(parse_quantity("2 rin 55 mo"), Err(Error::Quantity(_))));
    }

    #[test]
    fn formatting_truncates_and_marks() {
        // (√0.5 − 0.5) of one sun and of one shaku
        let small = Radical::normalize(vec![(rat(-1, 20), big(1)), (rat(1, 20), big(2))]);
        let q = Quantity::new(small, Unit::Sun);
        assert_eq!(format_quantity(&q, 2), "2 bu 0 rin 7 mo …");
        let big_one = Radical::normalize(vec![(rat(-1, 2), big(1)), (rat(1, 2), big(2))]);
        let q = Quantity::new(big_one, Unit::Sun);
        assert_eq!(format_quantity(&q, 2), "2 sun 0 bu 7 rin …");
    }

    #[test]
    fn formatting_exact_values() {
        let q = parse_quantity("5 sun").unwrap();
        assert_eq!(format_quantity(&q, 2), "5 sun");
        assert_eq!(format_quantity(&parse_quantity("0 sun").unwrap(), 2), "0 sun");
        let q = parse_quantity("2 sun 0 7 bu").unwrap();
        assert_eq!(format_quantity(&q, 3), "2 sun 0 bu 7 rin");
        let q = parse_quantity("25 shaku").unwrap();
        assert_eq!(format_quantity(&q, 2), "25 shaku");
    }

    #[test]
    fn parse_format_identity_on_exact_quantities() {
        for text in ["1 shaku", "2 sun 0 7 bu", "2 bu 07 mo", "5 rin", "10 sun", "0 sun"] {
            let q = parse_quantity(text).unwrap();
            let shown = format_quantity(&q, 4);
            let back = parse_quantity(&shown).unwrap();
            assert_eq!(back.value, q.value, "{text} -> {shown}");
            assert!(!back.approx);
        }
    }

    #[test]
    fn fraction_words() {
        assert_eq!(fraction_word_value(&rat_int(5), UnitWord::Bu), rat(1, 2));
        assert_eq!(fraction_word_value(&rat_int(5), UnitWord::Ko), rat_int(5));
        assert_eq!(fraction_word_value(&rat_int(0), UnitWord::Mo), rat_int(0));
    }
}
