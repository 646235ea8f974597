//! Soroban place-value interpretations.
//!
//! Abacus rows carry digits but no decimal point; which row means ones
//! is the reader's choice. A digit string therefore denotes a family of
//! values, one per power-of-ten offset, and a stated answer can pick
//! out the single member consistent with it. This is the mechanism by
//! which the Kijimadaira tablet's "5 ko" and the textbook's "5 bu" can
//! name the same board state.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::notation::parse::{parse_statement, AliasRegistry, Statement};
use crate::radical::Radical;
use crate::rational::{pow10, Rational};
use crate::symbol::Symbol;
use crate::units::Quantity;

/// Digits as they sit on the board, most significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitString {
    digits: Vec<u8>,
}

impl DigitString {
    pub fn parse(text: &str) -> Result<DigitString> {
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Quantity(format!("not a digit string: {text:?}")));
        }
        Ok(DigitString { digits: text.bytes().map(|b| b - b'0').collect() })
    }

    pub fn text(&self) -> String {
        self.digits.iter().map(|d| (d + b'0') as char).collect()
    }

    fn integer(&self) -> BigInt {
        let mut acc = BigInt::ZERO;
        for &d in &self.digits {
            acc = acc * 10 + d;
        }
        acc
    }
}

/// One choice of ones row: value = digits × 10^offset.
#[derive(Debug, Clone, PartialEq)]
pub struct Interpretation {
    pub offset: i32,
    pub value: Rational,
}

impl Interpretation {
    /// Exact decimal text; interpretation values always terminate.
    pub fn decimal_text(&self) -> String {
        let places = self.offset.min(0).unsigned_abs();
        let scaled = (&self.value * pow10(places as i32)).to_integer();
        let mut s = scaled.to_string();
        if places > 0 {
            let digits = places as usize;
            let sign_free = s.trim_start_matches('-').len();
            if sign_free <= digits {
                let pad = "0".repeat(digits - sign_free + 1);
                let at = s.len() - sign_free;
                s.insert_str(at, &pad);
            }
            s.insert(s.len() - digits, '.');
        }
        s
    }
}

/// All readings over the inclusive offset range, ascending.
pub fn enumerate_interpretations(d: &DigitString, lo: i32, hi: i32) -> Vec<Interpretation> {
    let n = Rational::from_integer(d.integer());
    (lo..=hi).map(|offset| Interpretation { offset, value: &n * pow10(offset) }).collect()
}

/// Keeps the interpretations whose substitution into the template lands
/// within tol of the target. The hole is the free name `x`; candidates
/// that make a radicand negative are unsatisfiable rather than errors.
/// tol is measured in the target's display unit.
pub fn resolve_ambiguity(
    template: &str,
    d: &DigitString,
    lo: i32,
    hi: i32,
    bindings: &BTreeMap<Symbol, Radical>,
    target: &Quantity,
    tol: &Rational,
) -> Result<Vec<Interpretation>> {
    let tol_shaku = Radical::from_rational(tol * target.display_unit.scale());
    let mut survivors = Vec::new();
    for interp in enumerate_interpretations(d, lo, hi) {
        let expr = match instantiate(template, &interp.value) {
            Ok(e) => e,
            Err(Error::NegativeRadicand(_)) => continue,
            Err(e) => return Err(e),
        };
        let v = match expr.eval(bindings) {
            Ok(v) => v,
            Err(Error::NegativeRadicand(_)) => continue,
            Err(e) => return Err(e),
        };
        let diff = v.sub(&target.value).abs();
        if diff.cmp_value(&tol_shaku) != std::cmp::Ordering::Greater {
            survivors.push(interp);
        }
    }
    Ok(survivors)
}

fn instantiate(template: &str, candidate: &Rational) -> Result<Expr> {
    let mut reg = AliasRegistry::new();
    reg.define("x", Expr::from_rational(candidate.clone()));
    match parse_statement(template, 1, &mut reg)? {
        Statement::Expr(e) => Ok(e),
        _ => Err(Error::Problem { line: 1, msg: "template must be an expression".to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::units::parse_quantity;

    fn five() -> DigitString {
        DigitString::parse("5").unwrap()
    }

    fn tablet_bindings() -> BTreeMap<Symbol, Radical> {
        BTreeMap::from([(Symbol::DAI, Radical::one())])
    }

    #[test]
    fn enumeration_is_ascending_and_complete() {
        let vals: Vec<Rational> =
            enumerate_interpretations(&five(), -2, 2).into_iter().map(|i| i.value).collect();
        assert_eq!(vals, vec![rat(1, 20), rat(1, 2), rat_int(5), rat_int(50), rat_int(500)]);
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
        let one = enumerate_interpretations(&DigitString::parse("207").unwrap(), -2, -2);
        assert_eq!(one[0].value, rat(207, 100));
    }

    #[test]
    fn decimal_texts() {
        let texts: Vec<String> = enumerate_interpretations(&five(), -2, 2)
            .iter()
            .map(Interpretation::decimal_text)
            .collect();
        assert_eq!(texts, vec!["0.05", "0.5", "5", "50", "500"]);
    }

    #[test]
    fn tablet_ambiguity_has_one_survivor() {
        // large diameter 10 sun, stated answer 2.07 sun
        let target = parse_quantity("2 sun 0 7 bu").unwrap();
        let survivors = resolve_ambiguity(
            "(rt(x) - x)*dai",
            &five(),
            -2,
            2,
            &tablet_bindings(),
            &target,
            &rat(5, 1000),
        )
        .unwrap();
        assert_eq!(survivors.len(), 1);
        assert_eq!(survivors[0].value, rat(1, 2));
        // reading the digit at the ones row, as carved, satisfies nothing
        let none = resolve_ambiguity(
            "(rt(x) - x)*dai",
            &five(),
            0,
            0,
            &tablet_bindings(),
            &target,
            &rat(5, 1000),
        )
        .unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn wide_tolerance_keeps_all() {
        let target = parse_quantity("2 sun 0 7 bu").unwrap();
        let all = resolve_ambiguity(
            "(rt(x) - x)*dai",
            &five(),
            -2,
            2,
            &tablet_bindings(),
            &target,
            &rat_int(100000),
        )
        .unwrap();
        assert_eq!(all.len(), 5);
    }

    #[test]
    fn negative_radicands_are_unsatisfiable_not_errors() {
        let target = parse_quantity("2 shaku").unwrap();
        let survivors = resolve_ambiguity(
            "rt(x - 1)*dai",
            &five(),
            -2,
            0,
            &tablet_bindings(),
            &target,
            &rat_int(1),
        )
        .unwrap();
        // only x = 5 has a real root: rt(4) = 2 within 1 of 2 shaku
        assert_eq!(survivors.len(), 1);
        assert_eq!(survivors[0].value, rat_int(5));
    }

    #[test]
    fn unbound_symbols_error() {
        let target = parse_quantity("1 sun").unwrap();
        let err = resolve_ambiguity(
            "(rt(x) - x)*dai",
            &five(),
            0,
            0,
            &BTreeMap::new(),
            &target,
            &rat_int(1),
        );
        assert!(matches!(err, Err(Error::UnboundSymbol(_))));
    }

    #[test]
    fn digit_strings_validate() {
        assert!(DigitString::parse("").is_err());
        assert!(DigitString::parse("5a").is_err());
        assert_eq!(DigitString::parse("207").unwrap().text(), "207");
    }
}
