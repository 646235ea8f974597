//! Columnar board layout.
//!
//! Statements lay out as the counting board did: one column per term,
//! columns running right to left, cells top to bottom. The text form
//! puts the rightmost column first on each line's right end, separates
//! logical columns with one ideographic space, and pads every column to
//! a full rectangle.
//!
//! Term column order, top to bottom: label, negation stroke ノ, divisor
//! cells ending in the bar ｜, dividend count, symbol glyphs, radicand
//! digits with 商. A root in divisor position keeps its 商 above the
//! bar (二商｜ reads "divide by the root of two"). Decimal-flagged terms
//! instead write digits, symbols, the fraction word, and 商 when rooted.
//! A count of one is written as a single tally only when the column
//! would otherwise start at its symbol glyphs; two and three are tally
//! runs, four and up are kanji digits.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive};

use crate::expr::{DisplayTerm, Expr, Monomial};
use crate::radical::Radical;
use crate::rational::Rational;
use crate::symbol::IrohaLabel;

use super::parse::Statement;
use super::render::decimal_form;
use super::token::{kanji_digit, UnitWord};

/// Logical columns in reading order: index 0 is the rightmost column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnLayout {
    cols: Vec<Vec<char>>,
}

impl ColumnLayout {
    pub fn columns(&self) -> &[Vec<char>] {
        &self.cols
    }

    pub fn height(&self) -> usize {
        self.cols.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    /// Renders left to right for a text terminal, one ideographic space
    /// between columns, padded to a rectangle.
    pub fn to_text(&self) -> String {
        let h = self.height();
        let mut lines = Vec::with_capacity(h);
        for r in 0..h {
            let mut line = String::new();
            for (k, col) in self.cols.iter().rev().enumerate() {
                if k > 0 {
                    line.push('\u{3000}');
                }
                line.push(col.get(r).copied().unwrap_or('\u{3000}'));
            }
            lines.push(line);
        }
        lines.join("\n")
    }
}

pub fn render_column(stmt: &Statement) -> ColumnLayout {
    let mut cols = Vec::new();
    match stmt {
        Statement::Expr(e) => push_expr_columns(e, None, &mut cols),
        Statement::Equation(eq) => {
            push_expr_columns(&eq.lhs, None, &mut cols);
            match &eq.rhs_alias {
                Some(name) => cols.push(name.chars().collect()),
                None => push_expr_columns(&eq.rhs, None, &mut cols),
            }
        }
        Statement::Block(b) => {
            for t in &b.terms {
                push_expr_columns(&t.expr, t.label, &mut cols);
            }
            // the closing mark of a zero block sits past the last term
            cols.push(vec!['合', '矩', '〇']);
        }
    }
    ColumnLayout { cols }
}

fn push_expr_columns(e: &Expr, label: Option<IrohaLabel>, cols: &mut Vec<Vec<char>>) {
    if e.is_zero() {
        let mut cells = Vec::new();
        if let Some(l) = label {
            cells.push(l.glyph());
        }
        cells.push('〇');
        cols.push(cells);
        return;
    }
    for (i, dt) in e.display_terms().iter().enumerate() {
        cols.push(term_column(e, dt, if i == 0 { label } else { None }));
    }
}

fn term_column(e: &Expr, dt: &DisplayTerm, label: Option<IrohaLabel>) -> Vec<char> {
    let mut cells = Vec::new();
    if let Some(l) = label {
        cells.push(l.glyph());
    }
    if dt.coeff.is_negative() {
        cells.push('ノ');
    }
    let q = dt.coeff.abs();
    if dt.flags.decimal && e.den_mono().is_one() {
        if let Some(den) = e.den_scalar().as_rational() {
            if let Some((digits, k, rooted)) = decimal_form(&q, &dt.radicand, &den) {
                push_kanji_digits(&digits, &mut cells);
                push_mono_glyphs(&dt.mono, &mut cells);
                cells.push(UnitWord::from_places(k).expect("k is at most 3").kanji());
                if rooted {
                    cells.push('商');
                }
                return cells;
            }
        }
    }
    // vulgar layout over the per-term reduced denominator
    let term = Expr::new(
        crate::expr::Polynomial::from_terms(vec![(
            Radical::from_term(q, dt.radicand.clone()),
            dt.mono.clone(),
        )]),
        e.den_scalar().clone(),
        e.den_mono().clone(),
        BTreeMap::new(),
    );
    let tdt = &term.display_terms()[0];
    if !term.den_is_trivial() {
        for (r, d) in term.den_scalar().terms() {
            if *r != Rational::one() {
                push_kanji_digits(&r.numer().to_biguint().expect("positive divisor"), &mut cells);
            }
            if !d.is_one() {
                push_kanji_digits(d, &mut cells);
                cells.push('商');
            }
        }
        push_mono_glyphs(term.den_mono(), &mut cells);
        cells.push('｜');
    }
    let count = tdt.coeff.to_integer();
    match count.to_u32() {
        Some(1) => {
            if cells.is_empty() && tdt.radicand.is_one() {
                cells.push('｜');
            }
        }
        Some(n @ 2..=3) => cells.extend(std::iter::repeat_n('｜', n as usize)),
        _ => push_kanji_digits(&count.to_biguint().expect("positive count"), &mut cells),
    }
    push_mono_glyphs(&tdt.mono, &mut cells);
    if !tdt.radicand.is_one() {
        push_kanji_digits(&tdt.radicand, &mut cells);
        cells.push('商');
    }
    cells
}

fn push_kanji_digits(n: &BigUint, cells: &mut Vec<char>) {
    for d in n.to_string().bytes() {
        cells.push(kanji_digit((d - b'0') as u32));
    }
}

fn push_mono_glyphs(mono: &Monomial, cells: &mut Vec<char>) {
    for (sym, exp) in mono.symbols() {
        for _ in 0..exp {
            cells.push(sym.glyph());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse::{parse_statement, AliasRegistry};

    fn grid(text: &str) -> String {
        let mut reg = AliasRegistry::new();
        let stmt = parse_statement(text, 1, &mut reg).unwrap();
        render_column(&stmt).to_text()
    }

    #[test]
    fn single_term_tallies() {
        assert_eq!(grid("|甲"), "｜\n甲");
        assert_eq!(grid("||甲"), "｜\n｜\n甲");
        assert_eq!(grid("乙|甲"), "乙\n｜\n甲");
        assert_eq!(grid("4*kou"), "四\n甲");
        assert_eq!(grid("rt(2)"), "二\n商");
        assert_eq!(grid("0"), "〇");
    }

    #[test]
    fn halving_with_alias() {
        assert_eq!(grid("dai/2 = chu as 中徑"), "中　二\n徑　｜\n　　大");
    }

    #[test]
    fn scaled_diagonal_with_alias() {
        assert_eq!(
            grid("dai*rt(2)/2 = chu + sho as 中小径和"),
            "中　二\n小　｜\n径　大\n和　二\n　　商"
        );
    }

    #[test]
    fn root_divisor_keeps_quotient_mark_above_bar() {
        assert_eq!(
            grid("dai/rt(2) = chu + sho as 中小径和"),
            "中　二\n小　商\n径　｜\n和　大"
        );
    }

    #[test]
    fn labeled_zero_block() {
        assert_eq!(
            grid("zero{ i: dai/rt(2); ro: -dai/2; -sho }"),
            "合　ノ　ロ　イ\n矩　小　ノ　二\n〇　　　二　商\n　　　　｜　｜\n　　　　大　大"
        );
    }

    #[test]
    fn labeled_zero_block_in_fraction_words() {
        assert_eq!(
            grid("zero{ i: rt(5 bu)*dai; ro: -(5 bu)*dai; -sho }"),
            "合　ノ　ロ　イ\n矩　小　ノ　五\n〇　　　五　大\n　　　　大　分\n　　　　分　商"
        );
    }

    #[test]
    fn solved_form_without_alias() {
        assert_eq!(
            grid("sho = rt(5 bu)*dai - (5 bu)*dai"),
            "ノ　五　｜\n五　大　小\n大　分\u{3000}\u{3000}\n分　商\u{3000}\u{3000}"
        );
    }

    #[test]
    fn unaliased_equation_spells_both_sides() {
        assert_eq!(grid("dai/2 = chu"), "｜　二\n中　｜\n　　大");
    }
}
