//! Recursive-descent parser from token lines to canonical values.
//!
//! The document is line-oriented: one statement per non-blank line, `#`
//! starts a comment line. An equation may end in `as NAME`; the name is
//! registered as a display alias for the right-hand side and may be used
//! as a factor in later statements.
//!
//! Grammar (extensions over the base shape are noted where they appear):
//!
//! ```text
//! statement := equation | block | expr
//! equation  := expr '=' expr ['as' rest-of-line]
//! block     := 'zero' '{' [term (';' term)*] '}'
//! term      := [iroha ':'] expr
//! expr      := ['-'] fraction (('+'|'-') fraction)*
//! fraction  := product ['/' product] | product '|' product   (A|B is B ÷ A)
//! product   := factor (['*'] factor)*
//! factor    := number [unit-word] | tally-run | 'rt' '(' expr ')'
//!            | symbol | alias-name | '(' expr ')'
//! ```
//!
//! The leading minus and sums inside block terms are needed to re-read
//! the renderer's own output (blocks print signed terms); they are a
//! strict superset of the base grammar.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::expr::{Block, BlockTerm, Equation, Expr, Monomial, Polynomial, TermFlags};
use crate::radical::Radical;

use super::token::{tokenize, Token, TokenKind};

/// Display aliases in scope: name to the expression it stands for.
#[derive(Debug, Clone, Default)]
pub struct AliasRegistry {
    map: BTreeMap<String, Expr>,
}

impl AliasRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn define(&mut self, name: &str, expr: Expr) {
        self.map.insert(name.to_string(), expr);
    }

    pub fn lookup(&self, name: &str) -> Option<&Expr> {
        self.map.get(name)
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.map.keys().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Expr(Expr),
    Equation(Equation),
    Block(Block),
}

/// Parses a whole document with a fresh alias registry.
pub fn parse_document(text: &str) -> Result<Vec<Statement>> {
    let mut reg = AliasRegistry::new();
    parse_document_with(text, &mut reg)
}

pub fn parse_document_with(text: &str, reg: &mut AliasRegistry) -> Result<Vec<Statement>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_statement(line, idx + 1, reg)?);
    }
    Ok(out)
}

/// Parses one statement line; equations with an `as` clause register
/// their alias for subsequent lines.
pub fn parse_statement(line: &str, line_no: usize, reg: &mut AliasRegistry) -> Result<Statement> {
    // the alias clause is raw text to end of line, split off before lexing
    let (body, alias) = match line.split_once(" as ") {
        Some((body, name)) if !name.trim().is_empty() => (body, Some(name.trim().to_string())),
        _ => (line, None),
    };
    let toks = tokenize(body, line_no, &reg.names())?;
    let mut p = Parser { toks: &toks, pos: 0, line_no, reg };
    let stmt = if p.peek_is(&TokenKind::Zero) {
        if alias.is_some() {
            return Err(p.err_here("alias clause on a block"));
        }
        Statement::Block(p.parse_block()?)
    } else {
        let lhs = p.parse_expr()?;
        if p.eat(&TokenKind::Eq) {
            let rhs = p.parse_expr()?;
            if let Some(name) = &alias {
                p.reg.define(name, rhs.clone());
            }
            Statement::Equation(Equation::with_alias(lhs, rhs, alias))
        } else {
            if alias.is_some() {
                return Err(p.err_here("alias clause without an equation"));
            }
            Statement::Expr(lhs)
        }
    };
    if p.pos < p.toks.len() {
        return Err(p.err_here("trailing input"));
    }
    Ok(stmt)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    line_no: usize,
    reg: &'a mut AliasRegistry,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&TokenKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn peek_is(&self, kind: &TokenKind) -> bool {
        self.peek() == Some(kind)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_is(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<()> {
        if self.eat(kind) {
            Ok(())
        } else {
            Err(self.err_here(what))
        }
    }

    fn err_here(&self, msg: &str) -> Error {
        let col = self.toks.get(self.pos).map(|t| t.col).unwrap_or_else(|| {
            self.toks.last().map(|t| t.col + 1).unwrap_or(1)
        });
        Error::Syntax { line: self.line_no, col, msg: msg.to_string() }
    }

    fn parse_block(&mut self) -> Result<Block> {
        self.expect(&TokenKind::Zero, "expected zero block")?;
        self.expect(&TokenKind::LBrace, "expected '{'")?;
        let mut terms = Vec::new();
        if !self.peek_is(&TokenKind::RBrace) {
            loop {
                terms.push(self.parse_block_term()?);
                if !self.eat(&TokenKind::Semi) {
                    break;
                }
            }
        }
        self.expect(&TokenKind::RBrace, "expected '}'")?;
        Ok(Block::new(terms))
    }

    fn parse_block_term(&mut self) -> Result<BlockTerm> {
        let label = if let Some(TokenKind::Iroha(l)) = self.peek() {
            let l = *l;
            self.pos += 1;
            self.expect(&TokenKind::Colon, "expected ':' after label")?;
            Some(l)
        } else {
            None
        };
        Ok(BlockTerm { label, expr: self.parse_expr()? })
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut acc = if self.eat(&TokenKind::Minus) {
            self.parse_fraction()?.neg()
        } else {
            self.parse_fraction()?
        };
        loop {
            if self.eat(&TokenKind::Plus) {
                acc = acc.add(&self.parse_fraction()?);
            } else if self.eat(&TokenKind::Minus) {
                acc = acc.sub(&self.parse_fraction()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_fraction(&mut self) -> Result<Expr> {
        let first = self.parse_product()?;
        if self.eat(&TokenKind::Slash) {
            let divisor = self.parse_product()?;
            first.div(&divisor)
        } else if self.eat(&TokenKind::Divider) {
            // divisor is written first: 乙|甲 is 甲 ÷ 乙
            let dividend = self.parse_product()?;
            dividend.div(&first)
        } else {
            Ok(first)
        }
    }

    fn parse_product(&mut self) -> Result<Expr> {
        let mut acc = self.parse_factor()?;
        let mut last_numeric = matches!(self.toks[self.pos - 1].kind, TokenKind::Number(_) | TokenKind::TallyRun(_) | TokenKind::Unit(_));
        loop {
            let explicit = self.eat(&TokenKind::Star);
            let starts_factor = matches!(
                self.peek(),
                Some(
                    TokenKind::Number(_)
                        | TokenKind::TallyRun(_)
                        | TokenKind::Sym(_)
                        | TokenKind::Rt
                        | TokenKind::LParen
                        | TokenKind::AliasName(_)
                )
            );
            if !starts_factor {
                if explicit {
                    return Err(self.err_here("expected factor after '*'"));
                }
                return Ok(acc);
            }
            let next_numeric = matches!(self.peek(), Some(TokenKind::Number(_) | TokenKind::TallyRun(_)));
            if !explicit && last_numeric && next_numeric {
                return Err(self.err_here("adjacent numbers need an operator"));
            }
            acc = acc.mul(&self.parse_factor()?);
            last_numeric = next_numeric;
        }
    }

    fn parse_factor(&mut self) -> Result<Expr> {
        let tok = self.toks.get(self.pos).ok_or_else(|| self.err_here("expected a factor"))?.clone();
        self.pos += 1;
        match tok.kind {
            TokenKind::Number(q) => {
                if let Some(TokenKind::Unit(u)) = self.peek() {
                    let u = *u;
                    self.pos += 1;
                    let value = q * u.value();
                    Ok(decimal_constant(value))
                } else {
                    Ok(Expr::from_rational(q))
                }
            }
            TokenKind::TallyRun(n) => Ok(Expr::from_rational(crate::rational::rat_int(n as i64))),
            TokenKind::Sym(s) => Ok(Expr::symbol(s)),
            TokenKind::Rt => {
                self.expect(&TokenKind::LParen, "expected '(' after rt")?;
                let inner = self.parse_expr()?;
                self.expect(&TokenKind::RParen, "expected ')'")?;
                self.radical_of(inner)
            }
            TokenKind::LParen => {
                let inner = self.parse_expr()?;
                self.expect(&TokenKind::RParen, "expected ')'")?;
                Ok(inner)
            }
            TokenKind::AliasName(name) => {
                self.reg.lookup(&name).cloned().ok_or(Error::UnknownId(name))
            }
            _ => {
                self.pos -= 1;
                Err(self.err_here("expected a factor"))
            }
        }
    }

    /// rt(...) of a constant rational; keeps the decimal display flag of
    /// the radicand if it carried one (rt(5 bu) renders as written).
    fn radical_of(&self, inner: Expr) -> Result<Expr> {
        if !inner.free_symbols().is_empty() {
            return Err(Error::UnsupportedRadicand("rt of an expression with symbols".to_string()));
        }
        let decimal = inner.flags().values().any(|f| f.decimal);
        let v = inner.eval(&BTreeMap::new())?;
        let q = v
            .as_rational()
            .ok_or_else(|| Error::UnsupportedRadicand("rt of a nested radical".to_string()))?;
        let root = Radical::sqrt_of(&q)?;
        let mut e = Expr::constant(root.clone());
        if decimal && !root.is_zero() {
            let d = root.terms()[0].1.clone();
            e.set_flags((Monomial::one(), d), TermFlags { decimal: true });
        }
        Ok(e)
    }
}

/// A number written with a decimal-fraction word (5 bu); the flag makes
/// it render back in unit words rather than as a vulgar fraction.
fn decimal_constant(value: crate::rational::Rational) -> Expr {
    let poly = Polynomial::constant(Radical::from_rational(value));
    let flags = BTreeMap::from([((Monomial::one(), BigUint::one()), TermFlags { decimal: true })]);
    Expr::new(poly, Radical::one(), Monomial::one(), flags)
}
