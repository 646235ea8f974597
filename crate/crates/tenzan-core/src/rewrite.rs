//! Derivation verbs and the script runner.
//!
//! Each verb is one printed move of the historical derivation style:
//! multiply both sides, chain two relations, cancel a shared root,
//! move everything left into a zero-sum block, substitute a given,
//! combine like terms, convert coefficients to fraction words, isolate
//! the unknown, and evaluate with measured lengths. Every verb except
//! convert preserves the value of its input exactly; convert preserves
//! value and changes only how coefficients are displayed.
//!
//! run_script executes a problem's steps in order and compares each
//! result with its golden rendering where one is declared. Mismatches
//! never abort the run: a variant transcription is a finding to report
//! in full, not a crash.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::expr::{
    combine_radicands, solve_linear, Block, BlockTerm, Equation, Expr, Monomial, Polynomial,
    TermFlags,
};
use crate::notation::render::decimal_form;
use crate::notation::{render_column, render_modern, Statement};
use crate::radical::Radical;
use crate::rational::Rational;
use crate::symbol::{IrohaLabel, Symbol};
use crate::units::{format_quantity, Quantity, Unit};

// ---- verbs ----

/// A named relation the script may cite but never proves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Given {
    pub name: String,
    pub equation: Equation,
    pub note: Option<String>,
}

pub fn mul_both(eq: &Equation, factor: &Radical) -> Result<Equation> {
    if factor.is_zero() {
        return Err(Error::ZeroFactor);
    }
    let f = Expr::constant(factor.clone());
    Ok(Equation::new(eq.lhs.mul(&f), eq.rhs.mul(&f)))
}

/// Transitive composition: the rhs of the first equation must equal a
/// side of the second; the result relates the first lhs to the other
/// side. The alias travels with the side it names.
pub fn chain(eq1: &Equation, eq2: &Equation) -> Result<Equation> {
    if eq1.rhs.value_eq(&eq2.lhs) {
        return Ok(Equation::with_alias(
            eq1.lhs.clone(),
            eq2.rhs.clone(),
            eq2.rhs_alias.clone(),
        ));
    }
    if eq1.rhs.value_eq(&eq2.rhs) {
        return Ok(Equation::new(eq1.lhs.clone(), eq2.lhs.clone()));
    }
    Err(Error::ChainMismatch(format!(
        "{} matches neither side of {}",
        render_modern(&Statement::Expr(eq1.rhs.clone())),
        render_modern(&Statement::Equation(eq2.clone())),
    )))
}

/// Cancels the root shared by every numerator coefficient against the
/// denominator, writing the rational denominator as a product of roots
/// where needed (2 = rt(2)*rt(2)), so a*rt(2)/2 becomes a/rt(2). A side
/// with nothing to cancel is left alone; if neither side qualifies the
/// equation is returned unchanged with a warning.
pub fn eliminate(eq: &Equation) -> (Equation, Option<String>) {
    if let Some(lhs) = eliminate_side(&eq.lhs) {
        return (Equation::with_alias(lhs, eq.rhs.clone(), eq.rhs_alias.clone()), None);
    }
    if let Some(rhs) = eliminate_side(&eq.rhs) {
        return (Equation::with_alias(eq.lhs.clone(), rhs, eq.rhs_alias.clone()), None);
    }
    (eq.clone(), Some("no shared root to eliminate; equation unchanged".to_string()))
}

fn eliminate_side(e: &Expr) -> Option<Expr> {
    if e.is_zero() || e.den_scalar().terms().len() != 1 {
        return None;
    }
    // d | every numerator radicand; a rational component blocks it
    let mut d: Option<BigUint> = None;
    for (c, _) in e.num().terms() {
        for (_, r) in c.terms() {
            d = Some(match d {
                None => r.clone(),
                Some(g) => g.gcd(r),
            });
        }
    }
    let d = d?;
    if d.is_one() {
        return None;
    }
    let num = Polynomial::from_terms(
        e.num()
            .terms()
            .iter()
            .map(|(c, m)| {
                let divided = Radical::normalize(
                    c.terms().iter().map(|(q, r)| (q.clone(), combine_radicands(r, &d))).collect(),
                );
                (divided, m.clone())
            })
            .collect(),
    );
    let flags = e
        .flags()
        .iter()
        .map(|((m, r), f)| ((m.clone(), combine_radicands(r, &d)), *f))
        .collect();
    // rt(e0)/rt(d) = (1/d')*rt(e'*d') with d = g*d', e0 = g*e'
    let (q, e0) = &e.den_scalar().terms()[0];
    let g = e0.gcd(&d);
    let d_rest = &d / &g;
    let den = Radical::from_term(
        q / Rational::from_integer(d_rest.clone().into()),
        (e0 / &g) * &d_rest,
    );
    Some(Expr::new(num, den, e.den_mono().clone(), flags))
}

/// lhs - rhs as a zero-sum block, one line per printed term, labeled
/// in iroha order with the last term left bare.
pub fn move_left(eq: &Equation) -> Result<Block> {
    let mut terms = Vec::new();
    push_side_terms(&mut terms, &eq.lhs, false);
    push_side_terms(&mut terms, &eq.rhs, true);
    if terms.len() > IrohaLabel::MAX as usize {
        return Err(Error::IrohaExhausted(terms.len()));
    }
    let last = terms.len().saturating_sub(1);
    let terms = terms
        .into_iter()
        .enumerate()
        .map(|(i, expr)| BlockTerm {
            label: (i < last).then(|| IrohaLabel::from_index(i as u8 + 1).expect("within max")),
            expr,
        })
        .collect();
    Ok(Block::new(terms))
}

fn push_side_terms(out: &mut Vec<Expr>, side: &Expr, negate: bool) {
    for dt in side.display_terms() {
        let coeff = if negate { -dt.coeff.clone() } else { dt.coeff.clone() };
        let mut flags = BTreeMap::new();
        if !dt.flags.is_default() {
            flags.insert((dt.mono.clone(), dt.radicand.clone()), dt.flags);
        }
        out.push(Expr::new(
            Polynomial::from_terms(vec![(Radical::from_term(coeff, dt.radicand), dt.mono)]),
            side.den_scalar().clone(),
            side.den_mono().clone(),
            flags,
        ));
    }
}

/// Replaces the given's subject throughout the block. Candidate
/// subjects are a bare-symbol side (rhs first) and then any symbol the
/// equation is linear in; the first candidate actually present in the
/// block wins. Terms that vanish are dropped; labels stay with their
/// terms.
pub fn substitute_given(b: &Block, g: &Given) -> Result<(Block, Option<String>)> {
    let present: BTreeSet<Symbol> = b.terms.iter().flat_map(|t| t.expr.free_symbols()).collect();
    let Some((sym, repl)) = given_subject(g, &present)? else {
        let warning = format!("given {} names no symbol in the block; unchanged", g.name);
        return Ok((b.clone(), Some(warning)));
    };
    let mut terms = Vec::new();
    for t in &b.terms {
        let expr = t.expr.substitute(sym, &repl)?;
        if !expr.is_zero() {
            terms.push(BlockTerm { label: t.label, expr });
        }
    }
    Ok((Block::new(terms), None))
}

fn given_subject(g: &Given, present: &BTreeSet<Symbol>) -> Result<Option<(Symbol, Expr)>> {
    let mut candidates: Vec<(Symbol, Expr)> = Vec::new();
    if let Some(s) = bare_symbol(&g.equation.rhs) {
        candidates.push((s, g.equation.lhs.clone()));
    }
    if let Some(s) = bare_symbol(&g.equation.lhs) {
        candidates.push((s, g.equation.rhs.clone()));
    }
    let mut free: BTreeSet<Symbol> = g.equation.lhs.free_symbols();
    free.extend(g.equation.rhs.free_symbols());
    for s in free {
        if candidates.iter().any(|(c, _)| *c == s) {
            continue;
        }
        if let Ok(repl) = solve_linear(&g.equation, s) {
            candidates.push((s, repl));
        }
    }
    if candidates.is_empty() {
        return Err(Error::NotLinear(format!("given {} has no solvable subject", g.name)));
    }
    Ok(candidates.into_iter().find(|(s, _)| present.contains(s)))
}

pub(crate) fn bare_symbol(e: &Expr) -> Option<Symbol> {
    if !e.den_is_trivial() || e.num().terms().len() != 1 {
        return None;
    }
    let (c, m) = &e.num().terms()[0];
    if c.as_rational()? != Rational::one() {
        return None;
    }
    let mut syms = m.symbols();
    match (syms.next(), syms.next()) {
        (Some((s, 1)), None) => Some(s),
        _ => None,
    }
}

/// Merges terms that print the same shape: same component support,
/// same denominator. The first label survives; terms that cancel to
/// zero disappear. Returns a note naming what was merged.
pub fn combine(b: &Block) -> (Block, Option<String>) {
    type Shape = (Vec<(Monomial, BigUint)>, Radical, Monomial);
    let shape = |e: &Expr| -> Shape {
        let support = e
            .display_terms()
            .into_iter()
            .map(|dt| (dt.mono, dt.radicand))
            .collect();
        (support, e.den_scalar().clone(), e.den_mono().clone())
    };
    let mut merged: Vec<(Shape, BlockTerm, Vec<IrohaLabel>)> = Vec::new();
    for t in &b.terms {
        let key = shape(&t.expr);
        match merged.iter_mut().find(|(k, _, _)| *k == key) {
            Some((_, acc, absorbed)) => {
                acc.expr = acc.expr.add(&t.expr);
                absorbed.extend(t.label);
            }
            None => merged.push((key, t.clone(), Vec::new())),
        }
    }
    let mut notes = Vec::new();
    let mut terms = Vec::new();
    for (_, t, absorbed) in merged {
        if !absorbed.is_empty() {
            let kept = t.label.map(|l| l.alias().to_string()).unwrap_or_else(|| "unlabeled".into());
            let eaten: Vec<&str> = absorbed.iter().map(|l| l.alias()).collect();
            notes.push(format!("{} absorbed {}", kept, eaten.join(", ")));
        }
        if !t.expr.is_zero() {
            terms.push(t);
        } else {
            let name = t.label.map(|l| l.alias().to_string()).unwrap_or_else(|| "a term".into());
            notes.push(format!("{name} cancelled to zero"));
        }
    }
    let note = (!notes.is_empty()).then(|| notes.join("; "));
    (Block::new(terms), note)
}

/// Display conversion to fraction words: scalar root denominators are
/// rationalized, then every coefficient whose absorbed value has one
/// to three decimal places is flagged to print as a unit-word count
/// (1/rt(2) -> rt(5 bu)). Rooted coefficients must be positive to sit
/// under the root; plain ones are flagged by magnitude. Values are
/// untouched and a second pass changes nothing.
pub fn convert(b: &Block) -> Block {
    let terms = b
        .terms
        .iter()
        .map(|t| BlockTerm { label: t.label, expr: convert_expr(&t.expr) })
        .collect();
    Block::new(terms)
}

fn convert_expr(e: &Expr) -> Expr {
    let mut cur = e.clone();
    if !cur.den_scalar().is_rational() && cur.den_scalar().terms().len() == 1 {
        let (_, d) = cur.den_scalar().terms()[0].clone();
        let root = Radical::from_term(Rational::one(), d.clone());
        let flags = cur
            .flags()
            .iter()
            .map(|((m, r), f)| ((m.clone(), combine_radicands(r, &d)), *f))
            .collect();
        cur = Expr::new(
            cur.num().scale(&root),
            cur.den_scalar().mul(&root),
            cur.den_mono().clone(),
            flags,
        );
    }
    if !cur.den_mono().is_one() {
        return cur;
    }
    let Some(den) = cur.den_scalar().as_rational() else { return cur };
    for dt in cur.display_terms() {
        if dt.flags.decimal {
            continue;
        }
        if !dt.radicand.is_one() && dt.coeff.is_negative() {
            continue;
        }
        if let Some((_, k, _)) = decimal_form(&dt.coeff.abs(), &dt.radicand, &den) {
            if (1..=3).contains(&k) {
                cur.set_flags((dt.mono, dt.radicand), TermFlags { decimal: true });
            }
        }
    }
    cur
}

/// Isolates a symbol the block is linear in: the block asserts sum = 0,
/// so the result is symbol = formula. Display flags on the remaining
/// terms survive.
pub fn solve_for(b: &Block, s: Symbol) -> Result<Equation> {
    let formula = solve_linear(&Equation::new(b.sum(), Expr::zero()), s)?;
    Ok(Equation::new(Expr::symbol(s), formula))
}

/// Plugs measured lengths into a formula's rhs. The result carries the
/// unit of the first binding.
pub fn evaluate(formula: &Equation, bindings: &[(Symbol, Quantity)]) -> Result<Quantity> {
    let mut values = BTreeMap::new();
    let mut display = None;
    for (s, q) in bindings {
        display.get_or_insert(q.display_unit);
        values.insert(*s, q.value.clone());
    }
    let value = formula.rhs.eval(&values)?;
    Ok(Quantity::new(value, display.unwrap_or(Unit::Sun)))
}

// ---- scripts ----

#[derive(Debug, Clone, PartialEq)]
pub enum Verb {
    MulBoth { target: String, factor: Radical },
    Chain { first: String, second: String },
    Eliminate { target: String },
    MoveLeft { target: String },
    SubstituteGiven { target: String, given: String },
    Combine { target: String },
    Convert { target: String },
    SolveFor { target: String, symbol: Symbol },
    Evaluate { target: String, bindings: Vec<(Symbol, Quantity)> },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::MulBoth { .. } => "mul_both",
            Verb::Chain { .. } => "chain",
            Verb::Eliminate { .. } => "eliminate",
            Verb::MoveLeft { .. } => "move_left",
            Verb::SubstituteGiven { .. } => "substitute_given",
            Verb::Combine { .. } => "combine",
            Verb::Convert { .. } => "convert",
            Verb::SolveFor { .. } => "solve_for",
            Verb::Evaluate { .. } => "evaluate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub id: String,
    pub verb: Verb,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepValue {
    Eq(Equation),
    Blk(Block),
    Qty(Quantity),
}

/// Golden renderings a result must reproduce, where declared.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    pub modern: Option<String>,
    pub column: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoldenStatus {
    Match,
    Mismatch { expected: String, actual: String },
    NoGolden,
}

impl GoldenStatus {
    fn check(expected: Option<&String>, actual: &str) -> GoldenStatus {
        match expected {
            None => GoldenStatus::NoGolden,
            Some(e) if e == actual => GoldenStatus::Match,
            Some(e) => {
                GoldenStatus::Mismatch { expected: e.clone(), actual: actual.to_string() }
            }
        }
    }

    pub fn is_mismatch(&self) -> bool {
        matches!(self, GoldenStatus::Mismatch { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub id: String,
    pub verb: String,
    pub modern: String,
    pub column: String,
    pub golden: GoldenStatus,
    pub column_golden: GoldenStatus,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub givens: Vec<Given>,
    pub steps: Vec<Step>,
    pub expects: BTreeMap<String, Expected>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub givens: Vec<Report>,
    pub steps: Vec<Report>,
    /// Results by id, for answer evaluation and verification.
    pub values: BTreeMap<String, StepValue>,
    /// Exact solution of the given system, used for value checks.
    pub solution: BTreeMap<Symbol, Radical>,
}

impl RunOutcome {
    pub fn reports(&self) -> impl Iterator<Item = &Report> {
        self.givens.iter().chain(self.steps.iter())
    }

    pub fn mismatch_count(&self) -> usize {
        self.reports()
            .map(|r| r.golden.is_mismatch() as usize + r.column_golden.is_mismatch() as usize)
            .sum()
    }
}

pub fn run_script(script: &Script) -> Result<RunOutcome> {
    let solution = solution_bindings(&script.givens);
    let mut values: BTreeMap<String, StepValue> = BTreeMap::new();
    let mut givens = Vec::new();
    for g in &script.givens {
        let stmt = Statement::Equation(g.equation.clone());
        givens.push(make_report(&g.name, "given", &stmt, &script.expects, Vec::new()));
        values.insert(g.name.clone(), StepValue::Eq(g.equation.clone()));
    }
    let mut steps = Vec::new();
    for step in &script.steps {
        let (value, mut warnings) = execute(step, &script.givens, &values)?;
        warnings.extend(value_check(step, &value, &values, &solution));
        let report = match &value {
            StepValue::Eq(eq) => make_report(
                &step.id,
                step.verb.name(),
                &Statement::Equation(eq.clone()),
                &script.expects,
                warnings,
            ),
            StepValue::Blk(b) => make_report(
                &step.id,
                step.verb.name(),
                &Statement::Block(b.clone()),
                &script.expects,
                warnings,
            ),
            StepValue::Qty(q) => {
                let modern = format_quantity(q, 4);
                let golden =
                    GoldenStatus::check(script.expects.get(&step.id).and_then(|e| e.modern.as_ref()), &modern);
                Report {
                    id: step.id.clone(),
                    verb: step.verb.name().to_string(),
                    modern,
                    column: String::new(),
                    golden,
                    column_golden: GoldenStatus::NoGolden,
                    warnings,
                }
            }
        };
        steps.push(report);
        values.insert(step.id.clone(), value);
    }
    Ok(RunOutcome { givens, steps, values, solution })
}

fn make_report(
    id: &str,
    verb: &str,
    stmt: &Statement,
    expects: &BTreeMap<String, Expected>,
    warnings: Vec<String>,
) -> Report {
    let modern = render_modern(stmt);
    let column = render_column(stmt).to_text();
    let expected = expects.get(id);
    Report {
        id: id.to_string(),
        verb: verb.to_string(),
        modern: modern.clone(),
        column: column.clone(),
        golden: GoldenStatus::check(expected.and_then(|e| e.modern.as_ref()), &modern),
        column_golden: GoldenStatus::check(expected.and_then(|e| e.column.as_ref()), &column),
        warnings,
    }
}

fn execute(
    step: &Step,
    givens: &[Given],
    values: &BTreeMap<String, StepValue>,
) -> Result<(StepValue, Vec<String>)> {
    let eq_of = |id: &str| -> Result<&Equation> {
        match values.get(id) {
            Some(StepValue::Eq(eq)) => Ok(eq),
            Some(_) => Err(Error::Step { id: id.to_string(), msg: "expected an equation".into() }),
            None => Err(Error::UnknownId(id.to_string())),
        }
    };
    let blk_of = |id: &str| -> Result<&Block> {
        match values.get(id) {
            Some(StepValue::Blk(b)) => Ok(b),
            Some(_) => Err(Error::Step { id: id.to_string(), msg: "expected a block".into() }),
            None => Err(Error::UnknownId(id.to_string())),
        }
    };
    match &step.verb {
        Verb::MulBoth { target, factor } => {
            Ok((StepValue::Eq(mul_both(eq_of(target)?, factor)?), Vec::new()))
        }
        Verb::Chain { first, second } => {
            Ok((StepValue::Eq(chain(eq_of(first)?, eq_of(second)?)?), Vec::new()))
        }
        Verb::Eliminate { target } => {
            let (eq, warning) = eliminate(eq_of(target)?);
            Ok((StepValue::Eq(eq), warning.into_iter().collect()))
        }
        Verb::MoveLeft { target } => {
            Ok((StepValue::Blk(move_left(eq_of(target)?)?), Vec::new()))
        }
        Verb::SubstituteGiven { target, given } => {
            let g = givens
                .iter()
                .find(|g| g.name == *given)
                .ok_or_else(|| Error::UnknownId(given.clone()))?;
            let (b, warning) = substitute_given(blk_of(target)?, g)?;
            Ok((StepValue::Blk(b), warning.into_iter().collect()))
        }
        Verb::Combine { target } => {
            let (b, note) = combine(blk_of(target)?);
            Ok((StepValue::Blk(b), note.into_iter().collect()))
        }
        Verb::Convert { target } => Ok((StepValue::Blk(convert(blk_of(target)?)), Vec::new())),
        Verb::SolveFor { target, symbol } => {
            Ok((StepValue::Eq(solve_for(blk_of(target)?, *symbol)?), Vec::new()))
        }
        Verb::Evaluate { target, bindings } => {
            Ok((StepValue::Qty(evaluate(eq_of(target)?, bindings)?), Vec::new()))
        }
    }
}

const CHECK_DIGITS: u32 = 40;

/// Value soundness at the exact solution of the givens. convert is
/// checked term for term instead, since it rebuilds denominators.
fn value_check(
    step: &Step,
    value: &StepValue,
    values: &BTreeMap<String, StepValue>,
    solution: &BTreeMap<Symbol, Radical>,
) -> Vec<String> {
    if let Verb::Convert { target } = &step.verb {
        if let (Some(StepValue::Blk(before)), StepValue::Blk(after)) = (values.get(target), value) {
            if before.terms.len() == after.terms.len()
                && before
                    .terms
                    .iter()
                    .zip(&after.terms)
                    .all(|(a, b)| a.expr.value_eq(&b.expr))
            {
                return Vec::new();
            }
            return vec!["value check failed: conversion changed a term's value".to_string()];
        }
        return Vec::new();
    }
    let fixed = |e: &Expr| e.eval(solution).map(|r| r.eval_fixed(CHECK_DIGITS));
    let verdict = match value {
        StepValue::Eq(eq) => match (fixed(&eq.lhs), fixed(&eq.rhs)) {
            (Ok(l), Ok(r)) if l == r => None,
            (Ok(l), Ok(r)) => Some(format!("value check failed: lhs {l} vs rhs {r}")),
            (Err(e), _) | (_, Err(e)) => Some(format!("value check skipped: {e}")),
        },
        StepValue::Blk(b) => match fixed(&b.sum()) {
            Ok(s) if s == Radical::zero().eval_fixed(CHECK_DIGITS) => None,
            Ok(s) => Some(format!("value check failed: block sums to {s}")),
            Err(e) => Some(format!("value check skipped: {e}")),
        },
        StepValue::Qty(_) => None,
    };
    verdict.into_iter().collect()
}

/// Exact bindings satisfying all givens, for the value checks. Symbols
/// are bound one at a time: any symbol still free in every remaining
/// given is pinned to 1 (the derivations are homogeneous, so scale is
/// arbitrary), then each given with a single unbound symbol determines
/// it. First binding wins; givens are never checked against each other,
/// since a stated given may well contradict the derived truth.
fn solution_bindings(givens: &[Given]) -> BTreeMap<Symbol, Radical> {
    let free_of = |g: &Given| -> BTreeSet<Symbol> {
        let mut set = g.equation.lhs.free_symbols();
        set.extend(g.equation.rhs.free_symbols());
        set
    };
    let mentioned: BTreeSet<Symbol> = givens.iter().flat_map(&free_of).collect();
    let mut bound: BTreeMap<Symbol, Radical> = BTreeMap::new();
    loop {
        let mut progressed = true;
        while progressed {
            progressed = false;
            for g in givens {
                let unbound: Vec<Symbol> =
                    free_of(g).into_iter().filter(|s| !bound.contains_key(s)).collect();
                let [s] = unbound[..] else { continue };
                let Ok(expr) = solve_linear(&g.equation, s) else { continue };
                let Ok(v) = expr.eval(&bound) else { continue };
                bound.insert(s, v);
                progressed = true;
            }
        }
        match mentioned.iter().find(|s| !bound.contains_key(s)) {
            Some(&s) => {
                bound.insert(s, Radical::one());
            }
            None => break,
        }
    }
    bound
}
