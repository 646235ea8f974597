//! Problem files: a line-oriented description of one historical
//! problem, carrying its givens, derivation script, golden renderings,
//! stated answer, and a verification line.
//!
//! The format is plain UTF-8 so the column goldens stay bit-exact:
//!
//! ```text
//! problem: stsn
//! source: where the problem comes from
//! unknown: sho
//! given halve: dai/2 = chu as 中徑 # note
//! step s1 = mul_both(halve, rt(2))
//! expect s1: dai*rt(2)/2 = chu*rt(2)
//! expect-column s1: <<EOF
//! ...grid...
//! EOF
//! answer: 2 bu 07 mo
//! verify: formula s7 with dai = 1 sun tol 0.005
//! ```
//!
//! Verification is deliberately triple: the formula as floats, the
//! formula exactly, and the geometry oracle that never saw the
//! formula, each against the stated answer. A formula can be wrong
//! while the stated answer is right; the kijimadaira tablet is
//! exactly that case, and the three verdicts say so.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::solve_small;
use crate::notation::parse::{parse_statement, AliasRegistry};
use crate::notation::Statement;
use crate::radical::Radical;
use crate::rational::{parse_decimal, pow10, rat, to_f64, Rational};
use crate::rewrite::{run_script, Expected, Given, RunOutcome, Script, Step, StepValue, Verb};
use crate::symbol::Symbol;
use crate::units::{parse_quantity, Quantity};

pub const DEFAULT_TOL: fn() -> Rational = || rat(5, 1000);

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySpec {
    pub formula_id: String,
    pub bindings: Vec<(Symbol, Quantity)>,
    pub tol: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub name: String,
    pub source: String,
    pub unknowns: Vec<Symbol>,
    pub script: Script,
    pub answer: Quantity,
    pub answer_text: String,
    pub verify: Option<VerifySpec>,
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut reg = AliasRegistry::new();
    let mut name = None;
    let mut source = String::new();
    let mut unknowns = Vec::new();
    let mut givens: Vec<Given> = Vec::new();
    let mut steps: Vec<Step> = Vec::new();
    let mut expects: BTreeMap<String, Expected> = BTreeMap::new();
    let mut answer: Option<(Quantity, String)> = None;
    let mut verify = None;

    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    while i < lines.len() {
        let line_no = i + 1;
        let line = lines[i].trim();
        i += 1;
        let err = |msg: String| Error::Problem { line: line_no, msg };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("problem:") {
            if name.replace(rest.trim().to_string()).is_some() {
                return Err(err("duplicate problem line".into()));
            }
        } else if let Some(rest) = line.strip_prefix("source:") {
            source = rest.trim().to_string();
        } else if let Some(rest) = line.strip_prefix("unknown:") {
            for word in rest.split_whitespace() {
                let s = lookup_symbol(word)
                    .ok_or_else(|| err(format!("unknown symbol {word}")))?;
                unknowns.push(s);
            }
        } else if let Some(rest) = line.strip_prefix("given ") {
            let (id, body) = rest
                .split_once(':')
                .ok_or_else(|| err("given needs NAME: equation".into()))?;
            let id = valid_id(id, line_no)?;
            check_unique(&id, &givens, &steps, line_no)?;
            let (eq_text, note) = match body.split_once('#') {
                Some((e, n)) => (e, Some(n.trim().to_string())),
                None => (body, None),
            };
            let equation = match parse_statement(eq_text.trim(), line_no, &mut reg)? {
                Statement::Equation(e) => e,
                _ => return Err(err("a given must be an equation".into())),
            };
            givens.push(Given { name: id, equation, note });
        } else if let Some(rest) = line.strip_prefix("step ") {
            let (id, call) = rest
                .split_once('=')
                .ok_or_else(|| err("step needs ID = verb(args)".into()))?;
            let id = valid_id(id, line_no)?;
            check_unique(&id, &givens, &steps, line_no)?;
            let call = call.split_once('#').map_or(call, |(c, _)| c);
            let verb = parse_verb(call.trim(), line_no, &mut reg)?;
            steps.push(Step { id, verb });
        } else if let Some(rest) = line.strip_prefix("expect-column ") {
            let (id, tail) = rest
                .split_once(':')
                .ok_or_else(|| err("expect-column needs ID: <<DELIM".into()))?;
            let id = valid_id(id, line_no)?;
            let delim = tail
                .trim()
                .strip_prefix("<<")
                .ok_or_else(|| err("expect-column needs a <<DELIM here-doc".into()))?
                .trim();
            let start = i;
            while i < lines.len() && lines[i] != delim {
                i += 1;
            }
            if i == lines.len() {
                return Err(err(format!("here-doc not closed by {delim}")));
            }
            let grid = lines[start..i].join("\n");
            i += 1;
            let slot = expects.entry(id.clone()).or_default();
            if slot.column.replace(grid).is_some() {
                return Err(err(format!("duplicate expect-column for {id}")));
            }
        } else if let Some(rest) = line.strip_prefix("expect ") {
            let (id, text) = rest
                .split_once(':')
                .ok_or_else(|| err("expect needs ID: text".into()))?;
            let id = valid_id(id, line_no)?;
            let slot = expects.entry(id.clone()).or_default();
            if slot.modern.replace(text.trim().to_string()).is_some() {
                return Err(err(format!("duplicate expect for {id}")));
            }
        } else if let Some(rest) = line.strip_prefix("answer:") {
            let text = rest.trim().to_string();
            let q = parse_quantity(&text)?;
            if answer.replace((q, text)).is_some() {
                return Err(err("duplicate answer line".into()));
            }
        } else if let Some(rest) = line.strip_prefix("verify:") {
            if verify.replace(parse_verify(rest.trim(), line_no)?).is_some() {
                return Err(err("duplicate verify line".into()));
            }
        } else {
            return Err(err(format!("unrecognized directive: {line}")));
        }
    }

    let defined = |id: &String| {
        givens.iter().any(|g| g.name == *id) || steps.iter().any(|s| s.id == *id)
    };
    if let Some(id) = expects.keys().find(|id| !defined(id)) {
        return Err(Error::Problem { line: 0, msg: format!("expect references unknown id {id}") });
    }
    if let Some(v) = &verify {
        if !defined(&v.formula_id) {
            return Err(Error::Problem {
                line: 0,
                msg: format!("verify references unknown id {}", v.formula_id),
            });
        }
    }
    let (answer, answer_text) =
        answer.ok_or(Error::Problem { line: 0, msg: "missing answer line".into() })?;
    Ok(ProblemFile {
        name: name.ok_or(Error::Problem { line: 0, msg: "missing problem line".into() })?,
        source,
        unknowns,
        script: Script { givens, steps, expects },
        answer,
        answer_text,
        verify,
    })
}

fn valid_id(raw: &str, line: usize) -> Result<String> {
    let id = raw.trim();
    if id.is_empty() || id.contains(char::is_whitespace) {
        return Err(Error::Problem { line, msg: format!("bad id {raw:?}") });
    }
    Ok(id.to_string())
}

fn check_unique(id: &str, givens: &[Given], steps: &[Step], line: usize) -> Result<()> {
    if givens.iter().any(|g| g.name == id) || steps.iter().any(|s| s.id == id) {
        return Err(Error::Problem { line, msg: format!("duplicate id {id}") });
    }
    Ok(())
}

fn lookup_symbol(word: &str) -> Option<Symbol> {
    Symbol::from_alias(word).or_else(|| {
        let mut chars = word.chars();
        match (chars.next(), chars.next()) {
            (Some(g), None) => Symbol::from_glyph(g),
            _ => None,
        }
    })
}

fn parse_verb(call: &str, line: usize, reg: &mut AliasRegistry) -> Result<Verb> {
    let err = |msg: String| Error::Problem { line, msg };
    let open = call.find('(').ok_or_else(|| err("verb needs (args)".into()))?;
    if !call.ends_with(')') {
        return Err(err("verb call must end with )".into()));
    }
    let verb = call[..open].trim();
    let args = split_args(&call[open + 1..call.len() - 1]);
    let argc = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(err(format!("{verb} takes {n} arguments, got {}", args.len())))
        }
    };
    let id_arg = |k: usize| valid_id(&args[k], line);
    match verb {
        "mul_both" => {
            argc(2)?;
            let factor = constant_radical(&args[1], line, reg)?;
            Ok(Verb::MulBoth { target: id_arg(0)?, factor })
        }
        "chain" => {
            argc(2)?;
            Ok(Verb::Chain { first: id_arg(0)?, second: id_arg(1)? })
        }
        "eliminate" => {
            argc(1)?;
            Ok(Verb::Eliminate { target: id_arg(0)? })
        }
        "move_left" => {
            argc(1)?;
            Ok(Verb::MoveLeft { target: id_arg(0)? })
        }
        "substitute_given" => {
            argc(2)?;
            Ok(Verb::SubstituteGiven { target: id_arg(0)?, given: id_arg(1)? })
        }
        "combine" => {
            argc(1)?;
            Ok(Verb::Combine { target: id_arg(0)? })
        }
        "convert" => {
            argc(1)?;
            Ok(Verb::Convert { target: id_arg(0)? })
        }
        "solve_for" => {
            argc(2)?;
            let sym = lookup_symbol(args[1].trim())
                .ok_or_else(|| err(format!("unknown symbol {}", args[1])))?;
            Ok(Verb::SolveFor { target: id_arg(0)?, symbol: sym })
        }
        "evaluate" => {
            if args.len() < 2 {
                return Err(err("evaluate takes a target and bindings".into()));
            }
            let bindings = args[1..]
                .iter()
                .map(|b| parse_binding(b, line))
                .collect::<Result<Vec<_>>>()?;
            Ok(Verb::Evaluate { target: id_arg(0)?, bindings })
        }
        other => Err(err(format!("unknown verb {other}"))),
    }
}

/// Splits on commas outside parentheses, so rt(2) stays whole.
fn split_args(body: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in body.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur);
    }
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn constant_radical(text: &str, line: usize, reg: &mut AliasRegistry) -> Result<Radical> {
    let expr = match parse_statement(text, line, reg)? {
        Statement::Expr(e) => e,
        _ => {
            return Err(Error::Problem { line, msg: format!("{text} is not an expression") });
        }
    };
    if !expr.free_symbols().is_empty() {
        return Err(Error::Problem { line, msg: format!("factor {text} must be constant") });
    }
    expr.eval(&BTreeMap::new())
}

fn parse_binding(text: &str, line: usize) -> Result<(Symbol, Quantity)> {
    let (sym, qty) = text
        .split_once('=')
        .ok_or(Error::Problem { line, msg: format!("binding needs SYM = quantity: {text}") })?;
    let s = lookup_symbol(sym.trim())
        .ok_or_else(|| Error::Problem { line, msg: format!("unknown symbol {}", sym.trim()) })?;
    Ok((s, parse_quantity(qty.trim())?))
}

fn parse_verify(rest: &str, line: usize) -> Result<VerifySpec> {
    let err = |msg: &str| Error::Problem { line, msg: format!("{msg}: verify: {rest}") };
    let rest = rest
        .strip_prefix("formula")
        .ok_or_else(|| err("expected `formula ID with BINDINGS [tol TOL]`"))?
        .trim_start();
    let (id, rest) = rest
        .split_once(" with ")
        .ok_or_else(|| err("expected ` with ` after the formula id"))?;
    let (bindings_text, tol) = match rest.rsplit_once(" tol ") {
        Some((b, t)) => {
            let tol = parse_decimal(t.trim())
                .ok_or_else(|| err("tolerance must be a decimal literal"))?;
            (b, tol)
        }
        None => (rest, DEFAULT_TOL()),
    };
    let bindings = bindings_text
        .split(',')
        .map(|b| parse_binding(b, line))
        .collect::<Result<Vec<_>>>()?;
    if bindings.is_empty() {
        return Err(err("verify needs at least one binding"));
    }
    Ok(VerifySpec { formula_id: valid_id(id, line)?, bindings, tol })
}

// ---- running and verification ----

/// One route's verdict: the observed value in the answer's display
/// unit, printed, and whether it landed within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteVerdict {
    pub route: &'static str,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub formula_id: String,
    pub target: Quantity,
    pub tol: Rational,
    pub routes: Vec<RouteVerdict>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.routes.iter().all(|r| r.pass)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemRun {
    pub outcome: RunOutcome,
    /// The final formula evaluated at the verify bindings.
    pub answer: Option<Quantity>,
    pub verification: Option<Verification>,
}

pub fn run_problem(p: &ProblemFile, tol_override: Option<&Rational>) -> Result<ProblemRun> {
    let outcome = run_script(&p.script)?;
    let answer = computed_answer(p, &outcome)?;
    let verification = match &p.verify {
        Some(spec) => Some(verification(p, spec, &outcome, tol_override)?),
        None => None,
    };
    Ok(ProblemRun { outcome, answer, verification })
}

/// The last equation-valued step, evaluated with the verify bindings:
/// what the derivation itself says the answer is.
fn computed_answer(p: &ProblemFile, outcome: &RunOutcome) -> Result<Option<Quantity>> {
    let Some(spec) = &p.verify else { return Ok(None) };
    let formula = p.script.steps.iter().rev().find_map(|s| match outcome.values.get(&s.id) {
        Some(StepValue::Eq(eq)) => Some(eq),
        _ => None,
    });
    match formula.map(|eq| crate::rewrite::evaluate(eq, &spec.bindings)) {
        Some(Ok(q)) => Ok(Some(q)),
        // a script need not end in a fully solved form
        Some(Err(Error::UnboundSymbol(_))) | None => Ok(None),
        Some(Err(e)) => Err(e),
    }
}

fn verification(
    p: &ProblemFile,
    spec: &VerifySpec,
    outcome: &RunOutcome,
    tol_override: Option<&Rational>,
) -> Result<Verification> {
    let formula = match outcome.values.get(&spec.formula_id) {
        Some(StepValue::Eq(eq)) => eq.clone(),
        Some(_) => {
            return Err(Error::Step {
                id: spec.formula_id.clone(),
                msg: "verify formula must be an equation".into(),
            });
        }
        None => return Err(Error::UnknownId(spec.formula_id.clone())),
    };
    let tol = tol_override.cloned().unwrap_or_else(|| spec.tol.clone());
    let place = p.answer.display_unit.place() as i32;
    let target = p.answer.in_display_unit();
    let target_f = target.eval_float();
    let tol_f = to_f64(&tol);

    let mut bindings = BTreeMap::new();
    for (s, q) in &spec.bindings {
        bindings.insert(*s, q.value.clone());
    }
    let exact = formula.rhs.eval(&bindings)?.scale(&pow10(place));

    let float_observed = exact.eval_float();
    let mut routes = vec![RouteVerdict {
        route: "float",
        observed: format!("{float_observed}"),
        pass: (float_observed - target_f).abs() <= tol_f,
    }];

    let diff = exact.sub(&target).abs();
    let within = diff.cmp_value(&Radical::from_rational(tol.clone())) != std::cmp::Ordering::Greater;
    routes.push(RouteVerdict {
        route: "exact",
        observed: exact.eval_fixed(40),
        pass: within,
    });

    // the oracle answers exactly one question, the small diameter as a
    // function of the large, so it joins in only when the formula makes
    // that claim
    if let [(Symbol::DAI, q)] = &spec.bindings[..] {
        if crate::rewrite::bare_symbol(&formula.lhs) == Some(Symbol::SHO) {
            let a = q.value.scale(&pow10(place)).eval_float();
            let c = solve_small(a, 1e-12);
            routes.push(RouteVerdict {
                route: "geometry",
                observed: format!("{c}"),
                pass: (c - target_f).abs() <= tol_f,
            });
        }
    }

    Ok(Verification {
        formula_id: spec.formula_id.clone(),
        target: p.answer.clone(),
        tol,
        routes,
    })
}
