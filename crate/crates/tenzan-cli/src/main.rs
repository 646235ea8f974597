//! Command line front end. Exit codes: 0 for a clean run, 1 when a
//! golden or a verification check fails, 2 for malformed input or flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tenzan_core::rational::{parse_decimal, to_f64};

// stdout writes go through this so a closed pipe (derive | head) ends the
// process quietly with the usual SIGPIPE status instead of a panic
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(141);
        }
    }};
}
use tenzan_core::{
    canonical_text, enumerate_interpretations, format_quantity, parse_document, parse_problem,
    parse_quantity, render_column, resolve_ambiguity, run_problem, DigitString, Error,
    GoldenStatus, ProblemFile, Radical, Rational, Report, Statement, Symbol, Verification,
};

#[derive(Parser)]
#[command(name = "tenzan", version, about = "Replay and check tenzan jutsu derivations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a notation file and print one canonical line per statement
    Parse { path: PathBuf },
    /// Render a notation file
    Render {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Layout::Modern)]
        layout: Layout,
    },
    /// Replay a problem file, checking every recorded golden
    Derive { path: PathBuf },
    /// Check a problem's stated answer by every applicable route
    Verify {
        path: PathBuf,
        /// Tolerance in the answer's display unit, e.g. 0.005
        #[arg(long)]
        tol: Option<String>,
    },
    /// Enumerate soroban readings of a digit column
    Soroban {
        /// The digits as placed on the board, e.g. 5
        digits: String,
        /// Inclusive power-of-ten range for the unit rod, e.g. -2..2
        #[arg(long, allow_hyphen_values = true)]
        offsets: String,
        /// Expression with a hole named x, e.g. "(rt(x) - x)*dai"
        #[arg(long)]
        template: Option<String>,
        /// Symbol binding such as "dai = 1 shaku"; repeatable
        #[arg(long)]
        bind: Vec<String>,
        /// Stated answer a surviving reading must reproduce
        #[arg(long)]
        target: Option<String>,
        /// Tolerance in the target's display unit
        #[arg(long)]
        tol: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Layout {
    Modern,
    Column,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Parse { path } => cmd_parse(&path),
        Command::Render { path, layout } => cmd_render(&path, layout),
        Command::Derive { path } => cmd_derive(&path),
        Command::Verify { path, tol } => cmd_verify(&path, tol.as_deref()),
        Command::Soroban { digits, offsets, template, bind, target, tol } => cmd_soroban(
            &digits,
            &offsets,
            template.as_deref(),
            &bind,
            target.as_deref(),
            tol.as_deref(),
        ),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<ExitCode, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn core(e: Error) -> String {
    e.to_string()
}

fn exit_flag(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_parse(path: &Path) -> CmdResult {
    for stmt in parse_document(&read(path)?).map_err(core)? {
        outln!("{}", canonical_text(&stmt));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_render(path: &Path, layout: Layout) -> CmdResult {
    let stmts = parse_document(&read(path)?).map_err(core)?;
    match layout {
        Layout::Modern => {
            for stmt in &stmts {
                outln!("{}", canonical_text(stmt));
            }
        }
        Layout::Column => {
            let grids: Vec<String> =
                stmts.iter().map(|s: &Statement| render_column(s).to_text()).collect();
            outln!("{}", grids.join("\n\n"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_derive(path: &Path) -> CmdResult {
    let file = parse_problem(&read(path)?).map_err(core)?;
    let run = run_problem(&file, None).map_err(core)?;
    outln!("problem: {}", file.name);
    if !file.source.is_empty() {
        outln!("source: {}", file.source);
    }
    for report in run.outcome.reports() {
        outln!();
        print_report(report);
    }
    outln!();
    match &run.answer {
        Some(q) => outln!("answer: {} (stated {})", format_quantity(q, 2), file.answer_text),
        None => outln!("answer: stated {}", file.answer_text),
    }
    let mut ok = run.outcome.mismatch_count() == 0;
    if let Some(v) = &run.verification {
        print_verification(v, &file);
        ok &= v.passed();
    }
    outln!("verdict: {}", if ok { "pass" } else { "FAIL" });
    Ok(exit_flag(ok))
}

fn cmd_verify(path: &Path, tol: Option<&str>) -> CmdResult {
    let file = parse_problem(&read(path)?).map_err(core)?;
    if file.verify.is_none() {
        return Err("problem has no verify line".into());
    }
    let tol = tol.map(parse_tol).transpose()?;
    let run = run_problem(&file, tol.as_ref()).map_err(core)?;
    let v = run.verification.expect("verify line is present");
    print_verification(&v, &file);
    let ok = v.passed();
    outln!("verdict: {}", if ok { "pass" } else { "FAIL" });
    Ok(exit_flag(ok))
}

fn print_report(r: &Report) {
    let mark = if r.golden.is_mismatch() || r.column_golden.is_mismatch() {
        " [MISMATCH]"
    } else if r.golden == GoldenStatus::Match || r.column_golden == GoldenStatus::Match {
        " [ok]"
    } else {
        ""
    };
    outln!("{} ({}){}", r.id, r.verb, mark);
    outln!("{}", r.modern);
    if !r.column.is_empty() {
        outln!("{}", r.column);
    }
    if let GoldenStatus::Mismatch { expected, .. } = &r.golden {
        outln!("expected: {expected}");
    }
    if let GoldenStatus::Mismatch { expected, .. } = &r.column_golden {
        outln!("expected column:\n{expected}");
    }
    for w in &r.warnings {
        outln!("warning: {w}");
    }
}

fn print_verification(v: &Verification, file: &ProblemFile) {
    outln!(
        "verify {} against {} (tol {} {})",
        v.formula_id,
        file.answer_text,
        to_f64(&v.tol),
        file.answer.display_unit.ascii(),
    );
    for route in &v.routes {
        outln!("{:<9} {} {}", route.route, route.observed, if route.pass { "pass" } else { "FAIL" });
    }
}

fn cmd_soroban(
    digits: &str,
    offsets: &str,
    template: Option<&str>,
    bind: &[String],
    target: Option<&str>,
    tol: Option<&str>,
) -> CmdResult {
    let d = DigitString::parse(digits).map_err(core)?;
    let (lo, hi) = parse_offsets(offsets)?;
    let readings = match template {
        None => enumerate_interpretations(&d, lo, hi),
        Some(template) => {
            let target = target.ok_or("--template needs --target")?;
            let target = parse_quantity(target).map_err(core)?;
            let tol = match tol {
                Some(t) => parse_tol(t)?,
                None => Rational::new(5.into(), 1000.into()),
            };
            let mut bindings = BTreeMap::new();
            for b in bind {
                let (sym, value) = parse_binding(b)?;
                bindings.insert(sym, value);
            }
            resolve_ambiguity(template, &d, lo, hi, &bindings, &target, &tol).map_err(core)?
        }
    };
    let texts: Vec<String> = readings.iter().map(|i| i.decimal_text()).collect();
    outln!("{}", texts.join(" "));
    Ok(ExitCode::SUCCESS)
}

fn parse_offsets(text: &str) -> Result<(i32, i32), String> {
    let bad = || format!("bad offset range {text:?}, expected lo..hi");
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: i32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(format!("empty offset range {text}"));
    }
    Ok((lo, hi))
}

fn parse_tol(text: &str) -> Result<Rational, String> {
    parse_decimal(text).ok_or(format!("bad tolerance {text:?}"))
}

fn parse_binding(text: &str) -> Result<(Symbol, Radical), String> {
    let (name, qty) = text.split_once('=').ok_or(format!("bad binding {text:?}"))?;
    let name = name.trim();
    let sym = Symbol::from_alias(name)
        .or_else(|| name.chars().next().filter(|_| name.chars().count() == 1).and_then(Symbol::from_glyph))
        .ok_or(format!("unknown symbol {name:?}"))?;
    let q = parse_quantity(qty.trim()).map_err(core)?;
    Ok((sym, q.value))
}
