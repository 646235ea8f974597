//! Exact symbolic algebra for Edo-period tenzan notation: radical
//! arithmetic, polynomial expressions, the notation itself in modern and
//! column layouts, the rewrite verbs used by the historical derivations,
//! traditional length units, soroban digit strings, and a float-geometry
//! oracle for checking results against a direct construction.

pub mod error;
pub mod expr;
pub mod geometry;
pub mod notation;
pub mod problem;
pub mod radical;
pub mod rational;
pub mod rewrite;
pub mod soroban;
pub mod symbol;
pub mod units;

pub use error::{Error, Result};
pub use expr::{Block, BlockTerm, DisplayKey, DisplayTerm, Equation, Expr, Monomial, Polynomial, TermFlags, solve_linear};
pub use geometry::{build_square_config, check_incidences, solve_small, tangency_residual, Circle, SquareConfig};
pub use notation::{canonical_text, parse_document, parse_statement, render_column, render_modern, AliasRegistry, ColumnLayout, Statement};
pub use problem::{parse_problem, run_problem, ProblemFile, ProblemRun, RouteVerdict, Verification, VerifySpec};
pub use radical::Radical;
pub use rational::Rational;
pub use rewrite::{run_script, Expected, Given, GoldenStatus, Report, RunOutcome, Script, Step, StepValue, Verb};
pub use soroban::{enumerate_interpretations, resolve_ambiguity, DigitString, Interpretation};
pub use symbol::{IrohaLabel, Symbol, SymbolRole};
pub use units::{format_quantity, parse_quantity, Quantity, Unit};
