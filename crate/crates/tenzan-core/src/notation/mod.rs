//! Reading and writing tenzan notation.
//!
//! Two surface forms share one canonical value model: a romanized modern
//! form (`dai*rt(2)/2 = chu + sho`) and the columnar board form laid out
//! the way counting rods sat on the reckoning surface. Parsing either
//! form and rendering back is stable: render(parse(t)) == render(t).

pub mod column;
pub mod parse;
pub mod render;
pub mod token;

pub use column::{render_column, ColumnLayout};
pub use parse::{parse_document, parse_document_with, parse_statement, AliasRegistry, Statement};
pub use render::{canonical_text, render_modern};
pub use token::{tokenize, Token, TokenKind, UnitWord};
