//! The session language: parsing, evaluation and rendering.

pub mod ast;
pub mod eval;
pub mod expr;
pub mod lexer;
pub mod result;

pub use ast::{parse_session, Arg, SessionAst, Statement, StatementKind};
pub use eval::{evaluate, run_session, EvalOptions};
pub use expr::parse_poly;
pub use result::{ResultDocument, ResultEntry, ResultValue, FORMAT_VERSION};
