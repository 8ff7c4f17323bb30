//! Expression syntax, file formats and the scenario runner behind the
//! `ores` command-line tool.

pub mod app;
pub mod ast;
pub mod config;
pub mod eval;
mod lexer;
pub mod parser;
pub mod report;
pub mod scenario;

pub use ast::{Expr, Literal};
pub use eval::{Evaluator, Value};
pub use parser::{parse, SyntaxError};
