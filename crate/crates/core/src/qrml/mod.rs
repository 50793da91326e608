//! QRML: a small language for declaring QRM types and components.
//!
//! Types are posets; components declare ports per QRM part and are either
//! atomic, an aggregation of subcomponents (`contains a: A` … with `from`
//! and `constraint` clauses) or a choice (`contains a: A or b: B`).
//!
//! ```
//! use qrm_core::qrml;
//!
//! let src = "budget Bw : int
//!            component Fiber { provides bw: Bw { bw = 10000 } }";
//! let model = qrml::elaborate(&qrml::parse(src).unwrap()).unwrap();
//! let fiber = model.evaluate("Fiber").unwrap();
//! assert_eq!(fiber.len(), 1);
//! ```

mod ast;
mod eval;
mod expr;
mod lexer;
mod parser;
mod types;

#[cfg(test)]
mod tests;

use thiserror::Error;

pub use ast::*;
pub use eval::ElaboratedModel;
pub use expr::{eval_bool, eval_value, Scope, Typed};
pub use parser::{is_keyword, parse, parse_expr};
pub use types::TypeInfo;

use crate::pareto::ParetoError;
use crate::poset::PosetError;
use crate::qrm::QrmError;

#[derive(Debug, Error)]
pub enum QrmlError {
    #[error("{pos}: syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        pos: Pos,
        expected: Vec<String>,
        found: String,
    },
    #[error("{pos}: unresolved type `{name}`")]
    UnresolvedType { name: String, pos: Pos },
    #[error("duplicate {kind} `{name}`")]
    DuplicateName { kind: &'static str, name: String },
    #[error("{pos}: ill-formed order for `{name}`: {msg}")]
    IllFormedOrder { name: String, msg: String, pos: Pos },
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("containment cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("port `{port}` of component `{component}` is not pinned to finitely many values")]
    UnboundedDomain { component: String, port: String },
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error("type error: {0}")]
    Type(String),
    #[error(transparent)]
    Qrm(#[from] QrmError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Pareto(#[from] ParetoError),
}

/// Parses and elaborates `src` in one step.
pub fn load(src: &str) -> Result<ElaboratedModel, QrmlError> {
    elaborate(&parse(src)?)
}

pub fn elaborate(model: &Model) -> Result<ElaboratedModel, QrmlError> {
    ElaboratedModel::new(model)
}
