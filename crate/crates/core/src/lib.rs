//! Decision procedures for weak way-below, quasiexactness and related
//! properties of countable dcpos given by finite symbolic presentations.

pub mod checkers;
pub mod dsl;
pub mod error;
pub mod finite;
pub mod gallery;
pub mod ladder;
pub mod relations;
pub mod search;
pub mod topology;

pub use error::{Error, ParseError, Result};
pub use finite::{FinPoset, FiniteFamily};
pub use ladder::{DirectedShape, Elem, LadderPoset, LadderPresentation, RelKind, RelStmt, SymSet};
