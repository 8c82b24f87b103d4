//! Formulae, shapes and arrow terms, with the text syntax for them.

mod arrow;
mod formula;
mod parser;

pub use arrow::{ArrowTerm, Dialect};
pub use formula::{Formula, Shape};
pub use parser::{parse_arrow, parse_formula};
