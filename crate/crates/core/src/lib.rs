//! Arrow terms for medial commutativity `cm: (A ^ B) ^ (C ^ D) -> (A ^ C) ^ (B ^ D)`,
//! with a unit `T` and its structural arrows, their permutation semantics,
//! and coherence checking by comparing permutations.
//!
//! ```
//! use medial::{arrows_equal, parse_arrow};
//!
//! let twice = parse_arrow("cm[a,c,b,d] . cm[a,b,c,d]").unwrap();
//! let id = parse_arrow("1[(a ^ b) ^ (c ^ d)]").unwrap();
//! assert!(arrows_equal(&twice, &id).unwrap());
//! ```

pub mod brauer;
pub mod constructions;
pub mod decision;
pub mod error;
pub mod groups;
pub mod sample;
pub mod semantics;
pub mod syntax;

pub use decision::{arrows_equal, functor_f};
pub use error::{Error, Result};
pub use semantics::{eval_perm, Permutation};
pub use syntax::{parse_arrow, parse_formula, ArrowTerm, Dialect, Formula, Shape};
