use std::fmt;

use crate::error::{Error, Result};

/// A binary `^`-tree over letters and the unit `T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Letter(String),
    Unit,
    Conj(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn letter(name: impl Into<String>) -> Formula {
        Formula::Letter(name.into())
    }

    pub fn unit() -> Formula {
        Formula::Unit
    }

    pub fn conj(left: Formula, right: Formula) -> Formula {
        Formula::Conj(Box::new(left), Box::new(right))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Formula::Unit)
    }

    pub fn as_conj(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Conj(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Number of letter occurrences; the unit contributes nothing.
    pub fn letter_count(&self) -> usize {
        match self {
            Formula::Letter(_) => 1,
            Formula::Unit => 0,
            Formula::Conj(l, r) => l.letter_count() + r.letter_count(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Formula::Letter(_) | Formula::Unit => 0,
            Formula::Conj(l, r) => 1 + l.height().max(r.height()),
        }
    }

    pub fn contains_unit(&self) -> bool {
        match self {
            Formula::Letter(_) => false,
            Formula::Unit => true,
            Formula::Conj(l, r) => l.contains_unit() || r.contains_unit(),
        }
    }

    /// Letter occurrences in left-to-right order, each with its depth in the tree.
    pub fn letter_positions(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        self.collect_positions(0, &mut out);
        out
    }

    fn collect_positions(&self, depth: usize, out: &mut Vec<(String, usize)>) {
        match self {
            Formula::Letter(name) => out.push((name.clone(), depth)),
            Formula::Unit => {}
            Formula::Conj(l, r) => {
                l.collect_positions(depth + 1, out);
                r.collect_positions(depth + 1, out);
            }
        }
    }

    /// Left-right mirror image of the tree.
    pub fn mirror(&self) -> Formula {
        match self {
            Formula::Conj(l, r) => Formula::conj(r.mirror(), l.mirror()),
            other => other.clone(),
        }
    }

    /// Replaces every letter occurrence by `f(name, depth)`.
    pub fn map_letters(&self, f: &mut impl FnMut(&str, usize) -> Formula) -> Formula {
        self.map_letters_at(0, f)
    }

    pub(crate) fn map_letters_at(
        &self,
        depth: usize,
        f: &mut impl FnMut(&str, usize) -> Formula,
    ) -> Formula {
        match self {
            Formula::Letter(name) => f(name, depth),
            Formula::Unit => Formula::Unit,
            Formula::Conj(l, r) => {
                let l = l.map_letters_at(depth + 1, f);
                let r = r.map_letters_at(depth + 1, f);
                Formula::conj(l, r)
            }
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Conj(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

/// Prints with the outermost parentheses omitted: `(a ^ b) ^ c`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Letter(name) => f.write_str(name),
            Formula::Unit => f.write_str("T"),
            Formula::Conj(l, r) => {
                l.fmt_operand(f)?;
                f.write_str(" ^ ")?;
                r.fmt_operand(f)
            }
        }
    }
}

/// A `^`-tree over holes and the unit. Its arity is the number of holes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    Hole,
    Unit,
    Conj(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn conj(left: Shape, right: Shape) -> Shape {
        Shape::Conj(Box::new(left), Box::new(right))
    }

    pub fn arity(&self) -> usize {
        match self {
            Shape::Hole => 1,
            Shape::Unit => 0,
            Shape::Conj(l, r) => l.arity() + r.arity(),
        }
    }

    pub fn unit_free(&self) -> bool {
        match self {
            Shape::Hole => true,
            Shape::Unit => false,
            Shape::Conj(l, r) => l.unit_free() && r.unit_free(),
        }
    }

    pub(crate) fn require_unit_free(&self) -> Result<()> {
        if self.unit_free() {
            Ok(())
        } else {
            Err(Error::UnitNotAllowed)
        }
    }

    /// Fills the holes left to right with `args`.
    pub fn apply(&self, args: &[Formula]) -> Result<Formula> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: args.len(),
            });
        }
        let mut iter = args.iter();
        Ok(self.fill(&mut iter))
    }

    fn fill<'a>(&self, args: &mut impl Iterator<Item = &'a Formula>) -> Formula {
        match self {
            Shape::Hole => args.next().cloned().expect("arity checked"),
            Shape::Unit => Formula::Unit,
            Shape::Conj(l, r) => {
                let l = l.fill(args);
                let r = r.fill(args);
                Formula::conj(l, r)
            }
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Conj(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Hole => f.write_str("_"),
            Shape::Unit => f.write_str("T"),
            Shape::Conj(l, r) => {
                l.fmt_operand(f)?;
                f.write_str(" ^ ")?;
                r.fmt_operand(f)
            }
        }
    }
}
