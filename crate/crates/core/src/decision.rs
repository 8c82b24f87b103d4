//! Equality of arrow terms, decided by comparing types and permutations,
//! and the substitution functor onto balanced formulas.

use crate::error::{Error, Result};
use crate::groups::balanced;
use crate::semantics::eval_typed;
use crate::syntax::{ArrowTerm, Dialect, Formula};

/// Whether `f` and `g` are equal arrows: same source, same target and the
/// same permutation of letter occurrences. Both must be in one dialect.
pub fn arrows_equal(f: &ArrowTerm, g: &ArrowTerm) -> Result<bool> {
    if f.dialect() != g.dialect() {
        return Err(Error::DialectMismatch);
    }
    let (fs, ft, fp) = eval_typed(f)?;
    let (gs, gt, gp) = eval_typed(g)?;
    Ok(fs == gs && ft == gt && fp == gp)
}

/// Sends a unit-free arrow on `A` to an arrow on `p^h`, `h` the height of
/// `A`, by replacing each letter at depth `d` with `p^{h-d}`.
pub fn functor_f(f: &ArrowTerm) -> Result<ArrowTerm> {
    if f.dialect() != Dialect::CmOnly {
        return Err(Error::DialectMismatch);
    }
    let (source, target) = f.infer_type()?;
    if source.height() != target.height() {
        return Err(Error::TypeMismatch {
            expected: source,
            found: target,
            position: None,
        });
    }
    Ok(substitute(f, source.height(), 0))
}

fn substitute(f: &ArrowTerm, h: usize, depth: usize) -> ArrowTerm {
    let index = |x: &Formula, at: usize| x.map_letters_at(at, &mut |_, d| balanced(h - d));
    match f {
        ArrowTerm::Id(a) => ArrowTerm::Id(index(a, depth)),
        ArrowTerm::Cm(a, b, c, d) => {
            let at = depth + 2;
            ArrowTerm::Cm(index(a, at), index(b, at), index(c, at), index(d, at))
        }
        ArrowTerm::Tensor(g, k) => ArrowTerm::tensor(
            substitute(g, h, depth + 1),
            substitute(k, h, depth + 1),
        ),
        ArrowTerm::Comp(g, k) => ArrowTerm::comp(substitute(g, h, depth), substitute(k, h, depth)),
        _ => unreachable!("cm-only checked"),
    }
}
