use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::Formula;

/// Arrow terms over the eight primitive constructors.
///
/// `Comp(g, f)` is `g` after `f`. Nothing here enforces typing; use
/// [`ArrowTerm::infer_type`] (the parser always does).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArrowTerm {
    Id(Formula),
    Cm(Formula, Formula, Formula, Formula),
    DeltaFw(Formula),
    DeltaBw(Formula),
    SigmaFw(Formula),
    SigmaBw(Formula),
    Comp(Box<ArrowTerm>, Box<ArrowTerm>),
    Tensor(Box<ArrowTerm>, Box<ArrowTerm>),
}

/// Which term language an arrow belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    /// Only identities and medial commutativity, no unit anywhere.
    CmOnly,
    /// With the unit and the `dl`/`sg` arrows.
    Full,
}

impl ArrowTerm {
    pub fn id(a: Formula) -> ArrowTerm {
        ArrowTerm::Id(a)
    }

    pub fn cm(a: Formula, b: Formula, c: Formula, d: Formula) -> ArrowTerm {
        ArrowTerm::Cm(a, b, c, d)
    }

    pub fn comp(g: ArrowTerm, f: ArrowTerm) -> ArrowTerm {
        ArrowTerm::Comp(Box::new(g), Box::new(f))
    }

    pub fn tensor(f: ArrowTerm, g: ArrowTerm) -> ArrowTerm {
        ArrowTerm::Tensor(Box::new(f), Box::new(g))
    }

    /// Right-nested composite of `arrows`, written in the usual order: the
    /// last element is applied first. Panics on an empty list.
    pub fn chain(arrows: impl IntoIterator<Item = ArrowTerm>) -> ArrowTerm {
        let mut arrows: Vec<_> = arrows.into_iter().collect();
        let mut acc = arrows.pop().expect("chain of no arrows");
        while let Some(g) = arrows.pop() {
            acc = ArrowTerm::comp(g, acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, ArrowTerm::Id(_))
    }

    /// Composition that drops identity factors.
    pub fn comp_reduced(g: ArrowTerm, f: ArrowTerm) -> ArrowTerm {
        match (g, f) {
            (ArrowTerm::Id(_), f) => f,
            (g, ArrowTerm::Id(_)) => g,
            (g, f) => ArrowTerm::comp(g, f),
        }
    }

    /// Tensor that merges `1_A /\ 1_B` into `1_{A ^ B}`.
    pub fn tensor_reduced(f: ArrowTerm, g: ArrowTerm) -> ArrowTerm {
        match (f, g) {
            (ArrowTerm::Id(a), ArrowTerm::Id(b)) => ArrowTerm::Id(Formula::conj(a, b)),
            (f, g) => ArrowTerm::tensor(f, g),
        }
    }

    /// The inverse arrow. Every primitive is invertible, `cm` being its own
    /// inverse up to the order of its middle indices.
    pub fn inverse(&self) -> ArrowTerm {
        match self {
            ArrowTerm::Id(a) => ArrowTerm::Id(a.clone()),
            ArrowTerm::Cm(a, b, c, d) => ArrowTerm::Cm(a.clone(), c.clone(), b.clone(), d.clone()),
            ArrowTerm::DeltaFw(a) => ArrowTerm::DeltaBw(a.clone()),
            ArrowTerm::DeltaBw(a) => ArrowTerm::DeltaFw(a.clone()),
            ArrowTerm::SigmaFw(a) => ArrowTerm::SigmaBw(a.clone()),
            ArrowTerm::SigmaBw(a) => ArrowTerm::SigmaFw(a.clone()),
            ArrowTerm::Comp(g, f) => ArrowTerm::comp(f.inverse(), g.inverse()),
            ArrowTerm::Tensor(f, g) => ArrowTerm::tensor(f.inverse(), g.inverse()),
        }
    }

    pub fn infer_type(&self) -> Result<(Formula, Formula)> {
        match self {
            ArrowTerm::Id(a) => Ok((a.clone(), a.clone())),
            ArrowTerm::Cm(a, b, c, d) => Ok((
                Formula::conj(
                    Formula::conj(a.clone(), b.clone()),
                    Formula::conj(c.clone(), d.clone()),
                ),
                Formula::conj(
                    Formula::conj(a.clone(), c.clone()),
                    Formula::conj(b.clone(), d.clone()),
                ),
            )),
            ArrowTerm::DeltaFw(a) => Ok((Formula::conj(a.clone(), Formula::Unit), a.clone())),
            ArrowTerm::DeltaBw(a) => Ok((a.clone(), Formula::conj(a.clone(), Formula::Unit))),
            ArrowTerm::SigmaFw(a) => Ok((Formula::conj(Formula::Unit, a.clone()), a.clone())),
            ArrowTerm::SigmaBw(a) => Ok((a.clone(), Formula::conj(Formula::Unit, a.clone()))),
            ArrowTerm::Tensor(f, g) => {
                let (fs, ft) = f.infer_type()?;
                let (gs, gt) = g.infer_type()?;
                Ok((Formula::conj(fs, gs), Formula::conj(ft, gt)))
            }
            ArrowTerm::Comp(g, f) => {
                let (fs, ft) = f.infer_type()?;
                let (gs, gt) = g.infer_type()?;
                if ft != gs {
                    return Err(Error::TypeMismatch {
                        expected: gs,
                        found: ft,
                        position: None,
                    });
                }
                Ok((fs, gt))
            }
        }
    }

    pub fn source(&self) -> Result<Formula> {
        self.infer_type().map(|(s, _)| s)
    }

    pub fn target(&self) -> Result<Formula> {
        self.infer_type().map(|(_, t)| t)
    }

    pub fn dialect(&self) -> Dialect {
        if self.uses_unit() {
            Dialect::Full
        } else {
            Dialect::CmOnly
        }
    }

    fn uses_unit(&self) -> bool {
        match self {
            ArrowTerm::Id(a) => a.contains_unit(),
            ArrowTerm::Cm(a, b, c, d) => [a, b, c, d].iter().any(|x| x.contains_unit()),
            ArrowTerm::DeltaFw(_)
            | ArrowTerm::DeltaBw(_)
            | ArrowTerm::SigmaFw(_)
            | ArrowTerm::SigmaBw(_) => true,
            ArrowTerm::Comp(g, f) => g.uses_unit() || f.uses_unit(),
            ArrowTerm::Tensor(f, g) => f.uses_unit() || g.uses_unit(),
        }
    }

    /// Visits every subterm, outermost first.
    pub fn walk(&self, visit: &mut impl FnMut(&ArrowTerm)) {
        visit(self);
        match self {
            ArrowTerm::Comp(a, b) | ArrowTerm::Tensor(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            _ => {}
        }
    }

    pub fn count(&self, pred: impl Fn(&ArrowTerm) -> bool) -> usize {
        let mut n = 0;
        self.walk(&mut |t| {
            if pred(t) {
                n += 1
            }
        });
        n
    }

    /// Rebuilds the term with every index formula passed through `f`.
    pub fn map_indices(&self, f: &mut impl FnMut(&Formula) -> Formula) -> ArrowTerm {
        match self {
            ArrowTerm::Id(a) => ArrowTerm::Id(f(a)),
            ArrowTerm::Cm(a, b, c, d) => ArrowTerm::Cm(f(a), f(b), f(c), f(d)),
            ArrowTerm::DeltaFw(a) => ArrowTerm::DeltaFw(f(a)),
            ArrowTerm::DeltaBw(a) => ArrowTerm::DeltaBw(f(a)),
            ArrowTerm::SigmaFw(a) => ArrowTerm::SigmaFw(f(a)),
            ArrowTerm::SigmaBw(a) => ArrowTerm::SigmaBw(f(a)),
            ArrowTerm::Comp(g, h) => ArrowTerm::comp(g.map_indices(f), h.map_indices(f)),
            ArrowTerm::Tensor(g, h) => ArrowTerm::tensor(g.map_indices(f), h.map_indices(f)),
        }
    }

    fn fmt_tensor_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowTerm::Comp(..) | ArrowTerm::Tensor(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for ArrowTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowTerm::Id(a) => write!(f, "1[{a}]"),
            ArrowTerm::Cm(a, b, c, d) => write!(f, "cm[{a},{b},{c},{d}]"),
            ArrowTerm::DeltaFw(a) => write!(f, "dl>[{a}]"),
            ArrowTerm::DeltaBw(a) => write!(f, "dl<[{a}]"),
            ArrowTerm::SigmaFw(a) => write!(f, "sg>[{a}]"),
            ArrowTerm::SigmaBw(a) => write!(f, "sg<[{a}]"),
            ArrowTerm::Comp(g, h) => {
                // "." is right-associative, so only a composite on the left needs parentheses.
                if matches!(**g, ArrowTerm::Comp(..)) {
                    write!(f, "({g})")?;
                } else {
                    write!(f, "{g}")?;
                }
                write!(f, " . {h}")
            }
            ArrowTerm::Tensor(g, h) => {
                g.fmt_tensor_operand(f)?;
                f.write_str(" /\\ ")?;
                h.fmt_tensor_operand(f)
            }
        }
    }
}
