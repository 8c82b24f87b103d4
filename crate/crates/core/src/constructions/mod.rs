//! Derived arrows and the inductive arrow families built from medial
//! commutativity: associators, the symmetry, distribution over shapes and
//! its positional lifting. The named-equation catalog lives in [`catalog`].

mod catalog;

pub use catalog::{
    catalog, cm_naturality, fresh_bindings, instantiate, labels, CatalogEntry, EquationCheck,
    EquationInstance,
};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::syntax::{ArrowTerm, Formula, Shape};

fn conj(a: &Formula, b: &Formula) -> Formula {
    Formula::conj(a.clone(), b.clone())
}

fn unit() -> Formula {
    Formula::Unit
}

/// `b>_{A,B,C}: A ^ (B ^ C) -> (A ^ B) ^ C`, defined as
/// `(1_{A^B} /\ sg>_C) . cm_{A,T,B,C} . (dl<_A /\ 1_{B^C})`.
pub fn b_fw(a: &Formula, b: &Formula, c: &Formula) -> ArrowTerm {
    ArrowTerm::chain([
        ArrowTerm::tensor(ArrowTerm::Id(conj(a, b)), ArrowTerm::SigmaFw(c.clone())),
        ArrowTerm::Cm(a.clone(), unit(), b.clone(), c.clone()),
        ArrowTerm::tensor(ArrowTerm::DeltaBw(a.clone()), ArrowTerm::Id(conj(b, c))),
    ])
}

/// `b<_{A,B,C}: (A ^ B) ^ C -> A ^ (B ^ C)`, defined as
/// `(dl>_A /\ 1_{B^C}) . cm_{A,B,T,C} . (1_{A^B} /\ sg<_C)`.
pub fn b_bw(a: &Formula, b: &Formula, c: &Formula) -> ArrowTerm {
    ArrowTerm::chain([
        ArrowTerm::tensor(ArrowTerm::DeltaFw(a.clone()), ArrowTerm::Id(conj(b, c))),
        ArrowTerm::Cm(a.clone(), b.clone(), unit(), c.clone()),
        ArrowTerm::tensor(ArrowTerm::Id(conj(a, b)), ArrowTerm::SigmaBw(c.clone())),
    ])
}

/// `c_{A,B}: A ^ B -> B ^ A`, defined as
/// `(sg>_B /\ dl>_A) . cm_{T,A,B,T} . (sg<_A /\ dl<_B)`.
pub fn c_comm(a: &Formula, b: &Formula) -> ArrowTerm {
    ArrowTerm::chain([
        ArrowTerm::tensor(ArrowTerm::SigmaFw(b.clone()), ArrowTerm::DeltaFw(a.clone())),
        ArrowTerm::Cm(unit(), a.clone(), b.clone(), unit()),
        ArrowTerm::tensor(ArrowTerm::SigmaBw(a.clone()), ArrowTerm::DeltaBw(b.clone())),
    ])
}

/// `psi^M: M(A1 ^ A1', ..., Am ^ Am') -> M(A1..Am) ^ M(A1'..Am')`.
///
/// Identity factors are elided, so `psi^{_ ^ _}` is literally `cm`.
pub fn psi_shape(shape: &Shape, left: &[Formula], right: &[Formula]) -> Result<ArrowTerm> {
    for args in [left, right] {
        if args.len() != shape.arity() {
            return Err(Error::ArityMismatch {
                expected: shape.arity(),
                found: args.len(),
            });
        }
    }
    Ok(psi_shape_unchecked(shape, left, right))
}

fn psi_shape_unchecked(shape: &Shape, left: &[Formula], right: &[Formula]) -> ArrowTerm {
    match shape {
        Shape::Unit => ArrowTerm::DeltaBw(Formula::Unit),
        Shape::Hole => ArrowTerm::Id(conj(&left[0], &right[0])),
        Shape::Conj(m, n) => {
            let k = m.arity();
            let (l1, l2) = left.split_at(k);
            let (r1, r2) = right.split_at(k);
            let inner = ArrowTerm::tensor_reduced(
                psi_shape_unchecked(m, l1, r1),
                psi_shape_unchecked(n, l2, r2),
            );
            let apply = |s: &Shape, args: &[Formula]| s.apply(args).expect("arity split");
            let cm = ArrowTerm::Cm(apply(m, l1), apply(m, r1), apply(n, l2), apply(n, r2));
            ArrowTerm::comp_reduced(cm, inner)
        }
    }
}

fn check_position(outer: &Shape, i: usize, inner: &Shape) -> Result<()> {
    outer.require_unit_free()?;
    inner.require_unit_free()?;
    let n = outer.arity();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange {
            index: i,
            detail: format!("shape has {n} holes"),
        });
    }
    Ok(())
}

/// Replaces the `i`-th hole (1-based, from the left) of `outer` by `inner`.
pub fn subst_shape(outer: &Shape, i: usize, inner: &Shape) -> Result<Shape> {
    check_position(outer, i, inner)?;
    Ok(subst_unchecked(outer, i, inner))
}

fn subst_unchecked(outer: &Shape, i: usize, inner: &Shape) -> Shape {
    match outer {
        Shape::Hole => inner.clone(),
        Shape::Conj(n1, n2) => {
            let k = n1.arity();
            if i <= k {
                Shape::conj(subst_unchecked(n1, i, inner), (**n2).clone())
            } else {
                Shape::conj((**n1).clone(), subst_unchecked(n2, i - k, inner))
            }
        }
        Shape::Unit => unreachable!("unit-free checked"),
    }
}

/// The split of `outer` with `inner` substituted at hole `i`: a pair whose
/// first component ends in `inner` on the right and whose second starts
/// with `inner` on the left.
pub fn split(outer: &Shape, i: usize, inner: &Shape) -> Result<(Shape, Shape)> {
    check_position(outer, i, inner)?;
    Ok(split_unchecked(outer, i, inner))
}

fn split_unchecked(outer: &Shape, i: usize, inner: &Shape) -> (Shape, Shape) {
    match outer {
        Shape::Hole => (inner.clone(), inner.clone()),
        Shape::Conj(n1, n2) => {
            let k = n1.arity();
            if i <= k {
                let (l, r) = split_unchecked(n1, i, inner);
                (l, Shape::conj(r, (**n2).clone()))
            } else {
                let (l, r) = split_unchecked(n2, i - k, inner);
                (Shape::conj((**n1).clone(), l), r)
            }
        }
        Shape::Unit => unreachable!("unit-free checked"),
    }
}

/// Arguments for [`psi_lift`]: the `before` formulas fill holes left of
/// position `i`, `after` those right of it, and `left`/`right` are the two
/// halves distributed through the inner shape.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LiftArgs {
    pub before: Vec<Formula>,
    pub left: Vec<Formula>,
    pub right: Vec<Formula>,
    pub after: Vec<Formula>,
}

impl LiftArgs {
    pub fn new(
        before: Vec<Formula>,
        left: Vec<Formula>,
        right: Vec<Formula>,
        after: Vec<Formula>,
    ) -> Self {
        LiftArgs {
            before,
            left,
            right,
            after,
        }
    }
}

/// `psi^{N,i,M}: N(B.., M(A1 ^ A1', ..), C..) -> L(B.., A..) ^ R(A'.., C..)`
/// where `(L, R)` is [`split`]`(N, i, M)`. Built from associators and
/// [`psi_shape`], identity factors elided.
pub fn psi_lift(outer: &Shape, i: usize, inner: &Shape, args: &LiftArgs) -> Result<ArrowTerm> {
    check_position(outer, i, inner)?;
    let n = outer.arity();
    let m = inner.arity();
    let expect = |expected: usize, found: usize| {
        if expected == found {
            Ok(())
        } else {
            Err(Error::ArityMismatch { expected, found })
        }
    };
    expect(i - 1, args.before.len())?;
    expect(n - i, args.after.len())?;
    expect(m, args.left.len())?;
    expect(m, args.right.len())?;
    Ok(psi_lift_unchecked(
        outer,
        i,
        inner,
        &args.before,
        &args.left,
        &args.right,
        &args.after,
    ))
}

fn psi_lift_unchecked(
    outer: &Shape,
    i: usize,
    inner: &Shape,
    before: &[Formula],
    left: &[Formula],
    right: &[Formula],
    after: &[Formula],
) -> ArrowTerm {
    let apply = |s: &Shape, parts: &[&[Formula]]| {
        let args: Vec<Formula> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
        s.apply(&args).expect("arity checked")
    };
    match outer {
        Shape::Hole => psi_shape_unchecked(inner, left, right),
        Shape::Conj(n1, n2) => {
            let k = n1.arity();
            if i <= k {
                let (own_after, rest) = after.split_at(k - i);
                let (l, r) = split_unchecked(n1, i, inner);
                let lifted = psi_lift_unchecked(n1, i, inner, before, left, right, own_after);
                let tail = apply(n2, &[rest]);
                let assoc = b_bw(
                    &apply(&l, &[before, left]),
                    &apply(&r, &[right, own_after]),
                    &tail,
                );
                ArrowTerm::comp_reduced(
                    assoc,
                    ArrowTerm::tensor_reduced(lifted, ArrowTerm::Id(tail)),
                )
            } else {
                let (head_args, own_before) = before.split_at(k);
                let (l, r) = split_unchecked(n2, i - k, inner);
                let lifted = psi_lift_unchecked(n2, i - k, inner, own_before, left, right, after);
                let head = apply(n1, &[head_args]);
                let assoc = b_fw(
                    &head,
                    &apply(&l, &[own_before, left]),
                    &apply(&r, &[right, after]),
                );
                ArrowTerm::comp_reduced(
                    assoc,
                    ArrowTerm::tensor_reduced(ArrowTerm::Id(head), lifted),
                )
            }
        }
        Shape::Unit => unreachable!("unit-free checked"),
    }
}

/// The `i`-lifting square for a natural transformation `alpha` from
/// `N1[M1 at i]` to `N2[M2 at i]`, lifted to `alpha_l /\ alpha_r`:
///
/// `psi^{N2,i,M2} . alpha = (alpha_l /\ alpha_r) . psi^{N1,i,M1}`.
///
/// `alpha`, `alpha_l` and `alpha_r` are the components at the matching
/// indices. `target_args` feeds the target-side `psi`, which differs from
/// `source_args` only when `alpha` permutes its arguments.
#[allow(clippy::too_many_arguments)]
pub fn lifting_equation(
    name: &str,
    source: (&Shape, &Shape),
    target: (&Shape, &Shape),
    i: usize,
    alpha: ArrowTerm,
    alpha_l: ArrowTerm,
    alpha_r: ArrowTerm,
    source_args: &LiftArgs,
    target_args: &LiftArgs,
    bindings: BTreeMap<String, Formula>,
) -> Result<EquationInstance> {
    let psi_source = psi_lift(source.0, i, source.1, source_args)?;
    let psi_target = psi_lift(target.0, i, target.1, target_args)?;
    let lhs = ArrowTerm::comp(psi_target, alpha);
    let rhs = ArrowTerm::comp(ArrowTerm::tensor(alpha_l, alpha_r), psi_source);
    EquationInstance::new(name, lhs, rhs, bindings)
}

/// The 3-lifting of `b>` to `b> /\ 1` in the two three-hole shapes, at
/// `B1 = a, B2 = b, A = c, A' = d`. It comes out as the pentagon.
pub fn pentagon_from_lifting(
    a: &Formula,
    b: &Formula,
    c: &Formula,
    d: &Formula,
) -> Result<EquationInstance> {
    let hole = || Shape::Hole;
    let right_nested = Shape::conj(hole(), Shape::conj(hole(), hole()));
    let left_nested = Shape::conj(Shape::conj(hole(), hole()), hole());
    let args = LiftArgs::new(
        vec![a.clone(), b.clone()],
        vec![c.clone()],
        vec![d.clone()],
        vec![],
    );
    let bindings = [("A", a), ("B", b), ("C", c), ("D", d)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    lifting_equation(
        "b5",
        (&right_nested, &hole()),
        (&left_nested, &hole()),
        3,
        b_fw(a, b, &conj(c, d)),
        b_fw(a, b, c),
        ArrowTerm::Id(d.clone()),
        &args,
        &args,
        bindings,
    )
}

/// Upward preservation square for `alpha` from `M1` to `M2` with argument
/// permutation `perm` (0-based: the `k`-th argument of `M2` is argument
/// `perm[k]` of `M1`):
///
/// `psi^{M2}_{A_perm, A'_perm} . alpha_{A ^ A'} = (alpha_A /\ alpha_A') . psi^{M1}_{A, A'}`.
pub fn upward_square(
    name: &str,
    m1: &Shape,
    m2: &Shape,
    perm: &[usize],
    alpha: impl Fn(&[Formula]) -> ArrowTerm,
    left: &[Formula],
    right: &[Formula],
) -> Result<EquationInstance> {
    let pick = |args: &[Formula]| perm.iter().map(|&k| args[k].clone()).collect::<Vec<_>>();
    let paired: Vec<Formula> = left.iter().zip(right).map(|(a, b)| conj(a, b)).collect();
    let lhs = ArrowTerm::comp(psi_shape(m2, &pick(left), &pick(right))?, alpha(&paired));
    let rhs = ArrowTerm::comp(
        ArrowTerm::tensor(alpha(left), alpha(right)),
        psi_shape(m1, left, right)?,
    );
    EquationInstance::new(name, lhs, rhs, BTreeMap::new())
}
