//! Named equations between arrow terms, kept as a table of builders.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{b_bw, b_fw, c_comm};
use crate::error::{Error, Result};
use crate::semantics::{eval_typed, Permutation};
use crate::syntax::{ArrowTerm, Formula};

/// Both sides of a named equation at concrete formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationInstance {
    pub name: String,
    pub lhs: ArrowTerm,
    pub rhs: ArrowTerm,
    pub bindings: BTreeMap<String, Formula>,
}

/// Outcome of evaluating both sides of an [`EquationInstance`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationCheck {
    pub name: String,
    pub source: String,
    pub target: String,
    pub types_equal: bool,
    pub perms_equal: bool,
    pub lhs_perm: Permutation,
    pub rhs_perm: Permutation,
}

impl EquationCheck {
    pub fn holds(&self) -> bool {
        self.types_equal && self.perms_equal
    }
}

impl EquationInstance {
    /// Fails if either side is ill-typed on its own.
    pub fn new(
        name: &str,
        lhs: ArrowTerm,
        rhs: ArrowTerm,
        bindings: BTreeMap<String, Formula>,
    ) -> Result<EquationInstance> {
        lhs.infer_type()?;
        rhs.infer_type()?;
        Ok(EquationInstance {
            name: name.to_string(),
            lhs,
            rhs,
            bindings,
        })
    }

    pub fn check(&self) -> Result<EquationCheck> {
        let (ls, lt, lp) = eval_typed(&self.lhs)?;
        let (rs, rt, rp) = eval_typed(&self.rhs)?;
        let types_equal = ls == rs && lt == rt;
        Ok(EquationCheck {
            name: self.name.clone(),
            source: ls.to_string(),
            target: lt.to_string(),
            types_equal,
            perms_equal: types_equal && lp == rp,
            lhs_perm: lp,
            rhs_perm: rp,
        })
    }
}

type Builder = fn(&Env) -> Result<(ArrowTerm, ArrowTerm)>;

/// One row of the catalog.
pub struct CatalogEntry {
    pub label: &'static str,
    pub metavariables: &'static [&'static str],
    build: Builder,
}

impl CatalogEntry {
    pub fn instantiate(&self, bindings: &BTreeMap<String, Formula>) -> Result<EquationInstance> {
        let env = Env { bindings };
        let used = self
            .metavariables
            .iter()
            .map(|&v| env.get(v).map(|f| (v.to_string(), f)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let (lhs, rhs) = (self.build)(&env)?;
        EquationInstance::new(self.label, lhs, rhs, used)
    }
}

const A1_TO_A4: &[&str] = &["A1", "A2", "A3", "A4"];
const CM_II: &[&str] = &["A1", "A1'", "A2", "A2'", "A3", "A3'", "A4"];

static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        label: "psi-cm",
        metavariables: &["A1", "A1'", "A2", "A2'", "A3", "A3'", "A4", "A4'"],
        build: psi_cm,
    },
    CatalogEntry {
        label: "psi-delta",
        metavariables: &["A", "A'"],
        build: psi_delta,
    },
    CatalogEntry {
        label: "psi-sigma",
        metavariables: &["A", "A'"],
        build: psi_sigma,
    },
    CatalogEntry {
        label: "VII",
        metavariables: &[],
        build: vii,
    },
    CatalogEntry {
        label: "cm34",
        metavariables: &["A1", "A2"],
        build: cm34,
    },
    CatalogEntry {
        label: "cm234",
        metavariables: &["A"],
        build: cm234,
    },
    CatalogEntry {
        label: "cm24",
        metavariables: &["A1", "A3"],
        build: cm24,
    },
    CatalogEntry {
        label: "cm12",
        metavariables: &["A3", "A4"],
        build: cm12,
    },
    CatalogEntry {
        label: "cm123",
        metavariables: &["A"],
        build: cm123,
    },
    CatalogEntry {
        label: "cm13",
        metavariables: &["A2", "A4"],
        build: cm13,
    },
    CatalogEntry {
        label: "cm23",
        metavariables: &["A1", "A4"],
        build: cm23,
    },
    CatalogEntry {
        label: "b5",
        metavariables: &["A", "B", "C", "D"],
        build: b5,
    },
    CatalogEntry {
        label: "bc",
        metavariables: &["A", "B", "C"],
        build: bc,
    },
    CatalogEntry {
        label: "cmbc",
        metavariables: &["A", "B", "C", "D"],
        build: cmbc,
    },
    CatalogEntry {
        label: "b-delta-sigma",
        metavariables: &["A", "C"],
        build: b_delta_sigma,
    },
    CatalogEntry {
        label: "cmI",
        metavariables: &["A1", "A1'", "A2", "A3", "A3'", "A4", "A4'"],
        build: cm_i,
    },
    CatalogEntry {
        label: "cmII",
        metavariables: CM_II,
        build: cm_ii,
    },
    CatalogEntry {
        label: "cmII-mirror",
        metavariables: CM_II,
        build: cm_ii_mirror,
    },
    CatalogEntry {
        label: "cmcm",
        metavariables: A1_TO_A4,
        build: cmcm,
    },
    CatalogEntry {
        label: "cm-nat",
        metavariables: &["A1", "A2", "B1", "B2", "C1", "C2", "D1", "D2"],
        build: cm_nat,
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn labels() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|e| e.label)
}

fn entry(label: &str) -> Result<&'static CatalogEntry> {
    CATALOG
        .iter()
        .find(|e| e.label == label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

pub fn instantiate(label: &str, bindings: &BTreeMap<String, Formula>) -> Result<EquationInstance> {
    entry(label)?.instantiate(bindings)
}

/// Binds the label's metavariables, in their listed order, to `letters` if
/// given and to the distinct letters `a1, a2, ...` otherwise.
pub fn fresh_bindings(label: &str, letters: Option<&[String]>) -> Result<BTreeMap<String, Formula>> {
    let vars = entry(label)?.metavariables;
    match letters {
        Some(given) => {
            if given.len() < vars.len() {
                return Err(Error::MissingBinding(vars[given.len()].to_string()));
            }
            Ok(vars
                .iter()
                .zip(given)
                .map(|(v, l)| (v.to_string(), Formula::letter(l.as_str())))
                .collect())
        }
        None => Ok(vars
            .iter()
            .enumerate()
            .map(|(k, v)| (v.to_string(), Formula::letter(format!("a{}", k + 1))))
            .collect()),
    }
}

struct Env<'a> {
    bindings: &'a BTreeMap<String, Formula>,
}

impl Env<'_> {
    fn get(&self, name: &str) -> Result<Formula> {
        self.bindings
            .get(name)
            .cloned()
            .ok_or_else(|| Error::MissingBinding(name.to_string()))
    }

    fn many<const N: usize>(&self, names: [&str; N]) -> Result<[Formula; N]> {
        let mut out = Vec::with_capacity(N);
        for n in names {
            out.push(self.get(n)?);
        }
        Ok(out.try_into().expect("length N"))
    }
}

fn top() -> Formula {
    Formula::Unit
}

fn and(a: &Formula, b: &Formula) -> Formula {
    Formula::conj(a.clone(), b.clone())
}

fn id(a: Formula) -> ArrowTerm {
    ArrowTerm::Id(a)
}

fn cm(a: &Formula, b: &Formula, c: &Formula, d: &Formula) -> ArrowTerm {
    ArrowTerm::Cm(a.clone(), b.clone(), c.clone(), d.clone())
}

fn t(f: ArrowTerm, g: ArrowTerm) -> ArrowTerm {
    ArrowTerm::tensor(f, g)
}

fn chain<const N: usize>(arrows: [ArrowTerm; N]) -> ArrowTerm {
    ArrowTerm::chain(arrows)
}

fn psi_cm(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a1, a1p, a2, a2p, a3, a3p, a4, a4p] =
        e.many(["A1", "A1'", "A2", "A2'", "A3", "A3'", "A4", "A4'"])?;
    let lhs = chain([
        cm(&and(&a1, &a3), &and(&a1p, &a3p), &and(&a2, &a4), &and(&a2p, &a4p)),
        t(cm(&a1, &a1p, &a3, &a3p), cm(&a2, &a2p, &a4, &a4p)),
        cm(&and(&a1, &a1p), &and(&a2, &a2p), &and(&a3, &a3p), &and(&a4, &a4p)),
    ]);
    let rhs = chain([
        t(cm(&a1, &a2, &a3, &a4), cm(&a1p, &a2p, &a3p, &a4p)),
        cm(&and(&a1, &a2), &and(&a1p, &a2p), &and(&a3, &a4), &and(&a3p, &a4p)),
        t(cm(&a1, &a1p, &a2, &a2p), cm(&a3, &a3p, &a4, &a4p)),
    ]);
    Ok((lhs, rhs))
}

fn psi_delta(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a, ap] = e.many(["A", "A'"])?;
    let lhs = ArrowTerm::DeltaFw(and(&a, &ap));
    let rhs = chain([
        t(ArrowTerm::DeltaFw(a.clone()), ArrowTerm::DeltaFw(ap.clone())),
        cm(&a, &ap, &top(), &top()),
        t(id(and(&a, &ap)), ArrowTerm::DeltaBw(top())),
    ]);
    Ok((lhs, rhs))
}

fn psi_sigma(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a, ap] = e.many(["A", "A'"])?;
    let lhs = ArrowTerm::SigmaFw(and(&a, &ap));
    let rhs = chain([
        t(ArrowTerm::SigmaFw(a.clone()), ArrowTerm::SigmaFw(ap.clone())),
        cm(&top(), &top(), &a, &ap),
        t(ArrowTerm::DeltaBw(top()), id(and(&a, &ap))),
    ]);
    Ok((lhs, rhs))
}

fn vii(_: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    Ok((ArrowTerm::DeltaFw(top()), ArrowTerm::SigmaFw(top())))
}

fn cm34(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a1, a2] = e.many(["A1", "A2"])?;
    let rhs = chain([
        t(ArrowTerm::DeltaBw(a1.clone()), ArrowTerm::DeltaBw(a2.clone())),
        ArrowTerm::DeltaFw(and(&a1, &a2)),
        t(id(and(&a1, &a2)), ArrowTerm::DeltaFw(top())),
    ]);
    Ok((cm(&a1, &a2, &top(), &top()), rhs))
}

fn cm234(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let a = e.get("A")?;
    Ok((
        cm(&a, &top(), &top(), &top()),
        id(and(&and(&a, &top()), &and(&top(), &top()))),
    ))
}

fn cm24(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a1, a3] = e.many(["A1", "A3"])?;
    let rhs = chain([
        t(id(and(&a1, &a3)), ArrowTerm::DeltaBw(top())),
        ArrowTerm::DeltaBw(and(&a1, &a3)),
        t(ArrowTerm::DeltaFw(a1.clone()), ArrowTerm::DeltaFw(a3.clone())),
    ]);
    Ok((cm(&a1, &top(), &a3, &top()), rhs))
}

fn cm12(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a3, a4] = e.many(["A3", "A4"])?;
    let rhs = chain([
        t(ArrowTerm::SigmaBw(a3.clone()), ArrowTerm::SigmaBw(a4.clone())),
        ArrowTerm::SigmaFw(and(&a3, &a4)),
        t(ArrowTerm::SigmaFw(top()), id(and(&a3, &a4))),
    ]);
    Ok((cm(&top(), &top(), &a3, &a4), rhs))
}

fn cm123(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let a = e.get("A")?;
    Ok((
        cm(&top(), &top(), &top(), &a),
        id(and(&and(&top(), &top()), &and(&top(), &a))),
    ))
}

fn cm13(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a2, a4] = e.many(["A2", "A4"])?;
    let rhs = chain([
        t(ArrowTerm::SigmaBw(top()), id(and(&a2, &a4))),
        ArrowTerm::SigmaBw(and(&a2, &a4)),
        t(ArrowTerm::SigmaFw(a2.clone()), ArrowTerm::SigmaFw(a4.clone())),
    ]);
    Ok((cm(&top(), &a2, &top(), &a4), rhs))
}

fn cm23(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a1, a4] = e.many(["A1", "A4"])?;
    Ok((
        cm(&a1, &top(), &top(), &a4),
        id(and(&and(&a1, &top()), &and(&top(), &a4))),
    ))
}

fn b5(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a, b, c, d] = e.many(["A", "B", "C", "D"])?;
    let lhs = chain([b_fw(&and(&a, &b), &c, &d), b_fw(&a, &b, &and(&c, &d))]);
    let rhs = chain([
        t(b_fw(&a, &b, &c), id(d.clone())),
        b_fw(&a, &and(&b, &c), &d),
        t(id(a.clone()), b_fw(&b, &c, &d)),
    ]);
    Ok((lhs, rhs))
}

fn bc(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a, b, c] = e.many(["A", "B", "C"])?;
    let lhs = chain([
        b_bw(&c, &a, &b),
        t(c_comm(&a, &c), id(b.clone())),
        b_fw(&a, &c, &b),
        t(id(a.clone()), c_comm(&b, &c)),
        b_bw(&a, &b, &c),
    ]);
    Ok((lhs, c_comm(&and(&a, &b), &c)))
}

fn cmbc(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a, b, c, d] = e.many(["A", "B", "C", "D"])?;
    let inner = chain([
        b_bw(&c, &b, &d),
        t(c_comm(&b, &c), id(d.clone())),
        b_fw(&b, &c, &d),
    ]);
    let rhs = chain([
        b_fw(&a, &c, &and(&b, &d)),
        t(id(a.clone()), inner),
        b_bw(&a, &b, &and(&c, &d)),
    ]);
    Ok((cm(&a, &b, &c, &d), rhs))
}

fn b_delta_sigma(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a, c] = e.many(["A", "C"])?;
    Ok((
        b_fw(&a, &top(), &c),
        t(ArrowTerm::DeltaBw(a), ArrowTerm::SigmaFw(c)),
    ))
}

fn cmcm(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a1, a2, a3, a4] = e.many(["A1", "A2", "A3", "A4"])?;
    Ok((
        chain([cm(&a1, &a3, &a2, &a4), cm(&a1, &a2, &a3, &a4)]),
        id(and(&and(&a1, &a2), &and(&a3, &a4))),
    ))
}

fn cm_nat(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a1, a2, b1, b2, c1, c2, d1, d2] =
        e.many(["A1", "A2", "B1", "B2", "C1", "C2", "D1", "D2"])?;
    cm_naturality(
        &c_comm(&a1, &a2),
        &c_comm(&b1, &b2),
        &c_comm(&c1, &c2),
        &c_comm(&d1, &d2),
    )
}

/// Naturality of `cm` at arbitrary arrows `f: A -> A'`, `g: B -> B'`,
/// `h: C -> C'`, `j: D -> D'`:
///
/// `((f /\ h) /\ (g /\ j)) . cm_{A,B,C,D} = cm_{A',B',C',D'} . ((f /\ g) /\ (h /\ j))`.
pub fn cm_naturality(
    f: &ArrowTerm,
    g: &ArrowTerm,
    h: &ArrowTerm,
    j: &ArrowTerm,
) -> Result<(ArrowTerm, ArrowTerm)> {
    let (a, ap) = f.infer_type()?;
    let (b, bp) = g.infer_type()?;
    let (c, cp) = h.infer_type()?;
    let (d, dp) = j.infer_type()?;
    let lhs = chain([
        t(t(f.clone(), h.clone()), t(g.clone(), j.clone())),
        cm(&a, &b, &c, &d),
    ]);
    let rhs = chain([
        cm(&ap, &bp, &cp, &dp),
        t(t(f.clone(), g.clone()), t(h.clone(), j.clone())),
    ]);
    Ok((lhs, rhs))
}

/// An arrow term with its `cm` indices erased.
enum Skeleton {
    Id,
    Cm,
    Tensor(Box<Skeleton>, Box<Skeleton>),
}

fn cm_step() -> Skeleton {
    Skeleton::Cm
}

fn cm_left() -> Skeleton {
    Skeleton::Tensor(Box::new(Skeleton::Cm), Box::new(Skeleton::Id))
}

fn cm_right() -> Skeleton {
    Skeleton::Tensor(Box::new(Skeleton::Id), Box::new(Skeleton::Cm))
}

/// Fills in the indices of `skel` given its source; the indices are forced
/// since a `cm` pins all four of its arguments by its source.
fn fill(skel: &Skeleton, source: &Formula) -> Result<(ArrowTerm, Formula)> {
    match skel {
        Skeleton::Id => Ok((id(source.clone()), source.clone())),
        Skeleton::Cm => {
            let (ab, cd) = split(source)?;
            let (a, b) = split(ab)?;
            let (c, d) = split(cd)?;
            let arrow = cm(a, b, c, d);
            let target = arrow.target()?;
            Ok((arrow, target))
        }
        Skeleton::Tensor(l, r) => {
            let (sl, sr) = split(source)?;
            let (fl, tl) = fill(l, sl)?;
            let (fr, tr) = fill(r, sr)?;
            Ok((t(fl, fr), Formula::conj(tl, tr)))
        }
    }
}

fn split(f: &Formula) -> Result<(&Formula, &Formula)> {
    f.as_conj()
        .ok_or_else(|| Error::UnsatisfiableIndices(format!("{f} is not a conjunction")))
}

/// Solves a composite of skeletons, written in the usual order (last
/// applied first), against the displayed source and target.
fn solve(word: Vec<Skeleton>, source: &Formula, target: &Formula) -> Result<ArrowTerm> {
    let mut current = source.clone();
    let mut arrows = Vec::with_capacity(word.len());
    for skel in word.iter().rev() {
        let (arrow, next) = fill(skel, &current)?;
        arrows.push(arrow);
        current = next;
    }
    if &current != target {
        return Err(Error::UnsatisfiableIndices(format!(
            "composite ends at {current}, display requires {target}"
        )));
    }
    arrows.reverse();
    Ok(ArrowTerm::chain(arrows))
}

fn cm_i(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let [a1, a1p, a2, a3, a3p, a4, a4p] =
        e.many(["A1", "A1'", "A2", "A3", "A3'", "A4", "A4'"])?;
    let source = and(
        &and(&and(&a1, &a1p), &a2),
        &and(&and(&a3, &a3p), &and(&a4, &a4p)),
    );
    let target = and(
        &and(&and(&a1, &a3), &a2),
        &and(&and(&a1p, &a4), &and(&a3p, &a4p)),
    );
    let lhs = solve(vec![cm_step(), cm_left(), cm_step(), cm_right()], &source, &target)?;
    let rhs = solve(vec![cm_right(), cm_step(), cm_left(), cm_step()], &source, &target)?;
    Ok((lhs, rhs))
}

fn cm_ii_types(e: &Env) -> Result<(Formula, Formula)> {
    let [a1, a1p, a2, a2p, a3, a3p, a4] = e.many(["A1", "A1'", "A2", "A2'", "A3", "A3'", "A4"])?;
    let source = and(
        &and(&and(&a1, &a1p), &and(&a2, &a2p)),
        &and(&and(&a3, &a3p), &a4),
    );
    let target = and(
        &and(&and(&a1, &a1p), &and(&a2, &a3p)),
        &and(&and(&a3, &a2p), &a4),
    );
    Ok((source, target))
}

fn cm_ii_sides(
    source: &Formula,
    target: &Formula,
    step: fn() -> Skeleton,
) -> Result<(ArrowTerm, ArrowTerm)> {
    let lhs = solve(vec![cm_step(), step(), cm_step(), step(), cm_step(), step()], source, target)?;
    let rhs = solve(vec![step(), cm_step(), step(), cm_step(), step(), cm_step()], source, target)?;
    Ok((lhs, rhs))
}

fn cm_ii(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let (source, target) = cm_ii_types(e)?;
    cm_ii_sides(&source, &target, cm_left)
}

/// `cm /\ 1` replaced by `1 /\ cm`, at the mirrored type.
fn cm_ii_mirror(e: &Env) -> Result<(ArrowTerm, ArrowTerm)> {
    let (source, target) = cm_ii_types(e)?;
    cm_ii_sides(&source.mirror(), &target.mirror(), cm_right)
}
