//! Random formulas and random well-typed arrows, for testing.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::groups::{balanced, gamma, generator, GeneratorRef};
use crate::syntax::{ArrowTerm, Dialect, Formula};

/// A random `^`-tree with `leaves` leaves. Leaves are the letters `x1, x2,
/// ...` left to right; with probability `unit_chance` a leaf is `T` instead.
pub fn random_formula(rng: &mut impl Rng, leaves: usize, unit_chance: f64) -> Formula {
    let mut next = 0;
    build_tree(rng, leaves.max(1), unit_chance, &mut next)
}

fn build_tree(rng: &mut impl Rng, leaves: usize, unit_chance: f64, next: &mut usize) -> Formula {
    if leaves == 1 {
        if unit_chance > 0.0 && rng.gen_bool(unit_chance) {
            return Formula::Unit;
        }
        *next += 1;
        return Formula::letter(format!("x{next}"));
    }
    let left = rng.gen_range(1..leaves);
    let l = build_tree(rng, left, unit_chance, next);
    let r = build_tree(rng, leaves - left, unit_chance, next);
    Formula::conj(l, r)
}

#[derive(Clone, Copy)]
enum Step {
    Medial,
    DeltaFw,
    DeltaBw,
    SigmaFw,
    SigmaBw,
}

impl Step {
    fn applies(self, x: &Formula) -> bool {
        match self {
            Step::Medial => matches!(
                x.as_conj(),
                Some((l, r)) if l.as_conj().is_some() && r.as_conj().is_some()
            ),
            Step::DeltaFw => matches!(x.as_conj(), Some((_, r)) if r.is_unit()),
            Step::SigmaFw => matches!(x.as_conj(), Some((l, _)) if l.is_unit()),
            Step::DeltaBw | Step::SigmaBw => true,
        }
    }

    fn arrow(self, x: &Formula) -> ArrowTerm {
        match self {
            Step::Medial => {
                let (l, r) = x.as_conj().expect("applies");
                let (a, b) = l.as_conj().expect("applies");
                let (c, d) = r.as_conj().expect("applies");
                ArrowTerm::Cm(a.clone(), b.clone(), c.clone(), d.clone())
            }
            Step::DeltaFw => ArrowTerm::DeltaFw(x.as_conj().expect("applies").0.clone()),
            Step::SigmaFw => ArrowTerm::SigmaFw(x.as_conj().expect("applies").1.clone()),
            Step::DeltaBw => ArrowTerm::DeltaBw(x.clone()),
            Step::SigmaBw => ArrowTerm::SigmaBw(x.clone()),
        }
    }
}

fn subformula_paths(x: &Formula, path: &mut Vec<bool>, out: &mut Vec<(Vec<bool>, Formula)>) {
    out.push((path.clone(), x.clone()));
    if let Some((l, r)) = x.as_conj() {
        path.push(false);
        subformula_paths(l, path, out);
        path.pop();
        path.push(true);
        subformula_paths(r, path, out);
        path.pop();
    }
}

/// `step` applied at `path` inside `x`, identities elsewhere.
fn whisker(x: &Formula, path: &[bool], step: ArrowTerm) -> ArrowTerm {
    match path.split_first() {
        None => step,
        Some((&right, rest)) => {
            let (l, r) = x.as_conj().expect("path inside formula");
            if right {
                ArrowTerm::tensor(ArrowTerm::Id(l.clone()), whisker(r, rest, step))
            } else {
                ArrowTerm::tensor(whisker(l, rest, step), ArrowTerm::Id(r.clone()))
            }
        }
    }
}

/// One elementary step out of `source`, or `None` if nothing applies.
pub fn random_step(rng: &mut impl Rng, source: &Formula, dialect: Dialect) -> Option<ArrowTerm> {
    let mut spots = Vec::new();
    subformula_paths(source, &mut Vec::new(), &mut spots);
    let mut steps = vec![Step::Medial];
    if dialect == Dialect::Full {
        steps.extend([Step::DeltaFw, Step::SigmaFw]);
        // Introducing units is kept rare so formulas stay small.
        if rng.gen_bool(0.2) {
            steps.extend([Step::DeltaBw, Step::SigmaBw]);
        }
    }
    let choices: Vec<_> = spots
        .iter()
        .flat_map(|(path, x)| {
            steps
                .iter()
                .filter(move |s| s.applies(x))
                .map(move |s| (path, x, *s))
        })
        .collect();
    let (path, x, step) = choices.choose(rng)?;
    Some(whisker(source, path, step.arrow(x)))
}

/// A composite of up to `steps` elementary steps starting at `source`.
/// Returns the identity when no step applies.
pub fn random_arrow(
    rng: &mut impl Rng,
    source: &Formula,
    steps: usize,
    dialect: Dialect,
) -> ArrowTerm {
    let mut current = source.clone();
    let mut arrows = Vec::new();
    for _ in 0..steps {
        match random_step(rng, &current, dialect) {
            Some(a) => {
                current = a.target().expect("steps are well-typed");
                arrows.push(a);
            }
            None => break,
        }
    }
    if arrows.is_empty() {
        return ArrowTerm::Id(source.clone());
    }
    arrows.reverse();
    ArrowTerm::chain(arrows)
}

/// A random arrow out of `source` with roughly `size` elementary steps,
/// mixing tensors, composites nested either way, and step walks.
pub fn random_term(rng: &mut impl Rng, source: &Formula, size: usize, dialect: Dialect) -> ArrowTerm {
    let half = size / 2;
    match rng.gen_range(0..3) {
        0 if size > 1 && source.as_conj().is_some() => {
            let (l, r) = source.as_conj().expect("checked");
            ArrowTerm::tensor(
                random_term(rng, l, half, dialect),
                random_term(rng, r, size - half, dialect),
            )
        }
        1 if size > 1 => {
            let f = random_term(rng, source, half, dialect);
            let middle = f.target().expect("well-typed");
            let g = random_term(rng, &middle, size - half, dialect);
            ArrowTerm::comp(g, f)
        }
        _ => random_arrow(rng, source, size.clamp(1, 3), dialect),
    }
}

/// The letters of words over `p^n`: every neighbour generator, `c^m` on
/// `p^n`, and `c^m` on one half with the identity on the other.
pub fn group_alphabet(n: usize) -> Vec<ArrowTerm> {
    let mut out: Vec<ArrowTerm> = GeneratorRef::all(n)
        .into_iter()
        .map(|g| generator(g).expect("valid generator"))
        .collect();
    if n >= 2 {
        out.push(gamma(n));
    }
    if n >= 3 {
        let id = || ArrowTerm::Id(balanced(n - 1));
        out.push(ArrowTerm::tensor(gamma(n - 1), id()));
        out.push(ArrowTerm::tensor(id(), gamma(n - 1)));
    }
    out
}

/// A random word of length `1..=max_len` over [`group_alphabet`].
pub fn random_group_word(rng: &mut impl Rng, alphabet: &[ArrowTerm], max_len: usize) -> Vec<ArrowTerm> {
    let len = rng.gen_range(1..=max_len.max(1));
    (0..len)
        .map(|_| alphabet.choose(rng).expect("nonempty alphabet").clone())
        .collect()
}
