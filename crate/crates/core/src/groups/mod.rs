//! The one-object categories over balanced formulas `p^n` and their
//! automorphism groups, presented by neighbour transpositions per class.

pub mod oracle;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semantics::{eval_perm, Permutation};
use crate::syntax::{ArrowTerm, Formula};

/// Element budget for [`group_order`] when none is given.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Binomial coefficient by Pascal's rule; `None` on overflow.
pub fn checked_binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let mut row = vec![1usize; 1];
    for m in 1..=n {
        let mut next = vec![1usize; m + 1];
        for j in 1..m {
            next[j] = row[j - 1].checked_add(row[j])?;
        }
        row = next;
    }
    Some(row[k])
}

/// # Panics
/// On overflow, far beyond any size the groups here can reach.
pub fn binomial(n: usize, k: usize) -> usize {
    checked_binomial(n, k).expect("binomial overflow")
}

/// `p^0 = p`, `p^{n+1} = p^n ^ p^n`.
pub fn balanced(n: usize) -> Formula {
    (0..n).fold(Formula::letter("p"), |f, _| Formula::conj(f.clone(), f))
}

/// The neighbour transposition `i^n_{j,j+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GeneratorRef {
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

impl GeneratorRef {
    pub fn new(n: usize, i: usize, j: usize) -> Result<GeneratorRef> {
        if n < 2 || i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                detail: format!("class must lie in 1..{} at level {n}", n.saturating_sub(1)),
            });
        }
        let size = binomial(n, i);
        if j == 0 || j >= size {
            return Err(Error::IndexOutOfRange {
                index: j,
                detail: format!("position must lie in 1..{} for class {i} at level {n}", size - 1),
            });
        }
        Ok(GeneratorRef { n, i, j })
    }

    /// Every generator at level `n`, by class then position.
    pub fn all(n: usize) -> Vec<GeneratorRef> {
        let mut out = Vec::new();
        for i in 1..n {
            for j in 1..binomial(n, i) {
                out.push(GeneratorRef { n, i, j });
            }
        }
        out
    }
}

impl fmt::Display for GeneratorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}_{{{},{}}}", self.i, self.n, self.j, self.j + 1)
    }
}

/// `c^m` on four copies of `p^{n-2}`, an arrow on `p^n`.
pub fn gamma(n: usize) -> ArrowTerm {
    let q = balanced(n - 2);
    ArrowTerm::Cm(q.clone(), q.clone(), q.clone(), q)
}

/// The arrow term abbreviated by `i^n_{j,j+1}`, fully expanded.
pub fn generator(g: GeneratorRef) -> Result<ArrowTerm> {
    let g = GeneratorRef::new(g.n, g.i, g.j)?;
    Ok(expand(g.n, g.i, g.j))
}

fn expand(n: usize, i: usize, j: usize) -> ArrowTerm {
    if n == 2 {
        return gamma(2);
    }
    let k = n - 1;
    let half = binomial(k, i);
    let id = || ArrowTerm::Id(balanced(k));
    if j < half {
        ArrowTerm::tensor(expand(k, i, j), id())
    } else if j > half {
        ArrowTerm::tensor(id(), expand(k, i - 1, j - half))
    } else if i == k {
        let step = || expand(n, k, 2);
        ArrowTerm::chain([step(), gamma(n), step(), gamma(n), step()])
    } else {
        let alpha = || expand(n, i, binomial(k - 1, i));
        if i == 1 {
            ArrowTerm::chain([alpha(), gamma(n), alpha(), gamma(n), alpha()])
        } else {
            let beta = || neighbour_word(n, i, binomial(k - 1, i) + 1, half);
            ArrowTerm::chain([
                beta(),
                alpha(),
                gamma(n),
                alpha(),
                gamma(n),
                alpha(),
                beta(),
            ])
        }
    }
}

/// `i_{j,j+1} . i_{j+1,j+2} . ... . i_{k-1,k} . ... . i_{j,j+1}`.
fn neighbour_word(n: usize, i: usize, j: usize, k: usize) -> ArrowTerm {
    let up = j..k;
    let down = (j..k - 1).rev();
    ArrowTerm::chain(up.chain(down).map(|m| expand(n, i, m)))
}

/// The transposition `i^n_{j,k}` as a word in neighbour transpositions.
pub fn transposition(n: usize, i: usize, j: usize, k: usize) -> Result<ArrowTerm> {
    GeneratorRef::new(n, i, 1)?;
    let size = binomial(n, i);
    if j == 0 || j >= k || k > size {
        return Err(Error::IndexOutOfRange {
            index: k,
            detail: format!("need 1 <= j < k <= {size}, got j = {j}"),
        });
    }
    Ok(neighbour_word(n, i, j, k))
}

/// The word in transpositions that equals [`gamma`]`(n + 1)`.
pub fn def_cm_expansion(n: usize) -> Result<ArrowTerm> {
    if n < 2 {
        return Err(Error::IndexOutOfRange {
            index: n,
            detail: "the expansion starts at n = 2".into(),
        });
    }
    let mut factors = Vec::new();
    for i in 1..=n {
        let low = binomial(n - 1, i);
        let high = binomial(n, i);
        for t in 1..=binomial(n - 1, i - 1) {
            factors.push(transposition(n + 1, i, low + t, high + t)?);
        }
    }
    Ok(ArrowTerm::chain(factors))
}

/// `(class, index)` for each of the `2^n` positions of `p^n`, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelSeq {
    pub n: usize,
    pub labels: Vec<(usize, usize)>,
}

impl LabelSeq {
    /// 0-based position carrying label `i_j`.
    pub fn position(&self, i: usize, j: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == (i, j))
    }
}

impl fmt::Display for LabelSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, j)) in self.labels.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}_{j}")?;
        }
        Ok(())
    }
}

pub fn nseq(n: usize) -> LabelSeq {
    let mut labels = vec![(0, 1)];
    for m in 0..n {
        let shifted: Vec<_> = labels
            .iter()
            .map(|&(i, j)| (i + 1, j + binomial(m, i + 1)))
            .collect();
        labels.extend(shifted);
    }
    LabelSeq { n, labels }
}

/// `prod_i C(n,i)!`, or `None` past `u128`.
pub fn expected_order(n: usize) -> Option<u128> {
    (0..=n).try_fold(1u128, |acc, i| {
        let c = checked_binomial(n, i)? as u128;
        (1..=c).try_fold(acc, |a, m| a.checked_mul(m))
    })
}

/// Evaluates every generator at level `n`, in [`GeneratorRef::all`] order.
pub fn generator_perms(n: usize) -> Result<Vec<Permutation>> {
    GeneratorRef::all(n)
        .into_iter()
        .map(|g| eval_perm(&generator(g)?))
        .collect()
}

/// Size of the group generated by the generator permutations at level `n`,
/// by breadth-first closure. Refuses up front when the predicted order
/// exceeds `budget`, and stops if the closure outgrows it anyway.
pub fn group_order(n: usize, budget: u64) -> Result<u64> {
    match expected_order(n) {
        Some(e) if e <= budget as u128 => {}
        _ => return Err(Error::BudgetExceeded { budget }),
    }
    let gens: Vec<Vec<usize>> = generator_perms(n)?
        .iter()
        .map(|p| p.as_zero_based().to_vec())
        .collect();
    let start: Vec<usize> = (0..1usize << n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if !seen.contains(&q) {
                if seen.len() as u64 >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// One named check of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DirectProductReport {
    pub n: usize,
    pub order: u64,
    pub expected_order: u128,
    pub checks: Vec<Check>,
}

impl DirectProductReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn commute(p: &Permutation, q: &Permutation) -> bool {
    p.compose(q).ok() == q.compose(p).ok()
}

/// Whether `p` swaps the positions labelled `i_j` and `i_{j+1}` and fixes
/// everything else.
pub fn is_labelled_neighbour_swap(p: &Permutation, labels: &LabelSeq, i: usize, j: usize) -> bool {
    match (labels.position(i, j), labels.position(i, j + 1)) {
        (Some(a), Some(b)) => p == &Permutation::transposition(p.size(), a + 1, b + 1),
        _ => false,
    }
}

/// Checks that the generators at level `n` act as neighbour transpositions
/// within their classes, satisfy the defining relations, and generate a
/// group of order `prod_i C(n,i)!`.
pub fn verify_direct_product(n: usize, budget: u64) -> Result<DirectProductReport> {
    let refs = GeneratorRef::all(n);
    let perms = generator_perms(n)?;
    let labels = nseq(n);
    let order = group_order(n, budget)?;
    let expected = expected_order(n).expect("within budget");
    let pairs = || {
        refs.iter()
            .zip(&perms)
            .flat_map(|a| refs.iter().zip(&perms).map(move |b| (a, b)))
    };

    let support = refs
        .iter()
        .zip(&perms)
        .all(|(g, p)| is_labelled_neighbour_swap(p, &labels, g.i, g.j));
    let involution = perms.iter().all(|p| p.compose(p).map_or(false, |q| q.is_identity()));
    let norm = pairs()
        .filter(|((g, _), (h, _))| g.i != h.i)
        .all(|((_, p), (_, q))| commute(p, q));
    let far = pairs()
        .filter(|((g, _), (h, _))| g.i == h.i && h.j >= g.j + 2)
        .all(|((_, p), (_, q))| commute(p, q));
    let yb = pairs()
        .filter(|((g, _), (h, _))| g.i == h.i && h.j == g.j + 1)
        .all(|((_, p), (_, q))| {
            let left = p.compose(q).and_then(|r| r.compose(p));
            let right = q.compose(p).and_then(|r| r.compose(q));
            left.is_ok() && left == right
        });
    let def_cm = if n >= 3 {
        eval_perm(&def_cm_expansion(n - 1)?)? == eval_perm(&gamma(n))?
    } else {
        true
    };

    let check = |name: &str, pass: bool| Check {
        name: name.to_string(),
        pass,
    };
    Ok(DirectProductReport {
        n,
        order,
        expected_order: expected,
        checks: vec![
            check("label-support", support),
            check("involution", involution),
            check("norm", norm),
            check("yang-baxter", yb),
            check("perm", far),
            check("def-cm", def_cm),
            check("order", order as u128 == expected),
        ],
    })
}
