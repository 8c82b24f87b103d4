//! Strand diagrams and their lift to permutations of binary addresses.
//!
//! A `k`-strand permutation diagram acts on words `u1..uk` over `{0,1}` by
//! carrying each bit along its strand. Address `u` is stored as the integer
//! whose most significant of `k` bits is `u1`, so lexicographic order on
//! addresses is numeric order and address `n` sits at position `n`.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::constructions::{fresh_bindings, instantiate};
use crate::error::{Error, Result};
use crate::semantics::{eval_perm, Permutation};

/// `wiring.image(s) = t`: top position `s` is joined to bottom position `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrandDiagram {
    wiring: Permutation,
}

impl StrandDiagram {
    pub fn new(wiring: Permutation) -> StrandDiagram {
        StrandDiagram { wiring }
    }

    pub fn identity(strands: usize) -> StrandDiagram {
        StrandDiagram::new(Permutation::identity(strands))
    }

    /// Strands `i` and `i + 1` (1-based) cross, the rest run straight down.
    pub fn crossing(strands: usize, i: usize) -> StrandDiagram {
        StrandDiagram::new(Permutation::transposition(strands, i, i + 1))
    }

    pub fn strands(&self) -> usize {
        self.wiring.size()
    }

    pub fn wiring(&self) -> &Permutation {
        &self.wiring
    }

    /// `self` drawn below `other`.
    pub fn compose(&self, other: &StrandDiagram) -> Result<StrandDiagram> {
        self.wiring.compose(&other.wiring).map(StrandDiagram::new)
    }
}

/// A bijection on the `2^bits` addresses of length `bits`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LiftedGraph {
    bits: usize,
    map: Permutation,
}

pub fn address(bits: usize, n: usize) -> String {
    format!("{n:0bits$b}")
}

fn popcount(n: usize) -> usize {
    n.count_ones() as usize
}

impl LiftedGraph {
    pub fn bits(&self) -> usize {
        self.bits
    }

    /// The permutation of addresses, address `n` being point `n + 1`.
    pub fn as_permutation(&self) -> &Permutation {
        &self.map
    }

    pub fn image(&self, address: usize) -> usize {
        self.map.as_zero_based()[address]
    }

    /// Pairs of bit strings `(u, v)` joined by the graph.
    pub fn edges(&self) -> impl Iterator<Item = (String, String)> + '_ {
        self.map
            .as_zero_based()
            .iter()
            .enumerate()
            .map(|(u, &v)| (address(self.bits, u), address(self.bits, v)))
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_identity()
    }

    pub fn preserves_popcount(&self) -> bool {
        self.map
            .as_zero_based()
            .iter()
            .enumerate()
            .all(|(u, &v)| popcount(u) == popcount(v))
    }
}

impl Serialize for LiftedGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.edges().collect::<BTreeMap<_, _>>().serialize(serializer)
    }
}

/// Connects `u` to the unique `v` that the diagram fits between:
/// `v[wiring(s)] = u[s]` for every strand `s`.
pub fn lift(d: &StrandDiagram) -> LiftedGraph {
    let k = d.strands();
    let targets: Vec<usize> = (1..=k).map(|s| d.wiring.image(s)).collect();
    let map = (0..1usize << k)
        .map(|u| {
            targets.iter().enumerate().fold(0, |v, (s, &t)| {
                let bit = (u >> (k - 1 - s)) & 1;
                v | bit << (k - t)
            })
        })
        .collect();
    LiftedGraph {
        bits: k,
        map: Permutation::from_zero_based_unchecked(map),
    }
}

/// `g1 ∘ g2`, applying `g2` first.
pub fn compose_lift(g1: &LiftedGraph, g2: &LiftedGraph) -> Result<LiftedGraph> {
    if g1.bits != g2.bits {
        return Err(Error::SizeMismatch {
            left: g1.bits,
            right: g2.bits,
        });
    }
    Ok(LiftedGraph {
        bits: g1.bits,
        map: g1.map.compose(&g2.map)?,
    })
}

/// Moved addresses grouped by their number of 1s.
pub fn support_by_ones(g: &LiftedGraph) -> BTreeMap<usize, Vec<String>> {
    let mut out: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (u, &v) in g.map.as_zero_based().iter().enumerate() {
        if u != v {
            out.entry(popcount(u))
                .or_default()
                .push(address(g.bits, u));
        }
    }
    out
}

/// One named check of [`yang_baxter_suite`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

fn check(name: &str, pass: bool) -> Check {
    Check {
        name: name.to_string(),
        pass,
    }
}

/// The two sides of the Yang-Baxter equation on three bits: crossing the
/// first two strands around the last two, and the other way round.
pub fn yang_baxter_graphs() -> (LiftedGraph, LiftedGraph) {
    let x12 = lift(&StrandDiagram::crossing(3, 1));
    let x23 = lift(&StrandDiagram::crossing(3, 2));
    let triple = |a: &LiftedGraph, b: &LiftedGraph| {
        compose_lift(a, &compose_lift(b, a).expect("3 bits")).expect("3 bits")
    };
    (triple(&x12, &x23), triple(&x23, &x12))
}

/// Lift, Yang-Baxter and medial-hexagon correspondence checks.
pub fn yang_baxter_suite() -> Result<Vec<Check>> {
    let x = lift(&StrandDiagram::crossing(2, 1));
    let expected_x = [0b00, 0b10, 0b01, 0b11];
    let (yb_left, yb_right) = yang_baxter_graphs();

    let eq = instantiate("psi-cm", &fresh_bindings("psi-cm", None)?)?;
    let lhs = eval_perm(&eq.lhs)?;
    let rhs = eval_perm(&eq.rhs)?;

    let mut all_popcount = true;
    let mut all_distinct = Vec::new();
    for k in 1..=4 {
        for wiring in all_permutations(k) {
            let g = lift(&StrandDiagram::new(wiring));
            all_popcount &= g.preserves_popcount();
            all_distinct.push(g);
        }
    }
    let n = all_distinct.len();
    all_distinct.sort_by(|a, b| (a.bits, a.map.clone()).cmp(&(b.bits, b.map.clone())));
    all_distinct.dedup();

    Ok(vec![
        check(
            "crossing-lift",
            (0..4).all(|u| x.image(u) == expected_x[u]),
        ),
        check(
            "crossing-involution",
            compose_lift(&x, &x)?.is_identity(),
        ),
        check("yang-baxter", yb_left == yb_right),
        check("psi-cm-lhs", yb_left.as_permutation() == &lhs),
        check("psi-cm-rhs", yb_right.as_permutation() == &rhs),
        check("popcount-preserved", all_popcount),
        check("lift-injective", all_distinct.len() == n),
    ])
}

/// Every permutation of `1..=k`, in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation::from_zero_based_unchecked(prefix.clone()));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                extend(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
