//! Permutation semantics of arrow terms.
//!
//! Every well-typed arrow `f: A -> B` denotes a bijection from the letter
//! occurrences of `A` to those of `B`. Equality of arrows is decided by
//! comparing these bijections (see [`crate::decision`]).

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::syntax::{ArrowTerm, Formula};

/// A bijection on `{1..size}`, stored densely: `image(i)` is where source
/// position `i` lands in the target.
///
/// Internally 0-based; the public constructors, accessors and the JSON form
/// use 1-based one-line notation such as `[1,3,2,4]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Permutation {
        Permutation {
            map: (0..size).collect(),
        }
    }

    /// Builds from 1-based one-line notation, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Option<Permutation> {
        let map: Vec<usize> = images
            .iter()
            .map(|&i| i.checked_sub(1))
            .collect::<Option<_>>()?;
        Permutation::from_zero_based(map)
    }

    pub fn from_zero_based(map: Vec<usize>) -> Option<Permutation> {
        let mut seen = vec![false; map.len()];
        for &i in &map {
            if i >= map.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation { map })
    }

    pub(crate) fn from_zero_based_unchecked(map: Vec<usize>) -> Permutation {
        debug_assert!(Permutation::from_zero_based(map.clone()).is_some());
        Permutation { map }
    }

    /// The transposition of 1-based points `a` and `b`.
    pub fn transposition(size: usize, a: usize, b: usize) -> Permutation {
        let mut p = Permutation::identity(size);
        p.map.swap(a - 1, b - 1);
        p
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    /// 1-based image of 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.map[i - 1] + 1
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|i| i + 1).collect()
    }

    pub fn as_zero_based(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { map: inv }
    }

    /// `self` on the first points, `other` shifted onto the following ones.
    pub fn juxtapose(&self, other: &Permutation) -> Permutation {
        let shift = self.size();
        let map = self
            .map
            .iter()
            .copied()
            .chain(other.map.iter().map(|&i| i + shift))
            .collect();
        Permutation { map }
    }

    /// 1-based points not fixed by the permutation.
    pub fn moved_points(&self) -> Vec<usize> {
        self.map
            .iter()
            .enumerate()
            .filter(|(i, j)| i != *j)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Free-function form of [`Permutation::compose`].
pub fn compose_perm(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn identity_perm(n: usize) -> Permutation {
    Permutation::identity(n)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.map.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("]")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(&images)
            .ok_or_else(|| serde::de::Error::custom("not a permutation of 1..n"))
    }
}

/// The permutation denoted by `f`, checking well-typedness on the way.
pub fn eval_perm(f: &ArrowTerm) -> Result<Permutation> {
    eval_typed(f).map(|(_, _, p)| p)
}

/// Source, target and permutation of `f` in one pass.
pub fn eval_typed(f: &ArrowTerm) -> Result<(Formula, Formula, Permutation)> {
    match f {
        ArrowTerm::Comp(g, h) => {
            let (hs, ht, hp) = eval_typed(h)?;
            let (gs, gt, gp) = eval_typed(g)?;
            if ht != gs {
                return Err(Error::TypeMismatch {
                    expected: gs,
                    found: ht,
                    position: None,
                });
            }
            Ok((hs, gt, gp.compose(&hp)?))
        }
        ArrowTerm::Tensor(g, h) => {
            let (gs, gt, gp) = eval_typed(g)?;
            let (hs, ht, hp) = eval_typed(h)?;
            Ok((
                Formula::conj(gs, hs),
                Formula::conj(gt, ht),
                gp.juxtapose(&hp),
            ))
        }
        ArrowTerm::Cm(a, b, c, d) => {
            let (source, target) = f.infer_type()?;
            let [na, nb, nc, nd] = [a, b, c, d].map(Formula::letter_count);
            // Source blocks A B C D land in target order A C B D.
            let map = (0..na)
                .chain((0..nb).map(|k| na + nc + k))
                .chain((0..nc).map(|k| na + k))
                .chain((0..nd).map(|k| na + nc + nb + k))
                .collect();
            Ok((source, target, Permutation { map }))
        }
        // Identities and the unit arrows leave every letter in place.
        _ => {
            let (source, target) = f.infer_type()?;
            let n = source.letter_count();
            Ok((source, target, Permutation::identity(n)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_arrow;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    /// Independent oracle: trace each letter name from source to target.
    /// Only valid when letters are pairwise distinct.
    fn trace_letters(f: &ArrowTerm) -> Vec<usize> {
        let (s, t) = f.infer_type().unwrap();
        let src: Vec<_> = s.letter_positions().into_iter().map(|(n, _)| n).collect();
        let tgt: Vec<_> = t.letter_positions().into_iter().map(|(n, _)| n).collect();
        src.iter()
            .map(|n| tgt.iter().position(|m| m == n).unwrap() + 1)
            .collect()
    }

    #[test]
    fn cm_swaps_middle_blocks() {
        let t = parse_arrow("cm[a,b,c,d]").unwrap();
        assert_eq!(eval_perm(&t).unwrap(), perm(&[1, 3, 2, 4]));
    }

    #[test]
    fn cm_with_compound_block() {
        let t = parse_arrow("cm[a ^ b,c,d,e]").unwrap();
        let expected = trace_letters(&t);
        assert_eq!(expected, vec![1, 2, 4, 3, 5]);
        assert_eq!(eval_perm(&t).unwrap().images(), expected);
    }

    #[test]
    fn identity_arrow() {
        let t = parse_arrow("1[(a ^ b) ^ c]").unwrap();
        assert_eq!(eval_perm(&t).unwrap(), perm(&[1, 2, 3]));
    }

    #[test]
    fn composition() {
        let p = perm(&[1, 3, 2, 4]);
        assert!(p.compose(&p).unwrap().is_identity());
        let q = perm(&[2, 3, 1]);
        assert_eq!(q.compose(&q).unwrap(), perm(&[3, 1, 2]));
        assert_eq!(q.compose(&identity_perm(3)).unwrap(), q);
        assert_eq!(
            q.compose(&identity_perm(2)),
            Err(Error::SizeMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn composite_of_cm_is_identity() {
        let t = parse_arrow("cm[a,c,b,d] . cm[a,b,c,d]").unwrap();
        assert!(eval_perm(&t).unwrap().is_identity());
    }

    #[test]
    fn unit_arrows_are_identities() {
        let t = parse_arrow("dl<[a ^ b] . sg>[a ^ b]").unwrap();
        assert_eq!(eval_perm(&t).unwrap(), identity_perm(2));
    }

    #[test]
    fn json_is_one_based() {
        let p = perm(&[1, 3, 2, 4]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,3,2,4]");
        let back: Permutation = serde_json::from_str("[1,3,2,4]").unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
        assert!(serde_json::from_str::<Permutation>("[0,1]").is_err());
    }

    #[test]
    fn inverse_and_juxtapose() {
        let p = perm(&[2, 3, 1]);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert_eq!(p.juxtapose(&perm(&[2, 1])), perm(&[2, 3, 1, 5, 4]));
        assert_eq!(perm(&[1, 3, 2]).moved_points(), vec![2, 3]);
    }
}
