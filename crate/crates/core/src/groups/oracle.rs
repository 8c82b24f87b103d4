//! A second semantics for arrows on `p^n`, computed directly in the product
//! of symmetric groups: one permutation per class `i` on the indices
//! `1..C(n,i)`, multiplied from labelled transpositions without passing
//! through positions.

use crate::error::{Error, Result};
use crate::semantics::Permutation;
use crate::syntax::ArrowTerm;

use super::{balanced, binomial, LabelSeq};

/// An element of `S_{C(n,0)} x ... x S_{C(n,n)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductElement {
    pub n: usize,
    pub classes: Vec<Permutation>,
}

impl ProductElement {
    pub fn identity(n: usize) -> ProductElement {
        ProductElement {
            n,
            classes: (0..=n).map(|i| Permutation::identity(binomial(n, i))).collect(),
        }
    }

    pub fn compose(&self, other: &ProductElement) -> Result<ProductElement> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let classes = self
            .classes
            .iter()
            .zip(&other.classes)
            .map(|(p, q)| p.compose(q))
            .collect::<Result<_>>()?;
        Ok(ProductElement { n: self.n, classes })
    }

    /// Reads the element as a permutation of the `2^n` positions, position
    /// `k` carrying the label `labels.labels[k]`.
    pub fn on_positions(&self, labels: &LabelSeq) -> Permutation {
        let map = labels
            .labels
            .iter()
            .map(|&(i, j)| {
                let target = self.classes[i].image(j);
                labels.position(i, target).expect("label present")
            })
            .collect();
        Permutation::from_zero_based_unchecked(map)
    }
}

/// `c^m` on `p^n`: in each class `i >= 1`, indices `C(n-2,i) + t` and
/// `C(n-1,i) + t` trade places for `t = 1..C(n-2,i-1)`.
fn medial(n: usize) -> ProductElement {
    let mut e = ProductElement::identity(n);
    for i in 1..n {
        let size = binomial(n, i);
        let low = binomial(n - 2, i);
        let high = binomial(n - 1, i);
        for t in 1..=binomial(n - 2, i - 1) {
            let swap = Permutation::transposition(size, low + t, high + t);
            e.classes[i] = swap.compose(&e.classes[i]).expect("same size");
        }
    }
    e
}

/// `f /\ g` on `p^n` from `f, g` on `p^{n-1}`: class `i` is `f`'s class `i`
/// followed by `g`'s class `i - 1`.
fn juxtapose(n: usize, f: &ProductElement, g: &ProductElement) -> ProductElement {
    let classes = (0..=n)
        .map(|i| {
            let left = f.classes.get(i);
            let right = i.checked_sub(1).and_then(|k| g.classes.get(k));
            match (left, right) {
                (Some(l), Some(r)) => l.juxtapose(r),
                (Some(l), None) => l.clone(),
                (None, Some(r)) => r.clone(),
                (None, None) => Permutation::identity(0),
            }
        })
        .collect();
    ProductElement { n, classes }
}

/// The image of an arrow `p^n -> p^n` in the product group.
pub fn image(f: &ArrowTerm) -> Result<ProductElement> {
    let (s, t) = f.infer_type()?;
    let n = s.height();
    let expected = balanced(n);
    for x in [s, t] {
        if x != expected {
            return Err(Error::TypeMismatch {
                expected: expected.clone(),
                found: x,
                position: None,
            });
        }
    }
    image_at(n, f)
}

fn image_at(n: usize, f: &ArrowTerm) -> Result<ProductElement> {
    match f {
        ArrowTerm::Id(_) => Ok(ProductElement::identity(n)),
        ArrowTerm::Cm(..) => Ok(medial(n)),
        ArrowTerm::Tensor(g, h) => Ok(juxtapose(n, &image_at(n - 1, g)?, &image_at(n - 1, h)?)),
        ArrowTerm::Comp(g, h) => image_at(n, g)?.compose(&image_at(n, h)?),
        _ => Err(Error::DialectMismatch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{def_cm_expansion, gamma, generator, nseq, GeneratorRef};
    use crate::semantics::eval_perm;

    #[test]
    fn generators_are_single_labelled_swaps() {
        for n in 2..=4 {
            for g in GeneratorRef::all(n) {
                let e = image(&generator(g).unwrap()).unwrap();
                for (i, p) in e.classes.iter().enumerate() {
                    if i == g.i {
                        assert_eq!(p, &Permutation::transposition(p.size(), g.j, g.j + 1));
                    } else {
                        assert!(p.is_identity(), "{g} moves class {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn agrees_with_positions() {
        for n in 2..=4 {
            let labels = nseq(n);
            for g in GeneratorRef::all(n) {
                let term = generator(g).unwrap();
                let e = image(&term).unwrap();
                assert_eq!(e.on_positions(&labels), eval_perm(&term).unwrap());
            }
        }
    }

    #[test]
    fn medial_matches_expansion() {
        for n in 2..=4 {
            let a = image(&gamma(n + 1)).unwrap();
            let b = image(&def_cm_expansion(n).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rejects_unbalanced() {
        let t = ArrowTerm::Id(crate::syntax::parse_formula("(p ^ p) ^ p").unwrap());
        assert!(matches!(image(&t), Err(Error::TypeMismatch { .. })));
    }
}
