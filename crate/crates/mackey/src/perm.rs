//! Permutations of `{0, .., n-1}`, stored as image lists.

use crate::{Error, Result};
use std::fmt;

/// A bijection of `{0, .., n-1}`. `images[i]` is the image of `i`.
///
/// The derived `Ord` is lexicographic on image lists; it is the canonical
/// element order used everywhere (the identity is always least).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Build from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::InvalidPermutation {
                    degree: n,
                    reason: format!("image {} out of range", i + 1),
                });
            }
            if seen[i] {
                return Err(Error::InvalidPermutation {
                    degree: n,
                    reason: format!("image {} repeated", i + 1),
                });
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from 1-based images as they appear in serialized inputs.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let shifted = images
            .iter()
            .map(|&i| {
                if i == 0 || i > n {
                    Err(Error::InvalidPermutation {
                        degree: n,
                        reason: format!("image {} out of range 1..{}", i, n),
                    })
                } else {
                    Ok(i - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(shifted)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Images shifted up by `offset` and padded into degree `n`, acting on a
    /// block of a larger set. Used for disjoint unions.
    pub fn block_sum(&self, other: &Permutation) -> Permutation {
        let a = self.degree();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&i| i + a));
        Permutation { images }
    }

    /// Nontrivial cycles, each rotated to start at its least point, sorted by
    /// that point. 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.images[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.images[next];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation on 1-based points, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![2, 0]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 3]).is_err());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // s = (1 2), t = (2 3) on three points.
        let s = Permutation::from_one_based(&[2, 1, 3]).unwrap();
        let t = Permutation::from_one_based(&[1, 3, 2]).unwrap();
        // (s ∘ t)(2) = s(3) = 3, (s ∘ t)(3) = s(2) = 1.
        assert_eq!(s.compose(&t).one_based(), vec![2, 3, 1]);
        assert_eq!(t.compose(&s).one_based(), vec![3, 1, 2]);
    }

    #[test]
    fn inverse_and_identity() {
        let s = Permutation::from_one_based(&[3, 1, 2]).unwrap();
        assert!(s.compose(&s.inverse()).is_identity());
        assert!(s.inverse().compose(&s).is_identity());
        assert!(Permutation::identity(4).is_identity());
    }

    #[test]
    fn identity_is_lexicographically_least() {
        // Any non-identity permutation exceeds the identity in image order.
        let id = Permutation::identity(3);
        for images in [[2, 1, 3], [1, 3, 2], [3, 2, 1], [2, 3, 1], [3, 1, 2]] {
            let p = Permutation::from_one_based(&images).unwrap();
            assert!(id < p);
        }
    }

    #[test]
    fn cycle_notation() {
        let s = Permutation::from_one_based(&[2, 1, 4, 3]).unwrap();
        assert_eq!(format!("{}", s), "(1 2)(3 4)");
        assert_eq!(format!("{}", Permutation::identity(2)), "()");
    }

    #[test]
    fn block_sum_concatenates_blocks() {
        let s = Permutation::from_one_based(&[2, 1]).unwrap();
        let t = Permutation::from_one_based(&[1, 3, 2]).unwrap();
        assert_eq!(s.block_sum(&t).one_based(), vec![2, 1, 3, 5, 4]);
    }
}
