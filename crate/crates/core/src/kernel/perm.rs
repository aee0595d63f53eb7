//! Permutations and the Koszul sign of graded reorderings.

use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation of {0, .., m-1}, stored as its image list: `images[i] = sigma(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition (i j) on m letters.
    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(i, j);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Function composition: `(self.compose(other))(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: (0..self.len())
                .map(|i| self.images[other.images[i]])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &s) in self.images.iter().enumerate() {
            images[s] = i;
        }
        Permutation { images }
    }

    /// Reorder a slice so that slot j receives `items[sigma(j)]`.
    pub fn select<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.len());
        self.images.iter().map(|&i| items[i].clone()).collect()
    }

    /// Ordinary sign (-1)^{inversions}.
    pub fn sign(&self) -> i8 {
        let mut inv = 0usize;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.images[i] > self.images[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of m letters.
    pub fn all(m: usize) -> impl Iterator<Item = Permutation> {
        (0..m).permutations(m).map(|images| Permutation { images })
    }

    /// Koszul sign of the reordering defined by
    /// `a_{sigma(1)} * ... * a_{sigma(m)} = eps(sigma, degrees) a_1 * ... * a_m`
    /// in a graded-commutative algebra where swapping neighbours of degrees
    /// p and q costs (-1)^{pq}.
    ///
    /// Computed by decomposing sigma into adjacent transpositions (bubble
    /// sorting the image sequence) and accumulating one factor per swap; the
    /// result does not depend on the decomposition.
    pub fn koszul_sign(&self, degrees: &[i64]) -> Result<i8> {
        if degrees.len() != self.len() {
            return Err(Error::ArityMismatch {
                expected: self.len(),
                got: degrees.len(),
            });
        }
        let mut seq = self.images.clone();
        let mut sign = 1i8;
        let m = seq.len();
        loop {
            let mut swapped = false;
            for i in 0..m.saturating_sub(1) {
                if seq[i] > seq[i + 1] {
                    if (degrees[seq[i]] * degrees[seq[i + 1]]) % 2 != 0 {
                        sign = -sign;
                    }
                    seq.swap(i, i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        Ok(sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_of_odd_elements() {
        let s = Permutation::transposition(2, 0, 1);
        assert_eq!(s.koszul_sign(&[1, 1]).unwrap(), -1);
    }

    #[test]
    fn transposition_of_even_elements() {
        let s = Permutation::transposition(2, 0, 1);
        assert_eq!(s.koszul_sign(&[2, 2]).unwrap(), 1);
    }

    #[test]
    fn identity_sign_is_one() {
        let s = Permutation::identity(4);
        assert_eq!(s.koszul_sign(&[0, 1, 2, 3]).unwrap(), 1);
        assert_eq!(s.sign(), 1);
    }

    #[test]
    fn sign_multiplicativity() {
        for s in Permutation::all(4) {
            for t in Permutation::all(4) {
                assert_eq!(s.compose(&t).sign(), s.sign() * t.sign());
            }
        }
    }

    #[test]
    fn koszul_cocycle_small() {
        // eps(tau . sigma, degs) = eps(sigma, sigma-pulled degs ordering) convention check:
        // with compose(s, t)(i) = s(t(i)), the identity reads
        // eps(s.compose(t), d) = eps(t, d pulled back along s) * eps(s, d).
        let degs = [1i64, 2, 1];
        for s in Permutation::all(3) {
            for t in Permutation::all(3) {
                let lhs = s.compose(&t).koszul_sign(&degs).unwrap();
                let pulled: Vec<i64> = (0..3).map(|j| degs[s.apply(j)]).collect();
                let rhs = t.koszul_sign(&pulled).unwrap() * s.koszul_sign(&degs).unwrap();
                assert_eq!(lhs, rhs, "s={:?} t={:?}", s, t);
            }
        }
    }

    #[test]
    fn invalid_images_rejected() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }
}
