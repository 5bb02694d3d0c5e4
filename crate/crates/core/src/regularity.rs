//! Idempotents, regular elements and inverse sets.
//!
//! Inverse sets come from an exhaustive scan over all candidates (x' is an
//! inverse of x iff xx'x = x and x'xx' = x'), not from Green structure.
//! That keeps them usable as an independent oracle for the block-group
//! cross-check.

use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityData {
    is_idempotent: Vec<bool>,
    is_regular: Vec<bool>,
    inverses: Vec<Vec<usize>>,
    unique_inverse: Vec<Option<usize>>,
}

impl RegularityData {
    pub fn is_idempotent(&self, x: usize) -> bool {
        self.is_idempotent[x]
    }

    pub fn is_regular(&self, x: usize) -> bool {
        self.is_regular[x]
    }

    /// All inverses of `x`, ascending.
    pub fn inverses(&self, x: usize) -> &[usize] {
        &self.inverses[x]
    }

    /// Set exactly when `x` has one inverse.
    pub fn unique_inverse(&self, x: usize) -> Option<usize> {
        self.unique_inverse[x]
    }

    pub fn regular_elements(&self) -> Vec<usize> {
        (0..self.is_regular.len())
            .filter(|&x| self.is_regular[x])
            .collect()
    }
}

pub(crate) fn compute(s: &FiniteSemigroup) -> RegularityData {
    let n = s.order();
    let is_idempotent: Vec<bool> = (0..n).map(|x| s.product(x, x) == x).collect();
    let mut inverses = Vec::with_capacity(n);
    for x in 0..n {
        let invs: Vec<usize> = (0..n)
            .filter(|&y| {
                s.product(s.product(x, y), x) == x && s.product(s.product(y, x), y) == y
            })
            .collect();
        inverses.push(invs);
    }
    let is_regular: Vec<bool> = inverses.iter().map(|invs| !invs.is_empty()).collect();
    let unique_inverse: Vec<Option<usize>> = inverses
        .iter()
        .map(|invs| if invs.len() == 1 { Some(invs[0]) } else { None })
        .collect();
    RegularityData {
        is_idempotent,
        is_regular,
        inverses,
        unique_inverse,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_inverses() {
        let g = FiniteSemigroup::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let reg = g.regularity();
        assert!(reg.is_regular(0) && reg.is_regular(1));
        assert_eq!(reg.inverses(0), &[0]);
        assert_eq!(reg.inverses(1), &[1]);
        assert_eq!(reg.unique_inverse(1), Some(1));
    }

    #[test]
    fn null_semigroup_regularity() {
        // a at 0, zero at 1; both candidates fail xyx = x for x = a
        let s = FiniteSemigroup::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        let reg = s.regularity();
        assert!(!reg.is_regular(0));
        assert!(reg.inverses(0).is_empty());
        assert_eq!(reg.inverses(1), &[1]);
        assert_eq!(reg.regular_elements(), vec![1]);
    }

    #[test]
    fn left_zero_elements_are_mutually_inverse() {
        // xy = x: aba = a and bab = b, so each of a, b inverts both
        let s = FiniteSemigroup::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap();
        let reg = s.regularity();
        assert!(reg.is_idempotent(0) && reg.is_idempotent(1));
        assert_eq!(reg.inverses(0), &[0, 1]);
        assert_eq!(reg.inverses(1), &[0, 1]);
        assert_eq!(reg.unique_inverse(0), None);
    }

    #[test]
    fn regular_iff_some_inverse() {
        let b2 = FiniteSemigroup::from_rows(vec![
            vec![0, 1, 4, 4, 4],
            vec![4, 4, 0, 1, 4],
            vec![2, 3, 4, 4, 4],
            vec![4, 4, 2, 3, 4],
            vec![4, 4, 4, 4, 4],
        ])
        .unwrap();
        let reg = b2.regularity();
        for x in b2.elements() {
            assert_eq!(reg.is_regular(x), !reg.inverses(x).is_empty());
            assert_eq!(reg.inverses(x).len(), 1);
        }
        // the matrix units invert transposed: e12⁻¹ = e21
        assert_eq!(reg.unique_inverse(1), Some(2));
        assert_eq!(reg.unique_inverse(2), Some(1));
    }
}
