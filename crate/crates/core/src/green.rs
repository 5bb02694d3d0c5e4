//! Green's relations and their quasi-orders.
//!
//! The quasi-orders are defined by ideal containment over S¹: s ≤_R t iff
//! sS¹ ⊆ tS¹, and dually for L. The identity of S¹ is virtual — membership
//! of s in tS¹ is tested as "s = t or s = tu for some u in S" — so no table
//! is ever rebuilt. D is the join of R and L (which equals J on finite
//! semigroups; `j_class_ids` computes the ideal-based J independently so the
//! equality can be checked).

use crate::semigroup::FiniteSemigroup;
use crate::util::{blocks_from_ids, canonical_ids_by, UnionFind};

/// Per-element Green class ids plus the ≤_R and ≤_L quasi-orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenSummary {
    order: usize,
    r_class_id: Vec<usize>,
    l_class_id: Vec<usize>,
    h_class_id: Vec<usize>,
    d_class_id: Vec<usize>,
    leq_r: Vec<bool>,
    leq_l: Vec<bool>,
}

impl GreenSummary {
    /// s ≤_R t, i.e. sS¹ ⊆ tS¹.
    pub fn leq_r(&self, s: usize, t: usize) -> bool {
        self.leq_r[s * self.order + t]
    }

    /// s ≤_L t, i.e. S¹s ⊆ S¹t.
    pub fn leq_l(&self, s: usize, t: usize) -> bool {
        self.leq_l[s * self.order + t]
    }

    pub fn r_class_id(&self, x: usize) -> usize {
        self.r_class_id[x]
    }

    pub fn l_class_id(&self, x: usize) -> usize {
        self.l_class_id[x]
    }

    pub fn h_class_id(&self, x: usize) -> usize {
        self.h_class_id[x]
    }

    pub fn d_class_id(&self, x: usize) -> usize {
        self.d_class_id[x]
    }

    pub fn r_classes(&self) -> Vec<Vec<usize>> {
        blocks_from_ids(&self.r_class_id)
    }

    pub fn l_classes(&self) -> Vec<Vec<usize>> {
        blocks_from_ids(&self.l_class_id)
    }

    pub fn h_classes(&self) -> Vec<Vec<usize>> {
        blocks_from_ids(&self.h_class_id)
    }

    pub fn d_classes(&self) -> Vec<Vec<usize>> {
        blocks_from_ids(&self.d_class_id)
    }
}

pub(crate) fn compute(s: &FiniteSemigroup) -> GreenSummary {
    let n = s.order();
    let mut leq_r = vec![false; n * n];
    let mut leq_l = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            // a ∈ bS¹ / a ∈ S¹b, with the virtual identity covering a = b
            leq_r[a * n + b] = a == b || (0..n).any(|u| s.product(b, u) == a);
            leq_l[a * n + b] = a == b || (0..n).any(|u| s.product(u, b) == a);
        }
    }
    let r_class_id = canonical_ids_by(n, |a, b| leq_r[a * n + b] && leq_r[b * n + a]);
    let l_class_id = canonical_ids_by(n, |a, b| leq_l[a * n + b] && leq_l[b * n + a]);
    let h_class_id = canonical_ids_by(n, |a, b| {
        r_class_id[a] == r_class_id[b] && l_class_id[a] == l_class_id[b]
    });
    let mut uf = UnionFind::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if r_class_id[a] == r_class_id[b] || l_class_id[a] == l_class_id[b] {
                uf.union(a, b);
            }
        }
    }
    let d_class_id = uf.canonical_ids();
    GreenSummary {
        order: n,
        r_class_id,
        l_class_id,
        h_class_id,
        d_class_id,
        leq_r,
        leq_l,
    }
}

/// J-class ids computed directly from two-sided principal ideals S¹sS¹.
/// On finite semigroups this must coincide with the D classes.
pub fn j_class_ids(s: &FiniteSemigroup) -> Vec<usize> {
    let n = s.order();
    let mut ideal = vec![false; n * n]; // ideal[t*n + x]: x ∈ S¹tS¹
    for t in 0..n {
        let row = &mut ideal[t * n..(t + 1) * n];
        row[t] = true;
        for u in 0..n {
            row[s.product(t, u)] = true;
            row[s.product(u, t)] = true;
            for v in 0..n {
                row[s.product(s.product(u, t), v)] = true;
            }
        }
    }
    canonical_ids_by(n, |a, b| ideal[a * n + b] && ideal[b * n + a])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn null2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap()
    }

    fn left_zero2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap()
    }

    #[test]
    fn groups_are_one_class() {
        let g = z2();
        let green = g.green();
        assert_eq!(green.r_classes(), vec![vec![0, 1]]);
        assert_eq!(green.l_classes(), vec![vec![0, 1]]);
        assert_eq!(green.d_classes(), vec![vec![0, 1]]);
    }

    #[test]
    fn left_zero_has_singleton_r_and_joint_l() {
        let s = left_zero2();
        let green = s.green();
        assert_eq!(green.r_classes(), vec![vec![0], vec![1]]);
        assert_eq!(green.l_classes(), vec![vec![0, 1]]);
        assert_eq!(green.d_classes(), vec![vec![0, 1]]);
    }

    #[test]
    fn null_semigroup_is_all_singletons() {
        let s = null2();
        let green = s.green();
        assert_eq!(green.r_classes(), vec![vec![0], vec![1]]);
        assert_eq!(green.l_classes(), vec![vec![0], vec![1]]);
        assert_eq!(green.d_classes(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn quasi_order_is_reflexive_and_transitive() {
        for s in [z2(), null2(), left_zero2()] {
            let green = s.green();
            let n = s.order();
            for a in 0..n {
                assert!(green.leq_r(a, a));
                assert!(green.leq_l(a, a));
                for b in 0..n {
                    for c in 0..n {
                        if green.leq_r(a, b) && green.leq_r(b, c) {
                            assert!(green.leq_r(a, c));
                        }
                        if green.leq_l(a, b) && green.leq_l(b, c) {
                            assert!(green.leq_l(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn h_refines_r_and_l_refine_d() {
        for s in [z2(), null2(), left_zero2()] {
            let green = s.green();
            let n = s.order();
            for a in 0..n {
                for b in 0..n {
                    let same_h = green.h_class_id(a) == green.h_class_id(b);
                    let same_r = green.r_class_id(a) == green.r_class_id(b);
                    let same_l = green.l_class_id(a) == green.l_class_id(b);
                    let same_d = green.d_class_id(a) == green.d_class_id(b);
                    if same_h {
                        assert!(same_r && same_l);
                    }
                    if same_r || same_l {
                        assert!(same_d);
                    }
                }
            }
        }
    }

    #[test]
    fn d_equals_ideal_based_j() {
        for s in [z2(), null2(), left_zero2()] {
            let d: Vec<usize> = s.elements().map(|x| s.green().d_class_id(x)).collect();
            assert_eq!(d, j_class_ids(&s));
        }
    }
}
