//! Finite semigroups given by their multiplication table.
//!
//! Elements are the indices `0..n`; labels, when present, are purely
//! presentational. Every public constructor validates the table, including
//! the full associativity scan, so a constructed [`FiniteSemigroup`] is
//! always a genuine semigroup. Green's relations and regularity data are
//! computed once on first use and cached; the value is immutable afterwards,
//! so it can be shared freely across threads.

use std::sync::OnceLock;

use thiserror::Error;

use crate::green::{self, GreenSummary};
use crate::regularity::{self, RegularityData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one element")]
    Empty,
    #[error("table row {row} has {got} entries, expected {expected}")]
    BadShape {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("table entry at row {row}, column {col} is {value}, out of range for order {order}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not associative: ({i}*{j})*{k} differs from {i}*({j}*{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("{got} labels supplied for a semigroup of order {order}")]
    BadLabels { order: usize, got: usize },
    #[error("element {element} is out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("operation is only defined on block-groups")]
    NotBlockGroup,
    #[error("element {element} is not idempotent")]
    NotIdempotent { element: usize },
    #[error("internal consistency check failed: {0}")]
    InternalInconsistency(String),
}

/// Which kind of Green class witnessed a block-group failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    R,
    L,
}

impl std::fmt::Display for ClassKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassKind::R => write!(f, "R"),
            ClassKind::L => write!(f, "L"),
        }
    }
}

/// Two distinct idempotents sharing an R-class or an L-class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdempotentClash {
    pub kind: ClassKind,
    pub first: usize,
    pub second: usize,
}

/// Outcome of the block-group test, with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGroupCheck {
    pub holds: bool,
    pub witness: Option<IdempotentClash>,
}

/// A finite semigroup stored as a flat row-major multiplication table.
#[derive(Debug)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    has_adjoined_identity: bool,
    labels: Option<Vec<String>>,
    green: OnceLock<GreenSummary>,
    regularity: OnceLock<RegularityData>,
}

impl Clone for FiniteSemigroup {
    fn clone(&self) -> Self {
        FiniteSemigroup {
            order: self.order,
            table: self.table.clone(),
            has_adjoined_identity: self.has_adjoined_identity,
            labels: self.labels.clone(),
            green: self.green.clone(),
            regularity: self.regularity.clone(),
        }
    }
}

impl PartialEq for FiniteSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.table == other.table
            && self.has_adjoined_identity == other.has_adjoined_identity
            && self.labels == other.labels
    }
}

impl Eq for FiniteSemigroup {}

fn validate_table(order: usize, table: &[usize]) -> Result<(), SemigroupError> {
    if order == 0 {
        return Err(SemigroupError::Empty);
    }
    debug_assert_eq!(table.len(), order * order);
    for i in 0..order {
        for j in 0..order {
            let v = table[i * order + j];
            if v >= order {
                return Err(SemigroupError::IndexOutOfRange {
                    row: i,
                    col: j,
                    value: v,
                    order,
                });
            }
        }
    }
    let at = |i: usize, j: usize| table[i * order + j];
    for i in 0..order {
        for j in 0..order {
            for k in 0..order {
                if at(at(i, j), k) != at(i, at(j, k)) {
                    return Err(SemigroupError::NotAssociative { i, j, k });
                }
            }
        }
    }
    Ok(())
}

impl FiniteSemigroup {
    /// Loads a semigroup from explicit rows; the order is the row count.
    /// Rejects ragged grids, out-of-range entries and non-associative tables
    /// (with a witnessing triple).
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, SemigroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(SemigroupError::BadShape {
                    row: i,
                    expected: order,
                    got: row.len(),
                });
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(order, table)
    }

    /// Loads a semigroup from a flat row-major table of length `order²`.
    pub fn from_flat(order: usize, table: Vec<usize>) -> Result<Self, SemigroupError> {
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        if table.len() != order * order {
            return Err(SemigroupError::BadShape {
                row: 0,
                expected: order * order,
                got: table.len(),
            });
        }
        validate_table(order, &table)?;
        Ok(FiniteSemigroup {
            order,
            table,
            has_adjoined_identity: false,
            labels: None,
            green: OnceLock::new(),
            regularity: OnceLock::new(),
        })
    }

    /// Constructor for tables that are associative by construction
    /// (transformation closures). Skips the cubic scan in release builds.
    pub(crate) fn from_flat_trusted(order: usize, table: Vec<usize>) -> Self {
        debug_assert!(validate_table(order, &table).is_ok());
        FiniteSemigroup {
            order,
            table,
            has_adjoined_identity: false,
            labels: None,
            green: OnceLock::new(),
            regularity: OnceLock::new(),
        }
    }

    /// Attaches presentation labels, one per element.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SemigroupError> {
        if labels.len() != self.order {
            return Err(SemigroupError::BadLabels {
                order: self.order,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The label of an element, or its index rendered as text.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn has_adjoined_identity(&self) -> bool {
        self.has_adjoined_identity
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.order && j < self.order);
        self.table[i * self.order + j]
    }

    /// x^k for k ≥ 1.
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn power(&self, x: usize, k: usize) -> usize {
        let mut acc = x;
        for _ in 1..k {
            acc = self.product(acc, x);
        }
        acc
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }

    /// The two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| {
            (0..self.order).all(|x| self.product(e, x) == x && self.product(x, e) == x)
        })
    }

    /// The two-sided zero, if one exists.
    pub fn zero(&self) -> Option<usize> {
        (0..self.order).find(|&z| {
            (0..self.order).all(|x| self.product(z, x) == z && self.product(x, z) == z)
        })
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.product(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&e| self.is_idempotent(e)).collect()
    }

    /// Returns the monoid S¹: `self` unchanged when an identity already
    /// exists, otherwise a copy of order n+1 with the identity at the last
    /// index and the adjoined flag set.
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        if self.identity().is_some() {
            return self.clone();
        }
        let n = self.order;
        let m = n + 1;
        let mut table = vec![0usize; m * m];
        for i in 0..n {
            for j in 0..n {
                table[i * m + j] = self.table[i * n + j];
            }
        }
        for i in 0..m {
            table[i * m + n] = i;
            table[n * m + i] = i;
        }
        let mut extended =
            FiniteSemigroup::from_flat(m, table).expect("adjoining an identity stays associative");
        extended.has_adjoined_identity = true;
        if let Some(ls) = &self.labels {
            let mut ls = ls.clone();
            ls.push("1".to_string());
            extended.labels = Some(ls);
        }
        extended
    }

    /// The unique idempotent power of `x`.
    ///
    /// Squares `x` until the exponent reaches the order (landing inside the
    /// cyclic part of the subsemigroup generated by `x`), then walks that
    /// cycle to its group identity.
    pub fn omega(&self, x: usize) -> usize {
        debug_assert!(x < self.order);
        let mut y = x;
        let mut exp = 1usize;
        while exp < self.order {
            y = self.product(y, y);
            exp *= 2;
        }
        let mut z = y;
        loop {
            let next = self.product(z, y);
            if next == y {
                return z;
            }
            z = next;
        }
    }

    /// Index and period of the monogenic subsemigroup generated by `x`:
    /// the smallest i with x^i in the cycle, and the cycle length. Kept
    /// separate from `omega`, which only ever exposes the idempotent power.
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn index_period(&self, x: usize) -> (usize, usize) {
        let mut seen: Vec<usize> = Vec::new();
        let mut cur = x;
        loop {
            if let Some(pos) = seen.iter().position(|&p| p == cur) {
                let index = pos + 1;
                let period = seen.len() + 1 - index;
                return (index, period);
            }
            seen.push(cur);
            cur = self.product(cur, x);
        }
    }

    /// Green's relation data, computed once and cached.
    pub fn green(&self) -> &GreenSummary {
        self.green.get_or_init(|| green::compute(self))
    }

    /// Idempotence, regularity and inverse sets, computed once and cached.
    /// Inverse sets come from an exhaustive scan so they can serve as an
    /// independent cross-check for the block-group test.
    pub fn regularity(&self) -> &RegularityData {
        self.regularity.get_or_init(|| regularity::compute(self))
    }

    /// Tests the block-group property two ways: no R-class or L-class holds
    /// two idempotents, and no element has two inverses. The criteria must
    /// agree; a mismatch is reported as an internal inconsistency.
    pub fn is_block_group(&self) -> Result<BlockGroupCheck, SemigroupError> {
        let reg = self.regularity();
        let green = self.green();
        let idempotents = self.idempotents();
        let mut witness = None;
        'scan: for (pos, &e) in idempotents.iter().enumerate() {
            for &f in &idempotents[pos + 1..] {
                if green.r_class_id(e) == green.r_class_id(f) {
                    witness = Some(IdempotentClash {
                        kind: ClassKind::R,
                        first: e,
                        second: f,
                    });
                    break 'scan;
                }
                if green.l_class_id(e) == green.l_class_id(f) {
                    witness = Some(IdempotentClash {
                        kind: ClassKind::L,
                        first: e,
                        second: f,
                    });
                    break 'scan;
                }
            }
        }
        let by_classes = witness.is_none();
        let by_inverses = (0..self.order).all(|x| reg.inverses(x).len() <= 1);
        if by_classes != by_inverses {
            return Err(SemigroupError::InternalInconsistency(format!(
                "idempotent-per-class criterion says {by_classes}, \
                 unique-inverse criterion says {by_inverses}"
            )));
        }
        Ok(BlockGroupCheck {
            holds: by_classes,
            witness,
        })
    }

    /// The natural partial order on idempotents: e ≤ f iff e = ef = fe.
    pub fn natural_leq(&self, e: usize, f: usize) -> bool {
        self.product(e, f) == e && self.product(f, e) == e
    }

    /// The meet (ef)^ω of two idempotents of a block-group.
    pub fn idempotent_meet(&self, e: usize, f: usize) -> Result<usize, SemigroupError> {
        for x in [e, f] {
            if x >= self.order {
                return Err(SemigroupError::ElementOutOfRange {
                    element: x,
                    order: self.order,
                });
            }
        }
        if !self.is_block_group()?.holds {
            return Err(SemigroupError::NotBlockGroup);
        }
        for x in [e, f] {
            if !self.is_idempotent(x) {
                return Err(SemigroupError::NotIdempotent { element: x });
            }
        }
        Ok(self.omega(self.product(e, f)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    // {a, z} with every product z; a at index 0, zero at index 1.
    pub(crate) fn null2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap()
    }

    pub(crate) fn left_zero2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap()
    }

    // top (identity) at 0, bottom (zero) at 1
    pub(crate) fn chain2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 1], vec![1, 1]]).unwrap()
    }

    // Matrix units over 2 indices plus zero: 0=e11, 1=e12, 2=e21, 3=e22, 4=z.
    pub(crate) fn b2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![
            vec![0, 1, 4, 4, 4],
            vec![4, 4, 0, 1, 4],
            vec![2, 3, 4, 4, 4],
            vec![4, 4, 2, 3, 4],
            vec![4, 4, 4, 4, 4],
        ])
        .unwrap()
    }

    #[test]
    fn loads_trivial_and_z2() {
        let t = FiniteSemigroup::from_rows(vec![vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.identity(), Some(0));
        let g = z2();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), Some(0));
        assert_eq!(g.product(1, 1), 0);
    }

    #[test]
    fn rejects_non_associative_with_witness() {
        // hand-scan of all 8 triples: (0,0,1) is the first failure
        let err = FiniteSemigroup::from_rows(vec![vec![1, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(err, SemigroupError::NotAssociative { i: 0, j: 0, k: 1 });
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let err = FiniteSemigroup::from_rows(vec![vec![0, 2], vec![1, 0]]).unwrap_err();
        assert_eq!(
            err,
            SemigroupError::IndexOutOfRange {
                row: 0,
                col: 1,
                value: 2,
                order: 2
            }
        );
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = FiniteSemigroup::from_rows(vec![vec![0, 0], vec![1]]).unwrap_err();
        assert_eq!(
            err,
            SemigroupError::BadShape {
                row: 1,
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn adjoin_identity_when_absent() {
        let s = null2();
        assert_eq!(s.identity(), None);
        let m = s.adjoin_identity();
        assert_eq!(m.order(), 3);
        assert!(m.has_adjoined_identity());
        assert_eq!(m.identity(), Some(2));
        // old products preserved
        assert_eq!(m.product(0, 0), 1);
    }

    #[test]
    fn adjoin_identity_is_noop_on_monoids() {
        let t = FiniteSemigroup::from_rows(vec![vec![0]]).unwrap();
        assert_eq!(t.adjoin_identity(), t);
        let g = z2();
        assert_eq!(g.adjoin_identity(), g);
        assert!(!g.adjoin_identity().has_adjoined_identity());
    }

    #[test]
    fn omega_examples() {
        assert_eq!(z2().omega(1), 0);
        // monogenic a³=a²: a at 0, a² at 1
        assert_eq!(null2().omega(0), 1);
        // idempotents are fixed
        let c = chain2();
        assert_eq!(c.omega(0), 0);
        assert_eq!(c.omega(1), 1);
    }

    #[test]
    fn omega_agrees_with_index_period() {
        for s in [z2(), null2(), left_zero2(), chain2(), b2()] {
            for x in s.elements() {
                let (index, period) = s.index_period(x);
                // the idempotent exponent is the multiple of the period in [index, index+period)
                let mut e = period;
                while e < index {
                    e += period;
                }
                assert_eq!(s.omega(x), s.power(x, e));
                let w = s.omega(x);
                assert!(s.is_idempotent(w));
            }
        }
    }

    #[test]
    fn index_period_of_monogenic() {
        assert_eq!(null2().index_period(0), (2, 1));
        assert_eq!(z2().index_period(1), (1, 2));
    }

    #[test]
    fn block_group_verdicts() {
        assert!(z2().is_block_group().unwrap().holds);
        assert!(b2().is_block_group().unwrap().holds);
        let check = left_zero2().is_block_group().unwrap();
        assert!(!check.holds);
        assert_eq!(
            check.witness,
            Some(IdempotentClash {
                kind: ClassKind::L,
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn idempotent_meet_examples() {
        let c = chain2();
        assert_eq!(c.idempotent_meet(0, 0).unwrap(), 0);
        assert_eq!(c.idempotent_meet(0, 1).unwrap(), 1);
        // B₂: e11 ∧ e22 = (e11·e22)^ω = z^ω = z
        assert_eq!(b2().idempotent_meet(0, 3).unwrap(), 4);
    }

    #[test]
    fn idempotent_meet_rejections() {
        assert_eq!(
            left_zero2().idempotent_meet(0, 1).unwrap_err(),
            SemigroupError::NotBlockGroup
        );
        assert_eq!(
            z2().idempotent_meet(0, 1).unwrap_err(),
            SemigroupError::NotIdempotent { element: 1 }
        );
    }

    #[test]
    fn zero_detection() {
        assert_eq!(null2().zero(), Some(1));
        assert_eq!(z2().zero(), None);
        assert_eq!(chain2().zero(), Some(1));
    }

    #[test]
    fn labels_are_presentational() {
        let s = null2()
            .with_labels(vec!["a".into(), "z".into()])
            .unwrap();
        assert_eq!(s.label(0), "a");
        let bare = null2();
        assert_eq!(bare.label(1), "1");
        assert!(matches!(
            null2().with_labels(vec!["a".into()]),
            Err(SemigroupError::BadLabels { order: 2, got: 1 })
        ));
    }
}
