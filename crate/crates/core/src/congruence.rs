//! Congruences of a finite semigroup, their lattice, and brute-force
//! oracles for the largest regular-separating and idempotent-separating
//! congruences.
//!
//! The lattice is generated as the join-closure of all principal
//! congruences plus the identity — every congruence is the join of the
//! principal congruences of its pairs — rather than by filtering all set
//! partitions, whose number explodes. Full enumeration is still exponential
//! in spirit, so it is capped by order (default 8).

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::semigroup::FiniteSemigroup;
use crate::util::{blocks_from_ids, UnionFind};

/// Order cap for full congruence-lattice enumeration.
pub const DEFAULT_ORDER_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error(
        "order {order} exceeds the congruence-enumeration cap {cap}; \
         raise the cap to enumerate anyway"
    )]
    OrderTooLarge { order: usize, cap: usize },
    #[error("blocks do not partition 0..{order}: {reason}")]
    MalformedPartition { order: usize, reason: String },
}

/// A partition of `0..n` in canonical form: the class of element 0 has
/// id 0, the next class discovered (scanning upward) has id 1, and so on.
/// Compatibility with multiplication is NOT implied; see [`is_congruence`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    class_id: Vec<usize>,
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence {
            class_id: (0..n).collect(),
        }
    }

    pub fn universal(n: usize) -> Self {
        Congruence {
            class_id: vec![0; n],
        }
    }

    /// Canonicalizes arbitrary class ids (first occurrence wins).
    pub fn from_class_ids(ids: &[usize]) -> Self {
        let mut remap: Vec<Option<usize>> = vec![None; ids.len()];
        let mut class_id = Vec::with_capacity(ids.len());
        let mut next = 0;
        for &raw in ids {
            let slot = remap
                .get_mut(raw)
                .expect("class ids must be < element count");
            let id = *slot.get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            class_id.push(id);
        }
        Congruence { class_id }
    }

    /// Builds a partition from explicit blocks, validating cover and
    /// disjointness.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, CongruenceError> {
        let mut ids = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n {
                    return Err(CongruenceError::MalformedPartition {
                        order: n,
                        reason: format!("element {x} out of range"),
                    });
                }
                if ids[x] != usize::MAX {
                    return Err(CongruenceError::MalformedPartition {
                        order: n,
                        reason: format!("element {x} appears in two blocks"),
                    });
                }
                ids[x] = b;
            }
        }
        if let Some(x) = ids.iter().position(|&id| id == usize::MAX) {
            return Err(CongruenceError::MalformedPartition {
                order: n,
                reason: format!("element {x} is missing"),
            });
        }
        Ok(Self::from_class_ids(&ids))
    }

    pub fn order(&self) -> usize {
        self.class_id.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_id[x]
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_id[a] == self.class_id[b]
    }

    pub fn num_classes(&self) -> usize {
        self.class_id.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.order()
    }

    pub fn is_universal(&self) -> bool {
        self.num_classes() <= 1
    }

    /// Blocks ordered by class id, members ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        blocks_from_ids(&self.class_id)
    }

    /// True iff `self` is finer than (or equal to) `coarser`: every class
    /// of `self` sits inside one class of `coarser`.
    pub fn refines(&self, coarser: &Congruence) -> bool {
        debug_assert_eq!(self.order(), coarser.order());
        let mut image: Vec<Option<usize>> = vec![None; self.num_classes()];
        for x in 0..self.order() {
            match image[self.class_id[x]] {
                None => image[self.class_id[x]] = Some(coarser.class_id[x]),
                Some(c) if c == coarser.class_id[x] => {}
                Some(_) => return false,
            }
        }
        true
    }

    /// Common refinement; the meet in the congruence lattice.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        debug_assert_eq!(self.order(), other.order());
        let n = self.order();
        let mut key_to_id: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let mut ids = Vec::with_capacity(n);
        for x in 0..n {
            let key = (self.class_id[x], other.class_id[x]);
            let next = key_to_id.len();
            ids.push(*key_to_id.entry(key).or_insert(next));
        }
        Congruence { class_id: ids }
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Two-sided compatibility of a partition with the multiplication.
pub fn is_congruence(s: &FiniteSemigroup, c: &Congruence) -> bool {
    let n = s.order();
    if c.order() != n {
        return false;
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if !c.same(a, b) {
                continue;
            }
            for x in 0..n {
                if !c.same(s.product(x, a), s.product(x, b))
                    || !c.same(s.product(a, x), s.product(b, x))
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Congruence closure of a set of seed pairs: a worklist repeatedly merges
/// the left and right translates of every newly merged pair until fixpoint.
fn congruence_closure(
    s: &FiniteSemigroup,
    seeds: impl IntoIterator<Item = (usize, usize)>,
) -> Congruence {
    let n = s.order();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = seeds.into_iter().collect();
    while let Some((a, b)) = work.pop() {
        if !uf.union(a, b) {
            continue;
        }
        for c in 0..n {
            work.push((s.product(c, a), s.product(c, b)));
            work.push((s.product(a, c), s.product(b, c)));
        }
    }
    Congruence::from_class_ids(&uf.canonical_ids())
}

/// The smallest congruence identifying `a` and `b`.
pub fn principal_congruence(s: &FiniteSemigroup, a: usize, b: usize) -> Congruence {
    congruence_closure(s, [(a, b)])
}

/// Join in the congruence lattice: the closure of both sets of merges
/// (merging may cascade, so the worklist runs again).
pub fn join(s: &FiniteSemigroup, c1: &Congruence, c2: &Congruence) -> Congruence {
    let mut seeds = Vec::new();
    for c in [c1, c2] {
        for block in c.blocks() {
            for w in block.windows(2) {
                seeds.push((w[0], w[1]));
            }
        }
    }
    congruence_closure(s, seeds)
}

/// The full congruence lattice, enumerated as the join-closure of all
/// principal congruences (plus the identity). Capped by order.
pub fn all_congruences_with_cap(
    s: &FiniteSemigroup,
    cap: usize,
) -> Result<Vec<Congruence>, CongruenceError> {
    let n = s.order();
    if n > cap {
        return Err(CongruenceError::OrderTooLarge { order: n, cap });
    }
    let mut set: HashSet<Congruence> = HashSet::new();
    set.insert(Congruence::identity(n));
    let mut frontier: Vec<Congruence> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let p = principal_congruence(s, a, b);
            if set.insert(p.clone()) {
                frontier.push(p);
            }
        }
    }
    while let Some(c) = frontier.pop() {
        let snapshot: Vec<Congruence> = set.iter().cloned().collect();
        for d in snapshot {
            let j = join(s, &c, &d);
            if set.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut all: Vec<Congruence> = set.into_iter().collect();
    all.sort_by(|a, b| a.class_id.cmp(&b.class_id));
    Ok(all)
}

/// [`all_congruences_with_cap`] at the default cap.
pub fn all_congruences(s: &FiniteSemigroup) -> Result<Vec<Congruence>, CongruenceError> {
    all_congruences_with_cap(s, DEFAULT_ORDER_CAP)
}

/// True iff every class holds at most one regular element.
pub fn separates_regular(s: &FiniteSemigroup, c: &Congruence) -> bool {
    let reg = s.regularity();
    let mut seen = vec![false; c.num_classes()];
    for x in s.elements() {
        if reg.is_regular(x) {
            let cls = c.class_of(x);
            if seen[cls] {
                return false;
            }
            seen[cls] = true;
        }
    }
    true
}

/// True iff every class holds at most one idempotent.
pub fn separates_idempotents(s: &FiniteSemigroup, c: &Congruence) -> bool {
    let mut seen = vec![false; c.num_classes()];
    for e in s.idempotents() {
        let cls = c.class_of(e);
        if seen[cls] {
            return false;
        }
        seen[cls] = true;
    }
    true
}

/// Result of a largest-congruence search: the unique maximum when one
/// exists, otherwise the antichain of maximal candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Unique(Congruence),
    Ambiguous(Vec<Congruence>),
}

impl OracleOutcome {
    pub fn unique(&self) -> Option<&Congruence> {
        match self {
            OracleOutcome::Unique(c) => Some(c),
            OracleOutcome::Ambiguous(_) => None,
        }
    }
}

fn largest_by(
    s: &FiniteSemigroup,
    cap: usize,
    keep: impl Fn(&FiniteSemigroup, &Congruence) -> bool,
) -> Result<OracleOutcome, CongruenceError> {
    let candidates: Vec<Congruence> = all_congruences_with_cap(s, cap)?
        .into_iter()
        .filter(|c| keep(s, c))
        .collect();
    // the identity congruence always separates, so candidates is nonempty
    let maximal: Vec<Congruence> = candidates
        .iter()
        .filter(|c| {
            candidates
                .iter()
                .all(|d| *c == d || !c.refines(d) || d.refines(c))
        })
        .cloned()
        .collect();
    // in a finite poset a unique maximal element is the maximum
    if maximal.len() == 1 {
        Ok(OracleOutcome::Unique(maximal.into_iter().next().unwrap()))
    } else {
        Ok(OracleOutcome::Ambiguous(maximal))
    }
}

/// Coarsest congruence whose classes hold at most one regular element,
/// by exhaustive filtering of the lattice.
pub fn largest_separating_oracle(
    s: &FiniteSemigroup,
    cap: usize,
) -> Result<OracleOutcome, CongruenceError> {
    largest_by(s, cap, separates_regular)
}

/// Coarsest congruence whose classes hold at most one idempotent.
pub fn largest_idempotent_separating_oracle(
    s: &FiniteSemigroup,
    cap: usize,
) -> Result<OracleOutcome, CongruenceError> {
    largest_by(s, cap, separates_idempotents)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn z3() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap()
    }

    fn null2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap()
    }

    fn chain2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 1], vec![1, 1]]).unwrap()
    }

    fn b2() -> FiniteSemigroup {
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
    fn canonical_form_is_first_occurrence() {
        let c = Congruence::from_class_ids(&[2, 0, 2, 1]);
        assert_eq!(c, Congruence::from_class_ids(&[0, 1, 0, 2]));
        assert_eq!(c.blocks(), vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(c.to_string(), "{{0,2},{1},{3}}");
    }

    #[test]
    fn from_blocks_validates() {
        assert!(Congruence::from_blocks(3, &[vec![0, 2], vec![1]]).is_ok());
        assert!(matches!(
            Congruence::from_blocks(3, &[vec![0], vec![1]]),
            Err(CongruenceError::MalformedPartition { .. })
        ));
        assert!(matches!(
            Congruence::from_blocks(3, &[vec![0, 1], vec![1, 2]]),
            Err(CongruenceError::MalformedPartition { .. })
        ));
        assert!(matches!(
            Congruence::from_blocks(2, &[vec![0, 1, 5]]),
            Err(CongruenceError::MalformedPartition { .. })
        ));
    }

    #[test]
    fn identity_and_universal_are_congruences() {
        for s in [z2(), null2(), chain2(), b2()] {
            assert!(is_congruence(&s, &Congruence::identity(s.order())));
            assert!(is_congruence(&s, &Congruence::universal(s.order())));
        }
    }

    #[test]
    fn non_congruence_partition_is_rejected() {
        // {0,1},{2} on Z₃: 2+0=2 and 2+1=0 land in different classes
        let c = Congruence::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(!is_congruence(&z3(), &c));
    }

    #[test]
    fn principal_examples() {
        assert_eq!(
            principal_congruence(&z2(), 0, 0),
            Congruence::identity(2)
        );
        assert_eq!(
            principal_congruence(&null2(), 0, 1),
            Congruence::universal(2)
        );
        // merging top and bottom of the 2-chain forces everything together
        assert_eq!(
            principal_congruence(&chain2(), 0, 1),
            Congruence::universal(2)
        );
    }

    #[test]
    fn lattices_of_small_semigroups() {
        let trivial = FiniteSemigroup::from_rows(vec![vec![0]]).unwrap();
        assert_eq!(
            all_congruences(&trivial).unwrap(),
            vec![Congruence::identity(1)]
        );
        for s in [z2(), chain2()] {
            let all = all_congruences(&s).unwrap();
            assert_eq!(all.len(), 2);
            assert!(all.contains(&Congruence::identity(2)));
            assert!(all.contains(&Congruence::universal(2)));
        }
        // Z₃ is simple
        assert_eq!(all_congruences(&z3()).unwrap().len(), 2);
    }

    #[test]
    fn lattice_members_are_congruences_without_duplicates() {
        for s in [z3(), b2()] {
            let all = all_congruences(&s).unwrap();
            let dedup: HashSet<&Congruence> = all.iter().collect();
            assert_eq!(dedup.len(), all.len());
            for c in &all {
                assert!(is_congruence(&s, c));
            }
        }
    }

    #[test]
    fn lattice_is_closed_under_join_and_meet() {
        for s in [chain2(), z3(), null2(), b2()] {
            let all = all_congruences(&s).unwrap();
            for c in &all {
                for d in &all {
                    assert!(all.contains(&join(&s, c, d)));
                    let m = c.meet(d);
                    assert!(is_congruence(&s, &m));
                    assert!(all.contains(&m));
                }
            }
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        let n = DEFAULT_ORDER_CAP + 1;
        let mut table = vec![vec![n - 1; n]; n];
        table[n - 1] = vec![n - 1; n];
        let big_null = FiniteSemigroup::from_rows(table).unwrap();
        assert_eq!(
            all_congruences(&big_null).unwrap_err(),
            CongruenceError::OrderTooLarge { order: n, cap: 8 }
        );
        assert!(all_congruences_with_cap(&big_null, n).is_ok());
    }

    #[test]
    fn separation_predicates() {
        let s = z2();
        assert!(separates_regular(&s, &Congruence::identity(2)));
        assert!(!separates_regular(&s, &Congruence::universal(2)));
        // null2 has a single regular element, so even the universal
        // congruence separates
        assert!(separates_regular(&null2(), &Congruence::universal(2)));
        assert!(separates_idempotents(&z2(), &Congruence::universal(2)));
        assert!(!separates_idempotents(&chain2(), &Congruence::universal(2)));
    }

    #[test]
    fn largest_separating_examples() {
        assert_eq!(
            largest_separating_oracle(&z2(), 8).unwrap(),
            OracleOutcome::Unique(Congruence::identity(2))
        );
        assert_eq!(
            largest_separating_oracle(&null2(), 8).unwrap(),
            OracleOutcome::Unique(Congruence::universal(2))
        );
    }

    #[test]
    fn largest_idempotent_separating_examples() {
        assert_eq!(
            largest_idempotent_separating_oracle(&z2(), 8).unwrap(),
            OracleOutcome::Unique(Congruence::universal(2))
        );
        assert_eq!(
            largest_idempotent_separating_oracle(&chain2(), 8).unwrap(),
            OracleOutcome::Unique(Congruence::identity(2))
        );
        // B₂ is fundamental
        assert_eq!(
            largest_idempotent_separating_oracle(&b2(), 8).unwrap(),
            OracleOutcome::Unique(Congruence::identity(5))
        );
    }

    #[test]
    fn refinement_order() {
        let id = Congruence::identity(3);
        let univ = Congruence::universal(3);
        let mid = Congruence::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(id.refines(&mid) && mid.refines(&univ) && id.refines(&univ));
        assert!(!univ.refines(&mid) && !mid.refines(&id));
        let other = Congruence::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
        assert!(!mid.refines(&other) && !other.refines(&mid));
    }
}
