//! Injective partial maps on `{0..n-1}`.
//!
//! These are the elements of the symmetric inverse semigroup on an n-point
//! universe. Application is written on the RIGHT and composition reads left
//! to right: `x (fg) = ((x)f)g`. Composition-order bugs are the classic
//! failure mode here, so every multiplication in this crate sticks to that
//! one convention.
//!
//! Storage is canonical (pairs sorted by domain point), so structural
//! equality and hashing coincide with extensional equality.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PinjError {
    #[error("point {point} is out of range for universe size {universe}")]
    PointOutOfRange { point: usize, universe: usize },
    #[error("domain point {point} is mapped twice")]
    DuplicateDomainPoint { point: usize },
    #[error("image point {point} has two preimages")]
    NotInjective { point: usize },
    #[error("universe sizes differ: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },
    #[error("set is not closed under composition")]
    NotClosed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    universe: usize,
    pairs: Vec<(usize, usize)>,
}

impl PartialInjection {
    /// Builds a partial injection from (domain, image) pairs in any order.
    pub fn new(
        universe: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PinjError> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        for &(x, y) in &pairs {
            for point in [x, y] {
                if point >= universe {
                    return Err(PinjError::PointOutOfRange { point, universe });
                }
            }
        }
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(PinjError::DuplicateDomainPoint { point: w[0].0 });
            }
        }
        let mut images: Vec<usize> = pairs.iter().map(|&(_, y)| y).collect();
        images.sort_unstable();
        for w in images.windows(2) {
            if w[0] == w[1] {
                return Err(PinjError::NotInjective { point: w[0] });
            }
        }
        Ok(PartialInjection { universe, pairs })
    }

    pub fn empty(universe: usize) -> Self {
        PartialInjection {
            universe,
            pairs: Vec::new(),
        }
    }

    pub fn identity(universe: usize) -> Self {
        PartialInjection {
            universe,
            pairs: (0..universe).map(|x| (x, x)).collect(),
        }
    }

    /// The partial identity fixing exactly the given points.
    pub fn identity_on(universe: usize, points: &[usize]) -> Result<Self, PinjError> {
        Self::new(universe, points.iter().map(|&x| (x, x)))
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&x, |&(d, _)| d)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn domain(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(x, _)| x).collect()
    }

    /// Image points, ascending.
    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.pairs.iter().map(|&(_, y)| y).collect();
        im.sort_unstable();
        im
    }

    /// Left-to-right composition: x(fg) = ((x)f)g, defined where both steps are.
    pub fn compose(&self, other: &PartialInjection) -> Result<PartialInjection, PinjError> {
        if self.universe != other.universe {
            return Err(PinjError::UniverseMismatch {
                left: self.universe,
                right: other.universe,
            });
        }
        let pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .filter_map(|&(x, y)| other.apply(y).map(|z| (x, z)))
            .collect();
        // composition of injections is injective, pairs stay domain-sorted
        Ok(PartialInjection {
            universe: self.universe,
            pairs,
        })
    }

    /// Swaps domain and image pointwise.
    pub fn invert(&self) -> PartialInjection {
        let mut pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        PartialInjection {
            universe: self.universe,
            pairs,
        }
    }

    /// True iff every domain point is fixed.
    pub fn is_partial_identity(&self) -> bool {
        self.pairs.iter().all(|&(x, y)| x == y)
    }

    /// True iff ff = f. For partial injections this holds exactly for
    /// partial identities, which the tests check by enumeration.
    pub fn is_idempotent(&self) -> bool {
        self.compose(self).map(|ff| ff == *self).unwrap_or(false)
    }
}

impl fmt::Display for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{{")?;
        for (i, &(x, y)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        write!(f, "}}")
    }
}

/// Checks that every pair of idempotents in a compose-closed set commutes.
/// Rejects sets that are not closed under composition.
pub fn idempotents_commute(maps: &[PartialInjection]) -> Result<bool, PinjError> {
    if maps.is_empty() {
        return Ok(true);
    }
    let universe = maps[0].universe();
    for m in maps {
        if m.universe() != universe {
            return Err(PinjError::UniverseMismatch {
                left: universe,
                right: m.universe(),
            });
        }
    }
    let members: HashSet<&PartialInjection> = maps.iter().collect();
    for f in maps {
        for g in maps {
            if !members.contains(&f.compose(g)?) {
                return Err(PinjError::NotClosed);
            }
        }
    }
    let idempotents: Vec<&PartialInjection> = maps.iter().filter(|m| m.is_idempotent()).collect();
    for (i, e) in idempotents.iter().enumerate() {
        for f in &idempotents[i + 1..] {
            if e.compose(f)? != f.compose(e)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every partial injection on a universe of the given size. Grows factorially;
/// intended for exhaustive checks on tiny universes.
#[cfg(test)]
pub(crate) fn enumerate_all(universe: usize) -> Vec<PartialInjection> {
    let mut out = vec![PartialInjection::empty(universe)];
    // extend by one pair at a time, keeping pairs sorted by domain point
    let mut frontier = vec![PartialInjection::empty(universe)];
    while let Some(cur) = frontier.pop() {
        let next_dom = cur.pairs.last().map_or(0, |&(x, _)| x + 1);
        for x in next_dom..universe {
            for y in 0..universe {
                if cur.pairs.iter().any(|&(_, im)| im == y) {
                    continue;
                }
                let mut pairs = cur.pairs.clone();
                pairs.push((x, y));
                let ext = PartialInjection { universe, pairs };
                out.push(ext.clone());
                frontier.push(ext);
            }
        }
    }
    out
}
