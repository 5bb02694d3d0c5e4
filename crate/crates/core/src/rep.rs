//! Partial-injection representations of block-groups.
//!
//! For an element s of a block-group, `vp_map` realizes the translation
//! x ↦ xs as a partial injection with domain D(s) and image I(s), and
//! `munn_map` realizes e ↦ (es)⁻¹(es) on the idempotents R(s) → L(s).
//! The family builders verify multiplicativity pair by pair, compute the
//! kernel congruence from map fibers, and check the separation properties
//! (injectivity on regular elements, respectively idempotent separation),
//! reporting a witnessed error on any violation.
//!
//! The four domain sets are
//!   R(s) = { e idempotent | e ≤_R s },  L(s) = { e idempotent | e ≤_L s },
//!   D(s) = ∪ { Se | e ∈ R(s) },         I(s) = ∪ { Se | e ∈ L(s) },
//! where both D(s) and I(s) are unions of LEFT ideals Se (that asymmetry is
//! deliberate), and membership of x in Se for idempotent e reduces to
//! x = xe. Maps over idempotents use plain element indices; their domains
//! are simply restricted to idempotent elements.

use std::collections::HashMap;

use thiserror::Error;

use crate::congruence::{self, Congruence};
use crate::pinj::PartialInjection;
use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("representation is only defined on block-groups")]
    NotBlockGroup,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("x ↦ x·{element} fails to biject its domain onto its image set: {reason}")]
    BijectionFailure { element: usize, reason: String },
    #[error("map of {s} composed with map of {t} differs from the map of their product")]
    MultiplicativityFailure { s: usize, t: usize },
    #[error("distinct regular elements {s} and {t} share one map")]
    RegularCollision { s: usize, t: usize },
    #[error("distinct idempotents {e} and {f} share one map")]
    IdempotentCollision { e: usize, f: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Which representation a family of maps realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepKind {
    VagnerPreston,
    Munn,
}

/// One element's map, tagged with its source element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepElement {
    pub source: usize,
    pub map: PartialInjection,
}

/// A verified family of maps: multiplicative, with its kernel congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    kind: RepKind,
    elements: Vec<RepElement>,
    kernel: Congruence,
}

impl Representation {
    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn map(&self, s: usize) -> &PartialInjection {
        &self.elements[s].map
    }

    pub fn elements(&self) -> &[RepElement] {
        &self.elements
    }

    /// The fibers of s ↦ map(s), as a verified congruence.
    pub fn kernel(&self) -> &Congruence {
        &self.kernel
    }
}

/// Idempotents e with e ≤_R s, ascending.
pub fn r_set(s: &FiniteSemigroup, elt: usize) -> Vec<usize> {
    let green = s.green();
    s.idempotents()
        .into_iter()
        .filter(|&e| green.leq_r(e, elt))
        .collect()
}

/// Idempotents e with e ≤_L s, ascending.
pub fn l_set(s: &FiniteSemigroup, elt: usize) -> Vec<usize> {
    let green = s.green();
    s.idempotents()
        .into_iter()
        .filter(|&e| green.leq_l(e, elt))
        .collect()
}

fn fixed_by_some(s: &FiniteSemigroup, idempotents: &[usize]) -> Vec<usize> {
    s.elements()
        .filter(|&x| idempotents.iter().any(|&e| s.product(x, e) == x))
        .collect()
}

/// D(s) = ∪ { Se | e ∈ R(s) }, computed as { x | x = xe for some e ∈ R(s) }.
pub fn d_set(s: &FiniteSemigroup, elt: usize) -> Vec<usize> {
    fixed_by_some(s, &r_set(s, elt))
}

/// I(s) = ∪ { Se | e ∈ L(s) }, computed as { x | x = xe for some e ∈ L(s) }.
pub fn i_set(s: &FiniteSemigroup, elt: usize) -> Vec<usize> {
    fixed_by_some(s, &l_set(s, elt))
}

fn ensure_block_group(s: &FiniteSemigroup) -> Result<(), RepError> {
    if s.is_block_group()?.holds {
        Ok(())
    } else {
        Err(RepError::NotBlockGroup)
    }
}

/// { ue | u ∈ S }, ascending and deduplicated.
fn se_set(s: &FiniteSemigroup, e: usize) -> Vec<usize> {
    let mut out: Vec<usize> = s.elements().map(|u| s.product(u, e)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn vp_map_unchecked(s: &FiniteSemigroup, elt: usize) -> Result<PartialInjection, RepError> {
    let dom = d_set(s, elt);
    let map = PartialInjection::new(s.order(), dom.iter().map(|&x| (x, s.product(x, elt))))
        .map_err(|err| RepError::BijectionFailure {
            element: elt,
            reason: err.to_string(),
        })?;
    // surjectivity onto I(s) is a theorem; assert rather than assume
    let expected = i_set(s, elt);
    if map.image() != expected {
        return Err(RepError::BijectionFailure {
            element: elt,
            reason: format!(
                "image {:?} differs from the expected set {:?}",
                map.image(),
                expected
            ),
        });
    }
    Ok(map)
}

/// The translation x ↦ x·elt on D(elt), as a partial injection onto I(elt).
/// Refuses non-block-groups, where the translation need not be injective.
pub fn vp_map(s: &FiniteSemigroup, elt: usize) -> Result<PartialInjection, RepError> {
    ensure_block_group(s)?;
    vp_map_unchecked(s, elt)
}

fn munn_map_unchecked(s: &FiniteSemigroup, elt: usize) -> Result<PartialInjection, RepError> {
    let reg = s.regularity();
    let mut pairs = Vec::new();
    for e in r_set(s, elt) {
        let es = s.product(e, elt);
        let es_inv = reg.unique_inverse(es).ok_or_else(|| {
            RepError::Internal(format!(
                "{e}·{elt} should be a regular element with a unique inverse"
            ))
        })?;
        pairs.push((e, s.product(es_inv, es)));
    }
    let map = PartialInjection::new(s.order(), pairs)
        .map_err(|err| RepError::Internal(format!("idempotent map of {elt}: {err}")))?;
    let lset = l_set(s, elt);
    if !map.image().iter().all(|y| lset.binary_search(y).is_ok()) {
        return Err(RepError::Internal(format!(
            "idempotent map of {elt} leaves its expected image set"
        )));
    }
    Ok(map)
}

/// The idempotent action e ↦ (e·elt)⁻¹(e·elt) on R(elt) → L(elt).
pub fn munn_map(s: &FiniteSemigroup, elt: usize) -> Result<PartialInjection, RepError> {
    ensure_block_group(s)?;
    munn_map_unchecked(s, elt)
}

fn verify_multiplicative(
    s: &FiniteSemigroup,
    maps: &[PartialInjection],
) -> Result<(), RepError> {
    for a in s.elements() {
        for b in s.elements() {
            let composed = maps[a]
                .compose(&maps[b])
                .map_err(|err| RepError::Internal(err.to_string()))?;
            if composed != maps[s.product(a, b)] {
                return Err(RepError::MultiplicativityFailure { s: a, t: b });
            }
        }
    }
    Ok(())
}

fn kernel_of_maps(
    s: &FiniteSemigroup,
    maps: &[PartialInjection],
) -> Result<Congruence, RepError> {
    let mut index: HashMap<&PartialInjection, usize> = HashMap::new();
    let mut ids = Vec::with_capacity(maps.len());
    for m in maps {
        let next = index.len();
        ids.push(*index.entry(m).or_insert(next));
    }
    let kernel = Congruence::from_class_ids(&ids);
    if !congruence::is_congruence(s, &kernel) {
        return Err(RepError::Internal(
            "kernel partition is not a congruence".to_string(),
        ));
    }
    Ok(kernel)
}

fn assemble(
    kind: RepKind,
    maps: Vec<PartialInjection>,
    kernel: Congruence,
) -> Representation {
    let elements = maps
        .into_iter()
        .enumerate()
        .map(|(source, map)| RepElement { source, map })
        .collect();
    Representation {
        kind,
        elements,
        kernel,
    }
}

/// Builds and verifies the whole family x ↦ x·s of a block-group:
/// multiplicativity on all pairs, injectivity on regular elements, and the
/// domain/image identities dom = S·ss⁻¹, im = S·s⁻¹s for regular s.
pub fn vp_representation(s: &FiniteSemigroup) -> Result<Representation, RepError> {
    ensure_block_group(s)?;
    let maps: Vec<PartialInjection> = s
        .elements()
        .map(|x| vp_map_unchecked(s, x))
        .collect::<Result<_, _>>()?;
    verify_multiplicative(s, &maps)?;

    let reg = s.regularity();
    let regular = reg.regular_elements();
    for (i, &a) in regular.iter().enumerate() {
        for &b in &regular[i + 1..] {
            if maps[a] == maps[b] {
                return Err(RepError::RegularCollision { s: a, t: b });
            }
        }
    }
    for &x in &regular {
        let x_inv = reg
            .unique_inverse(x)
            .ok_or_else(|| RepError::Internal(format!("regular {x} lacks a unique inverse")))?;
        let dom_expected = se_set(s, s.product(x, x_inv));
        if maps[x].domain() != dom_expected {
            return Err(RepError::Internal(format!(
                "domain of the map of regular {x} is not S·xx⁻¹"
            )));
        }
        let im_expected = se_set(s, s.product(x_inv, x));
        if maps[x].image() != im_expected {
            return Err(RepError::Internal(format!(
                "image of the map of regular {x} is not S·x⁻¹x"
            )));
        }
    }

    let kernel = kernel_of_maps(s, &maps)?;
    Ok(assemble(RepKind::VagnerPreston, maps, kernel))
}

/// Builds and verifies the idempotent-action family of a block-group:
/// multiplicativity on all pairs and separation of distinct idempotents.
pub fn munn_representation(s: &FiniteSemigroup) -> Result<Representation, RepError> {
    ensure_block_group(s)?;
    let maps: Vec<PartialInjection> = s
        .elements()
        .map(|x| munn_map_unchecked(s, x))
        .collect::<Result<_, _>>()?;
    verify_multiplicative(s, &maps)?;

    let idempotents = s.idempotents();
    for (i, &e) in idempotents.iter().enumerate() {
        for &f in &idempotents[i + 1..] {
            if maps[e] == maps[f] {
                return Err(RepError::IdempotentCollision { e, f });
            }
        }
    }

    let kernel = kernel_of_maps(s, &maps)?;
    Ok(assemble(RepKind::Munn, maps, kernel))
}
