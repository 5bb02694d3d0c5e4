//! Named example semigroups and the exhaustive small-order sweep.

use thiserror::Error;

use crate::dfa::Dfa;
use crate::semigroup::FiniteSemigroup;
use crate::transform;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SweepError {
    #[error("exhaustive table sweep supports orders 1..=3, got {0}")]
    UnsupportedOrder(usize),
}

#[derive(Debug, Clone)]
pub struct NamedSemigroup {
    pub name: String,
    pub semigroup: FiniteSemigroup,
}

fn named(name: &str, semigroup: FiniteSemigroup) -> NamedSemigroup {
    NamedSemigroup {
        name: name.to_string(),
        semigroup,
    }
}

fn table(rows: Vec<Vec<usize>>) -> FiniteSemigroup {
    FiniteSemigroup::from_rows(rows).expect("corpus tables are associative")
}

fn labeled(s: FiniteSemigroup, labels: &[&str]) -> FiniteSemigroup {
    s.with_labels(labels.iter().map(|l| l.to_string()).collect())
        .expect("one label per element")
}

/// Brandt semigroup of 2×2 matrix units plus zero: 0=e11, 1=e12, 2=e21,
/// 3=e22, 4=0.
pub fn brandt_b2() -> FiniteSemigroup {
    labeled(
        table(vec![
            vec![0, 1, 4, 4, 4],
            vec![4, 4, 0, 1, 4],
            vec![2, 3, 4, 4, 4],
            vec![4, 4, 2, 3, 4],
            vec![4, 4, 4, 4, 4],
        ]),
        &["e11", "e12", "e21", "e22", "0"],
    )
}

/// Full transformation monoid on 2 points, generated by the swap and a
/// constant: swap, const0, identity, const1 in discovery order.
pub fn t2() -> FiniteSemigroup {
    transform::generate_from_transformations(2, &[vec![1, 0], vec![0, 0]])
        .expect("generators are valid maps")
}

fn dfa_a_star() -> Dfa {
    Dfa::new(1, vec!["a".into()], &[(0, 0, 0)], 0, &[0]).expect("valid one-state automaton")
}

fn dfa_even_a() -> Dfa {
    Dfa::new(2, vec!["a".into()], &[(0, 0, 1), (1, 0, 0)], 0, &[0])
        .expect("valid two-state cycle")
}

fn dfa_ends_in_b() -> Dfa {
    Dfa::new(
        2,
        vec!["a".into(), "b".into()],
        &[(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)],
        0,
        &[1],
    )
    .expect("valid last-letter automaton")
}

/// The named corpus: groups, semilattice chains, zero semigroups, one-sided
/// zero pairs, a monogenic example, the Brandt semigroup, the full
/// transformation monoid on 2 points, and three syntactic monoids.
pub fn corpus() -> Vec<NamedSemigroup> {
    vec![
        named("trivial", table(vec![vec![0]])),
        named("Z2", table(vec![vec![0, 1], vec![1, 0]])),
        named(
            "Z3",
            table(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]),
        ),
        named("chain2", table(vec![vec![0, 1], vec![1, 1]])),
        named(
            "chain3",
            table(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]]),
        ),
        named("left_zero2", table(vec![vec![0, 0], vec![1, 1]])),
        named("right_zero2", table(vec![vec![0, 1], vec![0, 1]])),
        named(
            "null2",
            labeled(table(vec![vec![1, 1], vec![1, 1]]), &["a", "0"]),
        ),
        named(
            "null3",
            table(vec![vec![2, 2, 2], vec![2, 2, 2], vec![2, 2, 2]]),
        ),
        named(
            "monogenic_a3_eq_a2",
            labeled(table(vec![vec![1, 1], vec![1, 1]]), &["a", "aa"]),
        ),
        named("B2", brandt_b2()),
        named("T2", t2()),
        named(
            "syn_a_star",
            dfa_a_star()
                .syntactic_monoid()
                .expect("nonempty alphabet"),
        ),
        named(
            "syn_even_a",
            dfa_even_a()
                .syntactic_monoid()
                .expect("nonempty alphabet"),
        ),
        named(
            "syn_ends_in_b",
            dfa_ends_in_b()
                .syntactic_monoid()
                .expect("nonempty alphabet"),
        ),
    ]
}

/// Every associative table on `order` elements, raw and unreduced (no
/// identification up to isomorphism), by filtering all order^(order²)
/// candidate tables. Supported for orders 1..=3.
pub fn all_associative_tables(order: usize) -> Result<Vec<FiniteSemigroup>, SweepError> {
    if order == 0 || order > 3 {
        return Err(SweepError::UnsupportedOrder(order));
    }
    let cells = order * order;
    let total = order.pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut digits = Vec::with_capacity(cells);
        let mut rest = code;
        for _ in 0..cells {
            digits.push(rest % order);
            rest /= order;
        }
        if let Ok(s) = FiniteSemigroup::from_flat(order, digits) {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_members_have_expected_shapes() {
        let corpus = corpus();
        let find = |name: &str| {
            &corpus
                .iter()
                .find(|m| m.name == name)
                .unwrap_or_else(|| panic!("corpus should contain {name}"))
                .semigroup
        };
        assert_eq!(find("B2").order(), 5);
        // maps 2 -> 2: four of them
        assert_eq!(find("T2").order(), 4);
        assert_eq!(find("syn_a_star").order(), 1);
        assert_eq!(find("syn_even_a").order(), 2);
        assert_eq!(find("syn_ends_in_b").order(), 3);
        assert_eq!(find("trivial").order(), 1);
        assert_eq!(find("null3").zero(), Some(2));
        assert_eq!(find("chain3").identity(), Some(0));
    }

    #[test]
    fn corpus_block_group_split() {
        let expected_non_bg = ["left_zero2", "right_zero2", "T2", "syn_ends_in_b"];
        for member in corpus() {
            let holds = member.semigroup.is_block_group().unwrap().holds;
            assert_eq!(
                holds,
                !expected_non_bg.contains(&member.name.as_str()),
                "{}",
                member.name
            );
        }
    }

    #[test]
    fn sweep_counts() {
        assert_eq!(all_associative_tables(1).unwrap().len(), 1);
        // the 8 associative tables among the 16 binary operations on 2 points
        assert_eq!(all_associative_tables(2).unwrap().len(), 8);
        // the 113 labeled semigroups on 3 points
        assert_eq!(all_associative_tables(3).unwrap().len(), 113);
        assert_eq!(
            all_associative_tables(4).unwrap_err(),
            SweepError::UnsupportedOrder(4)
        );
        assert_eq!(
            all_associative_tables(0).unwrap_err(),
            SweepError::UnsupportedOrder(0)
        );
    }
}
