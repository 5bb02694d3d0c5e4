//! Deterministic finite automata and their transition monoids.
//!
//! The file format is line-oriented:
//!
//! ```text
//! states 2
//! alphabet a b
//! initial 0
//! accepting 1
//! trans 0 a 0
//! trans 0 b 1
//! trans 1 a 0
//! trans 1 b 1
//! ```
//!
//! `syntactic_monoid` minimizes the automaton (unreachable-state removal
//! plus Moore partition refinement, states renumbered by breadth-first
//! order from the initial state) and returns the transition monoid of the
//! minimal automaton: the closure of the letter actions under composition,
//! with the empty-word identity included and labeled "1". Elements are
//! labeled by a shortest word producing them.

use std::collections::HashMap;

use thiserror::Error;

use crate::semigroup::FiniteSemigroup;
use crate::transform;
use crate::util::canonical_ids_by;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DfaError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("state {state} is out of range for {states} states")]
    BadState { state: usize, states: usize },
    #[error("unknown symbol '{symbol}'")]
    UnknownSymbol { symbol: String },
    #[error("missing transition from state {state} on '{symbol}'")]
    MissingTransition { state: usize, symbol: String },
    #[error("duplicate transition from state {state} on '{symbol}'")]
    DuplicateTransition { state: usize, symbol: String },
    #[error("the alphabet is empty")]
    EmptyAlphabet,
    #[error("transition monoid exceeded {cap} elements")]
    MonoidTooLarge { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    state_count: usize,
    alphabet: Vec<String>,
    transition: Vec<Vec<usize>>, // [state][letter]
    initial: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a total transition function given as
    /// (state, letter index, target) triples.
    pub fn new(
        state_count: usize,
        alphabet: Vec<String>,
        transitions: &[(usize, usize, usize)],
        initial: usize,
        accepting: &[usize],
    ) -> Result<Self, DfaError> {
        let check_state = |state: usize| {
            if state >= state_count {
                Err(DfaError::BadState {
                    state,
                    states: state_count,
                })
            } else {
                Ok(())
            }
        };
        check_state(initial)?;
        for &q in accepting {
            check_state(q)?;
        }
        let mut table = vec![vec![usize::MAX; alphabet.len()]; state_count];
        for &(q, a, target) in transitions {
            check_state(q)?;
            check_state(target)?;
            if a >= alphabet.len() {
                return Err(DfaError::UnknownSymbol {
                    symbol: format!("#{a}"),
                });
            }
            if table[q][a] != usize::MAX {
                return Err(DfaError::DuplicateTransition {
                    state: q,
                    symbol: alphabet[a].clone(),
                });
            }
            table[q][a] = target;
        }
        for (q, row) in table.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                if t == usize::MAX {
                    return Err(DfaError::MissingTransition {
                        state: q,
                        symbol: alphabet[a].clone(),
                    });
                }
            }
        }
        let mut acc = vec![false; state_count];
        for &q in accepting {
            acc[q] = true;
        }
        Ok(Dfa {
            state_count,
            alphabet,
            transition: table,
            initial,
            accepting: acc,
        })
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.transition[state][letter]
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut q = self.initial;
        for &a in word {
            q = self.transition[q][a];
        }
        self.accepting[q]
    }

    /// Unreachable-state removal followed by Moore partition refinement.
    /// States of the result are numbered breadth-first from the initial
    /// state, letters in alphabet order, so equivalent inputs minimize to
    /// identical (not merely isomorphic) automata.
    pub fn minimize(&self) -> Dfa {
        // reachable restriction
        let mut reach_index = vec![usize::MAX; self.state_count];
        let mut reached: Vec<usize> = vec![self.initial];
        reach_index[self.initial] = 0;
        let mut at = 0;
        while at < reached.len() {
            let q = reached[at];
            for a in 0..self.alphabet.len() {
                let t = self.transition[q][a];
                if reach_index[t] == usize::MAX {
                    reach_index[t] = reached.len();
                    reached.push(t);
                }
            }
            at += 1;
        }
        let k = reached.len();
        let trans: Vec<Vec<usize>> = reached
            .iter()
            .map(|&q| {
                (0..self.alphabet.len())
                    .map(|a| reach_index[self.transition[q][a]])
                    .collect()
            })
            .collect();
        let accepting: Vec<bool> = reached.iter().map(|&q| self.accepting[q]).collect();

        // refine by acceptance, then by transition signatures until stable
        let mut ids = canonical_ids_by(k, |p, q| accepting[p] == accepting[q]);
        loop {
            let next = canonical_ids_by(k, |p, q| {
                ids[p] == ids[q] && (0..self.alphabet.len()).all(|a| ids[trans[p][a]] == ids[trans[q][a]])
            });
            if next == ids {
                break;
            }
            ids = next;
        }

        // quotient, then canonical breadth-first numbering from the initial class
        let class_count = ids.iter().copied().max().unwrap_or(0) + 1;
        let mut class_trans = vec![vec![usize::MAX; self.alphabet.len()]; class_count];
        let mut class_acc = vec![false; class_count];
        for q in 0..k {
            for a in 0..self.alphabet.len() {
                class_trans[ids[q]][a] = ids[trans[q][a]];
            }
            class_acc[ids[q]] |= accepting[q];
        }
        let mut order = vec![usize::MAX; class_count];
        let mut bfs = vec![ids[0]]; // reached[0] is the initial state
        order[ids[0]] = 0;
        let mut at = 0;
        while at < bfs.len() {
            let c = bfs[at];
            for a in 0..self.alphabet.len() {
                let t = class_trans[c][a];
                if order[t] == usize::MAX {
                    order[t] = bfs.len();
                    bfs.push(t);
                }
            }
            at += 1;
        }
        let transition: Vec<Vec<usize>> = bfs
            .iter()
            .map(|&c| {
                (0..self.alphabet.len())
                    .map(|a| order[class_trans[c][a]])
                    .collect()
            })
            .collect();
        let accepting_list: Vec<usize> = bfs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| class_acc[c])
            .map(|(i, _)| i)
            .collect();
        let mut acc = vec![false; class_count];
        for &q in &accepting_list {
            acc[q] = true;
        }
        Dfa {
            state_count: class_count,
            alphabet: self.alphabet.clone(),
            transition,
            initial: 0,
            accepting: acc,
        }
    }

    /// The transition monoid of the minimal automaton. The identity (the
    /// empty word's action) is always an element, labeled "1"; other
    /// elements are labeled by a shortest generating word.
    pub fn syntactic_monoid(&self) -> Result<FiniteSemigroup, DfaError> {
        if self.alphabet.is_empty() {
            return Err(DfaError::EmptyAlphabet);
        }
        let minimal = self.minimize();
        let actions: Vec<Vec<usize>> = (0..minimal.alphabet.len())
            .map(|a| (0..minimal.state_count).map(|q| minimal.transition[q][a]).collect())
            .collect();
        let outcome = transform::closure(
            minimal.state_count,
            &actions,
            true,
            transform::DEFAULT_CLOSURE_CAP,
        )
        .map_err(|err| match err {
            transform::TransformError::ClosureTooLarge { cap } => DfaError::MonoidTooLarge { cap },
            other => unreachable!("letter actions are valid total maps: {other}"),
        })?;
        let labels: Vec<String> = outcome
            .words
            .iter()
            .map(|word| {
                if word.is_empty() {
                    "1".to_string()
                } else {
                    word.iter().map(|&g| minimal.alphabet[g].as_str()).collect()
                }
            })
            .collect();
        Ok(outcome
            .semigroup
            .with_labels(labels)
            .expect("one label per closure element"))
    }
}

/// Parses the line-oriented DFA format described in the module docs.
pub fn parse_dfa_file(text: &str) -> Result<Dfa, DfaError> {
    let mut states: Option<usize> = None;
    let mut alphabet: Vec<String> = Vec::new();
    let mut initial: Option<usize> = None;
    let mut accepting: Vec<usize> = Vec::new();
    let mut transitions: Vec<(usize, usize, usize)> = Vec::new();
    let mut symbol_index: HashMap<String, usize> = HashMap::new();

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parse_state = |tok: &str| -> Result<usize, DfaError> {
            tok.parse().map_err(|_| DfaError::Parse {
                line: line_no,
                message: format!("expected a state number, got '{tok}'"),
            })
        };
        match toks[0] {
            "states" => {
                if toks.len() != 2 {
                    return Err(DfaError::Parse {
                        line: line_no,
                        message: "expected 'states <count>'".to_string(),
                    });
                }
                states = Some(parse_state(toks[1])?);
            }
            "alphabet" => {
                for &sym in &toks[1..] {
                    if symbol_index.contains_key(sym) {
                        return Err(DfaError::Parse {
                            line: line_no,
                            message: format!("symbol '{sym}' listed twice"),
                        });
                    }
                    symbol_index.insert(sym.to_string(), alphabet.len());
                    alphabet.push(sym.to_string());
                }
            }
            "initial" => {
                if toks.len() != 2 {
                    return Err(DfaError::Parse {
                        line: line_no,
                        message: "expected 'initial <state>'".to_string(),
                    });
                }
                initial = Some(parse_state(toks[1])?);
            }
            "accepting" => {
                for &tok in &toks[1..] {
                    accepting.push(parse_state(tok)?);
                }
            }
            "trans" => {
                if toks.len() != 4 {
                    return Err(DfaError::Parse {
                        line: line_no,
                        message: "expected 'trans <state> <symbol> <state>'".to_string(),
                    });
                }
                let q = parse_state(toks[1])?;
                let a = *symbol_index.get(toks[2]).ok_or_else(|| DfaError::Parse {
                    line: line_no,
                    message: format!("symbol '{}' not in the alphabet", toks[2]),
                })?;
                let t = parse_state(toks[3])?;
                transitions.push((q, a, t));
            }
            other => {
                return Err(DfaError::Parse {
                    line: line_no,
                    message: format!("unknown directive '{other}'"),
                });
            }
        }
    }

    let states = states.ok_or_else(|| DfaError::Parse {
        line: 1,
        message: "missing 'states' line".to_string(),
    })?;
    let initial = initial.ok_or_else(|| DfaError::Parse {
        line: 1,
        message: "missing 'initial' line".to_string(),
    })?;
    Dfa::new(states, alphabet, &transitions, initial, &accepting)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ends_in_b() -> Dfa {
        Dfa::new(
            2,
            vec!["a".into(), "b".into()],
            &[(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)],
            0,
            &[1],
        )
        .unwrap()
    }

    // same language with two redundant states
    fn ends_in_b_padded() -> Dfa {
        Dfa::new(
            4,
            vec!["a".into(), "b".into()],
            &[
                (0, 0, 2),
                (0, 1, 1),
                (1, 0, 0),
                (1, 1, 3),
                (2, 0, 0),
                (2, 1, 3),
                (3, 0, 2),
                (3, 1, 1),
            ],
            0,
            &[1, 3],
        )
        .unwrap()
    }

    #[test]
    fn construction_validates_totality() {
        let err = Dfa::new(2, vec!["a".into()], &[(0, 0, 1)], 0, &[]).unwrap_err();
        assert_eq!(
            err,
            DfaError::MissingTransition {
                state: 1,
                symbol: "a".to_string()
            }
        );
        let err =
            Dfa::new(1, vec!["a".into()], &[(0, 0, 0), (0, 0, 0)], 0, &[]).unwrap_err();
        assert!(matches!(err, DfaError::DuplicateTransition { .. }));
    }

    #[test]
    fn acceptance_works() {
        let d = ends_in_b();
        assert!(d.accepts(&[0, 1]));
        assert!(!d.accepts(&[1, 0]));
        assert!(!d.accepts(&[]));
        let p = ends_in_b_padded();
        for word in [&[][..], &[0][..], &[1][..], &[0, 1][..], &[1, 0][..], &[1, 1, 0, 1][..]] {
            assert_eq!(d.accepts(word), p.accepts(word));
        }
    }

    #[test]
    fn minimization_collapses_padding() {
        let m = ends_in_b_padded().minimize();
        assert_eq!(m.state_count(), 2);
        for word in [&[][..], &[0][..], &[1][..], &[0, 1][..], &[1, 0][..]] {
            assert_eq!(m.accepts(word), ends_in_b().accepts(word));
        }
    }

    #[test]
    fn minimization_is_invariant_for_the_monoid() {
        let a = ends_in_b().syntactic_monoid().unwrap();
        let b = ends_in_b_padded().syntactic_monoid().unwrap();
        assert_eq!(a.order(), b.order());
        assert_eq!(a.table_rows(), b.table_rows());
    }

    #[test]
    fn a_star_gives_the_trivial_monoid() {
        let d = Dfa::new(1, vec!["a".into()], &[(0, 0, 0)], 0, &[0]).unwrap();
        let m = d.syntactic_monoid().unwrap();
        assert_eq!(m.order(), 1);
    }

    #[test]
    fn even_length_cycle_gives_z2() {
        let d = Dfa::new(2, vec!["a".into()], &[(0, 0, 1), (1, 0, 0)], 0, &[0]).unwrap();
        let m = d.syntactic_monoid().unwrap();
        assert_eq!(m.order(), 2);
        // identity first, the swap second
        assert_eq!(m.table_rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.label(0), "1");
        assert_eq!(m.label(1), "a");
    }

    #[test]
    fn ends_in_b_monoid() {
        let m = ends_in_b().syntactic_monoid().unwrap();
        assert_eq!(m.order(), 3);
        // identity plus the two constant letter actions (a right-zero pair)
        assert_eq!(
            m.table_rows(),
            vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]]
        );
        assert!(!m.is_block_group().unwrap().holds);
        assert_eq!(m.identity(), Some(0));
    }

    #[test]
    fn empty_alphabet_is_rejected() {
        let d = Dfa::new(1, vec![], &[], 0, &[0]).unwrap();
        assert_eq!(d.syntactic_monoid().unwrap_err(), DfaError::EmptyAlphabet);
    }

    #[test]
    fn file_parsing() {
        let text = "# ends in b\nstates 2\nalphabet a b\ninitial 0\naccepting 1\n\
                    trans 0 a 0\ntrans 0 b 1\ntrans 1 a 0\ntrans 1 b 1\n";
        let d = parse_dfa_file(text).unwrap();
        assert_eq!(d, ends_in_b());
        assert!(matches!(
            parse_dfa_file("states 1\ninitial 0\nfoo\n"),
            Err(DfaError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_dfa_file("alphabet a\ninitial 0\n"),
            Err(DfaError::Parse { .. })
        ));
    }
}
