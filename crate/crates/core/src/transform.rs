//! Transformation semigroups: closure of total maps under composition.
//!
//! Maps act on the right and compose left to right, matching the
//! partial-injection convention. Elements are numbered in breadth-first
//! discovery order, which makes the resulting tables deterministic.

use std::collections::HashMap;

use thiserror::Error;

use crate::semigroup::FiniteSemigroup;

pub const DEFAULT_CLOSURE_CAP: usize = 5000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("maps need at least one point")]
    NoPoints,
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("generator {index} has {got} images, expected {expected}")]
    BadShape {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("generator {index} maps {point} to {image}, out of range for {points} points")]
    ImageOutOfRange {
        index: usize,
        point: usize,
        image: usize,
        points: usize,
    },
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
}

/// A computed closure: the maps in discovery order, a shortest generator
/// word for each (empty word = identity), and the multiplication table.
pub(crate) struct ClosureOutcome {
    #[cfg_attr(not(test), allow(dead_code))]
    pub elements: Vec<Vec<usize>>,
    pub words: Vec<Vec<usize>>,
    pub semigroup: FiniteSemigroup,
}

fn validate_generators(points: usize, generators: &[Vec<usize>]) -> Result<(), TransformError> {
    for (index, g) in generators.iter().enumerate() {
        if g.len() != points {
            return Err(TransformError::BadShape {
                index,
                expected: points,
                got: g.len(),
            });
        }
        for (point, &image) in g.iter().enumerate() {
            if image >= points {
                return Err(TransformError::ImageOutOfRange {
                    index,
                    point,
                    image,
                    points,
                });
            }
        }
    }
    Ok(())
}

// apply f then g
fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&y| g[y]).collect()
}

pub(crate) fn closure(
    points: usize,
    generators: &[Vec<usize>],
    include_identity: bool,
    cap: usize,
) -> Result<ClosureOutcome, TransformError> {
    if points == 0 {
        return Err(TransformError::NoPoints);
    }
    if generators.is_empty() && !include_identity {
        return Err(TransformError::NoGenerators);
    }
    validate_generators(points, generators)?;

    let mut elements: Vec<Vec<usize>> = Vec::new();
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut push = |m: Vec<usize>,
                    w: Vec<usize>,
                    elements: &mut Vec<Vec<usize>>,
                    words: &mut Vec<Vec<usize>>,
                    index: &mut HashMap<Vec<usize>, usize>|
     -> bool {
        if index.contains_key(&m) {
            return false;
        }
        index.insert(m.clone(), elements.len());
        elements.push(m);
        words.push(w);
        true
    };

    if include_identity {
        push(
            (0..points).collect(),
            Vec::new(),
            &mut elements,
            &mut words,
            &mut index,
        );
    }
    for (gi, g) in generators.iter().enumerate() {
        push(g.clone(), vec![gi], &mut elements, &mut words, &mut index);
    }

    // breadth-first over right products with the generators
    let mut at = 0;
    while at < elements.len() {
        for (gi, g) in generators.iter().enumerate() {
            let product = compose(&elements[at], g);
            let mut word = words[at].clone();
            word.push(gi);
            if push(product, word, &mut elements, &mut words, &mut index)
                && elements.len() > cap
            {
                return Err(TransformError::ClosureTooLarge { cap });
            }
        }
        at += 1;
    }

    let n = elements.len();
    let mut flat = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            flat.push(index[&compose(a, b)]);
        }
    }
    // function composition is associative, so the table needs no rescan
    let semigroup = FiniteSemigroup::from_flat_trusted(n, flat);
    Ok(ClosureOutcome {
        elements,
        words,
        semigroup,
    })
}

/// The semigroup generated by total maps on `points` points, as a Cayley
/// table over the closure elements in discovery order.
pub fn generate_from_transformations(
    points: usize,
    generators: &[Vec<usize>],
) -> Result<FiniteSemigroup, TransformError> {
    generate_from_transformations_with_cap(points, generators, DEFAULT_CLOSURE_CAP)
}

pub fn generate_from_transformations_with_cap(
    points: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<FiniteSemigroup, TransformError> {
    Ok(closure(points, generators, false, cap)?.semigroup)
}

/// Parses a generator file: first significant line is the point count, each
/// following line lists one generator's images. `#` comments allowed.
pub fn parse_maps_file(text: &str) -> Result<(usize, Vec<Vec<usize>>), TransformError> {
    let mut points: Option<usize> = None;
    let mut generators: Vec<Vec<usize>> = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end_matches('\r');
        let mut values = Vec::new();
        let mut start: Option<usize> = None;
        let parse_token = |from: usize, to: usize| -> Result<usize, TransformError> {
            let tok = &line[from..to];
            tok.parse().map_err(|_| TransformError::Parse {
                line: line_no,
                col: from + 1,
                message: format!("expected a number, got '{tok}'"),
            })
        };
        for (i, ch) in line.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    values.push(parse_token(s, i)?);
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            values.push(parse_token(s, line.len())?);
        }
        if values.is_empty() {
            continue;
        }
        match points {
            None => {
                if values.len() != 1 {
                    return Err(TransformError::Parse {
                        line: line_no,
                        col: 1,
                        message: "expected only the point count here".to_string(),
                    });
                }
                if values[0] == 0 {
                    return Err(TransformError::Parse {
                        line: line_no,
                        col: 1,
                        message: "point count must be positive".to_string(),
                    });
                }
                points = Some(values[0]);
            }
            Some(_) => generators.push(values),
        }
    }
    let points = points.ok_or_else(|| TransformError::Parse {
        line: 1,
        col: 1,
        message: "empty file; expected the point count".to_string(),
    })?;
    if generators.is_empty() {
        return Err(TransformError::NoGenerators);
    }
    validate_generators(points, &generators)?;
    Ok((points, generators))
}
