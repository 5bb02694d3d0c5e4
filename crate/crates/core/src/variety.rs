//! ω-term pseudoidentities and variety membership predicates.
//!
//! Terms are trees of variables, concatenation and ω-power, evaluated over
//! every assignment of elements to variables; ω is the unique idempotent
//! power. The text grammar is juxtaposition for product, a `^w` suffix for
//! ω-power, parentheses, and single-letter variables; whitespace is
//! insignificant. `a = b = c` chains denote the adjacent equalities.

use std::collections::HashMap;

use thiserror::Error;

use crate::pinj::{self, PartialInjection};
use crate::rep::{self, RepError};
use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarietyError {
    #[error("variable {0} is not assigned")]
    UnboundVariable(String),
    #[error("identity uses {count} variables, over the cap of {cap}")]
    TooManyVariables { count: usize, cap: usize },
    #[error("operation is only defined on block-groups")]
    NotBlockGroup,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("fiber {elements:?} over {idempotent} is not a nilpotent subsemigroup")]
    FiberNotNilpotent {
        idempotent: PartialInjection,
        elements: Vec<usize>,
    },
    #[error("criteria disagree: {0}")]
    InternalInconsistency(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {position}: {message}")]
pub struct IdentityParseError {
    pub position: usize,
    pub message: String,
}

/// Default cap on variable count for user-supplied identities; evaluation
/// is exhaustive over |S|^k assignments.
pub const DEFAULT_VARIABLE_CAP: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudoTerm {
    Variable(String),
    Concat(Box<PseudoTerm>, Box<PseudoTerm>),
    OmegaPower(Box<PseudoTerm>),
}

impl PseudoTerm {
    pub fn var(name: &str) -> Self {
        PseudoTerm::Variable(name.to_string())
    }

    pub fn concat(left: PseudoTerm, right: PseudoTerm) -> Self {
        PseudoTerm::Concat(Box::new(left), Box::new(right))
    }

    pub fn omega_power(inner: PseudoTerm) -> Self {
        PseudoTerm::OmegaPower(Box::new(inner))
    }

    fn collect_variables(&self, out: &mut Vec<String>) {
        match self {
            PseudoTerm::Variable(name) => {
                if !out.iter().any(|v| v == name) {
                    out.push(name.clone());
                }
            }
            PseudoTerm::Concat(l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
            PseudoTerm::OmegaPower(t) => t.collect_variables(out),
        }
    }
}

impl std::fmt::Display for PseudoTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PseudoTerm::Variable(name) => write!(f, "{name}"),
            PseudoTerm::Concat(l, r) => {
                write!(f, "{l} ")?;
                match **r {
                    PseudoTerm::Concat(..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
            PseudoTerm::OmegaPower(t) => match **t {
                PseudoTerm::Variable(_) => write!(f, "{t}^w"),
                _ => write!(f, "({t})^w"),
            },
        }
    }
}

/// An equality of two ω-terms, with the ordered union of their variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pseudoidentity {
    pub lhs: PseudoTerm,
    pub rhs: PseudoTerm,
    variables: Vec<String>,
}

impl Pseudoidentity {
    pub fn new(lhs: PseudoTerm, rhs: PseudoTerm) -> Self {
        let mut variables = Vec::new();
        lhs.collect_variables(&mut variables);
        rhs.collect_variables(&mut variables);
        Pseudoidentity {
            lhs,
            rhs,
            variables,
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }
}

impl std::fmt::Display for Pseudoidentity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    offset: usize,
}

impl Parser {
    fn new(text: &str, offset: usize) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            offset,
        }
    }

    fn error(&self, message: impl Into<String>) -> IdentityParseError {
        IdentityParseError {
            position: self.offset + self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<PseudoTerm, IdentityParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '(' => {
                    let next = self.factor()?;
                    acc = PseudoTerm::concat(acc, next);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<PseudoTerm, IdentityParseError> {
        let mut atom = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('^') {
                self.pos += 1;
                self.skip_ws();
                if self.peek() != Some('w') {
                    return Err(self.error("expected 'w' after '^'"));
                }
                self.pos += 1;
                atom = PseudoTerm::omega_power(atom);
            } else {
                return Ok(atom);
            }
        }
    }

    fn atom(&mut self) -> Result<PseudoTerm, IdentityParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.term()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                Ok(PseudoTerm::var(&c.to_string()))
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("expected a variable or '('")),
        }
    }

    fn finish(&mut self) -> Result<(), IdentityParseError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
        }
    }
}

fn parse_term_at(text: &str, offset: usize) -> Result<PseudoTerm, IdentityParseError> {
    let mut parser = Parser::new(text, offset);
    let term = parser.term()?;
    parser.finish()?;
    Ok(term)
}

pub fn parse_term(text: &str) -> Result<PseudoTerm, IdentityParseError> {
    parse_term_at(text, 0)
}

/// Parses `lhs = rhs = ...` into the chain of adjacent equalities.
pub fn parse_identity_chain(text: &str) -> Result<Vec<Pseudoidentity>, IdentityParseError> {
    let mut sides: Vec<(usize, String)> = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, ch) in text.chars().enumerate() {
        if ch == '=' {
            sides.push((start, std::mem::take(&mut current)));
            start = i + 1;
        } else {
            current.push(ch);
        }
    }
    sides.push((start, current));
    if sides.len() < 2 {
        return Err(IdentityParseError {
            position: text.chars().count(),
            message: "expected '=' between two terms".to_string(),
        });
    }
    let terms: Vec<PseudoTerm> = sides
        .iter()
        .map(|(off, side)| parse_term_at(side, *off))
        .collect::<Result<_, _>>()?;
    Ok(terms
        .windows(2)
        .map(|w| Pseudoidentity::new(w[0].clone(), w[1].clone()))
        .collect())
}

/// Parses a single `lhs = rhs` identity.
pub fn parse_pseudoidentity(text: &str) -> Result<Pseudoidentity, IdentityParseError> {
    let chain = parse_identity_chain(text)?;
    if chain.len() != 1 {
        return Err(IdentityParseError {
            position: 0,
            message: "expected exactly one '='".to_string(),
        });
    }
    Ok(chain.into_iter().next().unwrap())
}

/// (x^w y^w)^w = (y^w x^w)^w — the block-group identity.
pub fn bg_identity() -> Pseudoidentity {
    parse_pseudoidentity("(x^w y^w)^w = (y^w x^w)^w").expect("built-in identity parses")
}

/// The two-sided block-group chain (x^w y^w)^w x^w = (x^w y^w)^w = y^w (x^w y^w)^w.
pub fn bg_two_sided_identities() -> Vec<Pseudoidentity> {
    parse_identity_chain("(x^w y^w)^w x^w = (x^w y^w)^w = y^w (x^w y^w)^w")
        .expect("built-in identity parses")
}

/// x^w y^w = y^w x^w — commuting idempotents.
pub fn ecom_identity() -> Pseudoidentity {
    parse_pseudoidentity("x^w y^w = y^w x^w").expect("built-in identity parses")
}

/// x^w = y^w — a single idempotent.
pub fn ei_identity() -> Pseudoidentity {
    parse_pseudoidentity("x^w = y^w").expect("built-in identity parses")
}

/// Bottom-up evaluation of a term under an assignment.
pub fn eval_term(
    s: &FiniteSemigroup,
    term: &PseudoTerm,
    assignment: &HashMap<String, usize>,
) -> Result<usize, VarietyError> {
    match term {
        PseudoTerm::Variable(name) => assignment
            .get(name)
            .copied()
            .ok_or_else(|| VarietyError::UnboundVariable(name.clone())),
        PseudoTerm::Concat(l, r) => {
            let lv = eval_term(s, l, assignment)?;
            let rv = eval_term(s, r, assignment)?;
            Ok(s.product(lv, rv))
        }
        PseudoTerm::OmegaPower(t) => Ok(s.omega(eval_term(s, t, assignment)?)),
    }
}

/// Verdict of an exhaustive identity check, with the first failing
/// assignment in lexicographic order (first variable most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Satisfaction {
    pub holds: bool,
    pub counterexample: Option<Vec<(String, usize)>>,
}

pub fn satisfies(s: &FiniteSemigroup, id: &Pseudoidentity) -> Satisfaction {
    let vars = id.variables();
    let k = vars.len();
    let n = s.order();
    let total = n.pow(k as u32);
    let mut assignment = HashMap::with_capacity(k);
    for count in 0..total {
        let mut rest = count;
        let mut values = vec![0usize; k];
        for i in (0..k).rev() {
            values[i] = rest % n;
            rest /= n;
        }
        assignment.clear();
        for (v, &x) in vars.iter().zip(&values) {
            assignment.insert(v.clone(), x);
        }
        let lhs = eval_term(s, &id.lhs, &assignment).expect("all variables are assigned");
        let rhs = eval_term(s, &id.rhs, &assignment).expect("all variables are assigned");
        if lhs != rhs {
            return Satisfaction {
                holds: false,
                counterexample: Some(
                    vars.iter().cloned().zip(values.iter().copied()).collect(),
                ),
            };
        }
    }
    Satisfaction {
        holds: true,
        counterexample: None,
    }
}

/// [`satisfies`] with a guard on the variable count, for user input.
pub fn check_identity(
    s: &FiniteSemigroup,
    id: &Pseudoidentity,
    max_vars: usize,
) -> Result<Satisfaction, VarietyError> {
    let count = id.variables().len();
    if count > max_vars {
        return Err(VarietyError::TooManyVariables {
            count,
            cap: max_vars,
        });
    }
    Ok(satisfies(s, id))
}

/// Do all idempotents commute? Checked directly and against the evaluator.
pub fn is_ecom(s: &FiniteSemigroup) -> bool {
    let idempotents = s.idempotents();
    let direct = idempotents
        .iter()
        .all(|&e| idempotents.iter().all(|&f| s.product(e, f) == s.product(f, e)));
    let via_identity = satisfies(s, &ecom_identity()).holds;
    assert_eq!(
        direct, via_identity,
        "idempotent-commutation criteria must agree"
    );
    direct
}

/// Is there exactly one idempotent? Checked directly and against the evaluator.
pub fn is_ei(s: &FiniteSemigroup) -> bool {
    let direct = s.idempotents().len() == 1;
    let via_identity = satisfies(s, &ei_identity()).holds;
    assert_eq!(direct, via_identity, "single-idempotent criteria must agree");
    direct
}

/// Is the semigroup nilpotent (some power of S is a single zero)?
///
/// Cross-checked against two equivalent criteria: exactly one regular
/// element, and every ω-power acting as a two-sided zero.
pub fn is_nilpotent(s: &FiniteSemigroup) -> Result<bool, VarietyError> {
    let n = s.order();
    // S ⊇ S² ⊇ ... stabilizes; nilpotent iff the stable set is a singleton
    let mut cur: Vec<bool> = vec![true; n];
    loop {
        let mut next = vec![false; n];
        for a in 0..n {
            if !cur[a] {
                continue;
            }
            for b in 0..n {
                next[s.product(a, b)] = true;
            }
        }
        if next == cur {
            break;
        }
        cur = next;
    }
    let by_ideal_powers = cur.iter().filter(|&&m| m).count() == 1;

    let by_unique_regular = s.regularity().regular_elements().len() == 1;

    let omegas: Vec<usize> = (0..n).map(|x| s.omega(x)).collect();
    let by_omega_zero = omegas.iter().all(|&w| {
        (0..n).all(|y| s.product(w, y) == w && s.product(y, w) == w)
    });

    if by_ideal_powers != by_unique_regular || by_ideal_powers != by_omega_zero {
        return Err(VarietyError::InternalInconsistency(format!(
            "nilpotency criteria: ideal powers {by_ideal_powers}, \
             unique regular {by_unique_regular}, omega-as-zero {by_omega_zero}"
        )));
    }
    Ok(by_ideal_powers)
}

/// One fiber of the translation family over an idempotent of its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberInfo {
    pub idempotent_map: PartialInjection,
    pub elements: Vec<usize>,
    pub nilpotent: bool,
}

/// Fiber analysis of the translation family of a block-group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub image_size: usize,
    pub image_idempotents_commute: bool,
    pub fibers: Vec<FiberInfo>,
}

fn subsemigroup_on(
    s: &FiniteSemigroup,
    elements: &[usize],
) -> Result<FiniteSemigroup, VarietyError> {
    let index_of: HashMap<usize, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i))
        .collect();
    let m = elements.len();
    let mut flat = Vec::with_capacity(m * m);
    for &a in elements {
        for &b in elements {
            let p = s.product(a, b);
            let Some(&local) = index_of.get(&p) else {
                return Err(VarietyError::InternalInconsistency(format!(
                    "set {elements:?} is not closed: {a}·{b} = {p} escapes"
                )));
            };
            flat.push(local);
        }
    }
    FiniteSemigroup::from_flat(m, flat).map_err(VarietyError::from)
}

/// For each idempotent ε of the image of the translation family, verifies
/// that the fiber over ε is a nilpotent subsemigroup, and that the image's
/// idempotents commute.
pub fn malcev_fiber_check(s: &FiniteSemigroup) -> Result<FiberReport, VarietyError> {
    let check = s.is_block_group()?;
    if !check.holds {
        return Err(VarietyError::NotBlockGroup);
    }
    let rep = rep::vp_representation(s)?;
    let mut image: Vec<PartialInjection> = Vec::new();
    for e in rep.elements() {
        if !image.contains(&e.map) {
            image.push(e.map.clone());
        }
    }
    let commute = pinj::idempotents_commute(&image).map_err(|err| {
        VarietyError::InternalInconsistency(format!("image closure check: {err}"))
    })?;
    if !commute {
        return Err(VarietyError::InternalInconsistency(
            "idempotents of the translation image do not commute".to_string(),
        ));
    }
    let mut fibers = Vec::new();
    for eps in image.iter().filter(|m| m.is_idempotent()) {
        let elements: Vec<usize> = s.elements().filter(|&x| rep.map(x) == eps).collect();
        let sub = subsemigroup_on(s, &elements)?;
        let nilpotent = is_nilpotent(&sub)?;
        if !nilpotent {
            return Err(VarietyError::FiberNotNilpotent {
                idempotent: eps.clone(),
                elements,
            });
        }
        fibers.push(FiberInfo {
            idempotent_map: eps.clone(),
            elements,
            nilpotent,
        });
    }
    Ok(FiberReport {
        image_size: image.len(),
        image_idempotents_commute: commute,
        fibers,
    })
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

    fn left_zero2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap()
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

    fn assign(pairs: &[(&str, usize)]) -> HashMap<String, usize> {
        pairs.iter().map(|&(v, x)| (v.to_string(), x)).collect()
    }

    #[test]
    fn eval_examples() {
        let x = PseudoTerm::var("x");
        assert_eq!(eval_term(&z2(), &x, &assign(&[("x", 1)])).unwrap(), 1);
        let xw = PseudoTerm::omega_power(x.clone());
        assert_eq!(eval_term(&z2(), &xw, &assign(&[("x", 1)])).unwrap(), 0);
        // left-zero pair: (x^w y^w)^w = (xy)^w = x^w = x
        let t = parse_term("(x^w y^w)^w").unwrap();
        assert_eq!(
            eval_term(&left_zero2(), &t, &assign(&[("x", 0), ("y", 1)])).unwrap(),
            0
        );
        assert_eq!(
            eval_term(&z2(), &x, &assign(&[("y", 0)])).unwrap_err(),
            VarietyError::UnboundVariable("x".to_string())
        );
    }

    #[test]
    fn parser_roundtrip_and_errors() {
        let t = parse_term("(x^w y^w)^w x^w").unwrap();
        assert_eq!(t.to_string(), "(x^w y^w)^w x^w");
        let id = parse_pseudoidentity("(x^w y^w)^w = (y^w x^w)^w").unwrap();
        assert_eq!(id.variables(), &["x".to_string(), "y".to_string()]);
        assert!(parse_term("(x").is_err());
        assert!(parse_term("x^").is_err());
        assert!(parse_term("x^2").is_err());
        assert!(parse_term("").is_err());
        assert!(parse_pseudoidentity("x").is_err());
        assert!(parse_pseudoidentity("x = y = z").is_err());
        let chain = parse_identity_chain("x = y = z").unwrap();
        assert_eq!(chain.len(), 2);
        // 'w' doubles as a plain variable
        assert_eq!(parse_term("w^w").unwrap().to_string(), "w^w");
    }

    #[test]
    fn satisfaction_examples() {
        assert!(satisfies(&z2(), &bg_identity()).holds);
        let verdict = satisfies(&left_zero2(), &bg_identity());
        assert!(!verdict.holds);
        assert_eq!(
            verdict.counterexample,
            Some(vec![("x".to_string(), 0), ("y".to_string(), 1)])
        );
        let comm = parse_pseudoidentity("x y = y x").unwrap();
        assert!(satisfies(&z3(), &comm).holds);
    }

    #[test]
    fn variable_cap() {
        let id = parse_pseudoidentity("u v x y = y x v u").unwrap();
        assert_eq!(
            check_identity(&z2(), &id, DEFAULT_VARIABLE_CAP).unwrap_err(),
            VarietyError::TooManyVariables { count: 4, cap: 3 }
        );
        assert!(check_identity(&z2(), &id, 4).unwrap().holds);
    }

    #[test]
    fn ecom_and_ei_examples() {
        assert!(is_ecom(&chain2()));
        assert!(!is_ei(&chain2()));
        assert!(is_ecom(&z2()) && is_ei(&z2()));
        assert!(!is_ecom(&left_zero2()));
        // a null semigroup has the zero as its only idempotent
        assert!(is_ei(&null2()));
    }

    #[test]
    fn nilpotency_examples() {
        assert!(is_nilpotent(&null2()).unwrap());
        assert!(!is_nilpotent(&z2()).unwrap());
        assert!(!is_nilpotent(&chain2()).unwrap());
        let trivial = FiniteSemigroup::from_rows(vec![vec![0]]).unwrap();
        assert!(is_nilpotent(&trivial).unwrap());
    }

    #[test]
    fn fiber_check_examples() {
        // null2: one idempotent image map, whole semigroup as its fiber
        let report = malcev_fiber_check(&null2()).unwrap();
        assert_eq!(report.image_size, 1);
        assert_eq!(report.fibers.len(), 1);
        assert_eq!(report.fibers[0].elements, vec![0, 1]);
        assert!(report.fibers[0].nilpotent);

        // B₂: the translation family is injective, so fibers are singletons
        let report = malcev_fiber_check(&b2()).unwrap();
        assert_eq!(report.image_size, 5);
        assert!(report.fibers.iter().all(|f| f.elements.len() == 1));
        assert!(report.image_idempotents_commute);

        assert_eq!(
            malcev_fiber_check(&left_zero2()).unwrap_err(),
            VarietyError::NotBlockGroup
        );
    }
}
