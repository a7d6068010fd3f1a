//! Negation-free propositional formulas over signed-factor atoms.
//!
//! Entailment is decided through minimal models: for a monotone consequent,
//! `sigma` entails `phi` exactly when every ⊆-minimal model of `sigma`
//! satisfies `phi`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::domain::{Factor, ParseError, Signature, SzondiProfile};

/// Default cap on the number of minimal models a single formula may produce.
pub const DEFAULT_MODEL_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LplError {
    #[error("minimal-model count exceeds bound {bound}")]
    ModelBlowup { bound: usize },
    #[error("formula syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Token(#[from] ParseError),
}

/// A signed factor `g s`, true of a profile assigning `s` to `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub factor: Factor,
    pub signature: Signature,
}

impl Atom {
    pub const COUNT: usize = Factor::COUNT * Signature::COUNT;

    pub fn new(factor: Factor, signature: Signature) -> Self {
        Atom { factor, signature }
    }

    pub fn index(self) -> usize {
        self.factor.index() * Signature::COUNT + self.signature.index()
    }

    pub fn from_index(i: usize) -> Option<Atom> {
        let factor = Factor::from_index(i / Signature::COUNT)?;
        let signature = Signature::from_index(i % Signature::COUNT)?;
        Some(Atom { factor, signature })
    }

    pub fn all() -> impl Iterator<Item = Atom> {
        (0..Self::COUNT).filter_map(Atom::from_index)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(atom {} {})", self.factor, self.signature)
    }
}

/// A set of atoms, one bit per element of the 96-atom alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AtomSet(u128);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn singleton(a: Atom) -> Self {
        AtomSet(1 << a.index())
    }

    /// The eight atoms true under a profile's minimal valuation.
    pub fn of_profile(p: &SzondiProfile) -> Self {
        p.iter().map(|(g, s)| Atom::new(g, s)).collect()
    }

    pub fn contains(self, a: Atom) -> bool {
        self.0 & (1 << a.index()) != 0
    }

    pub fn insert(&mut self, a: Atom) {
        self.0 |= 1 << a.index();
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Atom> {
        (0..Atom::COUNT)
            .filter(move |&i| self.0 & (1 << i) != 0)
            .filter_map(Atom::from_index)
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut out = AtomSet::EMPTY;
        for a in iter {
            out.insert(a);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Atom(Atom),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn atom(factor: Factor, signature: Signature) -> Formula {
        Formula::Atom(Atom::new(factor, signature))
    }

    /// Conjunction of `items`; `Top` when empty, the item itself when single.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut items: Vec<Formula> = items.into_iter().collect();
        match items.len() {
            0 => Formula::Top,
            1 => items.pop().unwrap(),
            _ => Formula::And(items),
        }
    }

    /// Disjunction of `items`; `Bottom` when empty, the item itself when single.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut items: Vec<Formula> = items.into_iter().collect();
        match items.len() {
            0 => Formula::Bottom,
            1 => items.pop().unwrap(),
            _ => Formula::Or(items),
        }
    }

    /// Truth under the valuation making exactly the profile's eight atoms true.
    pub fn eval(&self, p: &SzondiProfile) -> bool {
        match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(a) => p.get(a.factor) == a.signature,
            Formula::And(cs) => cs.iter().all(|c| c.eval(p)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval(p)),
        }
    }

    /// Truth under the valuation making exactly `true_atoms` true.
    pub fn eval_atoms(&self, true_atoms: AtomSet) -> bool {
        match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(a) => true_atoms.contains(*a),
            Formula::And(cs) => cs.iter().all(|c| c.eval_atoms(true_atoms)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval_atoms(true_atoms)),
        }
    }

    /// Every atom occurring in the formula.
    pub fn atoms(&self) -> AtomSet {
        match self {
            Formula::Top | Formula::Bottom => AtomSet::EMPTY,
            Formula::Atom(a) => AtomSet::singleton(*a),
            Formula::And(cs) | Formula::Or(cs) => cs
                .iter()
                .fold(AtomSet::EMPTY, |acc, c| acc.union(c.atoms())),
        }
    }

    /// Flattens nested connectives, absorbs units and zeros, sorts and
    /// deduplicates children. Two formulas that differ only in child order or
    /// grouping share a canonical form.
    pub fn canonical(&self) -> Formula {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(_) => self.clone(),
            Formula::And(cs) => {
                let mut out = Vec::new();
                for c in cs.iter().map(Formula::canonical) {
                    match c {
                        Formula::Top => {}
                        Formula::Bottom => return Formula::Bottom,
                        Formula::And(inner) => out.extend(inner),
                        other => out.push(other),
                    }
                }
                out.sort();
                out.dedup();
                Formula::conjunction(out)
            }
            Formula::Or(cs) => {
                let mut out = Vec::new();
                for c in cs.iter().map(Formula::canonical) {
                    match c {
                        Formula::Bottom => {}
                        Formula::Top => return Formula::Top,
                        Formula::Or(inner) => out.extend(inner),
                        other => out.push(other),
                    }
                }
                out.sort();
                out.dedup();
                Formula::disjunction(out)
            }
        }
    }

    pub fn minimal_models(&self) -> Result<Vec<AtomSet>, LplError> {
        self.minimal_models_bounded(DEFAULT_MODEL_BOUND)
    }

    /// The ⊆-minimal atom sets whose exact truth satisfies the formula, in
    /// ascending order.
    pub fn minimal_models_bounded(&self, bound: usize) -> Result<Vec<AtomSet>, LplError> {
        let models = match self {
            Formula::Top => vec![AtomSet::EMPTY],
            Formula::Bottom => Vec::new(),
            Formula::Atom(a) => vec![AtomSet::singleton(*a)],
            Formula::Or(cs) => {
                let mut acc = Vec::new();
                for c in cs {
                    acc.extend(c.minimal_models_bounded(bound)?);
                    if acc.len() > bound {
                        acc = minimize(acc);
                        if acc.len() > bound {
                            return Err(LplError::ModelBlowup { bound });
                        }
                    }
                }
                minimize(acc)
            }
            Formula::And(cs) => {
                let mut acc = vec![AtomSet::EMPTY];
                for c in cs {
                    let right = c.minimal_models_bounded(bound)?;
                    if acc.len().saturating_mul(right.len()) > bound {
                        return Err(LplError::ModelBlowup { bound });
                    }
                    let mut next = Vec::with_capacity(acc.len() * right.len());
                    for l in &acc {
                        for r in &right {
                            next.push(l.union(*r));
                        }
                    }
                    acc = minimize(next);
                    if acc.is_empty() {
                        break;
                    }
                }
                acc
            }
        };
        if models.len() > bound {
            return Err(LplError::ModelBlowup { bound });
        }
        Ok(models)
    }
}

fn minimize(mut sets: Vec<AtomSet>) -> Vec<AtomSet> {
    sets.sort_by_key(|s| (s.len(), *s));
    sets.dedup();
    let mut kept: Vec<AtomSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

pub fn eval(phi: &Formula, p: &SzondiProfile) -> bool {
    phi.eval(p)
}

/// Whether `sigma` classically entails `phi` (both negation-free).
pub fn entails(sigma: &Formula, phi: &Formula) -> Result<bool, LplError> {
    entails_bounded(sigma, phi, DEFAULT_MODEL_BOUND)
}

pub fn entails_bounded(sigma: &Formula, phi: &Formula, bound: usize) -> Result<bool, LplError> {
    Ok(sigma
        .minimal_models_bounded(bound)?
        .into_iter()
        .all(|m| phi.eval_atoms(m)))
}

pub fn equivalent(phi: &Formula, psi: &Formula) -> Result<bool, LplError> {
    Ok(entails(phi, psi)? && entails(psi, phi)?)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("(top)"),
            Formula::Bottom => f.write_str("(bot)"),
            Formula::Atom(a) => a.fmt(f),
            Formula::And(cs) | Formula::Or(cs) => {
                f.write_str(if matches!(self, Formula::And(_)) {
                    "(and"
                } else {
                    "(or"
                })?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for Formula {
    type Err = LplError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser { src: s, pos: 0 };
        let phi = parser.formula()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(phi)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> LplError {
        LplError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), LplError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn symbol(&mut self) -> Result<&str, LplError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a symbol"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn formula(&mut self) -> Result<Formula, LplError> {
        self.expect('(')?;
        let head = self.symbol()?.to_string();
        let phi = match head.as_str() {
            "top" => Formula::Top,
            "bot" => Formula::Bottom,
            "atom" => {
                let factor: Factor = self.symbol()?.parse()?;
                let signature: Signature = self.symbol()?.parse()?;
                Formula::atom(factor, signature)
            }
            "and" | "or" => {
                let mut children = Vec::new();
                loop {
                    self.skip_ws();
                    if self.peek() == Some(')') {
                        break;
                    }
                    children.push(self.formula()?);
                }
                // (and) and (or) read back as the empty connectives
                if head == "and" {
                    Formula::And(children)
                } else {
                    Formula::Or(children)
                }
            }
            other => return Err(self.error(&format!("unknown head `{other}`"))),
        };
        self.expect(')')?;
        Ok(phi)
    }
}
