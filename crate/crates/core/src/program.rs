//! Ground normal rules and programs.
//!
//! A program is a set of rules. It keeps the order in which rules were first
//! seen, so printing is stable, but equality ignores that order.

use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::atom::{Atom, AtomSet};

/// A body literal: an atom or its default negation `not atom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal { atom, negated: false }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal { atom, negated: true }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "not {}", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

/// `head :- pos_1, ..., pos_m, not neg_1, ..., not neg_n.`
///
/// The positive and default parts of the body are kept sorted and
/// duplicate-free, so two rules with the same literal set compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    head: Atom,
    pos: Vec<Atom>,
    neg: Vec<Atom>,
}

impl Rule {
    pub fn new(head: Atom, body: impl IntoIterator<Item = Literal>) -> Rule {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for lit in body {
            if lit.negated {
                neg.push(lit.atom);
            } else {
                pos.push(lit.atom);
            }
        }
        Rule::from_parts(head, pos, neg)
    }

    pub fn from_parts(head: Atom, mut pos: Vec<Atom>, mut neg: Vec<Atom>) -> Rule {
        pos.sort_unstable();
        pos.dedup();
        neg.sort_unstable();
        neg.dedup();
        Rule { head, pos, neg }
    }

    pub fn fact(head: Atom) -> Rule {
        Rule { head, pos: Vec::new(), neg: Vec::new() }
    }

    pub fn head(&self) -> Atom {
        self.head
    }

    /// Atoms of the positive body literals.
    pub fn pos(&self) -> &[Atom] {
        &self.pos
    }

    /// Atoms occurring under `not` in the body.
    pub fn neg(&self) -> &[Atom] {
        &self.neg
    }

    /// Body literals, positive ones first.
    pub fn body(&self) -> impl Iterator<Item = Literal> + '_ {
        self.pos
            .iter()
            .map(|&a| Literal::pos(a))
            .chain(self.neg.iter().map(|&a| Literal::neg(a)))
    }

    pub fn is_fact(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn has_negation(&self) -> bool {
        !self.neg.is_empty()
    }

    pub fn body_atoms(&self) -> AtomSet {
        self.pos.iter().chain(&self.neg).copied().collect()
    }

    pub fn atoms(&self) -> AtomSet {
        let mut set = self.body_atoms();
        set.insert(self.head);
        set
    }

    /// True when `atom` occurs in the body, positively or negatively.
    pub fn mentions_in_body(&self, atom: Atom) -> bool {
        self.pos.binary_search(&atom).is_ok() || self.neg.binary_search(&atom).is_ok()
    }

    /// The same rule with one body literal dropped.
    pub fn without(&self, lit: Literal) -> Rule {
        let mut out = self.clone();
        let part = if lit.negated { &mut out.neg } else { &mut out.pos };
        part.retain(|&a| a != lit.atom);
        out
    }

    /// The same rule with an extra body literal.
    pub fn with(&self, lit: Literal) -> Rule {
        let mut pos = self.pos.clone();
        let mut neg = self.neg.clone();
        if lit.negated {
            neg.push(lit.atom);
        } else {
            pos.push(lit.atom);
        }
        Rule::from_parts(self.head, pos, neg)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        for (i, lit) in self.body().enumerate() {
            f.write_str(if i == 0 { " :- " } else { ", " })?;
            write!(f, "{lit}")?;
        }
        f.write_str(".")
    }
}

/// A finite set of ground normal rules.
#[derive(Clone, Debug, Default)]
pub struct Program {
    rules: Vec<Rule>,
}

impl Program {
    /// Collects rules, dropping later duplicates.
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Program {
        let mut seen = HashSet::new();
        let rules = rules.into_iter().filter(|r| seen.insert(r.clone())).collect();
        Program { rules }
    }

    pub fn empty() -> Program {
        Program::default()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rule> {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn contains(&self, rule: &Rule) -> bool {
        self.rules.contains(rule)
    }

    /// The Herbrand base: every atom occurring in the program.
    pub fn atoms(&self) -> AtomSet {
        self.rules.iter().flat_map(|r| r.atoms()).collect()
    }

    pub fn heads(&self) -> AtomSet {
        self.rules.iter().map(Rule::head).collect()
    }

    /// The fact rules, in program order.
    pub fn facts(&self) -> Vec<&Rule> {
        self.rules.iter().filter(|r| r.is_fact()).collect()
    }

    /// Heads of the fact rules.
    pub fn fact_atoms(&self) -> AtomSet {
        self.rules.iter().filter(|r| r.is_fact()).map(Rule::head).collect()
    }

    /// `P ∪ S`: one fact per atom of `atoms`, merged as a set.
    pub fn add_facts<'a>(&self, atoms: impl IntoIterator<Item = &'a Atom>) -> Program {
        Program::new(self.rules.iter().cloned().chain(atoms.into_iter().map(|&a| Rule::fact(a))))
    }

    pub fn union(&self, other: &Program) -> Program {
        Program::new(self.rules.iter().chain(other.rules.iter()).cloned())
    }

    /// Keeps the rules whose index satisfies `keep`.
    pub fn select(&self, mut keep: impl FnMut(usize) -> bool) -> Program {
        Program {
            rules: self.rules.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, r)| r.clone()).collect(),
        }
    }

    /// Replaces rule `index`; if the replacement already exists elsewhere the
    /// rule is dropped instead.
    pub fn replace(&self, index: usize, rule: Rule) -> Program {
        let mut rules = self.rules.clone();
        rules[index] = rule;
        Program::new(rules)
    }

    /// Rules sorted into a canonical order, used as a cache key.
    pub fn canonical(&self) -> Vec<Rule> {
        let mut rules = self.rules.clone();
        rules.sort();
        rules
    }

    pub fn is_positive(&self) -> bool {
        self.rules.iter().all(|r| !r.has_negation())
    }
}

impl PartialEq for Program {
    fn eq(&self, other: &Program) -> bool {
        if self.rules.len() != other.rules.len() {
            return false;
        }
        let mine: HashSet<&Rule> = self.rules.iter().collect();
        other.rules.iter().all(|r| mine.contains(r))
    }
}

impl Eq for Program {}

impl FromIterator<Rule> for Program {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Program {
        Program::new(iter)
    }
}

impl<'a> IntoIterator for &'a Program {
    type Item = &'a Rule;
    type IntoIter = std::slice::Iter<'a, Rule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

impl Serialize for Program {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
