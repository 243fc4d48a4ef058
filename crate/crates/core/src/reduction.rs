//! Program reduction operations and the remainder engine.
//!
//! Each operation removes a rule or a body literal, so every reduction
//! sequence terminates. The engine applies the first applicable instance in a
//! fixed operation order and restarts after every change; [`remainder_random`]
//! picks instances at random and must reach the same fixpoint.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::atom::AtomSet;
use crate::error::{Error, Result};
use crate::graph::RuleGraph;
use crate::program::{Literal, Program, Rule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ReductionOp {
    /// PR: drop `not b` when `b` heads no rule.
    PositiveReduction,
    /// NR: delete a rule containing `not b` when `b` is a fact.
    NegativeReduction,
    /// LNR: NR, except for rules in a loop through `not b`.
    LayeredNegativeReduction,
    /// S: drop a positive literal `b` when `b` is a fact.
    Success,
    /// LS: S, except for rules in a loop through `b`.
    LayeredSuccess,
    /// F: delete a rule with a positive literal `b` that heads no rule.
    Failure,
    /// L: delete the rules whose positive body meets the greatest unfounded set.
    LoopDetection,
}

impl ReductionOp {
    pub fn short_name(self) -> &'static str {
        match self {
            ReductionOp::PositiveReduction => "PR",
            ReductionOp::NegativeReduction => "NR",
            ReductionOp::LayeredNegativeReduction => "LNR",
            ReductionOp::Success => "S",
            ReductionOp::LayeredSuccess => "LS",
            ReductionOp::Failure => "F",
            ReductionOp::LoopDetection => "L",
        }
    }
}

impl fmt::Display for ReductionOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// A set of reduction operations. NR/LNR and S/LS are mutually exclusive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpSet {
    ops: BTreeSet<ReductionOp>,
}

impl OpSet {
    pub fn new(ops: impl IntoIterator<Item = ReductionOp>) -> Result<OpSet> {
        use ReductionOp::*;
        let ops: BTreeSet<_> = ops.into_iter().collect();
        if ops.contains(&NegativeReduction) && ops.contains(&LayeredNegativeReduction) {
            return Err(Error::InvalidOpSet("NR and LNR cannot be combined".into()));
        }
        if ops.contains(&Success) && ops.contains(&LayeredSuccess) {
            return Err(Error::InvalidOpSet("S and LS cannot be combined".into()));
        }
        Ok(OpSet { ops })
    }

    /// `{PR, NR, S, F, L}`
    pub fn wfs() -> OpSet {
        use ReductionOp::*;
        OpSet { ops: [PositiveReduction, NegativeReduction, Success, Failure, LoopDetection].into() }
    }

    /// `{PR, LNR, S, F, L}`
    pub fn mh() -> OpSet {
        use ReductionOp::*;
        OpSet { ops: [PositiveReduction, LayeredNegativeReduction, Success, Failure, LoopDetection].into() }
    }

    /// `{PR, LNR, LS, F, L}`
    pub fn mh_ls() -> OpSet {
        use ReductionOp::*;
        OpSet { ops: [PositiveReduction, LayeredNegativeReduction, LayeredSuccess, Failure, LoopDetection].into() }
    }

    pub fn contains(&self, op: ReductionOp) -> bool {
        self.ops.contains(&op)
    }

    pub fn iter(&self) -> impl Iterator<Item = ReductionOp> + '_ {
        self.ops.iter().copied()
    }

    /// The operations in engine order: L, F, S/LS, NR/LNR, PR.
    fn engine_order(&self) -> Vec<ReductionOp> {
        use ReductionOp::*;
        [LoopDetection, Failure, Success, LayeredSuccess, NegativeReduction, LayeredNegativeReduction, PositiveReduction]
            .into_iter()
            .filter(|op| self.contains(*op))
            .collect()
    }
}

/// Named reduction systems accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    Wfs,
    Mh,
    MhLs,
}

impl System {
    pub fn ops(self) -> OpSet {
        match self {
            System::Wfs => OpSet::wfs(),
            System::Mh => OpSet::mh(),
            System::MhLs => OpSet::mh_ls(),
        }
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<System> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "wfs" => Ok(System::Wfs),
            "mh" => Ok(System::Mh),
            "mhls" | "mh_ls" => Ok(System::MhLs),
            _ => Err(Error::UnknownSystem(s.into())),
        }
    }
}

/// One applicable reduction instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    DropLiteral { rule: usize, literal: Literal },
    DeleteRules(Vec<usize>),
}

/// Facts about the current program shared by the instance finders.
struct View<'a> {
    program: &'a Program,
    heads: AtomSet,
    facts: AtomSet,
    graph: Option<RuleGraph>,
}

impl<'a> View<'a> {
    fn new(program: &'a Program, need_graph: bool) -> Self {
        View {
            program,
            heads: program.heads(),
            facts: program.fact_atoms(),
            graph: need_graph.then(|| RuleGraph::new(program)),
        }
    }

    fn in_loop_through(&self, rule: usize, lit: Literal) -> bool {
        self.graph.as_ref().is_some_and(|g| g.in_loop_through(rule, lit.atom))
    }

    fn steps(&self, op: ReductionOp) -> Vec<Step> {
        use ReductionOp::*;
        let rules = self.program.rules().iter().enumerate();
        match op {
            PositiveReduction => rules
                .flat_map(|(i, r)| {
                    r.neg()
                        .iter()
                        .filter(|b| !self.heads.contains(b))
                        .map(move |&b| Step::DropLiteral { rule: i, literal: Literal::neg(b) })
                })
                .collect(),
            NegativeReduction | LayeredNegativeReduction => rules
                .filter(|(i, r)| {
                    r.neg().iter().any(|&b| {
                        self.facts.contains(&b)
                            && (op == NegativeReduction || !self.in_loop_through(*i, Literal::neg(b)))
                    })
                })
                .map(|(i, _)| Step::DeleteRules(vec![i]))
                .collect(),
            Success | LayeredSuccess => rules
                .flat_map(|(i, r)| {
                    r.pos()
                        .iter()
                        .filter(move |&&b| {
                            self.facts.contains(&b) && (op == Success || !self.in_loop_through(i, Literal::pos(b)))
                        })
                        .map(move |&b| Step::DropLiteral { rule: i, literal: Literal::pos(b) })
                })
                .collect(),
            Failure => rules
                .filter(|(_, r)| r.pos().iter().any(|b| !self.heads.contains(b)))
                .map(|(i, _)| Step::DeleteRules(vec![i]))
                .collect(),
            LoopDetection => {
                let unfounded = greatest_unfounded_set(self.program);
                let doomed: Vec<usize> = rules
                    .filter(|(_, r)| r.pos().iter().any(|b| unfounded.contains(b)))
                    .map(|(i, _)| i)
                    .collect();
                if doomed.is_empty() {
                    Vec::new()
                } else {
                    vec![Step::DeleteRules(doomed)]
                }
            }
        }
    }
}

fn needs_graph(op: ReductionOp) -> bool {
    matches!(op, ReductionOp::LayeredNegativeReduction | ReductionOp::LayeredSuccess)
}

/// The greatest set `A` of atoms such that every rule with head in `A` has a
/// positive body atom in `A`: the atoms outside the least model of the program
/// with its default literals deleted.
pub fn greatest_unfounded_set(program: &Program) -> AtomSet {
    let mut derived = AtomSet::new();
    loop {
        let before = derived.len();
        for r in program {
            if !derived.contains(&r.head()) && r.pos().iter().all(|b| derived.contains(b)) {
                derived.insert(r.head());
            }
        }
        if derived.len() == before {
            break;
        }
    }
    program.atoms().into_iter().filter(|a| !derived.contains(a)).collect()
}

/// All applicable instances of `op` on `program`.
pub fn instances(program: &Program, op: ReductionOp) -> Vec<Step> {
    View::new(program, needs_graph(op)).steps(op)
}

pub fn apply(program: &Program, step: &Step) -> Program {
    match step {
        Step::DropLiteral { rule, literal } => {
            let replaced: Rule = program.rules()[*rule].without(*literal);
            program.replace(*rule, replaced)
        }
        Step::DeleteRules(doomed) => program.select(|i| !doomed.contains(&i)),
    }
}

fn single(program: &Program, op: ReductionOp) -> Option<Program> {
    instances(program, op).first().map(|step| apply(program, step))
}

/// One positive reduction step, or `None` when none applies.
pub fn op_positive_reduction(program: &Program) -> Option<Program> {
    single(program, ReductionOp::PositiveReduction)
}

pub fn op_negative_reduction(program: &Program) -> Option<Program> {
    single(program, ReductionOp::NegativeReduction)
}

pub fn op_layered_negative_reduction(program: &Program) -> Option<Program> {
    single(program, ReductionOp::LayeredNegativeReduction)
}

pub fn op_success(program: &Program) -> Option<Program> {
    single(program, ReductionOp::Success)
}

pub fn op_layered_success(program: &Program) -> Option<Program> {
    single(program, ReductionOp::LayeredSuccess)
}

pub fn op_failure(program: &Program) -> Option<Program> {
    single(program, ReductionOp::Failure)
}

pub fn op_loop_detection(program: &Program) -> Option<Program> {
    single(program, ReductionOp::LoopDetection)
}

/// Applies operations of `ops` until none applies.
pub fn remainder(program: &Program, ops: &OpSet) -> Program {
    let order = ops.engine_order();
    let mut current = program.clone();
    'outer: loop {
        let view = View::new(&current, order.iter().any(|&op| needs_graph(op)));
        for &op in &order {
            if let Some(step) = view.steps(op).into_iter().next() {
                current = apply(&current, &step);
                continue 'outer;
            }
        }
        return current;
    }
}

/// Same fixpoint as [`remainder`], reached by choosing uniformly among all
/// applicable instances at each step.
pub fn remainder_random<R: Rng + ?Sized>(program: &Program, ops: &OpSet, rng: &mut R) -> Program {
    let order = ops.engine_order();
    let mut current = program.clone();
    loop {
        let view = View::new(&current, order.iter().any(|&op| needs_graph(op)));
        let steps: Vec<Step> = order.iter().flat_map(|&op| view.steps(op)).collect();
        if steps.is_empty() {
            return current;
        }
        let pick = rng.random_range(0..steps.len());
        current = apply(&current, &steps[pick]);
    }
}
