//! Instance-level property checkers.
//!
//! A checker inspects one program under one semantics. It either certifies a
//! failure with witnesses that re-derive it, or reports that the program does
//! not falsify the property.

mod bridge;
mod classify;
mod cumulativity;
mod relevance;
mod structural;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::atom::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::program::Program;
use crate::semantics::{Evaluator, ModelKey, ModelSet, SemanticsId};

pub use bridge::{existence_host, transform_failure_witness, FailureTransform};
pub use classify::{classify, table_row, Classification, Evidence, Status, TypeVector, TYPE_TABLE};
pub use cumulativity::CmCutProbe;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Existence,
    Cm,
    Cut,
    Cumulativity,
    Relevance,
    Defectivity,
    Excessiveness,
    Irregularity,
}

impl Property {
    pub const CHECKABLE: [Property; 7] = [
        Property::Cm,
        Property::Cut,
        Property::Cumulativity,
        Property::Relevance,
        Property::Defectivity,
        Property::Excessiveness,
        Property::Irregularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Existence => "existence",
            Property::Cm => "cm",
            Property::Cut => "cut",
            Property::Cumulativity => "cumulativity",
            Property::Relevance => "relevance",
            Property::Defectivity => "defectivity",
            Property::Excessiveness => "excessiveness",
            Property::Irregularity => "irregularity",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property> {
        let key = s.to_ascii_lowercase();
        let p = match key.as_str() {
            "existence" => Property::Existence,
            "cm" | "cautious_monotony" | "cautious-monotony" => Property::Cm,
            "cut" => Property::Cut,
            "cumulativity" => Property::Cumulativity,
            "relevance" => Property::Relevance,
            "defectivity" => Property::Defectivity,
            "excessiveness" => Property::Excessiveness,
            "irregularity" => Property::Irregularity,
            _ => return Err(Error::UnknownProperty(s.into())),
        };
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnInstance,
    FailsOnInstance,
    Inapplicable,
}

/// Which relevance direction a witness concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `a ∈ ker(P) ⇒ a ∈ ker(Rel_P(a))`
    GlobalToLocal,
    /// `a ∈ ker(Rel_P(a)) ⇒ a ∈ ker(P)`
    LocalToGlobal,
}

/// Evidence attached to a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `SEM(P) = ∅`.
    NoModels,
    /// One added set `S ⊆ ker(P)` and the comparisons it broke.
    CmCut(CmCutProbe),
    Relevance {
        atom: Atom,
        direction: Direction,
        kernel: AtomSet,
        relevant_kernel: AtomSet,
        relevant: Program,
    },
    /// Local-to-global relevance failure read off an irregular model.
    LgViaIrregularity { level: u32, model: ModelKey },
    /// `SEM(P^{>T} ∪ M^+) = ∅` although `SEM(P) ≠ ∅`.
    Defective { level: u32, segment_model: AtomSet, upper: Program },
    Excessive {
        level: u32,
        model: ModelKey,
        segment_model: AtomSet,
        companion: ModelKey,
        segment_models: Vec<AtomSet>,
    },
    Irregular { level: u32, model: ModelKey, restricted: AtomSet, segment_models: Vec<AtomSet> },
    /// A kernel that a comparison needed is undefined.
    KernelUndefined { context: String, side: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub semantics: SemanticsId,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    /// Sub-checks skipped because a kernel was undefined.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inapplicable: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl PropertyReport {
    fn from_witnesses(property: Property, semantics: SemanticsId, witnesses: Vec<Witness>, inapplicable: Vec<Witness>) -> Self {
        let verdict = if witnesses.is_empty() { Verdict::HoldsOnInstance } else { Verdict::FailsOnInstance };
        PropertyReport { property, semantics, verdict, witnesses, inapplicable, reason: None }
    }

    fn inapplicable(property: Property, semantics: SemanticsId, reason: &str) -> Self {
        PropertyReport {
            property,
            semantics,
            verdict: Verdict::Inapplicable,
            witnesses: Vec::new(),
            inapplicable: vec![Witness::KernelUndefined { context: reason.into(), side: "P".into() }],
            reason: Some(reason.into()),
        }
    }

    pub fn fails(&self) -> bool {
        self.verdict == Verdict::FailsOnInstance
    }

    /// Refined or classical cautious monotony violated for some `S`.
    pub fn cm_failed(&self) -> bool {
        self.probes().any(|p| p.cm_violated())
    }

    pub fn cut_failed(&self) -> bool {
        self.probes().any(|p| p.cut_violated())
    }

    pub fn classical_cm_failed(&self) -> bool {
        self.probes().any(|p| p.classical_cm)
    }

    pub fn classical_cut_failed(&self) -> bool {
        self.probes().any(|p| p.classical_cut)
    }

    pub fn probes(&self) -> impl Iterator<Item = &CmCutProbe> {
        self.witnesses.iter().filter_map(|w| match w {
            Witness::CmCut(p) => Some(p),
            _ => None,
        })
    }

    pub fn gl_failed(&self) -> bool {
        self.witnesses
            .iter()
            .any(|w| matches!(w, Witness::Relevance { direction: Direction::GlobalToLocal, .. }))
    }

    pub fn lg_failed(&self) -> bool {
        self.lg_direct_failed() || self.witnesses.iter().any(|w| matches!(w, Witness::LgViaIrregularity { .. }))
    }

    /// An atom violating the local-to-global direction of the relevance formula.
    pub fn lg_direct_failed(&self) -> bool {
        self.witnesses
            .iter()
            .any(|w| matches!(w, Witness::Relevance { direction: Direction::LocalToGlobal, .. }))
    }
}

/// Intersection of the positive parts of the models.
pub fn semantic_kernel(models: &ModelSet) -> Result<AtomSet> {
    models.kernel().ok_or(Error::KernelUndefined)
}

fn segment_positives(models: &ModelSet) -> Vec<AtomSet> {
    models.iter().map(|m| m.positive().clone()).collect()
}

impl Evaluator {
    /// Runs the checker for `property`.
    pub fn check(&self, program: &Program, sem: SemanticsId, property: Property) -> Result<PropertyReport> {
        match property {
            Property::Existence => {
                let models = self.models(program, sem)?;
                let w = if models.is_empty() { vec![Witness::NoModels] } else { Vec::new() };
                Ok(PropertyReport::from_witnesses(property, sem, w, Vec::new()))
            }
            Property::Cm | Property::Cut | Property::Cumulativity => {
                let full = self.check_cm_cut(program, sem)?;
                Ok(cumulativity::select(full, property))
            }
            Property::Relevance => self.check_relevance(program, sem),
            Property::Defectivity => self.check_defectivity(program, sem),
            Property::Excessiveness => self.check_excessiveness(program, sem),
            Property::Irregularity => self.check_irregularity(program, sem),
        }
    }
}

fn default_evaluator() -> Evaluator {
    Evaluator::default()
}

pub fn check_cm_cut(program: &Program, sem: SemanticsId) -> Result<PropertyReport> {
    default_evaluator().check_cm_cut(program, sem)
}

pub fn check_relevance(program: &Program, sem: SemanticsId) -> Result<PropertyReport> {
    default_evaluator().check_relevance(program, sem)
}

pub fn check_defectivity(program: &Program, sem: SemanticsId) -> Result<PropertyReport> {
    default_evaluator().check_defectivity(program, sem)
}

pub fn check_excessiveness(program: &Program, sem: SemanticsId) -> Result<PropertyReport> {
    default_evaluator().check_excessiveness(program, sem)
}

pub fn check_irregularity(program: &Program, sem: SemanticsId) -> Result<PropertyReport> {
    default_evaluator().check_irregularity(program, sem)
}
