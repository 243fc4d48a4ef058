use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::program::Program;
use crate::semantics::{Evaluator, SemanticsId};

use super::{existence_host, Property, Witness};

/// Existence, gl, lg, cm, cut for the twelve possible types; `0` marks failure.
pub const TYPE_TABLE: [[u8; 5]; 12] = [
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1],
    [0, 0, 1, 0, 0],
    [0, 0, 1, 0, 1],
    [1, 1, 0, 0, 0],
    [1, 1, 0, 0, 1],
    [1, 1, 0, 1, 0],
    [1, 1, 0, 1, 1],
    [1, 1, 1, 0, 0],
    [1, 1, 1, 0, 1],
    [1, 1, 1, 1, 0],
    [1, 1, 1, 1, 1],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ConfirmedFailed,
    NotFalsified,
    Unknown,
}

impl Status {
    fn bit(self) -> Option<u8> {
        match self {
            Status::ConfirmedFailed => Some(0),
            Status::NotFalsified => Some(1),
            Status::Unknown => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeVector {
    pub exists: Status,
    pub gl: Status,
    pub lg: Status,
    pub cm: Status,
    pub cut: Status,
}

impl TypeVector {
    pub fn statuses(&self) -> [Status; 5] {
        [self.exists, self.gl, self.lg, self.cm, self.cut]
    }

    /// The 0/1 pattern, or `None` if some entry is unknown.
    pub fn pattern(&self) -> Option<[u8; 5]> {
        let s = self.statuses();
        let mut out = [0u8; 5];
        for (o, st) in out.iter_mut().zip(s) {
            *o = st.bit()?;
        }
        Some(out)
    }

    /// Whether the vector realises one of the combinations ruled out by
    /// defectivity: `∃=0 ∧ gl=1`, `∃=1 ∧ gl=0` or `∃=0 ∧ cm=1`.
    pub fn excluded_pattern(&self) -> Option<&'static str> {
        use Status::*;
        match (self.exists, self.gl, self.cm) {
            (ConfirmedFailed, NotFalsified, _) => Some("exists=0 and gl=1"),
            (NotFalsified, ConfirmedFailed, _) => Some("exists=1 and gl=0"),
            (ConfirmedFailed, _, NotFalsified) => Some("exists=0 and cm=1"),
            _ => None,
        }
    }

    fn set(&mut self, key: &str) {
        let slot = match key {
            "exists" => &mut self.exists,
            "gl" => &mut self.gl,
            "lg" => &mut self.lg,
            "cm" => &mut self.cm,
            _ => &mut self.cut,
        };
        *slot = Status::ConfirmedFailed;
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .statuses()
            .iter()
            .map(|s| s.bit().map_or("?".to_string(), |b| b.to_string()))
            .collect();
        write!(f, "{}", cells.join(","))
    }
}

/// The row (1-based) of `TYPE_TABLE` matching a fully known vector.
pub fn table_row(vector: &TypeVector) -> Option<usize> {
    let pattern = vector.pattern()?;
    TYPE_TABLE.iter().position(|row| *row == pattern).map(|i| i + 1)
}

/// A stored failure witness for one vector entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evidence {
    pub property: &'static str,
    pub source: String,
    pub via: Property,
    pub program: Program,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub semantics: SemanticsId,
    pub vector: TypeVector,
    pub row: Option<usize>,
    pub evidence: Vec<Evidence>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
    /// The excluded combination the vector realises, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<&'static str>,
}

impl Classification {
    pub fn evidence_for(&self, property: &str) -> impl Iterator<Item = &Evidence> {
        let property = property.to_string();
        self.evidence.iter().filter(move |e| e.property == property)
    }
}

struct Collector {
    vector: TypeVector,
    evidence: Vec<Evidence>,
}

impl Collector {
    fn record(&mut self, property: &'static str, source: &str, via: Property, program: &Program, witness: &Witness) {
        self.vector.set(property);
        let seen = self.evidence.iter().any(|e| e.property == property && e.source == source);
        if !seen {
            self.evidence.push(Evidence {
                property,
                source: source.into(),
                via,
                program: program.clone(),
                witness: witness.clone(),
            });
        }
    }
}

impl Evaluator {
    /// [`Evaluator::classify_vector`], with an excluded combination reported
    /// as an error.
    pub fn classify<'a>(
        &self,
        corpus: impl IntoIterator<Item = (&'a str, &'a Program)>,
        sem: SemanticsId,
    ) -> Result<Classification> {
        let c = self.classify_vector(corpus, sem)?;
        match c.excluded {
            Some(pattern) => Err(Error::TableInconsistent { semantics: sem.name().into(), pattern: pattern.into() }),
            None => Ok(c),
        }
    }

    /// Runs every checker over the corpus and marks each property failed when
    /// some program yields a witness. A defectivity witness fails existence,
    /// gl and cm; an excessive model fails cut; an irregular model fails lg.
    pub fn classify_vector<'a>(
        &self,
        corpus: impl IntoIterator<Item = (&'a str, &'a Program)>,
        sem: SemanticsId,
    ) -> Result<Classification> {
        if !sem.is_asm() {
            return Err(Error::NotAsm(sem.name().into()));
        }
        let mut c = Collector {
            vector: TypeVector {
                exists: Status::NotFalsified,
                gl: Status::NotFalsified,
                lg: Status::NotFalsified,
                cm: Status::NotFalsified,
                cut: Status::NotFalsified,
            },
            evidence: Vec::new(),
        };
        let mut skipped = Vec::new();
        let mut checked = 0;
        for (name, program) in corpus {
            match self.classify_one(&mut c, name, program, sem) {
                Ok(()) => checked += 1,
                Err(Error::TooManyAtoms { .. }) => skipped.push(name.to_string()),
                Err(e) => return Err(e),
            }
        }
        if checked == 0 {
            c.vector = TypeVector {
                exists: Status::Unknown,
                gl: Status::Unknown,
                lg: Status::Unknown,
                cm: Status::Unknown,
                cut: Status::Unknown,
            };
        }
        Ok(Classification {
            semantics: sem,
            row: table_row(&c.vector),
            excluded: c.vector.excluded_pattern(),
            vector: c.vector,
            evidence: c.evidence,
            skipped,
        })
    }

    fn classify_one(&self, c: &mut Collector, name: &str, program: &Program, sem: SemanticsId) -> Result<()> {
        if self.models(program, sem)?.is_empty() {
            c.record("exists", name, Property::Existence, program, &Witness::NoModels);
            let (host, _, _) = existence_host(program);
            let report = self.check_defectivity(&host, sem)?;
            if let Some(w) = report.witnesses.first() {
                for key in ["exists", "gl", "cm"] {
                    c.record(key, name, Property::Defectivity, &host, w);
                }
            }
            return Ok(());
        }
        let defects = self.check_defectivity(program, sem)?;
        if let Some(w) = defects.witnesses.first() {
            for key in ["exists", "gl", "cm"] {
                c.record(key, name, Property::Defectivity, program, w);
            }
        }
        let cumulativity = self.check_cm_cut(program, sem)?;
        for w in &cumulativity.witnesses {
            if let Witness::CmCut(probe) = w {
                if probe.cm_violated() {
                    c.record("cm", name, Property::Cm, program, w);
                }
                if probe.cut_violated() {
                    c.record("cut", name, Property::Cut, program, w);
                }
            }
        }
        if let Some(w) = self.check_excessiveness(program, sem)?.witnesses.first() {
            c.record("cut", name, Property::Excessiveness, program, w);
        }
        let relevance = self.check_relevance(program, sem)?;
        for w in &relevance.witnesses {
            match w {
                Witness::Relevance { direction: super::Direction::GlobalToLocal, .. } => {
                    c.record("gl", name, Property::Relevance, program, w)
                }
                Witness::Relevance { .. } => c.record("lg", name, Property::Relevance, program, w),
                Witness::LgViaIrregularity { .. } => c.record("lg", name, Property::Irregularity, program, w),
                _ => {}
            }
        }
        Ok(())
    }
}

/// Classifies `sem` over unnamed programs.
pub fn classify(corpus: &[Program], sem: SemanticsId) -> Result<Classification> {
    let names: Vec<String> = (0..corpus.len()).map(|i| format!("#{i}")).collect();
    Evaluator::default().classify(names.iter().map(String::as_str).zip(corpus), sem)
}
