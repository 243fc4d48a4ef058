//! The embedded reference programs and their expected outputs.

use serde::Deserialize;
use serde_json::Value;

use crate::error::Result;
use crate::parse::parse_program;
use crate::program::Program;
use crate::report::{matches, run, Request};
use crate::semantics::Evaluator;

/// Program file name stems with their text, in display order.
pub const SOURCES: [(&str, &str); 9] = [
    ("reducible", include_str!("../corpus/reducible.lp")),
    ("defective", include_str!("../corpus/defective.lp")),
    ("sm_cm_failure", include_str!("../corpus/sm_cm_failure.lp")),
    ("mh_cm_cut_failure", include_str!("../corpus/mh_cm_cut_failure.lp")),
    ("excessive", include_str!("../corpus/excessive.lp")),
    ("irregular", include_str!("../corpus/irregular.lp")),
    ("odd_loop", include_str!("../corpus/odd_loop.lp")),
    ("no_sustainable_model", include_str!("../corpus/no_sustainable_model.lp")),
    ("hypothesis_shift", include_str!("../corpus/hypothesis_shift.lp")),
];

const EXPECTATIONS: &str = include_str!("../corpus/expectations.json");

#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct Expectation {
    pub request: Request,
    pub expected: Value,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub program: Program,
    pub expectations: Vec<Expectation>,
}

/// The outcome of one expectation.
#[derive(Clone, Debug)]
pub struct Check {
    pub entry: &'static str,
    pub expectation: Expectation,
    pub actual: Result<Value>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.actual.as_ref().is_ok_and(|v| matches(&self.expectation.expected, v))
    }
}

pub fn entries() -> Vec<CorpusEntry> {
    let mut expectations: std::collections::HashMap<String, Vec<Expectation>> =
        serde_json::from_str(EXPECTATIONS).expect("embedded expectations are valid");
    SOURCES
        .iter()
        .map(|&(name, source)| CorpusEntry {
            name,
            source,
            program: parse_program(source).expect("embedded programs parse"),
            expectations: expectations.remove(name).unwrap_or_default(),
        })
        .collect()
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    entries().into_iter().find(|e| e.name == name)
}

/// Runs every expectation of every entry.
pub fn verify(ev: &Evaluator) -> Vec<Check> {
    entries()
        .into_iter()
        .flat_map(|e| {
            let program = e.program;
            let name = e.name;
            e.expectations.into_iter().map(move |expectation| Check {
                entry: name,
                actual: run(ev, &program, &expectation.request),
                expectation,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_expectation_names_an_entry() {
        let map: std::collections::HashMap<String, Value> = serde_json::from_str(EXPECTATIONS).unwrap();
        for name in map.keys() {
            assert!(SOURCES.iter().any(|(n, _)| n == name), "{name}");
        }
    }

    #[test]
    fn sources_match_the_shipped_files() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        let mut files: Vec<String> = std::fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .filter_map(|f| f.strip_suffix(".lp").map(str::to_string))
            .collect();
        files.sort();
        let mut names: Vec<String> = SOURCES.iter().map(|(n, _)| n.to_string()).collect();
        names.sort();
        assert_eq!(files, names);
    }
}
