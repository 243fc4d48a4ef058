use crate::error::Result;
use crate::graph::relevant_subprogram;
use crate::program::Program;
use crate::semantics::{Evaluator, SemanticsId};

use super::{Direction, Property, PropertyReport, Witness};

impl Evaluator {
    /// Evaluates `a ∈ ker(P) ⇔ a ∈ ker(Rel_P(a))` for every atom `a` of `P`.
    /// Irregular models are reported as local-to-global failures as well.
    pub fn check_relevance(&self, program: &Program, sem: SemanticsId) -> Result<PropertyReport> {
        let kernel = self.models(program, sem)?.kernel();
        let mut witnesses = Vec::new();
        let mut inapplicable = Vec::new();
        for atom in program.atoms() {
            let relevant = relevant_subprogram(program, atom);
            let relevant_kernel = self.models(&relevant, sem)?.kernel();
            let (kernel, relevant_kernel) = match (&kernel, relevant_kernel) {
                (Some(k), Some(r)) => (k.clone(), r),
                (k, r) => {
                    let side = match (k.is_none(), r.is_none()) {
                        (true, true) => "P and Rel_P(a)",
                        (true, false) => "P",
                        _ => "Rel_P(a)",
                    };
                    inapplicable.push(Witness::KernelUndefined { context: format!("a = {atom}"), side: side.into() });
                    continue;
                }
            };
            let global = kernel.contains(&atom);
            let local = relevant_kernel.contains(&atom);
            if global != local {
                let direction = if global { Direction::GlobalToLocal } else { Direction::LocalToGlobal };
                witnesses.push(Witness::Relevance { atom, direction, kernel, relevant_kernel, relevant });
            }
        }
        let irregular = self.check_irregularity(program, sem)?;
        for w in irregular.witnesses {
            if let Witness::Irregular { level, model, .. } = w {
                witnesses.push(Witness::LgViaIrregularity { level, model });
            }
        }
        Ok(PropertyReport::from_witnesses(Property::Relevance, sem, witnesses, inapplicable))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::{atom_set, Atom};
    use crate::parse::parse_program;
    use crate::properties::Verdict;

    fn p(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    #[test]
    fn stable_models_fail_global_to_local_on_defective_program() {
        let report = Evaluator::default()
            .check_relevance(&p("a :- not b. b :- not a. c :- a. c :- not c."), SemanticsId::Sm)
            .unwrap();
        assert!(report.gl_failed() && !report.lg_failed());
        let w = report
            .witnesses
            .iter()
            .find(|w| matches!(w, Witness::Relevance { atom, .. } if *atom == Atom::new("a")))
            .unwrap();
        match w {
            Witness::Relevance { kernel, relevant_kernel, .. } => {
                assert_eq!(kernel, &atom_set(["a", "c"]));
                assert!(relevant_kernel.is_empty());
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn single_fact_is_relevant() {
        let report = Evaluator::default().check_relevance(&p("a."), SemanticsId::Sm).unwrap();
        assert_eq!(report.verdict, Verdict::HoldsOnInstance);
        assert!(report.inapplicable.is_empty());
    }

    #[test]
    fn irregular_model_fails_local_to_global() {
        let prog = p("a :- not b. b :- not a. p :- not p, not a. q :- not q, not b.");
        let report = Evaluator::default().check_relevance(&prog, SemanticsId::Mh).unwrap();
        assert!(report.lg_failed());
        assert!(report.witnesses.iter().any(|w| matches!(w, Witness::LgViaIrregularity { level: 1, .. })));
    }

    #[test]
    fn undefined_kernel_is_named() {
        let report = Evaluator::default().check_relevance(&p("a. b :- not b."), SemanticsId::Sm).unwrap();
        assert!(report.inapplicable.iter().any(|w| matches!(w, Witness::KernelUndefined { side, .. } if side == "P")));
    }
}
