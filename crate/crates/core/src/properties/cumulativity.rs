use serde::Serialize;

use crate::atom::{Atom, AtomSet};
use crate::error::Result;
use crate::program::Program;
use crate::semantics::{mask_set, masks_by_size, Evaluator, ModelKey, SemanticsId};

use super::{Property, PropertyReport, Verdict, Witness};

/// The comparisons between `P` and `P ∪ S` for one `S ⊆ ker(P)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CmCutProbe {
    pub added: AtomSet,
    pub kernel: AtomSet,
    pub extended_kernel: Option<AtomSet>,
    /// `ker(P) ⊄ ker(P ∪ S)`
    pub classical_cm: bool,
    /// `ker(P ∪ S) ⊄ ker(P)`
    pub classical_cut: bool,
    /// Models of `P ∪ S` that are not models of `P`.
    pub refined_cm: Vec<ModelKey>,
    /// Models of `P` that are not models of `P ∪ S`.
    pub refined_cut: Vec<ModelKey>,
}

impl CmCutProbe {
    pub fn cm_violated(&self) -> bool {
        self.classical_cm || !self.refined_cm.is_empty()
    }

    pub fn cut_violated(&self) -> bool {
        self.classical_cut || !self.refined_cut.is_empty()
    }
}

impl Evaluator {
    /// Compares `SEM(P)` with `SEM(P ∪ S)` for every non-empty `S ⊆ ker(P)`,
    /// by kernels and by model sets.
    pub fn check_cm_cut(&self, program: &Program, sem: SemanticsId) -> Result<PropertyReport> {
        let models = self.models(program, sem)?;
        let Some(kernel) = models.kernel() else {
            return Ok(PropertyReport::inapplicable(Property::Cumulativity, sem, "SEM(P) is empty"));
        };
        let with_affix = sem.uses_affix();
        let keys = models.keys(with_affix);
        let items: Vec<Atom> = kernel.iter().copied().collect();
        self.limits().check(items.len())?;
        let mut witnesses = Vec::new();
        let mut inapplicable = Vec::new();
        for mask in masks_by_size(items.len()).skip(1) {
            let added = mask_set(&items, mask);
            let extended = self.models(&program.add_facts(&added), sem)?;
            let extended_keys = extended.keys(with_affix);
            let extended_kernel = extended.kernel();
            let (classical_cm, classical_cut) = match &extended_kernel {
                Some(k2) => (!kernel.is_subset(k2), !k2.is_subset(&kernel)),
                None => {
                    inapplicable.push(Witness::KernelUndefined {
                        context: format!("S = {}", crate::atom::show_set(&added)),
                        side: "P ∪ S".into(),
                    });
                    (false, false)
                }
            };
            let probe = CmCutProbe {
                refined_cm: extended_keys.difference(&keys).cloned().collect(),
                refined_cut: keys.difference(&extended_keys).cloned().collect(),
                added,
                kernel: kernel.clone(),
                extended_kernel,
                classical_cm,
                classical_cut,
            };
            if probe.cm_violated() || probe.cut_violated() {
                witnesses.push(Witness::CmCut(probe));
            }
        }
        Ok(PropertyReport::from_witnesses(Property::Cumulativity, sem, witnesses, inapplicable))
    }
}

/// Narrows a full cumulativity report to cautious monotony or cut.
pub(super) fn select(mut report: PropertyReport, property: Property) -> PropertyReport {
    report.property = property;
    if report.verdict == Verdict::Inapplicable {
        return report;
    }
    report.witnesses.retain(|w| match (w, property) {
        (Witness::CmCut(p), Property::Cm) => p.cm_violated(),
        (Witness::CmCut(p), Property::Cut) => p.cut_violated(),
        _ => true,
    });
    report.verdict = if report.witnesses.is_empty() { Verdict::HoldsOnInstance } else { Verdict::FailsOnInstance };
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::atom_set;
    use crate::parse::parse_program;

    fn p(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    const SM_CM_FAILURE: &str = "a :- not b, not s. b :- not a, not c. c :- not b, not k. d :- b. d :- not d.
        k :- a, d. d :- a. c :- k. s :- not a, d.";
    const MH_CM_CUT_FAILURE: &str = "u :- b. u :- c. t :- a. t :- h. a :- not b. b :- not c. c :- h, u. h :- not h, not t.";

    #[test]
    fn stable_models_fail_refined_cautious_monotony_only() {
        let ev = Evaluator::default();
        let report = ev.check_cm_cut(&p(SM_CM_FAILURE), SemanticsId::Sm).unwrap();
        assert!(report.cm_failed());
        assert!(!report.classical_cm_failed() && !report.classical_cut_failed());
        assert!(!report.cut_failed());
        let probe = report.probes().find(|p| p.added == atom_set(["d"])).unwrap();
        assert_eq!(probe.refined_cm, vec![ModelKey { positive: atom_set(["c", "d", "s"]), affix: None }]);
    }

    #[test]
    fn mh_family_fails_both_on_one_layer_program() {
        let ev = Evaluator::default();
        for sem in [SemanticsId::Mh, SemanticsId::MhLs, SemanticsId::MhLoop, SemanticsId::MhSust, SemanticsId::MhReg] {
            let report = ev.check_cm_cut(&p(MH_CM_CUT_FAILURE), sem).unwrap();
            let probe = report.probes().find(|p| p.added == atom_set(["u"])).unwrap();
            let cm = ModelKey { positive: atom_set(["a", "c", "h", "t", "u"]), affix: Some(atom_set(["h"])) };
            let cut = ModelKey { positive: atom_set(["b", "c", "h", "t", "u"]), affix: Some(atom_set(["b", "h"])) };
            assert_eq!(probe.refined_cm, vec![cm], "{sem}");
            assert_eq!(probe.refined_cut, vec![cut], "{sem}");
            assert!(!probe.classical_cm && !probe.classical_cut);
        }
    }

    #[test]
    fn single_fact_holds() {
        let report = Evaluator::default().check_cm_cut(&p("a."), SemanticsId::Sm).unwrap();
        assert_eq!(report.verdict, Verdict::HoldsOnInstance);
    }

    #[test]
    fn no_models_is_inapplicable() {
        let report = Evaluator::default().check_cm_cut(&p("a :- not a."), SemanticsId::Sm).unwrap();
        assert_eq!(report.verdict, Verdict::Inapplicable);
    }

    #[test]
    fn narrowing_to_cm_or_cut() {
        let ev = Evaluator::default();
        let cm = ev.check(&p(SM_CM_FAILURE), SemanticsId::Sm, Property::Cm).unwrap();
        let cut = ev.check(&p(SM_CM_FAILURE), SemanticsId::Sm, Property::Cut).unwrap();
        assert_eq!(cm.verdict, Verdict::FailsOnInstance);
        assert_eq!(cut.verdict, Verdict::HoldsOnInstance);
    }
}
