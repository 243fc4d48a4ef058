use crate::atom::AtomSet;
use crate::error::Result;
use crate::graph::{split_with, Layering};
use crate::program::Program;
use crate::semantics::{Evaluator, SemanticsId};

use super::{segment_positives, Property, PropertyReport, Witness};

impl Evaluator {
    /// Searches proper segments `P^{<=T}` and models `M` of them with
    /// `SEM(P^{>T} ∪ M^+) = ∅`, provided `SEM(P) ≠ ∅`.
    pub fn check_defectivity(&self, program: &Program, sem: SemanticsId) -> Result<PropertyReport> {
        if self.models(program, sem)?.is_empty() {
            let mut report = PropertyReport::from_witnesses(Property::Defectivity, sem, Vec::new(), Vec::new());
            report.reason = Some("SEM(P) is empty".into());
            return Ok(report);
        }
        let layering = Layering::new(program);
        let mut witnesses = Vec::new();
        for t in layering.proper_segment_levels() {
            let (low, high) = split_with(program, &layering, t)?;
            for m in &self.models(&low, sem)? {
                let upper = high.add_facts(m.positive());
                if self.models(&upper, sem)?.is_empty() {
                    witnesses.push(Witness::Defective { level: t, segment_model: m.positive().clone(), upper });
                }
            }
        }
        Ok(PropertyReport::from_witnesses(Property::Defectivity, sem, witnesses, Vec::new()))
    }

    /// Searches `(T, M, N)` with `M^+ = N^+ ∩ Heads(P^{<=T})`, `N` produced by
    /// no `P^{>T} ∪ M_*^+`, and some model `N*` of `P` produced by
    /// `P^{>T} ∪ M^+`. Models are matched by positive part.
    pub fn check_excessiveness(&self, program: &Program, sem: SemanticsId) -> Result<PropertyReport> {
        let models = self.models(program, sem)?;
        let layering = Layering::new(program);
        let mut witnesses = Vec::new();
        for t in layering.proper_segment_levels() {
            let (low, high) = split_with(program, &layering, t)?;
            let heads = low.heads();
            let segment = self.models(&low, sem)?;
            let segment_models = segment_positives(&segment);
            let mut upper_positives = Vec::new();
            for m in &segment_models {
                upper_positives.push(self.models(&high.add_facts(m), sem)?.positive_parts());
            }
            for n in &models {
                let restricted: AtomSet = n.positive().intersection(&heads).copied().collect();
                if upper_positives.iter().any(|ups| ups.contains(n.positive())) {
                    continue;
                }
                for (i, m) in segment_models.iter().enumerate() {
                    if *m != restricted {
                        continue;
                    }
                    if let Some(companion) = models.iter().find(|c| upper_positives[i].contains(c.positive())) {
                        witnesses.push(Witness::Excessive {
                            level: t,
                            model: n.key(sem.uses_affix()),
                            segment_model: m.clone(),
                            companion: companion.key(sem.uses_affix()),
                            segment_models: segment_models.clone(),
                        });
                    }
                }
            }
        }
        Ok(PropertyReport::from_witnesses(Property::Excessiveness, sem, witnesses, Vec::new()))
    }

    /// Lists the models `N` and proper segments `T` such that
    /// `N^+ ∩ Heads(P^{<=T})` is the positive part of no model of `P^{<=T}`.
    pub fn check_irregularity(&self, program: &Program, sem: SemanticsId) -> Result<PropertyReport> {
        let models = self.models(program, sem)?;
        let layering = Layering::new(program);
        let mut witnesses = Vec::new();
        for t in layering.proper_segment_levels() {
            let (low, _) = split_with(program, &layering, t)?;
            let heads = low.heads();
            let segment_models = segment_positives(&self.models(&low, sem)?);
            for n in &models {
                let restricted: AtomSet = n.positive().intersection(&heads).copied().collect();
                if !segment_models.contains(&restricted) {
                    witnesses.push(Witness::Irregular {
                        level: t,
                        model: n.key(sem.uses_affix()),
                        restricted,
                        segment_models: segment_models.clone(),
                    });
                }
            }
        }
        Ok(PropertyReport::from_witnesses(Property::Irregularity, sem, witnesses, Vec::new()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::atom_set;
    use crate::parse::parse_program;
    use crate::properties::Verdict;

    fn p(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    const DEFECTIVE: &str = "a :- not b. b :- not a. c :- a. c :- not c.";
    const EXCESSIVE: &str = "a :- not b. b :- not a. u :- a. u :- b. p :- not p, not u. q :- not q, not p.";
    const IRREGULAR: &str = "a :- not b. b :- not a. p :- not p, not a. q :- not q, not b.";

    #[test]
    fn two_layer_program_is_defective_under_stable_models() {
        let report = Evaluator::default().check_defectivity(&p(DEFECTIVE), SemanticsId::Sm).unwrap();
        assert_eq!(report.verdict, Verdict::FailsOnInstance);
        assert_eq!(report.witnesses.len(), 1);
        match &report.witnesses[0] {
            Witness::Defective { level, segment_model, upper } => {
                assert_eq!(*level, 1);
                assert_eq!(segment_model, &atom_set(["b"]));
                assert_eq!(upper, &p("c :- a. c :- not c. b."));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_fact_has_no_structural_witness() {
        let ev = Evaluator::default();
        for check in [Evaluator::check_defectivity, Evaluator::check_excessiveness, Evaluator::check_irregularity] {
            assert_eq!(check(&ev, &p("a."), SemanticsId::Sm).unwrap().verdict, Verdict::HoldsOnInstance);
        }
        assert_eq!(ev.check_irregularity(&p("a."), SemanticsId::Mh).unwrap().verdict, Verdict::HoldsOnInstance);
    }

    #[test]
    fn first_program_is_excessive() {
        let ev = Evaluator::default();
        for sem in [SemanticsId::Mh, SemanticsId::MhLs, SemanticsId::MhLoop, SemanticsId::Navy, SemanticsId::Green] {
            let report = ev.check_excessiveness(&p(EXCESSIVE), sem).unwrap();
            let found = report.witnesses.iter().any(|w| match w {
                Witness::Excessive { level, model, segment_models, .. } => {
                    *level == 2
                        && model.positive == atom_set(["a", "u", "p"])
                        && *segment_models == vec![atom_set(["a", "u"]), atom_set(["b", "u"])]
                }
                _ => false,
            });
            assert!(found, "{sem}: {report:?}");
        }
        let mh = ev.check_excessiveness(&p(EXCESSIVE), SemanticsId::Mh).unwrap();
        assert!(mh.witnesses.iter().any(|w| matches!(w, Witness::Excessive { model, .. }
            if model.affix == Some(atom_set(["a", "p"])))));
    }

    #[test]
    fn second_program_is_irregular() {
        let ev = Evaluator::default();
        for sem in [
            SemanticsId::Mh,
            SemanticsId::MhLs,
            SemanticsId::MhLoop,
            SemanticsId::Green,
            SemanticsId::Navy,
            SemanticsId::Blue,
        ] {
            let report = ev.check_irregularity(&p(IRREGULAR), sem).unwrap();
            assert!(
                report.witnesses.iter().any(|w| matches!(w, Witness::Irregular { level: 1, model, .. }
                    if model.positive == atom_set(["a", "b"]))),
                "{sem}"
            );
        }
        for sem in [SemanticsId::Cyan, SemanticsId::MhReg, SemanticsId::Sm] {
            assert_eq!(ev.check_irregularity(&p(IRREGULAR), sem).unwrap().verdict, Verdict::HoldsOnInstance, "{sem}");
        }
    }
}
