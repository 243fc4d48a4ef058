//! Programs that turn one kind of failure witness into another.

use serde::Serialize;

use crate::atom::{fresh_atom, Atom};
use crate::error::{Error, Result};
use crate::program::{Literal, Program, Rule};
use crate::semantics::{Evaluator, SemanticsId};

use super::{Property, PropertyReport, Witness};

/// Places `q` above a fresh choice `x ← not y, y ← not x`, guarding every
/// rule of `q` with `not x`. When `SEM(q) = ∅` the host has the model `{x}`
/// while the segment model `{y}` leaves `q` in charge, so the host is
/// defective at level 1.
pub fn existence_host(q: &Program) -> (Program, Atom, Atom) {
    let taken = q.atoms();
    let x = fresh_atom("x", &taken);
    let y = fresh_atom("y", &taken);
    let mut rules = vec![Rule::new(x, [Literal::neg(y)]), Rule::new(y, [Literal::neg(x)])];
    rules.extend(q.iter().map(|r| r.with(Literal::neg(x))));
    (Program::new(rules), x, y)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailureTransform {
    /// The failure the output program witnesses.
    pub shows: Property,
    pub program: Program,
    pub report: PropertyReport,
}

/// Converts a stable-model existence-failure witness into a cautious monotony
/// failure witness, and a cautious monotony failure witness into an existence
/// failure witness. The output is re-checked before it is returned.
pub fn transform_failure_witness(p: &Program) -> Result<FailureTransform> {
    let ev = Evaluator::default();
    let sem = SemanticsId::Sm;
    if ev.models(p, sem)?.is_empty() {
        let taken = p.atoms();
        let x = fresh_atom("x", &taken);
        let y = fresh_atom("y", &taken);
        let k = fresh_atom("k", &taken);
        let mut rules = vec![
            Rule::new(x, [Literal::neg(y)]),
            Rule::new(y, [Literal::neg(x)]),
            Rule::new(k, [Literal::pos(x)]),
        ];
        rules.extend(p.iter().map(|r| r.with(Literal::neg(k))));
        let program = Program::new(rules);
        let report = ev.check(&program, sem, Property::Cm)?;
        if !report.fails() {
            return Err(Error::NotAWitness("constructed program shows no cautious monotony failure".into()));
        }
        return Ok(FailureTransform { shows: Property::Cm, program, report });
    }

    let cm = ev.check(p, sem, Property::Cm)?;
    if !cm.fails() {
        return Err(Error::NotAWitness("the program witnesses neither existence nor cautious monotony failure".into()));
    }
    let defects = ev.check_defectivity(p, sem)?;
    let program = match defects.witnesses.first() {
        Some(Witness::Defective { upper, .. }) => upper.clone(),
        _ => force_model(p, &cm)?,
    };
    let report = ev.check(&program, sem, Property::Existence)?;
    if !report.fails() {
        return Err(Error::NotAWitness("constructed program still has stable models".into()));
    }
    Ok(FailureTransform { shows: Property::Existence, program, report })
}

/// `P` plus constraints that admit only a model `M'` of `P ∪ S` which is not a
/// model of `P`; no stable model survives.
fn force_model(p: &Program, cm: &PropertyReport) -> Result<Program> {
    let offending = cm
        .probes()
        .find_map(|probe| probe.refined_cm.first())
        .ok_or_else(|| Error::NotAWitness("no offending model".into()))?;
    let z = fresh_atom("z", &p.atoms());
    let mut rules: Vec<Rule> = p.rules().to_vec();
    for a in p.atoms() {
        let lit = if offending.positive.contains(&a) { Literal::neg(a) } else { Literal::pos(a) };
        rules.push(Rule::new(z, [Literal::neg(z), lit]));
    }
    Ok(Program::new(rules))
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

    #[test]
    fn existence_failure_becomes_cm_failure() {
        let w = transform_failure_witness(&p("a :- not a.")).unwrap();
        assert_eq!(w.shows, Property::Cm);
        assert_eq!(w.report.verdict, Verdict::FailsOnInstance);
    }

    #[test]
    fn defective_program_yields_its_upper_part() {
        let w = transform_failure_witness(&p("a :- not b. b :- not a. c :- a. c :- not c.")).unwrap();
        assert_eq!(w.shows, Property::Existence);
        assert_eq!(w.program, p("c :- a. c :- not c. b."));
    }

    #[test]
    fn one_layer_cm_failure_is_forced() {
        let e = p("a :- not b, not s. b :- not a, not c. c :- not b, not k. d :- b. d :- not d.
            k :- a, d. d :- a. c :- k. s :- not a, d.");
        let w = transform_failure_witness(&e).unwrap();
        assert_eq!(w.shows, Property::Existence);
        assert!(Evaluator::default().models(&w.program, SemanticsId::Sm).unwrap().is_empty());
    }

    #[test]
    fn non_witness_is_rejected() {
        assert!(matches!(transform_failure_witness(&p("a.")), Err(Error::NotAWitness(_))));
    }

    #[test]
    fn host_is_defective_at_level_one() {
        let (host, x, y) = existence_host(&p("a :- not a."));
        assert_eq!((x.as_str(), y.as_str()), ("x", "y"));
        let ev = Evaluator::default();
        let report = ev.check_defectivity(&host, SemanticsId::Sm).unwrap();
        assert!(report.witnesses.iter().any(|w| matches!(w, Witness::Defective { level: 1, segment_model, .. }
            if *segment_model == atom_set(["y"]))));
    }
}
