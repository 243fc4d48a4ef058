use crate::atom::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::program::{Program, Rule};
use crate::wfm::Dense;

use super::{mask_set, AffixModel, Evaluator, ModelSet};

/// The Gelfond–Lifschitz reduct of `program` with respect to `m`.
pub fn gl_reduct(program: &Program, m: &AtomSet) -> Program {
    program
        .iter()
        .filter(|r| r.neg().iter().all(|c| !m.contains(c)))
        .map(|r| Rule::from_parts(r.head(), r.pos().to_vec(), Vec::new()))
        .collect()
}

/// Least model of a program without default literals.
pub fn least_model(program: &Program) -> Result<AtomSet> {
    if !program.is_positive() {
        return Err(Error::NotPositive);
    }
    let dense = Dense::new(program);
    let none = vec![false; dense.len()];
    Ok(dense.set(&dense.gamma(&none, &none)))
}

impl Evaluator {
    /// All `M` with `M = least_model(gl_reduct(P, M))`, by enumerating subsets
    /// of `Heads(P)`.
    pub fn stable_models(&self, program: &Program) -> Result<ModelSet> {
        let heads: Vec<Atom> = program.heads().into_iter().collect();
        self.limits.check(heads.len())?;
        let dense = Dense::new(program);
        let head_idx: Vec<usize> = heads.iter().map(|a| dense.index_of(*a).expect("head is indexed")).collect();
        let universe = program.atoms();
        let none = vec![false; dense.len()];
        let mut found = Vec::new();
        let mut candidate = vec![false; dense.len()];
        for mask in 0..(1u64 << heads.len()) {
            for (bit, &i) in head_idx.iter().enumerate() {
                candidate[i] = mask >> bit & 1 == 1;
            }
            if dense.gamma(&candidate, &none) == candidate {
                found.push(AffixModel::plain(&universe, mask_set(&heads, mask)));
            }
        }
        Ok(ModelSet::new(found))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::atom_set;
    use crate::parse::parse_program;
    use crate::semantics::stable_models;

    fn p(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    const SM_CM_FAILURE: &str = "a :- not b, not s. b :- not a, not c. c :- not b, not k. d :- b. d :- not d.
        k :- a, d. d :- a. c :- k. s :- not a, d.";

    #[test]
    fn reducts() {
        assert_eq!(gl_reduct(&p("a :- not b."), &atom_set(["a"])), p("a."));
        assert_eq!(gl_reduct(&p("a :- not b. b :- not a. c :- a. c :- not c."), &atom_set(["a", "c"])), p("a. c :- a."));
        assert_eq!(gl_reduct(&p("a :- not a."), &AtomSet::new()), p("a."));
    }

    #[test]
    fn least_models() {
        assert_eq!(least_model(&p("a. c :- a.")).unwrap(), atom_set(["a", "c"]));
        assert!(least_model(&p("d :- e. e :- d.")).unwrap().is_empty());
        assert_eq!(least_model(&p("a :- not b.")), Err(Error::NotPositive));
        let ex1 = p("a :- not b. b :- not a. c :- a. c :- not c.");
        let m = atom_set(["a", "c"]);
        assert_eq!(least_model(&gl_reduct(&ex1, &m)).unwrap(), m);
    }

    #[test]
    fn odd_loop_has_no_stable_model() {
        assert!(stable_models(&p("a :- not a.")).unwrap().is_empty());
    }

    #[test]
    fn one_layer_stable_models() {
        let prog = p(SM_CM_FAILURE);
        let sm = stable_models(&prog).unwrap();
        assert_eq!(sm.positive_parts(), [atom_set(["a", "c", "d", "k"]), atom_set(["b", "d", "s"])].into());
        let with_d = stable_models(&prog.add_facts(&atom_set(["d"]))).unwrap();
        assert_eq!(
            with_d.positive_parts(),
            [atom_set(["a", "c", "d", "k"]), atom_set(["b", "d", "s"]), atom_set(["c", "d", "s"])].into()
        );
    }

    #[test]
    fn empty_program_has_empty_model() {
        let sm = stable_models(&Program::empty()).unwrap();
        assert_eq!(sm.positive_parts(), [AtomSet::new()].into());
    }

    #[test]
    fn enumeration_cap() {
        let text: String = (0..30).map(|i| format!("x{i} :- not y{i}. y{i} :- not x{i}.\n")).collect();
        let err = stable_models(&p(&text)).unwrap_err();
        assert!(matches!(err, Error::TooManyAtoms { count: 60, cap: 22 }));
    }
}
