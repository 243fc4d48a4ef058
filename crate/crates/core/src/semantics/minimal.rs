use crate::atom::{Atom, AtomSet};
use crate::error::Result;
use crate::interp::Interpretation3V;
use crate::program::Program;
use crate::reduction::{remainder, OpSet};

use super::{mask_set, masks_by_size, minimal_indices, AffixModel, Evaluator, ModelSet, SemanticsId};

/// Rules as bit masks over a list of at most 63 atoms.
struct Clauses {
    rules: Vec<(u64, u64, u64)>,
}

impl Clauses {
    fn new(program: &Program, atoms: &[Atom]) -> Clauses {
        let bit = |a: &Atom| 1u64 << atoms.binary_search(a).expect("atom is listed");
        let rules = program
            .iter()
            .map(|r| (bit(&r.head()), r.pos().iter().map(bit).fold(0, |x, y| x | y), r.neg().iter().map(bit).fold(0, |x, y| x | y)))
            .collect();
        Clauses { rules }
    }

    /// Every rule whose body is true in `m` has its head in `m`.
    fn is_model(&self, m: u64) -> bool {
        self.rules.iter().all(|&(head, pos, neg)| m & head != 0 || pos & m != pos || neg & m != 0)
    }
}

/// True atoms of `m` that head no rule of `program` whose body is true in `m`.
pub fn unsupported_atoms(program: &Program, m: &Interpretation3V) -> AtomSet {
    let t = m.true_set();
    t.iter()
        .copied()
        .filter(|&b| {
            !program.iter().any(|r| {
                r.head() == b && r.pos().iter().all(|x| t.contains(x)) && r.neg().iter().all(|x| !t.contains(x))
            })
        })
        .collect()
}

impl Evaluator {
    /// All total interpretations over `atoms(P)` that satisfy every rule read
    /// as a classical implication.
    pub fn classical_models(&self, program: &Program) -> Result<ModelSet> {
        let atoms: Vec<Atom> = program.atoms().into_iter().collect();
        self.limits.check(atoms.len())?;
        let clauses = Clauses::new(program, &atoms);
        let universe: AtomSet = atoms.iter().copied().collect();
        Ok((0..(1u64 << atoms.len()))
            .filter(|&m| clauses.is_model(m))
            .map(|m| AffixModel::plain(&universe, mask_set(&atoms, m)))
            .collect())
    }

    /// ⊆-minimal classical models of `program`, over its own atoms.
    fn minimal_classical(&self, program: &Program) -> Result<Vec<AtomSet>> {
        let atoms: Vec<Atom> = program.atoms().into_iter().collect();
        self.limits.check(atoms.len())?;
        let clauses = Clauses::new(program, &atoms);
        let mut found: Vec<u64> = Vec::new();
        for m in masks_by_size(atoms.len()) {
            if !found.iter().any(|&f| f & m == f) && clauses.is_model(m) {
                found.push(m);
            }
        }
        Ok(found.into_iter().map(|m| mask_set(&atoms, m)).collect())
    }

    /// Minimal classical models of the WFS remainder; atoms erased by the
    /// reduction are false.
    pub fn navy_models(&self, program: &Program) -> Result<ModelSet> {
        let r = remainder(program, &OpSet::wfs());
        let universe = program.atoms();
        Ok(self.minimal_classical(&r)?.into_iter().map(|m| AffixModel::plain(&universe, m)).collect())
    }

    /// Navy models whose sets of classically unsupported atoms, taken with
    /// respect to the remainder, are ⊆-minimal.
    pub fn green_models(&self, program: &Program) -> Result<ModelSet> {
        let r = remainder(program, &OpSet::wfs());
        let navy = self.navy_models(program)?;
        let unsupported: Vec<AtomSet> = navy.iter().map(|m| unsupported_atoms(&r, m.interpretation())).collect();
        Ok(minimal_indices(&unsupported).into_iter().map(|i| navy.models()[i].clone()).collect())
    }

    pub fn blue_models(&self, program: &Program) -> Result<ModelSet> {
        self.kernel_iteration(program, None)
    }

    /// Blue restricted to regular models, both in the kernels and in the result.
    pub fn cyan_models(&self, program: &Program) -> Result<ModelSet> {
        self.kernel_iteration(program, Some(program))
    }

    /// Adds kernel atoms as facts until the kernel of the extended program
    /// stops growing, then returns its Navy models. With `regular_in`, only
    /// models regular with respect to the segments of that program under Cyan
    /// are used.
    fn kernel_iteration(&self, program: &Program, regular_in: Option<&Program>) -> Result<ModelSet> {
        let pool = |p: &Program| -> Result<ModelSet> {
            let navy = self.navy_models(p)?;
            match regular_in {
                Some(original) => self.regular_subset(original, SemanticsId::Cyan, &navy),
                None => Ok(navy),
            }
        };
        let mut current = program.clone();
        loop {
            let Some(k) = pool(&current)?.kernel() else {
                return Ok(ModelSet::empty());
            };
            let extended = current.add_facts(&k);
            let extended_pool = pool(&extended)?;
            let Some(k2) = extended_pool.kernel() else {
                return Ok(ModelSet::empty());
            };
            if k == k2 {
                return Ok(extended_pool);
            }
            let next = current.add_facts(&k2);
            if next == current {
                return Ok(extended_pool);
            }
            current = next;
        }
    }

    /// `SM(P)` when adding any subset of the stable kernel keeps the kernel,
    /// otherwise nothing.
    pub fn picky_models(&self, program: &Program) -> Result<ModelSet> {
        let sm = self.stable_models(program)?;
        let Some(kernel) = sm.kernel() else {
            return Ok(ModelSet::empty());
        };
        let items: Vec<Atom> = kernel.iter().copied().collect();
        self.limits.check(items.len())?;
        for mask in masks_by_size(items.len()) {
            let extended = program.add_facts(&mask_set(&items, mask));
            if self.stable_models(&extended)?.kernel().as_ref() != Some(&kernel) {
                return Ok(ModelSet::empty());
            }
        }
        Ok(sm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::atom_set;
    use crate::parse::parse_program;
    use crate::semantics::{blue_models, classical_models, cyan_models, green_models, navy_models, picky_models};
    use std::collections::BTreeSet;

    fn p(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    fn sets(names: &[&[&str]]) -> BTreeSet<AtomSet> {
        names.iter().map(|s| atom_set(s.iter().copied())).collect()
    }

    const REDUCIBLE: &str = "a :- not f. e :- d. a :- not b. d :- e. b :- not a. c :- a. d :- f.";
    const SM_CM_FAILURE: &str = "a :- not b, not s. b :- not a, not c. c :- not b, not k. d :- b. d :- not d.
        k :- a, d. d :- a. c :- k. s :- not a, d.";
    const EXCESSIVE: &str = "a :- not b. b :- not a. u :- a. u :- b. p :- not p, not u. q :- not q, not p.";
    const IRREGULAR: &str = "a :- not b. b :- not a. p :- not p, not a. q :- not q, not b.";

    #[test]
    fn classical() {
        assert_eq!(classical_models(&p("a :- not b.")).unwrap().positive_parts(), sets(&[&["a"], &["b"], &["a", "b"]]));
        assert_eq!(classical_models(&p("a.")).unwrap().positive_parts(), sets(&[&["a"]]));
        let h2 = classical_models(&p(IRREGULAR)).unwrap().positive_parts();
        assert!(h2.contains(&atom_set(["a", "b"])) && h2.contains(&atom_set(["a", "q"])));
        assert!(h2.contains(&atom_set(["a", "b", "p", "q"])));
        assert!(!h2.contains(&atom_set(["a"])));
    }

    #[test]
    fn navy() {
        assert_eq!(navy_models(&p(REDUCIBLE)).unwrap().positive_parts(), sets(&[&["a", "c"]]));
        assert_eq!(navy_models(&p(IRREGULAR)).unwrap().positive_parts(), sets(&[&["a", "b"], &["a", "q"], &["b", "p"]]));
        assert_eq!(navy_models(&Program::empty()).unwrap().positive_parts(), sets(&[&[]]));
        assert_eq!(
            navy_models(&p(EXCESSIVE)).unwrap().positive_parts(),
            sets(&[&["a", "u", "q"], &["a", "u", "p"], &["b", "u", "q"], &["b", "u", "p"]])
        );
    }

    #[test]
    fn unsupported() {
        let prog = p(IRREGULAR);
        let u = prog.atoms();
        assert!(unsupported_atoms(&p("a."), &Interpretation3V::total(&atom_set(["a"]), atom_set(["a"]))).is_empty());
        assert_eq!(unsupported_atoms(&prog, &Interpretation3V::total(&u, atom_set(["a", "b"]))), atom_set(["a", "b"]));
        assert_eq!(unsupported_atoms(&prog, &Interpretation3V::total(&u, atom_set(["a", "q"]))), atom_set(["q"]));
    }

    #[test]
    fn green() {
        assert_eq!(green_models(&p(IRREGULAR)).unwrap().positive_parts(), sets(&[&["a", "b"], &["a", "q"], &["b", "p"]]));
        assert_eq!(green_models(&p("a. c :- a. d :- not c.")).unwrap().positive_parts(), sets(&[&["a", "c"]]));
        assert!(green_models(&p(EXCESSIVE)).unwrap().positive_parts().contains(&atom_set(["a", "u", "p"])));
    }

    #[test]
    fn green_prefers_supported_models() {
        let prog = p("a :- not b. b :- not a. b :- a.");
        assert_eq!(navy_models(&prog).unwrap().positive_parts(), sets(&[&["b"]]));
        let prog = p("a :- not b. b :- not c. c :- not a. c :- b.");
        let navy = navy_models(&prog).unwrap().positive_parts();
        let green = green_models(&prog).unwrap().positive_parts();
        assert!(green.is_subset(&navy) && !green.is_empty());
    }

    #[test]
    fn blue() {
        assert_eq!(blue_models(&p(IRREGULAR)).unwrap(), navy_models(&p(IRREGULAR)).unwrap());
        assert_eq!(blue_models(&p("a.")).unwrap().positive_parts(), sets(&[&["a"]]));
        assert_eq!(blue_models(&p(EXCESSIVE)).unwrap().positive_parts(), sets(&[&["a", "u", "q"], &["b", "u", "q"]]));
    }

    #[test]
    fn cyan() {
        assert_eq!(cyan_models(&p(IRREGULAR)).unwrap().positive_parts(), sets(&[&["a", "q"], &["b", "p"]]));
        assert_eq!(cyan_models(&p("a.")).unwrap().positive_parts(), sets(&[&["a"]]));
    }

    #[test]
    fn picky() {
        let prog = p(SM_CM_FAILURE);
        assert_eq!(picky_models(&prog).unwrap().positive_parts(), sets(&[&["a", "c", "d", "k"], &["b", "d", "s"]]));
        assert_eq!(
            picky_models(&prog.add_facts(&atom_set(["d"]))).unwrap().positive_parts(),
            sets(&[&["a", "c", "d", "k"], &["b", "d", "s"], &["c", "d", "s"]])
        );
        assert!(picky_models(&p("a :- not a.")).unwrap().is_empty());
    }

    #[test]
    fn picky_rejects_kernel_changes() {
        let prog = p("a :- not b. b :- not a. c :- a. c :- b. a :- c, not b.");
        let sm = crate::semantics::stable_models(&prog).unwrap();
        let k = sm.kernel().unwrap();
        let keeps = crate::semantics::masks_by_size(k.len()).all(|mask| {
            let items: Vec<Atom> = k.iter().copied().collect();
            crate::semantics::stable_models(&prog.add_facts(&mask_set(&items, mask))).unwrap().kernel() == Some(k.clone())
        });
        assert_eq!(picky_models(&prog).unwrap().is_empty(), !keeps);
    }
}
