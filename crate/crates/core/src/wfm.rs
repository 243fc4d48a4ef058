//! Well-founded model, computed from the WFS remainder and, independently, by
//! the alternating fixpoint of the reduct operator.

use std::collections::HashMap;

use crate::atom::{Atom, AtomSet};
use crate::interp::Interpretation3V;
use crate::program::Program;
use crate::reduction::{remainder, OpSet};

/// A program over atom indices `0..atoms.len()`, for repeated fixpoint work.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub atoms: Vec<Atom>,
    index: HashMap<Atom, usize>,
    pub heads: Vec<usize>,
    pub pos: Vec<Vec<usize>>,
    pub neg: Vec<Vec<usize>>,
    watchers: Vec<Vec<usize>>,
}

impl Dense {
    pub fn new(program: &Program) -> Dense {
        Dense::with_universe(program, &AtomSet::new())
    }

    /// Indexes `atoms(program) ∪ extra`, in sorted order.
    pub fn with_universe(program: &Program, extra: &AtomSet) -> Dense {
        let mut universe = program.atoms();
        universe.extend(extra.iter().copied());
        let atoms: Vec<Atom> = universe.into_iter().collect();
        let index: HashMap<Atom, usize> = atoms.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let mut dense = Dense {
            watchers: vec![Vec::new(); atoms.len()],
            atoms,
            index,
            heads: Vec::new(),
            pos: Vec::new(),
            neg: Vec::new(),
        };
        for (r, rule) in program.iter().enumerate() {
            dense.heads.push(dense.index[&rule.head()]);
            let pos: Vec<usize> = rule.pos().iter().map(|a| dense.index[a]).collect();
            for &b in &pos {
                dense.watchers[b].push(r);
            }
            dense.pos.push(pos);
            dense.neg.push(rule.neg().iter().map(|a| dense.index[a]).collect());
        }
        dense
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn index_of(&self, atom: Atom) -> Option<usize> {
        self.index.get(&atom).copied()
    }

    pub fn mask(&self, set: &AtomSet) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        for a in set {
            if let Some(i) = self.index_of(*a) {
                mask[i] = true;
            }
        }
        mask
    }

    pub fn set(&self, mask: &[bool]) -> AtomSet {
        mask.iter().enumerate().filter(|(_, &on)| on).map(|(i, _)| self.atoms[i]).collect()
    }

    /// Least model of the reduct w.r.t. `assumed` together with the facts in
    /// `facts`: rules with a default literal on an assumed atom are dropped,
    /// the remaining default literals are ignored.
    pub fn gamma(&self, assumed: &[bool], facts: &[bool]) -> Vec<bool> {
        let mut model = facts.to_vec();
        let mut missing: Vec<usize> = self.pos.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..self.len()).filter(|&a| model[a]).collect();
        let enabled = |r: usize| self.neg[r].iter().all(|&c| !assumed[c]);
        for r in 0..self.heads.len() {
            if missing[r] == 0 && enabled(r) && !model[self.heads[r]] {
                model[self.heads[r]] = true;
                queue.push(self.heads[r]);
            }
        }
        while let Some(a) = queue.pop() {
            for &r in &self.watchers[a] {
                missing[r] -= 1;
                if missing[r] == 0 && enabled(r) && !model[self.heads[r]] {
                    model[self.heads[r]] = true;
                    queue.push(self.heads[r]);
                }
            }
        }
        model
    }

    /// Alternating fixpoint: returns the true atoms and the possibly true atoms.
    pub fn wfm(&self, facts: &[bool]) -> (Vec<bool>, Vec<bool>) {
        let mut true_mask = facts.to_vec();
        loop {
            let possible = self.gamma(&true_mask, facts);
            let next = self.gamma(&possible, facts);
            if next == true_mask {
                return (true_mask, possible);
            }
            true_mask = next;
        }
    }

    /// Whether the well-founded model with `facts` added is total; returns its
    /// true atoms when it is.
    pub fn total_wfm(&self, facts: &[bool]) -> Option<Vec<bool>> {
        let (t, u) = self.wfm(facts);
        (t == u).then_some(t)
    }

    pub fn interpretation(&self, true_mask: &[bool], possible: &[bool]) -> Interpretation3V {
        let universe: AtomSet = self.atoms.iter().copied().collect();
        let undef = possible.iter().zip(true_mask).enumerate().filter(|(_, (&p, &t))| p && !t).map(|(i, _)| self.atoms[i]);
        Interpretation3V::new(&universe, self.set(true_mask), undef.collect())
    }
}

/// The well-founded model read off the WFS remainder `R`: facts of `R` are
/// true, atoms heading no rule of `R` are false.
pub fn wfm_from_remainder(program: &Program) -> Interpretation3V {
    let r = remainder(program, &OpSet::wfs());
    let universe = program.atoms();
    let heads = r.heads();
    let true_set = r.fact_atoms();
    let undef = heads.difference(&true_set).copied().collect();
    Interpretation3V::new(&universe, true_set, undef)
}

pub fn wfm_alternating(program: &Program) -> Interpretation3V {
    let dense = Dense::new(program);
    let (t, u) = dense.wfm(&vec![false; dense.len()]);
    dense.interpretation(&t, &u)
}

/// `WFM(P ∪ facts)` over `atoms(P) ∪ facts`.
pub fn wfm_with_facts(program: &Program, facts: &AtomSet) -> Interpretation3V {
    let dense = Dense::with_universe(program, facts);
    let (t, u) = dense.wfm(&dense.mask(facts));
    dense.interpretation(&t, &u)
}
