use crate::atom::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::graph::RuleGraph;
use crate::interp::Interpretation3V;
use crate::program::Program;
use crate::reduction::remainder;
use crate::wfm::Dense;

use super::{mask_set, masks_by_size, minimal_indices, AffixModel, Evaluator, ModelSet, SemanticsId};

impl Evaluator {
    /// Atoms occurring default-negated in the remainder of the semantics. For
    /// `MhLoop` only occurrences in rules in a loop through the literal count.
    pub fn hyps(&self, program: &Program, sem: SemanticsId) -> Result<AtomSet> {
        if !sem.uses_affix() {
            return Err(Error::NotAffixBased(sem.name().into()));
        }
        let r = remainder(program, &sem.ops());
        if sem != SemanticsId::MhLoop {
            return Ok(r.iter().flat_map(|rule| rule.neg().iter().copied()).collect());
        }
        let graph = RuleGraph::new(&r);
        Ok(r.iter()
            .enumerate()
            .flat_map(|(i, rule)| {
                let graph = &graph;
                rule.neg().iter().copied().filter(move |&c| graph.in_loop_through(i, c))
            })
            .collect())
    }

    /// Every `H ⊆ hyps` (non-empty unless `hyps` is) for which `WFM(P ∪ H)` is
    /// total, paired with that model.
    pub fn affix_candidates(&self, program: &Program, hyps: &AtomSet) -> Result<Vec<AffixModel>> {
        self.collect_candidates(program, hyps, false)
    }

    fn collect_candidates(&self, program: &Program, hyps: &AtomSet, minimal_only: bool) -> Result<Vec<AffixModel>> {
        let items: Vec<Atom> = hyps.iter().copied().collect();
        self.limits.check(items.len())?;
        let dense = Dense::with_universe(program, hyps);
        let universe: AtomSet = dense.atoms.iter().copied().collect();
        let idx: Vec<usize> = items.iter().map(|a| dense.index_of(*a).expect("hypothesis is indexed")).collect();
        let mut found_masks: Vec<u64> = Vec::new();
        let mut out = Vec::new();
        let mut facts = vec![false; dense.len()];
        for mask in masks_by_size(items.len()) {
            if mask == 0 && !items.is_empty() {
                continue;
            }
            if minimal_only && found_masks.iter().any(|&f| f & mask == f) {
                continue;
            }
            for (bit, &i) in idx.iter().enumerate() {
                facts[i] = mask >> bit & 1 == 1;
            }
            if let Some(model) = dense.total_wfm(&facts) {
                found_masks.push(mask);
                let interp = Interpretation3V::total(&universe, dense.set(&model));
                out.push(AffixModel::new(interp, Some(mask_set(&items, mask))));
            }
        }
        Ok(out)
    }

    /// Models of the MH family: ⊆-minimal affixes, then the filter of the
    /// particular semantics.
    pub fn mh_family_models(&self, program: &Program, sem: SemanticsId) -> Result<ModelSet> {
        let hyps = self.hyps(program, sem)?;
        let minimal = ModelSet::new(self.collect_candidates(program, &hyps, true)?);
        match sem {
            SemanticsId::Mh | SemanticsId::MhLs | SemanticsId::MhLoop => Ok(minimal),
            SemanticsId::MhSust => Ok(self.sustainable(program, &minimal)),
            SemanticsId::MhSustMin => {
                let sust = self.sustainable(program, &minimal);
                let positives: Vec<AtomSet> = sust.iter().map(|m| m.positive().clone()).collect();
                let keep = minimal_indices(&positives);
                Ok(ModelSet::new(keep.into_iter().map(|i| sust.models()[i].clone())))
            }
            SemanticsId::MhReg => self.regular_subset(program, SemanticsId::MhReg, &minimal),
            _ => Err(Error::NotAffixBased(sem.name().into())),
        }
    }

    /// Keeps models whose every hypothesis `h` is undefined in
    /// `WFM(P ∪ (H \ {h}))` whenever `H \ {h}` is non-empty.
    fn sustainable(&self, program: &Program, models: &ModelSet) -> ModelSet {
        models.filter(|m| {
            let h = m.affix().cloned().unwrap_or_default();
            let dense = Dense::with_universe(program, &h);
            h.len() < 2
                || h.iter().all(|&x| {
                    let rest: AtomSet = h.iter().copied().filter(|&y| y != x).collect();
                    let (t, u) = dense.wfm(&dense.mask(&rest));
                    let i = dense.index_of(x).expect("hypothesis is indexed");
                    u[i] && !t[i]
                })
        })
    }
}
