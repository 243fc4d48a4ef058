//! Model-producing semantics.
//!
//! Every semantics maps a program to a [`ModelSet`] of total interpretations
//! over the atoms of the program. The MH family attaches to each model the
//! hypotheses set (affix) it was generated from.
//!
//! Enumeration is exhaustive over subsets, so each entry point checks the size
//! of the set it enumerates against [`Limits::max_atoms`]. An [`Evaluator`]
//! caches model sets per program, which the recursive regularity test and the
//! property checkers rely on.

mod affix;
mod minimal;
mod stable;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::atom::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::graph::{split_with, Layering};
use crate::interp::Interpretation3V;
use crate::program::{Program, Rule};
use crate::reduction::OpSet;

pub use stable::{gl_reduct, least_model};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemanticsId {
    Sm,
    Mh,
    MhLs,
    MhLoop,
    MhSust,
    MhSustMin,
    MhReg,
    Navy,
    Blue,
    Cyan,
    Green,
    Picky,
}

impl SemanticsId {
    pub const ALL: [SemanticsId; 12] = [
        SemanticsId::Sm,
        SemanticsId::Mh,
        SemanticsId::MhLs,
        SemanticsId::MhLoop,
        SemanticsId::MhSust,
        SemanticsId::MhSustMin,
        SemanticsId::MhReg,
        SemanticsId::Navy,
        SemanticsId::Blue,
        SemanticsId::Cyan,
        SemanticsId::Green,
        SemanticsId::Picky,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemanticsId::Sm => "sm",
            SemanticsId::Mh => "mh",
            SemanticsId::MhLs => "mh_ls",
            SemanticsId::MhLoop => "mh_loop",
            SemanticsId::MhSust => "mh_sust",
            SemanticsId::MhSustMin => "mh_sust_min",
            SemanticsId::MhReg => "mh_reg",
            SemanticsId::Navy => "navy",
            SemanticsId::Blue => "blue",
            SemanticsId::Cyan => "cyan",
            SemanticsId::Green => "green",
            SemanticsId::Picky => "picky",
        }
    }

    /// The reduction system whose remainder the semantics starts from.
    pub fn ops(self) -> OpSet {
        match self {
            SemanticsId::MhLs => OpSet::mh_ls(),
            SemanticsId::Mh
            | SemanticsId::MhLoop
            | SemanticsId::MhSust
            | SemanticsId::MhSustMin
            | SemanticsId::MhReg => OpSet::mh(),
            _ => OpSet::wfs(),
        }
    }

    /// Member of the hypotheses-based family `ASM^h`.
    pub fn is_asm_h(self) -> bool {
        matches!(
            self,
            SemanticsId::Sm
                | SemanticsId::Mh
                | SemanticsId::MhLs
                | SemanticsId::MhLoop
                | SemanticsId::MhSust
                | SemanticsId::MhSustMin
                | SemanticsId::MhReg
        )
    }

    /// Member of the minimal-model family `ASM^m`.
    pub fn is_asm_m(self) -> bool {
        matches!(
            self,
            SemanticsId::Sm
                | SemanticsId::MhSustMin
                | SemanticsId::Navy
                | SemanticsId::Blue
                | SemanticsId::Cyan
                | SemanticsId::Green
        )
    }

    pub fn is_asm(self) -> bool {
        self.is_asm_h() || self.is_asm_m()
    }

    /// Whether models carry an affix, which then takes part in model identity.
    pub fn uses_affix(self) -> bool {
        matches!(
            self,
            SemanticsId::Mh
                | SemanticsId::MhLs
                | SemanticsId::MhLoop
                | SemanticsId::MhSust
                | SemanticsId::MhSustMin
                | SemanticsId::MhReg
        )
    }
}

impl fmt::Display for SemanticsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemanticsId {
    type Err = Error;

    fn from_str(s: &str) -> Result<SemanticsId> {
        let key: String = s.to_ascii_lowercase().chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        let id = match key.as_str() {
            "sm" | "stable" => SemanticsId::Sm,
            "mh" => SemanticsId::Mh,
            "mhls" => SemanticsId::MhLs,
            "mhloop" => SemanticsId::MhLoop,
            "mhsust" | "mhsustainable" => SemanticsId::MhSust,
            "mhsustmin" | "mhsustainablemin" => SemanticsId::MhSustMin,
            "mhreg" | "mhregular" => SemanticsId::MhReg,
            "navy" => SemanticsId::Navy,
            "blue" => SemanticsId::Blue,
            "cyan" => SemanticsId::Cyan,
            "green" => SemanticsId::Green,
            "picky" => SemanticsId::Picky,
            _ => return Err(Error::UnknownSemantics(s.into())),
        };
        Ok(id)
    }
}

impl Serialize for SemanticsId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// A total model, with the hypotheses set it was generated from when the
/// semantics uses one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffixModel {
    interpretation: Interpretation3V,
    affix: Option<AtomSet>,
}

impl AffixModel {
    pub fn new(interpretation: Interpretation3V, affix: Option<AtomSet>) -> AffixModel {
        AffixModel { interpretation, affix }
    }

    pub fn plain(universe: &AtomSet, positive: AtomSet) -> AffixModel {
        AffixModel::new(Interpretation3V::total(universe, positive), None)
    }

    pub fn interpretation(&self) -> &Interpretation3V {
        &self.interpretation
    }

    /// `M^+`
    pub fn positive(&self) -> &AtomSet {
        self.interpretation.true_set()
    }

    pub fn affix(&self) -> Option<&AtomSet> {
        self.affix.as_ref()
    }

    /// Identity used by model-set comparisons: positive part, plus the affix
    /// when `with_affix` is set.
    pub fn key(&self, with_affix: bool) -> ModelKey {
        ModelKey {
            positive: self.positive().clone(),
            affix: if with_affix { self.affix.clone() } else { None },
        }
    }
}

impl PartialOrd for AffixModel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffixModel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.positive(), &self.affix, &self.interpretation).cmp(&(other.positive(), &other.affix, &other.interpretation))
    }
}

impl fmt::Display for AffixModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::atom::show_set(self.positive()))?;
        if let Some(h) = &self.affix {
            write!(f, " affix {}", crate::atom::show_set(h))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ModelKey {
    pub positive: AtomSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affix: Option<AtomSet>,
}

/// A canonically sorted, duplicate-free set of models.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModelSet {
    models: Vec<AffixModel>,
}

impl ModelSet {
    pub fn new(models: impl IntoIterator<Item = AffixModel>) -> ModelSet {
        let mut models: Vec<AffixModel> = models.into_iter().collect();
        models.sort();
        models.dedup();
        ModelSet { models }
    }

    pub fn empty() -> ModelSet {
        ModelSet::default()
    }

    pub fn models(&self) -> &[AffixModel] {
        &self.models
    }

    pub fn iter(&self) -> std::slice::Iter<'_, AffixModel> {
        self.models.iter()
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn positive_parts(&self) -> BTreeSet<AtomSet> {
        self.models.iter().map(|m| m.positive().clone()).collect()
    }

    pub fn keys(&self, with_affix: bool) -> BTreeSet<ModelKey> {
        self.models.iter().map(|m| m.key(with_affix)).collect()
    }

    /// Intersection of the positive parts; `None` when there are no models.
    pub fn kernel(&self) -> Option<AtomSet> {
        let mut it = self.models.iter();
        let first = it.next()?.positive().clone();
        Some(it.fold(first, |acc, m| acc.intersection(m.positive()).copied().collect()))
    }

    pub fn filter(&self, mut keep: impl FnMut(&AffixModel) -> bool) -> ModelSet {
        ModelSet { models: self.models.iter().filter(|m| keep(m)).cloned().collect() }
    }
}

impl<'a> IntoIterator for &'a ModelSet {
    type Item = &'a AffixModel;
    type IntoIter = std::slice::Iter<'a, AffixModel>;

    fn into_iter(self) -> Self::IntoIter {
        self.models.iter()
    }
}

impl FromIterator<AffixModel> for ModelSet {
    fn from_iter<I: IntoIterator<Item = AffixModel>>(iter: I) -> Self {
        ModelSet::new(iter)
    }
}

/// Upper bound on the size of any set whose subsets are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_atoms: usize,
}

/// Subsets are represented as `u64` masks.
pub const HARD_ATOM_CAP: usize = 63;

impl Limits {
    pub fn new(max_atoms: usize) -> Limits {
        Limits { max_atoms: max_atoms.min(HARD_ATOM_CAP) }
    }

    pub(crate) fn check(&self, count: usize) -> Result<()> {
        let cap = self.max_atoms.min(HARD_ATOM_CAP);
        if count > cap {
            Err(Error::TooManyAtoms { count, cap })
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_atoms: 22 }
    }
}

/// Computes model sets under an enumeration cap, memoising per program.
#[derive(Debug, Default)]
pub struct Evaluator {
    limits: Limits,
    cache: RefCell<HashMap<(SemanticsId, Vec<Rule>), ModelSet>>,
}

impl Evaluator {
    pub fn new(limits: Limits) -> Evaluator {
        Evaluator { limits, cache: RefCell::default() }
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn models(&self, program: &Program, sem: SemanticsId) -> Result<ModelSet> {
        let key = (sem, program.canonical());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let models = match sem {
            SemanticsId::Sm => self.stable_models(program)?,
            SemanticsId::Navy => self.navy_models(program)?,
            SemanticsId::Blue => self.blue_models(program)?,
            SemanticsId::Cyan => self.cyan_models(program)?,
            SemanticsId::Green => self.green_models(program)?,
            SemanticsId::Picky => self.picky_models(program)?,
            _ => self.mh_family_models(program, sem)?,
        };
        self.cache.borrow_mut().insert(key, models.clone());
        Ok(models)
    }

    /// `ker_SEM(P)`; an error when `SEM(P)` is empty.
    pub fn kernel(&self, program: &Program, sem: SemanticsId) -> Result<AtomSet> {
        self.models(program, sem)?.kernel().ok_or(Error::KernelUndefined)
    }

    /// Whether `n`, a model of `program`, restricted to the heads of the
    /// segment `P^{<=t}` equals the positive part of some model of that segment.
    pub fn is_regular(&self, program: &Program, sem: SemanticsId, n: &AffixModel, t: u32) -> Result<bool> {
        let layering = Layering::new(program);
        self.is_regular_with(program, &layering, sem, n, t)
    }

    fn is_regular_with(
        &self,
        program: &Program,
        layering: &Layering,
        sem: SemanticsId,
        n: &AffixModel,
        t: u32,
    ) -> Result<bool> {
        let (low, _) = split_with(program, layering, t)?;
        let heads = low.heads();
        let restricted: AtomSet = n.positive().intersection(&heads).copied().collect();
        Ok(self.models(&low, sem)?.iter().any(|m| *m.positive() == restricted))
    }

    /// The proper segment levels at which `n` is irregular.
    pub fn irregular_levels(&self, program: &Program, sem: SemanticsId, n: &AffixModel) -> Result<Vec<u32>> {
        let layering = Layering::new(program);
        let mut out = Vec::new();
        for t in layering.proper_segment_levels() {
            if !self.is_regular_with(program, &layering, sem, n, t)? {
                out.push(t);
            }
        }
        Ok(out)
    }

    pub(crate) fn regular_subset(&self, program: &Program, sem: SemanticsId, models: &ModelSet) -> Result<ModelSet> {
        let layering = Layering::new(program);
        let levels: Vec<u32> = layering.proper_segment_levels().collect();
        let mut keep = Vec::new();
        for m in models {
            let mut regular = true;
            for &t in &levels {
                if !self.is_regular_with(program, &layering, sem, m, t)? {
                    regular = false;
                    break;
                }
            }
            if regular {
                keep.push(m.clone());
            }
        }
        Ok(ModelSet::new(keep))
    }
}

/// Minimal elements under inclusion of `sets`, by index.
pub(crate) fn minimal_indices(sets: &[AtomSet]) -> Vec<usize> {
    (0..sets.len())
        .filter(|&i| !sets.iter().enumerate().any(|(j, s)| j != i && s.is_subset(&sets[i]) && *s != sets[i]))
        .collect()
}

/// Subset masks of an `n`-element set in order of increasing size.
pub(crate) fn masks_by_size(n: usize) -> impl Iterator<Item = u64> {
    (0..=n).flat_map(move |k| SameSize::new(n, k))
}

/// Gosper's hack: all `n`-bit masks with `k` bits set, ascending.
struct SameSize {
    next: Option<u64>,
    limit: u64,
}

impl SameSize {
    fn new(n: usize, k: usize) -> SameSize {
        let limit = 1u64 << n;
        let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
        SameSize { next: (k <= n).then_some(first), limit }
    }
}

impl Iterator for SameSize {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            let c = current & current.wrapping_neg();
            let r = current + c;
            let next = (((r ^ current) >> 2) / c) | r;
            (next < self.limit).then_some(next)
        };
        Some(current)
    }
}

pub(crate) fn mask_set(items: &[Atom], mask: u64) -> AtomSet {
    items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| *a).collect()
}

fn default_evaluator() -> Evaluator {
    Evaluator::default()
}

pub fn compute_models(program: &Program, sem: SemanticsId) -> Result<ModelSet> {
    default_evaluator().models(program, sem)
}

pub fn stable_models(program: &Program) -> Result<ModelSet> {
    default_evaluator().stable_models(program)
}

pub fn hyps(program: &Program, sem: SemanticsId) -> Result<AtomSet> {
    default_evaluator().hyps(program, sem)
}

pub fn affix_candidates(program: &Program, hyps: &AtomSet) -> Result<Vec<AffixModel>> {
    default_evaluator().affix_candidates(program, hyps)
}

pub fn mh_family_models(program: &Program, sem: SemanticsId) -> Result<ModelSet> {
    default_evaluator().mh_family_models(program, sem)
}

pub fn classical_models(program: &Program) -> Result<ModelSet> {
    default_evaluator().classical_models(program)
}

pub fn navy_models(program: &Program) -> Result<ModelSet> {
    default_evaluator().navy_models(program)
}

pub fn green_models(program: &Program) -> Result<ModelSet> {
    default_evaluator().green_models(program)
}

pub fn blue_models(program: &Program) -> Result<ModelSet> {
    default_evaluator().blue_models(program)
}

pub fn cyan_models(program: &Program) -> Result<ModelSet> {
    default_evaluator().cyan_models(program)
}

pub fn picky_models(program: &Program) -> Result<ModelSet> {
    default_evaluator().picky_models(program)
}

pub use minimal::unsupported_atoms;

pub fn is_regular(program: &Program, sem: SemanticsId, n: &AffixModel, t: u32) -> Result<bool> {
    default_evaluator().is_regular(program, sem, n, t)
}
