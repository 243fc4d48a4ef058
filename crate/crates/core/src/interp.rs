//! Three-valued interpretations over a fixed atom universe.

use serde::Serialize;

use crate::atom::AtomSet;

/// A partition of a universe of atoms into true, false and undefined atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Interpretation3V {
    #[serde(rename = "true")]
    true_set: AtomSet,
    #[serde(rename = "false")]
    false_set: AtomSet,
    #[serde(rename = "undef")]
    undef_set: AtomSet,
}

impl Interpretation3V {
    /// Builds the interpretation where `true_set` is true, `undef_set` is
    /// undefined and the rest of `universe` is false. Atoms of `true_set`
    /// and `undef_set` outside `universe` are added to it.
    pub fn new(universe: &AtomSet, true_set: AtomSet, undef_set: AtomSet) -> Self {
        let undef_set: AtomSet = undef_set.difference(&true_set).copied().collect();
        let false_set = universe
            .iter()
            .filter(|a| !true_set.contains(a) && !undef_set.contains(a))
            .copied()
            .collect();
        Interpretation3V { true_set, false_set, undef_set }
    }

    /// A two-valued interpretation: `true_set` true, the rest of `universe` false.
    pub fn total(universe: &AtomSet, true_set: AtomSet) -> Self {
        Interpretation3V::new(universe, true_set, AtomSet::new())
    }

    pub fn true_set(&self) -> &AtomSet {
        &self.true_set
    }

    pub fn false_set(&self) -> &AtomSet {
        &self.false_set
    }

    pub fn undef_set(&self) -> &AtomSet {
        &self.undef_set
    }

    pub fn is_total(&self) -> bool {
        self.undef_set.is_empty()
    }

    pub fn universe(&self) -> AtomSet {
        self.true_set.iter().chain(&self.false_set).chain(&self.undef_set).copied().collect()
    }

    /// Re-expresses the interpretation over a larger universe; new atoms are false.
    pub fn pad(&self, universe: &AtomSet) -> Self {
        let mut out = self.clone();
        for a in universe {
            if !self.true_set.contains(a) && !self.undef_set.contains(a) {
                out.false_set.insert(*a);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::atom_set;

    #[test]
    fn partitions_universe() {
        let u = atom_set(["a", "b", "c", "d"]);
        let i = Interpretation3V::new(&u, atom_set(["a"]), atom_set(["b", "a"]));
        assert_eq!(i.true_set(), &atom_set(["a"]));
        assert_eq!(i.undef_set(), &atom_set(["b"]));
        assert_eq!(i.false_set(), &atom_set(["c", "d"]));
        assert_eq!(i.universe(), u);
        assert!(!i.is_total());
    }

    #[test]
    fn padding_adds_false_atoms() {
        let i = Interpretation3V::total(&atom_set(["a"]), atom_set(["a"]));
        let j = i.pad(&atom_set(["a", "z"]));
        assert_eq!(j.false_set(), &atom_set(["z"]));
        assert!(j.is_total());
    }
}
