//! Interned ground atoms.
//!
//! Symbols live in a process-wide table and are never freed, so an [`Atom`] is a
//! `Copy` handle to a `&'static str`. Ordering and equality follow the symbol
//! text, which makes every [`AtomSet`] iterate in lexicographic order.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Serialize, Serializer};

/// A ground propositional atom.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(&'static str);

/// Sorted, duplicate-free set of atoms.
pub type AtomSet = BTreeSet<Atom>;

fn table() -> &'static Mutex<HashSet<&'static str>> {
    static TABLE: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Atom {
    /// Interns `name`. No syntax check is done here; the parser rejects
    /// identifiers that are not valid atoms.
    pub fn new(name: &str) -> Atom {
        let mut table = table().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(existing) = table.get(name) {
            return Atom(existing);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        table.insert(leaked);
        Atom(leaked)
    }

    pub fn as_str(self) -> &'static str {
        self.0
    }

    /// True when `name` is a valid atom token: `[a-z][A-Za-z0-9_]*`, excluding
    /// the reserved word `not`.
    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_lowercase() => {}
            _ => return false,
        }
        name != "not" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl From<&str> for Atom {
    fn from(name: &str) -> Atom {
        Atom::new(name)
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.0)
    }
}

/// Builds an [`AtomSet`] from symbol names.
pub fn atom_set<'a>(names: impl IntoIterator<Item = &'a str>) -> AtomSet {
    names.into_iter().map(Atom::new).collect()
}

/// Returns a symbol starting with `stem` that does not occur in `taken`.
pub fn fresh_atom(stem: &str, taken: &AtomSet) -> Atom {
    let candidate = Atom::new(stem);
    if !taken.contains(&candidate) {
        return candidate;
    }
    (1..)
        .map(|i| Atom::new(&format!("{stem}{i}")))
        .find(|a| !taken.contains(a))
        .expect("unbounded search")
}

/// Formats a set as `{a, b, c}`.
pub fn show_set(set: &AtomSet) -> String {
    let names: Vec<&str> = set.iter().map(|a| a.as_str()).collect();
    format!("{{{}}}", names.join(", "))
}
