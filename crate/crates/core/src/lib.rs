//! Ground normal logic programs: reduction systems, the rule graph and its
//! layering, model enumeration for stable and affix-based semantics, and
//! property checkers.

pub mod atom;
pub mod corpus;
pub mod error;
pub mod generate;
pub mod graph;
pub mod interp;
pub mod parse;
pub mod program;
pub mod properties;
pub mod reduction;
pub mod report;
pub mod semantics;
pub mod wfm;

pub use atom::{Atom, AtomSet};
pub use error::{Error, Result};
pub use interp::Interpretation3V;
pub use parse::{parse_atom, parse_program, render_program};
pub use program::{Literal, Program, Rule};
pub use semantics::{AffixModel, Evaluator, Limits, ModelSet, SemanticsId};
