//! JSON renderings of the library operations. The command line front end and
//! the corpus expectations both go through [`run`].

use serde::Deserialize;
use serde_json::{json, Value};

use crate::atom::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::graph::{relevant_subprogram, Layering};
use crate::program::Program;
use crate::properties::Property;
use crate::reduction::{remainder, System};
use crate::semantics::{Evaluator, SemanticsId};
use crate::wfm::wfm_alternating;

/// One operation on one program. `facts` are added to the program first.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub operation: String,
    #[serde(default)]
    pub system: Option<String>,
    #[serde(default)]
    pub semantics: Option<String>,
    #[serde(default)]
    pub atom: Option<String>,
    #[serde(default)]
    pub property: Option<String>,
    #[serde(default)]
    pub facts: Vec<String>,
}

impl Request {
    pub fn new(operation: &str) -> Request {
        Request { operation: operation.into(), ..Request::default() }
    }

    fn arg<'a>(&self, value: &'a Option<String>, name: &str) -> Result<&'a str> {
        value
            .as_deref()
            .ok_or_else(|| Error::MissingArgument { operation: self.operation.clone(), argument: name.into() })
    }

    fn semantics(&self) -> Result<SemanticsId> {
        self.arg(&self.semantics, "semantics")?.parse()
    }
}

/// Rule texts in lexicographic order.
pub fn sorted_rules(program: &Program) -> Vec<String> {
    let mut rules: Vec<String> = program.iter().map(|r| r.to_string()).collect();
    rules.sort();
    rules
}

pub fn run(ev: &Evaluator, program: &Program, request: &Request) -> Result<Value> {
    let facts: AtomSet = request
        .facts
        .iter()
        .map(|name| crate::parse::parse_atom(name))
        .collect::<Result<_>>()?;
    let program = &program.add_facts(&facts);
    let value = match request.operation.as_str() {
        "parse" => json!({
            "atoms": program.atoms(),
            "rules": program.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        }),
        "remainder" => {
            let name = request.arg(&request.system, "system")?;
            let system: System = name.parse()?;
            json!({ "system": name, "rules": sorted_rules(&remainder(program, &system.ops())) })
        }
        "wfm" => serde_json::to_value(wfm_alternating(program)).expect("interpretations serialise"),
        "layers" => {
            let layering = Layering::new(program);
            let rules: Vec<Value> = program
                .iter()
                .zip(layering.layers())
                .map(|(r, l)| json!({ "rule": r.to_string(), "layer": l }))
                .collect();
            json!({
                "rules": rules,
                "max_layer": layering.max_layer(),
                "segments": layering.segment_levels(),
            })
        }
        "relevant" => {
            let atom: Atom = crate::parse::parse_atom(request.arg(&request.atom, "atom")?)?;
            json!({ "atom": atom, "rules": sorted_rules(&relevant_subprogram(program, atom)) })
        }
        "hyps" => {
            let sem = request.semantics()?;
            json!({ "semantics": sem, "hyps": ev.hyps(program, sem)? })
        }
        "models" => {
            let sem = request.semantics()?;
            let models = ev.models(program, sem)?;
            json!({ "semantics": sem, "models": models.keys(sem.uses_affix()) })
        }
        "kernel" => {
            let sem = request.semantics()?;
            json!({ "semantics": sem, "kernel": ev.models(program, sem)?.kernel() })
        }
        "check" => {
            let sem = request.semantics()?;
            let property: Property = request.arg(&request.property, "property")?.parse()?;
            serde_json::to_value(ev.check(program, sem, property)?).expect("reports serialise")
        }
        other => return Err(Error::UnknownOperation(other.into())),
    };
    Ok(value)
}

/// Whether `actual` agrees with `expected` on every field `expected` names.
/// Arrays must agree element by element; scalars must be equal.
pub fn matches(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => e.iter().all(|(k, v)| a.get(k).is_some_and(|av| matches(v, av))),
        (Value::Array(e), Value::Array(a)) => e.len() == a.len() && e.iter().zip(a).all(|(x, y)| matches(x, y)),
        _ => expected == actual,
    }
}
