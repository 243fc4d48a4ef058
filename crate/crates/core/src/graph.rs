//! Complete rule graph, rule layering, segments and relevant subprograms.
//!
//! Vertices are rule indices of a [`Program`]. There is an arc `r -> s` when
//! the head of `r` occurs in the body of `s`, positively or under `not`.
//! Rule `s` depends on rule `r` when a path of length at least one leads from
//! `r` to `s`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::atom::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::program::Program;

#[derive(Clone, Debug)]
pub struct RuleGraph {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    /// Component id of every rule.
    component: Vec<usize>,
    /// Components in topological order: a component only has arcs into
    /// components listed after it.
    components: Vec<Vec<usize>>,
    /// Whether the component carries a cycle (size > 1 or a self-arc).
    cyclic: Vec<bool>,
    heads: Vec<Atom>,
}

impl RuleGraph {
    pub fn new(program: &Program) -> RuleGraph {
        let n = program.len();
        let mut by_body: HashMap<Atom, Vec<usize>> = HashMap::new();
        for (s, rule) in program.iter().enumerate() {
            for lit in rule.body() {
                by_body.entry(lit.atom).or_default().push(s);
            }
        }
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (r, rule) in program.iter().enumerate() {
            if let Some(targets) = by_body.get(&rule.head()) {
                for &s in targets {
                    succ[r].push(s);
                    pred[s].push(r);
                }
            }
        }

        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
        let nodes: Vec<NodeIndex> = (0..n).map(|_| g.add_node(())).collect();
        for (r, targets) in succ.iter().enumerate() {
            for &s in targets {
                g.add_edge(nodes[r], nodes[s], ());
            }
        }
        // tarjan_scc lists components in reverse topological order.
        let mut components: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|ix| ix.index()).collect();
                c.sort_unstable();
                c
            })
            .collect();
        components.reverse();

        let mut component = vec![0; n];
        for (id, c) in components.iter().enumerate() {
            for &r in c {
                component[r] = id;
            }
        }
        let cyclic = components.iter().map(|c| c.len() > 1 || succ[c[0]].contains(&c[0])).collect();
        let heads = program.iter().map(|r| r.head()).collect();
        RuleGraph { succ, pred, component, components, cyclic, heads }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.succ[from].contains(&to)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(r, ts)| ts.iter().map(move |&s| (r, s)))
    }

    /// Strongly connected components, sources first.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, rule: usize) -> usize {
        self.component[rule]
    }

    /// True when `rule` belongs to a loop.
    pub fn in_loop(&self, rule: usize) -> bool {
        self.cyclic[self.component[rule]]
    }

    /// True when `rule` is in a loop through a body literal on `atom`, that is
    /// some rule of its loop has head `atom`.
    pub fn in_loop_through(&self, rule: usize, atom: Atom) -> bool {
        let c = self.component[rule];
        self.cyclic[c] && self.components[c].iter().any(|&s| self.heads[s] == atom)
    }

    /// True when `dependent` depends on `dependee`: a non-empty path leads
    /// from `dependee` to `dependent`.
    pub fn depends_on(&self, dependent: usize, dependee: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut queue: VecDeque<usize> = self.succ[dependee].iter().copied().collect();
        while let Some(r) = queue.pop_front() {
            if r == dependent {
                return true;
            }
            if !std::mem::replace(&mut seen[r], true) {
                queue.extend(self.succ[r].iter().copied());
            }
        }
        false
    }

    /// Every rule some rule of `targets` depends on, plus `targets` itself.
    fn ancestors(&self, targets: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue: VecDeque<usize> = targets.into_iter().collect();
        while let Some(r) = queue.pop_front() {
            if !std::mem::replace(&mut seen[r], true) {
                queue.extend(self.pred[r].iter().copied());
            }
        }
        seen
    }
}

/// `build_crg`: the complete rule graph of a program.
pub fn build_crg(program: &Program) -> RuleGraph {
    RuleGraph::new(program)
}

/// The rule layering of a program together with its segment levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    layer: Vec<u32>,
    segment_levels: Vec<u32>,
}

impl Layering {
    pub fn new(program: &Program) -> Layering {
        Layering::from_graph(program, &RuleGraph::new(program))
    }

    pub fn from_graph(program: &Program, graph: &RuleGraph) -> Layering {
        let mut comp_layer = vec![0u32; graph.components.len()];
        for (id, comp) in graph.components.iter().enumerate() {
            let below = comp
                .iter()
                .flat_map(|&r| graph.pred[r].iter())
                .map(|&q| graph.component[q])
                .filter(|&c| c != id)
                .map(|c| comp_layer[c])
                .max()
                .unwrap_or(0);
            comp_layer[id] = below + 1;
        }
        let layer: Vec<u32> = (0..program.len()).map(|r| comp_layer[graph.component[r]]).collect();

        let mut levels: Vec<u32> = layer.clone();
        levels.sort_unstable();
        levels.dedup();
        let segment_levels = levels
            .into_iter()
            .filter(|&t| {
                let low: AtomSet = program
                    .iter()
                    .zip(&layer)
                    .filter(|(_, &l)| l <= t)
                    .flat_map(|(r, _)| r.atoms())
                    .collect();
                program.iter().zip(&layer).all(|(r, &l)| l <= t || !low.contains(&r.head()))
            })
            .collect();
        Layering { layer, segment_levels }
    }

    pub fn layer(&self, rule: usize) -> u32 {
        self.layer[rule]
    }

    pub fn layers(&self) -> &[u32] {
        &self.layer
    }

    pub fn max_layer(&self) -> u32 {
        self.layer.iter().copied().max().unwrap_or(0)
    }

    /// Layer values `T` for which `P^{<=T}` is a segment, ascending. Always
    /// contains the maximum layer of a non-empty program.
    pub fn segment_levels(&self) -> &[u32] {
        &self.segment_levels
    }

    /// Segment levels strictly below the maximum layer.
    pub fn proper_segment_levels(&self) -> impl Iterator<Item = u32> + '_ {
        let max = self.max_layer();
        self.segment_levels.iter().copied().filter(move |&t| t < max)
    }

    pub fn is_segment(&self, t: u32) -> bool {
        self.segment_levels.contains(&t)
    }

    /// Layer number keyed by rule text.
    pub fn by_rule_text(&self, program: &Program) -> BTreeMap<String, u32> {
        program.iter().zip(&self.layer).map(|(r, &l)| (r.to_string(), l)).collect()
    }
}

pub fn layering(program: &Program) -> Layering {
    Layering::new(program)
}

/// Splits a program at segment level `t` into `(P^{<=t}, P^{>t})`.
pub fn segment_split(program: &Program, t: u32) -> Result<(Program, Program)> {
    let layering = Layering::new(program);
    split_with(program, &layering, t)
}

pub(crate) fn split_with(program: &Program, layering: &Layering, t: u32) -> Result<(Program, Program)> {
    if !layering.is_segment(t) {
        return Err(Error::NotASegment(t));
    }
    Ok((
        program.select(|i| layering.layer(i) <= t),
        program.select(|i| layering.layer(i) > t),
    ))
}

/// `Rel_P(a)`: the rules with head `a` and every rule they depend on.
pub fn relevant_subprogram(program: &Program, atom: Atom) -> Program {
    let graph = RuleGraph::new(program);
    let keep = graph.ancestors(program.iter().enumerate().filter(|(_, r)| r.head() == atom).map(|(i, _)| i));
    program.select(|i| keep[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn p(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    const REDUCIBLE: &str = "a :- not f. e :- d. a :- not b. d :- e. b :- not a. c :- a. d :- f.";
    const DEFECTIVE: &str = "a :- not b. b :- not a. c :- a. c :- not c.";
    const EXCESSIVE: &str = "a :- not b. b :- not a. u :- a. u :- b. p :- not p, not u. q :- not q, not p.";

    #[test]
    fn single_fact_has_no_arcs() {
        let g = build_crg(&p("a."));
        assert_eq!(g.len(), 1);
        assert_eq!(g.arcs().count(), 0);
        assert!(!g.depends_on(0, 0));
    }

    #[test]
    fn even_loop_is_one_component() {
        let g = build_crg(&p("a :- not b. b :- not a."));
        assert!(g.has_arc(0, 1) && g.has_arc(1, 0));
        assert_eq!(g.components().len(), 1);
        assert!(g.in_loop(0));
    }

    #[test]
    fn self_dependency() {
        let g = build_crg(&p("c :- not c."));
        assert!(g.depends_on(0, 0));
        assert!(g.in_loop_through(0, Atom::new("c")));
    }

    #[test]
    fn remainder_example_components() {
        let prog = p(REDUCIBLE);
        let g = build_crg(&prog);
        let mut comps: Vec<Vec<usize>> = g.components().to_vec();
        comps.sort();
        // rules: 0 a:-not f, 1 e:-d, 2 a:-not b, 3 d:-e, 4 b:-not a, 5 c:-a, 6 d:-f
        assert_eq!(comps, vec![vec![0], vec![1, 3], vec![2, 4], vec![5], vec![6]]);
        // c :- a depends on a :- not f
        assert!(g.depends_on(5, 0));
        assert!(!g.depends_on(0, 5));
    }

    #[test]
    fn layering_of_defective_program() {
        let prog = p(DEFECTIVE);
        let l = layering(&prog);
        assert_eq!(l.layers(), &[1, 1, 2, 3]);
        assert!(l.is_segment(1));
        let (low, high) = segment_split(&prog, 1).unwrap();
        assert_eq!(low, p("a :- not b. b :- not a."));
        assert_eq!(high, p("c :- a. c :- not c."));
    }

    #[test]
    fn even_loop_is_layer_one() {
        let l = layering(&p("a :- not b. b :- not a."));
        assert_eq!(l.layers(), &[1, 1]);
        assert_eq!(l.segment_levels(), &[1]);
    }

    #[test]
    fn four_layer_program() {
        let prog = p(EXCESSIVE);
        let l = layering(&prog);
        assert_eq!(l.layers(), &[1, 1, 2, 2, 3, 4]);
        assert_eq!(l.segment_levels(), &[1, 2, 3, 4]);
    }

    #[test]
    fn non_segment_level_is_rejected() {
        let prog = p(REDUCIBLE);
        let l = layering(&prog);
        assert_eq!(l.layer(0), 1);
        assert_eq!(l.layer(6), 1);
        assert!(!l.is_segment(1));
        assert_eq!(segment_split(&prog, 1), Err(Error::NotASegment(1)));
    }

    #[test]
    fn max_layer_split_is_whole_program() {
        for text in [REDUCIBLE, DEFECTIVE, EXCESSIVE] {
            let prog = p(text);
            let max = layering(&prog).max_layer();
            let (low, high) = segment_split(&prog, max).unwrap();
            assert_eq!(low, prog);
            assert!(high.is_empty());
        }
    }

    #[test]
    fn relevant_subprograms() {
        let a = Atom::new("a");
        assert_eq!(relevant_subprogram(&p("a."), a), p("a."));
        let prog = p(DEFECTIVE);
        assert_eq!(relevant_subprogram(&prog, a), p("a :- not b. b :- not a."));
        assert_eq!(relevant_subprogram(&prog, Atom::new("c")), prog);
    }
}
