use proptest::prelude::*;

use lpsem::generate::sized_program;
use lpsem::graph::{relevant_subprogram, segment_split, Layering};
use lpsem::reduction::{remainder, OpSet};
use lpsem::wfm::{wfm_from_remainder, wfm_with_facts};
use lpsem::{parse_program, render_program, AtomSet, Evaluator, Program, SemanticsId};

fn programs() -> impl Strategy<Value = Program> {
    (any::<u64>(), 0u64..1000).prop_map(|(seed, i)| sized_program(seed, i, 6, 9))
}

fn negated(p: &Program) -> AtomSet {
    p.iter().flat_map(|r| r.neg().iter().copied()).collect()
}

fn subsets(items: &AtomSet) -> impl Iterator<Item = AtomSet> + '_ {
    let v: Vec<_> = items.iter().copied().collect();
    (0u64..1 << v.len()).map(move |m| v.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, a)| *a).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn render_then_parse_is_identity(p in programs()) {
        prop_assert_eq!(parse_program(&render_program(&p)).unwrap(), p);
    }

    #[test]
    fn wfm_partitions_the_atoms(p in programs()) {
        let w = wfm_from_remainder(&p);
        let (t, f, u) = (w.true_set(), w.false_set(), w.undef_set());
        prop_assert!(t.is_disjoint(f) && t.is_disjoint(u) && f.is_disjoint(u));
        let all: AtomSet = t.iter().chain(f).chain(u).copied().collect();
        prop_assert_eq!(all, p.atoms());
    }

    #[test]
    fn adding_facts_composes(p in programs(), i in 0usize..6, j in 0usize..6) {
        let atoms = p.atoms();
        let a: AtomSet = atoms.iter().take(i).copied().collect();
        let b: AtomSet = atoms.iter().skip(j).copied().collect();
        let both: AtomSet = a.union(&b).copied().collect();
        prop_assert_eq!(p.add_facts(&a).add_facts(&b), p.add_facts(&both));
    }

    #[test]
    fn segments_split_without_backward_dependencies(p in programs()) {
        let layering = Layering::new(&p);
        for t in layering.proper_segment_levels() {
            let (low, high) = segment_split(&p, t).unwrap();
            prop_assert_eq!(low.len() + high.len(), p.len());
            let low_atoms = low.iter().fold(AtomSet::new(), |acc, r| acc.union(&r.body_atoms()).copied().collect());
            prop_assert!(high.heads().is_disjoint(&low_atoms));
        }
    }

    #[test]
    fn relevant_subprogram_is_closed(p in programs()) {
        for a in p.atoms() {
            let rel = relevant_subprogram(&p, a);
            prop_assert!(rel.iter().all(|r| p.contains(r)));
            let mut needed = rel.iter().fold(AtomSet::new(), |acc, r| acc.union(&r.body_atoms()).copied().collect::<AtomSet>());
            needed.insert(a);
            for r in p.iter().filter(|r| needed.contains(&r.head())) {
                prop_assert!(rel.contains(r));
            }
        }
    }

    #[test]
    fn remainders_are_fixpoints(p in programs()) {
        for ops in [OpSet::wfs(), OpSet::mh(), OpSet::mh_ls()] {
            let r = remainder(&p, &ops);
            prop_assert_eq!(remainder(&r, &ops), r);
        }
    }

    #[test]
    fn layered_remainder_keeps_wfs_default_literals(p in programs()) {
        let wfs = negated(&remainder(&p, &OpSet::wfs()));
        let mh = negated(&remainder(&p, &OpSet::mh()));
        prop_assert!(wfs.is_subset(&mh));
    }

    #[test]
    fn mh_affixes_are_sound_and_minimal(p in programs()) {
        let ev = Evaluator::default();
        let hyps = ev.hyps(&p, SemanticsId::Mh).unwrap();
        for m in ev.models(&p, SemanticsId::Mh).unwrap().iter() {
            let affix = m.affix().unwrap();
            prop_assert!(affix.is_subset(&hyps));
            let w = wfm_with_facts(&p, affix);
            prop_assert!(w.is_total());
            prop_assert_eq!(w.true_set(), m.positive());
            for smaller in subsets(affix).filter(|s| !s.is_empty() && s != affix) {
                prop_assert!(!wfm_with_facts(&p, &smaller).is_total());
            }
        }
    }

    #[test]
    fn refined_cm_cut_sees_every_classical_violation(p in programs()) {
        let ev = Evaluator::default();
        for sem in [SemanticsId::Sm, SemanticsId::Mh, SemanticsId::Navy] {
            let report = ev.check_cm_cut(&p, sem).unwrap();
            for probe in report.probes() {
                if probe.classical_cm || probe.classical_cut {
                    prop_assert!(!probe.refined_cm.is_empty() || !probe.refined_cut.is_empty());
                }
            }
        }
    }

    #[test]
    fn generator_is_deterministic(seed in any::<u64>(), i in 0u64..1000) {
        prop_assert_eq!(sized_program(seed, i, 8, 12), sized_program(seed, i, 8, 12));
    }
}
