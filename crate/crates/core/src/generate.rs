//! Seeded random programs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::atom::Atom;
use crate::program::{Literal, Program, Rule};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub atom_count: usize,
    pub rule_count: usize,
    pub max_body: usize,
    pub negation_probability: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { atom_count: 5, rule_count: 6, max_body: 3, negation_probability: 0.5, seed: 0 }
    }
}

/// Atom names `a`..`z`, then `p26`, `p27`, ...
pub fn atom_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("p{i}")
    }
}

/// An endless, reproducible stream of programs for one configuration.
pub struct ProgramGenerator {
    config: GeneratorConfig,
    atoms: Vec<Atom>,
    rng: ChaCha8Rng,
}

impl ProgramGenerator {
    pub fn new(config: GeneratorConfig) -> Self {
        let atoms = (0..config.atom_count.max(1)).map(|i| Atom::new(&atom_name(i))).collect();
        let rng = ChaCha8Rng::seed_from_u64(config.seed);
        ProgramGenerator { config, atoms, rng }
    }

    /// Up to `rule_count` rules; duplicates are merged, so fewer may remain.
    pub fn next_program(&mut self) -> Program {
        let n = self.atoms.len();
        let p_neg = self.config.negation_probability.clamp(0.0, 1.0);
        let rules: Vec<Rule> = (0..self.config.rule_count)
            .map(|_| {
                let head = self.atoms[self.rng.random_range(0..n)];
                let len = self.rng.random_range(0..=self.config.max_body);
                let body: Vec<Literal> = (0..len)
                    .map(|_| {
                        let atom = self.atoms[self.rng.random_range(0..n)];
                        if self.rng.random_bool(p_neg) {
                            Literal::neg(atom)
                        } else {
                            Literal::pos(atom)
                        }
                    })
                    .collect();
                Rule::new(head, body)
            })
            .collect();
        Program::new(rules)
    }
}

impl Iterator for ProgramGenerator {
    type Item = Program;

    fn next(&mut self) -> Option<Program> {
        Some(self.next_program())
    }
}

pub fn generate(config: &GeneratorConfig) -> Program {
    ProgramGenerator::new(config.clone()).next_program()
}

/// Program number `index` of a mixed-size family: atom and rule counts vary
/// with the index, within `max_atoms` and `max_rules`.
pub fn sized_program(seed: u64, index: u64, max_atoms: usize, max_rules: usize) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let config = GeneratorConfig {
        atom_count: rng.random_range(1..=max_atoms.max(1)),
        rule_count: rng.random_range(1..=max_rules.max(1)),
        max_body: 3,
        negation_probability: rng.random_range(0.2..0.8),
        seed: rng.random(),
    };
    generate(&config)
}
