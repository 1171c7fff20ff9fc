//! Random valid PIPs for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::pip::{Pip, ValidateOptions};

/// A random closed, valid PIP with `elements` elements named `e00`, `e01`, ...
///
/// Covers are drawn as a random DAG over a hidden random permutation (each
/// forward pair kept with probability `edge_prob`). Up to `conflict_attempts`
/// inconsistent pairs are then proposed; a proposal is kept only when the
/// upward closure stays valid.
pub fn random_pip<R: Rng + ?Sized>(
    rng: &mut R,
    elements: usize,
    edge_prob: f64,
    conflict_attempts: usize,
) -> Pip {
    let width = elements.to_string().len().max(2);
    let names: Vec<String> = (0..elements).map(|i| format!("e{i:0width$}")).collect();
    let mut perm: Vec<usize> = (0..elements).collect();
    perm.shuffle(rng);

    let mut covers = Vec::new();
    for i in 0..elements {
        for j in i + 1..elements {
            if rng.gen_bool(edge_prob) {
                covers.push((perm[i], perm[j]));
            }
        }
    }
    let mut pip = Pip::from_indexed(names.clone(), covers.iter().copied(), std::iter::empty());
    if elements < 2 {
        return pip;
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for _ in 0..conflict_attempts {
        let a = rng.gen_range(0..elements);
        let b = rng.gen_range(0..elements);
        if a == b || pip.leq(a, b) || pip.leq(b, a) || pip.inconsistent(a, b) {
            continue;
        }
        pairs.push((a, b));
        let candidate = Pip::from_indexed(names.clone(), covers.iter().copied(), pairs.iter().copied())
            .close()
            .expect("generated covers are acyclic");
        if candidate.validate(ValidateOptions::default()).is_valid() {
            pip = candidate;
        } else {
            pairs.pop();
        }
    }
    pip
}
