//! Seeded random networks and threshold maps.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, UpdateFunction};
use crate::refinement::ThresholdMap;
use crate::structure::interaction_graph;

/// A network on `n` components: each declares between 1 and `max_indegree`
/// distinct regulators and a uniformly random truth table; inputs the table
/// ignores are pruned.
pub fn random_network(seed: u64, n: usize, max_indegree: usize) -> Result<BooleanNetwork> {
    if n == 0 || max_indegree == 0 || max_indegree > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= max_indegree <= n, got max_indegree {max_indegree} and n {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut functions = Vec::with_capacity(n);
    let mut pruned = Vec::new();
    for i in 0..n {
        let k = rng.random_range(1..=max_indegree);
        let inputs = sample(&mut rng, n, k).into_vec();
        let table = (0..1usize << k).map(|_| rng.random::<bool>()).collect();
        let (f, dropped) = UpdateFunction::from_table(inputs, table)?;
        pruned.extend(dropped.into_iter().map(|j| (i, j)));
        functions.push(f);
    }
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    let mut net = BooleanNetwork::new(names, functions)?;
    net.add_pruned(pruned);
    Ok(net)
}

/// Thresholds drawn uniformly from `1..=max` for every interaction.
pub fn random_thresholds(net: &BooleanNetwork, seed: u64, max: u32) -> Result<ThresholdMap> {
    if max == 0 {
        return Err(Error::InvalidArgument("thresholds need max >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = interaction_graph(net);
    let entries: Vec<_> = g
        .edges()
        .map(|(e, _)| (e, rng.random_range(1..=max)))
        .collect();
    ThresholdMap::new(net, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = random_network(7, 6, 3).unwrap();
        let b = random_network(7, 6, 3).unwrap();
        assert_eq!(a, b);
        let differ = (0..20).any(|s| random_network(s, 6, 3).unwrap() != a);
        assert!(differ);
    }

    #[test]
    fn bounds_are_checked() {
        assert!(random_network(1, 4, 0).is_err());
        assert!(random_network(1, 4, 5).is_err());
        assert!(random_network(1, 0, 1).is_err());
    }

    #[test]
    fn indegrees_respect_the_bound() {
        for seed in 0..50 {
            let net = random_network(seed, 6, 2).unwrap();
            assert!((0..6).all(|i| net.regulators(i).len() <= 2));
        }
    }

    #[test]
    fn thresholds_in_range() {
        let net = random_network(3, 5, 3).unwrap();
        let t = random_thresholds(&net, 3, 3).unwrap();
        assert!(t.iter().all(|(_, v)| (1..=3).contains(&v)));
        assert_eq!(t, random_thresholds(&net, 3, 3).unwrap());
    }
}
