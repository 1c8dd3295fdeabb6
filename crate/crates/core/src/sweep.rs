//! Subset selection for verification sweeps.
//!
//! A [`Selection`] names subsets of a finite universe: all of them, all up to a
//! size, explicit ones, and a number of extra seeded-random ones. Resolved
//! selections are sorted and duplicate-free, so a given selection and seed
//! always yields the same list.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_SEED: u64 = 20_100_221;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Selection {
    pub all: bool,
    pub max_size: Option<usize>,
    /// Additional distinct random subsets, each element kept with probability 1/2.
    pub random: usize,
    pub seed: u64,
    /// Explicit subsets, given as positions in the universe.
    pub explicit: Vec<Vec<usize>>,
    pub nonempty: bool,
}

impl Selection {
    pub fn all() -> Self {
        Selection {
            all: true,
            ..Default::default()
        }
    }

    pub fn random(count: usize, seed: u64) -> Self {
        Selection {
            random: count,
            seed,
            ..Default::default()
        }
    }

    pub fn up_to(max_size: usize) -> Self {
        Selection {
            max_size: Some(max_size),
            ..Default::default()
        }
    }

    pub fn explicit(sets: Vec<Vec<usize>>) -> Self {
        Selection {
            explicit: sets,
            ..Default::default()
        }
    }

    pub fn with_random(mut self, count: usize, seed: u64) -> Self {
        self.random = count;
        self.seed = seed;
        self
    }

    pub fn nonempty(mut self) -> Self {
        self.nonempty = true;
        self
    }

    /// Subsets of `0..universe` as sorted position lists, in sorted order.
    pub fn resolve_positions(&self, universe: usize) -> Vec<Vec<usize>> {
        let keep = |s: &Vec<usize>| !(self.nonempty && s.is_empty());
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        if self.all {
            assert!(universe < 32, "exhaustive sweep over 2^{universe} subsets");
            for mask in 0u64..(1u64 << universe) {
                out.insert((0..universe).filter(|&i| mask >> i & 1 == 1).collect());
            }
        } else if let Some(m) = self.max_size {
            let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
            out.insert(Vec::new());
            for _ in 0..m.min(universe) {
                let mut next = Vec::new();
                for s in &frontier {
                    let start = s.last().map_or(0, |&l| l + 1);
                    for i in start..universe {
                        let mut t = s.clone();
                        t.push(i);
                        out.insert(t.clone());
                        next.push(t);
                    }
                }
                frontier = next;
            }
        }
        for s in &self.explicit {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            out.insert(s);
        }
        out.retain(keep);

        if self.random > 0 {
            let capacity = if universe >= 63 { u64::MAX } else { 1u64 << universe };
            let available = capacity
                .saturating_sub(out.len() as u64)
                .saturating_sub(u64::from(self.nonempty && !out.contains(&Vec::new())));
            let target = (self.random as u64).min(available) as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            let mut added = 0;
            while added < target {
                let s: Vec<usize> = (0..universe).filter(|_| rng.gen_bool(0.5)).collect();
                if keep(&s) && out.insert(s) {
                    added += 1;
                }
            }
        }
        out.into_iter().collect()
    }

    /// Resolves against a concrete universe.
    pub fn resolve<T: Clone>(&self, universe: &[T]) -> Vec<Vec<T>> {
        self.resolve_positions(universe.len())
            .into_iter()
            .map(|s| s.into_iter().map(|i| universe[i].clone()).collect())
            .collect()
    }
}

/// One family of checks in a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSweep {
    pub primes: Vec<u64>,
    pub selection: Selection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSweep {
    /// Cyclic orders per color, as in `[[2,2],[3]]`.
    pub groups: Vec<Vec<u64>>,
    pub selection: Selection,
}

/// The standard verification campaign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub wedge: Vec<Vec<Vec<u64>>>,
    pub prop1: Vec<GroupSweep>,
    pub theorems: Vec<PrimeSweep>,
    pub prop2: Vec<PrimeSweep>,
    pub fuchs: Vec<Vec<u64>>,
    pub change_of_variables: Vec<PrimeSweep>,
}

impl SweepConfig {
    pub fn standard(seed: u64) -> Self {
        let cyc = |v: &[u64]| v.iter().map(|&m| vec![m]).collect::<Vec<_>>();
        let joins = vec![
            cyc(&[2, 3]),
            cyc(&[2, 2, 2]),
            cyc(&[2, 3, 5]),
            cyc(&[4, 3]),
            vec![vec![2, 2], vec![3]],
        ];
        let prime = |primes: &[u64], selection: Selection| PrimeSweep {
            primes: primes.to_vec(),
            selection,
        };
        let group = |groups: Vec<Vec<u64>>, selection: Selection| GroupSweep { groups, selection };
        SweepConfig {
            wedge: joins,
            prop1: vec![
                group(cyc(&[2, 2]), Selection::all()),
                group(cyc(&[2, 3]), Selection::all()),
                group(cyc(&[2, 2, 2]), Selection::random(50, seed)),
                group(cyc(&[4, 3]), Selection::random(50, seed)),
                group(vec![vec![2, 2], vec![3]], Selection::random(50, seed)),
                group(cyc(&[2, 3, 5]), Selection::random(50, seed)),
            ],
            theorems: vec![
                prime(&[2, 3], Selection::all().nonempty()),
                prime(&[2, 3, 5], Selection::up_to(2).with_random(50, seed).nonempty()),
                prime(&[2, 3, 7], Selection::random(10, seed).nonempty()),
            ],
            prop2: vec![
                prime(&[2, 3], Selection::all()),
                prime(&[2, 3, 5], Selection::random(20, seed)),
                prime(&[2, 3, 7], Selection::random(20, seed)),
            ],
            fuchs: vec![vec![2, 3], vec![2, 3, 5], vec![2, 3, 7]],
            // `random` counts the functions h; values drawn from [-3, 3]
            change_of_variables: vec![
                prime(&[2, 3], Selection::random(20, seed)),
                prime(&[2, 3, 5], Selection::random(20, seed)),
            ],
        }
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self::standard(DEFAULT_SEED)
    }
}

/// Seeded integer vectors with entries in `[lo, hi]`.
pub fn random_vectors(count: usize, len: usize, lo: i64, hi: i64, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..len).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_counts() {
        assert_eq!(Selection::all().resolve_positions(3).len(), 8);
        assert_eq!(Selection::all().nonempty().resolve_positions(3).len(), 7);
        assert_eq!(Selection::up_to(2).resolve_positions(9).len(), 1 + 9 + 36);
        assert_eq!(Selection::up_to(2).nonempty().resolve_positions(9).len(), 45);
    }

    #[test]
    fn random_is_seeded_and_distinct() {
        let a = Selection::random(50, 7).resolve_positions(30);
        let b = Selection::random(50, 7).resolve_positions(30);
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        assert_ne!(a, Selection::random(50, 8).resolve_positions(30));
        let c = Selection::up_to(2).with_random(50, 1).nonempty().resolve_positions(9);
        assert_eq!(c.len(), 95);
        // capped by the number of subsets
        assert_eq!(Selection::random(100, 1).resolve_positions(3).len(), 8);
        assert_eq!(Selection::random(100, 1).nonempty().resolve_positions(3).len(), 7);
    }

    #[test]
    fn explicit_sets() {
        let s = Selection::explicit(vec![vec![2, 0, 2], vec![]]).nonempty();
        assert_eq!(s.resolve(&['a', 'b', 'c']), vec![vec!['a', 'c']]);
    }
}
