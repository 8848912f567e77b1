//! Finite permutations of letter indices.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A bijection of a finite set of letters onto itself.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: BTreeMap<usize, usize>,
}

impl Permutation {
    pub fn identity(domain: impl IntoIterator<Item = usize>) -> Self {
        Permutation {
            map: domain.into_iter().map(|a| (a, a)).collect(),
        }
    }

    /// Builds a permutation from `(letter, image)` pairs, checking that the
    /// images are exactly the letters.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            if map.insert(a, b).is_some() {
                return Err(Error::InvalidPermutation(format!("letter #{a} mapped twice")));
            }
        }
        let domain: BTreeSet<usize> = map.keys().copied().collect();
        let image: BTreeSet<usize> = map.values().copied().collect();
        if domain != image {
            return Err(Error::InvalidPermutation("not a bijection of its domain".into()));
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation of `domain` from disjoint cycles. Letters not in
    /// any cycle are fixed.
    pub fn from_cycles(domain: &[usize], cycles: &[Vec<usize>]) -> Result<Self> {
        let mut map: BTreeMap<usize, usize> = domain.iter().map(|&a| (a, a)).collect();
        let mut used = BTreeSet::new();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if !map.contains_key(&a) {
                    return Err(Error::InvalidPermutation(format!("letter #{a} outside the domain")));
                }
                if !used.insert(a) {
                    return Err(Error::InvalidPermutation(format!("letter #{a} appears in two cycles")));
                }
                map.insert(a, cycle[(i + 1) % cycle.len()]);
            }
        }
        Ok(Permutation { map })
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    /// Image of `a`; letters outside the domain are fixed.
    pub fn apply(&self, a: usize) -> usize {
        self.map.get(&a).copied().unwrap_or(a)
    }

    pub fn apply_inverse(&self, b: usize) -> usize {
        self.map
            .iter()
            .find(|(_, &v)| v == b)
            .map(|(&k, _)| k)
            .unwrap_or(b)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let mut map: BTreeMap<usize, usize> = other.map.iter().map(|(&a, &b)| (a, self.apply(b))).collect();
        for (&a, &b) in &self.map {
            map.entry(a).or_insert(b);
        }
        Permutation { map }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    /// Non-trivial cycles, each starting at its least letter, ordered by
    /// that letter. The identity has no cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if seen.contains(&start) || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut a = self.apply(start);
            while a != start {
                seen.insert(a);
                cycle.push(a);
                a = self.apply(a);
            }
            out.push(cycle);
        }
        out
    }
}
