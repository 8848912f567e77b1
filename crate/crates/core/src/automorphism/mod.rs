//! Automorphisms of the path tree of a geometrically minimal automaton,
//! described through their portraits: the local permutation of out-edge
//! labels at every vertex.
//!
//! Over a minimal automaton a family of local permutations defines an
//! automorphism exactly when every local permutation is admissible, i.e.
//! only permutes letters leading to a common target state. The group of
//! admissible permutations at `q` is `Sym(q)`.

mod general;
mod json;
mod order;
mod portrait;

use std::ops::Deref;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Dfa;
use crate::minimization::{factorial, is_minimal};
use crate::perm::Permutation;

pub use general::{check_general_portrait, GeneralPortrait, PortraitCheck};
pub use json::{CycleList, PortraitDoc, VertexEntry};
pub use order::{
    enumerate_generators, is_finite, level_group_order, truncated_order, FinitenessReport, Generator,
};
pub use portrait::{basic_at, basic_automorphism, Form, Portrait, TruncatedPortrait};

/// A connected, geometrically minimal automaton, shared between portraits.
#[derive(Clone, Debug)]
pub struct MinimalDfa(Arc<Dfa>);

impl MinimalDfa {
    /// Checks connectivity and geometric minimality.
    pub fn new(dfa: Dfa) -> Result<Self> {
        if !is_minimal(dfa.graph())? {
            return Err(Error::NotMinimal);
        }
        Ok(MinimalDfa(Arc::new(dfa)))
    }

    pub fn dfa(&self) -> &Dfa {
        &self.0
    }

    pub fn same_as(&self, other: &MinimalDfa) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Deref for MinimalDfa {
    type Target = Dfa;

    fn deref(&self) -> &Dfa {
        &self.0
    }
}

/// A permutation of the out-letters of a state that preserves the target
/// of every letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePermutation {
    pub state: usize,
    pub perm: Permutation,
}

impl AdmissiblePermutation {
    pub fn new(dfa: &Dfa, state: usize, perm: Permutation) -> Result<Self> {
        check_admissible(dfa, state, &perm)?;
        Ok(AdmissiblePermutation { state, perm })
    }

    pub fn identity(dfa: &Dfa, state: usize) -> Self {
        AdmissiblePermutation {
            state,
            perm: Permutation::identity(dfa.out_letters(state)),
        }
    }

    /// Builds `perm` from cycles of letter names.
    pub fn from_cycles(dfa: &Dfa, state: usize, cycles: &[Vec<String>]) -> Result<Self> {
        let cycles = cycles
            .iter()
            .map(|c| c.iter().map(|l| dfa.letter_index(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let perm = Permutation::from_cycles(&dfa.out_letters(state), &cycles).map_err(|e| Error::NotAdmissible {
            state: dfa.graph().state_name(state).to_string(),
            reason: e.to_string(),
        })?;
        Self::new(dfa, state, perm)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }
}

pub(crate) fn check_admissible(dfa: &Dfa, state: usize, perm: &Permutation) -> Result<()> {
    let name = || dfa.graph().state_name(state).to_string();
    if state >= dfa.graph().num_states() {
        return Err(Error::UnknownState(format!("#{state}")));
    }
    let letters = dfa.out_letters(state);
    if !perm.domain().eq(letters.iter().copied()) {
        return Err(Error::NotAdmissible {
            state: name(),
            reason: "domain differs from the out-letters of the state".into(),
        });
    }
    for a in letters {
        if dfa.transition(state, perm.apply(a)) != dfa.transition(state, a) {
            return Err(Error::NotAdmissible {
                state: name(),
                reason: format!("moves {} to a letter with a different target", dfa.letter(a)),
            });
        }
    }
    Ok(())
}

/// The group `Sym(q)`: one symmetric group per block of letters sharing a
/// target state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymGroup {
    pub state: usize,
    /// `(target state, letters)` in state order.
    pub blocks: Vec<(usize, Vec<usize>)>,
    pub order: BigUint,
}

impl SymGroup {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|(_, b)| b.len()).collect()
    }

    /// All elements in a fixed order (lexicographic in the block images),
    /// the identity first.
    pub fn elements(&self) -> Vec<Permutation> {
        if self.blocks.is_empty() {
            return vec![Permutation::identity([])];
        }
        self.blocks
            .iter()
            .map(|(_, letters)| {
                letters
                    .iter()
                    .copied()
                    .permutations(letters.len())
                    .map(|img| letters.iter().copied().zip(img).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .multi_cartesian_product()
            .map(|choice| Permutation::from_pairs(choice.into_iter().flatten()).expect("block bijection"))
            .collect()
    }
}

/// Block structure and order of the admissible permutations at `q`.
pub fn admissible_perms(base: &MinimalDfa, q: usize) -> Result<SymGroup> {
    sym_group(base, q)
}

pub(crate) fn sym_group(dfa: &Dfa, q: usize) -> Result<SymGroup> {
    if q >= dfa.graph().num_states() {
        return Err(Error::UnknownState(format!("#{q}")));
    }
    let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
    for a in dfa.out_letters(q) {
        let t = dfa.transition(q, a).expect("out letter");
        match blocks.iter_mut().find(|(s, _)| *s == t) {
            Some((_, b)) => b.push(a),
            None => blocks.push((t, vec![a])),
        }
    }
    blocks.sort_by_key(|(t, _)| *t);
    let order = blocks
        .iter()
        .fold(BigUint::one(), |acc, (_, b)| acc * factorial(b.len() as u32));
    Ok(SymGroup { state: q, blocks, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    fn ternary() -> Dfa {
        // r has two loops and one edge to s; s returns to r once.
        let g = Multigraph::new(
            ["r", "s"],
            "r",
            [
                ("x0".to_string(), "r".to_string(), "r".to_string()),
                ("x1".to_string(), "r".to_string(), "r".to_string()),
                ("x2".to_string(), "r".to_string(), "s".to_string()),
                ("y0".to_string(), "s".to_string(), "r".to_string()),
            ],
        )
        .unwrap();
        Dfa::new(g, ["a", "b", "c"], &["a".into(), "b".into(), "c".into(), "a".into()]).unwrap()
    }

    #[test]
    fn sym_group_blocks() {
        let base = MinimalDfa::new(ternary()).unwrap();
        let r = base.graph().state_index("r").unwrap();
        let sym = admissible_perms(&base, r).unwrap();
        assert_eq!(sym.block_sizes(), vec![2, 1]);
        assert_eq!(sym.order, BigUint::from(2u32));
        assert_eq!(sym.elements().len(), 2);
        assert!(sym.elements()[0].is_identity());
        let s = base.graph().state_index("s").unwrap();
        assert_eq!(admissible_perms(&base, s).unwrap().order, BigUint::one());
    }

    #[test]
    fn block_violation_is_rejected() {
        let base = MinimalDfa::new(ternary()).unwrap();
        let r = base.graph().state_index("r").unwrap();
        let err = AdmissiblePermutation::from_cycles(&base, r, &[vec!["a".into(), "c".into()]]).unwrap_err();
        assert_eq!(err.code(), "NotAdmissible");
        AdmissiblePermutation::from_cycles(&base, r, &[vec!["a".into(), "b".into()]]).unwrap();
    }
}
