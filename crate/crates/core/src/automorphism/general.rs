//! Portraits over arbitrary (not necessarily minimal) automata, where a
//! local map is any injection of the out-letters of a vertex into the
//! alphabet. Such a portrait defines an automorphism iff, level by level,
//! each local map sends the out-letters of `v` into the out-letters of the
//! image of `v`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Dfa, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPortrait {
    dfa: Dfa,
    local: BTreeMap<Word, BTreeMap<usize, usize>>,
}

/// Result of [`check_general_portrait`]. `offending` is the first vertex (in
/// length-lexicographic order) where the containment condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortraitCheck {
    pub valid: bool,
    pub offending: Option<Word>,
}

impl GeneralPortrait {
    /// Each entry must be an injection whose domain is exactly the
    /// out-letters of its (accepted) vertex.
    pub fn new(dfa: Dfa, entries: impl IntoIterator<Item = (Word, BTreeMap<usize, usize>)>) -> Result<Self> {
        let mut local = BTreeMap::new();
        for (v, map) in entries {
            let q = dfa.state_of(&v)?;
            let domain: Vec<usize> = map.keys().copied().collect();
            if domain != dfa.out_letters(q) {
                return Err(Error::InvalidPermutation(format!(
                    "local map at {} must be defined exactly on the out-letters",
                    dfa.format_word(&v)
                )));
            }
            let image: BTreeSet<usize> = map.values().copied().collect();
            if image.len() != map.len() || image.iter().any(|&b| b >= dfa.alphabet().len()) {
                return Err(Error::InvalidPermutation(format!(
                    "local map at {} is not an injection into the alphabet",
                    dfa.format_word(&v)
                )));
            }
            local.insert(v, map);
        }
        Ok(GeneralPortrait { dfa, local })
    }

    pub fn identity(dfa: Dfa) -> Self {
        GeneralPortrait {
            dfa,
            local: BTreeMap::new(),
        }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn entries(&self) -> &BTreeMap<Word, BTreeMap<usize, usize>> {
        &self.local
    }

    /// Image of `a` under the local map at `v` (identity where unspecified).
    pub fn apply_at(&self, v: &Word, a: usize) -> usize {
        self.local.get(v).and_then(|m| m.get(&a)).copied().unwrap_or(a)
    }

    /// The induced map on words; the image need not be accepted.
    pub fn act_word(&self, v: &Word) -> Word {
        let mut out = Word::empty();
        for (k, &a) in v.letters().iter().enumerate() {
            out.push(self.apply_at(&v.prefix(k), a));
        }
        out
    }
}

/// Checks the portrait on all accepted words of length at most `depth`:
/// for every vertex `v` of length below `depth` the image of `v` must be
/// accepted and the local map at `v` must send the out-letters of `v` into
/// the out-letters of the image.
pub fn check_general_portrait(gp: &GeneralPortrait, depth: usize) -> PortraitCheck {
    let dfa = &gp.dfa;
    // (vertex, state of vertex, image, state of image)
    let mut level = vec![(Word::empty(), dfa.root(), Word::empty(), dfa.root())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (v, q, img, qi) in &level {
            for a in dfa.out_letters(*q) {
                let b = gp.apply_at(v, a);
                match dfa.transition(*qi, b) {
                    Some(ti) => next.push((v.child(a), dfa.transition(*q, a).expect("out letter"), img.child(b), ti)),
                    None => {
                        return PortraitCheck {
                            valid: false,
                            offending: Some(v.clone()),
                        }
                    }
                }
            }
        }
        level = next;
    }
    PortraitCheck {
        valid: true,
        offending: None,
    }
}
