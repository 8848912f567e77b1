//! Orders of the finite level quotients, the finiteness criterion and
//! topological generators.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{basic_at, sym_group, AdmissiblePermutation, MinimalDfa, Portrait};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Word};
use crate::minimization::is_minimal;

/// Order of `Sym(n)`, the product of `|Sym(q(w))|` over the words `w` of
/// length `n`.
pub fn level_group_order(base: &MinimalDfa, n: usize) -> Result<BigUint> {
    let counts = base.level_counts(n);
    let mut order = BigUint::one();
    for (q, &count) in counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let sym = sym_group(base, q)?.order;
        if sym.is_one() {
            continue;
        }
        let exp = count
            .to_u32()
            .filter(|&c| c != u32::MAX)
            .ok_or_else(|| Error::TooLarge(format!("level {n} has too many vertices")))?;
        order *= sym.pow(exp);
    }
    Ok(order)
}

/// Order of the quotient of the automorphism group by the rigid stabilizer
/// of level `n + 1`: the product of the level orders for levels `0..=n`.
pub fn truncated_order(base: &MinimalDfa, n: usize) -> Result<BigUint> {
    (0..=n).try_fold(BigUint::one(), |acc, k| Ok(acc * level_group_order(base, k)?))
}

/// Outcome of the finiteness test. Witnesses are recurrent double edges,
/// given as pairs of edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitenessReport {
    pub finite: bool,
    pub witnesses: Vec<(usize, usize)>,
}

/// States lying on some directed cycle.
fn on_cycle(g: &Multigraph) -> Vec<bool> {
    (0..g.num_states())
        .map(|q| {
            g.out_edges(q)
                .iter()
                .any(|&e| g.reachable_from(g.edge(e).dst)[q])
        })
        .collect()
}

/// The automorphism group is infinite iff the minimal graph has a recurrent
/// double edge: two parallel edges whose common source lies on a cycle or
/// can be reached from one.
pub fn is_finite(g: &Multigraph) -> Result<FinitenessReport> {
    if !is_minimal(g)? {
        return Err(Error::NotMinimal);
    }
    let cyclic = on_cycle(g);
    let mut downstream = vec![false; g.num_states()];
    for c in (0..g.num_states()).filter(|&c| cyclic[c]) {
        for (q, hit) in g.reachable_from(c).into_iter().enumerate() {
            downstream[q] |= hit;
        }
    }
    let mut witnesses = Vec::new();
    for q in (0..g.num_states()).filter(|&q| downstream[q]) {
        let out = g.out_edges(q);
        for t in 0..g.num_states() {
            let parallel: Vec<usize> = out.iter().copied().filter(|&e| g.edge(e).dst == t).collect();
            if parallel.len() >= 2 {
                witnesses.push((parallel[0], parallel[1]));
            }
        }
    }
    Ok(FinitenessReport {
        finite: witnesses.is_empty(),
        witnesses,
    })
}

/// One topological generator: the basic automorphism at `word` built from a
/// non-trivial admissible permutation at a state reachable from the state of
/// `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub word: Word,
    pub sigma: AdmissiblePermutation,
}

impl Generator {
    pub fn portrait(&self, base: &MinimalDfa) -> Result<Portrait> {
        basic_at(base, &self.word, &self.sigma)
    }
}

/// All generators with `|word| <= max_len`, ordered by word length, then
/// word, then state, then permutation.
pub fn enumerate_generators(base: &MinimalDfa, max_len: usize) -> Result<Vec<Generator>> {
    let g = base.graph();
    let groups = (0..g.num_states())
        .map(|q| sym_group(base, q).map(|s| s.elements()))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for len in 0..=max_len {
        for (word, qw) in base.level_with_states(len) {
            let reach = g.reachable_from(qw);
            for q in (0..g.num_states()).filter(|&q| reach[q]) {
                for p in groups[q].iter().filter(|p| !p.is_identity()) {
                    out.push(Generator {
                        word: word.clone(),
                        sigma: AdmissiblePermutation {
                            state: q,
                            perm: p.clone(),
                        },
                    });
                }
            }
        }
    }
    Ok(out)
}
