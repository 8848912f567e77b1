//! Rooted-tree canonical forms, used as an independent check on the
//! refinement-based equivalences and on automorphism counts.
//!
//! Two flavours are provided: explicit encodings of materialized trees
//! (sorted recursive encoding of children), and a hash-consed variant that
//! computes the same encodings for the depth-`d` cone of every state without
//! materializing the exponentially large trees.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::graph::{canonical_labelling, Multigraph, TruncatedTree};
use crate::minimization::{factorial, stabilization_bound, Partition};

/// Canonical string of the subtree of `tree` at vertex `v`: `(` followed by
/// the sorted encodings of the children and `)`. When `colour` is given the
/// colour of every vertex is written after its opening parenthesis.
pub fn encode_subtree(tree: &TruncatedTree, v: usize, colour: Option<&dyn Fn(usize) -> usize>) -> String {
    let mut kids: Vec<String> = tree.children[v]
        .iter()
        .map(|&c| encode_subtree(tree, c, colour))
        .collect();
    kids.sort();
    let mut s = String::from("(");
    if let Some(f) = colour {
        s.push_str(&f(v).to_string());
        s.push(':');
    }
    for k in kids {
        s.push_str(&k);
    }
    s.push(')');
    s
}

/// Materializes the depth-`d` cone at `q` and returns its canonical string.
pub fn explicit_cone_encoding(g: &Multigraph, q: usize, d: usize) -> String {
    let closure = canonical_labelling(&g.reachable_closure(q));
    let tree = closure.truncated_cover(d);
    encode_subtree(&tree, 0, None)
}

/// Hash-consed canonical ids of the depth-`d` cones of all states: two states
/// get the same id iff their depth-`d` cones are isomorphic rooted trees.
pub fn cone_ids(g: &Multigraph, d: usize) -> Vec<usize> {
    let mut table: HashMap<Vec<usize>, usize> = HashMap::new();
    // the single-vertex tree
    let leaf = {
        table.insert(Vec::new(), 0);
        0
    };
    let mut ids = vec![leaf; g.num_states()];
    for _ in 0..d {
        let next: Vec<usize> = (0..g.num_states())
            .map(|q| {
                let mut kids: Vec<usize> = g.out_edges(q).iter().map(|&e| ids[g.edge(e).dst]).collect();
                kids.sort_unstable();
                let fresh = table.len();
                *table.entry(kids).or_insert(fresh)
            })
            .collect();
        ids = next;
    }
    ids
}

/// The Nerode partition computed from canonical forms of cones truncated at
/// depth `(|Q|+1)^2`.
pub fn brute_force_nerode(g: &Multigraph) -> Partition {
    Partition::from_classes(&cone_ids(g, stabilization_bound(g.num_states())))
}

/// Number of automorphisms of a finite rooted tree that preserve the given
/// vertex colouring.
pub fn count_coloured_automorphisms(tree: &TruncatedTree, colour: &dyn Fn(usize) -> usize) -> BigUint {
    fn go(tree: &TruncatedTree, v: usize, colour: &dyn Fn(usize) -> usize) -> (String, BigUint) {
        let mut kids: Vec<(String, BigUint)> = tree.children[v].iter().map(|&c| go(tree, c, colour)).collect();
        kids.sort_by(|a, b| a.0.cmp(&b.0));
        let mut count = BigUint::one();
        let mut i = 0;
        while i < kids.len() {
            let mut j = i;
            while j < kids.len() && kids[j].0 == kids[i].0 {
                count *= &kids[j].1;
                j += 1;
            }
            count *= factorial((j - i) as u32);
            i = j;
        }
        let mut code = format!("({}:", colour(v));
        for (k, _) in &kids {
            code.push_str(k);
        }
        code.push(')');
        (code, count)
    }
    go(tree, 0, colour).1
}

/// Number of type-preserving automorphisms of the depth-`depth` ball of the
/// path tree of `g`, where the type of a vertex is the class of its cone
/// under `≡_K`, `K = (|Q|+1)^2`. The count is computed on shared
/// (hash-consed) subtrees, so deep balls are affordable.
pub fn count_type_preserving_automorphisms(g: &Multigraph, depth: usize) -> BigUint {
    let types = cone_ids(g, stabilization_bound(g.num_states()));
    // (canonical id, automorphism count) of the coloured cone of each state
    let mut table: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut level: Vec<(usize, BigUint)> = (0..g.num_states())
        .map(|q| {
            let fresh = table.len();
            (*table.entry((types[q], Vec::new())).or_insert(fresh), BigUint::one())
        })
        .collect();
    for _ in 0..depth {
        let next: Vec<(usize, BigUint)> = (0..g.num_states())
            .map(|q| {
                let mut kids: Vec<&(usize, BigUint)> = g.out_edges(q).iter().map(|&e| &level[g.edge(e).dst]).collect();
                kids.sort_by_key(|k| k.0);
                let mut count = BigUint::one();
                let mut i = 0;
                while i < kids.len() {
                    let mut j = i;
                    while j < kids.len() && kids[j].0 == kids[i].0 {
                        count *= &kids[j].1;
                        j += 1;
                    }
                    count *= factorial((j - i) as u32);
                    i = j;
                }
                let key = (types[q], kids.iter().map(|k| k.0).collect());
                let fresh = table.len();
                (*table.entry(key).or_insert(fresh), count)
            })
            .collect();
        level = next;
    }
    level[g.root()].1.clone()
}
