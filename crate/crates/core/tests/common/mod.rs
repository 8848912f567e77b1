#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use conetype::automorphism::{MinimalDfa, PortraitDoc};
use conetype::graph::{canonical_labelling, Dfa, Multigraph};
use conetype::io::load_automaton;
use conetype::tree_canon::brute_force_nerode;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_c0de;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> Dfa {
    load_automaton(fixture_path(name)).unwrap()
}

pub fn ex7() -> Dfa {
    fixture("ex7.json")
}

pub fn ex7min() -> MinimalDfa {
    MinimalDfa::new(fixture("ex7min.json")).unwrap()
}

pub fn rose2() -> MinimalDfa {
    MinimalDfa::new(fixture("rose2.json")).unwrap()
}

pub fn sigma_doc() -> PortraitDoc {
    PortraitDoc::from_json(&std::fs::read_to_string(fixture_path("sigma.json")).unwrap()).unwrap()
}

/// Fiber letter -> the letter used for it in the worked example.
pub fn fiber_names() -> BTreeMap<String, String> {
    serde_json::from_str(&std::fs::read_to_string(fixture_path("ex7_fiber_names.json")).unwrap()).unwrap()
}

/// Renames a space-separated fiber word with the example's names.
pub fn rename(word: &str) -> String {
    let names = fiber_names();
    word.split_whitespace().map(|l| names[l].as_str()).collect()
}

/// r has two loops (a, b) and an edge c to s; s goes back to r by a.
pub fn ternary() -> MinimalDfa {
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
    MinimalDfa::new(Dfa::new(g, ["a", "b", "c"], &["a".into(), "b".into(), "c".into(), "a".into()]).unwrap()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random connected multigraph with at most `max_states` states and at
/// most `max_parallel` parallel edges between any ordered pair of states.
/// State `q0` is the root; a random spanning arborescence keeps it connected.
pub fn random_graph(rng: &mut impl Rng, max_states: usize, max_parallel: usize) -> Multigraph {
    let n = rng.random_range(1..=max_states);
    let mut mult = vec![vec![0usize; n]; n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        mult[u][v] = 1;
    }
    let density: f64 = rng.random_range(0.1..0.5);
    for row in mult.iter_mut() {
        for m in row.iter_mut() {
            if rng.random_bool(density) {
                *m = (*m + rng.random_range(1..=max_parallel)).min(max_parallel);
            }
        }
    }
    let states: Vec<String> = (0..n).map(|q| format!("q{q}")).collect();
    let mut edges = Vec::new();
    for (u, row) in mult.iter().enumerate() {
        for (v, &m) in row.iter().enumerate() {
            for _ in 0..m {
                edges.push((format!("e{:03}", edges.len()), states[u].clone(), states[v].clone()));
            }
        }
    }
    Multigraph::new(states.clone(), "q0", edges).unwrap()
}

/// The test corpus shared by several checks. The seed is printed so that a
/// failure can be replayed.
pub fn corpus(seed: u64, count: usize) -> Vec<Multigraph> {
    eprintln!("corpus seed = {seed:#x}, size = {count}");
    let mut r = rng(seed);
    (0..count).map(|_| random_graph(&mut r, 7, 3)).collect()
}

pub fn random_dfa(rng: &mut impl Rng) -> Dfa {
    canonical_labelling(&random_graph(rng, 6, 3))
}

/// A random finite covering of `g`: `k` sheets, each edge permuting the
/// sheets, restricted to what is reachable from the root on sheet 0.
pub fn random_cover(rng: &mut impl Rng, g: &Multigraph, k: usize) -> Multigraph {
    use rand::seq::SliceRandom;
    let perms: Vec<Vec<usize>> = (0..g.num_edges())
        .map(|_| {
            let mut p: Vec<usize> = (0..k).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let name = |q: usize, i: usize| format!("{}.{i}", g.state_name(q));
    let states: Vec<String> = (0..g.num_states()).flat_map(|q| (0..k).map(move |i| (q, i))).map(|(q, i)| name(q, i)).collect();
    let mut edges = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        for (i, &j) in perms[e].iter().enumerate() {
            edges.push((format!("{}.{i}", edge.id), name(edge.src, i), name(edge.dst, j)));
        }
    }
    let full = Multigraph::new(states, &name(g.root(), 0), edges).unwrap();
    full.reachable_closure(full.root())
}

/// Isomorphism of two geometrically minimal graphs, decided by joining them
/// under a fresh root and comparing cone classes.
pub fn minimal_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    if a.num_states() != b.num_states() || a.num_edges() != b.num_edges() {
        return false;
    }
    let tag = |p: &str, s: &str| format!("{p}:{s}");
    let mut states = vec!["*".to_string()];
    states.extend(a.states().iter().map(|s| tag("A", s)));
    states.extend(b.states().iter().map(|s| tag("B", s)));
    let mut edges = vec![
        ("*a".to_string(), "*".to_string(), tag("A", a.state_name(a.root()))),
        ("*b".to_string(), "*".to_string(), tag("B", b.state_name(b.root()))),
    ];
    for (p, g) in [("A", a), ("B", b)] {
        for e in g.edges() {
            edges.push((tag(p, &e.id), tag(p, g.state_name(e.src)), tag(p, g.state_name(e.dst))));
        }
    }
    let u = Multigraph::new(states, "*", edges).unwrap();
    let class = brute_force_nerode(&u).class_map();
    let ia = |q: usize| u.state_index(&tag("A", a.state_name(q))).unwrap();
    let ib = |q: usize| u.state_index(&tag("B", b.state_name(q))).unwrap();
    // pair every state of `a` with the unique state of `b` in its class
    let mut pair = vec![usize::MAX; a.num_states()];
    for qa in 0..a.num_states() {
        let hits: Vec<usize> = (0..b.num_states()).filter(|&qb| class[ib(qb)] == class[ia(qa)]).collect();
        if hits.len() != 1 {
            return false;
        }
        pair[qa] = hits[0];
    }
    pair[a.root()] == b.root()
        && (0..a.num_states())
            .all(|x| (0..a.num_states()).all(|y| a.multiplicity(x, y) == b.multiplicity(pair[x], pair[y])))
}

/// Graph automorphisms of a rooted multigraph by exhaustive search over
/// vertex permutations fixing the root; each admissible vertex permutation
/// contributes the product of factorials of the edge multiplicities.
pub fn brute_force_graph_automorphisms(g: &Multigraph) -> num_bigint::BigUint {
    use itertools::Itertools;
    let n = g.num_states();
    let mut total = num_bigint::BigUint::from(0u32);
    for perm in (0..n).permutations(n) {
        if perm[g.root()] != g.root() {
            continue;
        }
        let ok = (0..n).all(|x| (0..n).all(|y| g.multiplicity(x, y) == g.multiplicity(perm[x], perm[y])));
        if ok {
            let mut c = num_bigint::BigUint::from(1u32);
            for x in 0..n {
                for y in 0..n {
                    for k in 1..=g.multiplicity(x, y) {
                        c *= k as u32;
                    }
                }
            }
            total += c;
        }
    }
    total
}

/// A random admissible finite-support portrait with at most `support`
/// non-trivial entries at vertices of length below `max_depth`.
pub fn random_finite_portrait(
    r: &mut impl Rng,
    base: &MinimalDfa,
    support: usize,
    max_depth: usize,
) -> conetype::automorphism::Portrait {
    use conetype::automorphism::{admissible_perms, Portrait};
    let mut entries = BTreeMap::new();
    for _ in 0..support {
        let n = r.random_range(0..max_depth);
        let level = base.level_with_states(n);
        let (v, q) = level[r.random_range(0..level.len())].clone();
        let elems = admissible_perms(base, q).unwrap().elements();
        entries.insert(v, elems[r.random_range(0..elems.len())].clone());
    }
    Portrait::finite(base, entries).unwrap()
}

/// A random portrait mixing every stored form.
pub fn random_portrait(r: &mut impl Rng, base: &MinimalDfa, depth: u32) -> conetype::automorphism::Portrait {
    use conetype::automorphism::{enumerate_generators, Portrait};
    if depth == 0 {
        return match r.random_range(0..3) {
            0 => random_finite_portrait(r, base, 3, 4),
            1 => {
                let gens = enumerate_generators(base, 2).unwrap();
                if gens.is_empty() {
                    Portrait::identity(base)
                } else {
                    gens[r.random_range(0..gens.len())].portrait(base).unwrap()
                }
            }
            _ => Portrait::identity(base),
        };
    }
    let g = random_portrait(r, base, depth - 1);
    match r.random_range(0..5) {
        0 => g.compose(&random_portrait(r, base, depth - 1)).unwrap(),
        1 => g.invert(),
        2 => {
            let n = r.random_range(0..3);
            let level = base.level(n);
            g.retract(&level[r.random_range(0..level.len())]).unwrap()
        }
        3 => g.retract_level(r.random_range(0..3)),
        _ => g,
    }
}

/// A random accepted word of length `n`, if the level is non-empty.
pub fn random_word(r: &mut impl Rng, dfa: &Dfa, n: usize) -> Option<conetype::graph::Word> {
    let mut w = conetype::graph::Word::empty();
    let mut q = dfa.root();
    for _ in 0..n {
        let letters = dfa.out_letters(q);
        if letters.is_empty() {
            return None;
        }
        let a = letters[r.random_range(0..letters.len())];
        w.push(a);
        q = dfa.transition(q, a).unwrap();
    }
    Some(w)
}
