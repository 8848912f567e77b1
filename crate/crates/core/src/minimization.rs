//! Geometric Myhill–Nerode theory: cone equivalence of states, the geometric
//! Moore refinement, and the minimal covering quotient with an explicit
//! covering onto it. Classical labelled minimization is included for
//! comparison.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::One;

use crate::covering::GraphMorphism;
use crate::error::{Error, Result};
use crate::graph::{Dfa, Multigraph};

/// A partition of the states of a graph. Blocks are sorted internally and
/// ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds the partition whose blocks are the fibres of `class`.
    pub fn from_classes(class: &[usize]) -> Self {
        let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (q, &c) in class.iter().enumerate() {
            by_label.entry(c).or_default().push(q);
        }
        let mut blocks: Vec<Vec<usize>> = by_label.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        Partition { blocks }
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|q| vec![q]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn num_elements(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Block index of every element.
    pub fn class_map(&self) -> Vec<usize> {
        let mut class = vec![0; self.num_elements()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &q in b {
                class[q] = i;
            }
        }
        class
    }

    /// True if every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let class = coarser.class_map();
        self.blocks.iter().all(|b| b.iter().all(|&q| class[q] == class[b[0]]))
    }

    /// Blocks rendered with state names.
    pub fn named(&self, g: &Multigraph) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&q| g.state_name(q).to_string()).collect())
            .collect()
    }
}

/// One refinement round: states stay together iff they were together and
/// send the same number of out-edges into every current block.
fn refine_by_counts(g: &Multigraph, class: &[usize]) -> Vec<usize> {
    let mut ids: HashMap<(usize, Vec<(usize, usize)>), usize> = HashMap::new();
    let mut next = Vec::with_capacity(class.len());
    for q in 0..g.num_states() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &e in g.out_edges(q) {
            *counts.entry(class[g.edge(e).dst]).or_default() += 1;
        }
        let key = (class[q], counts.into_iter().collect::<Vec<_>>());
        let fresh = ids.len();
        next.push(*ids.entry(key).or_insert(fresh));
    }
    next
}

fn count_classes(class: &[usize]) -> usize {
    let mut seen: Vec<usize> = class.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// The partition of states by `≡_d`: isomorphism of the depth-`d` cones.
pub fn depth_partition(g: &Multigraph, d: usize) -> Partition {
    let mut class = vec![0; g.num_states()];
    for _ in 0..d {
        let next = refine_by_counts(g, &class);
        let stable = count_classes(&next) == count_classes(&class);
        class = next;
        if stable {
            break;
        }
    }
    Partition::from_classes(&class)
}

/// Decides `q1 ≡_d q2`: whether the depth-`d` cone trees at the two states
/// are isomorphic as unlabelled rooted trees.
pub fn cone_equivalent(g: &Multigraph, q1: usize, q2: usize, d: usize) -> Result<bool> {
    for q in [q1, q2] {
        if q >= g.num_states() {
            return Err(Error::UnknownState(format!("#{q}")));
        }
    }
    let class = depth_partition(g, d).class_map();
    Ok(class[q1] == class[q2])
}

/// The depth bound after which cone equivalence can no longer change.
pub fn stabilization_bound(num_states: usize) -> usize {
    (num_states + 1) * (num_states + 1)
}

/// The geometric Moore algorithm: refines the one-block partition by
/// out-edge counts into blocks until it is stable. The result is the
/// geometric Nerode partition (isomorphism of full cones).
pub fn geometric_moore(g: &Multigraph) -> Result<Partition> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(moore_rounds(g).0)
}

/// Runs the refinement to stability and reports the number of rounds used.
pub(crate) fn moore_rounds(g: &Multigraph) -> (Partition, usize) {
    let cap = stabilization_bound(g.num_states());
    let mut class = vec![0; g.num_states()];
    let mut rounds = 0;
    loop {
        assert!(rounds < cap, "geometric Moore refinement did not stabilize within (|Q|+1)^2 rounds");
        let next = refine_by_counts(g, &class);
        rounds += 1;
        let stable = count_classes(&next) == count_classes(&class);
        class = next;
        if stable {
            break;
        }
    }
    (Partition::from_classes(&class), rounds)
}

/// The minimal covering quotient of a connected graph together with the
/// covering onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizationResult {
    pub quotient: Multigraph,
    pub projection: GraphMorphism,
    pub classes: Partition,
    /// States of the input dropped because they were unreachable from the
    /// root (only ever non-empty for [`minimize_reachable`]).
    pub dropped_unreachable: Vec<String>,
}

/// Name of the quotient state for a block of states.
pub fn class_name(g: &Multigraph, block: &[usize]) -> String {
    block.iter().map(|&q| g.state_name(q)).collect::<Vec<_>>().join("+")
}

/// Builds the minimal covering quotient of a connected graph.
///
/// Between classes `C` and `D` there are as many quotient edges as any
/// member of `C` has out-edges into `D`. Edge `k` of that bundle is named
/// `C->D#k`. The projection matches the out-edges of each state `q` into
/// `D`, sorted by edge id, with the bundle in index order.
pub fn minimal_quotient(g: &Multigraph) -> Result<MinimizationResult> {
    let classes = geometric_moore(g)?;
    let class = classes.class_map();
    let names: Vec<String> = classes.blocks().iter().map(|b| class_name(g, b)).collect();

    let mut bundles: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut qedges = Vec::new();
    for (c, block) in classes.blocks().iter().enumerate() {
        let rep = block[0];
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &e in g.out_edges(rep) {
            *counts.entry(class[g.edge(e).dst]).or_default() += 1;
        }
        for (d, n) in counts {
            for k in 0..n {
                bundles.entry((c, d)).or_default().push(qedges.len());
                qedges.push((format!("{}->{}#{k}", names[c], names[d]), c, d));
            }
        }
    }

    let quotient = Multigraph::new(
        names.iter().cloned(),
        &names[class[g.root()]],
        qedges
            .iter()
            .map(|(id, c, d)| (id.clone(), names[*c].clone(), names[*d].clone())),
    )
    .expect("quotient class names are distinct");
    let class_to_state: Vec<usize> = names
        .iter()
        .map(|n| quotient.state_index(n).expect("class present"))
        .collect();
    // quotient edge order is the construction order
    debug_assert!(qedges.iter().enumerate().all(|(i, (id, _, _))| quotient.edge(i).id == *id));

    let vertex_map: Vec<usize> = (0..g.num_states()).map(|q| class_to_state[class[q]]).collect();
    let mut edge_map = vec![usize::MAX; g.num_edges()];
    for q in 0..g.num_states() {
        let mut by_target: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &e in g.out_edges(q) {
            by_target.entry(class[g.edge(e).dst]).or_default().push(e);
        }
        for (d, mut es) in by_target {
            es.sort_by(|&a, &b| g.edge(a).id.cmp(&g.edge(b).id));
            let bundle = &bundles[&(class[q], d)];
            assert_eq!(bundle.len(), es.len(), "equivalent states must have equal bundle sizes");
            for (e, &qe) in es.into_iter().zip(bundle) {
                edge_map[e] = qe;
            }
        }
    }
    let projection = GraphMorphism::new(g.clone(), quotient.clone(), vertex_map, edge_map);
    Ok(MinimizationResult {
        quotient,
        projection,
        classes,
        dropped_unreachable: Vec::new(),
    })
}

/// Restricts to the states reachable from the root, then minimizes. The
/// dropped states are recorded in the result.
pub fn minimize_reachable(g: &Multigraph) -> MinimizationResult {
    let seen = g.reachable_from(g.root());
    let dropped: Vec<String> = (0..g.num_states())
        .filter(|&q| !seen[q])
        .map(|q| g.state_name(q).to_string())
        .collect();
    let reduced = if dropped.is_empty() {
        g.clone()
    } else {
        g.reachable_closure(g.root())
    };
    let mut res = minimal_quotient(&reduced).expect("reachable closure is connected");
    res.dropped_unreachable = dropped;
    res
}

/// A connected graph is geometrically minimal iff its Nerode partition is
/// discrete.
pub fn is_minimal(g: &Multigraph) -> Result<bool> {
    Ok(geometric_moore(g)?.is_discrete())
}

/// The classical partition of states by language equivalence, seeded by the
/// sets of defined letters.
pub fn classical_partition(dfa: &Dfa) -> Result<Partition> {
    let g = dfa.graph();
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.num_states();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut class: Vec<usize> = (0..n)
        .map(|q| {
            let fresh = ids.len();
            *ids.entry(dfa.out_letters(q)).or_insert(fresh)
        })
        .collect();
    loop {
        let mut ids: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|q| {
                let sig = (0..dfa.alphabet().len())
                    .map(|a| dfa.transition(q, a).map(|t| class[t]))
                    .collect();
                let fresh = ids.len();
                *ids.entry((class[q], sig)).or_insert(fresh)
            })
            .collect();
        let stable = count_classes(&next) == count_classes(&class);
        class = next;
        if stable {
            break;
        }
    }
    Ok(Partition::from_classes(&class))
}

/// Classical labelled minimization. States of the result are the language
/// equivalence classes, named like [`class_name`]; edges are named
/// `C-<letter>->D`.
pub fn classical_minimize(dfa: &Dfa) -> Result<Dfa> {
    let classes = classical_partition(dfa)?;
    let g = dfa.graph();
    let class = classes.class_map();
    let names: Vec<String> = classes.blocks().iter().map(|b| class_name(g, b)).collect();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (c, block) in classes.blocks().iter().enumerate() {
        let rep = block[0];
        for a in dfa.out_letters(rep) {
            let t = dfa.transition(rep, a).expect("letter is defined");
            let d = class[t];
            edges.push((format!("{}-{}->{}", names[c], dfa.letter(a), names[d]), names[c].clone(), names[d].clone()));
            labels.push(dfa.letter(a).to_string());
        }
    }
    let graph = Multigraph::new(names.iter().cloned(), &names[class[g.root()]], edges)?;
    Dfa::new(graph, dfa.alphabet().iter().cloned(), &labels)
}

/// Order of the group of graph automorphisms fixing every vertex: the
/// product over ordered state pairs of the factorial of the number of
/// parallel edges.
pub fn edge_automorphism_order(g: &Multigraph) -> BigUint {
    let mut order = BigUint::one();
    for q in 0..g.num_states() {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for &e in g.out_edges(q) {
            *counts.entry(g.edge(e).dst).or_default() += 1;
        }
        for n in counts.into_values() {
            order *= factorial(n);
        }
    }
    order
}

pub(crate) fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}
