//! Morphisms of rooted multigraphs, the local criterion for coverings, and
//! unique path lifting.

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// A vertex map and an edge map between two multigraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    source: Multigraph,
    target: Multigraph,
    vertex_map: Vec<usize>,
    edge_map: Vec<usize>,
}

impl GraphMorphism {
    /// Stores the maps without checking them; see [`verify_morphism`].
    pub fn new(source: Multigraph, target: Multigraph, vertex_map: Vec<usize>, edge_map: Vec<usize>) -> Self {
        assert_eq!(vertex_map.len(), source.num_states(), "vertex map must be total");
        assert_eq!(edge_map.len(), source.num_edges(), "edge map must be total");
        GraphMorphism {
            source,
            target,
            vertex_map,
            edge_map,
        }
    }

    pub fn identity(g: &Multigraph) -> Self {
        GraphMorphism::new(g.clone(), g.clone(), (0..g.num_states()).collect(), (0..g.num_edges()).collect())
    }

    pub fn source(&self) -> &Multigraph {
        &self.source
    }

    pub fn target(&self) -> &Multigraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }

    pub fn map_vertex(&self, q: usize) -> usize {
        self.vertex_map[q]
    }

    pub fn map_edge(&self, e: usize) -> usize {
        self.edge_map[e]
    }
}

/// Checks that the root goes to the root and edges go to edges between the
/// images of their endpoints.
pub fn verify_morphism(m: &GraphMorphism) -> Result<()> {
    let (s, t) = (&m.source, &m.target);
    if m.vertex_map.iter().any(|&v| v >= t.num_states()) || m.edge_map.iter().any(|&e| e >= t.num_edges()) {
        return Err(Error::IncompleteMorphism("image index out of range".into()));
    }
    if m.vertex_map[s.root()] != t.root() {
        return Err(Error::RootNotPreserved);
    }
    for (i, e) in s.edges().iter().enumerate() {
        let img = t.edge(m.edge_map[i]);
        if img.src != m.vertex_map[e.src] || img.dst != m.vertex_map[e.dst] {
            return Err(Error::EdgeEndpointMismatch(e.id.clone()));
        }
    }
    Ok(())
}

/// Certifies a covering morphism: a morphism onto a connected graph whose
/// edge map is a bijection from the out-edges of each state `q` onto the
/// out-edges of its image.
pub fn verify_covering(m: &GraphMorphism) -> Result<()> {
    verify_morphism(m)?;
    let (s, t) = (&m.source, &m.target);
    if !t.is_connected() {
        return Err(Error::TargetNotConnected);
    }
    let mut hit = vec![false; t.num_edges()];
    for q in 0..s.num_states() {
        let down = m.vertex_map[q];
        for &e in s.out_edges(q) {
            let img = m.edge_map[e];
            if hit[img] {
                return Err(Error::NotLocallyInjective(s.state_name(q).to_string()));
            }
            hit[img] = true;
        }
        if s.out_degree(q) != t.out_degree(down) {
            return Err(Error::NotLocallySurjective(s.state_name(q).to_string()));
        }
        for &e in s.out_edges(q) {
            hit[m.edge_map[e]] = false;
        }
    }
    Ok(())
}

/// Lifts the target path `downstairs` to the unique source path starting at
/// `start`. The morphism is assumed to be a covering.
pub fn lift_path(m: &GraphMorphism, start: usize, downstairs: &[usize]) -> Result<Vec<usize>> {
    let (s, t) = (&m.source, &m.target);
    if start >= s.num_states() {
        return Err(Error::UnknownState(format!("#{start}")));
    }
    if let Some(&bad) = downstairs.iter().find(|&&e| e >= t.num_edges()) {
        return Err(Error::UnknownEdge(format!("#{bad}")));
    }
    if let Some(&first) = downstairs.first() {
        if t.edge(first).src != m.vertex_map[start] {
            return Err(Error::WrongStartVertex);
        }
    }
    if downstairs.windows(2).any(|w| t.edge(w[0]).dst != t.edge(w[1]).src) {
        return Err(Error::NotAPath);
    }
    let mut here = start;
    let mut lifted = Vec::with_capacity(downstairs.len());
    for &d in downstairs {
        let e = *s
            .out_edges(here)
            .iter()
            .find(|&&e| m.edge_map[e] == d)
            .ok_or_else(|| Error::NotLocallySurjective(s.state_name(here).to_string()))?;
        lifted.push(e);
        here = s.edge(e).dst;
    }
    Ok(lifted)
}

/// The composite `m2 ∘ m1`.
pub fn compose(m2: &GraphMorphism, m1: &GraphMorphism) -> Result<GraphMorphism> {
    if m1.target != m2.source {
        return Err(Error::DomainMismatch);
    }
    Ok(GraphMorphism::new(
        m1.source.clone(),
        m2.target.clone(),
        m1.vertex_map.iter().map(|&v| m2.vertex_map[v]).collect(),
        m1.edge_map.iter().map(|&e| m2.edge_map[e]).collect(),
    ))
}
