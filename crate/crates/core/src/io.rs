//! JSON documents for automata and graph morphisms.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::covering::GraphMorphism;
use crate::error::{Error, Result};
use crate::graph::{canonical_labelling, Dfa, Multigraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dst: String,
}

/// Serialized form of an automaton. With every `label` absent the document
/// describes a bare multigraph, and loading applies the canonical labelling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    pub states: Vec<String>,
    pub root: String,
    pub edges: Vec<EdgeDoc>,
}

impl AutomatonDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn graph(&self) -> Result<Multigraph> {
        Multigraph::new(
            self.states.iter().cloned(),
            &self.root,
            self.edges.iter().map(|e| (e.id.clone(), e.src.clone(), e.dst.clone())),
        )
    }

    /// Builds and validates the automaton.
    pub fn build(&self) -> Result<Dfa> {
        let graph = self.graph()?;
        let labelled = self.edges.iter().filter(|e| e.label.is_some()).count();
        if labelled == 0 && self.alphabet.is_none() {
            return Ok(canonical_labelling(&graph));
        }
        if let Some(e) = self.edges.iter().find(|e| e.label.is_none()) {
            return Err(Error::MissingLabel(e.id.clone()));
        }
        let labels: Vec<String> = self.edges.iter().map(|e| e.label.clone().unwrap()).collect();
        let alphabet = match &self.alphabet {
            Some(a) => a.clone(),
            None => {
                let mut a = labels.clone();
                a.sort();
                a.dedup();
                a
            }
        };
        Dfa::new(graph, alphabet, &labels)
    }

    pub fn from_dfa(dfa: &Dfa) -> Self {
        let g = dfa.graph();
        AutomatonDoc {
            alphabet: Some(dfa.alphabet().to_vec()),
            states: g.states().to_vec(),
            root: g.state_name(g.root()).to_string(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeDoc {
                    id: e.id.clone(),
                    src: g.state_name(e.src).to_string(),
                    label: Some(dfa.letter(dfa.label(i)).to_string()),
                    dst: g.state_name(e.dst).to_string(),
                })
                .collect(),
        }
    }

    pub fn from_graph(g: &Multigraph) -> Self {
        AutomatonDoc {
            alphabet: None,
            states: g.states().to_vec(),
            root: g.state_name(g.root()).to_string(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    src: g.state_name(e.src).to_string(),
                    label: None,
                    dst: g.state_name(e.dst).to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("automaton serializes")
    }
}

/// Checks all automaton invariants; succeeds iff the document describes a
/// valid automaton.
pub fn validate(doc: &AutomatonDoc) -> Result<()> {
    doc.build().map(|_| ())
}

pub fn load_automaton(path: impl AsRef<Path>) -> Result<Dfa> {
    AutomatonDoc::from_json(&read(path)?)?.build()
}

pub(crate) fn read(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Morphism between two separately supplied graphs, by state and edge names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
}

impl MorphismDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("morphism serializes")
    }

    pub fn from_morphism(m: &GraphMorphism) -> Self {
        let (s, t) = (m.source(), m.target());
        MorphismDoc {
            vertex_map: (0..s.num_states())
                .map(|q| (s.state_name(q).to_string(), t.state_name(m.vertex_map()[q]).to_string()))
                .collect(),
            edge_map: (0..s.num_edges())
                .map(|e| (s.edge(e).id.clone(), t.edge(m.edge_map()[e]).id.clone()))
                .collect(),
        }
    }

    /// Resolves names against the two graphs. Fails if a map is not total.
    pub fn resolve(&self, source: &Multigraph, target: &Multigraph) -> Result<GraphMorphism> {
        let mut vmap = Vec::with_capacity(source.num_states());
        for name in source.states() {
            let img = self
                .vertex_map
                .get(name)
                .ok_or_else(|| Error::IncompleteMorphism(format!("state {name} unmapped")))?;
            vmap.push(target.state_index(img)?);
        }
        let mut emap = Vec::with_capacity(source.num_edges());
        for e in source.edges() {
            let img = self
                .edge_map
                .get(&e.id)
                .ok_or_else(|| Error::IncompleteMorphism(format!("edge {} unmapped", e.id)))?;
            emap.push(target.edge_index(img)?);
        }
        Ok(GraphMorphism::new(source.clone(), target.clone(), vmap, emap))
    }
}
