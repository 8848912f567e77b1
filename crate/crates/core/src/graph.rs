//! Rooted directed multigraphs, deterministic automata viewed as labelled
//! multigraphs, and finite truncations of their path trees.
//!
//! States and letters are opaque strings. Both are kept in lexicographic
//! order, and the internal indices follow that order, so comparing indices
//! is the same as comparing names. Edges keep the order in which they were
//! supplied.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// One directed edge of a [`Multigraph`], with endpoints given as state indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite rooted directed multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    states: Vec<String>,
    root: usize,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    // edge indices sorted by id, for lookup
    by_id: Vec<usize>,
}

impl Multigraph {
    /// Builds a multigraph from state names, a root name and `(id, src, dst)`
    /// triples.
    pub fn new<S, I, E>(states: I, root: &str, edges: E) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = S>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut names: Vec<String> = states.into_iter().map(Into::into).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateState(w[0].clone()));
        }
        if names.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let lookup = |name: &str| {
            names
                .binary_search_by(|s| s.as_str().cmp(name))
                .map_err(|_| Error::UnknownState(name.to_string()))
        };
        let root = lookup(root)?;
        let mut list = Vec::new();
        for (id, src, dst) in edges {
            let src = lookup(&src)?;
            let dst = lookup(&dst)?;
            list.push(Edge { id, src, dst });
        }
        Self::from_parts(names, root, list)
    }

    /// Builds a multigraph from already-indexed parts. `states` must be
    /// sorted and duplicate free.
    pub(crate) fn from_parts(states: Vec<String>, root: usize, edges: Vec<Edge>) -> Result<Self> {
        debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
        let n = states.len();
        let mut out = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push(i);
            incoming[e.dst].push(i);
        }
        let mut by_id: Vec<usize> = (0..edges.len()).collect();
        by_id.sort_by(|&a, &b| edges[a].id.cmp(&edges[b].id));
        if let Some(w) = by_id.windows(2).find(|w| edges[w[0]].id == edges[w[1]].id) {
            return Err(Error::DuplicateEdgeId(edges[w[0]].id.clone()));
        }
        Ok(Multigraph {
            states,
            root,
            edges,
            out,
            incoming,
            by_id,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.states
            .binary_search_by(|s| s.as_str().cmp(name))
            .map_err(|_| Error::UnknownState(name.to_string()))
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.by_id
            .binary_search_by(|&i| self.edges[i].id.as_str().cmp(id))
            .map(|pos| self.by_id[pos])
            .map_err(|_| Error::UnknownEdge(id.to_string()))
    }

    /// Outgoing edges of `q` in edge-sequence order.
    pub fn out_edges(&self, q: usize) -> &[usize] {
        &self.out[q]
    }

    pub fn in_edges(&self, q: usize) -> &[usize] {
        &self.incoming[q]
    }

    pub fn out_degree(&self, q: usize) -> usize {
        self.out[q].len()
    }

    /// Marks every state reachable from `q` by a directed path.
    pub fn reachable_from(&self, q: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([q]);
        seen[q] = true;
        while let Some(p) = queue.pop_front() {
            for &e in &self.out[p] {
                let t = self.edges[e].dst;
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// True when every state is reachable from the root.
    pub fn is_connected(&self) -> bool {
        self.reachable_from(self.root).into_iter().all(|b| b)
    }

    /// The sub-multigraph induced on the states reachable from `q`, rooted at
    /// `q`. Edge ids and relative order are kept.
    pub fn reachable_closure(&self, q: usize) -> Multigraph {
        let (g, _, _) = self.closure_with_maps(q);
        g
    }

    /// Like [`reachable_closure`](Self::reachable_closure), also returning the
    /// kept original state and edge indices (in new-index order).
    pub(crate) fn closure_with_maps(&self, q: usize) -> (Multigraph, Vec<usize>, Vec<usize>) {
        let seen = self.reachable_from(q);
        let kept_states: Vec<usize> = (0..self.num_states()).filter(|&s| seen[s]).collect();
        let mut new_index = vec![usize::MAX; self.num_states()];
        for (i, &s) in kept_states.iter().enumerate() {
            new_index[s] = i;
        }
        let kept_edges: Vec<usize> = (0..self.num_edges()).filter(|&e| seen[self.edges[e].src]).collect();
        let edges = kept_edges
            .iter()
            .map(|&e| {
                let old = &self.edges[e];
                Edge {
                    id: old.id.clone(),
                    src: new_index[old.src],
                    dst: new_index[old.dst],
                }
            })
            .collect();
        let states = kept_states.iter().map(|&s| self.states[s].clone()).collect();
        let g = Multigraph::from_parts(states, new_index[q], edges).expect("closure of a valid graph");
        (g, kept_states, kept_edges)
    }

    /// Number of parallel edges from `a` to `b`.
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.out[a].iter().filter(|&&e| self.edges[e].dst == b).count()
    }
}

/// A word over some alphabet, stored as letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn child(&self, letter: usize) -> Word {
        let mut w = self.clone();
        w.0.push(letter);
        w
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A deterministic automaton: a multigraph with an admissible edge labelling.
/// Every state is accepting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    graph: Multigraph,
    alphabet: Vec<String>,
    labels: Vec<usize>,
    // state x letter -> edge index
    delta: Vec<Vec<Option<usize>>>,
}

impl Dfa {
    /// Attaches labels (aligned with `graph.edges()`) to a multigraph,
    /// checking that they come from `alphabet` and that each state's
    /// outgoing labels are pairwise distinct.
    pub fn new<S: Into<String>>(graph: Multigraph, alphabet: impl IntoIterator<Item = S>, labels: &[String]) -> Result<Self> {
        let mut alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        alphabet.sort();
        if let Some(w) = alphabet.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLetter(w[0].clone()));
        }
        if labels.len() != graph.num_edges() {
            return Err(Error::Format("label count does not match edge count".into()));
        }
        let mut idx = Vec::with_capacity(labels.len());
        for l in labels {
            let i = alphabet
                .binary_search(l)
                .map_err(|_| Error::LetterNotInAlphabet(l.clone()))?;
            idx.push(i);
        }
        Self::from_parts(graph, alphabet, idx)
    }

    pub(crate) fn from_parts(graph: Multigraph, alphabet: Vec<String>, labels: Vec<usize>) -> Result<Self> {
        let mut delta = vec![vec![None; alphabet.len()]; graph.num_states()];
        for (e, edge) in graph.edges().iter().enumerate() {
            let slot = &mut delta[edge.src][labels[e]];
            if slot.is_some() {
                return Err(Error::DuplicateOutLabel {
                    state: graph.state_name(edge.src).to_string(),
                    letter: alphabet[labels[e]].clone(),
                });
            }
            *slot = Some(e);
        }
        Ok(Dfa {
            graph,
            alphabet,
            labels,
            delta,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter(&self, a: usize) -> &str {
        &self.alphabet[a]
    }

    pub fn letter_index(&self, name: &str) -> Result<usize> {
        self.alphabet
            .binary_search_by(|s| s.as_str().cmp(name))
            .map_err(|_| Error::LetterNotInAlphabet(name.to_string()))
    }

    pub fn root(&self) -> usize {
        self.graph.root()
    }

    pub fn label(&self, e: usize) -> usize {
        self.labels[e]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// The edge leaving `q` labelled `a`, if any.
    pub fn transition_edge(&self, q: usize, a: usize) -> Option<usize> {
        self.delta[q].get(a).copied().flatten()
    }

    /// The transition function δ(q, a).
    pub fn transition(&self, q: usize, a: usize) -> Option<usize> {
        self.transition_edge(q, a).map(|e| self.graph.edge(e).dst)
    }

    /// Letters labelling the out-edges of `q`, in alphabet order.
    pub fn out_letters(&self, q: usize) -> Vec<usize> {
        (0..self.alphabet.len()).filter(|&a| self.delta[q][a].is_some()).collect()
    }

    fn check_letters(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&a| a >= self.alphabet.len()) {
            Some(a) => Err(Error::LetterNotInAlphabet(format!("#{a}"))),
            None => Ok(()),
        }
    }

    /// Runs the automaton from `from` and returns the reached state.
    pub fn run_from(&self, from: usize, w: &Word) -> Result<Option<usize>> {
        self.check_letters(w)?;
        let mut q = from;
        for &a in w.letters() {
            match self.transition(q, a) {
                Some(t) => q = t,
                None => return Ok(None),
            }
        }
        Ok(Some(q))
    }

    /// The state reached from the root after reading `w`, if `w` is accepted.
    pub fn run(&self, w: &Word) -> Result<Option<usize>> {
        self.run_from(self.root(), w)
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        Ok(self.run(w)?.is_some())
    }

    /// State reached by an accepted word, or `WordNotAccepted`.
    pub fn state_of(&self, w: &Word) -> Result<usize> {
        self.run(w)?
            .ok_or_else(|| Error::WordNotAccepted(self.format_word(w)))
    }

    /// The edge path read by `w` from the root, if `w` is accepted.
    pub fn path_edges(&self, w: &Word) -> Result<Option<Vec<usize>>> {
        self.check_letters(w)?;
        let mut q = self.root();
        let mut path = Vec::with_capacity(w.len());
        for &a in w.letters() {
            match self.transition_edge(q, a) {
                Some(e) => {
                    path.push(e);
                    q = self.graph.edge(e).dst;
                }
                None => return Ok(None),
            }
        }
        Ok(Some(path))
    }

    /// All accepted words of length exactly `n`, in lexicographic order.
    ///
    /// The output grows exponentially in general; callers bound `n`.
    pub fn level(&self, n: usize) -> Vec<Word> {
        self.level_with_states(n).into_iter().map(|(w, _)| w).collect()
    }

    /// Like [`level`](Self::level), refusing to produce more than `cap` words.
    pub fn level_capped(&self, n: usize, cap: usize) -> Result<Vec<Word>> {
        let counts = self.level_counts(n);
        let total = counts.iter().fold(0u128, |acc, &c| acc.saturating_add(c));
        if total > cap as u128 {
            return Err(Error::TooLarge(format!("level {n} has {total} words (cap {cap})")));
        }
        Ok(self.level(n))
    }

    /// Accepted words of length `n` together with the state each one reaches.
    pub fn level_with_states(&self, n: usize) -> Vec<(Word, usize)> {
        let mut current = vec![(Word::empty(), self.root())];
        for _ in 0..n {
            let mut next = Vec::new();
            for (w, q) in &current {
                for a in 0..self.alphabet.len() {
                    if let Some(t) = self.transition(*q, a) {
                        next.push((w.child(a), t));
                    }
                }
            }
            current = next;
        }
        current
    }

    /// Number of accepted words of length `n` ending in each state
    /// (saturating).
    pub fn level_counts(&self, n: usize) -> Vec<u128> {
        let g = &self.graph;
        let mut counts = vec![0u128; g.num_states()];
        counts[self.root()] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; g.num_states()];
            for e in g.edges() {
                next[e.dst] = next[e.dst].saturating_add(counts[e.src]);
            }
            counts = next;
        }
        counts
    }

    /// The sub-automaton on the states reachable from `q`, rooted at `q`.
    pub fn reachable_closure(&self, q: usize) -> Result<Dfa> {
        if q >= self.graph.num_states() {
            return Err(Error::UnknownState(format!("#{q}")));
        }
        let (g, _, kept_edges) = self.graph.closure_with_maps(q);
        let labels = kept_edges.iter().map(|&e| self.labels[e]).collect();
        Dfa::from_parts(g, self.alphabet.clone(), labels)
    }

    /// The ball of radius `d` around the root of the path tree.
    pub fn truncated_cover(&self, d: usize) -> TruncatedTree {
        let mut tree = TruncatedTree {
            depth: d,
            vertices: vec![Word::empty()],
            type_of: vec![self.root()],
            parent: vec![None],
            children: vec![Vec::new()],
        };
        let mut frontier = vec![0usize];
        for _ in 0..d {
            let mut next = Vec::new();
            for &v in &frontier {
                let q = tree.type_of[v];
                for a in 0..self.alphabet.len() {
                    if let Some(t) = self.transition(q, a) {
                        let id = tree.vertices.len();
                        tree.vertices.push(tree.vertices[v].child(a));
                        tree.type_of.push(t);
                        tree.parent.push(Some(v));
                        tree.children.push(Vec::new());
                        tree.children[v].push(id);
                        next.push(id);
                    }
                }
            }
            frontier = next;
        }
        tree
    }

    /// Renders a word with this automaton's letter names. Words over
    /// single-character alphabets are concatenated, others are
    /// space-separated.
    pub fn format_word(&self, w: &Word) -> String {
        let single = self.alphabet.iter().all(|l| l.chars().count() == 1);
        let parts = w.letters().iter().map(|&a| {
            self.alphabet
                .get(a)
                .map(String::as_str)
                .unwrap_or("?")
        });
        if single {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(" ")
        }
    }

    /// Parses a word. Whitespace or commas separate letters explicitly;
    /// otherwise the string is split greedily into the longest matching
    /// letters.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        if s.contains(|c: char| c.is_whitespace() || c == ',') {
            return s
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| self.letter_index(t))
                .collect::<Result<Vec<_>>>()
                .map(Word);
        }
        let mut rest = s;
        let mut letters = Vec::new();
        while !rest.is_empty() {
            let best = self
                .alphabet
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.is_empty() && rest.starts_with(l.as_str()))
                .max_by_key(|(_, l)| l.len());
            match best {
                Some((i, l)) => {
                    letters.push(i);
                    rest = &rest[l.len()..];
                }
                None => return Err(Error::LetterNotInAlphabet(rest.to_string())),
            }
        }
        Ok(Word(letters))
    }
}

/// Labels each state's k-th outgoing edge (in edge-sequence order) with the
/// letter `e<k>`.
pub fn canonical_labelling(g: &Multigraph) -> Dfa {
    let max_deg = (0..g.num_states()).map(|q| g.out_degree(q)).max().unwrap_or(0);
    let alphabet: Vec<String> = (0..max_deg).map(|k| format!("e{k}")).collect();
    let mut labels = vec![String::new(); g.num_edges()];
    for q in 0..g.num_states() {
        for (k, &e) in g.out_edges(q).iter().enumerate() {
            labels[e] = format!("e{k}");
        }
    }
    Dfa::new(g.clone(), alphabet, &labels).expect("canonical labelling is admissible")
}

/// Finite prefix-closed part of the path tree: all accepted words of length
/// at most `depth`, in breadth-first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedTree {
    pub depth: usize,
    pub vertices: Vec<Word>,
    /// The covering projection restricted to the truncation.
    pub type_of: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
}

impl TruncatedTree {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_depth(&self, v: usize) -> usize {
        self.vertices[v].len()
    }
}
