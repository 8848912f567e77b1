//! Geometric minimization of a labelled automaton and the action of
//! automorphisms of the minimal automaton on the language of the original.
//!
//! The covering `P` onto the minimal quotient induces a bijection between
//! accepted words. Each quotient edge `e'` becomes a letter (a *fiber*)
//! standing for the set of original edges mapped onto `e'`.

use std::collections::BTreeMap;

use crate::automorphism::{GeneralPortrait, MinimalDfa, Portrait};
use crate::covering::GraphMorphism;
use crate::error::{Error, Result};
use crate::graph::{Dfa, Word};
use crate::minimization::{minimal_quotient, Partition};

/// The fiber alphabet. Letter `i` is `letters[i]`, which is also letter `i`
/// of the quotient automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAlphabet {
    letters: Vec<String>,
    /// Fiber letter of every original edge, indexed by edge.
    fiber_of: Vec<usize>,
    /// Original edges of every fiber, sorted by edge id.
    members: Vec<Vec<usize>>,
}

impl QuotientAlphabet {
    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn fiber_of(&self, edge: usize) -> usize {
        self.fiber_of[edge]
    }

    pub fn members(&self, fiber: usize) -> &[usize] {
        &self.members[fiber]
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct MinimizedLabelled {
    original: Dfa,
    quotient: MinimalDfa,
    covering: GraphMorphism,
    classes: Partition,
    qalpha: QuotientAlphabet,
}

/// The three intermediate words of [`MinimizedLabelled::act_trace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActTrace {
    pub pushed: Word,
    pub image: Word,
    pub lifted: Word,
}

/// Builds the minimal quotient of a connected automaton and labels each
/// quotient edge by its fiber. Fibers of edges leaving the root class are
/// named `a1, a2, ...`; all others `b1, b2, ...`, both in quotient edge order.
pub fn geometric_minimization(dfa: &Dfa) -> Result<MinimizedLabelled> {
    let res = minimal_quotient(dfa.graph())?;
    let quotient = res.quotient;
    let root = quotient.root();
    let (mut na, mut nb) = (0, 0);
    let names: Vec<String> = quotient
        .edges()
        .iter()
        .map(|e| {
            if e.src == root {
                na += 1;
                format!("a{na}")
            } else {
                nb += 1;
                format!("b{nb}")
            }
        })
        .collect();
    let qdfa = Dfa::new(quotient, names.clone(), &names).expect("fiber names are distinct");
    let quotient_dfa = MinimalDfa::new(qdfa).expect("quotient is minimal");

    let g = dfa.graph();
    let fiber_of: Vec<usize> = (0..g.num_edges())
        .map(|e| quotient_dfa.label(res.projection.map_edge(e)))
        .collect();
    let mut members = vec![Vec::new(); quotient_dfa.alphabet().len()];
    for (e, &f) in fiber_of.iter().enumerate() {
        members[f].push(e);
    }
    for m in &mut members {
        m.sort_by(|&a, &b| g.edge(a).id.cmp(&g.edge(b).id));
    }
    let qalpha = QuotientAlphabet {
        letters: quotient_dfa.alphabet().to_vec(),
        fiber_of,
        members,
    };
    Ok(MinimizedLabelled {
        original: dfa.clone(),
        quotient: quotient_dfa,
        covering: res.projection,
        classes: res.classes,
        qalpha,
    })
}

impl MinimizedLabelled {
    pub fn original(&self) -> &Dfa {
        &self.original
    }

    pub fn quotient_dfa(&self) -> &MinimalDfa {
        &self.quotient
    }

    pub fn covering(&self) -> &GraphMorphism {
        &self.covering
    }

    pub fn classes(&self) -> &Partition {
        &self.classes
    }

    pub fn qalpha(&self) -> &QuotientAlphabet {
        &self.qalpha
    }

    /// Members of a fiber as `(src, label, dst)` triples of names.
    pub fn fiber_members(&self, fiber: usize) -> Vec<(String, String, String)> {
        let g = self.original.graph();
        self.qalpha.members[fiber]
            .iter()
            .map(|&e| {
                let edge = g.edge(e);
                (
                    g.state_name(edge.src).to_string(),
                    self.original.letter(self.original.label(e)).to_string(),
                    g.state_name(edge.dst).to_string(),
                )
            })
            .collect()
    }

    /// Pushes an accepted word of the original down to the quotient.
    pub fn push_word(&self, w: &Word) -> Result<Word> {
        let path = self
            .original
            .path_edges(w)?
            .ok_or_else(|| Error::WordNotAccepted(self.original.format_word(w)))?;
        Ok(Word::from(path.into_iter().map(|e| self.qalpha.fiber_of[e]).collect::<Vec<_>>()))
    }

    /// Lifts an accepted word of the quotient to the original, starting at
    /// the original root.
    pub fn lift_word(&self, w: &Word) -> Result<Word> {
        if !self.quotient.accepts(w)? {
            return Err(Error::WordNotAccepted(self.quotient.format_word(w)));
        }
        let g = self.original.graph();
        let mut q = g.root();
        let mut out = Word::empty();
        for &f in w.letters() {
            let e = self.qalpha.members[f]
                .iter()
                .copied()
                .find(|&e| g.edge(e).src == q)
                .expect("every fiber has a member at each state of its source class");
            out.push(self.original.label(e));
            q = g.edge(e).dst;
        }
        Ok(out)
    }

    fn check_base(&self, g: &Portrait) -> Result<()> {
        if g.base().same_as(&self.quotient) {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    /// `P⁻¹(g(P(w)))` together with the intermediate words.
    pub fn act_trace(&self, g: &Portrait, w: &Word) -> Result<ActTrace> {
        self.check_base(g)?;
        let pushed = self.push_word(w)?;
        let image = g.act_word(&pushed)?;
        let lifted = self.lift_word(&image)?;
        Ok(ActTrace { pushed, image, lifted })
    }

    /// The action of a portrait over the quotient on the original language.
    pub fn act_on_original(&self, g: &Portrait, w: &Word) -> Result<Word> {
        Ok(self.act_trace(g, w)?.lifted)
    }

    /// The portrait over the original automaton of the conjugated action,
    /// recorded at every vertex of length below `depth`. Identity local maps
    /// are omitted.
    pub fn pull_back_portrait(&self, g: &Portrait, depth: usize) -> Result<GeneralPortrait> {
        self.check_base(g)?;
        let mut entries = Vec::new();
        for n in 0..depth {
            for (v, q) in self.original.level_with_states(n) {
                let mut map = BTreeMap::new();
                for a in self.original.out_letters(q) {
                    let img = self.act_on_original(g, &v.child(a))?;
                    map.insert(a, *img.letters().last().expect("non-empty image"));
                }
                if map.iter().any(|(a, b)| a != b) {
                    entries.push((v, map));
                }
            }
        }
        GeneralPortrait::new(self.original.clone(), entries)
    }
}
