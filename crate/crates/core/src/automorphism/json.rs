//! JSON form of portraits. Permutations are written as lists of cycles of
//! letter names; the identity is the empty list. Vertices are words written
//! as in [`Dfa::format_word`](crate::graph::Dfa::format_word).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{check_admissible, Form, GeneralPortrait, MinimalDfa, Portrait};
use crate::error::{Error, Result};
use crate::graph::Dfa;
use crate::perm::Permutation;

pub type CycleList = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub vertex: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<CycleList>,
    /// Explicit letter map, for portraits over non-minimal automata whose
    /// local maps are injections rather than permutations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PortraitDoc {
    Finite {
        entries: Vec<VertexEntry>,
    },
    Cone {
        base: String,
        assign: BTreeMap<String, CycleList>,
    },
    Product {
        factors: Vec<PortraitDoc>,
    },
    Retract {
        at: String,
        inner: Box<PortraitDoc>,
    },
    LevelRetract {
        level: usize,
        inner: Box<PortraitDoc>,
    },
    Inverse {
        inner: Box<PortraitDoc>,
    },
}

fn cycles_to_names(dfa: &Dfa, p: &Permutation) -> CycleList {
    p.cycles()
        .into_iter()
        .map(|c| c.into_iter().map(|a| dfa.letter(a).to_string()).collect())
        .collect()
}

fn names_to_perm(dfa: &Dfa, q: usize, cycles: &CycleList) -> Result<Permutation> {
    let cycles = cycles
        .iter()
        .map(|c| c.iter().map(|l| dfa.letter_index(l)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_cycles(&dfa.out_letters(q), &cycles).map_err(|e| Error::NotAdmissible {
        state: dfa.graph().state_name(q).to_string(),
        reason: e.to_string(),
    })
}

impl PortraitDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("portrait serializes")
    }

    fn to_form(&self, base: &MinimalDfa) -> Result<Form> {
        Ok(match self {
            PortraitDoc::Finite { entries } => {
                let mut map = BTreeMap::new();
                for entry in entries {
                    let v = base.parse_word(&entry.vertex)?;
                    let q = base.state_of(&v)?;
                    let perm = match (&entry.perm, &entry.map) {
                        (Some(cycles), None) => names_to_perm(base, q, cycles)?,
                        (None, Some(m)) => Permutation::from_pairs(
                            m.iter()
                                .map(|(a, b)| Ok((base.letter_index(a)?, base.letter_index(b)?)))
                                .collect::<Result<Vec<_>>>()?,
                        )?,
                        _ => return Err(Error::Format("entry needs exactly one of perm or map".into())),
                    };
                    check_admissible(base, q, &perm)?;
                    if !perm.is_identity() {
                        map.insert(v, perm);
                    }
                }
                Form::FiniteSupport(map)
            }
            PortraitDoc::Cone { base: at, assign } => {
                let at = base.parse_word(at)?;
                base.state_of(&at)?;
                let mut map = BTreeMap::new();
                for (state, cycles) in assign {
                    let q = base.graph().state_index(state)?;
                    let perm = names_to_perm(base, q, cycles)?;
                    check_admissible(base, q, &perm)?;
                    if !perm.is_identity() {
                        map.insert(q, perm);
                    }
                }
                Form::ConeUniform { at, assign: map }
            }
            PortraitDoc::Product { factors } => {
                Form::Product(factors.iter().map(|f| f.to_form(base)).collect::<Result<_>>()?)
            }
            PortraitDoc::Retract { at, inner } => Form::Retract {
                inner: Box::new(inner.to_form(base)?),
                at: base.parse_word(at)?,
            },
            PortraitDoc::LevelRetract { level, inner } => Form::LevelRetract {
                inner: Box::new(inner.to_form(base)?),
                level: *level,
            },
            PortraitDoc::Inverse { inner } => Form::Inverse(Box::new(inner.to_form(base)?)),
        })
    }

    /// Resolves the document against a minimal automaton.
    pub fn to_portrait(&self, base: &MinimalDfa) -> Result<Portrait> {
        Portrait::from_form(base, self.to_form(base)?)
    }

    fn from_form(dfa: &Dfa, form: &Form) -> Self {
        match form {
            Form::FiniteSupport(map) => PortraitDoc::Finite {
                entries: map
                    .iter()
                    .map(|(v, p)| VertexEntry {
                        vertex: dfa.format_word(v),
                        perm: Some(cycles_to_names(dfa, p)),
                        map: None,
                    })
                    .collect(),
            },
            Form::ConeUniform { at, assign } => PortraitDoc::Cone {
                base: dfa.format_word(at),
                assign: assign
                    .iter()
                    .map(|(&q, p)| (dfa.graph().state_name(q).to_string(), cycles_to_names(dfa, p)))
                    .collect(),
            },
            Form::Product(fs) => PortraitDoc::Product {
                factors: fs.iter().map(|f| Self::from_form(dfa, f)).collect(),
            },
            Form::Retract { inner, at } => PortraitDoc::Retract {
                at: dfa.format_word(at),
                inner: Box::new(Self::from_form(dfa, inner)),
            },
            Form::LevelRetract { inner, level } => PortraitDoc::LevelRetract {
                level: *level,
                inner: Box::new(Self::from_form(dfa, inner)),
            },
            Form::Inverse(inner) => PortraitDoc::Inverse {
                inner: Box::new(Self::from_form(dfa, inner)),
            },
        }
    }

    pub fn from_portrait(p: &Portrait) -> Self {
        Self::from_form(p.base(), p.form())
    }

    /// Reads a `finite` document as a portrait over an arbitrary automaton.
    /// A `perm` entry is a permutation of the whole alphabet restricted to
    /// the out-letters of its vertex.
    pub fn to_general(&self, dfa: &Dfa) -> Result<GeneralPortrait> {
        let PortraitDoc::Finite { entries } = self else {
            return Err(Error::Format("only finite portraits can be read over a general automaton".into()));
        };
        let all: Vec<usize> = (0..dfa.alphabet().len()).collect();
        let mut out = Vec::new();
        for entry in entries {
            let v = dfa.parse_word(&entry.vertex)?;
            let q = dfa.state_of(&v)?;
            let map: BTreeMap<usize, usize> = match (&entry.perm, &entry.map) {
                (Some(cycles), None) => {
                    let cycles = cycles
                        .iter()
                        .map(|c| c.iter().map(|l| dfa.letter_index(l)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    let p = Permutation::from_cycles(&all, &cycles)?;
                    dfa.out_letters(q).into_iter().map(|a| (a, p.apply(a))).collect()
                }
                (None, Some(m)) => m
                    .iter()
                    .map(|(a, b)| Ok((dfa.letter_index(a)?, dfa.letter_index(b)?)))
                    .collect::<Result<_>>()?,
                _ => return Err(Error::Format("entry needs exactly one of perm or map".into())),
            };
            out.push((v, map));
        }
        GeneralPortrait::new(dfa.clone(), out)
    }
}

