//! Lazily evaluated portraits and the group operations on them.

use std::collections::BTreeMap;

use super::{check_admissible, AdmissiblePermutation, MinimalDfa};
use crate::error::{Error, Result};
use crate::graph::{Dfa, Word};
use crate::perm::Permutation;

/// How a portrait is stored. Every form is evaluated on demand through
/// [`Portrait::local_permutation`]; nothing is materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form {
    /// Explicit local permutations at finitely many vertices, identity
    /// elsewhere.
    FiniteSupport(BTreeMap<Word, Permutation>),
    /// Inside the cone at `at`, the local permutation at a vertex depends only
    /// on its state; identity outside the cone.
    ConeUniform {
        at: Word,
        assign: BTreeMap<usize, Permutation>,
    },
    /// Composition of the factors; the last factor acts first.
    Product(Vec<Form>),
    /// Agrees with `inner` inside the cone at `at`, identity outside.
    Retract { inner: Box<Form>, at: Word },
    /// Agrees with `inner` at vertices of length at least `level`.
    LevelRetract { inner: Box<Form>, level: usize },
    /// The group inverse of `inner`.
    Inverse(Box<Form>),
}

/// An element of the automorphism group of the path tree of a minimal
/// automaton.
///
/// `==` compares the stored form structurally. Use
/// [`Portrait::equal_to_depth`] to compare actions.
#[derive(Clone, Debug)]
pub struct Portrait {
    base: MinimalDfa,
    form: Form,
}

impl PartialEq for Portrait {
    fn eq(&self, other: &Self) -> bool {
        self.base.same_as(&other.base) && self.form == other.form
    }
}

/// A finite-support portrait obtained by dropping every local permutation at
/// depth greater than `depth`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedPortrait {
    pub depth: usize,
    pub portrait: Portrait,
}

fn identity_at(dfa: &Dfa, q: usize) -> Permutation {
    Permutation::identity(dfa.out_letters(q))
}

fn local(dfa: &Dfa, form: &Form, v: &Word, q: usize) -> Permutation {
    match form {
        Form::FiniteSupport(map) => map.get(v).cloned().unwrap_or_else(|| identity_at(dfa, q)),
        Form::ConeUniform { at, assign } => {
            if v.starts_with(at) {
                assign.get(&q).cloned().unwrap_or_else(|| identity_at(dfa, q))
            } else {
                identity_at(dfa, q)
            }
        }
        Form::Product(factors) => {
            // v(σ∘τ) = τ(v)σ ∘ vτ, applied right to left; automorphisms
            // preserve the state of a vertex, so q stays fixed.
            let mut perm = identity_at(dfa, q);
            let mut cur = v.clone();
            for f in factors.iter().rev() {
                perm = local(dfa, f, &cur, q).compose(&perm);
                cur = act(dfa, f, &cur);
            }
            perm
        }
        Form::Retract { inner, at } => {
            if v.starts_with(at) {
                local(dfa, inner, v, q)
            } else {
                identity_at(dfa, q)
            }
        }
        Form::LevelRetract { inner, level } => {
            if v.len() >= *level {
                local(dfa, inner, v, q)
            } else {
                identity_at(dfa, q)
            }
        }
        Form::Inverse(inner) => {
            let pre = act_inverse(dfa, inner, v);
            local(dfa, inner, &pre, q).inverse()
        }
    }
}

fn act(dfa: &Dfa, form: &Form, v: &Word) -> Word {
    match form {
        Form::Product(factors) => factors.iter().rev().fold(v.clone(), |w, f| act(dfa, f, &w)),
        Form::Inverse(inner) => act_inverse(dfa, inner, v),
        Form::FiniteSupport(map) if map.is_empty() => v.clone(),
        _ => {
            let mut out = Word::empty();
            let mut prefix = Word::empty();
            let mut q = dfa.root();
            for &a in v.letters() {
                out.push(local(dfa, form, &prefix, q).apply(a));
                prefix.push(a);
                q = dfa.transition(q, a).expect("accepted word");
            }
            out
        }
    }
}

/// Preimage of `v`, built letter by letter: the local permutation at the
/// preimage prefix tells which letter maps onto the next letter of `v`.
fn act_inverse(dfa: &Dfa, form: &Form, v: &Word) -> Word {
    if let Form::Inverse(inner) = form {
        return act(dfa, inner, v);
    }
    let mut pre = Word::empty();
    let mut q = dfa.root();
    for &a in v.letters() {
        let b = local(dfa, form, &pre, q).apply_inverse(a);
        pre.push(b);
        q = dfa.transition(q, b).expect("accepted word");
    }
    pre
}

fn flatten(form: Form, out: &mut Vec<Form>) {
    match form {
        Form::Product(fs) => {
            for f in fs {
                flatten(f, out);
            }
        }
        other => out.push(other),
    }
}

fn invert_form(dfa: &Dfa, form: &Form) -> Form {
    match form {
        Form::FiniteSupport(map) => {
            // (g⁻¹) has g(v)-entry (vg)⁻¹
            let whole = form.clone();
            Form::FiniteSupport(map.iter().map(|(v, p)| (act(dfa, &whole, v), p.inverse())).collect())
        }
        Form::ConeUniform { at, assign } => Form::ConeUniform {
            at: at.clone(),
            assign: assign.iter().map(|(&q, p)| (q, p.inverse())).collect(),
        },
        Form::Product(fs) => Form::Product(fs.iter().rev().map(|f| invert_form(dfa, f)).collect()),
        Form::Inverse(inner) => (**inner).clone(),
        other => Form::Inverse(Box::new(other.clone())),
    }
}

impl Portrait {
    pub fn identity(base: &MinimalDfa) -> Self {
        Portrait {
            base: base.clone(),
            form: Form::FiniteSupport(BTreeMap::new()),
        }
    }

    /// A finite-support portrait. Keys must be accepted words and each
    /// permutation admissible at the state its key reaches. Identity entries
    /// are dropped.
    pub fn finite(base: &MinimalDfa, entries: impl IntoIterator<Item = (Word, Permutation)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (v, p) in entries {
            let q = base.state_of(&v)?;
            check_admissible(base, q, &p)?;
            if !p.is_identity() {
                map.insert(v, p);
            }
        }
        Ok(Portrait {
            base: base.clone(),
            form: Form::FiniteSupport(map),
        })
    }

    /// A cone-uniform portrait at `at`. Identity assignments are dropped.
    pub fn cone(base: &MinimalDfa, at: Word, assign: impl IntoIterator<Item = AdmissiblePermutation>) -> Result<Self> {
        base.state_of(&at)?;
        let mut map = BTreeMap::new();
        for ap in assign {
            check_admissible(base, ap.state, &ap.perm)?;
            if !ap.perm.is_identity() {
                map.insert(ap.state, ap.perm);
            }
        }
        Ok(Portrait {
            base: base.clone(),
            form: Form::ConeUniform { at, assign: map },
        })
    }

    /// Wraps an arbitrary form after checking every stored permutation.
    pub fn from_form(base: &MinimalDfa, form: Form) -> Result<Self> {
        validate_form(base, &form)?;
        Ok(Portrait {
            base: base.clone(),
            form,
        })
    }

    pub fn base(&self) -> &MinimalDfa {
        &self.base
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    fn same_base(&self, other: &Portrait) -> Result<()> {
        if self.base.same_as(&other.base) {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    /// The local permutation at the accepted word `v`.
    pub fn local_permutation(&self, v: &Word) -> Result<AdmissiblePermutation> {
        let q = self.base.state_of(v)?;
        Ok(AdmissiblePermutation {
            state: q,
            perm: local(&self.base, &self.form, v, q),
        })
    }

    /// The image of the accepted word `v`: the k-th letter is moved by the
    /// local permutation at the (k-1)-prefix.
    pub fn act_word(&self, v: &Word) -> Result<Word> {
        self.base.state_of(v)?;
        Ok(act(&self.base, &self.form, v))
    }

    /// `self ∘ other` (`other` acts first).
    pub fn compose(&self, other: &Portrait) -> Result<Portrait> {
        self.same_base(other)?;
        if let (
            Form::ConeUniform { at: a1, assign: s1 },
            Form::ConeUniform { at: a2, assign: s2 },
        ) = (&self.form, &other.form)
        {
            if a1 == a2 {
                // other maps the cone to itself preserving states, so the
                // product is again uniform on the cone
                let mut assign = BTreeMap::new();
                for &q in s1.keys().chain(s2.keys()) {
                    let p = match (s1.get(&q), s2.get(&q)) {
                        (Some(x), Some(y)) => x.compose(y),
                        (Some(x), None) => x.clone(),
                        (None, Some(y)) => y.clone(),
                        (None, None) => unreachable!(),
                    };
                    if !p.is_identity() {
                        assign.insert(q, p);
                    }
                }
                return Ok(Portrait {
                    base: self.base.clone(),
                    form: Form::ConeUniform { at: a1.clone(), assign },
                });
            }
        }
        let mut factors = Vec::new();
        flatten(self.form.clone(), &mut factors);
        flatten(other.form.clone(), &mut factors);
        Ok(Portrait {
            base: self.base.clone(),
            form: Form::Product(factors),
        })
    }

    pub fn invert(&self) -> Portrait {
        Portrait {
            base: self.base.clone(),
            form: invert_form(&self.base, &self.form),
        }
    }

    /// Retraction onto the rigid stabilizer of `w`: same local permutations
    /// inside the cone at `w`, identity outside.
    pub fn retract(&self, w: &Word) -> Result<Portrait> {
        self.base.state_of(w)?;
        let form = match &self.form {
            Form::FiniteSupport(map) => Form::FiniteSupport(
                map.iter()
                    .filter(|(v, _)| v.starts_with(w))
                    .map(|(v, p)| (v.clone(), p.clone()))
                    .collect(),
            ),
            Form::ConeUniform { at, assign } => {
                if w.starts_with(at) {
                    Form::ConeUniform {
                        at: w.clone(),
                        assign: assign.clone(),
                    }
                } else if at.starts_with(w) {
                    self.form.clone()
                } else {
                    Form::FiniteSupport(BTreeMap::new())
                }
            }
            other => Form::Retract {
                inner: Box::new(other.clone()),
                at: w.clone(),
            },
        };
        Ok(Portrait {
            base: self.base.clone(),
            form,
        })
    }

    /// Retraction onto the rigid level stabilizer: identity at vertices of
    /// length below `n`.
    pub fn retract_level(&self, n: usize) -> Portrait {
        let form = match &self.form {
            _ if n == 0 => self.form.clone(),
            Form::FiniteSupport(map) => Form::FiniteSupport(
                map.iter()
                    .filter(|(v, _)| v.len() >= n)
                    .map(|(v, p)| (v.clone(), p.clone()))
                    .collect(),
            ),
            Form::ConeUniform { at, .. } if at.len() >= n => self.form.clone(),
            Form::LevelRetract { inner, level } => Form::LevelRetract {
                inner: inner.clone(),
                level: (*level).max(n),
            },
            other => Form::LevelRetract {
                inner: Box::new(other.clone()),
                level: n,
            },
        };
        Portrait {
            base: self.base.clone(),
            form,
        }
    }

    /// True iff the two portraits agree at every vertex of length below `n`,
    /// i.e. act identically on all words of length at most `n`.
    pub fn equal_to_depth(&self, other: &Portrait, n: usize) -> Result<bool> {
        self.same_base(other)?;
        for k in 0..n {
            for (v, q) in self.base.level_with_states(k) {
                if local(&self.base, &self.form, &v, q) != local(&self.base, &other.form, &v, q) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff the portrait acts trivially on all words of length at most `n`.
    pub fn is_identity_to_depth(&self, n: usize) -> bool {
        self.equal_to_depth(&Portrait::identity(&self.base), n)
            .expect("same base")
    }

    /// Flattens into explicit local permutations at all vertices of length
    /// at most `n`; deeper entries are dropped.
    pub fn normalize_to_depth(&self, n: usize) -> TruncatedPortrait {
        let mut map = BTreeMap::new();
        for k in 0..=n {
            for (v, q) in self.base.level_with_states(k) {
                let p = local(&self.base, &self.form, &v, q);
                if !p.is_identity() {
                    map.insert(v, p);
                }
            }
        }
        TruncatedPortrait {
            depth: n,
            portrait: Portrait {
                base: self.base.clone(),
                form: Form::FiniteSupport(map),
            },
        }
    }
}

fn validate_form(base: &MinimalDfa, form: &Form) -> Result<()> {
    match form {
        Form::FiniteSupport(map) => {
            for (v, p) in map {
                check_admissible(base, base.state_of(v)?, p)?;
            }
        }
        Form::ConeUniform { at, assign } => {
            base.state_of(at)?;
            for (&q, p) in assign {
                check_admissible(base, q, p)?;
            }
        }
        Form::Product(fs) => {
            for f in fs {
                validate_form(base, f)?;
            }
        }
        Form::Retract { inner, at } => {
            base.state_of(at)?;
            validate_form(base, inner)?;
        }
        Form::LevelRetract { inner, .. } | Form::Inverse(inner) => validate_form(base, inner)?,
    }
    Ok(())
}

/// The unique automorphism whose local permutation is `sigma` at every
/// vertex of the state `sigma.state` and the identity elsewhere.
pub fn basic_automorphism(base: &MinimalDfa, sigma: &AdmissiblePermutation) -> Result<Portrait> {
    basic_at(base, &Word::empty(), sigma)
}

/// The basic automorphism retracted to the cone at `w`. When the state of
/// `sigma` is not reachable from the state of `w` the result is the
/// identity.
pub fn basic_at(base: &MinimalDfa, w: &Word, sigma: &AdmissiblePermutation) -> Result<Portrait> {
    let qw = base.state_of(w)?;
    check_admissible(base, sigma.state, &sigma.perm)?;
    if !base.graph().reachable_from(qw)[sigma.state] {
        return Portrait::cone(base, w.clone(), []);
    }
    Portrait::cone(base, w.clone(), [sigma.clone()])
}
