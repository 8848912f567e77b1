//! Python bindings. Words are passed as strings in the notation of the
//! automaton they belong to; group orders come back as Python ints.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use conetype::automorphism::{self, check_general_portrait, MinimalDfa, PortraitDoc};
use conetype::graph::Dfa;
use conetype::io::AutomatonDoc;
use conetype::language::{self, MinimizedLabelled};
use conetype::minimization;

create_exception!(pyconetype, ConetypeError, PyException, "Raised for any library error; the message starts with its code.");

fn err(e: conetype::Error) -> PyErr {
    ConetypeError::new_err(format!("{}: {e}", e.code()))
}

/// `(src, label, dst)` of an original edge.
type EdgeTriple = (String, String, String);

/// A deterministic automaton (equivalently a labelled rooted multigraph).
#[pyclass(module = "pyconetype", frozen)]
struct Automaton {
    dfa: Dfa,
}

#[pymethods]
impl Automaton {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let dfa = AutomatonDoc::from_json(text).and_then(|d| d.build()).map_err(err)?;
        Ok(Automaton { dfa })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let dfa = conetype::io::load_automaton(path).map_err(err)?;
        Ok(Automaton { dfa })
    }

    fn to_json(&self) -> String {
        AutomatonDoc::from_dfa(&self.dfa).to_json()
    }

    #[getter]
    fn states(&self) -> Vec<String> {
        self.dfa.graph().states().to_vec()
    }

    #[getter]
    fn alphabet(&self) -> Vec<String> {
        self.dfa.alphabet().to_vec()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.dfa.graph().num_edges()
    }

    fn accepts(&self, word: &str) -> PyResult<bool> {
        let w = self.dfa.parse_word(word).map_err(err)?;
        self.dfa.accepts(&w).map_err(err)
    }

    /// All accepted words of length `n`.
    fn level(&self, n: usize) -> Vec<String> {
        self.dfa.level(n).iter().map(|w| self.dfa.format_word(w)).collect()
    }

    fn is_minimal(&self) -> PyResult<bool> {
        minimization::is_minimal(self.dfa.graph()).map_err(err)
    }

    /// The geometric Nerode partition as lists of state names.
    fn partition(&self) -> PyResult<Vec<Vec<String>>> {
        let p = minimization::geometric_moore(self.dfa.graph()).map_err(err)?;
        Ok(p.named(self.dfa.graph()))
    }

    fn classical_minimize(&self) -> PyResult<Automaton> {
        let dfa = minimization::classical_minimize(&self.dfa).map_err(err)?;
        Ok(Automaton { dfa })
    }

    /// Geometric minimization with the fiber alphabet.
    fn minimize(&self) -> PyResult<Minimization> {
        let inner = language::geometric_minimization(&self.dfa).map_err(err)?;
        Ok(Minimization { inner })
    }

    fn __repr__(&self) -> String {
        let g = self.dfa.graph();
        format!("Automaton(states={}, edges={})", g.num_states(), g.num_edges())
    }
}

/// The minimal quotient of an automaton together with the covering onto it.
#[pyclass(module = "pyconetype", frozen)]
struct Minimization {
    inner: MinimizedLabelled,
}

#[pymethods]
impl Minimization {
    #[getter]
    fn quotient(&self) -> Automaton {
        Automaton {
            dfa: self.inner.quotient_dfa().dfa().clone(),
        }
    }

    /// Fiber letter -> member edges as `(src, label, dst)`.
    fn fibers(&self) -> Vec<(String, Vec<EdgeTriple>)> {
        let q = &self.inner.qalpha();
        (0..q.len())
            .map(|f| (q.letters()[f].clone(), self.inner.fiber_members(f)))
            .collect()
    }

    fn push(&self, word: &str) -> PyResult<String> {
        let w = self.inner.original().parse_word(word).map_err(err)?;
        let p = self.inner.push_word(&w).map_err(err)?;
        Ok(self.inner.quotient_dfa().format_word(&p))
    }

    fn lift(&self, word: &str) -> PyResult<String> {
        let w = self.inner.quotient_dfa().parse_word(word).map_err(err)?;
        let l = self.inner.lift_word(&w).map_err(err)?;
        Ok(self.inner.original().format_word(&l))
    }

    /// Reads a portrait document over the quotient.
    fn portrait(&self, json: &str) -> PyResult<Portrait> {
        let base = self.inner.quotient_dfa().clone();
        let p = PortraitDoc::from_json(json).and_then(|d| d.to_portrait(&base)).map_err(err)?;
        Ok(Portrait { inner: p })
    }

    /// `(P(w), g(P(w)), P^-1(g(P(w))))`.
    fn act_trace(&self, g: &Portrait, word: &str) -> PyResult<(String, String, String)> {
        let w = self.inner.original().parse_word(word).map_err(err)?;
        let t = self.inner.act_trace(&g.inner, &w).map_err(err)?;
        let q = self.inner.quotient_dfa();
        Ok((q.format_word(&t.pushed), q.format_word(&t.image), self.inner.original().format_word(&t.lifted)))
    }

    fn act(&self, g: &Portrait, word: &str) -> PyResult<String> {
        Ok(self.act_trace(g, word)?.2)
    }
}

/// An automorphism of the path tree of a minimal automaton.
#[pyclass(module = "pyconetype", frozen)]
struct Portrait {
    inner: automorphism::Portrait,
}

#[pymethods]
impl Portrait {
    #[staticmethod]
    fn from_json(base: &Automaton, json: &str) -> PyResult<Portrait> {
        let base = MinimalDfa::new(base.dfa.clone()).map_err(err)?;
        let p = PortraitDoc::from_json(json).and_then(|d| d.to_portrait(&base)).map_err(err)?;
        Ok(Portrait { inner: p })
    }

    fn to_json(&self) -> String {
        PortraitDoc::from_portrait(&self.inner).to_json()
    }

    fn act(&self, word: &str) -> PyResult<String> {
        let base = self.inner.base();
        let w = base.parse_word(word).map_err(err)?;
        Ok(base.format_word(&self.inner.act_word(&w).map_err(err)?))
    }

    fn compose(&self, other: &Portrait) -> PyResult<Portrait> {
        Ok(Portrait {
            inner: self.inner.compose(&other.inner).map_err(err)?,
        })
    }

    fn invert(&self) -> Portrait {
        Portrait {
            inner: self.inner.invert(),
        }
    }

    fn equal_to_depth(&self, other: &Portrait, depth: usize) -> PyResult<bool> {
        self.inner.equal_to_depth(&other.inner, depth).map_err(err)
    }
}

/// `|Aut(T) / Rist(n + 1)|` for a geometrically minimal automaton.
#[pyfunction]
fn truncated_order(a: &Automaton, n: usize) -> PyResult<BigUint> {
    let base = MinimalDfa::new(a.dfa.clone()).map_err(err)?;
    automorphism::truncated_order(&base, n).map_err(err)
}

#[pyfunction]
fn is_finite(a: &Automaton) -> PyResult<bool> {
    Ok(automorphism::is_finite(a.dfa.graph()).map_err(err)?.finite)
}

#[pyfunction]
fn count_generators(a: &Automaton, max_len: usize) -> PyResult<usize> {
    let base = MinimalDfa::new(a.dfa.clone()).map_err(err)?;
    Ok(automorphism::enumerate_generators(&base, max_len).map_err(err)?.len())
}

/// Checks a finite portrait document over any automaton up to `depth`.
/// Returns `(valid, offending vertex or None)`.
#[pyfunction]
#[pyo3(signature = (a, json, depth = 6))]
fn verify_portrait(a: &Automaton, json: &str, depth: usize) -> PyResult<(bool, Option<String>)> {
    let gp = PortraitDoc::from_json(json).and_then(|d| d.to_general(&a.dfa)).map_err(err)?;
    let check = check_general_portrait(&gp, depth);
    Ok((check.valid, check.offending.map(|w| a.dfa.format_word(&w))))
}

/// Runs the command line in-process: `(exit code, stdout, stderr)`.
#[pyfunction]
fn cli(args: Vec<String>) -> (i32, String, String) {
    let out = conetype::cli::dispatch(std::iter::once("conetype".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pyconetype(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ConetypeError", m.py().get_type::<ConetypeError>())?;
    m.add_class::<Automaton>()?;
    m.add_class::<Minimization>()?;
    m.add_class::<Portrait>()?;
    m.add_function(wrap_pyfunction!(truncated_order, m)?)?;
    m.add_function(wrap_pyfunction!(is_finite, m)?)?;
    m.add_function(wrap_pyfunction!(count_generators, m)?)?;
    m.add_function(wrap_pyfunction!(verify_portrait, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    Ok(())
}
