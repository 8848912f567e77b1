//! Self-similar trees presented by finite automata.
//!
//! A finite connected rooted multigraph determines a locally finite rooted
//! tree (its universal covering tree, equivalently the path language tree of
//! any deterministic labelling). This crate computes the geometrically
//! minimal automaton for that tree and works with the automorphism group of
//! the tree through portraits over the minimal automaton.
//!
//! - [`graph`]: multigraphs, automata and words
//! - [`covering`]: graph morphisms, covering checks and path lifting
//! - [`minimization`]: the geometric Moore algorithm and minimal quotients
//! - [`automorphism`]: portraits, group orders, finiteness and generators
//! - [`language`]: the action on the language of a non-minimal automaton
//! - [`cli`]: the `conetype` command line

pub mod automorphism;
pub mod cli;
pub mod covering;
pub mod error;
pub mod graph;
pub mod io;
pub mod language;
pub mod minimization;
pub mod perm;
pub mod tree_canon;

pub use error::{Error, Result};
