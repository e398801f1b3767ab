//! A Boolean graph logic engine.
//!
//! Formula trees are the cotrees of cographs, so the semantic notions of
//! Boolean logic — evaluation, entailment, normal forms — can be stated in
//! purely graph-theoretic terms and then applied to *arbitrary* labelled
//! graphs. This crate implements that programme end to end:
//!
//! - [`graph`]: labelled graphs, complements, induced subgraphs, maximal
//!   cliques and stable sets, modules and quotients;
//! - [`formula`]: positive Boolean formulas, relation webs, minterms and
//!   maxterms, read-once synthesis from P4-free graphs;
//! - [`decompose`]: modular decomposition trees and clique classification
//!   through them;
//! - [`semantics`]: relational evaluation (a graph may evaluate to `{}`,
//!   `{0}`, `{1}` or `{0,1}`), the two entailments, determinism and
//!   totality;
//! - [`games`]: the two-player evaluation game with static and reactionary
//!   strategies;
//! - [`proof`]: deep-inference rewriting on modules, DNF/CNF normalisation
//!   and the constructive completeness procedure;
//! - [`reduce`]: the SAT and 2QBF reduction constructions with brute-force
//!   oracles that certify them at desk scale.
//!
//! Everything is exact and deterministic: canonical orderings run through
//! the whole crate so equal inputs produce byte-identical output. The
//! algorithms favour clarity and verifiability over asymptotics; inputs are
//! expected to be desk-sized (tens of nodes) and configured budgets return
//! resource errors beyond that.
//!
//! The accompanying book under `book/` walks through the concepts with
//! runnable snippets; the snippets compile and run as doc-tests of this
//! crate (see `src/book.rs`).

pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod formula;
pub mod games;
pub mod graph;
pub mod proof;
pub mod reduce;
pub mod semantics;

mod book;

pub use error::{Error, Result};
pub use graph::{node_set, LabelledGraph, NodeId, NodeSet};
